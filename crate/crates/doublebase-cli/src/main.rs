//! Command-line surface for the exact double-base toolkit.
//!
//! Every subcommand reads exact scalars (`p/q`, decimal literals, or
//! `phi`), emits JSON-lines records tagged with representation info, and
//! exits 0 on a decided result, 1 on a usage error, 2 when the outcome is
//! undecided at the configured budgets (partial results are still
//! emitted), and 3 on an internal invariant violation. The region scan
//! emits CSV instead, one row per admissible grid cell.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use doublebase::base_classify::{
    aux_profile, classify_case, profile, topology_summary, CaseLabel, Verdict,
};
use doublebase::bases::DoubleBase;
use doublebase::expansions::{expansion_stream, ExpansionKind, ExpansionResult, PrefixReason};
use doublebase::inverse::{solve_base, ProfileSpec, SolveError, SolveOutcome, SolvedBase};
use doublebase::numerics::ExactScalar;
use doublebase::oracle::{count_oracle, enumerate_expansions, Census};
use doublebase::points::{classify_point, count_expansions, gaps_enumerate, CountResult, Flag, PointError};
use doublebase::words::PeriodicSeq;

#[derive(Parser)]
#[command(
    name = "doublebase",
    about = "Exact expansions, classification, and inverse solving for double-base systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Greedy,
    QuasiGreedy,
    Lazy,
    QuasiLazy,
}

impl KindArg {
    fn kind(self) -> ExpansionKind {
        match self {
            KindArg::Greedy => ExpansionKind::Greedy,
            KindArg::QuasiGreedy => ExpansionKind::QuasiGreedy,
            KindArg::Lazy => ExpansionKind::Lazy,
            KindArg::QuasiLazy => ExpansionKind::QuasiLazy,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KindArg::Greedy => "greedy",
            KindArg::QuasiGreedy => "quasi-greedy",
            KindArg::Lazy => "lazy",
            KindArg::QuasiLazy => "quasi-lazy",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one digit stream for a point.
    Expand {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Compute the base profile, its case, and the topology row.
    Profile {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        q1: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Classify one point: expansions, memberships, count, oracle check.
    Point {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 96)]
        depth: usize,
        #[arg(long, default_value_t = 256)]
        max_leaves: usize,
    },
    /// Enumerate all expansions of a point by branch and bound.
    Enumerate {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long, default_value_t = 256)]
        max_leaves: usize,
    },
    /// List the connected gaps carved out by short greedy words.
    Gaps {
        #[arg(long)]
        q0: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        max_word_len: usize,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Recover the base from a profile pair.
    Solve {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "1/1000000000000")]
        tol: String,
    },
    /// Scan a grid over the region and emit CSV classification rows.
    Scan {
        /// Range `lo:hi` for the first base, rational endpoints.
        #[arg(long)]
        q0_range: String,
        /// Range `lo:hi` for the second base, rational endpoints.
        #[arg(long)]
        q1_range: String,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = 48)]
        depth: usize,
    },
}

const OK: u8 = 0;
const USAGE: u8 = 1;
const UNDECIDED: u8 = 2;
const INVARIANT: u8 = 3;

fn main() -> ExitCode {
    let code = match std::panic::catch_unwind(run) {
        Ok(code) => code,
        Err(_) => INVARIANT,
    };
    ExitCode::from(code)
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { USAGE } else { OK };
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            USAGE
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Expand { q0, q1, x, kind, depth } => expand(&q0, &q1, &x, kind, depth),
        Cmd::Profile { q0, q1, depth } => profile_cmd(&q0, &q1, depth),
        Cmd::Point { q0, q1, x, depth, max_leaves } => point_cmd(&q0, &q1, &x, depth, max_leaves),
        Cmd::Enumerate { q0, q1, x, depth, max_leaves } => {
            enumerate_cmd(&q0, &q1, &x, depth, max_leaves)
        }
        Cmd::Gaps { q0, q1, max_word_len, depth } => gaps_cmd(&q0, &q1, max_word_len, depth),
        Cmd::Solve { mu, alpha, tol } => solve_cmd(&mu, &alpha, &tol),
        Cmd::Scan { q0_range, q1_range, steps, depth } => {
            scan_cmd(&q0_range, &q1_range, steps, depth)
        }
    }
}

fn parse_scalar(text: &str, what: &str) -> Result<ExactScalar, String> {
    ExactScalar::parse(text).map_err(|e| format!("{what} {text:?}: {e}"))
}

fn parse_base(q0: &str, q1: &str) -> Result<DoubleBase, String> {
    let a = parse_scalar(q0, "q0")?;
    let b = parse_scalar(q1, "q1")?;
    DoubleBase::new(a, b).map_err(|e| format!("base ({q0}, {q1}): {e}"))
}

fn parse_seq(text: &str, what: &str) -> Result<PeriodicSeq, String> {
    PeriodicSeq::parse_literal(text).map_err(|e| format!("{what} {text:?}: {e}"))
}

/// Tags a scalar with its representation; intervals also carry their
/// current width.
fn scalar_json(s: &ExactScalar) -> Value {
    let approx = s.to_f64();
    match s {
        ExactScalar::Rational(r) => {
            json!({"repr": "rational", "exact": r.to_string(), "approx": approx})
        }
        ExactScalar::Quadratic(_) => {
            let (lo, hi) = s.enclosure(64);
            json!({
                "repr": "quadratic",
                "enclosure": [lo.to_string(), hi.to_string()],
                "approx": approx,
            })
        }
        ExactScalar::Algebraic(_) => {
            let (lo, hi) = s.enclosure(64);
            json!({
                "repr": "algebraic",
                "enclosure": [lo.to_string(), hi.to_string()],
                "approx": approx,
            })
        }
        ExactScalar::Interval(_) => {
            let (lo, hi) = s.enclosure(32);
            let width = &hi - &lo;
            json!({
                "repr": "interval",
                "enclosure": [lo.to_string(), hi.to_string()],
                "width": width.to_string(),
                "approx": approx,
            })
        }
    }
}

fn digit_string(digits: &[u8]) -> String {
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

fn verdict_string(v: Verdict) -> String {
    match v {
        Verdict::Proven => "proven".into(),
        Verdict::RefutedWitness(n) => format!("refuted:{n}"),
        Verdict::UndecidedAtDepth(d) => format!("undecided:{d}"),
    }
}

fn flag_json(f: &Flag) -> Value {
    json!({"holds": f.holds, "verdict": verdict_string(f.verdict)})
}

fn count_json(c: CountResult) -> Value {
    match c {
        CountResult::Exact(n) => json!({"kind": "exact", "n": n}),
        CountResult::CountablyInfinite => json!({"kind": "countably-infinite"}),
        CountResult::AtLeastAtDepth { k, depth } => {
            json!({"kind": "at-least", "n": k, "depth": depth})
        }
    }
}

/// `(result, verdict, decided)` triple for one stream outcome.
fn expansion_json(r: &ExpansionResult) -> (Value, String, bool) {
    match r {
        ExpansionResult::Periodic { seq, cycle_start, cycle_len } => (
            json!({
                "digits": seq.to_string(),
                "cycle_start": cycle_start,
                "cycle_len": cycle_len,
            }),
            "certified".into(),
            true,
        ),
        ExpansionResult::PrefixOnly { p, reason } => {
            let reason = match reason {
                PrefixReason::DepthCap => "depth-cap",
                PrefixReason::UndecidableComparison => "undecidable-comparison",
            };
            (
                json!({"prefix": digit_string(p.digits()), "reason": reason}),
                format!("prefix-only:{reason}"),
                false,
            )
        }
    }
}

fn emit(record: &Value) {
    println!("{record}");
}

fn expand(q0: &str, q1: &str, x: &str, kind: KindArg, depth: usize) -> Result<u8, String> {
    let q = parse_base(q0, q1)?;
    let xs = parse_scalar(x, "x")?;
    let stream = expansion_stream(&q, &xs, kind.kind(), depth)
        .map_err(|e| format!("expand: {e}"))?;
    let (result, verdict, decided) = expansion_json(&stream);
    emit(&json!({
        "cmd": format!("expand --q0 {q0} --q1 {q1} --x {x} --kind {} --depth {depth}", kind.name()),
        "inputs": {
            "q0": scalar_json(q.q0()),
            "q1": scalar_json(q.q1()),
            "x": scalar_json(&xs),
            "kind": kind.name(),
        },
        "result": result,
        "verdict": verdict,
        "budgets": {"depth": depth},
    }));
    Ok(if decided { OK } else { UNDECIDED })
}

fn case_string(label: CaseLabel) -> String {
    format!("{label:?}")
}

fn profile_cmd(q0: &str, q1: &str, depth: usize) -> Result<u8, String> {
    let q = parse_base(q0, q1)?;
    let p = profile(&q, depth).map_err(|e| format!("profile: {e}"))?;
    let (label, verdict) = classify_case(&p);
    let (mu_json, _, mu_decided) = expansion_json(&p.mu);
    let (alpha_json, _, alpha_decided) = expansion_json(&p.alpha);
    let aux = if verdict == Verdict::Proven && matches!(label, CaseLabel::X | CaseLabel::XI) {
        let a = aux_profile(&p, label).map_err(|e| format!("profile: {e}"))?;
        Some(a)
    } else {
        None
    };
    let row = topology_summary(label, aux.as_ref().map(|a| a.u_closed));
    let decided = verdict != Verdict::Proven || (mu_decided && alpha_decided);
    emit(&json!({
        "cmd": format!("profile --q0 {q0} --q1 {q1} --depth {depth}"),
        "inputs": {"q0": scalar_json(q.q0()), "q1": scalar_json(q.q1())},
        "result": {
            "mu": mu_json,
            "alpha": alpha_json,
            "case": case_string(label),
            "aux": aux.map(|a| json!({
                "seq": a.seq.to_string(),
                "witness": a.witness,
                "u_closed": a.u_closed,
            })),
            "table": {
                "inclusions": row.inclusions,
                "ab_relation": row.ab_relation,
                "count_a": row.count_a,
                "count_b": row.count_b,
            },
        },
        "verdict": verdict_string(verdict),
        "budgets": {"depth": depth},
    }));
    Ok(if verdict == Verdict::Proven && decided { OK } else { UNDECIDED })
}

fn census_json(census: &Census) -> Value {
    json!({
        "certified": census
            .certified_expansions
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>(),
        "open_branches": census.open_branches,
        "branching_cycle_found": census.branching_cycle_found,
        "count": count_json(count_oracle(census)),
    })
}

fn point_cmd(q0: &str, q1: &str, x: &str, depth: usize, max_leaves: usize) -> Result<u8, String> {
    let q = parse_base(q0, q1)?;
    let xs = parse_scalar(x, "x")?;
    let pc = classify_point(&q, &xs, depth).map_err(|e| format!("point: {e}"))?;
    let p = profile(&q, depth).map_err(|e| format!("point: {e}"))?;
    let (label, label_verdict) = classify_case(&p);
    let count = if label_verdict == Verdict::Proven {
        if pc.in_u.proven_true() {
            Ok(CountResult::Exact(1))
        } else {
            count_expansions(&q, label, &pc).map_err(|e| e.to_string())
        }
    } else {
        Err("base case undecided".to_string())
    };
    let census = enumerate_expansions(&q, &xs, depth, max_leaves)
        .map_err(|e| format!("point: {e}"))?;
    let oracle_count = count_oracle(&census);
    let agrees = match (&count, oracle_count) {
        (Ok(c), o) if *c == o => json!(true),
        (Ok(CountResult::CountablyInfinite), CountResult::AtLeastAtDepth { .. })
        | (Ok(CountResult::Exact(_)), CountResult::AtLeastAtDepth { .. }) => json!("unresolved"),
        (Ok(_), _) => json!(false),
        (Err(_), _) => json!("unresolved"),
    };
    let flags_decided = pc.in_u.decided() && pc.in_v.decided() && pc.in_a.decided() && pc.in_b.decided();
    let resolved = flags_decided
        && count.is_ok()
        && !matches!(oracle_count, CountResult::AtLeastAtDepth { .. })
        && agrees == json!(true);
    let expansions: Value = [
        ("greedy", &pc.b),
        ("quasi_greedy", &pc.a),
        ("quasi_lazy", &pc.m),
        ("lazy", &pc.l),
    ]
    .into_iter()
    .map(|(name, r)| (name.to_string(), expansion_json(r).0))
    .collect::<serde_json::Map<_, _>>()
    .into();
    emit(&json!({
        "cmd": format!("point --q0 {q0} --q1 {q1} --x {x} --depth {depth} --max-leaves {max_leaves}"),
        "inputs": {"q0": scalar_json(q.q0()), "q1": scalar_json(q.q1()), "x": scalar_json(&xs)},
        "result": {
            "expansions": expansions,
            "memberships": {
                "in_u": flag_json(&pc.in_u),
                "in_v": flag_json(&pc.in_v),
                "in_a": flag_json(&pc.in_a),
                "in_b": flag_json(&pc.in_b),
            },
            "case": case_string(label),
            "count": match &count {
                Ok(c) => count_json(*c),
                Err(e) => json!({"kind": "not-counted", "reason": e}),
            },
            "oracle": census_json(&census),
            "oracle_agrees": agrees,
        },
        "verdict": if resolved { "decided" } else { "undecided" },
        "budgets": {"depth": depth, "max_leaves": max_leaves},
    }));
    Ok(if resolved { OK } else { UNDECIDED })
}

fn enumerate_cmd(
    q0: &str,
    q1: &str,
    x: &str,
    depth: usize,
    max_leaves: usize,
) -> Result<u8, String> {
    let q = parse_base(q0, q1)?;
    let xs = parse_scalar(x, "x")?;
    let census = enumerate_expansions(&q, &xs, depth, max_leaves)
        .map_err(|e| format!("enumerate: {e}"))?;
    let decided = !matches!(count_oracle(&census), CountResult::AtLeastAtDepth { .. });
    emit(&json!({
        "cmd": format!("enumerate --q0 {q0} --q1 {q1} --x {x} --depth {depth} --max-leaves {max_leaves}"),
        "inputs": {"q0": scalar_json(q.q0()), "q1": scalar_json(q.q1()), "x": scalar_json(&xs)},
        "result": census_json(&census),
        "verdict": if decided { "decided" } else { "open" },
        "budgets": {"depth": depth, "max_leaves": max_leaves},
    }));
    Ok(if decided { OK } else { UNDECIDED })
}

fn gaps_cmd(q0: &str, q1: &str, max_word_len: usize, depth: usize) -> Result<u8, String> {
    let q = parse_base(q0, q1)?;
    match gaps_enumerate(&q, max_word_len, depth) {
        Ok(gaps) => {
            emit(&json!({
                "cmd": format!("gaps --q0 {q0} --q1 {q1} --max-word-len {max_word_len} --depth {depth}"),
                "inputs": {"q0": scalar_json(q.q0()), "q1": scalar_json(q.q1())},
                "result": gaps
                    .iter()
                    .map(|g| json!({
                        "x_l": scalar_json(&g.x_l),
                        "x_r": scalar_json(&g.x_r),
                        "b_l": g.b_l.to_string(),
                        "l_r": g.l_r.to_string(),
                    }))
                    .collect::<Vec<_>>(),
                "verdict": "decided",
                "budgets": {"depth": depth, "max_word_len": max_word_len},
            }));
            Ok(OK)
        }
        Err(PointError::NotDecided) => {
            emit(&json!({
                "cmd": format!("gaps --q0 {q0} --q1 {q1} --max-word-len {max_word_len} --depth {depth}"),
                "inputs": {"q0": scalar_json(q.q0()), "q1": scalar_json(q.q1())},
                "result": Value::Null,
                "verdict": "undecided",
                "budgets": {"depth": depth, "max_word_len": max_word_len},
            }));
            Ok(UNDECIDED)
        }
        Err(e) => Err(format!("gaps: {e}")),
    }
}

fn solved_json(s: &SolvedBase) -> Value {
    let p = profile(&s.base, 64).ok();
    let case = p.as_ref().map(|p| {
        let (label, verdict) = classify_case(p);
        json!({"case": case_string(label), "verdict": verdict_string(verdict)})
    });
    json!({
        "q0": scalar_json(s.base.q0()),
        "q1": scalar_json(s.base.q1()),
        "on_curve": s.base.on_c(),
        "residuals": [scalar_json(&s.residuals.0), scalar_json(&s.residuals.1)],
        "classified": case,
    })
}

fn solve_cmd(mu: &str, alpha: &str, tol: &str) -> Result<u8, String> {
    let spec = ProfileSpec::new(parse_seq(mu, "mu")?, parse_seq(alpha, "alpha")?);
    let tol_scalar = parse_scalar(tol, "tol")?;
    let tol_rat: BigRational = tol_scalar
        .as_rational()
        .ok_or_else(|| format!("tol {tol:?}: must be rational"))?;
    let cmd = format!("solve --mu {mu} --alpha {alpha} --tol {tol}");
    let inputs = json!({"mu": mu, "alpha": alpha, "tol": tol_rat.to_string()});
    let (result, verdict, code) = match solve_base(&spec, &tol_rat) {
        Ok(SolveOutcome::CurveC) => (
            json!({"outcome": "curve", "note": "realized by every base on the boundary"}),
            "decided".to_string(),
            OK,
        ),
        Ok(SolveOutcome::Unique(s)) => (
            json!({"outcome": "unique", "base": solved_json(&s)}),
            "decided".to_string(),
            OK,
        ),
        Ok(SolveOutcome::Ambiguous(all)) => (
            json!({
                "outcome": "ambiguous",
                "bases": all.iter().map(solved_json).collect::<Vec<_>>(),
            }),
            "decided".to_string(),
            OK,
        ),
        Err(SolveError::NotAdmissible(v)) => (
            json!({"outcome": "inadmissible"}),
            verdict_string(v),
            OK,
        ),
        Err(SolveError::NoSolutionFound) => (
            json!({"outcome": "no-solution"}),
            "decided".to_string(),
            OK,
        ),
        Err(e @ SolveError::DegenerateSystem) | Err(e @ SolveError::UnsupportedDegree(_)) => (
            json!({"outcome": "unsupported", "detail": e.to_string()}),
            "undecided".to_string(),
            UNDECIDED,
        ),
        Err(SolveError::Num(e)) => return Err(format!("solve: {e}")),
    };
    emit(&json!({
        "cmd": cmd,
        "inputs": inputs,
        "result": result,
        "verdict": verdict,
        "budgets": {"profile_depth": 64, "box": "(1, 8]"},
    }));
    Ok(code)
}

fn parse_range(text: &str, what: &str) -> Result<(BigRational, BigRational), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("{what} {text:?}: expected lo:hi"))?;
    let lo = parse_scalar(lo, what)?
        .as_rational()
        .ok_or_else(|| format!("{what} {text:?}: endpoints must be rational"))?;
    let hi = parse_scalar(hi, what)?
        .as_rational()
        .ok_or_else(|| format!("{what} {text:?}: endpoints must be rational"))?;
    if lo >= hi {
        return Err(format!("{what} {text:?}: lo must be below hi"));
    }
    Ok((lo, hi))
}

fn scan_cmd(q0_range: &str, q1_range: &str, steps: usize, depth: usize) -> Result<u8, String> {
    if steps < 2 {
        return Err(format!("steps {steps}: need at least 2"));
    }
    let (lo0, hi0) = parse_range(q0_range, "q0-range")?;
    let (lo1, hi1) = parse_range(q1_range, "q1-range")?;
    let at = |lo: &BigRational, hi: &BigRational, i: usize| {
        lo + (hi - lo) * BigRational::new(i.into(), (steps - 1).into())
    };
    let cells: Vec<(BigRational, BigRational)> = (0..steps)
        .flat_map(|i| (0..steps).map(move |j| (i, j)))
        .map(|(i, j)| (at(&lo0, &hi0, i), at(&lo1, &hi1, j)))
        .collect();
    let rows: Vec<Option<[String; 4]>> = cells
        .par_iter()
        .map(|(q0, q1)| {
            let base = DoubleBase::new(
                ExactScalar::from_rational(q0.clone()),
                ExactScalar::from_rational(q1.clone()),
            )
            .ok()?;
            if !base.in_a() {
                return None;
            }
            let p = profile(&base, depth).ok()?;
            let (label, verdict) = classify_case(&p);
            Some([
                q0.to_string(),
                q1.to_string(),
                case_string(label),
                verdict_string(verdict),
            ])
        })
        .collect();
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["q0", "q1", "case", "verdict"])
        .map_err(|e| format!("scan: {e}"))?;
    for row in rows.into_iter().flatten() {
        w.write_record(&row).map_err(|e| format!("scan: {e}"))?;
    }
    w.flush().map_err(|e| format!("scan: {e}"))?;
    Ok(OK)
}
