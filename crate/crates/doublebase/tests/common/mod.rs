//! Shared helpers for the integration suites: an independent partial-sum
//! digit reference and deterministic random sampling.
#![allow(dead_code)]

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doublebase::bases::{rational_base_in_a, DoubleBase};
use doublebase::expansions::ExpansionKind;
use doublebase::numerics::{compare, Cmp, ExactScalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational base inside the admissible region (boundary included).
pub fn random_base(rng: &mut ChaCha8Rng) -> DoubleBase {
    rational_base_in_a(rng.gen(), rng.gen(), 64)
}

/// The base coordinates as rationals; sampled bases always have them.
pub fn base_rationals(q: &DoubleBase) -> (BigRational, BigRational) {
    (
        q.q0().as_rational().expect("rational base"),
        q.q1().as_rational().expect("rational base"),
    )
}

/// A random rational point strictly inside `(0, j_max)`: a fraction with
/// prime denominator 257 never hits the endpoints.
pub fn random_point(q: &DoubleBase, rng: &mut ChaCha8Rng) -> BigRational {
    let j_max = q
        .constants()
        .j_max
        .as_rational()
        .expect("rational base has rational constants");
    let t = BigRational::new(BigInt::from(rng.gen_range(1u32..=256)), BigInt::from(257));
    t * j_max
}

pub fn scalar(r: &BigRational) -> ExactScalar {
    ExactScalar::from_rational(r.clone())
}

/// Digit stream defined directly by the partial-sum inequalities, with no
/// renormalized state: after digits `i_1…i_{N−1}` with partial sum `S` and
/// product `P = q_{i_1}…q_{i_{N−1}}`, the greedy rule takes 1 exactly when
/// `S + 1/(P·q1) ≤ x` (quasi-greedy: strict), and the lazy rule takes 0
/// exactly when `x ≤ S + 1/(P·q0·(q1−1))` (quasi-lazy: strict). The two
/// endpoint conventions mirror the stream dispatch.
pub fn reference_digits(
    q0: &BigRational,
    q1: &BigRational,
    x: &BigRational,
    kind: ExpansionKind,
    depth: usize,
) -> Vec<u8> {
    let one = BigRational::one();
    let j_max = &one / (q1 - &one);
    if x.is_zero() && kind == ExpansionKind::QuasiGreedy {
        return vec![1; depth];
    }
    if *x == j_max && kind == ExpansionKind::QuasiLazy {
        return vec![0; depth];
    }
    let mut digits = Vec::with_capacity(depth);
    let mut sum = BigRational::zero();
    let mut product = BigRational::one();
    for _ in 0..depth {
        let with_one = &sum + &one / (&product * q1);
        let laziest = &sum + &one / (&product * q0 * (q1 - &one));
        let d = match kind {
            ExpansionKind::Greedy => u8::from(*x >= with_one),
            ExpansionKind::QuasiGreedy => u8::from(*x > with_one),
            ExpansionKind::Lazy => u8::from(!(*x <= laziest)),
            ExpansionKind::QuasiLazy => u8::from(!(*x < laziest)),
        };
        if d == 1 {
            product *= q1;
            sum += &one / &product;
        } else {
            product *= q0;
        }
        digits.push(d);
    }
    digits
}

/// A rational certified to lie strictly between two exact scalars, found by
/// refining enclosures around an interior target.
pub fn rational_strictly_between(lo: &ExactScalar, hi: &ExactScalar, t: &BigRational) -> BigRational {
    let target = lo.add(&scalar(t).mul(&hi.sub(lo)));
    for level in [64u32, 128, 256, 512] {
        let (a, b) = target.enclosure(level);
        let mid = (a + b) / BigRational::from(BigInt::from(2));
        let m = scalar(&mid);
        if compare(&m, lo) == Cmp::Greater && compare(&m, hi) == Cmp::Less {
            return mid;
        }
    }
    panic!("no rational separated from the endpoints; interval too thin");
}
