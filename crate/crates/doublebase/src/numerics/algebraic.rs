//! Exact arithmetic in ℚ(θ) for a real algebraic number θ given by a
//! squarefree (not necessarily irreducible) integer polynomial and an
//! isolating interval.
//!
//! Because the modulus may be reducible, every zero test runs a gcd against
//! it; a nontrivial common factor splits the modulus and the field quietly
//! replaces it by the factor that still vanishes at θ (dynamic evaluation).
//! Elements hold their field by a shared handle, so a split performed during
//! one operation is seen by all elements of the field; representatives are
//! re-reduced against the current modulus on every use.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::poly::{IntPoly, RatPoly, SturmChain};
use super::NumError;

struct FieldCore {
    f: IntPoly,
    chain: SturmChain,
    /// Isolating interval `(lo, hi]` containing exactly one root of `f`.
    iso: (BigRational, BigRational),
}

impl FieldCore {
    fn f_rat(&self) -> RatPoly {
        self.f.to_rat()
    }

    /// Replaces the modulus by a divisor that still vanishes at θ.
    fn replace_modulus(&mut self, new_f: IntPoly) {
        let new_f = new_f.signed_primitive();
        let chain = SturmChain::new(&new_f);
        debug_assert_eq!(chain.count_roots(&self.iso.0, &self.iso.1), 1);
        self.f = new_f;
        self.chain = chain;
    }

    /// Narrows the isolating interval by one bisection step.
    fn bisect_iso(&mut self) {
        let two = BigRational::from(BigInt::from(2));
        let mid = (&self.iso.0 + &self.iso.1) / two;
        if self.chain.count_roots(&self.iso.0, &mid) == 1 {
            self.iso.1 = mid;
        } else {
            self.iso.0 = mid;
        }
    }

    /// `true` iff `rep(θ) = 0`; may split the modulus either way.
    fn is_zero(&mut self, rep: &RatPoly) -> bool {
        let r = rep.rem(&self.f_rat());
        if r.is_zero() {
            return true;
        }
        let g = RatPoly::gcd(&r, &self.f_rat());
        if g.degree() == Some(0) {
            return false;
        }
        let g_int = g.to_int_primitive();
        let roots_here = SturmChain::new(&g_int).count_roots(&self.iso.0, &self.iso.1);
        match roots_here {
            1 => {
                // θ is a root of the common factor, so rep vanishes at θ.
                self.replace_modulus(g_int);
                true
            }
            0 => {
                let cofactor = self
                    .f
                    .exact_div(&g_int)
                    .expect("gcd divides the modulus");
                self.replace_modulus(cofactor);
                false
            }
            n => panic!("isolating interval holds {n} roots of a factor"),
        }
    }

    fn inverse(&mut self, rep: &RatPoly) -> Result<RatPoly, NumError> {
        loop {
            let r = rep.rem(&self.f_rat());
            if r.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            let (g, u, _) = r.ext_gcd(&self.f_rat());
            if g.degree() == Some(0) {
                // g is monic constant 1: u·r ≡ 1 (mod f).
                return Ok(u.rem(&self.f_rat()));
            }
            let g_int = g.to_int_primitive();
            match SturmChain::new(&g_int).count_roots(&self.iso.0, &self.iso.1) {
                1 => return Err(NumError::DivisionByZero),
                0 => {
                    let cofactor = self
                        .f
                        .exact_div(&g_int)
                        .expect("gcd divides the modulus");
                    self.replace_modulus(cofactor);
                }
                n => panic!("isolating interval holds {n} roots of a factor"),
            }
        }
    }

    fn sign(&mut self, rep: &RatPoly) -> Ordering {
        // Interval separation first: it settles every value bounded away
        // from zero without touching a gcd, and most sign queries are.
        let r = rep.rem(&self.f_rat());
        if r.is_zero() {
            return Ordering::Equal;
        }
        for _ in 0..4 {
            let (vlo, vhi) = r.eval_interval(&self.iso.0, &self.iso.1);
            if vlo.is_positive() {
                return Ordering::Greater;
            }
            if vhi.is_negative() {
                return Ordering::Less;
            }
            self.bisect_iso();
        }
        // Refinement stalled: decide zero exactly (this may split the
        // modulus, so reduce the remainder again afterwards).
        if self.is_zero(rep) {
            return Ordering::Equal;
        }
        let r = rep.rem(&self.f_rat());
        for _ in 0..8192 {
            let (vlo, vhi) = r.eval_interval(&self.iso.0, &self.iso.1);
            if vlo.is_positive() {
                return Ordering::Greater;
            }
            if vhi.is_negative() {
                return Ordering::Less;
            }
            self.bisect_iso();
        }
        panic!("sign of a provably nonzero algebraic number did not separate");
    }

    fn enclosure(&mut self, rep: &RatPoly, level: u32) -> (BigRational, BigRational) {
        let r = rep.rem(&self.f_rat());
        let target = BigRational::new(BigInt::one(), BigInt::one() << level.min(1_000_000));
        for _ in 0..(level as usize + 16_384) {
            let (vlo, vhi) = r.eval_interval(&self.iso.0, &self.iso.1);
            if &vhi - &vlo <= target {
                return (vlo, vhi);
            }
            self.bisect_iso();
        }
        panic!("algebraic enclosure failed to reach the requested width");
    }
}

/// A real root θ of a squarefree integer polynomial, pinned down by an
/// isolating interval. Shared by handle; see the module docs for splitting.
pub struct AlgebraicField {
    core: Mutex<FieldCore>,
}

impl AlgebraicField {
    /// Builds the field for the unique root of `f` in `(lo, hi]`. The input
    /// is replaced by its squarefree part; it is an error if the interval
    /// does not isolate exactly one root.
    pub fn new(f: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Arc<Self>, NumError> {
        let f = f.squarefree_part();
        if f.degree().unwrap_or(0) == 0 {
            return Err(NumError::BadIsolatingInterval);
        }
        let chain = SturmChain::new(&f);
        if lo > hi || chain.count_roots(&lo, &hi) != 1 {
            return Err(NumError::BadIsolatingInterval);
        }
        Ok(Arc::new(AlgebraicField {
            core: Mutex::new(FieldCore { f, chain, iso: (lo, hi) }),
        }))
    }

    /// Current modulus (it may shrink over the field's lifetime).
    pub fn modulus(&self) -> IntPoly {
        self.core.lock().unwrap().f.clone()
    }

    /// Current isolating interval for θ.
    pub fn iso(&self) -> (BigRational, BigRational) {
        let core = self.core.lock().unwrap();
        core.iso.clone()
    }

    /// Refines θ's isolating interval to width at most `2^{-level}`.
    pub fn refine_iso(&self, level: u32) -> (BigRational, BigRational) {
        let mut core = self.core.lock().unwrap();
        let target = BigRational::new(BigInt::one(), BigInt::one() << level.min(1_000_000));
        while &core.iso.1 - &core.iso.0 > target {
            core.bisect_iso();
        }
        core.iso.clone()
    }

    /// The root itself as an element.
    pub fn theta(self: &Arc<Self>) -> AlgElem {
        AlgElem { field: Arc::clone(self), rep: RatPoly::x() }
    }

    /// Embeds a rational constant.
    pub fn constant(self: &Arc<Self>, value: BigRational) -> AlgElem {
        AlgElem { field: Arc::clone(self), rep: RatPoly::constant(value) }
    }

    /// Element with an explicit representative polynomial in θ.
    pub fn element(self: &Arc<Self>, rep: RatPoly) -> AlgElem {
        AlgElem { field: Arc::clone(self), rep }
    }
}

impl fmt::Debug for AlgebraicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = self.core.lock().unwrap();
        write!(
            f,
            "AlgebraicField {{ f: {:?}, iso: ({}, {}] }}",
            core.f, core.iso.0, core.iso.1
        )
    }
}

/// An element of ℚ(θ), stored as a polynomial in θ.
#[derive(Clone)]
pub struct AlgElem {
    field: Arc<AlgebraicField>,
    rep: RatPoly,
}

impl AlgElem {
    pub fn field(&self) -> &Arc<AlgebraicField> {
        &self.field
    }

    /// Representative reduced against the field's current modulus.
    pub fn rep(&self) -> RatPoly {
        let core = self.field.core.lock().unwrap();
        self.rep.rem(&core.f_rat())
    }

    pub fn same_field(&self, other: &AlgElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
    }

    fn binary(&self, other: &AlgElem, op: impl FnOnce(&RatPoly, &RatPoly) -> RatPoly) -> AlgElem {
        assert!(self.same_field(other), "algebraic operands from different fields");
        let rep = {
            let core = self.field.core.lock().unwrap();
            op(&self.rep, &other.rep).rem(&core.f_rat())
        };
        AlgElem { field: Arc::clone(&self.field), rep }
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        self.binary(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        self.binary(other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        self.binary(other, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem { field: Arc::clone(&self.field), rep: self.rep.neg() }
    }

    pub fn add_rational(&self, r: &BigRational) -> AlgElem {
        AlgElem {
            field: Arc::clone(&self.field),
            rep: self.rep.add(&RatPoly::constant(r.clone())),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> AlgElem {
        AlgElem { field: Arc::clone(&self.field), rep: self.rep.mul_scalar(r) }
    }

    pub fn is_zero(&self) -> bool {
        self.field.core.lock().unwrap().is_zero(&self.rep)
    }

    /// Exact sign of the value at θ.
    pub fn sign(&self) -> Ordering {
        self.field.core.lock().unwrap().sign(&self.rep)
    }

    pub fn inverse(&self) -> Result<AlgElem, NumError> {
        let rep = self.field.core.lock().unwrap().inverse(&self.rep)?;
        Ok(AlgElem { field: Arc::clone(&self.field), rep })
    }

    /// Exact equality of values (not representatives).
    pub fn eq_value(&self, other: &AlgElem) -> bool {
        self.sub(other).is_zero()
    }

    /// Rational enclosure of the value with width at most `2^{-level}`.
    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        self.field.core.lock().unwrap().enclosure(&self.rep, level)
    }

    /// The value as an exact rational, when the representative is constant
    /// after reduction.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.rep();
        match r.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(r.coeff(0)),
            _ => None,
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({:?} at θ of {:?})", self.rep, self.field.modulus())
    }
}
