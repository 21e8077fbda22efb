//! Dense univariate polynomials over ℤ and ℚ, with Sturm chains for exact
//! real-root counting and isolation.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Polynomial with integer coefficients, ascending order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// The monomial `c · x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division; returns `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dn, dd) = (self.degree().unwrap(), other.degree().unwrap());
        if dn < dd {
            return None;
        }
        let lead = other.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, c) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Gcd of coefficients (non-negative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| num::Integer::gcd(&acc, c))
    }

    /// Divides out content and normalizes the leading coefficient positive.
    pub fn signed_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    /// Largest squarefree divisor with the same roots: `self / gcd(self, self')`,
    /// normalized signed-primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) <= 1 {
            return self.signed_primitive();
        }
        let g = RatPoly::gcd(&self.to_rat(), &self.derivative().to_rat());
        if g.degree() == Some(0) {
            return self.signed_primitive();
        }
        let q = self.to_rat().divmod(&g).0;
        q.to_int_primitive()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomial with rational coefficients, ascending order, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval Horner evaluation: encloses `self(t)` for every `t ∈ [lo, hi]`.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let (mut alo, mut ahi) = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let products = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
            let mut nlo = products[0].clone();
            let mut nhi = products[0].clone();
            for p in &products[1..] {
                if *p < nlo {
                    nlo = p.clone();
                }
                if *p > nhi {
                    nhi = p.clone();
                }
            }
            alo = nlo + c;
            ahi = nhi + c;
        }
        (alo, ahi)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn mul_scalar(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.mul_scalar(&(BigRational::one() / l)),
        }
    }

    /// Euclidean division: returns `(q, r)` with `self = q·other + r` and
    /// `deg r < deg other`. Panics on division by zero.
    pub fn divmod(&self, other: &Self) -> (Self, Self) {
        let d_div = other.degree().expect("polynomial division by zero");
        let lead = other.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d_div)];
        let mut k = rem.len();
        while k > d_div {
            k -= 1;
            let top = rem[k].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / &lead;
            quot[k - d_div] = q.clone();
            for (j, c) in other.coeffs.iter().enumerate() {
                let idx = k - d_div + j;
                rem[idx] = &rem[idx] - &q * c;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.divmod(other).1
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u·self + v·other = g`,
    /// `g` monic (or zero when both inputs are zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            (r0, r1) = (r1, r);
            (u0, u1) = (u1.clone(), u0.sub(&q.mul(&u1)));
            (v0, v1) = (v1.clone(), v0.sub(&q.mul(&v1)));
        }
        match r0.leading() {
            None => (r0, u0, v0),
            Some(l) => {
                let inv = BigRational::one() / l;
                (r0.mul_scalar(&inv), u0.mul_scalar(&inv), v0.mul_scalar(&inv))
            }
        }
    }

    /// Clears denominators and divides out content, leading coefficient
    /// positive; preserves roots.
    pub fn to_int_primitive(&self) -> IntPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num::Integer::lcm(&acc, c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .signed_primitive()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sturm chain of a squarefree polynomial. With the drop-zero sign-variation
/// convention, `variations(a) − variations(b)` counts the real roots in the
/// half-open interval `(a, b]`, including endpoints that happen to be roots.
#[derive(Clone)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain for `f`, which must be squarefree for the root-count
    /// semantics to hold.
    pub fn new(f: &IntPoly) -> Self {
        let mut chain = vec![f.to_rat()];
        let d = f.derivative().to_rat();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let r = chain[chain.len() - 2].rem(&chain[chain.len() - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    pub fn f(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<Ordering> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let s = if v.is_positive() { Ordering::Greater } else { Ordering::Less };
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; requires `a ≤ b`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a <= b);
        self.variations(a) - self.variations(b)
    }

    /// Splits `(a, b]` into disjoint half-open intervals each containing
    /// exactly one real root.
    pub fn isolate_roots(&self, a: &BigRational, b: &BigRational) -> Vec<(BigRational, BigRational)> {
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone(), self.count_roots(a, b))];
        while let Some((lo, hi, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
                    let left = self.count_roots(&lo, &mid);
                    stack.push((mid.clone(), hi, n - left));
                    stack.push((lo, mid, left));
                }
            }
        }
        out.sort_by(|p, q| p.0.cmp(&q.0));
        out
    }

    /// Shrinks an isolating interval `(lo, hi]` (containing exactly one root)
    /// until `hi − lo ≤ width`.
    pub fn refine(&self, lo: &mut BigRational, hi: &mut BigRational, width: &BigRational) {
        let two = BigRational::from(BigInt::from(2));
        while &(&*hi - &*lo) > width {
            let mid = (&*lo + &*hi) / &two;
            if self.count_roots(lo, &mid) == 1 {
                *hi = mid;
            } else {
                *lo = mid;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn int_poly_arithmetic() {
        let f = IntPoly::from_i64(&[-2, 0, 1]); // x² − 2
        let g = IntPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.eval_rational(&rat(3, 2)), rat(1, 4));
        assert_eq!(f.derivative(), IntPoly::from_i64(&[0, 2]));
        let prod = f.mul(&g); // x³ + x² − 2x − 2
        assert_eq!(prod, IntPoly::from_i64(&[-2, -2, 1, 1]));
        assert_eq!(prod.exact_div(&g), Some(f.clone()));
        assert_eq!(prod.exact_div(&IntPoly::from_i64(&[1, 2])), None);
        assert_eq!(IntPoly::from_i64(&[2, 4, 6]).content(), BigInt::from(2));
        assert_eq!(
            IntPoly::from_i64(&[-2, -4]).signed_primitive(),
            IntPoly::from_i64(&[1, 2])
        );
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (x − 1)²(x + 2) = x³ − 3x + 2
        let f = IntPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part(), IntPoly::from_i64(&[-2, 1, 1])); // (x−1)(x+2)
        let g = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(g.squarefree_part(), g);
    }

    #[test]
    fn rat_poly_divmod_and_gcd() {
        let f = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]); // x² − 2
        let g = RatPoly::new(vec![rat(1, 1), rat(1, 1)]); // x + 1
        let (q, r) = f.divmod(&g);
        assert_eq!(q, RatPoly::new(vec![rat(-1, 1), rat(1, 1)]));
        assert_eq!(r, RatPoly::constant(rat(-1, 1)));
        // gcd((x−1)(x+2), (x−1)(x−3)) = x − 1
        let a = RatPoly::new(vec![rat(-2, 1), rat(1, 1), rat(1, 1)]);
        let b = RatPoly::new(vec![rat(3, 1), rat(-4, 1), rat(1, 1)]);
        assert_eq!(RatPoly::gcd(&a, &b), RatPoly::new(vec![rat(-1, 1), rat(1, 1)]));
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn sturm_counts_and_isolates() {
        // (x² − 2)(x² − 3): roots ±√2, ±√3.
        let f = IntPoly::from_i64(&[6, 0, -5, 0, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_roots(&rat(-2, 1), &rat(2, 1)), 4);
        assert_eq!(chain.count_roots(&rat(0, 1), &rat(2, 1)), 2);
        assert_eq!(chain.count_roots(&rat(1, 1), &rat(3, 2)), 1);
        let iso = chain.isolate_roots(&rat(0, 1), &rat(2, 1));
        assert_eq!(iso.len(), 2);
        let (mut lo, mut hi) = iso[0].clone();
        chain.refine(&mut lo, &mut hi, &rat(1, 1000));
        // First positive root is √2 ≈ 1.41421.
        assert!(lo < rat(14143, 10000) && hi > rat(14142, 10000));
    }

    #[test]
    fn sturm_handles_root_endpoints() {
        // Roots at 1 and 2; half-open semantics include the right endpoint.
        let f = IntPoly::from_i64(&[2, -3, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_roots(&rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(chain.count_roots(&rat(0, 1), &rat(2, 1)), 2);
        assert_eq!(chain.count_roots(&rat(0, 1), &rat(1, 1)), 1);
        assert_eq!(chain.count_roots(&rat(2, 1), &rat(3, 1)), 0);
    }

    #[test]
    fn interval_horner_encloses() {
        let f = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]); // x² − 2
        let (lo, hi) = f.eval_interval(&rat(1, 1), &rat(3, 2));
        for t in [rat(1, 1), rat(5, 4), rat(3, 2)] {
            let v = f.eval(&t);
            assert!(lo <= v && v <= hi);
        }
    }
}
