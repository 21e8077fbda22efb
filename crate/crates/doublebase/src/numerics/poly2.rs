//! Bivariate integer polynomials, viewed as polynomials in a primary
//! variable with coefficients in ℤ[secondary], and their resultant via a
//! fraction-free (Bareiss) determinant of the Sylvester matrix.

use num::BigInt;

use super::poly::IntPoly;

/// Polynomial in `x` with coefficients in ℤ[`y`]; ascending powers of `x`,
/// no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: vec![] }
    }

    /// The constant (in `x`) polynomial `c(y)`.
    pub fn constant(c: IntPoly) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c(y) · x^k`.
    pub fn monomial(c: IntPoly, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![IntPoly::zero(); k + 1];
        coeffs[k] = c;
        BiPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the primary variable.
    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> IntPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![IntPoly::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
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
        let mut out = vec![IntPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn mul_coeff(&self, k: &IntPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_int(k)).collect())
    }

    /// Coefficient list in ascending powers of the primary variable.
    pub fn coeffs_x(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Resultant with respect to the primary variable: an element of
    /// ℤ[`y`] that vanishes exactly at the `y` values where the two inputs
    /// share a root in `x` (or both leading coefficients vanish).
    pub fn resultant_x(p: &BiPoly, q: &BiPoly) -> IntPoly {
        let (m, n) = match (p.degree_x(), q.degree_x()) {
            (Some(m), Some(n)) => (m, n),
            _ => return IntPoly::zero(),
        };
        if m == 0 && n == 0 {
            return IntPoly::one();
        }
        // Sylvester matrix: n rows of p's coefficients, m rows of q's,
        // descending powers, each shifted one column.
        let size = m + n;
        let mut mat = vec![vec![IntPoly::zero(); size]; size];
        for (row, item) in mat.iter_mut().take(n).enumerate() {
            for k in 0..=m {
                item[row + k] = p.coeff(m - k);
            }
        }
        for (row, item) in mat.iter_mut().skip(n).enumerate() {
            for k in 0..=n {
                item[row + k] = q.coeff(n - k);
            }
        }
        bareiss_determinant(mat)
    }
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({:?})*x^{}", c, i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Fraction-free determinant over ℤ[y]. Every division in the Bareiss
/// recurrence is exact in the polynomial ring.
fn bareiss_determinant(mut mat: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = mat.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return IntPoly::zero(),
            }
        }
        let pivot = mat[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            mat[i][k] = IntPoly::zero();
        }
        prev = pivot;
    }
    let det = mat[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}
