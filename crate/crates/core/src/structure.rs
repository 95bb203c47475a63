//! Symmetry, unimodality, gamma-vectors and symmetric decompositions.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// `x^n p(1/x)`: coefficient `i` of the result is coefficient `n - i` of `p`.
pub fn reciprocal(p: &Poly, n: usize) -> Result<Poly> {
    p.check_degree(n)?;
    Ok(Poly::from_coeffs((0..=n).map(|i| p.coeff(n - i)).collect()))
}

/// Symmetric with center `n/2`. The zero polynomial is symmetric for every `n`;
/// polynomials of degree above `n` never are.
pub fn is_symmetric(p: &Poly, n: usize) -> bool {
    reciprocal(p, n).is_ok_and(|r| &r == p)
}

/// Least peak index of a nonnegative unimodal coefficient sequence.
///
/// The zero polynomial is reported as unimodal with peak 0.
pub fn is_unimodal(p: &Poly) -> Option<usize> {
    let c = p.coeffs();
    if c.iter().any(Signed::is_negative) {
        return None;
    }
    if c.is_empty() {
        return Some(0);
    }
    let max = c.iter().max().expect("nonempty");
    let peak = c.iter().position(|a| a == max).expect("max is present");
    let rises = c[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falls = c[peak..].windows(2).all(|w| w[0] >= w[1]);
    (rises && falls).then_some(peak)
}

/// True when `a_{ceil(n/2)}` is a maximum coefficient of a unimodal `p`.
pub fn has_peak_at_center(p: &Poly, n: usize) -> bool {
    if is_unimodal(p).is_none() {
        return false;
    }
    let mid = p.coeff(n.div_ceil(2));
    p.coeffs().iter().all(|c| c <= &mid)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub gammas: Vec<Rational>,
}

impl GammaVector {
    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    /// `sum gamma_i x^i (1+x)^(n-2i)`.
    pub fn expand(&self) -> Poly {
        self.gammas.iter().enumerate().map(|(i, g)| Poly::one_plus_x_pow(self.n - 2 * i).shift(i).scale(g)).sum()
    }
}

/// Gamma-vector of `p` with respect to center `n/2`, or `None` when `p` is not
/// symmetric with that center.
pub fn gamma_expand(p: &Poly, n: usize) -> Option<GammaVector> {
    if !is_symmetric(p, n) {
        return None;
    }
    let mut rest = p.clone();
    let mut gammas = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = rest.coeff(i);
        if !g.is_zero() {
            rest -= &Poly::one_plus_x_pow(n - 2 * i).shift(i).scale(&g);
        }
        gammas.push(g);
    }
    debug_assert!(rest.is_zero(), "symmetric input peels to zero");
    Some(GammaVector { n, gammas })
}

/// Symmetric with center `n/2` and every gamma coefficient nonnegative.
pub fn is_gamma_positive(p: &Poly, n: usize) -> bool {
    gamma_expand(p, n).is_some_and(|g| g.is_nonnegative())
}

/// The unique split `p = a + x b` with `a` symmetric about `n/2` and `b`
/// symmetric about `(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    pub n: usize,
    pub a: Poly,
    pub b: Poly,
}

impl SymmetricDecomposition {
    pub fn reconstruct(&self) -> Poly {
        &self.a + &self.b.shift(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a.has_nonnegative_coeffs() && self.b.has_nonnegative_coeffs()
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.a).is_some() && is_unimodal(&self.b).is_some()
    }

    pub fn is_gamma_positive(&self) -> bool {
        is_gamma_positive(&self.a, self.n)
            && (self.b.is_zero() || self.n >= 1 && is_gamma_positive(&self.b, self.n - 1))
    }
}

pub fn symmetric_decomposition(p: &Poly, n: usize) -> Result<SymmetricDecomposition> {
    let rev = reciprocal(p, n)?;
    let b = (p - &rev).exact_div(&Poly::from_ints(&[-1, 1])).map_err(|e| match e {
        Error::InexactDivision(m) => Error::IdentityFailure(format!("p - I_n(p) not divisible by x - 1: {m}")),
        other => other,
    })?;
    let a = p - &b.shift(1);
    Ok(SymmetricDecomposition { n, a, b })
}

/// Coordinates `c_0..c_n` of `p` in the basis `x^(n-k) (1+x)^k`.
pub fn basis_p_coeffs(p: &Poly, n: usize) -> Result<Vec<Rational>> {
    p.check_degree(n)?;
    let mut rest = p.clone();
    let mut c = vec![Rational::zero(); n + 1];
    // x^(n-k)(1+x)^k has lowest term x^(n-k) with coefficient 1, so peel from
    // the constant term upwards.
    for low in 0..=n {
        let k = n - low;
        let ck = rest.coeff(low);
        if !ck.is_zero() {
            rest -= &basis_p_element(n, k).scale(&ck);
        }
        c[k] = ck;
    }
    debug_assert!(rest.is_zero());
    Ok(c)
}

/// `x^(n-k) (1+x)^k`.
pub fn basis_p_element(n: usize, k: usize) -> Poly {
    Poly::one_plus_x_pow(k).shift(n - k)
}

/// `sum c_k x^(n-k) (1+x)^k`.
pub fn from_basis_p(c: &[Rational]) -> Poly {
    let n = c.len().saturating_sub(1);
    c.iter().enumerate().map(|(k, ck)| basis_p_element(n, k).scale(ck)).sum()
}

/// Membership in the nonnegative cone spanned by `x^(n-k)(1+x)^k`.
pub fn in_p_cone(p: &Poly, n: usize) -> bool {
    basis_p_coeffs(p, n).is_ok_and(|c| c.iter().all(|v| !v.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly, rat};

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal(&poly("1+2x"), 2).unwrap(), poly("2x+x^2"));
        assert_eq!(reciprocal(&poly("1+4x+x^2"), 2).unwrap(), poly("1+4x+x^2"));
        assert_eq!(reciprocal(&poly("1+11x+11x^2+x^3"), 4).unwrap(), poly("x+11x^2+11x^3+x^4"));
        assert_eq!(reciprocal(&poly("x^3"), 2), Err(Error::DegreeOverflow { degree: 3, bound: 2 }));
        assert_eq!(reciprocal(&Poly::zero(), 3).unwrap(), Poly::zero());
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&poly("1+3x+x^2"), 2));
        assert!(!is_symmetric(&poly("1+2x"), 2));
        assert!(is_symmetric(&Poly::zero(), 0));
        assert!(is_symmetric(&Poly::zero(), 7));
        assert!(!is_symmetric(&poly("1+x+x^2"), 1));
    }

    #[test]
    fn unimodal_examples() {
        assert_eq!(is_unimodal(&poly("1+13x+20x^2+4x^3")), Some(2));
        assert_eq!(is_unimodal(&poly("1-x")), None);
        assert_eq!(is_unimodal(&poly("1+x+x^2")), Some(0));
        assert_eq!(is_unimodal(&poly("1+x^2")), None);
        assert_eq!(is_unimodal(&poly("x+x^2")), Some(1));
        assert_eq!(is_unimodal(&Poly::zero()), Some(0));
        assert!(has_peak_at_center(&poly("1+26x+66x^2+26x^3+x^4"), 4));
        assert!(!has_peak_at_center(&poly("1+3x+x^2"), 4));
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_expand(&Poly::one_plus_x_pow(3), 3).unwrap();
        assert_eq!(g.gammas, vec![rat(1), rat(0)]);
        let g = gamma_expand(&poly("x+x^2"), 3).unwrap();
        assert_eq!(g.gammas, vec![rat(0), rat(1)]);
        let g = gamma_expand(&poly("1+3x+x^2"), 2).unwrap();
        assert_eq!(g.gammas, vec![rat(1), rat(1)]);
        assert_eq!(g.expand(), poly("1+3x+x^2"));
        assert!(gamma_expand(&poly("1+2x"), 2).is_none());
        // symmetric but not gamma-positive
        let g = gamma_expand(&poly("1+x+x^2"), 2).unwrap();
        assert_eq!(g.gammas, vec![rat(1), rat(-1)]);
        assert!(!is_gamma_positive(&poly("1+x+x^2"), 2));
    }

    #[test]
    fn decomposition_examples() {
        let d = symmetric_decomposition(&poly("x^2+2x"), 2).unwrap();
        assert_eq!(d.a, poly("x"));
        assert_eq!(d.b, poly("1+x"));
        let p = poly("1+4x+x^2");
        let d = symmetric_decomposition(&p, 2).unwrap();
        assert_eq!((d.a, d.b), (p, Poly::zero()));
        let d = symmetric_decomposition(&poly("1+2x"), 2).unwrap();
        assert_eq!(d.a, poly("1+3x+x^2"));
        assert_eq!(d.b, poly("-1-x"));
        assert!(!d.is_nonnegative());
        assert!(symmetric_decomposition(&poly("x^3"), 2).is_err());
    }

    #[test]
    fn basis_examples() {
        let c = basis_p_coeffs(&Poly::one_plus_x_pow(4), 4).unwrap();
        assert_eq!(c, vec![rat(0), rat(0), rat(0), rat(0), rat(1)]);
        let c = basis_p_coeffs(&poly("x^4"), 4).unwrap();
        assert_eq!(c, vec![rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let c = basis_p_coeffs(&poly("1+3x+3x^2"), 2).unwrap();
        assert_eq!(c, vec![rat(1), rat(1), rat(1)]);
        assert_eq!(from_basis_p(&c), poly("1+3x+3x^2"));
        assert!(!in_p_cone(&poly("1-x"), 1));
        assert!(basis_p_coeffs(&poly("x^3"), 2).is_err());
    }
}
