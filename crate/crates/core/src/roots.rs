//! Exact real-root certification: Sturm chains, root isolation with
//! multiplicities, and the interlacing relation `p ⪯ q`.
//!
//! Everything here is decided with rational arithmetic. Roots are never
//! approximated; they are located in disjoint half-open intervals `(lo, hi]`
//! whose endpoints are dyadic rationals, and roots shared by two polynomials
//! are detected exactly because both are isolated against the squarefree part
//! of their product.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};
use crate::structure::{reciprocal, symmetric_decomposition, SymmetricDecomposition};
use crate::zpoly::{self, ZPoly};

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    head: Poly,
    chain: Vec<ZPoly>,
}

impl SturmChain {
    /// Builds the chain `p, p', -rem(...)...` over primitive integer
    /// multiples. Each element is rescaled by a positive constant, which
    /// leaves sign patterns unchanged.
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let first = zpoly::primitive_of(p);
        let d = zpoly::make_primitive(zpoly::derivative(&first));
        let mut chain = vec![first];
        if !d.is_empty() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = zpoly::pseudo_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(r.into_iter().map(|c| -c).collect());
            }
        }
        Ok(SturmChain { head: p.clone(), chain })
    }

    pub fn head(&self) -> &Poly {
        &self.head
    }

    /// Sign of the head polynomial at `x`.
    pub fn head_sign_at(&self, x: &Rational) -> i8 {
        zpoly::sign_at(&self.chain[0], x)
    }

    fn signs_at(&self, at: &Bound) -> Vec<i8> {
        self.chain
            .iter()
            .map(|q| {
                let lc = if q.last().expect("chain has no zero entries").is_negative() { -1 } else { 1 };
                match at {
                    Bound::PosInf => lc,
                    Bound::NegInf => {
                        if (q.len() - 1) % 2 == 0 {
                            lc
                        } else {
                            -lc
                        }
                    }
                    Bound::At(x) => zpoly::sign_at(q, x),
                }
            })
            .collect()
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let nonzero: Vec<i8> = self.signs_at(at).into_iter().filter(|&s| s != 0).collect();
        nonzero.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots of the head polynomial in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let (vl, vh) = (self.variations(lo), self.variations(hi));
        vl.saturating_sub(vh)
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_distinct_real_roots(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let sq = p.squarefree_part()?;
    if sq.is_constant() {
        return Ok(0);
    }
    Ok(SturmChain::new(&sq)?.count(lo, hi))
}

/// Smallest power of two strictly exceeding every root modulus (Cauchy bound).
fn root_bound(p: &Poly) -> Rational {
    let m = p.monic();
    let d = m.degree().unwrap_or(0);
    let max = m.coeffs()[..d].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    let cauchy = max + Rational::one();
    let mut b = Rational::one();
    while b <= cauchy {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

/// Interval `(lo, hi]`, or the exact point `lo` when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
    }
}

/// Isolate the distinct real roots of a squarefree polynomial, ascending.
fn isolate_squarefree(sq: &Poly, chain: &SturmChain) -> Vec<(Rational, Rational)> {
    if sq.is_constant() {
        return Vec::new();
    }
    let b = root_bound(sq);
    let two = Rational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = chain.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()));
        match c {
            0 => {}
            1 => {
                if chain.head_sign_at(&hi) == 0 {
                    out.push((hi.clone(), hi));
                } else {
                    out.push((lo, hi));
                }
            }
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// Per-polynomial data reused across pairwise interlacing checks.
#[derive(Clone, Debug)]
pub struct RootData {
    poly: Poly,
    squarefree: Poly,
    /// `(multiplicity, chain of the squarefree factor with that multiplicity)`.
    factors: Vec<(usize, SturmChain)>,
    real_roots_with_multiplicity: usize,
}

impl RootData {
    pub fn new(p: &Poly) -> Result<Self> {
        let (_, yun) = p.squarefree_factorization()?;
        let mut factors = Vec::new();
        let mut real = 0;
        for (i, f) in yun.into_iter().enumerate() {
            if f.is_constant() {
                continue;
            }
            let chain = SturmChain::new(&f)?;
            real += (i + 1) * chain.count(&Bound::NegInf, &Bound::PosInf);
            factors.push((i + 1, chain));
        }
        Ok(RootData { poly: p.clone(), squarefree: p.squarefree_part()?, factors, real_roots_with_multiplicity: real })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("RootData holds nonzero polynomials")
    }

    pub fn is_real_rooted(&self) -> bool {
        self.real_roots_with_multiplicity == self.degree()
    }

    fn multiplicity_in(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo == hi {
            return self.factors.iter().filter(|(_, c)| c.head_sign_at(hi) == 0).map(|(m, _)| *m).sum();
        }
        let (lo, hi) = (Bound::At(lo.clone()), Bound::At(hi.clone()));
        self.factors.iter().map(|(m, c)| m * c.count(&lo, &hi)).sum()
    }
}

/// Distinct real roots of a family of polynomials, ascending, with the
/// multiplicity of each root in each input.
fn common_profile(data: &[&RootData]) -> Result<Vec<(Rational, Rational, Vec<usize>)>> {
    let mut prod = Poly::one();
    for d in data {
        prod = &prod * &d.squarefree;
    }
    let sq = prod.squarefree_part()?;
    if sq.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sq)?;
    Ok(isolate_squarefree(&sq, &chain)
        .into_iter()
        .map(|(lo, hi)| {
            let mults = data.iter().map(|d| d.multiplicity_in(&lo, &hi)).collect();
            (lo, hi, mults)
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
    pub total_multiplicity: usize,
    chain: SturmChain,
}

impl RootIsolation {
    /// Shrink every non-exact interval to width at most `width` by dyadic bisection.
    pub fn refine(&mut self, width: &Rational) {
        let two = Rational::from_integer(BigInt::from(2));
        for iv in &mut self.intervals {
            while !iv.is_exact() && &iv.width() > width {
                let mid = (&iv.lo + &iv.hi) / &two;
                if self.chain.head_sign_at(&mid) == 0 {
                    iv.lo = mid.clone();
                    iv.hi = mid;
                    break;
                }
                let left = self.chain.count(&Bound::At(iv.lo.clone()), &Bound::At(mid.clone()));
                if left == 1 {
                    iv.hi = mid;
                } else {
                    iv.lo = mid;
                }
            }
        }
    }
}

/// Isolating intervals with multiplicities for a nonzero real-rooted polynomial.
pub fn isolate_roots(p: &Poly) -> Result<RootIsolation> {
    let data = RootData::new(p)?;
    if !data.is_real_rooted() {
        return Err(Error::NotRealRooted(p.to_string()));
    }
    let profile = common_profile(&[&data])?;
    let intervals: Vec<RootInterval> =
        profile.into_iter().map(|(lo, hi, m)| RootInterval { lo, hi, multiplicity: m[0] }).collect();
    let total_multiplicity = intervals.iter().map(|i| i.multiplicity).sum();
    let chain =
        if data.squarefree.is_constant() { SturmChain::new(&Poly::one())? } else { SturmChain::new(&data.squarefree)? };
    Ok(RootIsolation { intervals, total_multiplicity, chain })
}

/// Every root real, or `p ≡ 0`. Nonzero constants are real-rooted.
pub fn is_real_rooted(p: &Poly) -> bool {
    match p.degree() {
        None | Some(0) => true,
        Some(_) => RootData::new(p).is_ok_and(|d| d.is_real_rooted()),
    }
}

/// Either a polynomial known to be zero/constant or its root data.
#[derive(Clone, Debug)]
pub enum Prepared {
    Zero,
    Constant,
    Roots(RootData),
}

impl Prepared {
    pub fn new(p: &Poly) -> Self {
        match p.degree() {
            None => Prepared::Zero,
            Some(0) => Prepared::Constant,
            Some(_) => Prepared::Roots(RootData::new(p).expect("nonzero polynomial")),
        }
    }

    pub fn is_real_rooted(&self) -> bool {
        match self {
            Prepared::Zero | Prepared::Constant => true,
            Prepared::Roots(d) => d.is_real_rooted(),
        }
    }

    fn degree(&self) -> Option<usize> {
        match self {
            Prepared::Zero => None,
            Prepared::Constant => Some(0),
            Prepared::Roots(d) => Some(d.degree()),
        }
    }
}

/// `p ⪯ q` on prepared inputs; `false` whenever either side is not real-rooted.
pub fn interlaces_prepared(p: &Prepared, q: &Prepared) -> bool {
    if !p.is_real_rooted() || !q.is_real_rooted() {
        return false;
    }
    let (dp, dq) = match (p.degree(), q.degree()) {
        (None, _) | (_, None) => return true,
        (Some(dp), Some(dq)) => (dp, dq),
    };
    if dp == 0 {
        return dq <= 1;
    }
    if dq < dp || dq - dp > 1 {
        return false;
    }
    let (Prepared::Roots(pd), Prepared::Roots(qd)) = (p, q) else {
        unreachable!("both sides are nonconstant here");
    };
    let profile = common_profile(&[pd, qd]).expect("nonzero inputs");
    // Distinct-root indices in descending order, repeated by multiplicity.
    let expand = |which: usize| -> Vec<usize> {
        profile.iter().enumerate().rev().flat_map(|(idx, (_, _, m))| std::iter::repeat_n(idx, m[which])).collect()
    };
    let alpha = expand(0);
    let beta = expand(1);
    debug_assert_eq!(alpha.len(), dp);
    debug_assert_eq!(beta.len(), dq);
    (0..dp).all(|i| alpha[i] <= beta[i] && (i + 1 >= dq || beta[i + 1] <= alpha[i]))
}

/// `p ⪯ q`: the roots of `p` and `q` weakly alternate with the largest root
/// belonging to `q`. The zero polynomial interlaces and is interlaced by every
/// real-rooted polynomial; a nonzero constant interlaces every polynomial of
/// degree at most one.
pub fn interlaces(p: &Poly, q: &Poly) -> bool {
    interlaces_prepared(&Prepared::new(p), &Prepared::new(q))
}

/// Like [`interlaces`], but errors when an input is not real-rooted.
pub fn interlaces_strict(p: &Poly, q: &Poly) -> Result<bool> {
    for r in [p, q] {
        if !is_real_rooted(r) {
            return Err(Error::NotRealRooted(r.to_string()));
        }
    }
    Ok(interlaces(p, q))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SequenceVerdict {
    pub len: usize,
    /// Indices of members that are not real-rooted.
    pub not_real_rooted: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, with `p_i ⪯ p_j` failing.
    pub interlacing_pairs_failed: Vec<(usize, usize)>,
}

impl SequenceVerdict {
    pub fn is_interlacing(&self) -> bool {
        self.not_real_rooted.is_empty() && self.interlacing_pairs_failed.is_empty()
    }
}

/// Checks every pair `i < j`; transitivity is never assumed.
pub fn check_interlacing_sequence(ps: &[Poly]) -> SequenceVerdict {
    let prepared: Vec<Prepared> = ps.iter().map(Prepared::new).collect();
    let mut v = SequenceVerdict { len: ps.len(), ..Default::default() };
    for (i, p) in prepared.iter().enumerate() {
        if !p.is_real_rooted() {
            v.not_real_rooted.push(i);
        }
    }
    for i in 0..prepared.len() {
        for j in i + 1..prepared.len() {
            if !interlaces_prepared(&prepared[i], &prepared[j]) {
                v.interlacing_pairs_failed.push((i, j));
            }
        }
    }
    v
}

pub fn is_interlacing_sequence(ps: &[Poly]) -> bool {
    check_interlacing_sequence(ps).is_interlacing()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionVerdict {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub a: Poly,
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub b: Poly,
    pub nonnegative: bool,
    pub unimodal: bool,
    pub gamma_positive: bool,
    pub real_rooted: bool,
    /// `b ⪯ a`.
    pub interlacing: bool,
    pub p_real_rooted: bool,
}

impl DecompositionVerdict {
    /// Nonnegative, real-rooted and interlacing.
    pub fn is_real_rooted_interlacing(&self) -> bool {
        self.nonnegative && self.real_rooted && self.interlacing
    }
}

/// Flags for the symmetric decomposition of `p` with respect to `n`.
///
/// When the decomposition is nonnegative, `b ⪯ a`, `a ⪯ p`, `b ⪯ p` and
/// `I_n(p) ⪯ p` must agree, and an interlacing decomposition forces `p` to be
/// real-rooted; a disagreement is returned as [`Error::IdentityFailure`].
pub fn interlacing_symmetric_decomposition(p: &Poly, n: usize) -> Result<DecompositionVerdict> {
    let SymmetricDecomposition { a, b, .. } = symmetric_decomposition(p, n)?;
    let dec = SymmetricDecomposition { n, a: a.clone(), b: b.clone() };
    let pa = Prepared::new(&a);
    let pb = Prepared::new(&b);
    let pp = Prepared::new(p);
    let interlacing = interlaces_prepared(&pb, &pa);
    let verdict = DecompositionVerdict {
        n,
        nonnegative: dec.is_nonnegative(),
        unimodal: dec.is_unimodal(),
        gamma_positive: dec.is_gamma_positive(),
        real_rooted: pa.is_real_rooted() && pb.is_real_rooted(),
        interlacing,
        p_real_rooted: pp.is_real_rooted(),
        a,
        b,
    };
    if verdict.nonnegative {
        let rev = Prepared::new(&reciprocal(p, n)?);
        let flags =
            [interlacing, interlaces_prepared(&pa, &pp), interlaces_prepared(&pb, &pp), interlaces_prepared(&rev, &pp)];
        if flags.iter().any(|&f| f != flags[0]) {
            return Err(Error::IdentityFailure(format!(
                "interlacing equivalences disagree for p = {p}, n = {n}: {flags:?}"
            )));
        }
        if interlacing && !verdict.p_real_rooted {
            return Err(Error::IdentityFailure(format!("interlacing decomposition of non-real-rooted p = {p}")));
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly, rat};

    fn all_line() -> (Bound, Bound) {
        (Bound::NegInf, Bound::PosInf)
    }

    #[test]
    fn sturm_counts() {
        let p = poly("x^2 - 2");
        let n = sturm_distinct_real_roots(&p, &Bound::At(rat(-2)), &Bound::At(rat(2))).unwrap();
        assert_eq!(n, 2);
        let (lo, hi) = all_line();
        assert_eq!(sturm_distinct_real_roots(&Poly::linear_pow(1, 1, 3), &lo, &hi).unwrap(), 1);
        let a4 = poly("1+11x+11x^2+x^3");
        assert_eq!(sturm_distinct_real_roots(&a4, &Bound::NegInf, &Bound::At(rat(0))).unwrap(), 3);
        assert_eq!(sturm_distinct_real_roots(&Poly::zero(), &lo, &hi), Err(Error::ZeroPolynomial));
        // half-open: right endpoint counted, left not
        let x = Poly::x();
        assert_eq!(sturm_distinct_real_roots(&x, &Bound::At(rat(-1)), &Bound::At(rat(0))).unwrap(), 1);
        assert_eq!(sturm_distinct_real_roots(&x, &Bound::At(rat(0)), &Bound::At(rat(1))).unwrap(), 0);
    }

    #[test]
    fn real_rootedness() {
        assert!(!is_real_rooted(&poly("x^2+1")));
        assert!(is_real_rooted(&Poly::zero()));
        assert!(is_real_rooted(&poly("5")));
        assert!(is_real_rooted(&poly("1+14x+26x^2+8x^3")));
        // real roots but a complex pair too
        assert!(!is_real_rooted(&(poly("x^2+1") * poly("x-3"))));
        // repeated real roots
        assert!(is_real_rooted(&Poly::linear_pow(1, 1, 5)));
    }

    #[test]
    fn isolation() {
        let iso = isolate_roots(&(poly("x+1") * poly("x+2"))).unwrap();
        assert_eq!(iso.intervals.len(), 2);
        assert_eq!(iso.total_multiplicity, 2);
        for (iv, root) in iso.intervals.iter().zip([-2, -1]) {
            assert!(iv.lo < rat(root) && rat(root) <= iv.hi || iv.is_exact() && iv.lo == rat(root));
            assert_eq!(iv.multiplicity, 1);
        }

        let iso = isolate_roots(&(poly("x^2") * poly("x+1"))).unwrap();
        assert_eq!(iso.total_multiplicity, 3);
        assert!(iso.intervals.iter().all(RootInterval::is_exact));
        assert_eq!(iso.intervals[0].lo, rat(-1));
        assert_eq!(iso.intervals[0].multiplicity, 1);
        assert_eq!(iso.intervals[1].lo, rat(0));
        assert_eq!(iso.intervals[1].multiplicity, 2);

        assert!(matches!(isolate_roots(&poly("x^2+1")), Err(Error::NotRealRooted(_))));
        assert_eq!(isolate_roots(&Poly::zero()).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn isolation_of_a3_brackets_quadratic_roots() {
        // both roots -2 ± sqrt(3) are simple, so a sign change brackets each
        let p = poly("1+4x+x^2");
        let mut iso = isolate_roots(&p).unwrap();
        iso.refine(&Rational::new(1.into(), 1024.into()));
        assert_eq!(iso.intervals.len(), 2);
        for iv in &iso.intervals {
            assert!(iv.width() <= Rational::new(1.into(), 1024.into()));
            assert!(p.eval(&iv.lo) * p.eval(&iv.hi) < Rational::zero());
        }
        let approx: Vec<f64> = iso.intervals.iter().map(RootInterval::approx).collect();
        let exact = [-2.0 - 3f64.sqrt(), -2.0 + 3f64.sqrt()];
        for (a, e) in approx.iter().zip(exact) {
            assert!((a - e).abs() < 1e-3);
        }
    }

    #[test]
    fn interlacing_conventions() {
        let a2 = poly("1+x");
        let q21 = poly("1+2x");
        assert!(interlaces(&a2, &q21));
        assert!(!interlaces(&q21, &a2));
        assert!(interlaces(&Poly::zero(), &poly("1+3x+x^2")));
        assert!(interlaces(&poly("1+3x+x^2"), &Poly::zero()));
        assert!(!interlaces(&Poly::zero(), &poly("1+x^2")));
        assert!(!interlaces(&poly("1+3x+x^2"), &poly("1+x")));
        // constants against degree <= 1
        assert!(interlaces(&poly("3"), &poly("1+x")));
        assert!(interlaces(&poly("3"), &poly("-2")));
        assert!(!interlaces(&poly("3"), &poly("1+3x+x^2")));
        assert!(!interlaces(&poly("1+x"), &poly("3")));
        // shared roots and sign of leading coefficient
        assert!(interlaces(&poly("x+x^2"), &poly("x+x^2")));
        assert!(interlaces(&poly("-1-x"), &poly("x+x^2")));
        assert!(interlaces(&poly("1+x"), &poly("x+x^2")));
        assert!(!interlaces(&poly("x"), &poly("1+x")));
        // non-real-rooted input
        assert!(!interlaces(&poly("1+x^2"), &poly("1+x+x^3")));
        assert!(interlaces_strict(&poly("1+x^2"), &poly("x")).is_err());
        assert!(interlaces_strict(&poly("1+x"), &poly("x")).is_ok());
    }

    #[test]
    fn interlacing_sequences() {
        let pn2 = [poly("1+x"), poly("2x"), poly("x+x^2")];
        assert!(is_interlacing_sequence(&pn2));
        let bad = [Poly::linear_pow(1, 1, 2), poly("1+x") * poly("1+2x"), Poly::linear_pow(1, 2, 2)];
        let v = check_interlacing_sequence(&bad);
        assert_eq!(v.interlacing_pairs_failed, vec![(0, 2)]);
        assert!(is_interlacing_sequence(&[poly("1+4x+x^2")]));
        assert!(!is_interlacing_sequence(&[poly("1+x^2")]));
        assert!(is_interlacing_sequence(&[]));
    }

    #[test]
    fn decomposition_verdicts() {
        let v = interlacing_symmetric_decomposition(&poly("x^2+2x"), 2).unwrap();
        assert!(v.nonnegative && v.interlacing && v.real_rooted);
        assert_eq!(v.b, poly("1+x"));

        let p = poly("1+15x+33x^2+15x^3+x^4");
        let v = interlacing_symmetric_decomposition(&p, 4).unwrap();
        assert!(v.b.is_zero() && v.interlacing && v.gamma_positive);

        // I_4(q_{4,2})
        let p = poly("4x+20x^2+13x^3+x^4");
        let v = interlacing_symmetric_decomposition(&p, 4).unwrap();
        assert!(v.nonnegative && v.unimodal && v.gamma_positive && v.real_rooted);
        assert!(v.interlacing && v.p_real_rooted);

        let v = interlacing_symmetric_decomposition(&poly("1+2x"), 2).unwrap();
        assert!(!v.nonnegative);
        assert!(interlacing_symmetric_decomposition(&poly("x^3"), 2).is_err());
    }
}
