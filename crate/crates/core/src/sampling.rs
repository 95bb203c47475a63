//! Seeded random members of the cone `P_n[x]` and the checks run on them.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::poly::{Poly, Rational};
use crate::roots::{interlaces, interlacing_symmetric_decomposition, is_real_rooted, DecompositionVerdict};
use crate::simplicial::FTriangle;
use crate::structure::{from_basis_p, reciprocal, symmetric_decomposition};
use crate::transforms::{FamilyCache, LinearTransform};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `u/d` with `u` in `0..=99` and `d` in `1..=9`.
pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    let u: i64 = rng.gen_range(0..=99);
    let d: i64 = rng.gen_range(1..=9);
    Rational::new(BigInt::from(u), BigInt::from(d))
}

/// Coordinates `c_0..c_n` of a random member of `P_n[x]` in the basis
/// `x^(n-k) (1+x)^k`. The all-zero draw is replaced by `c_n = 1`.
pub fn sample_cone(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let mut c: Vec<Rational> = (0..=n).map(|_| random_coefficient(rng)).collect();
    if c.iter().all(|v| *v == Rational::from_integer(0.into())) {
        c[n] = Rational::from_integer(1.into());
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianSample {
    pub index: usize,
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub coords: Vec<Rational>,
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub image: Poly,
    pub real_rooted: bool,
    /// `Ã_n ⪯ A°(p)`.
    pub interlaced_by_binomial: bool,
    /// `A°(p) ⪯ x A_n`.
    pub interlaces_x_eulerian: bool,
    pub decomposition: DecompositionVerdict,
}

impl EulerianSample {
    pub fn passed(&self) -> bool {
        self.real_rooted
            && self.interlaced_by_binomial
            && self.interlaces_x_eulerian
            && self.decomposition.is_real_rooted_interlacing()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerangementSample {
    pub index: usize,
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub coords: Vec<Rational>,
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub image: Poly,
    pub real_rooted: bool,
    /// Decomposition of `I_n(D(p))`.
    pub decomposition: DecompositionVerdict,
}

impl DerangementSample {
    pub fn passed(&self) -> bool {
        self.real_rooted && self.decomposition.is_real_rooted_interlacing()
    }
}

/// Checks `A°(p)` for `p = sum c_k x^(n-k) (1+x)^k`.
pub fn check_eulerian(
    cache: &mut FamilyCache,
    n: usize,
    index: usize,
    coords: Vec<Rational>,
) -> Result<EulerianSample> {
    let p = from_basis_p(&coords);
    let image = LinearTransform::eulerian_interior(cache, n).apply(&p)?;
    let lower = cache.binomial_eulerian(n)?;
    let upper = cache.eulerian(n).shift(1);
    Ok(EulerianSample {
        index,
        real_rooted: is_real_rooted(&image),
        interlaced_by_binomial: interlaces(&lower, &image),
        interlaces_x_eulerian: interlaces(&image, &upper),
        decomposition: interlacing_symmetric_decomposition(&image, n)?,
        coords,
        image,
    })
}

/// Checks `I_n(D(p))` for `p = sum c_k x^(n-k) (1+x)^k`.
pub fn check_derangement(
    cache: &mut FamilyCache,
    n: usize,
    index: usize,
    coords: Vec<Rational>,
) -> Result<DerangementSample> {
    let p = from_basis_p(&coords);
    let image = LinearTransform::derangement(cache, n).apply(&p)?;
    Ok(DerangementSample {
        index,
        real_rooted: is_real_rooted(&image),
        decomposition: interlacing_symmetric_decomposition(&reciprocal(&image, n)?, n)?,
        coords,
        image,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub eulerian: Vec<EulerianSample>,
    pub derangement: Vec<DerangementSample>,
}

impl SampleReport {
    pub fn eulerian_passed(&self) -> usize {
        self.eulerian.iter().filter(|s| s.passed()).count()
    }

    pub fn derangement_passed(&self) -> usize {
        self.derangement.iter().filter(|s| s.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.eulerian_passed() == self.eulerian.len() && self.derangement_passed() == self.derangement.len()
    }
}

/// `samples` draws from `P_n[x]`; each is pushed through `A°` and `D`.
pub fn sample_theorem(cache: &mut FamilyCache, n: usize, samples: usize, seed: u64) -> Result<SampleReport> {
    let mut rng = rng(seed);
    let mut eulerian = Vec::with_capacity(samples);
    let mut derangement = Vec::with_capacity(samples);
    for index in 0..samples {
        let coords = sample_cone(n, &mut rng);
        eulerian.push(check_eulerian(cache, n, index, coords.clone())?);
        derangement.push(check_derangement(cache, n, index, coords)?);
    }
    Ok(SampleReport { n, seed, samples, eulerian, derangement })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeTermSample {
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub abc: Vec<Rational>,
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub poly: Poly,
    pub real_rooted: bool,
    /// Decomposition of `x (a A_n + b A_(n-1) + c A_(n-2))` with respect to `n`.
    pub decomposition: DecompositionVerdict,
}

impl ThreeTermSample {
    pub fn passed(&self) -> bool {
        self.real_rooted && self.decomposition.is_real_rooted_interlacing()
    }
}

/// `a A_n + b A_(n-1) + c A_(n-2)` with `c >= 0`, `b = c + s`, `a = (b - c) + t`.
pub fn sample_three_term(cache: &mut FamilyCache, n: usize, samples: usize, seed: u64) -> Result<Vec<ThreeTermSample>> {
    assert!(n >= 2, "three-term combination needs n >= 2");
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let c = random_coefficient(&mut rng);
        let b = &c + &random_coefficient(&mut rng);
        let a = (&b - &c) + random_coefficient(&mut rng);
        let poly =
            &(&cache.eulerian(n).scale(&a) + &cache.eulerian(n - 1).scale(&b)) + &cache.eulerian(n - 2).scale(&c);
        out.push(ThreeTermSample {
            real_rooted: is_real_rooted(&poly),
            decomposition: interlacing_symmetric_decomposition(&poly.shift(1), n)?,
            abc: vec![a, b, c],
            poly,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformSample {
    pub index: usize,
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub coords: Vec<Rational>,
    /// `H°_F(p)`.
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub interior: Poly,
    /// `I_n(L_F(p))`.
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub local: Poly,
    pub interior_unimodal: bool,
    pub interior_gamma_positive: bool,
    pub local_unimodal: bool,
    pub local_gamma_positive: bool,
}

/// Samples `p` in `P_n[x]` for `n = F.n` and records the shape of the symmetric
/// decompositions of `H°_F(p)` and `I_n(L_F(p))` with respect to `n`.
pub fn sample_uniform(ft: &FTriangle, samples: usize, seed: u64) -> Result<Vec<UniformSample>> {
    let n = ft.n;
    let hc = ft.h_interior_transform()?;
    let l = ft.local_transform()?;
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(samples);
    for index in 0..samples {
        let coords = sample_cone(n, &mut rng);
        let p = from_basis_p(&coords);
        let interior = hc.apply(&p)?;
        let local = reciprocal(&l.apply(&p)?, n)?;
        let di = symmetric_decomposition(&interior, n)?;
        let dl = symmetric_decomposition(&local, n)?;
        out.push(UniformSample {
            index,
            coords,
            interior_unimodal: di.is_nonnegative() && di.is_unimodal(),
            interior_gamma_positive: di.is_gamma_positive(),
            local_unimodal: dl.is_nonnegative() && dl.is_unimodal(),
            local_gamma_positive: dl.is_gamma_positive(),
            interior,
            local,
        });
    }
    Ok(out)
}
