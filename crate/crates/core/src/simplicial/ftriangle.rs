use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{binomial, Poly};
use crate::roots::{check_interlacing_sequence, interlaces, is_real_rooted, SequenceVerdict};
use crate::structure::{is_gamma_positive, is_unimodal, reciprocal};
use crate::transforms::{generic_triangles, GenericTriangles, LinearTransform};

use super::complex::h_from_counts;
use super::triangulation::CarriedTriangulation;

/// Face numbers `f(i, j)` of a uniform triangulation: the restriction to any
/// `(j-1)`-face of the simplex has `f(i, j)` faces with `i` vertices.
///
/// JSON form: `{"n": n, "f": [[f(0,0)], [f(0,1), f(1,1)], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTriangle {
    pub n: usize,
    pub f: Vec<Vec<u64>>,
}

fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 2]; n + 1];
    s[0][0] = BigInt::one();
    for j in 1..=n {
        for i in 1..=j {
            s[j][i] = &s[j - 1][i - 1] + BigInt::from(i) * &s[j - 1][i];
        }
    }
    s
}

impl FTriangle {
    pub fn new(n: usize, f: Vec<Vec<u64>>) -> Result<Self> {
        let t = FTriangle { n, f };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        if self.f.len() != self.n + 1 {
            return Err(Error::Parse(format!(
                "f-triangle with n = {} needs {} rows, found {}",
                self.n,
                self.n + 1,
                self.f.len()
            )));
        }
        for (j, row) in self.f.iter().enumerate() {
            if row.len() != j + 1 {
                return Err(Error::Parse(format!("row {j} needs {} entries, found {}", j + 1, row.len())));
            }
            if row[0] != 1 {
                return Err(Error::Parse(format!("f(0,{j}) must be 1, found {}", row[0])));
            }
            if row[j] < 1 {
                return Err(Error::Parse(format!("f({j},{j}) must be at least 1")));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: FTriangle = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain integers serialize")
    }

    /// `f(i,j) = C(j,i)`.
    pub fn trivial(n: usize) -> Self {
        let f = (0..=n).map(|j| (0..=j).map(|i| u64::try_from(binomial(j, i)).expect("fits")).collect()).collect();
        FTriangle { n, f }
    }

    /// `f(i,j) = i! S(j,i) + (i+1)! S(j,i+1)`: chains of `i` nonempty subsets of `[j]`.
    pub fn barycentric(n: usize) -> Self {
        let s = stirling2_table(n);
        let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
        let f = (0..=n)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let v = fact(i) * &s[j][i] + fact(i + 1) * &s[j][i + 1];
                        u64::try_from(v).expect("fits in u64 for supported n")
                    })
                    .collect()
            })
            .collect();
        FTriangle { n, f }
    }

    /// The f-triangle of an explicit triangulation, or `None` if two faces of
    /// the simplex of equal dimension have restrictions with different face numbers.
    pub fn from_triangulation(t: &CarriedTriangulation) -> Option<Self> {
        let n = t.base();
        let mut rows: Vec<Option<Vec<u64>>> = vec![None; n + 1];
        for mask in 0..=t.full_mask() {
            let j = mask.count_ones() as usize;
            let counts = t.restriction_counts(mask)[..=j].to_vec();
            match &rows[j] {
                None => rows[j] = Some(counts),
                Some(prev) if *prev != counts => return None,
                Some(_) => {}
            }
        }
        Some(FTriangle { n, f: rows.into_iter().map(|r| r.expect("every size occurs")).collect() })
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if m > self.n {
            return Err(Error::OutOfRange(format!("m = {m} exceeds n = {}", self.n)));
        }
        Ok(())
    }

    /// Interior face numbers `f°(i,m) = sum_j (-1)^(m-j) C(m,j) f(i,j)`.
    pub fn interior_counts(&self, m: usize) -> Result<Vec<i128>> {
        self.check_m(m)?;
        Ok((0..=m)
            .map(|i| {
                (i..=m)
                    .map(|j| {
                        let c = i128::try_from(binomial(m, j)).expect("fits") * self.f[j][i] as i128;
                        if (m - j).is_multiple_of(2) {
                            c
                        } else {
                            -c
                        }
                    })
                    .sum()
            })
            .collect())
    }

    /// `h_F(σ_m)`.
    pub fn h(&self, m: usize) -> Result<Poly> {
        self.check_m(m)?;
        h_from_counts(&self.f[m], m)
    }

    /// `h°_F(σ_m)` from interior counts, checked against `x^m h_F(σ_m, 1/x)`.
    pub fn h_interior(&self, m: usize) -> Result<Poly> {
        let counts = self.interior_counts(m)?;
        let p = signed_h(&counts, m);
        let expect = reciprocal(&self.h(m)?, m)?;
        if p != expect {
            return Err(Error::IdentityFailure(format!("interior h of row {m} is {p}, reciprocal of h is {expect}")));
        }
        Ok(p)
    }

    /// `h_F(∂σ_m)` with dimension parameter `m - 1`; zero for `m = 0`.
    pub fn boundary_h(&self, m: usize) -> Result<Poly> {
        self.check_m(m)?;
        if m == 0 {
            return Ok(Poly::zero());
        }
        let interior = self.interior_counts(m)?;
        let counts: Vec<i128> = (0..=m).map(|i| self.f[m][i] as i128 - interior[i]).collect();
        if counts[m] != 0 {
            return Err(Error::InvalidComplex(format!("row {m}: boundary has {} faces of full size", counts[m])));
        }
        Ok(signed_h(&counts[..m], m - 1))
    }

    /// `θ_F(σ_m) = h_F(σ_m) - h_F(∂σ_m)`, with `θ_F(σ_0) = 1`.
    pub fn theta(&self, m: usize) -> Result<Poly> {
        Ok(&self.h(m)? - &self.boundary_h(m)?)
    }

    /// `h_F(σ_0), ..., h_F(σ_n)`.
    pub fn h_sequence(&self) -> Result<Vec<Poly>> {
        (0..=self.n).map(|m| self.h(m)).collect()
    }

    /// `q_{F,m,k}` and `ℓ_{F,m,k}` for all `k <= m <= n`, by recurrence and
    /// closed form (checked to agree).
    pub fn triangles(&self) -> Result<GenericTriangles> {
        generic_triangles(&self.h_sequence()?)
    }

    pub fn qnk(&self, m: usize, k: usize) -> Result<Poly> {
        self.check_m(m)?;
        if k > m {
            return Err(Error::OutOfRange(format!("k = {k} exceeds m = {m}")));
        }
        Ok(generic_triangles(&self.h_sequence()?[..=m])?.h[m][k].clone())
    }

    pub fn lnk(&self, m: usize, k: usize) -> Result<Poly> {
        self.check_m(m)?;
        if k > m {
            return Err(Error::OutOfRange(format!("k = {k} exceeds m = {m}")));
        }
        Ok(generic_triangles(&self.h_sequence()?[..=m])?.l[m][k].clone())
    }

    /// `H°_F: x^m -> h°_F(σ_m)`.
    pub fn h_interior_transform(&self) -> Result<LinearTransform> {
        let images = (0..=self.n).map(|m| self.h_interior(m)).collect::<Result<_>>()?;
        Ok(LinearTransform::from_images("H°_F", images))
    }

    /// `H_F: x^m -> h_F(σ_m)`.
    pub fn h_transform(&self) -> Result<LinearTransform> {
        Ok(LinearTransform::from_images("H_F", self.h_sequence()?))
    }

    /// `L_F: x^m -> ℓ_F(σ_m) = ℓ_{F,m,m}`.
    pub fn local_transform(&self) -> Result<LinearTransform> {
        let tri = self.triangles()?;
        let images = (0..=self.n).map(|m| tri.l[m][m].clone()).collect();
        Ok(LinearTransform::from_images("L_F", images))
    }

    pub fn theta_flags(&self) -> Result<ThetaFlags> {
        let mut unimodal = Vec::new();
        let mut gamma = Vec::new();
        for m in 0..=self.n {
            let th = self.theta(m)?;
            unimodal.push(is_unimodal(&th).is_some());
            gamma.push(is_gamma_positive(&th, m));
        }
        let mut strong_failures = Vec::new();
        for m in 2..self.n {
            let h = self.h(m)?;
            if !is_real_rooted(&h) {
                strong_failures.push(format!("h_F(σ_{m}) = {h} is not real-rooted"));
            }
            let th = self.theta(m)?;
            if !th.is_zero() {
                let ok = th.degree() == Some(m - 1)
                    && th.has_nonnegative_coeffs()
                    && is_real_rooted(&th)
                    && interlaces(&self.h(m - 1)?, &th);
                if !ok {
                    strong_failures.push(format!(
                        "θ_F(σ_{m}) = {th} is not a nonnegative real-rooted degree-{} polynomial interlaced by h_F(σ_{})",
                        m - 1,
                        m - 1
                    ));
                }
            }
        }
        Ok(ThetaFlags {
            theta_unimodal: unimodal.iter().all(|&b| b),
            theta_gamma_positive: gamma.iter().all(|&b| b),
            unimodal_by_m: unimodal,
            gamma_positive_by_m: gamma,
            strong_interlacing: strong_failures.is_empty(),
            strong_interlacing_failures: strong_failures,
        })
    }

    /// Checks the hypothesis (strong interlacing) and the conclusion
    /// (`(q_{F,n,k})_k` or `(ℓ_{F,n,k})_k` interlacing and real-rooted) separately.
    pub fn check_conjecture(&self, part: ConjecturePart) -> Result<ConjectureVerdict> {
        let flags = self.theta_flags()?;
        let tri = self.triangles()?;
        let seq = match part {
            ConjecturePart::A => tri.h[self.n].clone(),
            ConjecturePart::B => tri.l[self.n].clone(),
        };
        let sequence = check_interlacing_sequence(&seq);
        Ok(ConjectureVerdict {
            n: self.n,
            part,
            hypothesis: Some(flags.strong_interlacing),
            hypothesis_failures: flags.strong_interlacing_failures,
            conclusion: sequence.is_interlacing(),
            sequence,
            polys: seq,
        })
    }
}

fn signed_h(counts: &[i128], n: usize) -> Poly {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| Poly::linear_pow(1, -1, n - i).shift(i).scale_int(&BigInt::from(c)))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjecturePart {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaFlags {
    pub theta_unimodal: bool,
    pub theta_gamma_positive: bool,
    pub unimodal_by_m: Vec<bool>,
    pub gamma_positive_by_m: Vec<bool>,
    pub strong_interlacing: bool,
    pub strong_interlacing_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub part: ConjecturePart,
    /// `None` when no triangulation stands behind the sequence.
    pub hypothesis: Option<bool>,
    pub hypothesis_failures: Vec<String>,
    pub conclusion: bool,
    pub sequence: SequenceVerdict,
    #[serde(serialize_with = "crate::serde_util::polys")]
    pub polys: Vec<Poly>,
}

impl ConjectureVerdict {
    /// Conjecture check for a bare sequence `h_0, ..., h_n` with no
    /// triangulation behind it.
    pub fn generic(seq: &[Poly], part: ConjecturePart) -> Result<Self> {
        let n = seq.len().checked_sub(1).ok_or_else(|| Error::OutOfRange("empty sequence".into()))?;
        let tri = generic_triangles(seq)?;
        let polys = match part {
            ConjecturePart::A => tri.h[n].clone(),
            ConjecturePart::B => tri.l[n].clone(),
        };
        let sequence = check_interlacing_sequence(&polys);
        Ok(ConjectureVerdict {
            n,
            part,
            hypothesis: None,
            hypothesis_failures: Vec::new(),
            conclusion: sequence.is_interlacing(),
            sequence,
            polys,
        })
    }

    /// Hypothesis holds (or is absent) and the conclusion holds.
    pub fn passes(&self) -> bool {
        self.conclusion
    }

    /// Hypothesis holds but the conclusion fails: a counterexample.
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis == Some(true) && !self.conclusion
    }
}
