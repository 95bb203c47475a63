use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::perm::Budget;
use crate::poly::Poly;

/// `sum_i counts[i] x^i (1-x)^(n-i)`, where `counts[i]` is the number of faces
/// with `i` vertices.
pub fn h_from_counts(counts: &[u64], n: usize) -> Result<Poly> {
    if let Some(top) = counts.iter().rposition(|&c| c != 0) {
        if top > n {
            return Err(Error::DegreeOverflow { degree: top, bound: n });
        }
    }
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| Poly::linear_pow(1, -1, n - i).shift(i).scale_int(&BigInt::from(c)))
        .sum())
}

/// A finite abstract simplicial complex on vertices `0..n_vertices`.
///
/// Faces are sorted vertex lists, stored by size and then lexicographically;
/// the empty face is always first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    faces: Vec<Vec<u32>>,
}

fn canonical_order(faces: &mut [Vec<u32>]) {
    faces.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

impl SimplicialComplex {
    /// Validates closure under taking subsets and the vertex range.
    pub fn from_faces(n_vertices: usize, faces: Vec<Vec<u32>>) -> Result<Self> {
        let mut faces: Vec<Vec<u32>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        canonical_order(&mut faces);
        faces.dedup();
        if faces.first().is_none_or(|f| !f.is_empty()) {
            return Err(Error::InvalidComplex("the empty face is missing".into()));
        }
        let index: HashSet<&[u32]> = faces.iter().map(Vec::as_slice).collect();
        for f in &faces {
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("face {f:?} repeats a vertex")));
            }
            if f.iter().any(|&v| v as usize >= n_vertices) {
                return Err(Error::InvalidComplex(format!("face {f:?} uses a vertex outside 0..{n_vertices}")));
            }
            for skip in 0..f.len() {
                let sub: Vec<u32> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if !index.contains(sub.as_slice()) {
                    return Err(Error::InvalidComplex(format!("face {f:?} is present but its subface {sub:?} is not")));
                }
            }
        }
        Ok(SimplicialComplex { n_vertices, faces })
    }

    /// Faces already known to be closed and duplicate-free.
    pub(crate) fn from_closed_faces(n_vertices: usize, mut faces: Vec<Vec<u32>>) -> Self {
        for f in &mut faces {
            f.sort_unstable();
        }
        canonical_order(&mut faces);
        debug_assert!(faces.windows(2).all(|w| w[0] != w[1]));
        SimplicialComplex { n_vertices, faces }
    }

    /// The complex generated by `facets`.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<u32>], budget: &Budget) -> Result<Self> {
        let mut all: HashSet<Vec<u32>> = HashSet::new();
        all.insert(Vec::new());
        for facet in facets {
            let mut facet = facet.clone();
            facet.sort_unstable();
            facet.dedup();
            let d = facet.len();
            for mask in 1u64..(1 << d) {
                let face: Vec<u32> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                all.insert(face);
            }
            budget.check_faces("complex generated by facets", all.len())?;
        }
        Self::from_faces(n_vertices, all.into_iter().collect())
    }

    /// The full simplex `2^[n]`.
    pub fn simplex(n: usize) -> Self {
        let faces = (0u64..(1 << n)).map(|m| (0..n as u32).filter(|&i| m >> i & 1 == 1).collect()).collect();
        Self::from_closed_faces(n, faces)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face size minus one; `-1` for the complex `{∅}`.
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.len() as isize - 1)
    }

    /// Entry `i` is the number of faces with `i` vertices, so entry 0 is 1.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; (self.dim() + 2) as usize];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `h(Δ, x) = sum f_{i-1} x^i (1-x)^(n-i)`; fails if `dim Δ > n - 1`.
    pub fn h_poly(&self, n: usize) -> Result<Poly> {
        h_from_counts(&self.face_counts(), n)
    }

    /// `sum_{i >= 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Faces all of whose vertices satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        let faces = self.faces.iter().filter(|f| f.iter().all(|&v| keep(v))).cloned().collect();
        SimplicialComplex { n_vertices: self.n_vertices, faces }
    }

    /// One face per line as space-separated vertex indices; the empty face
    /// is an empty line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], &Budget::default())
            .unwrap()
    }

    #[test]
    fn h_polynomials() {
        assert_eq!(four_cycle().h_poly(2).unwrap(), poly("1+2x+x^2"));
        let point = SimplicialComplex::simplex(1);
        assert_eq!(point.h_poly(1).unwrap(), poly("1"));
        assert!(SimplicialComplex::simplex(3).h_poly(2).is_err());
        assert_eq!(SimplicialComplex::simplex(0).h_poly(0).unwrap(), poly("1"));
    }

    #[test]
    fn counts_and_euler() {
        let c = four_cycle();
        assert_eq!(c.face_counts(), vec![1, 4, 4]);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.dim(), 1);
        assert_eq!(SimplicialComplex::simplex(3).euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::simplex(0).dim(), -1);
    }

    #[test]
    fn validation() {
        assert!(SimplicialComplex::from_faces(2, vec![vec![], vec![0, 1]]).is_err());
        assert!(SimplicialComplex::from_faces(2, vec![vec![0]]).is_err());
        assert!(SimplicialComplex::from_faces(1, vec![vec![], vec![3]]).is_err());
        let tiny = Budget::uniform(5);
        assert!(SimplicialComplex::from_facets(3, &[vec![0, 1, 2]], &tiny).is_err());
    }

    #[test]
    fn induced_and_dump() {
        let c = four_cycle().induced(|v| v != 3);
        assert_eq!(c.face_counts(), vec![1, 3, 2]);
        assert_eq!(c.dump(), "\n0\n1\n2\n0 1\n1 2\n");
    }
}
