use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Budget;
use crate::poly::Poly;
use crate::structure::reciprocal;

use super::complex::{h_from_counts, SimplicialComplex};

/// A triangulation `Γ` of the simplex `2^V`, `V = {0, ..., n-1}`, in which
/// every vertex carries the minimal face of `2^V` containing it.
///
/// Subsets of `V` are bitmasks. Face counts are tallied once per carrier
/// mask, so every restriction `Γ_F`, its interior and its boundary are read
/// off without touching the faces again.
#[derive(Clone, Debug)]
pub struct CarriedTriangulation {
    name: String,
    base: usize,
    complex: SimplicialComplex,
    carriers: Vec<u32>,
    /// `tally[F][i]`: faces with `i` vertices whose carrier is exactly `F`.
    tally: Vec<Vec<u64>>,
    h: Vec<Poly>,
}

fn popcount(m: u32) -> usize {
    m.count_ones() as usize
}

/// Iterates over all submasks of `mask`, including `0` and `mask`.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

impl CarriedTriangulation {
    /// Validates the carrier map and the reciprocity `h°(Γ_F) = x^|F| h(Γ_F, 1/x)`
    /// for every `F ⊆ V`.
    pub fn new(name: impl Into<String>, base: usize, complex: SimplicialComplex, carriers: Vec<u32>) -> Result<Self> {
        let name = name.into();
        if base > 16 {
            return Err(Error::InvalidComplex(format!("base simplex of size {base} is too large")));
        }
        if carriers.len() != complex.n_vertices() {
            return Err(Error::InvalidComplex(format!(
                "{} carriers for {} vertices",
                carriers.len(),
                complex.n_vertices()
            )));
        }
        let full = (1u32 << base) - 1;
        if let Some(v) = carriers.iter().position(|&c| c == 0 || c & !full != 0) {
            return Err(Error::InvalidComplex(format!(
                "vertex {v} has carrier {:#b} outside the nonempty faces of 2^V",
                carriers[v]
            )));
        }
        let mut tally = vec![vec![0u64; base + 1]; 1 << base];
        for f in complex.faces() {
            let c = f.iter().fold(0u32, |acc, &v| acc | carriers[v as usize]);
            if f.len() > popcount(c) {
                return Err(Error::InvalidComplex(format!(
                    "face {f:?} has {} vertices but carrier of size {}",
                    f.len(),
                    popcount(c)
                )));
            }
            tally[c as usize][f.len()] += 1;
        }
        let mut t = CarriedTriangulation { name, base, complex, carriers, tally, h: Vec::new() };
        let mut h = Vec::with_capacity(1 << base);
        for f in 0..=full {
            let hf = h_from_counts(&t.restriction_counts(f), popcount(f))
                .map_err(|e| Error::InvalidComplex(format!("restriction to {f:#b}: {e}")))?;
            let interior = h_from_counts(&t.tally[f as usize], popcount(f))?;
            if interior != reciprocal(&hf, popcount(f))? {
                return Err(Error::InvalidComplex(format!(
                    "{}: restriction to {f:#b} is not a ball (h° = {interior}, h = {hf})",
                    t.name
                )));
            }
            h.push(hf);
        }
        t.h = h;
        Ok(t)
    }

    /// `2^V` itself.
    pub fn trivial(n: usize) -> Self {
        let carriers = (0..n).map(|i| 1u32 << i).collect();
        Self::new(format!("trivial σ_{n}"), n, SimplicialComplex::simplex(n), carriers)
            .expect("the simplex is a valid triangulation of itself")
    }

    /// `sd(σ_n)`.
    pub fn barycentric(n: usize, budget: &Budget) -> Result<Self> {
        let mut t = Self::trivial(n).barycentric_subdivision(budget)?;
        t.name = format!("sd(σ_{n})");
        Ok(t)
    }

    /// `esd_r(σ_n)`.
    pub fn edgewise(n: usize, r: usize, budget: &Budget) -> Result<Self> {
        let mut t = Self::trivial(n).edgewise_subdivision(r, budget)?;
        t.name = format!("esd_{r}(σ_{n})");
        Ok(t)
    }

    /// The `r`-colored barycentric subdivision `esd_r(sd(σ_n))`.
    pub fn colored_barycentric(n: usize, r: usize, budget: &Budget) -> Result<Self> {
        let mut t = Self::barycentric(n, budget)?.edgewise_subdivision(r, budget)?;
        t.name = format!("{r}-colored sd(σ_{n})");
        Ok(t)
    }

    /// A triangle with one edge subdivided and the others not.
    pub fn nonuniform_example() -> Self {
        let complex = SimplicialComplex::from_facets(4, &[vec![0, 2, 3], vec![1, 2, 3]], &Budget::default())
            .expect("two triangles");
        Self::new("triangle with one split edge", 3, complex, vec![0b001, 0b010, 0b100, 0b011])
            .expect("valid triangulation")
    }

    /// Chains of nonempty faces; a vertex (a face of `self`) inherits its carrier.
    pub fn barycentric_subdivision(&self, budget: &Budget) -> Result<Self> {
        let faces = &self.complex.faces()[1..];
        let index: HashMap<&[u32], u32> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
        let carriers: Vec<u32> = faces.iter().map(|f| self.carrier_of(f)).collect();
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        let mut chain = Vec::new();
        for top in faces {
            chain.push(index[top.as_slice()]);
            descend(top, &index, &mut chain, &mut out);
            chain.pop();
            budget.check_faces("barycentric subdivision", out.len())?;
        }
        Self::new(
            format!("sd({})", self.name),
            self.base,
            SimplicialComplex::from_closed_faces(faces.len(), out),
            carriers,
        )
    }

    /// Edgewise subdivision with respect to the vertex order of `self`.
    ///
    /// Vertices are the size-`r` multisets of vertices supported on a face;
    /// a set of them is a face when its supports lie in a common face and
    /// the partial-sum vectors pairwise differ by a 0/1 vector.
    pub fn edgewise_subdivision(&self, r: usize, budget: &Budget) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange("edgewise subdivision needs r >= 1".into()));
        }
        let faces = self.complex.faces();
        let face_index: HashMap<&[u32], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        // points with support exactly faces[i]
        let mut exact: Vec<Vec<(u32, Vec<u8>)>> = vec![Vec::new(); faces.len()];
        let mut carriers = Vec::new();
        for (i, f) in faces.iter().enumerate().skip(1) {
            for comp in compositions(r, f.len(), true) {
                exact[i].push((carriers.len() as u32, comp));
                carriers.push(self.carrier_of(f));
            }
        }
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for s in faces.iter().skip(1) {
            let d = s.len();
            let mut ids = Vec::new();
            let mut iotas: Vec<Vec<i16>> = Vec::new();
            let mut supports = Vec::new();
            for sub in 1u32..(1 << d) {
                let subface: Vec<u32> = (0..d).filter(|&p| sub >> p & 1 == 1).map(|p| s[p]).collect();
                let positions: Vec<usize> = (0..d).filter(|&p| sub >> p & 1 == 1).collect();
                for (id, comp) in &exact[face_index[subface.as_slice()]] {
                    let mut local = vec![0u8; d];
                    for (&p, &c) in positions.iter().zip(comp) {
                        local[p] = c;
                    }
                    let iota = local
                        .iter()
                        .scan(0i16, |acc, &c| {
                            *acc += c as i16;
                            Some(*acc)
                        })
                        .collect();
                    ids.push(*id);
                    iotas.push(iota);
                    supports.push(sub);
                }
            }
            if ids.len() > 128 {
                return Err(Error::OutOfRange(format!(
                    "edgewise subdivision: {} lattice points on one face exceeds 128",
                    ids.len()
                )));
            }
            let adj: Vec<u128> = (0..ids.len())
                .map(|a| {
                    (0..ids.len())
                        .filter(|&b| b != a && compatible(&iotas[a], &iotas[b]))
                        .fold(0u128, |m, b| m | 1 << b)
                })
                .collect();
            let all: u128 = if ids.len() == 128 { u128::MAX } else { (1u128 << ids.len()) - 1 };
            let full = (1u32 << d) - 1;
            let mut clique = Vec::new();
            cliques(&adj, all, 0, full, &supports, &mut clique, &mut |c| {
                out.push(c.iter().map(|&k| ids[k]).collect());
            });
            budget.check_faces("edgewise subdivision", out.len())?;
        }
        Self::new(
            format!("esd_{r}({})", self.name),
            self.base,
            SimplicialComplex::from_closed_faces(carriers.len(), out),
            carriers,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `|V|`.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.base) - 1
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn carriers(&self) -> &[u32] {
        &self.carriers
    }

    pub fn carrier_of(&self, face: &[u32]) -> u32 {
        face.iter().fold(0, |acc, &v| acc | self.carriers[v as usize])
    }

    /// Face counts of `Γ_F` by number of vertices.
    pub fn restriction_counts(&self, f: u32) -> Vec<u64> {
        let mut counts = vec![0u64; self.base + 1];
        for g in submasks(f) {
            for (c, t) in counts.iter_mut().zip(&self.tally[g as usize]) {
                *c += t;
            }
        }
        counts
    }

    /// Faces of `Γ_F` whose carrier is exactly `F`, by number of vertices.
    pub fn interior_counts(&self, f: u32) -> &[u64] {
        &self.tally[f as usize]
    }

    /// `Γ_F` as a complex on the same vertex labels.
    pub fn restriction(&self, f: u32) -> SimplicialComplex {
        self.complex.induced(|v| self.carriers[v as usize] & !f == 0)
    }

    /// `h(Γ_F)` with dimension parameter `|F|`.
    pub fn h_restricted(&self, f: u32) -> &Poly {
        &self.h[f as usize]
    }

    pub fn h_poly(&self) -> &Poly {
        self.h_restricted(self.full_mask())
    }

    /// `h°(Γ_F)` from the interior faces. Its agreement with
    /// `x^|F| h(Γ_F, 1/x)` is checked at construction.
    pub fn interior_h(&self, f: u32) -> Poly {
        h_from_counts(&self.tally[f as usize], popcount(f)).expect("validated at construction")
    }

    /// `h(∂Γ_F)` with dimension parameter `|F| - 1`; zero for `F = ∅`.
    pub fn boundary_h(&self, f: u32) -> Poly {
        if f == 0 {
            return Poly::zero();
        }
        let mut counts = self.restriction_counts(f);
        for (c, t) in counts.iter_mut().zip(&self.tally[f as usize]) {
            *c -= t;
        }
        h_from_counts(&counts, popcount(f) - 1).expect("proper carriers have smaller faces")
    }

    /// `θ(Γ_F) = h(Γ_F) - h(∂Γ_F)`, with `θ(Γ_∅) = 1`.
    pub fn theta(&self, f: u32) -> Poly {
        self.h_restricted(f) - &self.boundary_h(f)
    }

    /// `ℓ_{F,E}(Γ_F) = sum_{E ⊆ G ⊆ F} (-1)^|F \ G| h(Γ_G)`.
    pub fn local_h_ve_restricted(&self, f: u32, e: u32) -> Result<Poly> {
        if e & !f != 0 {
            return Err(Error::OutOfRange(format!("E = {e:#b} is not contained in F = {f:#b}")));
        }
        let mut total = Poly::zero();
        for rest in submasks(f & !e) {
            let g = e | rest;
            if popcount(f & !g).is_multiple_of(2) {
                total += self.h_restricted(g);
            } else {
                total -= self.h_restricted(g);
            }
        }
        Ok(total)
    }

    /// `ℓ_{V,E}(Γ)`.
    pub fn local_h_ve(&self, e: u32) -> Result<Poly> {
        self.local_h_ve_restricted(self.full_mask(), e)
    }

    /// `ℓ_V(Γ)`.
    pub fn local_h(&self) -> Poly {
        self.local_h_ve(0).expect("∅ ⊆ V")
    }

    /// `sum_{F ⊇ {v_k, ..., v_{n-1}}} x^(n-|F|) h(Γ_F)`: the h-polynomial of the
    /// antiprism sphere with `u_k, ..., u_{n-1}` removed (0-based).
    pub fn antiprism_h_by_restrictions(&self, k: usize) -> Poly {
        let n = self.base;
        let forced = self.full_mask() & !((1u32 << k) - 1);
        submasks((1u32 << k) - 1)
            .map(|free| {
                let f = forced | free;
                self.h_restricted(f).shift(n - popcount(f))
            })
            .sum()
    }

    /// `Δ_A(Γ)`: faces `G ∪ {u_i : i ∈ I}` with `G ∈ Γ` and `I` disjoint from
    /// the carrier of `G`. Vertex `u_i` gets label `|Γ vertices| + i`.
    pub fn antiprism_sphere(&self, budget: &Budget) -> Result<AntiprismSphere> {
        let offset = self.complex.n_vertices() as u32;
        let full = self.full_mask();
        let mut faces = Vec::new();
        for g in self.complex.faces() {
            let free = full & !self.carrier_of(g);
            for i in submasks(free) {
                let mut face = g.clone();
                face.extend((0..self.base as u32).filter(|&b| i >> b & 1 == 1).map(|b| offset + b));
                faces.push(face);
            }
            budget.check_faces("antiprism sphere", faces.len())?;
        }
        let complex = SimplicialComplex::from_closed_faces(offset as usize + self.base, faces);
        let sphere = AntiprismSphere { n: self.base, offset, complex };
        let expected = 1 + if self.base % 2 == 1 { 1 } else { -1 };
        let chi = sphere.complex.euler_characteristic();
        if chi != expected {
            return Err(Error::InvalidComplex(format!(
                "antiprism over {} has Euler characteristic {chi}, expected {expected}",
                self.name
            )));
        }
        Ok(sphere)
    }
}

/// The antiprism sphere over a triangulation of `σ_n`.
#[derive(Clone, Debug)]
pub struct AntiprismSphere {
    pub n: usize,
    offset: u32,
    pub complex: SimplicialComplex,
}

impl AntiprismSphere {
    /// Label of `u_i` (0-based).
    pub fn u(&self, i: usize) -> u32 {
        self.offset + i as u32
    }

    /// The induced subcomplex keeping only `u_0, ..., u_{k-1}`.
    pub fn keep_first_u(&self, k: usize) -> SimplicialComplex {
        let limit = self.offset + k as u32;
        self.complex.induced(|v| v < limit)
    }

    pub fn h_poly(&self) -> Poly {
        self.complex.h_poly(self.n).expect("sphere of dimension n-1")
    }
}

fn descend(bottom: &[u32], index: &HashMap<&[u32], u32>, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    out.push(chain.clone());
    let d = bottom.len();
    for sub in 1u32..((1 << d) - 1) {
        let face: Vec<u32> = (0..d).filter(|&p| sub >> p & 1 == 1).map(|p| bottom[p]).collect();
        chain.push(index[face.as_slice()]);
        descend(&face, index, chain, out);
        chain.pop();
    }
}

/// Compositions of `r` into `d` parts, each at least 1 when `positive`, in
/// lexicographic order.
fn compositions(r: usize, d: usize, positive: bool) -> Vec<Vec<u8>> {
    let low = usize::from(positive);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn go(left: usize, d: usize, low: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == d {
            if left >= low {
                cur.push(left as u8);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let reserve = low * (d - cur.len() - 1);
        if left < reserve {
            return;
        }
        for c in low..=left - reserve {
            cur.push(c as u8);
            go(left - c, d, low, cur, out);
            cur.pop();
        }
    }
    if d > 0 {
        go(r, d, low, &mut cur, &mut out);
    }
    out
}

fn compatible(a: &[i16], b: &[i16]) -> bool {
    let diffs = a.iter().zip(b).map(|(x, y)| x - y);
    let (mut pos, mut neg) = (false, false);
    for d in diffs {
        match d {
            0 => {}
            1 => pos = true,
            -1 => neg = true,
            _ => return false,
        }
    }
    !(pos && neg)
}

fn cliques(
    adj: &[u128],
    cand: u128,
    support: u32,
    full: u32,
    supports: &[u32],
    clique: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        clique.push(v);
        let s = support | supports[v];
        if s == full {
            emit(clique);
        }
        let higher = if v == 127 { 0 } else { !((1u128 << (v + 1)) - 1) };
        cliques(adj, cand & adj[v] & higher, s, full, supports, clique, emit);
        clique.pop();
    }
}
