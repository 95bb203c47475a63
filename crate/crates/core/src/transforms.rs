//! Eulerian-type polynomial families by recurrence and closed form, and the
//! linear transformations they define on `R_n[x]`.
//!
//! Each family has at least two independent formulas. [`FamilyCache`]
//! computes them all on first use and returns
//! [`Error::IdentityFailure`] if any two disagree, so a cached value has
//! always been cross-checked.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{binomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Pnk(usize, usize),
    Qnk(usize, usize),
    QStar(usize, usize, usize),
    Dnk(usize, usize),
    BinomialEulerian(usize),
    TypeB(usize),
}

fn mismatch(what: String, a: &Poly, b: &Poly) -> Error {
    Error::IdentityFailure(format!("{what}: {a} != {b}"))
}

fn one_plus_x() -> Poly {
    Poly::one_plus_x_pow(1)
}

/// Memo table for the polynomial families. Confined to one owner; clone it
/// to hand a copy to another worker.
#[derive(Clone, Debug, Default)]
pub struct FamilyCache {
    memo: HashMap<Key, Poly>,
}

impl FamilyCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn memo<F>(&mut self, key: Key, compute: F) -> Result<Poly>
    where
        F: FnOnce(&mut Self) -> Result<Poly>,
    {
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let p = compute(self)?;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    /// `A_n = p_{n,0}`, with `A_0 = 1`.
    pub fn eulerian(&mut self, n: usize) -> Poly {
        self.pnk(n, 0).expect("k = 0 is always in range")
    }

    /// `p_{n,k} = x sum_{i<k} p_{n-1,i} + sum_{i>=k} p_{n-1,i}`, `p_{0,0} = 1`.
    pub fn pnk(&mut self, n: usize, k: usize) -> Result<Poly> {
        if k > n {
            return Err(Error::OutOfRange(format!("p_{{{n},{k}}} needs k <= n")));
        }
        self.memo(Key::Pnk(n, k), |c| {
            if n == 0 {
                return Ok(Poly::one());
            }
            let mut below = Poly::zero();
            let mut above = Poly::zero();
            for i in 0..n {
                let p = c.pnk(n - 1, i)?;
                if i < k {
                    below += &p;
                } else {
                    above += &p;
                }
            }
            Ok(&below.shift(1) + &above)
        })
    }

    pub fn pnk_row(&mut self, n: usize) -> Vec<Poly> {
        (0..=n).map(|k| self.pnk(n, k).expect("in range")).collect()
    }

    /// `q_{n,k}` from `q_{n,0} = A_n` and `q_{n,k+1} = q_{n,k} + x q_{n-1,k}`,
    /// checked against `sum C(k,i) x^i A_{n-i}` and `sum C(k,i) p_{n-i,k-i}`.
    pub fn qnk(&mut self, n: usize, k: usize) -> Result<Poly> {
        if k > n {
            return Err(Error::OutOfRange(format!("q_{{{n},{k}}} needs k <= n")));
        }
        self.memo(Key::Qnk(n, k), |c| {
            let rec = if k == 0 { c.eulerian(n) } else { &c.qnk(n, k - 1)? + &c.qnk(n - 1, k - 1)?.shift(1) };
            let via_a = c.qnk_via_eulerian(n, k);
            if rec != via_a {
                return Err(mismatch(format!("q_{{{n},{k}}} recurrence vs A-sum"), &rec, &via_a));
            }
            let via_p = c.qnk_via_pnk(n, k)?;
            if rec != via_p {
                return Err(mismatch(format!("q_{{{n},{k}}} recurrence vs p-sum"), &rec, &via_p));
            }
            Ok(rec)
        })
    }

    /// `sum_{i<=k} C(k,i) x^i A_{n-i}`.
    pub fn qnk_via_eulerian(&mut self, n: usize, k: usize) -> Poly {
        (0..=k.min(n)).map(|i| self.eulerian(n - i).shift(i).scale_int(&binomial(k, i))).sum()
    }

    /// `sum_{i<=k} C(k,i) p_{n-i,k-i}`.
    pub fn qnk_via_pnk(&mut self, n: usize, k: usize) -> Result<Poly> {
        let mut total = Poly::zero();
        for i in 0..=k {
            total += &self.pnk(n - i, k - i)?.scale_int(&binomial(k, i));
        }
        Ok(total)
    }

    pub fn qnk_row(&mut self, n: usize) -> Result<Vec<Poly>> {
        (0..=n).map(|k| self.qnk(n, k)).collect()
    }

    /// `q*_{n,k,j}` by the double recursion in `(k, j)`, with
    /// `q*_{n,0,j} = q*_{n,1,j} = p_{n,j}` and `q*_{n,k,0} = q_{n,k-1}`.
    pub fn qnkj_star(&mut self, n: usize, k: usize, j: usize) -> Result<Poly> {
        if k > n + 1 || j > n {
            return Err(Error::OutOfRange(format!("q*_{{{n},{k},{j}}} needs k <= n+1 and j <= n")));
        }
        self.memo(Key::QStar(n, k, j), |c| {
            if k <= 1 {
                return c.pnk(n, j);
            }
            if j == 0 {
                return c.qnk(n, k - 1);
            }
            let level = if j < k { k - 1 } else { k };
            let mut below = Poly::zero();
            let mut above = Poly::zero();
            for i in 0..n {
                let q = c.qnkj_star(n - 1, level, i)?;
                if i < j {
                    below += &q;
                } else {
                    above += &q;
                }
            }
            Ok(&below.shift(1) + &above)
        })
    }

    /// `q_{n,k,j} = (1+x) q*_{n,k,0}` when `j = 0 < k`, otherwise `q*_{n,k,j}`.
    pub fn qnkj(&mut self, n: usize, k: usize, j: usize) -> Result<Poly> {
        let star = self.qnkj_star(n, k, j)?;
        Ok(if j == 0 && k >= 1 { &star * &one_plus_x() } else { star })
    }

    /// `d_n = d_{n,n}`.
    pub fn derangement(&mut self, n: usize) -> Poly {
        self.dnk(n, n).expect("k = n is in range")
    }

    /// `d_{n,k} = sum (-1)^i C(k,i) A_{n-i}`, checked against
    /// `d_{n,k} = d_{n,k-1} - d_{n-1,k-1}`.
    pub fn dnk(&mut self, n: usize, k: usize) -> Result<Poly> {
        if k > n {
            return Err(Error::OutOfRange(format!("d_{{{n},{k}}} needs k <= n")));
        }
        self.memo(Key::Dnk(n, k), |c| {
            let mut closed = Poly::zero();
            for i in 0..=k {
                let term = c.eulerian(n - i).scale_int(&binomial(k, i));
                if i % 2 == 0 {
                    closed += &term;
                } else {
                    closed -= &term;
                }
            }
            if k > 0 {
                let rec = &c.dnk(n, k - 1)? - &c.dnk(n - 1, k - 1)?;
                if rec != closed {
                    return Err(mismatch(format!("d_{{{n},{k}}} recurrence"), &rec, &closed));
                }
            }
            Ok(closed)
        })
    }

    pub fn dnk_row(&mut self, n: usize) -> Result<Vec<Poly>> {
        (0..=n).map(|k| self.dnk(n, k)).collect()
    }

    /// `1 + x sum_{i>=1} C(n,i) A_i`, checked against `q_{n,n}` and
    /// `sum C(n,i) x^(n-i) A_i`.
    pub fn binomial_eulerian(&mut self, n: usize) -> Result<Poly> {
        self.memo(Key::BinomialEulerian(n), |c| {
            let tail: Poly = (1..=n).map(|i| c.eulerian(i).scale_int(&binomial(n, i))).sum();
            let first = &Poly::one() + &tail.shift(1);
            let second: Poly = (0..=n).map(|i| c.eulerian(i).shift(n - i).scale_int(&binomial(n, i))).sum();
            if first != second {
                return Err(mismatch(format!("binomial Eulerian {n}"), &first, &second));
            }
            let q = c.qnk(n, n)?;
            if first != q {
                return Err(mismatch(format!("binomial Eulerian {n} vs q_{{n,n}}"), &first, &q));
            }
            Ok(first)
        })
    }

    /// `B_n = (1 + (2n-1)x) B_{n-1} + 2x(1-x) B'_{n-1}`, checked against the
    /// truncated Worpitzky series.
    pub fn type_b_eulerian(&mut self, n: usize) -> Result<Poly> {
        self.memo(Key::TypeB(n), |c| {
            if n == 0 {
                return Ok(Poly::one());
            }
            let prev = c.type_b_eulerian(n - 1)?;
            let rec = &(&Poly::from_ints(&[1, 2 * n as i64 - 1]) * &prev)
                + &(&Poly::from_ints(&[0, 2, -2]) * &prev.derivative());
            let worp = type_b_worpitzky(n);
            if rec != worp {
                return Err(mismatch(format!("B_{n} recurrence vs Worpitzky"), &rec, &worp));
            }
            Ok(rec)
        })
    }

    /// `D^B(x^n) = sum (-1)^i C(n,i) B_{n-i}`.
    pub fn type_b_derangement(&mut self, n: usize) -> Result<Poly> {
        let mut total = Poly::zero();
        for i in 0..=n {
            let term = self.type_b_eulerian(n - i)?.scale_int(&binomial(n, i));
            if i % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
        Ok(total)
    }
}

/// Coefficients of `p(x) / (1-x)^m` up to `x^max`.
pub fn series_over_one_minus_x(p: &Poly, m: usize, max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); max + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        let c = c.to_integer();
        for (j, slot) in out.iter_mut().enumerate().skip(i) {
            let t = j - i;
            let coef = match m {
                0 if t == 0 => BigInt::one(),
                0 => BigInt::zero(),
                _ => binomial(t + m - 1, m - 1),
            };
            *slot += &c * coef;
        }
    }
    out
}

/// `sum_{m=0..max} m^k (1+m)^(n-k) x^m`, with `0^0 = 1`.
pub fn worpitzky_series(n: usize, k: usize, max: usize) -> Vec<BigInt> {
    (0..=max).map(|m| BigInt::from(m).pow(k as u32) * BigInt::from(m + 1).pow((n - k) as u32)).collect()
}

/// Whether `p_{n,k} / (1-x)^(n+1)` agrees with the Worpitzky series through `x^max`.
pub fn worpitzky_holds(cache: &mut FamilyCache, n: usize, k: usize, max: usize) -> Result<bool> {
    let p = cache.pnk(n, k)?;
    Ok(series_over_one_minus_x(&p, n + 1, max) == worpitzky_series(n, k, max))
}

/// `(1-x)^(n+1) sum_{m<=n} (2m+1)^n x^m`, truncated to degree `n`.
pub fn type_b_worpitzky(n: usize) -> Poly {
    let series = Poly::from_bigints((0..=n).map(|m| BigInt::from(2 * m + 1).pow(n as u32)));
    let full = &series * &Poly::linear_pow(1, -1, n + 1);
    Poly::from_coeffs(full.coeffs().iter().take(n + 1).cloned().collect())
}

/// Whether `B_n / (1-x)^(n+1)` agrees with `sum (2m+1)^n x^m` through `x^max`.
pub fn type_b_worpitzky_holds(cache: &mut FamilyCache, n: usize, max: usize) -> Result<bool> {
    let b = cache.type_b_eulerian(n)?;
    let expect: Vec<BigInt> = (0..=max).map(|m| BigInt::from(2 * m + 1).pow(n as u32)).collect();
    Ok(series_over_one_minus_x(&b, n + 1, max) == expect)
}

/// A linear map on `R_n[x]` given by the images of `1, x, ..., x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTransform {
    pub name: String,
    images: Vec<Poly>,
}

impl LinearTransform {
    pub fn from_images(name: impl Into<String>, images: Vec<Poly>) -> Self {
        assert!(!images.is_empty(), "a transform needs the image of x^0");
        LinearTransform { name: name.into(), images }
    }

    /// `A°`: `1 -> 1`, `x^m -> x A_m` for `m >= 1`.
    pub fn eulerian_interior(cache: &mut FamilyCache, n: usize) -> Self {
        let images = (0..=n).map(|m| if m == 0 { Poly::one() } else { cache.eulerian(m).shift(1) }).collect();
        Self::from_images("A°", images)
    }

    /// `A`: `x^m -> A_m`.
    pub fn eulerian(cache: &mut FamilyCache, n: usize) -> Self {
        Self::from_images("A", (0..=n).map(|m| cache.eulerian(m)).collect())
    }

    /// `D`: `x^m -> d_m`.
    pub fn derangement(cache: &mut FamilyCache, n: usize) -> Self {
        Self::from_images("D", (0..=n).map(|m| cache.derangement(m)).collect())
    }

    /// `B`: `x^m -> B_m`.
    pub fn type_b(cache: &mut FamilyCache, n: usize) -> Result<Self> {
        let images = (0..=n).map(|m| cache.type_b_eulerian(m)).collect::<Result<_>>()?;
        Ok(Self::from_images("B", images))
    }

    /// `D^B`: `x^m -> sum (-1)^i C(m,i) B_{m-i}`.
    pub fn type_b_derangement(cache: &mut FamilyCache, n: usize) -> Result<Self> {
        let images = (0..=n).map(|m| cache.type_b_derangement(m)).collect::<Result<_>>()?;
        Ok(Self::from_images("D^B", images))
    }

    pub fn bound(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, m: usize) -> Option<&Poly> {
        self.images.get(m)
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.check_degree(self.bound())?;
        Ok(p.coeffs().iter().zip(&self.images).filter(|(c, _)| !c.is_zero()).map(|(c, img)| img.scale(c)).sum())
    }
}

pub fn apply_transform(t: &LinearTransform, p: &Poly) -> Result<Poly> {
    t.apply(p)
}

/// The triangles `h_{m,k}` and `l_{m,k}` (`0 <= k <= m <= n`) built from a
/// sequence `h_0, ..., h_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericTriangles {
    pub h: Vec<Vec<Poly>>,
    pub l: Vec<Vec<Poly>>,
}

/// Builds both triangles by the recurrences
/// `h_{m,k+1} = h_{m,k} + x h_{m-1,k}` and `l_{m,k+1} = l_{m,k} - l_{m-1,k}`
/// and checks every entry against the closed forms.
pub fn generic_triangles(seq: &[Poly]) -> Result<GenericTriangles> {
    if seq.is_empty() {
        return Err(Error::OutOfRange("generic triangles need h_0".into()));
    }
    let n = seq.len() - 1;
    let mut h: Vec<Vec<Poly>> = Vec::with_capacity(n + 1);
    let mut l: Vec<Vec<Poly>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut hrow = vec![seq[m].clone()];
        let mut lrow = vec![seq[m].clone()];
        for k in 0..m {
            hrow.push(&hrow[k] + &h[m - 1][k].shift(1));
            lrow.push(&lrow[k] - &l[m - 1][k]);
        }
        for k in 0..=m {
            let hc = generic_closed(seq, m, k, false);
            if hc != hrow[k] {
                return Err(mismatch(format!("h_{{{m},{k}}} recurrence vs closed form"), &hrow[k], &hc));
            }
            let lc = generic_closed(seq, m, k, true);
            if lc != lrow[k] {
                return Err(mismatch(format!("l_{{{m},{k}}} recurrence vs closed form"), &lrow[k], &lc));
            }
        }
        h.push(hrow);
        l.push(lrow);
    }
    Ok(GenericTriangles { h, l })
}

fn generic_closed(seq: &[Poly], m: usize, k: usize, alternating: bool) -> Poly {
    let mut total = Poly::zero();
    for i in 0..=k {
        let c = binomial(k, i);
        if alternating {
            let term = seq[m - i].scale_int(&c);
            if i % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        } else {
            total += &seq[m - i].shift(i).scale_int(&c);
        }
    }
    total
}

fn generic_checked(seq: &[Poly], n: usize, k: usize) -> Result<()> {
    if n >= seq.len() {
        return Err(Error::OutOfRange(format!("need h_0..h_{n}, only {} supplied", seq.len())));
    }
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// `h_{n,k} = sum C(k,i) x^i h_{n-i}`, cross-checked against the recurrence.
pub fn generic_hnk(seq: &[Poly], n: usize, k: usize) -> Result<Poly> {
    generic_checked(seq, n, k)?;
    Ok(generic_triangles(&seq[..=n])?.h[n][k].clone())
}

/// `l_{n,k} = sum (-1)^i C(k,i) h_{n-i}`, cross-checked against the recurrence.
pub fn generic_lnk(seq: &[Poly], n: usize, k: usize) -> Result<Poly> {
    generic_checked(seq, n, k)?;
    Ok(generic_triangles(&seq[..=n])?.l[n][k].clone())
}
