//! Permutation statistics and brute-force generating polynomials.
//!
//! Everything here enumerates a group element by element. The closed forms
//! and recurrences in [`crate::transforms`] are checked against these sums.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Rearranges `v` into the next permutation in lexicographic order; returns
/// `false` (leaving `v` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut w: Vec<u8> = (1..=n as u8).collect();
    loop {
        f(&w);
        if !next_permutation(&mut w) {
            break;
        }
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Caps on enumeration size. Exceeding a cap is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of elements of a symmetric group (default `11!`).
    pub symmetric: u128,
    /// Maximum number of signed permutations (default `2^8 8!`).
    pub signed: u128,
    /// Maximum number of colored permutations (default `10^7`).
    pub colored: u128,
    /// Maximum number of faces of a constructed complex (default `10^6`).
    pub faces: u128,
}

pub const BUDGET_ENV: &str = "EULERIAN_LAB_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget { symmetric: factorial(11), signed: factorial(8) << 8, colored: 10_000_000, faces: 1_000_000 }
    }
}

impl Budget {
    /// Every cap set to the same value.
    pub fn uniform(cap: u128) -> Self {
        Budget { symmetric: cap, signed: cap, colored: cap, faces: cap }
    }

    /// Defaults, or a uniform cap taken from `EULERIAN_LAB_BUDGET`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Budget::uniform)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    fn check(what: &str, needed: u128, cap: u128) -> Result<()> {
        if needed > cap {
            return Err(Error::BudgetExceeded { what: what.to_string(), needed, budget: cap });
        }
        Ok(())
    }

    pub fn check_symmetric(&self, n: usize) -> Result<()> {
        Self::check(&format!("S_{n}"), factorial(n), self.symmetric)
    }

    pub fn check_signed(&self, n: usize) -> Result<()> {
        Self::check(&format!("B_{n}"), factorial(n) << n, self.signed)
    }

    pub fn check_colored(&self, n: usize, r: usize) -> Result<()> {
        let size = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX) * factorial(n);
        Self::check(&format!("Z_{r} wr S_{n}"), size, self.colored)
    }

    pub fn check_faces(&self, what: &str, faces: usize) -> Result<()> {
        Self::check(what, faces as u128, self.faces)
    }
}

pub fn des(w: &[u8]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

pub fn asc(w: &[u8]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}

/// `#{i in [n-1] : w(i) > i}`; position `n` can never be an excedance.
pub fn exc(w: &[u8]) -> usize {
    let n = w.len();
    w.iter().take(n.saturating_sub(1)).enumerate().filter(|(i, &v)| v as usize > i + 1).count()
}

/// Fixed points not exceeding `k`.
pub fn fix_k(w: &[u8], k: usize) -> usize {
    w.iter().enumerate().take(k).filter(|(i, &v)| v as usize == i + 1).count()
}

/// Indices `i` such that `w(i) <= k` is a right-to-left minimum and either
/// `i = 1` or `w(i-1) < w(i)`.
pub fn bad_k(w: &[u8], k: usize) -> usize {
    let n = w.len();
    let mut suffix_min = u8::MAX;
    let mut is_rl_min = vec![false; n];
    for i in (0..n).rev() {
        if w[i] <= suffix_min {
            is_rl_min[i] = true;
            suffix_min = w[i];
        }
    }
    (0..n).filter(|&i| w[i] as usize <= k && is_rl_min[i] && (i == 0 || w[i - 1] < w[i])).count()
}

/// Maximal runs `w(a) > w(a+1) > ... > w(b)`, as 1-based position blocks.
pub fn decreasing_runs(w: &[u8]) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for i in 0..w.len() {
        if i > 0 && w[i - 1] > w[i] {
            runs.last_mut().expect("run started").push(i + 1);
        } else {
            runs.push(vec![i + 1]);
        }
    }
    runs
}

fn run_sizes(w: &[u8]) -> impl Iterator<Item = usize> + '_ {
    let mut start = 0;
    (1..=w.len()).filter_map(move |i| {
        if i == w.len() || w[i - 1] < w[i] {
            let len = i - start;
            start = i;
            Some(len)
        } else {
            None
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    one_line: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub des: usize,
    pub asc: usize,
    pub exc: usize,
    pub fix_set: Vec<usize>,
    /// Positions `j` with `w(i) < w(j)` for all `i < j`.
    pub lr_maxima: Vec<usize>,
    /// Positions `i` with `w(i) <= w(j)` for all `j >= i`.
    pub rl_minima: Vec<usize>,
    pub decreasing_runs: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{one_line:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n as u8).collect() }
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { one_line: inv }
    }

    pub fn stats(&self) -> PermStats {
        let w = &self.one_line;
        let n = w.len();
        let mut lr_maxima = Vec::new();
        let mut best = 0u8;
        for (i, &v) in w.iter().enumerate() {
            if v > best {
                lr_maxima.push(i + 1);
                best = v;
            }
        }
        let mut rl_minima = Vec::new();
        let mut low = u8::MAX;
        for i in (0..n).rev() {
            if w[i] <= low {
                rl_minima.push(i + 1);
                low = w[i];
            }
        }
        rl_minima.reverse();
        PermStats {
            des: des(w),
            asc: asc(w),
            exc: exc(w),
            fix_set: (1..=n).filter(|&i| w[i - 1] as usize == i).collect(),
            lr_maxima,
            rl_minima,
            decreasing_runs: decreasing_runs(w),
        }
    }

    pub fn fix_k(&self, k: usize) -> usize {
        fix_k(&self.one_line, k)
    }

    pub fn bad_k(&self, k: usize) -> usize {
        bad_k(&self.one_line, k)
    }

    /// Writes each cycle with its smallest element last, orders cycles by
    /// increasing smallest element, and reads the concatenation as one-line
    /// notation.
    pub fn fundamental_transformation(&self) -> Permutation {
        let w = &self.one_line;
        let n = w.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(n);
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u8);
                i = w[i - 1] as usize;
            }
            cycle.rotate_left(1);
            out.extend(cycle);
        }
        Permutation { one_line: out }
    }
}

/// Signed permutation in window notation: `|w|` is a permutation of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    one_line: Vec<i16>,
}

impl SignedPermutation {
    pub fn new(one_line: Vec<i16>) -> Result<Self> {
        let abs: Vec<u8> = one_line.iter().map(|v| v.unsigned_abs() as u8).collect();
        Permutation::new(abs)?;
        Ok(SignedPermutation { one_line })
    }

    /// `#{i in 0..n-1 : w(i) > w(i+1)}` with `w(0) = 0`.
    pub fn des_b(&self) -> usize {
        des_b(&self.one_line)
    }
}

fn des_b(w: &[i16]) -> usize {
    let mut prev = 0i16;
    let mut d = 0;
    for &v in w {
        if prev > v {
            d += 1;
        }
        prev = v;
    }
    d
}

/// Element of `Z_r wr S_n`: a permutation with a color in `0..r` at each position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPermutation {
    perm: Vec<u8>,
    colors: Vec<u8>,
    r: usize,
}

impl ColoredPermutation {
    pub fn new(perm: Vec<u8>, colors: Vec<u8>, r: usize) -> Result<Self> {
        Permutation::new(perm.clone())?;
        if r == 0 || colors.len() != perm.len() || colors.iter().any(|&c| c as usize >= r) {
            return Err(Error::Parse(format!("colors {colors:?} invalid for r = {r} and n = {}", perm.len())));
        }
        Ok(ColoredPermutation { perm, colors, r })
    }

    pub fn color_sum(&self) -> usize {
        self.colors.iter().map(|&c| c as usize).sum()
    }

    /// `r` times the number of color-0 excedances plus the sum of colors.
    pub fn fexc(&self) -> usize {
        fexc(&self.perm, &self.colors, self.r)
    }

    /// Fixed points of color 0.
    pub fn fix_set(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&i| self.perm[i] as usize == i + 1 && self.colors[i] == 0).map(|i| i + 1).collect()
    }
}

fn fexc(perm: &[u8], colors: &[u8], r: usize) -> usize {
    let zero_exc = perm.iter().zip(colors).enumerate().filter(|(i, (&v, &c))| c == 0 && v as usize > i + 1).count();
    r * zero_exc + colors.iter().map(|&c| c as usize).sum::<usize>()
}

/// Dense accumulator for sums of `(1+x)^a x^b`.
struct Tally {
    counts: Vec<Vec<u64>>,
}

impl Tally {
    fn new(max_a: usize, max_b: usize) -> Self {
        Tally { counts: vec![vec![0; max_b + 1]; max_a + 1] }
    }

    fn add(&mut self, a: usize, b: usize) {
        self.counts[a][b] += 1;
    }

    fn into_poly(self) -> Poly {
        let mut total = Poly::zero();
        for (a, row) in self.counts.into_iter().enumerate() {
            if row.iter().all(|&c| c == 0) {
                continue;
            }
            let xs = Poly::from_bigints(row.into_iter().map(BigInt::from));
            total += &(&Poly::one_plus_x_pow(a) * &xs);
        }
        total
    }
}

/// Which statistic to read off for `p_{n,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PnkVia {
    /// `des` over `w in S_{n+1}` with `w(1) = k+1`.
    Des,
    /// `asc` over `w(n+1) = k+1`.
    Asc,
    /// `exc` over `w^{-1}(1) = k+1`.
    Exc,
}

/// Which statistics realise `q_{n,k}` and `q_{n,k,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVia {
    /// `(1+x)^fix_k x^exc`, restricted by `w^{-1}(1)`.
    Fix,
    /// `(1+x)^bad_k x^des`, restricted by `w(1)`.
    Bad,
}

/// A polynomial family computed by summing over a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteFamily {
    /// `A_n` from descents.
    Eulerian {
        n: usize,
    },
    /// `A_n` from excedances.
    EulerianExc {
        n: usize,
    },
    Pnk {
        n: usize,
        k: usize,
        via: PnkVia,
    },
    Qnk {
        n: usize,
        k: usize,
        via: QVia,
    },
    Qnkj {
        n: usize,
        k: usize,
        j: usize,
        via: QVia,
    },
    /// `q*_{n,k,j}`: `q_{n,k,j} / (1+x)` when `j = 0` and `k >= 1`.
    QnkjStar {
        n: usize,
        k: usize,
        j: usize,
    },
    /// `sum_{Fix(w) ⊆ [n-k]} x^exc`.
    Dnk {
        n: usize,
        k: usize,
    },
    /// `sum_{w in S_n} (1+x)^{fix(w)} x^exc`.
    BinomialEulerian {
        n: usize,
    },
    /// `sum over signed permutations of x^des_B`.
    TypeB {
        n: usize,
    },
    /// `sum over (Z_r wr S_n)^b with Fix ⊆ [k] of x^(fexc/r)`.
    FlagExcedance {
        n: usize,
        r: usize,
        k: usize,
    },
}

fn range_err(what: &str) -> Error {
    Error::OutOfRange(what.to_string())
}

/// The exact generating polynomial of `family`, by direct summation.
pub fn brute_force(family: BruteFamily, budget: &Budget) -> Result<Poly> {
    use BruteFamily::*;
    match family {
        Eulerian { n } => {
            budget.check_symmetric(n)?;
            let mut t = Tally::new(0, n);
            for_each_permutation(n, |w| t.add(0, des(w)));
            Ok(t.into_poly())
        }
        EulerianExc { n } => {
            budget.check_symmetric(n)?;
            let mut t = Tally::new(0, n);
            for_each_permutation(n, |w| t.add(0, exc(w)));
            Ok(t.into_poly())
        }
        Pnk { n, k, via } => {
            if k > n {
                return Err(range_err(&format!("p_{{{n},{k}}} needs k <= n")));
            }
            budget.check_symmetric(n + 1)?;
            let target = (k + 1) as u8;
            let mut t = Tally::new(0, n + 1);
            for_each_permutation(n + 1, |w| match via {
                PnkVia::Des if w[0] == target => t.add(0, des(w)),
                PnkVia::Asc if w[n] == target => t.add(0, asc(w)),
                PnkVia::Exc if w[k] == 1 => t.add(0, exc(w)),
                _ => {}
            });
            Ok(t.into_poly())
        }
        Qnk { n, k, via } => {
            if k > n {
                return Err(range_err(&format!("q_{{{n},{k}}} needs k <= n")));
            }
            budget.check_symmetric(n)?;
            let mut t = Tally::new(n, n);
            for_each_permutation(n, |w| match via {
                QVia::Fix => t.add(fix_k(w, k), exc(w)),
                QVia::Bad => t.add(bad_k(w, k), des(w)),
            });
            Ok(t.into_poly())
        }
        Qnkj { n, k, j, via } => {
            if k > n + 1 || j > n {
                return Err(range_err(&format!("q_{{{n},{k},{j}}} out of range")));
            }
            budget.check_symmetric(n + 1)?;
            let mut t = Tally::new(n + 1, n + 1);
            for_each_permutation(n + 1, |w| match via {
                QVia::Fix if w[j] == 1 => t.add(fix_k(w, k), exc(w)),
                QVia::Bad if w[0] as usize == j + 1 => t.add(bad_k(w, k), des(w)),
                _ => {}
            });
            Ok(t.into_poly())
        }
        QnkjStar { n, k, j } => {
            let q = brute_force(Qnkj { n, k, j, via: QVia::Fix }, budget)?;
            if j == 0 && k >= 1 {
                q.exact_div(&Poly::from_ints(&[1, 1]))
            } else {
                Ok(q)
            }
        }
        Dnk { n, k } => {
            if k > n {
                return Err(range_err(&format!("d_{{{n},{k}}} needs k <= n")));
            }
            budget.check_symmetric(n)?;
            let allowed = n - k;
            let mut t = Tally::new(0, n);
            for_each_permutation(n, |w| {
                let fixed_ok = w.iter().enumerate().all(|(i, &v)| v as usize != i + 1 || i < allowed);
                if fixed_ok {
                    t.add(0, exc(w));
                }
            });
            Ok(t.into_poly())
        }
        BinomialEulerian { n } => brute_force(Qnk { n, k: n, via: QVia::Fix }, budget),
        TypeB { n } => {
            budget.check_signed(n)?;
            let mut t = Tally::new(0, n);
            for_each_permutation(n, |w| {
                for signs in 0u32..(1 << n) {
                    let s: Vec<i16> = w
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| if signs >> i & 1 == 1 { -(v as i16) } else { v as i16 })
                        .collect();
                    t.add(0, des_b(&s));
                }
            });
            Ok(t.into_poly())
        }
        FlagExcedance { n, r, k } => {
            if r == 0 || k > n {
                return Err(range_err(&format!("flag excedance needs r >= 1, k <= n (r = {r}, k = {k})")));
            }
            budget.check_colored(n, r)?;
            let mut counts = vec![0u64; n + 1];
            let mut colors = vec![0u8; n];
            for_each_permutation(n, |w| {
                colors.iter_mut().for_each(|c| *c = 0);
                loop {
                    let sum: usize = colors.iter().map(|&c| c as usize).sum();
                    let fixed_ok = (0..n).all(|i| !(w[i] as usize == i + 1 && colors[i] == 0) || i < k);
                    if sum.is_multiple_of(r) && fixed_ok {
                        let f = fexc(w, &colors, r);
                        counts[f / r] += 1;
                    }
                    // odometer over colorings
                    let mut pos = 0;
                    while pos < n && colors[pos] as usize == r - 1 {
                        colors[pos] = 0;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                    colors[pos] += 1;
                }
            });
            Ok(Poly::from_bigints(counts.into_iter().map(BigInt::from)))
        }
    }
}

/// `q_{n,k,j}` for all `0 <= k <= n+1`, `0 <= j <= n` in one pass over
/// `S_{n+1}`, from `(1+x)^fix_k x^exc` with `w^{-1}(1) = j+1`. Indexed `[k][j]`.
pub fn qnkj_table(n: usize, budget: &Budget) -> Result<Vec<Vec<Poly>>> {
    budget.check_symmetric(n + 1)?;
    let mut tallies: Vec<Vec<Tally>> =
        (0..=n + 1).map(|_| (0..=n).map(|_| Tally::new(n + 1, n + 1)).collect()).collect();
    for_each_permutation(n + 1, |w| {
        let j = w.iter().position(|&v| v == 1).expect("1 occurs");
        let e = exc(w);
        let mut fixed = 0;
        for (k, row) in tallies.iter_mut().enumerate() {
            if k >= 1 && w[k - 1] as usize == k {
                fixed += 1;
            }
            row[j].add(fixed, e);
        }
    });
    Ok(tallies.into_iter().map(|row| row.into_iter().map(Tally::into_poly).collect()).collect())
}

/// Counts `xi^+_{n,k,i}` and `xi^-_{n,k,i}`.
///
/// `xi^+_{n,k,i}`: permutations with `w(1) > n-k` having `i` decreasing runs,
/// none of size one. `xi^-_{n,k,i}`: permutations with `w(1) <= n-k` having
/// `i+1` decreasing runs, none except possibly the first of size one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiCounts {
    pub n: usize,
    pub k: usize,
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

impl XiCounts {
    /// `sum xi+_i x^i (1+x)^(n-2i) + sum xi-_i x^i (1+x)^(n-1-2i)`.
    pub fn reconstruct(&self) -> Poly {
        let n = self.n;
        let mut total = Poly::zero();
        for (i, &c) in self.plus.iter().enumerate() {
            if c > 0 {
                total += &Poly::one_plus_x_pow(n - 2 * i).shift(i).scale_int(&BigInt::from(c));
            }
        }
        for (i, &c) in self.minus.iter().enumerate() {
            if c > 0 {
                total += &Poly::one_plus_x_pow(n - 1 - 2 * i).shift(i).scale_int(&BigInt::from(c));
            }
        }
        total
    }
}

pub fn xi_counts(n: usize, k: usize, budget: &Budget) -> Result<XiCounts> {
    if n == 0 || k > n {
        return Err(range_err(&format!("xi counts need 1 <= n and k <= n (n = {n}, k = {k})")));
    }
    budget.check_symmetric(n)?;
    let mut plus = vec![0u64; n / 2 + 1];
    let mut minus = vec![0u64; (n - 1) / 2 + 1];
    for_each_permutation(n, |w| {
        let sizes: Vec<usize> = run_sizes(w).collect();
        if w[0] as usize > n - k {
            if sizes.iter().all(|&s| s >= 2) {
                plus[sizes.len()] += 1;
            }
        } else if sizes[1..].iter().all(|&s| s >= 2) {
            minus[sizes.len() - 1] += 1;
        }
    });
    Ok(XiCounts { n, k, plus, minus })
}
