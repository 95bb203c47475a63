//! Randomized invariants, runnable with an explicit case count and seed so that
//! other test targets can reuse them.

use eulerian_lab::poly::{Poly, Rational};
use eulerian_lab::roots::{
    interlaces, is_interlacing_sequence, is_real_rooted, isolate_roots, sturm_distinct_real_roots, Bound,
};
use eulerian_lab::structure::{
    basis_p_coeffs, from_basis_p, gamma_expand, is_gamma_positive, is_symmetric, is_unimodal, reciprocal,
    symmetric_decomposition, GammaVector,
};
use eulerian_lab::transforms::FamilyCache;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub const CASES: u32 = 1000;
pub const SEED: u64 = 0x5eed_e01e;

pub type Property = fn(u32, u64) -> Result<(), String>;

/// Every property, by name.
pub fn all() -> Vec<(&'static str, Property)> {
    vec![
        ("reciprocal involution", reciprocal_involution as Property),
        ("symmetric decomposition round-trip", decomposition_round_trip),
        ("gamma round-trip", gamma_round_trip),
        ("gamma-positive implies symmetric and unimodal", gamma_positive_shape),
        ("basis_p round-trip", basis_p_round_trip),
        ("interlacing convention table", interlacing_conventions),
        ("interlacing agrees with root alternation", interlacing_oracle),
        ("interlacing shifts and reciprocals", interlacing_shift_reciprocal),
        ("nonnegative combinations of p_(n,k)", nonnegative_combinations),
        ("interlacing recursion", interlacing_recursion),
        ("root isolation multiplicities", isolation_multiplicities),
    ]
}

fn runner(cases: u32, seed: u64) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=40, 1i64..=6).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// `(n, p)` with `deg p <= n`.
fn bounded_poly() -> impl Strategy<Value = (usize, Poly)> {
    (0usize..=9).prop_flat_map(|n| (Just(n), prop::collection::vec(rational(), 0..=n + 1).prop_map(Poly::from_coeffs)))
}

fn from_roots(lc: &Rational, roots: &[Rational]) -> Poly {
    roots.iter().fold(Poly::constant(lc.clone()), |acc, r| {
        &acc * &Poly::from_coeffs(vec![-r.clone(), Rational::from_integer(1.into())])
    })
}

fn root() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=2).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

fn positive_lc() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// `p ⪯ q` straight from the definition on descending root lists.
fn alternate(alpha: &[Rational], beta: &[Rational]) -> bool {
    let (dp, dq) = (alpha.len(), beta.len());
    if dp == 0 {
        return dq <= 1;
    }
    if dq < dp || dq - dp > 1 {
        return false;
    }
    let mut a = alpha.to_vec();
    let mut b = beta.to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort_by(|x, y| y.cmp(x));
    (0..dp).all(|i| a[i] <= b[i] && (i + 1 >= dq || b[i + 1] <= a[i]))
}

pub fn reciprocal_involution(cases: u32, seed: u64) -> Result<(), String> {
    report(runner(cases, seed).run(&bounded_poly(), |(n, p)| {
        let r = reciprocal(&p, n).unwrap();
        prop_assert_eq!(reciprocal(&r, n).unwrap(), p.clone());
        if !p.is_zero() {
            prop_assert!(reciprocal(&p.shift(n + 1), n).is_err());
        }
        Ok(())
    }))
}

pub fn decomposition_round_trip(cases: u32, seed: u64) -> Result<(), String> {
    report(runner(cases, seed).run(&bounded_poly(), |(n, p)| {
        let d = symmetric_decomposition(&p, n).unwrap();
        prop_assert_eq!(&d.a + &d.b.shift(1), p.clone());
        prop_assert!(is_symmetric(&d.a, n));
        if n == 0 {
            prop_assert!(d.b.is_zero());
        } else {
            prop_assert!(is_symmetric(&d.b, n - 1));
        }
        Ok(())
    }))
}

fn gamma_vector() -> impl Strategy<Value = GammaVector> {
    (0usize..=10).prop_flat_map(|n| {
        prop::collection::vec(rational(), n / 2 + 1).prop_map(move |gammas| GammaVector { n, gammas })
    })
}

pub fn gamma_round_trip(cases: u32, seed: u64) -> Result<(), String> {
    report(runner(cases, seed).run(&gamma_vector(), |g| {
        let p = g.expand();
        let back = gamma_expand(&p, g.n);
        prop_assert_eq!(back.as_ref(), Some(&g));
        prop_assert_eq!(back.unwrap().expand(), p);
        Ok(())
    }))
}

pub fn gamma_positive_shape(cases: u32, seed: u64) -> Result<(), String> {
    let strategy = (0usize..=10).prop_flat_map(|n| {
        prop::collection::vec(nonneg_rational(), n / 2 + 1)
            .prop_filter("some gamma positive", |g| g.iter().any(|v| !v.is_zero()))
            .prop_map(move |gammas| GammaVector { n, gammas })
    });
    report(runner(cases, seed).run(&strategy, |g| {
        let p = g.expand();
        prop_assert!(is_gamma_positive(&p, g.n));
        prop_assert!(is_symmetric(&p, g.n));
        prop_assert!(is_unimodal(&p).is_some());
        Ok(())
    }))
}

pub fn basis_p_round_trip(cases: u32, seed: u64) -> Result<(), String> {
    report(runner(cases, seed).run(&bounded_poly(), |(n, p)| {
        let c = basis_p_coeffs(&p, n).unwrap();
        prop_assert_eq!(c.len(), n + 1);
        prop_assert_eq!(from_basis_p(&c), p.clone());
        prop_assert_eq!(basis_p_coeffs(&from_basis_p(&c), n).unwrap(), c);
        Ok(())
    }))
}

pub fn interlacing_conventions(cases: u32, seed: u64) -> Result<(), String> {
    let strategy = (positive_lc(), prop::collection::vec(root(), 0..=6), rational());
    report(runner(cases, seed).run(&strategy, |(lc, roots, c)| {
        let p = from_roots(&lc, &roots);
        let zero = Poly::zero();
        prop_assert!(interlaces(&zero, &p));
        prop_assert!(interlaces(&p, &zero));
        prop_assert!(interlaces(&p, &p));
        if !c.is_zero() {
            let konst = Poly::constant(c.clone());
            prop_assert_eq!(interlaces(&konst, &p), roots.len() <= 1);
        }
        if roots.len() >= 2 {
            let short = from_roots(&lc, &roots[..roots.len() - 2]);
            prop_assert!(!interlaces(&p, &short));
            prop_assert!(!interlaces(&short, &p));
        }
        let bad = &p * &Poly::from_ints(&[1, 0, 1]);
        prop_assert!(!is_real_rooted(&bad));
        prop_assert!(!interlaces(&bad, &p.shift(1).shift(1)));
        prop_assert!(!interlaces(&zero, &bad));
        Ok(())
    }))
}

pub fn interlacing_oracle(cases: u32, seed: u64) -> Result<(), String> {
    let strategy =
        (positive_lc(), positive_lc(), prop::collection::vec(root(), 0..=5), prop::collection::vec(root(), 0..=6));
    report(runner(cases, seed).run(&strategy, |(la, lb, alpha, beta)| {
        let p = from_roots(&la, &alpha);
        let q = from_roots(&lb, &beta);
        prop_assert_eq!(interlaces(&p, &q), alternate(&alpha, &beta), "p = {}, q = {}", p, q);
        Ok(())
    }))
}

/// Roots `-r` with `r > 0`, arranged so that `p ⪯ q`.
fn interlacing_pair() -> impl Strategy<Value = (Poly, Poly)> {
    (prop::collection::vec(1i64..=30, 1..=8), any::<bool>(), positive_lc(), positive_lc()).prop_map(
        |(mut pts, same, la, lb)| {
            pts.sort_unstable_by(|a, b| b.cmp(a));
            let neg: Vec<Rational> = pts.iter().map(|v| Rational::new(BigInt::from(-*v), BigInt::from(3))).collect();
            // Ascending negatives: beta_1 >= alpha_1 >= beta_2 >= ...
            let mut alpha = Vec::new();
            let mut beta = Vec::new();
            for (i, r) in neg.iter().rev().enumerate() {
                if i % 2 == 0 {
                    beta.push(r.clone());
                } else {
                    alpha.push(r.clone());
                }
            }
            if same && beta.len() > alpha.len() {
                beta.pop();
            }
            if alpha.len() > beta.len() {
                alpha.pop();
            }
            (from_roots(&la, &alpha), from_roots(&lb, &beta))
        },
    )
}

pub fn interlacing_shift_reciprocal(cases: u32, seed: u64) -> Result<(), String> {
    report(runner(cases, seed).run(&interlacing_pair(), |(p, q)| {
        prop_assert!(interlaces(&p, &q), "constructed pair {} ⪯ {}", p, q);
        prop_assert!(interlaces(&q, &p.shift(1)));
        let n = q.degree().unwrap_or(0);
        prop_assert!(interlaces(&reciprocal(&q, n).unwrap(), &reciprocal(&p, n).unwrap()));
        Ok(())
    }))
}

pub fn nonnegative_combinations(cases: u32, seed: u64) -> Result<(), String> {
    let mut cache = FamilyCache::new();
    let rows: Vec<Vec<Poly>> = (0..=8).map(|n| cache.pnk_row(n)).collect();
    let strategy = (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(nonneg_rational(), n + 1)));
    report(runner(cases, seed).run(&strategy, |(n, w)| {
        let row = &rows[n];
        let p: Poly = row.iter().zip(&w).map(|(r, c)| r.scale(c)).sum();
        prop_assert!(is_real_rooted(&p));
        prop_assert!(interlaces(&row[0], &p));
        prop_assert!(interlaces(&p, &row[n]));
        Ok(())
    }))
}

pub fn interlacing_recursion(cases: u32, seed: u64) -> Result<(), String> {
    let strategy = prop::collection::vec(any::<bool>(), 1..=6);
    report(runner(cases, seed).run(&strategy, |alphas| {
        let mut seq = vec![Poly::one()];
        for plus_x in alphas {
            let m = seq.len() - 1;
            let alpha = if plus_x { Poly::from_ints(&[1, 1]) } else { Poly::one() };
            let mut next = Vec::with_capacity(m + 2);
            let tail: Poly = seq[1..].iter().cloned().sum();
            next.push(&(&alpha * &seq[0]) + &tail);
            for k in 1..=m + 1 {
                let head: Poly = seq[..k].iter().cloned().sum();
                let rest: Poly = seq[k..].iter().cloned().sum();
                next.push(&head.shift(1) + &rest);
            }
            prop_assert!(is_interlacing_sequence(&next), "{:?}", next);
            seq = next;
        }
        Ok(())
    }))
}

pub fn isolation_multiplicities(cases: u32, seed: u64) -> Result<(), String> {
    let strategy = (positive_lc(), prop::collection::vec(root(), 1..=7));
    report(runner(cases, seed).run(&strategy, |(lc, roots)| {
        let p = from_roots(&lc, &roots);
        let iso = isolate_roots(&p).unwrap();
        prop_assert_eq!(iso.total_multiplicity, roots.len());
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(iso.intervals.len(), distinct.len());
        for (iv, r) in iso.intervals.iter().zip(&distinct) {
            let inside = if iv.is_exact() { &iv.lo == r } else { &iv.lo < r && r <= &iv.hi };
            prop_assert!(inside);
            prop_assert_eq!(iv.multiplicity, roots.iter().filter(|x| *x == r).count());
        }
        let count = sturm_distinct_real_roots(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!(count, distinct.len());
        Ok(())
    }))
}
