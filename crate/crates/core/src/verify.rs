//! Suites that cross-check closed forms, recurrences and enumerations.
//!
//! Each suite returns a list of named checks. Errors are reserved for budget
//! and range problems; a disagreement between two computations is a failed
//! check, except inside [`FamilyCache`], which reports its own internal
//! cross-checks as [`Error::IdentityFailure`].

use crate::check::Checks;
use crate::error::{Error, Result};
use crate::perm::{brute_force, qnkj_table, xi_counts, BruteFamily, Budget, PnkVia, QVia};
use crate::poly::{binomial, Poly};
use crate::roots::{check_interlacing_sequence, interlaces, is_real_rooted};
use crate::sampling::sample_uniform;
use crate::simplicial::{identity_suite, CarriedTriangulation, FTriangle};
use crate::structure::{is_gamma_positive, is_symmetric, reciprocal, symmetric_decomposition};
use crate::transforms::{type_b_worpitzky_holds, worpitzky_holds, FamilyCache};

fn one_plus_x() -> Poly {
    Poly::from_ints(&[1, 1])
}

/// Every closed-form family against its enumeration, `n <= n_max`.
pub fn brute_force_suite(cache: &mut FamilyCache, n_max: usize, budget: &Budget) -> Result<Checks> {
    use BruteFamily::*;
    let mut out = Checks::new();
    for n in 0..=n_max {
        let a = cache.eulerian(n);
        out.equal(format!("A_{n} by descents"), &brute_force(Eulerian { n }, budget)?, &a);
        out.equal(format!("A_{n} by excedances"), &brute_force(EulerianExc { n }, budget)?, &a);
        out.equal(
            format!("binomial Eulerian {n}"),
            &brute_force(BinomialEulerian { n }, budget)?,
            &cache.binomial_eulerian(n)?,
        );
        out.equal(format!("B_{n} by signed descents"), &brute_force(TypeB { n }, budget)?, &cache.type_b_eulerian(n)?);
        for k in 0..=n {
            let p = cache.pnk(n, k)?;
            for via in [PnkVia::Des, PnkVia::Asc, PnkVia::Exc] {
                out.equal(format!("p_({n},{k}) via {via:?}"), &brute_force(Pnk { n, k, via }, budget)?, &p);
            }
            let q = cache.qnk(n, k)?;
            for via in [QVia::Fix, QVia::Bad] {
                out.equal(format!("q_({n},{k}) via {via:?}"), &brute_force(Qnk { n, k, via }, budget)?, &q);
            }
            let d = cache.dnk(n, k)?;
            out.equal(format!("d_({n},{k})"), &brute_force(Dnk { n, k }, budget)?, &d);
            out.equal(
                format!("flag excedance r=1 reduces to d_({n},{})", n - k),
                &brute_force(FlagExcedance { n, r: 1, k }, budget)?,
                &cache.dnk(n, n - k)?,
            );
            if n >= 1 {
                out.equal(format!("xi reconstruction of d_({n},{k})"), &xi_counts(n, k, budget)?.reconstruct(), &d);
            }
        }
        for k in 0..=n + 1 {
            for j in 0..=n {
                let q = cache.qnkj(n, k, j)?;
                for via in [QVia::Fix, QVia::Bad] {
                    out.equal(format!("q_({n},{k},{j}) via {via:?}"), &brute_force(Qnkj { n, k, j, via }, budget)?, &q);
                }
                out.equal(
                    format!("q*_({n},{k},{j})"),
                    &brute_force(QnkjStar { n, k, j }, budget)?,
                    &cache.qnkj_star(n, k, j)?,
                );
            }
        }
    }
    Ok(out)
}

/// The `q_{n,k}`, `q_{n,k,j}`, `d_{n,k}` and Worpitzky identities, `n <= n_max`.
pub fn algebraic_suite(cache: &mut FamilyCache, n_max: usize, budget: &Budget) -> Result<Checks> {
    let mut out = Checks::new();
    for n in 0..=n_max {
        out.equal(format!("p_({n},0) = A_{n}"), &cache.pnk(n, 0)?, &cache.eulerian(n));
        if n >= 1 {
            out.equal(format!("p_({n},{n}) = x A_{n}"), &cache.pnk(n, n)?, &cache.eulerian(n).shift(1));
        }
        for k in 0..=n {
            let q = cache.qnk(n, k)?;
            out.equal(format!("q_({n},{k}) = sum C(k,i) x^i A_(n-i)"), &q, &cache.qnk_via_eulerian(n, k));
            out.equal(format!("q_({n},{k}) = sum C(k,i) p_(n-i,k-i)"), &q, &cache.qnk_via_pnk(n, k)?);
            if k < n {
                let rec = &q + &cache.qnk(n - 1, k)?.shift(1);
                out.equal(
                    format!("q_({n},{}) = q_({n},{k}) + x q_({},{k})", k + 1, n - 1),
                    &cache.qnk(n, k + 1)?,
                    &rec,
                );
            }
            let d = cache.dnk(n, k)?;
            let alt: Poly = (0..=k)
                .map(|i| {
                    let t = cache.eulerian(n - i).scale_int(&binomial(k, i));
                    if i % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            out.equal(format!("d_({n},{k}) = sum (-1)^i C(k,i) A_(n-i)"), &d, &alt);
            let dec = symmetric_decomposition(&reciprocal(&d, n)?, n)?;
            out.push(
                format!("I_{n}(d_({n},{k})) has a γ-positive decomposition"),
                dec.is_nonnegative() && dec.is_gamma_positive(),
                format!("a = {}, b = {}", dec.a, dec.b),
            );
            if n <= 10 {
                out.push(format!("Worpitzky congruence for p_({n},{k})"), worpitzky_holds(cache, n, k, n + 3)?, "");
            }
        }
        out.push(format!("type-B Worpitzky congruence n={n}"), type_b_worpitzky_holds(cache, n, n + 3)?, "");
        out.extend(qnkj_suite(cache, n, budget)?);
        out.extend(uniform_suite(cache, n)?);
    }
    Ok(out)
}

/// Parts (a) through (g) of the `q_{n,k,j}` recursions, with the recursive
/// values also compared entry by entry to an enumeration over `S_{n+1}`.
pub fn qnkj_suite(cache: &mut FamilyCache, n: usize, budget: &Budget) -> Result<Checks> {
    let mut out = Checks::new();
    let table = qnkj_table(n, budget)?;
    let star = |k: usize, j: usize| -> Result<Poly> {
        let q = &table[k][j];
        if j == 0 && k >= 1 {
            q.exact_div(&one_plus_x())
        } else {
            Ok(q.clone())
        }
    };
    for k in 0..=n + 1 {
        for j in 0..=n {
            out.equal(format!("q_({n},{k},{j}) recursion vs enumeration"), &cache.qnkj(n, k, j)?, &table[k][j]);
        }
    }
    for k in 1..=n + 1 {
        out.equal(format!("(a) q*_({n},{k},0) = q_({n},{})", k - 1), &star(k, 0)?, &cache.qnk(n, k - 1)?);
    }
    if n >= 1 {
        let below = qnkj_table(n - 1, budget)?;
        let below_star = |k: usize, j: usize| -> Result<Poly> {
            let q = &below[k][j];
            if j == 0 && k >= 1 {
                q.exact_div(&one_plus_x())
            } else {
                Ok(q.clone())
            }
        };
        for k in 0..n {
            let q = cache.qnk(n, k)?;
            let first: Poly = (0..n).map(|j| below[k][j].clone()).sum();
            let second: Poly = (0..n).map(|j| below_star(k + 1, j)).collect::<Result<Vec<_>>>()?.into_iter().sum();
            out.equal(format!("(b) q_({n},{k}) = sum_j q_({},{k},j)", n - 1), &q, &first);
            out.equal(format!("(b) q_({n},{k}) = sum_j q*_({},{},j)", n - 1, k + 1), &q, &second);
        }
        for k in 1..=n + 1 {
            for j in 1..=n {
                let level = if j < k { k - 1 } else { k };
                let mut rhs = Poly::zero();
                for i in 0..n {
                    let q = below_star(level, i)?;
                    rhs += &if i < j { q.shift(1) } else { q };
                }
                out.equal(format!("(f) q*_({n},{k},{j}) recursion"), &star(k, j)?, &rhs);
            }
        }
        for k in 2..=n {
            for j in k..=n {
                let rhs = &table[k - 1][j] + &below[k - 1][j - 1].shift(1);
                out.equal(
                    format!("(e) q_({n},{k},{j}) = q_({n},{},{j}) + x q_({},{},{})", k - 1, n - 1, k - 1, j - 1),
                    &table[k][j],
                    &rhs,
                );
            }
        }
    }
    for j in 0..=n {
        let p = cache.pnk(n, j)?;
        out.equal(format!("(c) q_({n},0,{j}) = p_({n},{j})"), &table[0][j], &p);
        out.equal(format!("(c) q*_({n},0,{j}) = p_({n},{j})"), &star(0, j)?, &p);
        out.equal(format!("(c) q*_({n},1,{j}) = p_({n},{j})"), &star(1, j)?, &p);
    }
    for k in 1..=n {
        out.equal(format!("(d) q_({n},{k},{k}) = q_({n},{},{k})", k + 1), &table[k][k], &table[k + 1][k]);
        out.equal(format!("(g) q*_({n},{k},{n}) = x q_({n},{})", k - 1), &star(k, n)?, &cache.qnk(n, k - 1)?.shift(1));
    }
    Ok(out)
}

/// The f-triangle machinery on the barycentric triangle reproduces
/// `q_{m,k}` and `d_{m,k}`, with recurrences and closed forms in agreement.
pub fn uniform_suite(cache: &mut FamilyCache, n: usize) -> Result<Checks> {
    let mut out = Checks::new();
    let ft = FTriangle::barycentric(n);
    let tri = ft.triangles()?;
    for m in 0..=n {
        for k in 0..=m {
            out.equal(format!("q_(F,{m},{k}) for the barycentric triangle"), &tri.h[m][k], &cache.qnk(m, k)?);
            out.equal(format!("ℓ_(F,{m},{k}) for the barycentric triangle"), &tri.l[m][k], &cache.dnk(m, k)?);
            if k < m {
                out.equal(
                    format!("ℓ_(F,{m},{}) = ℓ_(F,{m},{k}) - ℓ_(F,{},{k})", k + 1, m - 1),
                    &tri.l[m][k + 1],
                    &(&tri.l[m][k] - &tri.l[m - 1][k]),
                );
            }
        }
    }
    Ok(out)
}

/// Real-rootedness and interlacing claims for the Eulerian-type families, `n <= n_max`.
pub fn interlacing_suite(cache: &mut FamilyCache, n_max: usize) -> Result<Checks> {
    let mut out = Checks::new();
    for n in 0..=n_max {
        let q = cache.qnk_row(n)?;
        let v = check_interlacing_sequence(&q);
        out.push(format!("(q_({n},k))_k interlacing and real-rooted"), v.is_interlacing(), format!("{v:?}"));
        let d = cache.dnk_row(n)?;
        let v = check_interlacing_sequence(&d);
        out.push(format!("(d_({n},k))_k interlacing and real-rooted"), v.is_interlacing(), format!("{v:?}"));
        let p = cache.pnk_row(n);
        let v = check_interlacing_sequence(&p);
        out.push(format!("(p_({n},k))_k interlacing"), v.is_interlacing(), format!("{v:?}"));
        let bt = cache.binomial_eulerian(n)?;
        out.push(format!("binomial Eulerian {n} symmetric"), is_symmetric(&bt, n), bt.to_string());
        out.push(format!("binomial Eulerian {n} γ-positive"), is_gamma_positive(&bt, n), bt.to_string());
        out.push(format!("binomial Eulerian {n} real-rooted"), is_real_rooted(&bt), bt.to_string());
        out.push(format!("A_{n} interlaces binomial Eulerian {n}"), interlaces(&cache.eulerian(n), &bt), "");
    }
    Ok(out)
}

/// The explicit triangulations used for the geometric checks.
pub fn standard_triangulations(
    max_sd: usize,
    max_trivial: usize,
    max_esd: usize,
    max_colored: usize,
    budget: &Budget,
) -> Result<Vec<CarriedTriangulation>> {
    let mut out = Vec::new();
    for m in 0..=max_sd {
        out.push(CarriedTriangulation::barycentric(m, budget)?);
    }
    for m in 0..=max_trivial {
        out.push(CarriedTriangulation::trivial(m));
    }
    for m in 1..=max_esd {
        out.push(CarriedTriangulation::edgewise(m, 2, budget)?);
    }
    for m in 1..=max_colored {
        out.push(CarriedTriangulation::colored_barycentric(m, 2, budget)?);
    }
    Ok(out)
}

/// Face-level identities on each triangulation, and agreement of the
/// `r`-colored local polynomials with the flag excedance sums.
pub fn geometry_suite(
    cache: &mut FamilyCache,
    triangulations: &[CarriedTriangulation],
    budget: &Budget,
) -> Result<Checks> {
    let mut out = Checks::new();
    for t in triangulations {
        out.extend(identity_suite(t, cache, budget)?);
    }
    Ok(out)
}

/// `ℓ_{V,E}` of the `r`-colored barycentric subdivision of `σ_n` against the
/// flag excedance enumeration, for every `E`.
pub fn colored_local_suite(n: usize, r: usize, budget: &Budget) -> Result<Checks> {
    let mut out = Checks::new();
    let t = CarriedTriangulation::colored_barycentric(n, r, budget)?;
    for e in 0..=t.full_mask() {
        let k = e.count_ones() as usize;
        out.equal(
            format!("ℓ_(V,E) of {} matches flag excedances, |E|={k}, E={e:#b}", t.name()),
            &t.local_h_ve(e)?,
            &brute_force(BruteFamily::FlagExcedance { n, r, k }, budget)?,
        );
    }
    Ok(out)
}

/// Sampled images under `H°_F` and `L_F`, judged against the theta flags of `F`.
pub fn uniform_sampling_suite(ft: &FTriangle, samples: usize, seed: u64) -> Result<Checks> {
    let flags = ft.theta_flags()?;
    let mut out = Checks::new();
    for s in sample_uniform(ft, samples, seed)? {
        let tag = format!("n={} sample {}", ft.n, s.index);
        if flags.theta_unimodal {
            out.push(format!("H°_F(p) unimodal decomposition, {tag}"), s.interior_unimodal, s.interior.to_string());
            out.push(format!("I_n L_F(p) unimodal decomposition, {tag}"), s.local_unimodal, s.local.to_string());
        }
        if flags.theta_gamma_positive {
            out.push(
                format!("H°_F(p) gamma-positive decomposition, {tag}"),
                s.interior_gamma_positive,
                s.interior.to_string(),
            );
            out.push(
                format!("I_n L_F(p) gamma-positive decomposition, {tag}"),
                s.local_gamma_positive,
                s.local.to_string(),
            );
        }
    }
    Ok(out)
}

/// Maps an internal cross-check failure to a failed check.
pub fn capture(name: &str, r: Result<Checks>) -> Result<Checks> {
    match r {
        Err(Error::IdentityFailure(msg)) => {
            let mut c = Checks::new();
            c.push(name, false, msg);
            Ok(c)
        }
        other => other,
    }
}
