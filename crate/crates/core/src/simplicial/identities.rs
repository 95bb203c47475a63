use crate::check::Checks;
use crate::error::Result;
use crate::perm::Budget;
use crate::poly::Poly;
use crate::structure::{is_symmetric, reciprocal, symmetric_decomposition};
use crate::transforms::FamilyCache;

use super::ftriangle::FTriangle;
use super::triangulation::{submasks, CarriedTriangulation};

fn pc(m: u32) -> usize {
    m.count_ones() as usize
}

/// Runs every face-level identity on an explicit triangulation of `σ_n`.
///
/// Sums over faces `F ⊆ V` use bitmasks over the base simplex.
pub fn identity_suite(t: &CarriedTriangulation, cache: &mut FamilyCache, budget: &Budget) -> Result<Checks> {
    let n = t.base();
    let v = t.full_mask();
    let name = t.name().to_string();
    let mut out = Checks::new();

    for f in 0..=v {
        let h = t.h_restricted(f);
        out.equal(
            format!("{name}: interior h of F={f:#b} is the reciprocal of h"),
            &t.interior_h(f),
            &reciprocal(h, pc(f))?,
        );
        let th = t.theta(f);
        out.push(format!("{name}: theta of F={f:#b} is symmetric"), is_symmetric(&th, pc(f)), format!("theta = {th}"));
    }

    let via_eulerian: Poly = submasks(v).map(|f| &t.theta(f) * &cache.eulerian(n - pc(f))).sum();
    out.equal(format!("{name}: h = sum theta(Γ_F) A_|V∖F|"), t.h_poly(), &via_eulerian);

    let via_derangement: Poly = submasks(v).map(|f| &t.theta(f) * &cache.derangement(n - pc(f))).sum();
    out.equal(format!("{name}: ℓ_V = sum theta(Γ_F) d_|V∖F|"), &t.local_h(), &via_derangement);

    for e in 0..=v {
        let lve = t.local_h_ve(e)?;
        let mut via_theta = Poly::zero();
        for f in 0..=v {
            let d = cache.dnk(n - pc(f), n - pc(e | f))?;
            via_theta += &(&t.theta(f) * &d);
        }
        out.equal(format!("{name}: ℓ_(V,E) theta expansion, E={e:#b}"), &lve, &via_theta);
        out.push(format!("{name}: ℓ_(V,E) nonnegative, E={e:#b}"), lve.has_nonnegative_coeffs(), format!("ℓ = {lve}"));
        let via_local: Poly = submasks(e)
            .map(|missing| {
                let f = (v & !e) | missing;
                t.local_h_ve_restricted(f, 0).expect("∅ ⊆ F")
            })
            .sum();
        out.equal(format!("{name}: ℓ_(V,E) = sum over F ⊇ V∖E of ℓ_F, E={e:#b}"), &lve, &via_local);
    }

    out.equal(format!("{name}: ℓ_(V,V) = h"), &t.local_h_ve(v)?, t.h_poly());
    for drop in 0..n {
        let e = v & !(1 << drop);
        let expect = t.h_poly() - t.h_restricted(e);
        out.equal(format!("{name}: ℓ_(V,E) = h - h(Γ_E) for facet E={e:#b}"), &t.local_h_ve(e)?, &expect);
    }

    for g in 0..=v {
        for e in submasks(g) {
            let sum: Poly = submasks(g & !e).map(|rest| t.local_h_ve_restricted(e | rest, e).expect("E ⊆ F")).sum();
            out.equal(format!("{name}: h(Γ_G) = sum ℓ_(F,E)(Γ_F), E={e:#b}, G={g:#b}"), t.h_restricted(g), &sum);
        }
    }

    let ft = FTriangle::from_triangulation(t);
    if let Some(ft) = &ft {
        for f in 0..=v {
            out.equal(
                format!("{name}: h(Γ_F) matches f-triangle row {}, F={f:#b}", pc(f)),
                t.h_restricted(f),
                &ft.h(pc(f))?,
            );
        }
    }

    let sphere = t.antiprism_sphere(budget)?;
    let sphere_h = sphere.h_poly();
    out.push(format!("{name}: antiprism sphere h is symmetric"), is_symmetric(&sphere_h, n), format!("h = {sphere_h}"));
    for k in 0..=n {
        let induced = sphere.keep_first_u(k).h_poly(n)?;
        out.equal(
            format!("{name}: antiprism without u_(k+1..n) matches restriction sum, k={k}"),
            &induced,
            &t.antiprism_h_by_restrictions(k),
        );
        if let Some(ft) = &ft {
            out.equal(
                format!("{name}: antiprism without u_(k+1..n) has h = q_(F,n,k), k={k}"),
                &induced,
                &ft.qnk(n, k)?,
            );
        }
    }

    out.extend(corollary_checks(t)?);
    Ok(out)
}

/// Symmetric-decomposition consequences for theta unimodal or theta
/// γ-positive triangulations. Nothing is checked when neither property holds.
pub fn corollary_checks(t: &CarriedTriangulation) -> Result<Checks> {
    let n = t.base();
    let v = t.full_mask();
    let name = t.name();
    let mut out = Checks::new();
    let thetas: Vec<(Poly, usize)> = (0..=v).map(|f| (t.theta(f), pc(f))).collect();
    let unimodal = thetas.iter().all(|(p, _)| crate::structure::is_unimodal(p).is_some());
    let gamma = thetas.iter().all(|(p, m)| crate::structure::is_gamma_positive(p, *m));
    if !unimodal && !gamma {
        return Ok(out);
    }
    for e in 0..=v {
        let rev = reciprocal(&t.local_h_ve(e)?, n)?;
        let sum_interior: Poly = submasks(v & !e).map(|rest| t.interior_h(e | rest)).sum();
        for (what, p) in [("reversed ℓ_(V,E)", rev), ("sum of interior h over G ⊇ E", sum_interior)] {
            let dec = symmetric_decomposition(&p, n)?;
            if unimodal {
                out.push(
                    format!("{name}: {what} has a unimodal decomposition, E={e:#b}"),
                    dec.is_unimodal(),
                    format!("a = {}, b = {}", dec.a, dec.b),
                );
            }
            if gamma {
                out.push(
                    format!("{name}: {what} has a γ-positive decomposition, E={e:#b}"),
                    dec.is_gamma_positive(),
                    format!("a = {}, b = {}", dec.a, dec.b),
                );
            }
        }
    }
    Ok(out)
}
