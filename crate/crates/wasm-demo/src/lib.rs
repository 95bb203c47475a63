//! Three browser operations over the exact core: the Eulerian transformation
//! of a polynomial, the `q_{n,k}` / `d_{n,k}` tables, and the interlacing test.
//!
//! Each operation has a plain Rust form returning JSON, which the
//! `wasm_bindgen` exports wrap.

use eulerian_lab::roots::{
    check_interlacing_sequence, interlaces, interlacing_symmetric_decomposition, is_real_rooted, isolate_roots,
};
use eulerian_lab::structure::{basis_p_coeffs, in_p_cone};
use eulerian_lab::transforms::{FamilyCache, LinearTransform};
use eulerian_lab::Poly;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` accepted from the page.
pub const MAX_N: usize = 12;

fn parse(label: &str, s: &str) -> Result<Poly, String> {
    s.parse().map_err(|e| format!("{label}: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

fn roots_approx(p: &Poly) -> Option<Vec<f64>> {
    if p.degree().unwrap_or(0) == 0 || !is_real_rooted(p) {
        return None;
    }
    let iso = isolate_roots(p).ok()?;
    Some(iso.intervals.iter().flat_map(|iv| std::iter::repeat_n(iv.approx(), iv.multiplicity)).collect())
}

#[derive(Serialize)]
struct TransformReport {
    n: usize,
    input: String,
    image: String,
    real_rooted: bool,
    roots: Option<Vec<f64>>,
    in_cone: bool,
    cone_coordinates: Vec<String>,
    binomial_eulerian_interlaces_image: bool,
    image_interlaces_x_eulerian: bool,
    decomposition_a: String,
    decomposition_b: String,
    decomposition_interlacing: bool,
}

/// `A°(p)` with `n = deg p`, plus its interlacing certificates.
pub fn eulerian_transform_json(p: &str) -> Result<String, String> {
    let p = parse("p", p)?;
    let n = p.degree().unwrap_or(0);
    if n > MAX_N {
        return Err(format!("degree {n} exceeds the demo limit {MAX_N}"));
    }
    let mut cache = FamilyCache::new();
    let image = LinearTransform::eulerian_interior(&mut cache, n).apply(&p).map_err(|e| e.to_string())?;
    let lower = cache.binomial_eulerian(n).map_err(|e| e.to_string())?;
    let upper = cache.eulerian(n).shift(1);
    let dec = interlacing_symmetric_decomposition(&image, n).map_err(|e| e.to_string())?;
    let coords = basis_p_coeffs(&p, n).map_err(|e| e.to_string())?;
    Ok(to_json(&TransformReport {
        n,
        input: p.to_string(),
        real_rooted: is_real_rooted(&image),
        roots: roots_approx(&image),
        in_cone: in_p_cone(&p, n),
        cone_coordinates: coords.iter().map(ToString::to_string).collect(),
        binomial_eulerian_interlaces_image: interlaces(&lower, &image),
        image_interlaces_x_eulerian: interlaces(&image, &upper),
        decomposition_a: dec.a.to_string(),
        decomposition_b: dec.b.to_string(),
        decomposition_interlacing: dec.is_real_rooted_interlacing(),
        image: image.to_string(),
    }))
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    polys: Vec<String>,
    interlacing: bool,
}

/// Rows `0..=n` of `q_{n,k}` (`which = "q"`) or `d_{n,k}` (`which = "d"`).
pub fn table_json(which: &str, n: usize) -> Result<String, String> {
    if n > MAX_N {
        return Err(format!("n = {n} exceeds the demo limit {MAX_N}"));
    }
    let mut cache = FamilyCache::new();
    let mut rows = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let row = match which {
            "q" => cache.qnk_row(m),
            "d" => cache.dnk_row(m),
            other => return Err(format!("unknown table {other:?}; expected \"q\" or \"d\"")),
        }
        .map_err(|e| e.to_string())?;
        rows.push(TableRow {
            n: m,
            interlacing: check_interlacing_sequence(&row).is_interlacing(),
            polys: row.iter().map(ToString::to_string).collect(),
        });
    }
    Ok(to_json(&rows))
}

#[derive(Serialize)]
struct InterlaceReport {
    p: String,
    q: String,
    p_real_rooted: bool,
    q_real_rooted: bool,
    p_roots: Option<Vec<f64>>,
    q_roots: Option<Vec<f64>>,
    p_interlaces_q: bool,
    q_interlaces_p: bool,
}

/// Whether `p ⪯ q` and `q ⪯ p`, with approximate roots for display.
pub fn interlace_json(p: &str, q: &str) -> Result<String, String> {
    let (p, q) = (parse("p", p)?, parse("q", q)?);
    for (label, r) in [("p", &p), ("q", &q)] {
        if r.degree().unwrap_or(0) > 4 * MAX_N {
            return Err(format!("{label} has degree above {}", 4 * MAX_N));
        }
    }
    Ok(to_json(&InterlaceReport {
        p_real_rooted: is_real_rooted(&p),
        q_real_rooted: is_real_rooted(&q),
        p_roots: roots_approx(&p),
        q_roots: roots_approx(&q),
        p_interlaces_q: interlaces(&p, &q),
        q_interlaces_p: interlaces(&q, &p),
        p: p.to_string(),
        q: q.to_string(),
    }))
}

#[wasm_bindgen]
pub fn eulerian_transform(p: &str) -> Result<String, JsError> {
    eulerian_transform_json(p).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn table(which: &str, n: usize) -> Result<String, JsError> {
    table_json(which, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn interlace(p: &str, q: &str) -> Result<String, JsError> {
    interlace_json(p, q).map_err(|e| JsError::new(&e))
}
