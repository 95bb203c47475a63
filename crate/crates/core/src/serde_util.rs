//! Serialize exact values as strings so JSON reports stay exact.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::poly::{Poly, Rational};

pub fn rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

pub fn poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn polys<S: Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}
