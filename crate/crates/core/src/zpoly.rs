//! Primitive integer coefficient vectors for gcds and Sturm chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Poly, Rational};

pub(crate) type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Positive rescaling of `p` to integer coefficients with content 1.
pub(crate) fn primitive_of(p: &Poly) -> ZPoly {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: ZPoly = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(v)
}

/// Divides by the (positive) gcd of the coefficients.
pub(crate) fn make_primitive(v: ZPoly) -> ZPoly {
    let v = trim(v);
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

pub(crate) fn to_poly(v: &[BigInt]) -> Poly {
    Poly::from_bigints(v.iter().cloned())
}

/// Remainder of `|lc(b)|^(deg a - deg b + 1) * a` on division by `b`, made
/// primitive. The result is a positive multiple of the Euclidean remainder.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return make_primitive(a.to_vec());
    }
    let lc = b[db].clone();
    let lc_abs = lc.abs();
    let sign = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut r: ZPoly = a.to_vec();
    let steps = a.len() - db;
    for _ in 0..steps {
        let top = r.len() - 1;
        if r.len() <= db {
            break;
        }
        let t = &r[top] * &sign;
        for c in r.iter_mut() {
            *c *= &lc_abs;
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &t * bj;
        }
        r = trim(r);
        if r.is_empty() {
            return r;
        }
    }
    make_primitive(r)
}

/// Primitive gcd with positive leading coefficient; empty for `gcd(0, 0)`.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = make_primitive(a.to_vec());
    let mut b = make_primitive(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.last().is_some_and(Signed::is_negative) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

pub(crate) fn derivative(v: &[BigInt]) -> ZPoly {
    trim(v.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Sign of `v(x)` at the rational `x`.
pub(crate) fn sign_at(v: &[BigInt], x: &Rational) -> i8 {
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in v.iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}
