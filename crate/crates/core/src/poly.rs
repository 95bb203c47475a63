//! Exact univariate polynomials over the rationals.
//!
//! A [`Poly`] stores its coefficients in increasing degree order with
//! trailing zeros removed, so the zero polynomial is the empty vector and has
//! no degree. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zpoly;

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n choose k` as an exact integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// `(1 + x)^k`.
    pub fn one_plus_x_pow(k: usize) -> Self {
        Poly::from_bigints((0..=k).map(|i| binomial(k, i)))
    }

    /// `(a + b x)^k` for integers `a`, `b`.
    pub fn linear_pow(a: i64, b: i64, k: usize) -> Self {
        Poly::from_ints(&[a, b]).pow(k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn check_degree(&self, bound: usize) -> Result<()> {
        match self.degree() {
            Some(d) if d > bound => Err(Error::DegreeOverflow { degree: d, bound }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Poly {
        self.scale(&Rational::from_integer(c.clone()))
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading_coeff().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) / ({divisor}) leaves remainder {r}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let g = zpoly::gcd(&zpoly::primitive_of(self), &zpoly::primitive_of(other));
        zpoly::to_poly(&g).monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's algorithm: returns `(c, factors)` with `self = c * prod factors[i]^(i+1)`,
    /// each factor monic, squarefree and pairwise coprime. Constant factors are `1`.
    pub fn squarefree_factorization(&self) -> Result<(Rational, Vec<Poly>)> {
        let lc = self.leading_coeff().ok_or(Error::ZeroPolynomial)?.clone();
        let f = self.monic();
        if f.is_constant() {
            return Ok((lc, Vec::new()));
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut factors = Vec::new();
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            factors.push(a);
        }
        Ok((lc, factors))
    }

    /// Coefficients as exact strings, for JSON reports.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let Some(xpos) = term.find('x') else {
        return Ok((parse_rational(term)?, 0));
    };
    let (head, tail) = term.split_at(xpos);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = if head.is_empty() { Rational::one() } else { parse_rational(head)? };
    let exp = match &tail[1..] {
        "" => 1,
        rest => rest
            .strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?,
    };
    Ok((coeff, exp))
}

/// Accepts `"1 + 11*x + 11*x^2 + x^3"`, the compact `"1+11x+11x^2+x^3"`, and
/// fractional coefficients `"1/2*x"`.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (mut c, e) = parse_term(body)?;
            if neg {
                c = -c;
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

/// Convenience: parse a polynomial literal, panicking on bad input. Intended for
/// tests and embedded tables.
pub fn poly(s: &str) -> Poly {
    s.parse().unwrap_or_else(|e| panic!("invalid polynomial literal {s:?}: {e}"))
}
