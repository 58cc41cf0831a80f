//! Scalar backends.
//!
//! Everything in the crate is generic over [`Scalar`]. Two backends exist:
//!
//! * [`Coeff`]: complex numbers with arbitrary-precision rational real and
//!   imaginary parts. Arithmetic is closed and every identity is checked by
//!   literal equality.
//! * [`FloatCoeff`]: `Complex<f64>`, used for quadrature oracles, the
//!   irrational parameter points (e.g. `alpha^2 = 1/2`) and benchmarks.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact complex scalar with rational parts.
pub type Coeff = Complex<Rational>;

/// Double-precision complex scalar.
pub type FloatCoeff = Complex<f64>;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// True for the exact rational backend.
    const EXACT: bool;
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Modulus as a double. Used for pivot selection and residual norms.
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> FloatCoeff;
    fn real_part(&self) -> Self;
    fn imag_part(&self) -> Self;
    /// Square root of a nonnegative real scalar, if the backend can represent it.
    fn real_sqrt(&self) -> Option<Self>;
    /// Exact equality for the rational backend; relative comparison otherwise.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
    fn fmt_plain(&self) -> String;
    fn to_json_parts(&self) -> (Value, Value);
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self>;
    /// Parse `"p/q"`, `"a+bi"`, `"-i"`, ... into a scalar.
    fn parse(s: &str) -> Result<Self>;

    fn approx_zero(&self, tol: f64) -> bool {
        self.approx_eq(&Self::zero(), tol)
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|r| self.clone() * r)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// `|c|^2` as a scalar.
    fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn coeff(re: Rational, im: Rational) -> Coeff {
    Complex::new(re, im)
}

pub fn coeff_ri(re: (i64, i64), im: (i64, i64)) -> Coeff {
    Complex::new(rat(re.0, re.1), rat(im.0, im.1))
}

fn exact_sqrt_rational(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Split `"a+bi"` style input into real and imaginary substrings.
fn split_complex(s: &str) -> Result<(Option<String>, Option<String>)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::parse(s, "empty"));
    }
    if let Some(body) = t.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re, im) = match split {
            Some(idx) => (Some(body[..idx].to_owned()), &body[idx..]),
            None => (None, body),
        };
        let im = match im {
            "" | "+" => "1".to_owned(),
            "-" => "-1".to_owned(),
            other => other.trim_end_matches('*').to_owned(),
        };
        Ok((re, Some(im)))
    } else {
        Ok((Some(t), None))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.contains(['.', 'e', 'E']) {
        return Err(Error::parse(
            s,
            "decimal literals are not accepted by the exact backend; write p/q",
        ));
    }
    Rational::from_str(body).map_err(|e| Error::parse(s, e.to_string()))
}

fn parse_f64(s: &str) -> Result<f64> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if let Some((n, d)) = body.split_once('/') {
        let n: f64 = n.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
        let d: f64 = d.parse().map_err(|_| Error::parse(s, "bad denominator"))?;
        return Ok(n / d);
    }
    body.parse().map_err(|_| Error::parse(s, "not a number"))
}

impl Scalar for Coeff {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn zero() -> Self {
        Complex::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Complex::new(Rational::from_integer(1.into()), Rational::zero())
    }
    fn imag_unit() -> Self {
        Complex::new(Rational::zero(), Rational::from_integer(1.into()))
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(Rational::from_integer(n.into()), Rational::zero())
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(Rational::from_integer(n.clone()), Rational::zero())
    }
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &n, -&self.im / &n))
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.re).hypot(rational_to_f64(&self.im))
    }
    fn to_c64(&self) -> FloatCoeff {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn real_part(&self) -> Self {
        Complex::new(self.re.clone(), Rational::zero())
    }
    fn imag_part(&self) -> Self {
        Complex::new(self.im.clone(), Rational::zero())
    }
    fn real_sqrt(&self) -> Option<Self> {
        if !self.im.is_zero() {
            return None;
        }
        exact_sqrt_rational(&self.re).map(|r| Complex::new(r, Rational::zero()))
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn fmt_plain(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re),
            (true, false) => format!("{}i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                format!(
                    "({}{}{}i)",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im.abs())
                )
            }
        }
    }
    fn to_json_parts(&self) -> (Value, Value) {
        (
            Value::String(fmt_rational(&self.re)),
            Value::String(fmt_rational(&self.im)),
        )
    }
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        let part = |v: &Value| -> Result<Rational> {
            match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
                other => Err(Error::parse(&other.to_string(), "expected a \"p/q\" string")),
            }
        };
        Ok(Complex::new(part(re)?, part(im)?))
    }
    fn parse(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s)?;
        let re = re.map(|r| parse_rational(&r)).transpose()?.unwrap_or_else(Rational::zero);
        let im = im.map(|r| parse_rational(&r)).transpose()?.unwrap_or_else(Rational::zero);
        Ok(Complex::new(re, im))
    }
}

impl Scalar for FloatCoeff {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex::new(rational_to_f64(r), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex::inv(self))
        }
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> FloatCoeff {
        *self
    }
    fn real_part(&self) -> Self {
        Complex::new(self.re, 0.0)
    }
    fn imag_part(&self) -> Self {
        Complex::new(self.im, 0.0)
    }
    fn real_sqrt(&self) -> Option<Self> {
        let scale = self.re.abs().max(1.0);
        if self.im.abs() > 1e-12 * scale || self.re < -1e-12 * scale {
            return None;
        }
        Some(Complex::new(self.re.max(0.0).sqrt(), 0.0))
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() <= tol * scale
    }
    fn fmt_plain(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else if self.re == 0.0 {
            format!("{}i", self.im)
        } else {
            let sign = if self.im < 0.0 { "-" } else { "+" };
            format!("({}{}{}i)", self.re, sign, self.im.abs())
        }
    }
    fn to_json_parts(&self) -> (Value, Value) {
        (json_f64(self.re), json_f64(self.im))
    }
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        let part = |v: &Value| -> Result<f64> {
            match v {
                Value::Number(n) => n
                    .as_f64()
                    .ok_or_else(|| Error::parse(&n.to_string(), "not representable as f64")),
                Value::String(s) => parse_f64(s),
                other => Err(Error::parse(&other.to_string(), "expected a number")),
            }
        };
        Ok(Complex::new(part(re)?, part(im)?))
    }
    fn parse(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s)?;
        let re = re.map(|r| parse_f64(&r)).transpose()?.unwrap_or(0.0);
        let im = im.map(|r| parse_f64(&r)).transpose()?.unwrap_or(0.0);
        Ok(Complex::new(re, im))
    }
}

fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Convert an exact scalar to the float backend.
pub fn to_float(c: &Coeff) -> FloatCoeff {
    c.to_c64()
}
