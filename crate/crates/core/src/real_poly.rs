//! Real polynomials in `x1`, `x2` with rational coefficients, and the
//! Gaussian integral `∫ p q e^{-x^2} dx` carried as `rational · √π`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::combinat::double_factorial_odd;
use crate::error::{Error, Result};
use crate::poly::{fmt_power, fmt_terms};
use crate::scalar::{Coeff, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealMonomial {
    pub x1: u32,
    pub x2: u32,
}

impl RealMonomial {
    pub fn new(x1: u32, x2: u32) -> Self {
        RealMonomial { x1, x2 }
    }

    pub fn degree(&self) -> u32 {
        self.x1 + self.x2
    }
}

impl Ord for RealMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x1.cmp(&other.x1))
    }
}

impl PartialOrd for RealMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which variable a univariate polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealVar {
    X1,
    X2,
}

/// Polynomial with real rational coefficients (the imaginary part is zero by
/// construction).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealPoly {
    terms: BTreeMap<RealMonomial, Rational>,
}

impl RealPoly {
    pub fn zero() -> Self {
        RealPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, x1: u32, x2: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(RealMonomial::new(x1, x2), c);
        p
    }

    pub fn x1() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn x2() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn add_term(&mut self, m: RealMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&m).map_or(c.clone(), |old| old + c);
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&RealMonomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, x1: u32, x2: u32) -> Rational {
        self.terms
            .get(&RealMonomial::new(x1, x2))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Rename `x1 <-> x2`.
    pub fn swap_vars(&self) -> Self {
        RealPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (RealMonomial::new(m.x2, m.x1), c.clone()))
                .collect(),
        }
    }

    /// The single variable this polynomial depends on. Constants report
    /// `None` and are compatible with either variable.
    fn univariate_in(&self) -> std::result::Result<Option<RealVar>, Error> {
        let uses_x1 = self.terms.keys().any(|m| m.x1 > 0);
        let uses_x2 = self.terms.keys().any(|m| m.x2 > 0);
        match (uses_x1, uses_x2) {
            (true, true) => Err(Error::NotUnivariate),
            (true, false) => Ok(Some(RealVar::X1)),
            (false, true) => Ok(Some(RealVar::X2)),
            (false, false) => Ok(None),
        }
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * x1.powi(m.x1 as i32) * x2.powi(m.x2 as i32))
            .sum()
    }
}

/// `rational · π^{sqrt_pi_power / 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtPiMultiple {
    pub rational: Rational,
    pub sqrt_pi_power: u32,
}

impl SqrtPiMultiple {
    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            * std::f64::consts::PI.sqrt().powi(self.sqrt_pi_power as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }
}

impl fmt::Display for SqrtPiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sqrt_pi_power {
            0 => write!(f, "{}", self.rational),
            1 => write!(f, "{}·√π", self.rational),
            k => write!(f, "{}·√π^{}", self.rational, k),
        }
    }
}

/// `∫ x^k e^{-x^2} dx / √π`: zero for odd `k`, `(k-1)!!/2^{k/2}` otherwise.
fn real_moment(k: u32) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let half = k / 2;
    Rational::new(double_factorial_odd(half), num_bigint::BigInt::from(1) << half)
}

/// Exact `∫_R p(x) q(x) e^{-x^2} dx` for two polynomials in the same variable.
pub fn real_inner_product(p: &RealPoly, q: &RealPoly) -> Result<SqrtPiMultiple> {
    let var = match (p.univariate_in()?, q.univariate_in()?) {
        (Some(a), Some(b)) if a != b => return Err(Error::NotUnivariate),
        (Some(a), _) | (_, Some(a)) => a,
        (None, None) => RealVar::X1,
    };
    let degree = |m: &RealMonomial| match var {
        RealVar::X1 => m.x1,
        RealVar::X2 => m.x2,
    };
    let mut acc = Rational::zero();
    for (mp, cp) in p.terms() {
        for (mq, cq) in q.terms() {
            acc += cp * cq * real_moment(degree(mp) + degree(mq));
        }
    }
    Ok(SqrtPiMultiple {
        rational: acc,
        sqrt_pi_power: 1,
    })
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        let mut out = RealPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(RealMonomial::new(ma.x1 + mb.x1, ma.x2 + mb.x2), ca * cb);
            }
        }
        out
    }
}

impl Neg for &RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_real {
    ($tr:ident, $method:ident) => {
        impl $tr for RealPoly {
            type Output = RealPoly;
            fn $method(self, rhs: RealPoly) -> RealPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_real!(Add, add);
forward_real!(Sub, sub);
forward_real!(Mul, mul);

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_coeff: Vec<(String, Coeff)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let parts: Vec<String> = [fmt_power("x1", m.x1), fmt_power("x2", m.x2)]
                    .into_iter()
                    .flatten()
                    .collect();
                (parts.join(" "), Coeff::from_rational(c))
            })
            .collect();
        fmt_terms(f, as_coeff.iter().map(|(s, c)| (s.clone(), c)))
    }
}

#[derive(Serialize, Deserialize)]
struct RealTermRepr {
    x1: u32,
    x2: u32,
    re: Value,
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct RealPolyRepr {
    terms: Vec<RealTermRepr>,
}

impl Serialize for RealPoly {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| RealTermRepr {
                x1: m.x1,
                x2: m.x2,
                re: Value::String(c.to_string()),
                im: Value::String("0".into()),
            })
            .collect();
        RealPolyRepr { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RealPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RealPolyRepr::deserialize(deserializer)?;
        let mut p = RealPoly::zero();
        for t in repr.terms {
            let c = Coeff::from_json_parts(&t.re, &t.im).map_err(D::Error::custom)?;
            if !c.im.is_zero() {
                return Err(D::Error::custom("real polynomial with imaginary coefficient"));
            }
            p.add_term(RealMonomial::new(t.x1, t.x2), c.re);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn int(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn moments() {
        assert_eq!(real_moment(0), int(1));
        assert_eq!(real_moment(1), int(0));
        assert_eq!(real_moment(2), rat(1, 2));
        assert_eq!(real_moment(4), rat(3, 4));
        assert_eq!(real_moment(6), rat(15, 8));
    }

    #[test]
    fn gaussian_integral_of_one() {
        let one = RealPoly::one();
        let v = real_inner_product(&one, &one).unwrap();
        assert_eq!(v.rational, int(1));
        assert_eq!(v.sqrt_pi_power, 1);
        assert_eq!(v.to_string(), "1·√π");
    }

    #[test]
    fn first_hermite_norm() {
        let h1 = RealPoly::monomial(int(2), 1, 0);
        let v = real_inner_product(&h1, &h1).unwrap();
        assert_eq!(v.rational, int(2));
        let h2 = &RealPoly::monomial(int(4), 2, 0) - &RealPoly::constant(int(2));
        assert!(real_inner_product(&h2, &h1).unwrap().is_zero());
    }

    #[test]
    fn mixed_variables_rejected() {
        let p = &RealPoly::x1() * &RealPoly::x2();
        assert_eq!(real_inner_product(&p, &RealPoly::one()), Err(Error::NotUnivariate));
        assert_eq!(
            real_inner_product(&RealPoly::x1(), &RealPoly::x2()),
            Err(Error::NotUnivariate)
        );
        // constants pair with either variable
        assert!(real_inner_product(&RealPoly::x2(), &RealPoly::one()).is_ok());
    }

    #[test]
    fn json_uses_x_keys() {
        let p = &RealPoly::monomial(int(4), 1, 1) - &RealPoly::constant(rat(1, 2));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"terms":[
                {"x1":0,"x2":0,"re":"-1/2","im":"0"},
                {"x1":1,"x2":1,"re":"4","im":"0"}
            ]})
        );
        let back: RealPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let bad = serde_json::json!({"terms":[{"x1":0,"x2":0,"re":"1","im":"1"}]});
        assert!(serde_json::from_value::<RealPoly>(bad).is_err());
    }

    #[test]
    fn display() {
        let p = &RealPoly::monomial(int(8), 3, 0) - &RealPoly::monomial(int(12), 1, 0);
        assert_eq!(p.to_string(), "8 x1^3 - 12 x1");
    }
}
