//! Sparse polynomials in the conjugate pair `z`, `z~` and the Gaussian
//! inner product `<p, q> = ∫ conj(p) q e^{-|z|^2} dx dy / π`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::combinat::factorial;
use crate::scalar::{Coeff, FloatCoeff, Scalar};

/// Exponent pair of `z^z · z~^zbar`.
///
/// Ordered by total degree, then by `z`-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub z: u32,
    pub zbar: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { z: 0, zbar: 0 };

    pub fn new(z: u32, zbar: u32) -> Self {
        Monomial { z, zbar }
    }

    pub fn degree(&self) -> u32 {
        self.z + self.zbar
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.z.cmp(&other.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    Zbar,
}

/// Polynomial in `z` and `z~` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<S = Coeff> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for BiPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: S, z: u32, zbar: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(z, zbar), c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    pub fn zbar() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, S)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Add `c · m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, z: u32, zbar: u32) -> S {
        self.terms
            .get(&Monomial::new(z, zbar))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, z: u32, zbar: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.z + z, m.zbar + zbar), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative of the given order.
    pub fn diff(&self, var: Var, order: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = match var {
                Var::Z => m.z,
                Var::Zbar => m.zbar,
            };
            if e < order {
                continue;
            }
            let falling = factorial(e) / factorial(e - order);
            let nm = match var {
                Var::Z => Monomial::new(m.z - order, m.zbar),
                Var::Zbar => Monomial::new(m.z, m.zbar - order),
            };
            out.add_term(nm, c.clone() * S::from_bigint(&falling));
        }
        out
    }

    /// Pointwise complex conjugate: `conj(c z^a z~^b) = conj(c) z^b z~^a`.
    pub fn conj(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.zbar, m.z), c.conj()))
                .collect(),
        }
    }

    /// Exchange the roles of `z` and `z~` without conjugating coefficients.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.zbar, m.z), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at the point `z` (with `z~ = conj(z)`).
    pub fn eval(&self, z: FloatCoeff) -> FloatCoeff {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|(m, c)| c.to_c64() * z.powu(m.z) * zb.powu(m.zbar))
            .sum()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn to_float(&self) -> BiPoly<FloatCoeff> {
        self.map_coeffs(|c| c.to_c64())
    }

    /// Termwise comparison within the backend's tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = self - other;
        if S::EXACT {
            return diff.is_zero();
        }
        let scale = self
            .terms
            .values()
            .chain(other.terms.values())
            .map(Scalar::magnitude)
            .fold(1.0_f64, f64::max);
        diff.terms.values().all(|c| c.magnitude() <= tol * scale)
    }

    /// Euclidean norm of the coefficient vector, as a double.
    pub fn coeff_norm(&self) -> f64 {
        self.terms
            .values()
            .fold(0.0, |acc, c| acc + c.magnitude().powi(2))
            .sqrt()
    }
}

/// `∫ z^m z~^n dν = n! [m = n]` for the normalized Gaussian measure.
fn gaussian_moment<S: Scalar>(m: u32, n: u32) -> Option<S> {
    (m == n).then(|| S::from_bigint(&factorial(n)))
}

/// Exact Gaussian inner product, conjugate-linear in `p`.
///
/// Uses `<z^a z~^b, z^c z~^d> = (b+c)! [b + c = a + d]`.
pub fn inner_product<S: Scalar>(p: &BiPoly<S>, q: &BiPoly<S>) -> S {
    let mut acc = S::zero();
    for (mp, cp) in p.terms() {
        for (mq, cq) in q.terms() {
            if let Some(moment) = gaussian_moment::<S>(mp.zbar + mq.z, mp.z + mq.zbar) {
                acc = acc + cp.conj() * cq.clone() * moment;
            }
        }
    }
    acc
}

impl<S: Scalar> Add for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn add(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn sub(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn mul(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(
                    Monomial::new(ma.z + mb.z, ma.zbar + mb.zbar),
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ident, $tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for $ty<S> {
            type Output = $ty<S>;
            fn $method(self, rhs: $ty<S>) -> $ty<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $tr<&$ty<S>> for $ty<S> {
            type Output = $ty<S>;
            fn $method(self, rhs: &$ty<S>) -> $ty<S> {
                (&self).$method(rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(BiPoly, Add, add);
forward_owned_binop!(BiPoly, Sub, sub);
forward_owned_binop!(BiPoly, Mul, mul);

impl<S: Scalar> Neg for BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        -&self
    }
}

/// Write `c·base^e ...` products in the ASCII style used by the CLI.
pub(crate) fn fmt_terms<'a, S: Scalar, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a S)>,
{
    let mut first = true;
    for (mono, c) in terms {
        let mut coeff = c.fmt_plain();
        let negative = coeff.starts_with('-');
        if negative {
            coeff.remove(0);
        }
        let sep = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        f.write_str(sep)?;
        match (mono.is_empty(), coeff.as_str()) {
            (true, _) => f.write_str(&coeff)?,
            (false, "1") => f.write_str(&mono)?,
            (false, _) => write!(f, "{coeff} {mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn fmt_power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_owned()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl<S: Scalar> fmt::Display for BiPoly<S> {
    /// Highest total degree first; `z~` stands for the conjugate variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let parts: Vec<String> = [fmt_power("z", m.z), fmt_power("z~", m.zbar)]
                .into_iter()
                .flatten()
                .collect();
            (parts.join(" "), c)
        });
        fmt_terms(f, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    z: u32,
    zbar: u32,
    re: Value,
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<T> {
    terms: Vec<T>,
}

impl<S: Scalar> Serialize for BiPoly<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (re, im) = c.to_json_parts();
                TermRepr {
                    z: m.z,
                    zbar: m.zbar,
                    re,
                    im,
                }
            })
            .collect();
        PolyRepr { terms }.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for BiPoly<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::<TermRepr>::deserialize(deserializer)?;
        let mut p = BiPoly::zero();
        for t in repr.terms {
            let c = S::from_json_parts(&t.re, &t.im).map_err(D::Error::custom)?;
            p.add_term(Monomial::new(t.z, t.zbar), c);
        }
        Ok(p)
    }
}
