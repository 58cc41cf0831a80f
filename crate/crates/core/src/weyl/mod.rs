//! Normal-ordered two-boson Weyl algebra.
//!
//! An element is a finite sum of words `(a1†)^c1 (a2†)^c2 (a1)^d1 (a2)^d2`
//! with `[a_i, a_j†] = δ_ij` and all other pairs commuting. Products are
//! rewritten to normal order immediately, so operator equality is map
//! equality.
//!
//! Operators act on polynomials in `(z, z~)` through
//! `a1 = ∂_z`, `a1† = z - ∂_z~`, `a2 = ∂_z~`, `a2† = z~ - ∂_z`.

mod dictionary;

pub use dictionary::{build_dictionary, Branch, DictionaryParams, OperatorDictionary, SqrtTwoScaled};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::combinat::{binomial, factorial};
use crate::poly::{fmt_power, fmt_terms, forward_owned_binop, BiPoly, Var};
use crate::scalar::{Coeff, FloatCoeff, Scalar};

/// Exponents of a normal-ordered word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub c1: u32,
    pub c2: u32,
    pub d1: u32,
    pub d2: u32,
}

impl Word {
    pub const IDENTITY: Word = Word {
        c1: 0,
        c2: 0,
        d1: 0,
        d2: 0,
    };

    pub fn new(c1: u32, c2: u32, d1: u32, d2: u32) -> Self {
        Word { c1, c2, d1, d2 }
    }

    pub fn degree(&self) -> u32 {
        self.c1 + self.c2 + self.d1 + self.d2
    }

    fn key(&self) -> (u32, u32, u32, u32, u32) {
        (self.degree(), self.c1, self.c2, self.d1, self.d2)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylOp<S = Coeff> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> Default for WeylOp<S> {
    fn default() -> Self {
        Self::zero()
    }
}

/// `a^d (a†)^e = Σ_k C(d,k) C(e,k) k! (a†)^{e-k} a^{d-k}` for one mode.
fn reorder_coeffs(d: u32, e: u32) -> Vec<(u32, num_bigint::BigInt)> {
    (0..=d.min(e))
        .map(|k| (k, binomial(d, k) * binomial(e, k) * factorial(k)))
        .collect()
}

impl<S: Scalar> WeylOp<S> {
    pub fn zero() -> Self {
        WeylOp {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        Self::word(c, Word::IDENTITY)
    }

    pub fn word(c: S, w: Word) -> Self {
        let mut op = Self::zero();
        op.add_term(w, c);
        op
    }

    /// Annihilator `a_i` for mode `i ∈ {1, 2}`.
    pub fn annihilator(mode: u8) -> Self {
        match mode {
            1 => Self::word(S::one(), Word::new(0, 0, 1, 0)),
            2 => Self::word(S::one(), Word::new(0, 0, 0, 1)),
            _ => panic!("mode must be 1 or 2"),
        }
    }

    /// Creator `a_i†` for mode `i ∈ {1, 2}`.
    pub fn creator(mode: u8) -> Self {
        match mode {
            1 => Self::word(S::one(), Word::new(1, 0, 0, 0)),
            2 => Self::word(S::one(), Word::new(0, 1, 0, 0)),
            _ => panic!("mode must be 1 or 2"),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(terms: I) -> Self {
        let mut op = Self::zero();
        for (w, c) in terms {
            op.add_term(w, c);
        }
        op
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &S)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: Word) -> S {
        self.terms.get(&w).cloned().unwrap_or_else(S::zero)
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

    /// The scalar `c` if this operator is `c · 1`.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Word::IDENTITY).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (*w, v.clone() * c.clone())))
    }

    /// Formal adjoint: `a_i <-> a_i†`, coefficients conjugated. Normal order
    /// is preserved because the two modes commute.
    pub fn adjoint(&self) -> Self {
        WeylOp {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::new(w.d1, w.d2, w.c1, w.c2), c.conj()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self·other - other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Image of `p` under the polynomial representation.
    pub fn apply(&self, p: &BiPoly<S>) -> BiPoly<S> {
        let mut out = BiPoly::zero();
        for (w, c) in &self.terms {
            let mut q = p.diff(Var::Zbar, w.d2).diff(Var::Z, w.d1);
            for _ in 0..w.c2 {
                q = apply_creator(2, &q);
            }
            for _ in 0..w.c1 {
                q = apply_creator(1, &q);
            }
            out = &out + &q.scale(c);
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> WeylOp<T> {
        WeylOp::from_terms(self.terms.iter().map(|(w, c)| (*w, f(c))))
    }

    pub fn to_float(&self) -> WeylOp<FloatCoeff> {
        self.map_coeffs(|c| c.to_c64())
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms
            .values()
            .fold(0.0, |acc, c| acc + c.magnitude().powi(2))
            .sqrt()
    }

    /// Equality, exact for the rational backend and relative otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = self - other;
        if S::EXACT {
            return diff.is_zero();
        }
        let scale = self.coeff_norm().max(other.coeff_norm()).max(1.0);
        diff.coeff_norm() <= tol * scale
    }
}

/// `a1† p = z p - ∂_z~ p`, `a2† p = z~ p - ∂_z p`.
fn apply_creator<S: Scalar>(mode: u8, p: &BiPoly<S>) -> BiPoly<S> {
    match mode {
        1 => &p.mul_monomial(1, 0) - &p.diff(Var::Zbar, 1),
        _ => &p.mul_monomial(0, 1) - &p.diff(Var::Z, 1),
    }
}

impl<S: Scalar> Add for &WeylOp<S> {
    type Output = WeylOp<S>;
    fn add(self, rhs: &WeylOp<S>) -> WeylOp<S> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &WeylOp<S> {
    type Output = WeylOp<S>;
    fn sub(self, rhs: &WeylOp<S>) -> WeylOp<S> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &WeylOp<S> {
    type Output = WeylOp<S>;
    fn mul(self, rhs: &WeylOp<S>) -> WeylOp<S> {
        let mut out = WeylOp::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &rhs.terms {
                let base = cx.clone() * cy.clone();
                for (k1, f1) in reorder_coeffs(x.d1, y.c1) {
                    for (k2, f2) in reorder_coeffs(x.d2, y.c2) {
                        let w = Word::new(
                            x.c1 + y.c1 - k1,
                            x.c2 + y.c2 - k2,
                            x.d1 - k1 + y.d1,
                            x.d2 - k2 + y.d2,
                        );
                        out.add_term(w, base.clone() * S::from_bigint(&(&f1 * &f2)));
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &WeylOp<S> {
    type Output = WeylOp<S>;
    fn neg(self) -> WeylOp<S> {
        WeylOp {
            terms: self.terms.iter().map(|(w, c)| (*w, -c.clone())).collect(),
        }
    }
}

forward_owned_binop!(WeylOp, Add, add);
forward_owned_binop!(WeylOp, Sub, sub);
forward_owned_binop!(WeylOp, Mul, mul);

impl<S: Scalar> Neg for WeylOp<S> {
    type Output = WeylOp<S>;
    fn neg(self) -> WeylOp<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for WeylOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(w, c)| {
            let parts: Vec<String> = [
                fmt_power("a1+", w.c1),
                fmt_power("a2+", w.c2),
                fmt_power("a1", w.d1),
                fmt_power("a2", w.d2),
            ]
            .into_iter()
            .flatten()
            .collect();
            (parts.join(" "), c)
        });
        fmt_terms(f, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    c1: u32,
    c2: u32,
    d1: u32,
    d2: u32,
    re: Value,
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    terms: Vec<WordRepr>,
}

impl<S: Scalar> Serialize for WeylOp<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let (re, im) = c.to_json_parts();
                WordRepr {
                    c1: w.c1,
                    c2: w.c2,
                    d1: w.d1,
                    d2: w.d2,
                    re,
                    im,
                }
            })
            .collect();
        OpRepr { terms }.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for WeylOp<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = OpRepr::deserialize(deserializer)?;
        let mut op = WeylOp::zero();
        for t in repr.terms {
            let c = S::from_json_parts(&t.re, &t.im).map_err(D::Error::custom)?;
            op.add_term(Word::new(t.c1, t.c2, t.d1, t.d2), c);
        }
        Ok(op)
    }
}
