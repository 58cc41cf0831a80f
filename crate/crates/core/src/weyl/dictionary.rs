//! Named operators for a parameter point.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::WeylOp;
use crate::error::Result;
use crate::lie::{basis_change, bilinear_generators, rescale, undeformed_generators, LieBasisSet};
use crate::ncqm::{canonical_qp, modified_bosons, qp_operators, AlphaPoint};
use crate::scalar::Scalar;

/// `op · 2^{-inv_sqrt2_power/2}`. Position and momentum carry a factor
/// `1/√2` that the exact backend cannot hold; commutators of two such
/// operators carry `1/2`, which it can.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtTwoScaled<S: Scalar> {
    pub op: WeylOp<S>,
    pub inv_sqrt2_power: u32,
}

impl<S: Scalar> SqrtTwoScaled<S> {
    pub fn new(op: WeylOp<S>, inv_sqrt2_power: u32) -> Self {
        SqrtTwoScaled {
            op,
            inv_sqrt2_power,
        }
    }

    pub fn plain(op: WeylOp<S>) -> Self {
        Self::new(op, 0)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.op.scale(c), self.inv_sqrt2_power)
    }

    /// Sum of two operators whose powers have equal parity.
    pub fn add(&self, other: &Self) -> Self {
        let (lo, hi) = if self.inv_sqrt2_power <= other.inv_sqrt2_power {
            (self, other)
        } else {
            (other, self)
        };
        let gap = hi.inv_sqrt2_power - lo.inv_sqrt2_power;
        assert!(gap % 2 == 0, "cannot add across odd powers of sqrt 2");
        let lifted = lo.op.scale(&S::from_i64(2).pow(gap / 2));
        Self::new(&lifted + &hi.op, hi.inv_sqrt2_power)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self::new(
            self.op.commutator(&other.op),
            self.inv_sqrt2_power + other.inv_sqrt2_power,
        )
    }

    /// The plain operator; `None` for an odd power in the exact backend.
    pub fn resolve(&self) -> Option<WeylOp<S>> {
        let p = self.inv_sqrt2_power;
        let two = S::from_i64(2);
        let even = two.pow(p / 2).inv()?;
        let factor = if p % 2 == 0 {
            even
        } else {
            even * two.real_sqrt()?.inv()?
        };
        Some(self.op.scale(&factor))
    }

    pub fn to_json(&self) -> Value {
        json!({ "inv_sqrt2_power": self.inv_sqrt2_power, "op": self.op })
    }
}

/// Sign choice `c = (1 ± √κ)/2`, `d = (1 ∓ √κ)/ϑ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DictionaryParams<S: Scalar> {
    /// Hermitian α-family, with `γ = ϑ = 2α√(1-α²)`.
    Alpha(AlphaPoint<S>),
    ThetaGamma { theta: S, gamma: S, branch: Branch },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct OperatorDictionary<S: Scalar> {
    entries: BTreeMap<String, SqrtTwoScaled<S>>,
}

impl<S: Scalar> OperatorDictionary<S> {
    pub fn insert(&mut self, name: &str, op: SqrtTwoScaled<S>) {
        self.entries.insert(name.to_owned(), op);
    }

    fn insert_plain(&mut self, name: &str, op: WeylOp<S>) {
        self.insert(name, SqrtTwoScaled::plain(op));
    }

    fn insert_basis(&mut self, set: &LieBasisSet<S>) {
        for (name, op) in set.names.iter().zip(&set.ops) {
            self.insert_plain(name, op.clone());
        }
    }

    pub fn get(&self, name: &str) -> Option<&SqrtTwoScaled<S>> {
        self.entries.get(name)
    }

    /// The named operator with its `1/√2` factors applied, when representable.
    pub fn op(&self, name: &str) -> Option<WeylOp<S>> {
        self.get(name)?.resolve()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.entries
                .iter()
                .map(|(k, v)| (k.clone(), v.to_json()))
                .collect(),
        )
    }
}

pub fn build_dictionary<S: Scalar>(params: &DictionaryParams<S>) -> Result<OperatorDictionary<S>> {
    let mut d = OperatorDictionary {
        entries: BTreeMap::new(),
    };
    for i in 1..=2u8 {
        d.insert_plain(&format!("a{i}"), WeylOp::annihilator(i));
        d.insert_plain(&format!("a{i}_dag"), WeylOp::creator(i));
    }
    let canon = canonical_qp::<S>();
    for i in 0..2 {
        d.insert(&format!("q{}", i + 1), canon.q[i].clone());
        d.insert(&format!("p{}", i + 1), canon.p[i].clone());
    }
    let (theta, gamma, branch) = match params {
        DictionaryParams::Alpha(p) => (p.theta(), p.theta(), Branch::Plus),
        DictionaryParams::ThetaGamma {
            theta,
            gamma,
            branch,
        } => (theta.clone(), gamma.clone(), *branch),
    };
    let qp = qp_operators(&theta, &gamma, branch)?;
    for i in 0..2 {
        d.insert(&format!("Q{}", i + 1), qp.q[i].clone());
        d.insert(&format!("P{}", i + 1), qp.p[i].clone());
    }
    let [a1, a2, a1d, a2d] = modified_bosons(&qp);
    d.insert_plain("A1", a1);
    d.insert_plain("A2", a2);
    d.insert_plain("A1_dag", a1d);
    d.insert_plain("A2_dag", a2d);

    if let DictionaryParams::Alpha(p) = params {
        for i in 1..=2u8 {
            d.insert_plain(&format!("a{i}_alpha"), p.annihilator(i));
            d.insert_plain(&format!("a{i}_alpha_dag"), p.creator(i));
        }
        d.insert_basis(&undeformed_generators());
        let j = bilinear_generators(p);
        d.insert_basis(&j);
        let x = basis_change(&j, &p.theta());
        d.insert_basis(&x);
        if let Ok(z) = rescale(&x, &p.theta()) {
            d.insert_basis(&z);
        }
    }
    Ok(d)
}
