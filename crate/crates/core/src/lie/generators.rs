use crate::error::{Error, Result};
use crate::ncqm::AlphaPoint;
use crate::scalar::Scalar;
use crate::weyl::WeylOp;

/// Named generators, in bracket-table order.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBasisSet<S: Scalar> {
    pub names: Vec<String>,
    pub ops: Vec<WeylOp<S>>,
}

impl<S: Scalar> LieBasisSet<S> {
    pub fn new(names: &[&str], ops: Vec<WeylOp<S>>) -> Self {
        assert_eq!(names.len(), ops.len());
        LieBasisSet {
            names: names.iter().map(|s| (*s).to_owned()).collect(),
            ops,
        }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&WeylOp<S>> {
        self.names.iter().position(|n| n == name).map(|i| &self.ops[i])
    }
}

/// `J1 = ½(c1 a2 + c2 a1)`, `J2 = (1/2i)(c1 a2 - c2 a1)`,
/// `J3 = ½(c1 a1 - c2 a2)`, `J4 = ½(c1 a1 + c2 a2)`.
fn bilinear<S: Scalar>(c: [WeylOp<S>; 2], a: [WeylOp<S>; 2], names: &[&str]) -> LieBasisSet<S> {
    let half = S::one().checked_div(&S::from_i64(2)).expect("2 is invertible");
    let minus_half_i = -(half.clone() * S::imag_unit());
    let c1a2 = &c[0] * &a[1];
    let c2a1 = &c[1] * &a[0];
    let c1a1 = &c[0] * &a[0];
    let c2a2 = &c[1] * &a[1];
    LieBasisSet::new(
        names,
        vec![
            (&c1a2 + &c2a1).scale(&half),
            (&c1a2 - &c2a1).scale(&minus_half_i),
            (&c1a1 - &c2a2).scale(&half),
            (&c1a1 + &c2a2).scale(&half),
        ],
    )
}

/// The undeformed `J1..J4`.
pub fn undeformed_generators<S: Scalar>() -> LieBasisSet<S> {
    bilinear(
        [WeylOp::creator(1), WeylOp::creator(2)],
        [WeylOp::annihilator(1), WeylOp::annihilator(2)],
        &["J1", "J2", "J3", "J4"],
    )
}

/// `J1^α..J4^α`, the same bilinears in the deformed bosons.
pub fn bilinear_generators<S: Scalar>(p: &AlphaPoint<S>) -> LieBasisSet<S> {
    bilinear(
        [p.creator(1), p.creator(2)],
        [p.annihilator(1), p.annihilator(2)],
        &["J1_alpha", "J2_alpha", "J3_alpha", "J4_alpha"],
    )
}

/// `X1 = iJ1`, `X2 = iJ3`, `X3 = i(J2 + ϑJ4)`, `Y = ϑJ2 + J4`.
pub fn basis_change<S: Scalar>(j: &LieBasisSet<S>, theta: &S) -> LieBasisSet<S> {
    let i = S::imag_unit();
    let [j1, j2, j3, j4] = [&j.ops[0], &j.ops[1], &j.ops[2], &j.ops[3]];
    let j4t = j4.scale(theta);
    LieBasisSet::new(
        &["X1_theta", "X2_theta", "X3_theta", "Y_theta"],
        vec![
            j1.scale(&i),
            j3.scale(&i),
            (j2 + &j4t).scale(&i),
            &j2.scale(theta) + j4,
        ],
    )
}

/// `√(1-ϑ²)`, rejected at `ϑ = ±1`.
pub fn rescale_factor<S: Scalar>(theta: &S) -> Result<S> {
    let s2 = S::one() - theta.clone() * theta.clone();
    if s2.approx_zero(1e-12) {
        return Err(Error::RescaleSingular);
    }
    s2.real_sqrt().ok_or_else(|| Error::Irrational {
        quantity: format!("sqrt(1 - theta^2) at theta = {}", theta.fmt_plain()),
    })
}

/// `Z1 = X1/s`, `Z2 = X2/s`, `Z3 = X3/s²` with `s = √(1-ϑ²)`, the unique
/// diagonal scaling (up to signs) that turns the `X/Y` table into
/// `[Z_i, Z_j] = ε_ijk Z_k`. `Y` is unchanged.
pub fn rescale<S: Scalar>(x: &LieBasisSet<S>, theta: &S) -> Result<LieBasisSet<S>> {
    let s = rescale_factor(theta)?;
    let inv = s.inv().ok_or(Error::RescaleSingular)?;
    Ok(LieBasisSet::new(
        &["Z1_theta", "Z2_theta", "Z3_theta", "Y_theta"],
        vec![
            x.ops[0].scale(&inv),
            x.ops[1].scale(&inv),
            x.ops[2].scale(&(inv.clone() * inv)),
            x.ops[3].clone(),
        ],
    ))
}

/// `Z1 = s X1`, `Z2 = X2`, `Z3 = s X3`. This scaling leaves
/// `[Z2, Z3] = s² Z1` and `[Z3, Z1] = s⁴ Z2`, so it does not give `su(2)`
/// constants; kept for comparison.
pub fn rescale_literal<S: Scalar>(x: &LieBasisSet<S>, theta: &S) -> Result<LieBasisSet<S>> {
    let s = rescale_factor(theta)?;
    Ok(LieBasisSet::new(
        &["Z1_theta", "Z2_theta", "Z3_theta", "Y_theta"],
        vec![
            x.ops[0].scale(&s),
            x.ops[1].clone(),
            x.ops[2].scale(&s),
            x.ops[3].clone(),
        ],
    ))
}
