use std::fmt;

use serde::{Deserialize, Serialize};

use super::structure::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LieClass {
    Su2PlusU1,
    HeisenbergPlusU1,
    Unknown,
}

impl fmt::Display for LieClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieClass::Su2PlusU1 => "su2_plus_u1",
            LieClass::HeisenbergPlusU1 => "heisenberg_plus_u1",
            LieClass::Unknown => "unknown",
        })
    }
}

/// Invariants used by [`classify`].
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub derived_dim: usize,
    pub center_dim: usize,
    pub derived_in_center: bool,
    /// `Some(true)` when the Killing form is negative definite on the
    /// derived algebra; `None` if the constants have no real form.
    pub killing_negative_definite: Option<bool>,
}

/// Constants that are all imaginary are multiplied by `-i`, which amounts
/// to rescaling every generator by `i`. Mixed constants have no such form.
fn real_form<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Option<StructureConstants<S>> {
    let n = sc.dim();
    let all = |pred: &dyn Fn(&S) -> bool| {
        (0..n).all(|i| (0..n).all(|j| sc.bracket(i, j).iter().all(pred)))
    };
    if all(&|x: &S| x.imag_part().approx_zero(tol)) {
        return Some(sc.map(|x| x.real_part()));
    }
    if all(&|x: &S| x.real_part().approx_zero(tol)) {
        let minus_i = -S::imag_unit();
        return Some(sc.map(|x| (x.clone() * minus_i.clone()).real_part()));
    }
    None
}

fn killing<S: Scalar>(sc: &StructureConstants<S>) -> Matrix<S> {
    let n = sc.dim();
    Matrix::from_fn(n, n, |a, b| {
        let mut acc = S::zero();
        for c in 0..n {
            for d in 0..n {
                acc = acc + sc.coeff(a, c, d).clone() * sc.coeff(b, d, c).clone();
            }
        }
        acc
    })
}

/// Sylvester's criterion on `-K`.
fn negative_definite<S: Scalar>(k: &Matrix<S>, tol: f64) -> bool {
    let n = k.rows();
    let thr = if S::EXACT { 0.0 } else { tol * k.max_magnitude().max(1.0) };
    (1..=n).all(|m| {
        let minor = Matrix::from_fn(m, m, |i, j| -k.get(i, j).clone());
        minor.det().is_ok_and(|d| d.to_c64().re > thr)
    })
}

pub fn invariants<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Invariants {
    let real = real_form(sc, tol);
    let sc = real.as_ref().unwrap_or(sc);
    let n = sc.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let brackets = Matrix::from_fn(pairs.len(), n, |r, k| sc.coeff(pairs[r].0, pairs[r].1, k).clone());
    let derived = brackets.row_basis();

    // x is central iff Σ_i x_i c[i][j][k] = 0 for all j, k.
    let ad = Matrix::from_fn(n * n, n, |r, i| sc.coeff(i, r / n, r % n).clone());
    let center_dim = n - ad.rank();
    let derived_in_center = derived.iter().all(|v| {
        let image = ad.mul(&Matrix::from_fn(n, 1, |i, _| v[i].clone())).expect("shapes agree");
        image.max_magnitude() <= if S::EXACT { 0.0 } else { tol }
    });

    let killing_negative_definite = real.as_ref().map(|real| {
        if derived.is_empty() {
            return false;
        }
        let k = killing(real);
        let d = Matrix::from_rows(derived.clone()).expect("rows share a length");
        let kd = d.mul(&k).and_then(|dk| dk.mul(&d.transpose())).expect("shapes agree");
        negative_definite(&kd, tol)
    });

    Invariants {
        derived_dim: derived.len(),
        center_dim,
        derived_in_center,
        killing_negative_definite,
    }
}

/// Separates `su(2) ⊕ u(1)` from `𝔥 ⊕ u(1)` among 4-dimensional tables.
pub fn classify<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Result<LieClass> {
    if !sc.satisfies_jacobi(tol) {
        return Err(Error::NotJacobi);
    }
    if sc.dim() != 4 {
        return Ok(LieClass::Unknown);
    }
    let inv = invariants(sc, tol);
    Ok(match inv {
        Invariants {
            derived_dim: 3,
            center_dim: 1,
            killing_negative_definite: Some(true),
            ..
        } => LieClass::Su2PlusU1,
        Invariants {
            derived_dim: 1,
            center_dim: 2,
            derived_in_center: true,
            ..
        } => LieClass::HeisenbergPlusU1,
        _ => LieClass::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{lie2_table, su2_table, var1_table};
    use crate::scalar::{rat, Coeff, FloatCoeff};

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::from_rational(&rat(n, d))
    }

    #[test]
    fn known_tables() {
        let su2 = su2_table::<Coeff>(&["a", "b", "c", "d"]);
        assert_eq!(classify(&su2, 0.0).unwrap(), LieClass::Su2PlusU1);
        assert_eq!(classify(&var1_table(&q(0, 1)), 0.0).unwrap(), LieClass::Su2PlusU1);
        assert_eq!(classify(&var1_table(&q(24, 25)), 0.0).unwrap(), LieClass::Su2PlusU1);
        assert_eq!(classify(&lie2_table(&q(3, 5)), 0.0).unwrap(), LieClass::Su2PlusU1);
        assert_eq!(classify(&lie2_table(&q(1, 1)), 0.0).unwrap(), LieClass::HeisenbergPlusU1);
        let f = lie2_table(&FloatCoeff::new(1.0, 0.0));
        assert_eq!(classify(&f, 1e-10).unwrap(), LieClass::HeisenbergPlusU1);
    }

    #[test]
    fn split_form_is_unknown() {
        // sl(2, R) ⊕ R: indefinite Killing form.
        let z = <Coeff as Scalar>::zero;
        let one = <Coeff as Scalar>::one;
        let sc = StructureConstants::from_brackets(
            &["h", "e", "f", "c"],
            &[
                (0, 1, vec![z(), q(2, 1), z(), z()]),
                (0, 2, vec![z(), z(), q(-2, 1), z()]),
                (1, 2, vec![one(), z(), z(), z()]),
            ],
        );
        assert_eq!(classify(&sc, 0.0).unwrap(), LieClass::Unknown);
        let abelian = StructureConstants::<Coeff>::from_brackets(&["a", "b", "c", "d"], &[]);
        assert_eq!(classify(&abelian, 0.0).unwrap(), LieClass::Unknown);
        // ϑ > 1 flips the sign of the form.
        assert_eq!(classify(&lie2_table(&q(5, 4)), 0.0).unwrap(), LieClass::Unknown);
    }

    #[test]
    fn rejects_non_jacobi() {
        let z = <Coeff as Scalar>::zero;
        let one = <Coeff as Scalar>::one;
        let sc = StructureConstants::from_brackets(
            &["a", "b", "c", "d"],
            &[
                (0, 1, vec![z(), z(), one(), z()]),
                (0, 2, vec![one(), z(), z(), z()]),
            ],
        );
        assert!(matches!(classify(&sc, 0.0), Err(Error::NotJacobi)));
    }
}
