//! Structure constants `[g_i, g_j] = Σ_k c_ij^k g_k` over a named basis.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::generators::LieBasisSet;
use super::LieClass;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::weyl::{WeylOp, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<S: Scalar> {
    names: Vec<String>,
    /// `c[i][j][k]`, antisymmetric in `(i, j)`.
    c: Vec<Vec<Vec<S>>>,
    /// Norm of the part of `[g_i, g_j]` outside the span.
    residuals: Vec<Vec<f64>>,
}

impl<S: Scalar> StructureConstants<S> {
    /// A table given by its brackets `(i, j, coeffs)` with `i < j`; all
    /// other brackets follow by antisymmetry or vanish.
    pub fn from_brackets(names: &[&str], brackets: &[(usize, usize, Vec<S>)]) -> Self {
        let n = names.len();
        let mut c = vec![vec![vec![S::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            assert_eq!(v.len(), n);
            c[*i][*j] = v.clone();
            c[*j][*i] = v.iter().map(|x| -x.clone()).collect();
        }
        StructureConstants {
            names: names.iter().map(|s| (*s).to_owned()).collect(),
            c,
            residuals: vec![vec![0.0; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[S] {
        &self.c[i][j]
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &S {
        &self.c[i][j][k]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstants<T> {
        StructureConstants {
            names: self.names.clone(),
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(&f).collect()).collect())
                .collect(),
            residuals: self.residuals.clone(),
        }
    }

    /// Largest magnitude of `Σ_cyc Σ_m c_ij^m c_mk^l` over all triples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = S::zero();
                        for m in 0..n {
                            acc = acc
                                + self.c[i][j][m].clone() * self.c[m][k][l].clone()
                                + self.c[j][k][m].clone() * self.c[m][i][l].clone()
                                + self.c[k][i][m].clone() * self.c[m][j][l].clone();
                        }
                        if S::EXACT && !acc.is_zero() {
                            return acc.magnitude().max(f64::MIN_POSITIVE);
                        }
                        worst = worst.max(acc.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Exact for the rational backend, `≤ tol` otherwise.
    pub fn satisfies_jacobi(&self, tol: f64) -> bool {
        let d = self.jacobi_defect();
        if S::EXACT {
            d == 0.0
        } else {
            d <= tol
        }
    }

    /// Equality of the constants, ignoring names.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .c
                .iter()
                .flatten()
                .flatten()
                .zip(other.c.iter().flatten().flatten())
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn to_json(&self, class: Option<LieClass>) -> Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: Vec<Value> = self.c[i][j]
                    .iter()
                    .map(|x| {
                        let (re, im) = x.to_json_parts();
                        json!({ "re": re, "im": im })
                    })
                    .collect();
                brackets.push(json!({
                    "i": i,
                    "j": j,
                    "coeffs": coeffs,
                    "residual_norm": self.residuals[i][j],
                }));
            }
        }
        json!({
            "basis": self.names,
            "brackets": brackets,
            "class": class.map(|c| c.to_string()),
        })
    }

    /// Human-readable bracket list, one nonzero bracket per line.
    pub fn pretty(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let terms: Vec<String> = self.c[i][j]
                    .iter()
                    .zip(&self.names)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, name)| format!("({}) {}", x.fmt_plain(), name))
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_owned()
                } else {
                    terms.join(" + ")
                };
                out.push_str(&format!("[{}, {}] = {}\n", self.names[i], self.names[j], rhs));
            }
        }
        out
    }
}

fn words<S: Scalar>(ops: &[&WeylOp<S>]) -> Vec<Word> {
    let set: BTreeSet<Word> = ops.iter().flat_map(|o| o.terms().map(|(w, _)| *w)).collect();
    set.into_iter().collect()
}

fn residual_norm<S: Scalar>(target: &WeylOp<S>, basis: &[WeylOp<S>], coeffs: &[S]) -> f64 {
    let mut r = target.clone();
    for (g, c) in basis.iter().zip(coeffs) {
        r = &r - &g.scale(c);
    }
    r.coeff_norm()
}

/// Dimension of the span of the generators as operators.
pub fn span_rank<S: Scalar>(basis: &LieBasisSet<S>) -> usize {
    let all: Vec<&WeylOp<S>> = basis.ops.iter().collect();
    let ws = words(&all);
    Matrix::from_fn(ws.len(), basis.len(), |r, k| basis.ops[k].coeff(ws[r])).rank()
}

/// Solves each `[g_i, g_j]` in the span of the basis by exact elimination
/// over the operators' coefficient vectors.
pub fn structure_constants<S: Scalar>(basis: &LieBasisSet<S>, tol: f64) -> Result<StructureConstants<S>> {
    let n = basis.len();
    let brackets: Vec<(usize, usize, WeylOp<S>)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, basis.ops[i].commutator(&basis.ops[j])))
        .collect();
    let mut all: Vec<&WeylOp<S>> = basis.ops.iter().collect();
    all.extend(brackets.iter().map(|(_, _, b)| b));
    let ws = words(&all);
    let a = Matrix::from_fn(ws.len(), n, |r, k| basis.ops[k].coeff(ws[r]));
    if a.rank() < n {
        return Err(Error::Dependent);
    }
    let names: Vec<&str> = basis.names.iter().map(String::as_str).collect();
    let mut sc = StructureConstants::from_brackets(&names, &[]);
    for (i, j, b) in &brackets {
        let rhs: Vec<S> = ws.iter().map(|w| b.coeff(*w)).collect();
        let Some(x) = a.solve(&rhs)? else {
            return Err(Error::NotClosed(basis.names[*i].clone(), basis.names[*j].clone()));
        };
        let res = residual_norm(b, &basis.ops, &x);
        let closed = if S::EXACT { res == 0.0 } else { res <= tol * b.coeff_norm().max(1.0) };
        if !closed {
            return Err(Error::NotClosed(basis.names[*i].clone(), basis.names[*j].clone()));
        }
        sc.c[*j][*i] = x.iter().map(|v| -v.clone()).collect();
        sc.c[*i][*j] = x;
        sc.residuals[*i][*j] = res;
        sc.residuals[*j][*i] = res;
    }
    Ok(sc)
}

/// Residual norms of a given table evaluated on concrete operators:
/// `‖[g_i, g_j] - Σ_k c_ij^k g_k‖` for `i < j`, as `(i, j, norm)`.
pub fn table_residuals<S: Scalar>(table: &StructureConstants<S>, basis: &LieBasisSet<S>) -> Vec<(usize, usize, f64)> {
    let n = table.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let b = basis.ops[i].commutator(&basis.ops[j]);
            out.push((i, j, residual_norm(&b, &basis.ops, &table.c[i][j])));
        }
    }
    out
}

/// Brackets of `J1^α..J4^α`:
/// `[J1,J2] = iJ3`, `[J2,J3] = iJ1`, `[J3,J4] = iϑJ1`, `[J4,J1] = iϑJ3`,
/// `[J3,J1] = iJ2 + iϑJ4`, `[J2,J4] = 0`.
pub fn var1_table<S: Scalar>(theta: &S) -> StructureConstants<S> {
    let i = S::imag_unit();
    let it = i.clone() * theta.clone();
    let z = S::zero;
    StructureConstants::from_brackets(
        &["J1_alpha", "J2_alpha", "J3_alpha", "J4_alpha"],
        &[
            (0, 1, vec![z(), z(), i.clone(), z()]),
            (1, 2, vec![i.clone(), z(), z(), z()]),
            (2, 3, vec![it.clone(), z(), z(), z()]),
            (0, 3, vec![z(), z(), -it.clone(), z()]),
            (0, 2, vec![z(), -i, z(), -it]),
        ],
    )
}

/// Brackets of `X1, X2, X3, Y`: `[X1,X2] = X3`, `[X2,X3] = (1-ϑ²)X1`,
/// `[X3,X1] = (1-ϑ²)X2`, `Y` central.
pub fn lie2_table<S: Scalar>(theta: &S) -> StructureConstants<S> {
    let s = S::one() - theta.clone() * theta.clone();
    let z = S::zero;
    StructureConstants::from_brackets(
        &["X1_theta", "X2_theta", "X3_theta", "Y_theta"],
        &[
            (0, 1, vec![z(), z(), S::one(), z()]),
            (1, 2, vec![s.clone(), z(), z(), z()]),
            (0, 2, vec![z(), -s, z(), z()]),
        ],
    )
}

/// `[Z_i, Z_j] = ε_ijk Z_k` with a central fourth generator.
pub fn su2_table<S: Scalar>(names: &[&str]) -> StructureConstants<S> {
    let z = S::zero;
    StructureConstants::from_brackets(
        names,
        &[
            (0, 1, vec![z(), z(), S::one(), z()]),
            (1, 2, vec![S::one(), z(), z(), z()]),
            (0, 2, vec![z(), -S::one(), z(), z()]),
        ],
    )
}
