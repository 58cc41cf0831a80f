//! Bilinear generators of the deformed bosons and their Lie algebra.

mod classify;
mod generators;
mod structure;

use serde_json::{json, Value};

pub use classify::{classify, invariants, Invariants, LieClass};
pub use generators::{basis_change, bilinear_generators, rescale, rescale_factor, rescale_literal, undeformed_generators, LieBasisSet};
pub use structure::{lie2_table, span_rank, structure_constants, su2_table, table_residuals, var1_table, StructureConstants};

use crate::error::{Error, Result};
use crate::ncqm::AlphaPoint;
use crate::report::Report;
use crate::scalar::{FloatCoeff, Scalar};

/// Residual tolerance for the float-only `ϑ = 1` regime.
pub const THETA_ONE_TOL: f64 = 1e-10;

fn max_residual(r: &[(usize, usize, f64)]) -> f64 {
    r.iter().map(|t| t.2).fold(0.0, f64::max)
}

fn scalar_json<S: Scalar>(x: &S) -> Value {
    let (re, im) = x.to_json_parts();
    json!({ "re": re, "im": im })
}

struct Stage {
    name: &'static str,
    ok: bool,
    table: Value,
}

fn stage<S: Scalar>(
    name: &'static str,
    basis: &LieBasisSet<S>,
    expected: &StructureConstants<S>,
    want_class: Option<LieClass>,
    tol: f64,
) -> Result<(Stage, Option<LieClass>)> {
    let sc = structure_constants(basis, tol)?;
    let jacobi = sc.satisfies_jacobi(tol);
    let class = if jacobi { Some(classify(&sc, tol)?) } else { None };
    let ok = sc.approx_eq(expected, tol) && jacobi && want_class.is_none_or(|w| class == Some(w));
    let mut table = sc.to_json(class);
    table["matches_expected"] = json!(sc.approx_eq(expected, tol));
    table["jacobi"] = json!(jacobi);
    table["expected_residual"] = json!(max_residual(&table_residuals(expected, basis)));
    Ok((Stage { name, ok, table }, class))
}

/// Undeformed `J`, deformed `J^α`, the `X/Y` basis and the rescaled `Z`
/// basis at one exact (or float) point with `0 < ϑ < 1`.
pub fn lie_suite<S: Scalar>(p: &AlphaPoint<S>, tol: f64) -> Result<Report> {
    let theta = p.theta();
    let j0 = undeformed_generators::<S>();
    let j = bilinear_generators(p);
    let x = basis_change(&j, &theta);
    let su2 = Some(LieClass::Su2PlusU1);

    let (s0, _) = stage("J", &j0, &var1_table(&S::zero()), su2, tol)?;
    let (s1, _) = stage("J_alpha", &j, &var1_table(&theta), su2, tol)?;
    let (s2, _) = stage("X", &x, &lie2_table(&theta), su2, tol)?;
    let factor = S::one() - theta.clone() * theta.clone();
    let (stages, class) = match rescale(&x, &theta) {
        Ok(z) => {
            let names = ["Z1_theta", "Z2_theta", "Z3_theta", "Y_theta"];
            let (s3, class) = stage("Z", &z, &su2_table(&names), su2, tol)?;
            (vec![s0, s1, s2, s3], class)
        }
        Err(e @ Error::RescaleSingular) => return Err(e),
        Err(e) => {
            let class = classify(&lie2_table(&theta), tol)?;
            let s3 = Stage {
                name: "Z",
                ok: false,
                table: json!({ "error": e.to_string() }),
            };
            (vec![s0, s1, s2, s3], Some(class))
        }
    };
    let literal = rescale_literal(&x, &theta)
        .and_then(|z| structure_constants(&z, tol))
        .map(|sc| sc.to_json(None))
        .unwrap_or_else(|e| json!({ "error": e.to_string() }));
    let ok = stages.iter().all(|s| s.ok);
    let class_str = class.map_or("unknown".to_owned(), |c| c.to_string());
    let tables: serde_json::Map<String, Value> = stages
        .iter()
        .map(|s| (s.name.to_owned(), json!({ "pass": s.ok, "table": s.table })))
        .collect();
    let rescale_json = rescale_factor(&theta).ok().map(|s| scalar_json(&s));
    Ok(Report::new(
        "lie",
        ok,
        format!("alpha = {}, theta = {}: {class_str}", p.alpha().fmt_plain(), theta.fmt_plain()),
        json!({
            "alpha": scalar_json(p.alpha()),
            "theta": scalar_json(&theta),
            "one_minus_theta_sq": scalar_json(&factor),
            "rescale_factor": rescale_json,
            "class": class_str,
            "stages": tables,
            "literal_rescaling": literal,
        }),
    ))
}

/// The boundary `ϑ = 1` in float arithmetic. Here `Δ = 0`, the deformed
/// bosons are proportional and the generators are linearly dependent, so
/// the bracket table is the formal limit of the `X/Y` table. It is checked
/// for Jacobi and classified, and its residuals on the float operators
/// must stay below [`THETA_ONE_TOL`].
pub fn theta_one_suite() -> Report {
    let tol = THETA_ONE_TOL;
    let one = FloatCoeff::new(1.0, 0.0);
    let formal = lie2_table(&one);
    let jacobi = formal.satisfies_jacobi(tol);
    let class = classify(&formal, tol);
    let class_ok = matches!(class, Ok(LieClass::HeisenbergPlusU1));

    let p = AlphaPoint::<FloatCoeff>::theta_one();
    let theta = p.theta();
    let j = bilinear_generators(&p);
    let x = basis_change(&j, &theta);
    let j_res = max_residual(&table_residuals(&var1_table(&theta), &j));
    let x_res = max_residual(&table_residuals(&lie2_table(&theta), &x));
    let residual_ok = j_res <= tol && x_res <= tol;
    let rescale_err = rescale(&x, &theta).err();
    let rescale_ok = matches!(rescale_err, Some(Error::RescaleSingular));
    let computed = structure_constants(&x, tol).err().map(|e| e.to_string());

    let ok = jacobi && class_ok && residual_ok && rescale_ok;
    Report::new(
        "lie_theta_one",
        ok,
        format!(
            "theta = 1: {}",
            class.as_ref().map_or_else(|e| e.to_string(), |c| c.to_string())
        ),
        json!({
            "theta": theta.re,
            "tolerance": tol,
            "class": class.as_ref().map(|c| c.to_string()).ok(),
            "table": formal.to_json(class.ok()),
            "jacobi": jacobi,
            "residuals": { "J_alpha": j_res, "X": x_res },
            "operator_rank": { "J_alpha": span_rank(&j), "X": span_rank(&x) },
            "computed_table_error": computed,
            "rescale_error": rescale_err.map(|e| e.to_string()),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, coeff_ri, Coeff};

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::from_rational(&rat(n, d))
    }

    fn point(n: i64, d: i64) -> AlphaPoint<Coeff> {
        AlphaPoint::new(q(n, d)).unwrap()
    }

    #[test]
    fn undeformed_su2() {
        let j = undeformed_generators::<Coeff>();
        let sc = structure_constants(&j, 0.0).unwrap();
        assert_eq!(sc.bracket(0, 1), &[q(0, 1), q(0, 1), Coeff::i(), q(0, 1)]);
        for k in 0..3 {
            assert!(sc.bracket(3, k).iter().all(Scalar::is_zero));
        }
        assert_eq!(classify(&sc, 0.0).unwrap(), LieClass::Su2PlusU1);
    }

    #[test]
    fn deformed_bracket_example() {
        let j = bilinear_generators(&point(3, 5));
        let sc = structure_constants(&j, 0.0).unwrap();
        assert_eq!(sc.bracket(2, 0), &[q(0, 1), Coeff::i(), q(0, 1), coeff_ri((0, 1), (24, 25))]);
        assert!(sc.approx_eq(&var1_table(&q(24, 25)), 0.0));
        assert_eq!(sc.max_residual(), 0.0);
    }

    #[test]
    fn x_table_factor() {
        let p = point(3, 5);
        let x = basis_change(&bilinear_generators(&p), &p.theta());
        let sc = structure_constants(&x, 0.0).unwrap();
        assert_eq!(sc.bracket(1, 2)[0], q(49, 625));
        assert_eq!(sc.bracket(0, 1)[2], q(1, 1));
        for k in 0..3 {
            assert!(x.ops[3].commutator(&x.ops[k]).is_zero());
        }
    }

    #[test]
    fn rescaling() {
        assert_eq!(rescale_factor(&q(24, 25)).unwrap(), q(7, 25));
        assert_eq!(rescale_factor(&q(0, 1)).unwrap(), q(1, 1));
        assert!(matches!(rescale_factor(&q(1, 1)), Err(Error::RescaleSingular)));
        assert!(matches!(rescale_factor(&q(1, 2)), Err(Error::Irrational { .. })));
    }

    #[test]
    fn literal_rescaling_is_not_su2() {
        let p = point(3, 5);
        let x = basis_change(&bilinear_generators(&p), &p.theta());
        let sc = structure_constants(&rescale_literal(&x, &p.theta()).unwrap(), 0.0).unwrap();
        assert_eq!(sc.bracket(0, 1)[2], q(1, 1));
        assert_eq!(sc.bracket(1, 2)[0], q(49, 625));
        assert_eq!(sc.bracket(2, 0)[1], q(2401, 390625));
        let z = rescale(&x, &p.theta()).unwrap();
        assert_eq!(z.ops[0], x.ops[0].scale(&q(25, 7)));
        assert_eq!(z.ops[2], x.ops[2].scale(&q(625, 49)));
        let sc = structure_constants(&z, 0.0).unwrap();
        assert!(sc.approx_eq(&su2_table(&["a", "b", "c", "d"]), 0.0));
    }

    #[test]
    fn suites_at_exact_points() {
        for (n, d) in [(3, 5), (5, 13), (8, 17), (-3, 5)] {
            let r = lie_suite(&point(n, d), 0.0).unwrap();
            assert!(r.passed(), "{n}/{d}: {}", r.payload);
            assert_eq!(r.payload["class"], "su2_plus_u1");
        }
    }

    #[test]
    fn float_point() {
        let p = point(3, 5).to_float();
        assert!(lie_suite(&p, 1e-10).unwrap().passed());
    }

    #[test]
    fn boundary() {
        let r = theta_one_suite();
        assert!(r.passed(), "{}", r.payload);
        assert_eq!(r.payload["class"], "heisenberg_plus_u1");
    }

    #[test]
    fn json_shape() {
        let j = undeformed_generators::<Coeff>();
        let sc = structure_constants(&j, 0.0).unwrap();
        let v = sc.to_json(Some(LieClass::Su2PlusU1));
        assert_eq!(v["basis"][0], "J1");
        assert_eq!(v["brackets"].as_array().unwrap().len(), 6);
        assert_eq!(v["brackets"][0]["residual_norm"], 0.0);
        assert_eq!(v["class"], "su2_plus_u1");
    }
}
