//! Verification suites for the deformed families.

use nalgebra::{DMatrix, Schur};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{deformed_generating_series, deformed_hermite, rep_matrix, substitute, Gl2, RepMatrix};
use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::hermite::{complex_hermite_sum, generating_series_complex, level_indices};
use crate::poly::{inner_product, BiPoly, Var};
use crate::report::Report;
use crate::scalar::{FloatCoeff, Rational, Scalar};

fn weight<S: Scalar>(m: u32, n: u32) -> S {
    S::from_bigint(&(factorial(m) * factorial(n)))
}

fn json_scalar<S: Scalar>(x: &S) -> Value {
    let (re, im) = x.to_json_parts();
    json!({ "re": re, "im": im })
}

/// The family dual to `H^g` on one level, built from `(g*)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualFamily<S: Scalar> {
    pub level: u32,
    pub g_dual: Gl2<S>,
    /// `polys[k]` is the dual partner of `H^g_{k,L-k}`.
    pub polys: Vec<BiPoly<S>>,
    /// `M((g*)⁻¹, L)`.
    pub matrix: RepMatrix<S>,
    /// `[M(g, L)*]⁻¹` with the Gaussian adjoint, for cross-validation.
    pub matrix_route: RepMatrix<S>,
}

pub fn dual_family<S: Scalar>(g: &Gl2<S>, level: u32) -> Result<DualFamily<S>> {
    let g_dual = g.adjoint().inverse();
    let polys = (0..=level)
        .into_par_iter()
        .map(|k| deformed_hermite(&g_dual, k, level - k))
        .collect();
    let matrix = rep_matrix(&g_dual, level);
    let matrix_route = rep_matrix(g, level).hilbert_adjoint().inverse()?;
    Ok(DualFamily {
        level,
        g_dual,
        polys,
        matrix,
        matrix_route,
    })
}

/// `⟨H~_{L-n,n}, H^g_{M-k,k}⟩ = (L-n)! n! δ_LM δ_nk` for all `L, M ≤ lmax`.
pub fn biorthogonality_check<S: Scalar>(g: &Gl2<S>, lmax: u32, tol: f64) -> Result<Report> {
    let g_dual = g.adjoint().inverse();
    let idx = level_indices(lmax);
    let deformed: Vec<BiPoly<S>> = idx.par_iter().map(|&(m, n)| deformed_hermite(g, m, n)).collect();
    let dual: Vec<BiPoly<S>> = idx
        .par_iter()
        .map(|&(m, n)| deformed_hermite(&g_dual, m, n))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..idx.len())
        .flat_map(|i| (0..idx.len()).map(move |j| (i, j)))
        .collect();
    let violations: Vec<Value> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (a, b) = (idx[i], idx[j]);
            let got = inner_product(&dual[i], &deformed[j]);
            let expected = if a == b { weight(a.0, a.1) } else { S::zero() };
            if got.approx_eq(&expected, tol) {
                None
            } else {
                Some(json!({
                    "L": a.0 + a.1, "n": a.1, "M": b.0 + b.1, "k": b.1,
                    "expected": json_scalar(&expected), "got": json_scalar(&got),
                }))
            }
        })
        .collect();
    let dual_route: Vec<u32> = (0..=lmax)
        .filter(|&l| {
            dual_family(g, l)
                .map(|d| !d.matrix.approx_eq(&d.matrix_route, tol))
                .unwrap_or(true)
        })
        .collect();
    let ok = violations.is_empty() && dual_route.is_empty();
    let status = if ok { "pass" } else { "fail" };
    Ok(Report::new(
        "biorth",
        ok,
        format!(
            "{} pairs checked up to level {lmax}, {} violations",
            pairs.len(),
            violations.len()
        ),
        json!({
            "Lmax": lmax,
            "g": g.to_json(),
            "g_dual": g_dual.to_json(),
            "violations": violations,
            "matrix_route_mismatch_levels": dual_route,
            "status": status,
        }),
    ))
}

/// With `g' = adj(g)` (so `g' g = Δ·I`): `M(g',L) M(g,L) = Δ^L·I`. For a
/// hermitian `g` the same constant appears as the polynomial pairing
/// `⟨H^{g'}_{L-n,n}, H^g_{L-k,k}⟩ = Δ^L (L-n)! n! δ_nk`.
pub fn dual_matrix_scaling_check<S: Scalar>(g: &Gl2<S>, lmax: u32, tol: f64) -> Report {
    let partner = g.adjugate();
    let delta = g.det();
    let adj = partner.adjoint();
    let hermitian = (0..2).all(|i| (0..2).all(|j| adj.entry(i, j).approx_eq(partner.entry(i, j), tol)));
    let mut levels = Vec::new();
    let mut ok = true;
    for l in 0..=lmax {
        let kappa = delta.pow(l);
        let prod = rep_matrix(&partner, l)
            .mul(&rep_matrix(g, l))
            .expect("same level");
        let matrix_ok = prod.is_scalar_multiple_of_identity(&kappa, tol);
        let poly_ok = !hermitian
            || (0..=l).all(|n| {
                let left = deformed_hermite(&partner, l - n, n);
                (0..=l).all(|k| {
                    let right = deformed_hermite(g, l - k, k);
                    let expected = if n == k {
                        kappa.clone() * weight(l - n, n)
                    } else {
                        S::zero()
                    };
                    inner_product(&left, &right).approx_eq(&expected, tol)
                })
            });
        ok &= matrix_ok && poly_ok;
        levels.push(json!({
            "L": l,
            "kappa": json_scalar(&kappa),
            "matrix_identity": matrix_ok,
            "pairing": if hermitian { json!(poly_ok) } else { Value::Null },
        }));
    }
    Report::new(
        "dual-scaling",
        ok,
        format!("M(g',L)M(g,L) = Δ^L I with Δ = {}", delta.fmt_plain()),
        json!({
            "g": g.to_json(),
            "partner": partner.to_json(),
            "delta": json_scalar(&delta),
            "levels": levels,
        }),
    )
}

/// Eigenvalues of `g`: exact for triangular input, float otherwise.
fn g_eigenvalues<S: Scalar>(g: &Gl2<S>) -> Option<[S; 2]> {
    if g.is_lower_triangular() || g.is_upper_triangular() {
        Some([g.entry(0, 0).clone(), g.entry(1, 1).clone()])
    } else {
        None
    }
}

fn float_g_eigenvalues(g: &Gl2<FloatCoeff>) -> [FloatCoeff; 2] {
    let tr = g.trace();
    let disc = (tr * tr - g.det() * 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

fn schur_eigenvalues(m: &RepMatrix<FloatCoeff>) -> Option<Vec<FloatCoeff>> {
    let n = m.level() as usize + 1;
    let dm = DMatrix::from_fn(n, n, |i, j| *m.get(i, j));
    Schur::new(dm).eigenvalues().map(|v| v.iter().copied().collect())
}

fn sort_by_magnitude_phase(v: &mut [FloatCoeff]) {
    v.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
}

/// Greedy multiset matching with relative tolerance.
fn float_multiset_eq(expected: &[FloatCoeff], got: &[FloatCoeff], tol: f64) -> bool {
    if expected.len() != got.len() {
        return false;
    }
    let mut used = vec![false; got.len()];
    expected.iter().all(|e| {
        let scale = e.norm().max(1.0);
        let hit = got
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, x)| (i, (x - e).norm()))
            .filter(|(_, d)| *d <= tol * scale)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match hit {
            Some((i, _)) => {
                used[i] = true;
                true
            }
            None => false,
        }
    })
}

fn exact_multiset_eq<S: Scalar>(expected: &[S], got: &[S]) -> bool {
    let mut rest: Vec<&S> = got.iter().collect();
    expected.len() == got.len()
        && expected.iter().all(|e| match rest.iter().position(|x| *x == e) {
            Some(i) => {
                rest.swap_remove(i);
                true
            }
            None => false,
        })
}

/// Spectrum of `M(g, L)` against `{λ1^k λ2^{L-k}}`, where `λ1, λ2` are the
/// eigenvalues of `g`. Exact when `g` is triangular; otherwise Schur
/// decomposition in floating point, which requires distinct eigenvalues.
pub fn eigenvalue_structure_check<S: Scalar>(g: &Gl2<S>, level: u32, tol: f64) -> Result<Report> {
    let m = rep_matrix(g, level);
    if let Some([l1, l2]) = g_eigenvalues(g) {
        let expected: Vec<S> = (0..=level).map(|k| l1.pow(k) * l2.pow(level - k)).collect();
        let mat = m.matrix();
        if mat.is_lower_triangular() || mat.is_upper_triangular() {
            let got = mat.diagonal();
            let ok = if S::EXACT {
                exact_multiset_eq(&expected, &got)
            } else {
                let e: Vec<_> = expected.iter().map(Scalar::to_c64).collect();
                let g: Vec<_> = got.iter().map(Scalar::to_c64).collect();
                float_multiset_eq(&e, &g, tol)
            };
            return Ok(Report::new(
                "eigen",
                ok,
                format!("spectrum of M(g,{level}) read off the triangular diagonal"),
                json!({
                    "L": level,
                    "method": "triangular",
                    "lambda": [json_scalar(&l1), json_scalar(&l2)],
                    "expected": expected.iter().map(json_scalar).collect::<Vec<_>>(),
                    "computed": got.iter().map(json_scalar).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    let gf = g.to_float();
    let [l1, l2] = float_g_eigenvalues(&gf);
    if (l1 - l2).norm() <= 1e-9 * l1.norm().max(l2.norm()).max(1.0) {
        return Err(Error::Unsupported(
            "eigenvalue check needs distinct eigenvalues for non-triangular g".into(),
        ));
    }
    let mut expected: Vec<FloatCoeff> = (0..=level)
        .map(|k| l1.powu(k) * l2.powu(level - k))
        .collect();
    let mf = RepMatrix::from_matrix(level, m.matrix().map(Scalar::to_c64))?;
    let mut got = schur_eigenvalues(&mf)
        .ok_or_else(|| Error::Unsupported("Schur iteration did not converge".into()))?;
    sort_by_magnitude_phase(&mut expected);
    sort_by_magnitude_phase(&mut got);
    let ok = float_multiset_eq(&expected, &got, tol);
    let enc = |v: &[FloatCoeff]| v.iter().map(json_scalar).collect::<Vec<_>>();
    Ok(Report::new(
        "eigen",
        ok,
        format!("spectrum of M(g,{level}) by Schur decomposition, tolerance {tol:e}"),
        json!({
            "L": level,
            "method": "schur",
            "tolerance": tol,
            "lambda": enc(&[l1, l2]),
            "expected": enc(&expected),
            "computed": enc(&got),
        }),
    ))
}

/// `det M(g, L) = Δ^{L(L+1)/2}` for every `L ≤ lmax`.
pub fn determinant_law_check<S: Scalar>(g: &Gl2<S>, lmax: u32, tol: f64) -> Report {
    let delta = g.det();
    let mut rows = Vec::new();
    let mut ok = true;
    for l in 0..=lmax {
        let expected = delta.pow(l * (l + 1) / 2);
        let got = rep_matrix(g, l).det();
        let pass = got.approx_eq(&expected, tol);
        ok &= pass;
        rows.push(json!({ "L": l, "det": json_scalar(&got), "expected": json_scalar(&expected), "pass": pass }));
    }
    Report::new(
        "determinant",
        ok,
        format!("det M(g,L) = Δ^(L(L+1)/2) for L ≤ {lmax}"),
        json!({ "levels": rows }),
    )
}

/// Series coefficients of the deformed generating function against the
/// operator construction, and against `F(g11 u + g12 u~, g21 u + g22 u~)`.
pub fn generating_function_check<S: Scalar>(g: &Gl2<S>, order: u32, tol: f64) -> Report {
    let series = deformed_generating_series(g, order);
    let mismatched: Vec<Value> = level_indices(order)
        .into_par_iter()
        .filter(|&(k, l)| !series.scaled_coeff(k, l).approx_eq(&deformed_hermite(g, k, l), tol))
        .map(|(k, l)| json!([k, l]))
        .collect();
    let composed = generating_series_complex::<S>(order).compose_linear(g.rows().clone());
    let composed_ok = level_indices(order)
        .iter()
        .all(|&(k, l)| composed.coeff(k, l).approx_eq(&series.coeff(k, l), tol));
    let ok = mismatched.is_empty() && composed_ok;
    Report::new(
        "genfun",
        ok,
        format!("deformed generating function to order {order}"),
        json!({ "order": order, "mismatched": mismatched, "composition_identity": composed_ok }),
    )
}

/// `E = exp(-∂_z ∂_z~)` as the terminating sum `Σ_j (-1)^j (∂_z ∂_z~)^j / j!`.
pub fn intertwiner<S: Scalar>(p: &BiPoly<S>) -> BiPoly<S> {
    let mut out = BiPoly::zero();
    let mut term = p.clone();
    let mut j: u32 = 0;
    while !term.is_zero() {
        let f = Rational::new(if j % 2 == 0 { 1.into() } else { (-1).into() }, factorial(j));
        out = &out + &term.scale(&S::from_rational(&f));
        term = term.diff(Var::Z, 1).diff(Var::Zbar, 1);
        j += 1;
    }
    out
}

/// Checks `E(z^m z~^n) = H_{m,n}` and, level by level,
/// `E M(g,L) = T(g,L) E` on every monomial `z^k z~^{L-k}`. The left side
/// uses the substitution model of `M`; the right side expands `E f_k` in
/// the Hermite basis and maps each basis vector to its deformed image.
pub fn intertwine_check<S: Scalar>(g: &Gl2<S>, lmax: u32, tol: f64) -> Report {
    let bad_basis: Vec<Value> = level_indices(lmax)
        .into_par_iter()
        .filter(|&(m, n)| {
            !intertwiner(&BiPoly::<S>::monomial(S::one(), m, n))
                .approx_eq(&complex_hermite_sum(m, n), tol)
        })
        .map(|(m, n)| json!([m, n]))
        .collect();
    let bad_levels: Vec<Value> = (0..=lmax)
        .into_par_iter()
        .filter_map(|l| {
            let m = rep_matrix(g, l);
            let failing: Vec<u32> = (0..=l)
                .filter(|&k| {
                    let f = BiPoly::<S>::monomial(S::one(), k, l - k);
                    let lhs = intertwiner(&substitute(g, &f));
                    let mut via_matrix = BiPoly::zero();
                    for r in 0..=l {
                        let fr = BiPoly::monomial(m.get(r as usize, k as usize).clone(), r, l - r);
                        via_matrix = &via_matrix + &intertwiner(&fr);
                    }
                    let ef = intertwiner(&f);
                    let mut rhs = BiPoly::zero();
                    for r in 0..=l {
                        let basis = complex_hermite_sum::<S>(r, l - r);
                        let c = inner_product(&basis, &ef)
                            .checked_div(&weight(r, l - r))
                            .expect("nonzero weight");
                        rhs = &rhs + &deformed_hermite(g, r, l - r).scale(&c);
                    }
                    !(lhs.approx_eq(&rhs, tol) && via_matrix.approx_eq(&rhs, tol))
                })
                .collect();
            (!failing.is_empty()).then(|| json!({ "L": l, "k": failing }))
        })
        .collect();
    let ok = bad_basis.is_empty() && bad_levels.is_empty();
    Report::new(
        "intertwine",
        ok,
        format!("E maps monomials to Hermite polynomials and intertwines M and T up to level {lmax}"),
        json!({ "Lmax": lmax, "basis_failures": bad_basis, "operator_failures": bad_levels }),
    )
}
