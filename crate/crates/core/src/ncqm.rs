//! The hermitian α-family and the noncommutative position/momentum
//! representation.

use serde_json::json;

use crate::deform::Gl2;
use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::report::Report;
use crate::scalar::{Coeff, Scalar};
use crate::weyl::{Branch, SqrtTwoScaled, WeylOp};

/// A real `α` with `0 < |α| < 1`, together with `√(1-α²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPoint<S = Coeff> {
    alpha: S,
    root: S,
}

impl<S: Scalar> AlphaPoint<S> {
    pub fn new(alpha: S) -> Result<Self> {
        if !alpha.imag_part().is_zero() {
            return Err(Error::Domain("alpha must be real".into()));
        }
        let a = alpha.to_c64().re;
        if alpha.is_zero() || a.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "alpha = {} violates 0 < |alpha| < 1",
                alpha.fmt_plain()
            )));
        }
        let one_minus = S::one() - alpha.clone() * alpha.clone();
        let root = one_minus.real_sqrt().ok_or_else(|| Error::Irrational {
            quantity: format!("sqrt(1 - alpha^2) at alpha = {}", alpha.fmt_plain()),
        })?;
        Ok(AlphaPoint { alpha, root })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(S::parse(s)?)
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    /// `√(1-α²)`.
    pub fn root(&self) -> &S {
        &self.root
    }

    /// `β = i√(1-α²)`.
    pub fn beta(&self) -> S {
        S::imag_unit() * self.root.clone()
    }

    /// `ϑ = 2α√(1-α²)`; negative for negative `α`.
    pub fn theta(&self) -> S {
        S::from_i64(2) * self.alpha.clone() * self.root.clone()
    }

    /// `Δ = α² - |β|² = 2α² - 1`.
    pub fn delta(&self) -> S {
        S::from_i64(2) * self.alpha.clone() * self.alpha.clone() - S::one()
    }

    /// `a1^α† = α a1† + conj(β) a2†`, `a2^α† = β a1† + α a2†`.
    pub fn creator(&self, mode: u8) -> WeylOp<S> {
        let (c1, c2) = match mode {
            1 => (self.alpha.clone(), self.beta().conj()),
            2 => (self.beta(), self.alpha.clone()),
            _ => panic!("mode must be 1 or 2"),
        };
        &WeylOp::creator(1).scale(&c1) + &WeylOp::creator(2).scale(&c2)
    }

    pub fn annihilator(&self, mode: u8) -> WeylOp<S> {
        self.creator(mode).adjoint()
    }

    pub fn to_float(&self) -> AlphaPoint<crate::scalar::FloatCoeff> {
        AlphaPoint {
            alpha: self.alpha.to_c64(),
            root: self.root.to_c64(),
        }
    }
}

impl AlphaPoint<crate::scalar::FloatCoeff> {
    /// `α = 1/√2`, where `ϑ = 1` and the matrix is singular.
    pub fn theta_one() -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        AlphaPoint {
            alpha: a.into(),
            root: a.into(),
        }
    }
}

/// `[[α, β], [conj(β), α]]`. Fails at `ϑ = 1`, where `Δ = 0`.
pub fn alpha_matrix<S: Scalar>(p: &AlphaPoint<S>) -> Result<Gl2<S>> {
    Gl2::new(p.alpha.clone(), p.beta(), p.beta().conj(), p.alpha.clone()).map_err(|e| match e {
        Error::Singular => Error::Domain("alpha^2 = 1/2 gives a singular matrix (theta = 1)".into()),
        other => other,
    })
}

fn scalar_json<S: Scalar>(x: &S) -> serde_json::Value {
    let (re, im) = x.to_json_parts();
    json!({ "re": re, "im": im })
}

struct Checks<S: Scalar> {
    rows: Vec<serde_json::Value>,
    ok: bool,
    tol: f64,
    _s: std::marker::PhantomData<S>,
}

impl<S: Scalar> Checks<S> {
    fn new(tol: f64) -> Self {
        Checks {
            rows: Vec::new(),
            ok: true,
            tol,
            _s: std::marker::PhantomData,
        }
    }

    /// Records whether `op` equals `expected · 1`.
    fn scalar(&mut self, name: &str, op: &WeylOp<S>, expected: &S) {
        let pass = op.approx_eq(&WeylOp::scalar(expected.clone()), self.tol);
        self.ok &= pass;
        let got = match op.as_scalar() {
            Some(c) => scalar_json(&c),
            None => json!(op.to_string()),
        };
        self.rows.push(json!({
            "relation": name,
            "expected": scalar_json(expected),
            "got": got,
            "pass": pass,
        }));
    }
}

/// `[a_j^α, a_k^α†] = δ_jk + ε_jk iϑ`, `[a_i^α, a_j^α] = 0`,
/// `[a_i^α†, a_j^α†] = 0`, plus the vacuum and the rejected reading of the
/// first annihilator (reported, not part of the verdict).
pub fn ncqm_commutator_suite<S: Scalar>(p: &AlphaPoint<S>, tol: f64) -> Report {
    let i_theta = S::imag_unit() * p.theta();
    let mut checks = Checks::<S>::new(tol);
    for j in 1..=2u8 {
        for k in 1..=2u8 {
            let expected = match (j, k) {
                (1, 2) => i_theta.clone(),
                (2, 1) => -i_theta.clone(),
                _ => S::one(),
            };
            let c = p.annihilator(j).commutator(&p.creator(k));
            checks.scalar(&format!("[a{j}^alpha, a{k}^alpha+]"), &c, &expected);
            let c = p.annihilator(j).commutator(&p.annihilator(k));
            checks.scalar(&format!("[a{j}^alpha, a{k}^alpha]"), &c, &S::zero());
            let c = p.creator(j).commutator(&p.creator(k));
            checks.scalar(&format!("[a{j}^alpha+, a{k}^alpha+]"), &c, &S::zero());
        }
    }
    let extracted = p
        .annihilator(1)
        .commutator(&p.creator(2))
        .as_scalar()
        .and_then(|c| c.checked_div(&S::imag_unit()));
    let theta_consistent = extracted
        .as_ref()
        .is_some_and(|t| t.approx_eq(&p.theta(), tol));
    let vacuum = (1..=2u8).all(|i| p.annihilator(i).apply(&BiPoly::one()).is_zero());
    checks.ok &= theta_consistent && vacuum;

    let literal = &WeylOp::annihilator(1).scale(&p.alpha.conj()) + &WeylOp::creator(2).scale(&p.beta());
    let literal_ccr = literal
        .commutator(&p.creator(1))
        .approx_eq(&WeylOp::identity(), tol);
    let literal_vacuum = literal.apply(&BiPoly::one()).is_zero();

    Report::new(
        "ncqm",
        checks.ok,
        format!(
            "deformed boson relations at alpha = {}, theta = {}",
            p.alpha.fmt_plain(),
            p.theta().fmt_plain()
        ),
        json!({
            "alpha": scalar_json(&p.alpha),
            "beta": scalar_json(&p.beta()),
            "theta": scalar_json(&p.theta()),
            "relations": checks.rows,
            "theta_from_commutator": extracted.as_ref().map(scalar_json),
            "vacuum_annihilated": vacuum,
            "literal_first_annihilator": {
                "ccr_holds": literal_ccr,
                "annihilates_vacuum": literal_vacuum,
            },
        }),
    )
}

/// `Q_1, Q_2, P_1, P_2` as multiples of `1/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QpOperators<S: Scalar> {
    pub q: [SqrtTwoScaled<S>; 2],
    pub p: [SqrtTwoScaled<S>; 2],
}

/// `c = (1 ± √κ)/2`, `d = (1 ∓ √κ)/ϑ` with `κ = 1 - γϑ`.
pub fn qp_coefficients<S: Scalar>(theta: &S, gamma: &S, branch: Branch) -> Result<(S, S)> {
    if theta.is_zero() {
        return Err(Error::Domain("theta must be nonzero".into()));
    }
    let kappa = S::one() - gamma.clone() * theta.clone();
    if kappa.is_zero() {
        return Err(Error::Domain("gamma = 1/theta makes kappa vanish".into()));
    }
    if !kappa.imag_part().is_zero() || kappa.to_c64().re < 0.0 {
        return Err(Error::Domain(format!(
            "kappa = 1 - gamma*theta = {} must be positive",
            kappa.fmt_plain()
        )));
    }
    let root = kappa.real_sqrt().ok_or_else(|| Error::Irrational {
        quantity: format!("sqrt(kappa) with kappa = {}", kappa.fmt_plain()),
    })?;
    let signed = match branch {
        Branch::Plus => root,
        Branch::Minus => -root,
    };
    let half = S::one().checked_div(&S::from_i64(2)).expect("2 is invertible");
    let c = (S::one() + signed.clone()) * half;
    let d = (S::one() - signed)
        .checked_div(theta)
        .expect("theta is nonzero");
    Ok((c, d))
}

fn q_hat<S: Scalar>(i: u8) -> SqrtTwoScaled<S> {
    SqrtTwoScaled::new(&WeylOp::annihilator(i) + &WeylOp::creator(i), 1)
}

fn p_hat<S: Scalar>(i: u8) -> SqrtTwoScaled<S> {
    let diff = &WeylOp::creator(i) - &WeylOp::annihilator(i);
    SqrtTwoScaled::new(diff.scale(&S::imag_unit()), 1)
}

/// Canonical `q̂_i, p̂_i` in terms of the two bosons.
pub fn canonical_qp<S: Scalar>() -> QpOperators<S> {
    QpOperators {
        q: [q_hat(1), q_hat(2)],
        p: [p_hat(1), p_hat(2)],
    }
}

/// `Q1 = q1 - (ϑ/2) p2`, `Q2 = q2 + (ϑ/2) p1`, `P1 = c p1 + d q2`,
/// `P2 = c p2 - d q1`.
pub fn qp_operators<S: Scalar>(theta: &S, gamma: &S, branch: Branch) -> Result<QpOperators<S>> {
    let (c, d) = qp_coefficients(theta, gamma, branch)?;
    let half_theta = theta.checked_div(&S::from_i64(2)).expect("2 is invertible");
    let QpOperators { q: [q1, q2], p: [p1, p2] } = canonical_qp::<S>();
    Ok(QpOperators {
        q: [
            q1.add(&p2.scale(&-half_theta.clone())),
            q2.add(&p1.scale(&half_theta)),
        ],
        p: [p1.scale(&c).add(&q2.scale(&d)), p2.scale(&c).add(&q1.scale(&-d))],
    })
}

/// `A_i = (Q_i + iP_i)/√2` and `A_i† = (Q_i - iP_i)/√2`, returned as
/// `[A1, A2, A1†, A2†]`. The two factors of `1/√2` cancel exactly.
pub fn modified_bosons<S: Scalar>(qp: &QpOperators<S>) -> [WeylOp<S>; 4] {
    let i = S::imag_unit();
    let build = |k: usize, sign: S| {
        let x = qp.q[k].add(&qp.p[k].scale(&(i.clone() * sign)));
        SqrtTwoScaled::new(x.op, x.inv_sqrt2_power + 1)
            .resolve()
            .expect("even power of 1/sqrt2")
    };
    [
        build(0, S::one()),
        build(1, S::one()),
        build(0, -S::one()),
        build(1, -S::one()),
    ]
}

/// Exact check of `[Q_i, P_j] = iδ_ij`, `[Q1, Q2] = iϑ`, `[P1, P2] = iγ`
/// for both sign branches, plus the modified boson relations when `ϑ = γ`.
pub fn qp_representation_suite<S: Scalar>(theta: &S, gamma: &S, tol: f64) -> Result<Report> {
    let i = S::imag_unit();
    let mut branches = Vec::new();
    let mut ok = true;
    for branch in [Branch::Plus, Branch::Minus] {
        let qp = qp_operators(theta, gamma, branch)?;
        let mut checks = Checks::<S>::new(tol);
        let resolve = |x: SqrtTwoScaled<S>| x.resolve().expect("commutators carry 1/2");
        for a in 0..2 {
            for b in 0..2 {
                let expected = if a == b { i.clone() } else { S::zero() };
                let c = resolve(qp.q[a].commutator(&qp.p[b]));
                checks.scalar(&format!("[Q{}, P{}]", a + 1, b + 1), &c, &expected);
            }
        }
        let qq = resolve(qp.q[0].commutator(&qp.q[1]));
        checks.scalar("[Q1, Q2]", &qq, &(i.clone() * theta.clone()));
        let pp = resolve(qp.p[0].commutator(&qp.p[1]));
        checks.scalar("[P1, P2]", &pp, &(i.clone() * gamma.clone()));
        if theta.approx_eq(gamma, tol) {
            let [a1, a2, a1d, a2d] = modified_bosons(&qp);
            checks.scalar("[A1, A1+]", &a1.commutator(&a1d), &S::one());
            checks.scalar("[A2, A2+]", &a2.commutator(&a2d), &S::one());
            checks.scalar("[A1, A2]", &a1.commutator(&a2), &S::zero());
            checks.scalar("[A1+, A2+]", &a1d.commutator(&a2d), &S::zero());
            checks.scalar("[A1, A2+]", &a1.commutator(&a2d), &(i.clone() * theta.clone()));
        }
        let (c, d) = qp_coefficients(theta, gamma, branch)?;
        ok &= checks.ok;
        branches.push(json!({
            "branch": branch.to_string(),
            "c": scalar_json(&c),
            "d": scalar_json(&d),
            "relations": checks.rows,
        }));
    }
    Ok(Report::new(
        "qp",
        ok,
        format!(
            "noncommutative position/momentum relations at theta = {}, gamma = {}",
            theta.fmt_plain(),
            gamma.fmt_plain()
        ),
        json!({
            "theta": scalar_json(theta),
            "gamma": scalar_json(gamma),
            "branches": branches,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{coeff_ri, rat, FloatCoeff};

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::from_rational(&rat(n, d))
    }

    #[test]
    fn alpha_points() {
        let p = AlphaPoint::new(q(3, 5)).unwrap();
        assert_eq!(p.beta(), coeff_ri((0, 1), (4, 5)));
        assert_eq!(p.theta(), q(24, 25));
        assert_eq!(p.delta(), q(-7, 25));
        let p = AlphaPoint::new(q(5, 13)).unwrap();
        assert_eq!(p.beta(), coeff_ri((0, 1), (12, 13)));
        assert_eq!(p.theta(), q(120, 169));
        let g = alpha_matrix(&AlphaPoint::new(q(3, 5)).unwrap()).unwrap();
        assert_eq!(g.entry(1, 0), &coeff_ri((0, 1), (-4, 5)));
    }

    #[test]
    fn alpha_domain() {
        assert!(matches!(AlphaPoint::new(q(1, 2)), Err(Error::Irrational { .. })));
        assert!(matches!(AlphaPoint::new(q(1, 1)), Err(Error::Domain(_))));
        assert!(matches!(AlphaPoint::new(q(0, 1)), Err(Error::Domain(_))));
        assert!(matches!(AlphaPoint::<Coeff>::parse("0.6"), Err(Error::Parse { .. })));
        let neg = AlphaPoint::new(q(-3, 5)).unwrap();
        assert_eq!(neg.theta(), q(-24, 25));
        let f = AlphaPoint::new(FloatCoeff::new(0.5, 0.0)).unwrap();
        assert!((f.theta().re - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let one = AlphaPoint::theta_one();
        assert!((one.theta().re - 1.0).abs() < 1e-15);
        assert!(alpha_matrix(&one).is_err());
    }

    #[test]
    fn commutators_at_three_fifths() {
        let p = AlphaPoint::new(q(3, 5)).unwrap();
        let c = p.annihilator(1).commutator(&p.creator(2));
        assert_eq!(c.as_scalar(), Some(coeff_ri((0, 1), (24, 25))));
        let r = ncqm_commutator_suite(&p, 0.0);
        assert!(r.passed(), "{}", r.payload);
        assert_eq!(r.payload["literal_first_annihilator"]["ccr_holds"], false);
        assert_eq!(r.payload["literal_first_annihilator"]["annihilates_vacuum"], false);
    }

    #[test]
    fn qp_examples() {
        let (theta, gamma) = (q(3, 5), q(16, 15));
        for branch in [Branch::Plus, Branch::Minus] {
            let qp = qp_operators(&theta, &gamma, branch).unwrap();
            let pp = qp.p[0].commutator(&qp.p[1]).resolve().unwrap();
            assert_eq!(pp.as_scalar(), Some(coeff_ri((0, 1), (16, 15))));
            let qp11 = qp.q[0].commutator(&qp.p[0]).resolve().unwrap();
            assert_eq!(qp11.as_scalar(), Some(Coeff::imag_unit()));
        }
        assert!(qp_representation_suite(&theta, &gamma, 0.0).unwrap().passed());
        let r = qp_representation_suite(&theta, &theta, 0.0).unwrap();
        assert!(r.passed(), "{}", r.payload);
    }

    #[test]
    fn qp_domain() {
        assert!(matches!(
            qp_representation_suite(&q(1, 2), &q(2, 1), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            qp_representation_suite(&q(1, 2), &q(1, 1), 0.0),
            Err(Error::Irrational { .. })
        ));
        assert!(qp_representation_suite(&FloatCoeff::new(0.5, 0.0), &FloatCoeff::new(1.0, 0.0), 1e-12)
            .unwrap()
            .passed());
    }
}
