//! Deformation of the complex Hermite family by `g ∈ GL(2, C)`.
//!
//! The deformed creators are `a1^g† = g11 a1† + g21 a2†` and
//! `a2^g† = g12 a1† + g22 a2†`; the annihilators are their formal adjoints
//! `a1^g = conj(g11) a1 + conj(g21) a2`, `a2^g = conj(g12) a1 + conj(g22) a2`.

mod checks;
mod repmat;

pub use checks::{
    biorthogonality_check, determinant_law_check, dual_family, dual_matrix_scaling_check,
    eigenvalue_structure_check, generating_function_check, intertwine_check, intertwiner,
    DualFamily,
};
pub use repmat::{rep_action_check, rep_matrix, RepMatrix};

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::scalar::{Coeff, FloatCoeff, Scalar};
use crate::series::SeriesTruncation;
use crate::weyl::WeylOp;

/// Invertible 2×2 complex matrix `[[g11, g12], [g21, g22]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2<S = Coeff> {
    m: [[S; 2]; 2],
}

impl<S: Scalar> Gl2<S> {
    /// Rejects singular input. In the float backend "singular" means a
    /// determinant below `1e-14` relative to the entry scale.
    pub fn new(g11: S, g12: S, g21: S, g22: S) -> Result<Self> {
        let g = Gl2 {
            m: [[g11, g12], [g21, g22]],
        };
        let scale = g.max_magnitude().max(1.0);
        let det = g.det();
        if det.is_zero() || (!S::EXACT && det.magnitude() <= 1e-14 * scale * scale) {
            return Err(Error::Singular);
        }
        Ok(g)
    }

    pub fn from_rows(m: [[S; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = m;
        Self::new(a, b, c, d)
    }

    /// Parse four entries `g11 g12 g21 g22` in the backend's syntax.
    pub fn parse(entries: &[&str]) -> Result<Self> {
        if entries.len() != 4 {
            return Err(Error::Dimension(format!(
                "a 2x2 matrix needs 4 entries, got {}",
                entries.len()
            )));
        }
        let v: Vec<S> = entries.iter().map(|s| S::parse(s)).collect::<Result<_>>()?;
        let mut it = v.into_iter();
        let mut next = || it.next().expect("four entries");
        Self::new(next(), next(), next(), next())
    }

    pub fn identity() -> Self {
        Self::diag(S::one(), S::one()).expect("identity is invertible")
    }

    pub fn diag(l1: S, l2: S) -> Result<Self> {
        Self::new(l1, S::zero(), S::zero(), l2)
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[[S; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> S {
        let [[a, b], [c, d]] = &self.m;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn trace(&self) -> S {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    /// `[[g22, -g12], [-g21, g11]]`, so that `adjugate · g = det · I`.
    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = self.m.clone();
        Gl2 {
            m: [[d, -b], [-c, a]],
        }
    }

    pub fn inverse(&self) -> Self {
        let inv_det = self.det().inv().expect("invertible by construction");
        let adj = self.adjugate();
        Gl2 {
            m: adj.m.map(|row| row.map(|x| x * inv_det.clone())),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Gl2 {
            m: [[a.conj(), c.conj()], [b.conj(), d.conj()]],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.m[i][0].clone() * other.m[0][j].clone() + self.m[i][1].clone() * other.m[1][j].clone()
        };
        Gl2 {
            m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.m[0][1].is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.m[1][0].is_zero()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Gl2<T> {
        Gl2 {
            m: [
                [f(&self.m[0][0]), f(&self.m[0][1])],
                [f(&self.m[1][0]), f(&self.m[1][1])],
            ],
        }
    }

    pub fn to_float(&self) -> Gl2<FloatCoeff> {
        self.map(Scalar::to_c64)
    }

    pub fn to_json(&self) -> Value {
        let cell = |x: &S| {
            let (re, im) = x.to_json_parts();
            json!({ "re": re, "im": im })
        };
        json!(self
            .m
            .iter()
            .map(|row| row.iter().map(cell).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

impl<S: Scalar> fmt::Display for Gl2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            a.fmt_plain(),
            b.fmt_plain(),
            c.fmt_plain(),
            d.fmt_plain()
        )
    }
}

/// `a_i^g†` for mode `i ∈ {1, 2}`.
pub fn deformed_creator<S: Scalar>(g: &Gl2<S>, mode: u8) -> WeylOp<S> {
    let col = match mode {
        1 => 0,
        2 => 1,
        _ => panic!("mode must be 1 or 2"),
    };
    &WeylOp::creator(1).scale(g.entry(0, col)) + &WeylOp::creator(2).scale(g.entry(1, col))
}

/// `a_i^g`, the formal adjoint of [`deformed_creator`].
pub fn deformed_annihilator<S: Scalar>(g: &Gl2<S>, mode: u8) -> WeylOp<S> {
    deformed_creator(g, mode).adjoint()
}

/// The alternative reading `a1^g = conj(g11) a1 + conj(g21) a2†`, kept so
/// tests can show it breaks the canonical relations and the vacuum.
pub fn literal_first_annihilator<S: Scalar>(g: &Gl2<S>) -> WeylOp<S> {
    &WeylOp::annihilator(1).scale(&g.entry(0, 0).conj())
        + &WeylOp::creator(2).scale(&g.entry(1, 0).conj())
}

/// Scaled deformed polynomial `H^g_{k,l} = (a1^g†)^k (a2^g†)^l · 1`.
pub fn deformed_hermite<S: Scalar>(g: &Gl2<S>, k: u32, l: u32) -> BiPoly<S> {
    let c1 = deformed_creator(g, 1);
    let c2 = deformed_creator(g, 2);
    let mut p = BiPoly::one();
    for _ in 0..l {
        p = c2.apply(&p);
    }
    for _ in 0..k {
        p = c1.apply(&p);
    }
    p
}

/// Truncation of
/// `exp((g11 u + g12 u~) z + (g21 u + g22 u~) z~ - (g11 u + g12 u~)(g21 u + g22 u~))`.
pub fn deformed_generating_series<S: Scalar>(g: &Gl2<S>, order: u32) -> SeriesTruncation<BiPoly<S>> {
    let [[g11, g12], [g21, g22]] = g.rows();
    let first = SeriesTruncation::linear(g11, g12, order);
    let second = SeriesTruncation::linear(g21, g22, order);
    let z = SeriesTruncation::constant(BiPoly::z(), order);
    let zbar = SeriesTruncation::constant(BiPoly::zbar(), order);
    let minus = SeriesTruncation::constant(BiPoly::constant(-S::one()), order);
    let arg = first
        .mul(&z)
        .add(&second.mul(&zbar))
        .add(&first.mul(&second).mul(&minus));
    arg.exp().expect("argument has no constant term")
}

/// Linear substitution `z -> g11 z + g21 z~`, `z~ -> g12 z + g22 z~`, the
/// polynomial model of the action on `s^k t^l`.
pub fn substitute<S: Scalar>(g: &Gl2<S>, p: &BiPoly<S>) -> BiPoly<S> {
    let [[g11, g12], [g21, g22]] = g.rows();
    let zs = &BiPoly::z().scale(g11) + &BiPoly::zbar().scale(g21);
    let zbs = &BiPoly::z().scale(g12) + &BiPoly::zbar().scale(g22);
    let mut out = BiPoly::zero();
    for (m, c) in p.terms() {
        out = &out + &(&zs.pow(m.z) * &zbs.pow(m.zbar)).scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{complex_hermite_sum, generating_series_complex, level_indices};
    use crate::scalar::{coeff_ri, Rational};

    type P = BiPoly<Coeff>;

    fn c(n: i64) -> Coeff {
        Coeff::from_i64(n)
    }

    fn alpha_35() -> Gl2<Coeff> {
        Gl2::new(
            coeff_ri((3, 5), (0, 1)),
            coeff_ri((0, 1), (4, 5)),
            coeff_ri((0, 1), (-4, 5)),
            coeff_ri((3, 5), (0, 1)),
        )
        .unwrap()
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(Gl2::new(c(1), c(2), c(2), c(4)), Err(Error::Singular));
        assert!(Gl2::<Coeff>::parse(&["1", "2", "3"]).is_err());
    }

    #[test]
    fn inverse_and_adjoint() {
        let g = alpha_35();
        assert_eq!(g.det(), coeff_ri((-7, 25), (0, 1)));
        assert_eq!(g.mul(&g.inverse()), Gl2::identity());
        assert_eq!(g.adjoint(), g);
        assert_eq!(g.adjugate().mul(&g), Gl2::diag(g.det(), g.det()).unwrap());
    }

    #[test]
    fn identity_and_diagonal() {
        let id = Gl2::<Coeff>::identity();
        let d = Gl2::diag(c(2), c(3)).unwrap();
        for (k, l) in level_indices(4) {
            let h = complex_hermite_sum::<Coeff>(k, l);
            assert_eq!(deformed_hermite(&id, k, l), h);
            let scale = c(2).pow(k) * c(3).pow(l);
            assert_eq!(deformed_hermite(&d, k, l), h.scale(&scale));
        }
    }

    #[test]
    fn alpha_first_order() {
        let g = alpha_35();
        let expected = &P::z().scale(&coeff_ri((3, 5), (0, 1))) + &P::zbar().scale(&coeff_ri((0, 1), (-4, 5)));
        assert_eq!(deformed_hermite(&g, 1, 0), expected);
        assert_eq!(expected.to_string(), "3/5 z - 4/5i z~");
        let s = deformed_generating_series(&g, 2);
        assert_eq!(s.coeff(1, 0), expected);
    }

    #[test]
    fn generating_series_matches_polynomials() {
        let g = alpha_35();
        let s = deformed_generating_series(&g, 5);
        for (k, l) in level_indices(5) {
            assert_eq!(s.scaled_coeff(k, l), deformed_hermite(&g, k, l), "({k},{l})");
        }
        let composed = generating_series_complex::<Coeff>(5).compose_linear(g.rows().clone());
        assert_eq!(composed, s);
    }

    #[test]
    fn vacuum_and_ccr_of_annihilator_reading() {
        let g = alpha_35();
        for i in 1..=2u8 {
            assert!(deformed_annihilator(&g, i).apply(&P::one()).is_zero());
        }
        let lit = literal_first_annihilator(&g);
        assert!(!lit.apply(&P::one()).is_zero());
        let ccr = lit.commutator(&deformed_creator(&g, 1)).as_scalar();
        assert_ne!(ccr, Some(c(1)));
        let good = deformed_annihilator(&g, 1).commutator(&deformed_creator(&g, 1));
        assert_eq!(good.as_scalar(), Some(c(1)));
    }

    #[test]
    fn substitution_on_level_one() {
        let g = Gl2::new(c(1), c(2), c(3), c(4)).unwrap();
        assert_eq!(substitute(&g, &P::z()), &P::z() + &P::zbar().scale(&c(3)));
        let half = Coeff::from_rational(&Rational::new(1.into(), 2.into()));
        assert_eq!(substitute(&Gl2::identity(), &P::monomial(half.clone(), 2, 1)), P::monomial(half, 2, 1));
    }
}
