//! Formal power series in `(u, u~)` truncated at a total order, with
//! polynomial coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinat::factorial;
use crate::poly::BiPoly;
use crate::real_poly::RealPoly;
use crate::scalar::{Rational, Scalar};

/// Coefficient ring of a [`SeriesTruncation`].
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_rational(&self, r: &Rational) -> Self;
}

impl<S: Scalar> SeriesCoeff for BiPoly<S> {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&S::from_rational(r))
    }
}

impl SeriesCoeff for RealPoly {
    fn zero() -> Self {
        RealPoly::zero()
    }
    fn one() -> Self {
        RealPoly::one()
    }
    fn is_zero(&self) -> bool {
        RealPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

/// `Σ_{k+l ≤ order} c_{k,l} u^k u~^l`. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTruncation<C> {
    order: u32,
    coeffs: BTreeMap<(u32, u32), C>,
}

impl<C: SeriesCoeff> SeriesTruncation<C> {
    pub fn zero(order: u32) -> Self {
        SeriesTruncation {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, order: u32) -> Self {
        Self::monomial(c, 0, 0, order)
    }

    pub fn monomial(c: C, k: u32, l: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(k, l, c);
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn add_term(&mut self, k: u32, l: u32, c: C) {
        if k + l > self.order || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&(k, l)) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert((k, l), sum);
        }
    }

    /// Coefficient of `u^k u~^l`.
    pub fn coeff(&self, k: u32, l: u32) -> C {
        self.coeffs.get(&(k, l)).cloned().unwrap_or_else(C::zero)
    }

    /// `k! l!` times the coefficient of `u^k u~^l`.
    pub fn scaled_coeff(&self, k: u32, l: u32) -> C {
        let f = Rational::from_integer(factorial(k) * factorial(l));
        self.coeff(k, l).scale_rational(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &C)> + '_ {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.order.min(other.order));
        for (&(k, l), c) in &other.coeffs {
            out.add_term(k, l, c.clone());
        }
        out
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (&(k1, l1), a) in &self.coeffs {
            for (&(k2, l2), b) in &other.coeffs {
                if k1 + k2 + l1 + l2 <= order {
                    out.add_term(k1 + k2, l1 + l2, a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (&(k, l), c) in &self.coeffs {
            out.add_term(k, l, c.scale_rational(r));
        }
        out
    }

    pub fn truncate(&self, order: u32) -> Self {
        let mut out = Self::zero(order);
        for (&(k, l), c) in &self.coeffs {
            out.add_term(k, l, c.clone());
        }
        out
    }

    pub fn has_constant_term(&self) -> bool {
        self.coeffs.contains_key(&(0, 0))
    }

    /// `exp(self)` for a series without constant term, via the Taylor sum
    /// `Σ_{j ≤ order} self^j / j!` (higher powers vanish at this order).
    pub fn exp(&self) -> Option<Self> {
        if self.has_constant_term() {
            return None;
        }
        let mut acc = Self::constant(C::one(), self.order);
        let mut power = acc.clone();
        for j in 1..=self.order {
            power = power.mul(self);
            if power.coeffs.is_empty() {
                break;
            }
            let inv_fact = Rational::new(BigInt::one(), factorial(j));
            acc = acc.add(&power.scale_rational(&inv_fact));
        }
        Some(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> SeriesTruncation<BiPoly<S>> {
    /// Linear form `a u + b u~` with constant polynomial coefficients.
    pub fn linear(a: &S, b: &S, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(1, 0, BiPoly::constant(a.clone()));
        s.add_term(0, 1, BiPoly::constant(b.clone()));
        s
    }

    /// `F(m11 u + m12 u~, m21 u + m22 u~)`, truncated at the same order.
    pub fn compose_linear(&self, m: [[S; 2]; 2]) -> Self {
        let [[m11, m12], [m21, m22]] = m;
        let first = Self::linear(&m11, &m12, self.order);
        let second = Self::linear(&m21, &m22, self.order);
        let powers = |base: &Self| {
            let mut out = vec![Self::constant(BiPoly::one(), self.order)];
            for _ in 0..self.order {
                let next = out.last().unwrap().mul(base);
                out.push(next);
            }
            out
        };
        let p1 = powers(&first);
        let p2 = powers(&second);
        let mut acc = Self::zero(self.order);
        for (&(k, l), c) in &self.coeffs {
            let term = p1[k as usize]
                .mul(&p2[l as usize])
                .mul(&Self::constant(c.clone(), self.order));
            acc = acc.add(&term);
        }
        acc
    }
}

impl<C: SeriesCoeff> SeriesTruncation<C> {
    /// Coefficient count, mostly for diagnostics.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Coeff;

    type P = BiPoly<Coeff>;

    fn one_var_series(order: u32) -> SeriesTruncation<P> {
        SeriesTruncation::monomial(P::one(), 1, 0, order)
    }

    #[test]
    fn exp_of_u_is_taylor() {
        let e = one_var_series(5).exp().unwrap();
        for k in 0..=5u32 {
            assert_eq!(
                e.coeff(k, 0),
                P::constant(Coeff::from_rational(&Rational::new(
                    BigInt::one(),
                    factorial(k)
                )))
            );
        }
        assert!(e.coeff(0, 1).is_zero());
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = SeriesTruncation::constant(P::one(), 3);
        assert!(s.exp().is_none());
    }

    #[test]
    fn truncation_consistent_under_product() {
        let a = SeriesTruncation::linear(&Coeff::from_i64(2), &Coeff::from_i64(-1), 6)
            .add(&SeriesTruncation::monomial(P::z(), 1, 1, 6));
        let b = a.exp().unwrap();
        let full = a.mul(&b);
        let low = a.truncate(3).mul(&b.truncate(3));
        assert_eq!(full.truncate(3), low);
    }

    #[test]
    fn exp_addition_law() {
        let a = SeriesTruncation::linear(&Coeff::from_i64(1), &Coeff::from_i64(0), 5);
        let b = SeriesTruncation::monomial(P::zbar(), 0, 1, 5);
        let lhs = a.add(&b).exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_identity() {
        let s = SeriesTruncation::monomial(P::z(), 2, 1, 4).add(&one_var_series(4));
        let id = [
            [<Coeff as Scalar>::one(), <Coeff as Scalar>::zero()],
            [<Coeff as Scalar>::zero(), <Coeff as Scalar>::one()],
        ];
        assert_eq!(s.compose_linear(id), s);
        let swap = [
            [<Coeff as Scalar>::zero(), <Coeff as Scalar>::one()],
            [<Coeff as Scalar>::one(), <Coeff as Scalar>::zero()],
        ];
        let swapped = s.compose_linear(swap);
        assert_eq!(swapped.coeff(1, 2), P::z());
        assert_eq!(swapped.coeff(0, 1), P::one());
    }
}
