//! Real and complex Hermite polynomials.
//!
//! Complex polynomials are kept in scaled form `H_{m,n} = √(m!n!)·h_{m,n}`,
//! which has integer coefficients. The normalized `h_{m,n}` exists only as
//! the pair `(H_{m,n}, m!n!)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combinat::{binomial, factorial};
use crate::poly::{inner_product, BiPoly, Monomial, Var};
use crate::real_poly::{real_inner_product, RealPoly, RealVar};
use crate::report::Report;
use crate::scalar::{Coeff, Rational, Scalar};
use crate::series::SeriesTruncation;
use crate::weyl::{WeylOp, Word};

/// `scaled / √norm_sq`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct NormalizedPoly<S: Scalar = Coeff> {
    pub scaled: BiPoly<S>,
    #[serde(with = "bigint_string")]
    pub norm_sq: BigInt,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Explicit sum `Σ_j (-1)^j j! C(m,j) C(n,j) z^{m-j} z~^{n-j}`.
pub fn complex_hermite_sum<S: Scalar>(m: u32, n: u32) -> BiPoly<S> {
    BiPoly::from_terms((0..=m.min(n)).map(|j| {
        let mag = factorial(j) * binomial(m, j) * binomial(n, j);
        let c = if j % 2 == 0 { mag } else { -mag };
        (Monomial::new(m - j, n - j), S::from_bigint(&c))
    }))
}

/// Rodrigues route: differentiate `P·e^{-z z~}` symbolically, then flip the
/// sign and exchange the variables so the result agrees with the explicit sum.
pub fn complex_hermite_rodrigues<S: Scalar>(m: u32, n: u32) -> BiPoly<S> {
    let mut p = BiPoly::<S>::one();
    for _ in 0..n {
        p = &p.diff(Var::Zbar, 1) - &p.mul_monomial(1, 0);
    }
    for _ in 0..m {
        p = &p.diff(Var::Z, 1) - &p.mul_monomial(0, 1);
    }
    if (m + n) % 2 == 1 {
        p = -p;
    }
    p.swap_vars()
}

/// `(a1†)^m (a2†)^n · 1` through the polynomial representation.
pub fn complex_hermite_operator<S: Scalar>(m: u32, n: u32) -> BiPoly<S> {
    WeylOp::word(S::one(), Word::new(m, n, 0, 0)).apply(&BiPoly::one())
}

pub fn complex_hermite_normalized<S: Scalar>(m: u32, n: u32) -> NormalizedPoly<S> {
    NormalizedPoly {
        scaled: complex_hermite_sum(m, n),
        norm_sq: factorial(m) * factorial(n),
    }
}

fn var_power(c: Rational, var: RealVar, e: u32) -> RealPoly {
    match var {
        RealVar::X1 => RealPoly::monomial(c, e, 0),
        RealVar::X2 => RealPoly::monomial(c, 0, e),
    }
}

/// Physicists' Hermite polynomial `H_n` in the variable `var`.
pub fn real_hermite_in(n: u32, var: RealVar) -> RealPoly {
    let x = var_power(Rational::from_integer(1.into()), var, 1);
    let two = Rational::from_integer(2.into());
    let mut prev = RealPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.scale(&two);
    for k in 1..n {
        let next = &(&x * &cur).scale(&two) - &prev.scale(&Rational::from_integer((2 * k).into()));
        prev = cur;
        cur = next;
    }
    cur
}

pub fn real_hermite(n: u32) -> RealPoly {
    real_hermite_in(n, RealVar::X1)
}

/// Truncation of `exp(u z + u~ z~ - u u~)` at total order `order`.
pub fn generating_series_complex<S: Scalar>(order: u32) -> SeriesTruncation<BiPoly<S>> {
    let arg = SeriesTruncation::monomial(BiPoly::z(), 1, 0, order)
        .add(&SeriesTruncation::monomial(BiPoly::zbar(), 0, 1, order))
        .add(&SeriesTruncation::monomial(BiPoly::constant(-S::one()), 1, 1, order));
    arg.exp().expect("argument has no constant term")
}

/// Truncation of `exp(2u x1 - u² + 2u~ x2 - u~²)`, whose `u^k u~^l/(k! l!)`
/// coefficient is `H_k(x1) H_l(x2)`.
pub fn generating_series_real(order: u32) -> SeriesTruncation<RealPoly> {
    let two = Rational::from_integer(2.into());
    let minus_one = RealPoly::constant(Rational::from_integer((-1).into()));
    let x1 = var_power(two.clone(), RealVar::X1, 1);
    let x2 = var_power(two, RealVar::X2, 1);
    let arg = SeriesTruncation::monomial(x1, 1, 0, order)
        .add(&SeriesTruncation::monomial(minus_one.clone(), 2, 0, order))
        .add(&SeriesTruncation::monomial(x2, 0, 1, order))
        .add(&SeriesTruncation::monomial(minus_one, 0, 2, order));
    arg.exp().expect("argument has no constant term")
}

/// All `H_{m,n}` with `m + n ≤ max_level`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteTable<S: Scalar = Coeff> {
    max_level: u32,
    entries: BTreeMap<(u32, u32), BiPoly<S>>,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct TableEntry<'a, S: Scalar> {
    m: u32,
    n: u32,
    norm_sq: String,
    poly: &'a BiPoly<S>,
}

impl<S: Scalar> HermiteTable<S> {
    pub fn build(max_level: u32) -> Self {
        let entries = level_indices(max_level)
            .into_par_iter()
            .map(|(m, n)| ((m, n), complex_hermite_sum(m, n)))
            .collect();
        HermiteTable { max_level, entries }
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn get(&self, m: u32, n: u32) -> Option<&BiPoly<S>> {
        self.entries.get(&(m, n))
    }

    /// `m! n!`, the squared norm of `H_{m,n}`.
    pub fn norm_sq(m: u32, n: u32) -> BigInt {
        factorial(m) * factorial(n)
    }

    /// Entries ordered by `(m + n, m)`.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &BiPoly<S>)> + '_ {
        level_indices(self.max_level)
            .into_iter()
            .map(move |k| (k, &self.entries[&k]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<TableEntry<'_, S>> = self
            .iter()
            .map(|((m, n), poly)| TableEntry {
                m,
                n,
                norm_sq: Self::norm_sq(m, n).to_string(),
                poly,
            })
            .collect();
        serde_json::to_value(rows).expect("table serializes")
    }
}

/// `(m, n)` with `m + n ≤ max_level`, ordered by `(m + n, m)`.
pub fn level_indices(max_level: u32) -> Vec<(u32, u32)> {
    (0..=max_level)
        .flat_map(|l| (0..=l).map(move |m| (m, l - m)))
        .collect()
}

fn index_json(rows: &[(u32, u32)]) -> serde_json::Value {
    serde_json::Value::Array(rows.iter().map(|(m, n)| json!([m, n])).collect())
}

/// Explicit sum, Rodrigues and operator routes agree for `m + n ≤ max_level`.
pub fn routes_check<S: Scalar>(max_level: u32) -> Report {
    let bad: Vec<(u32, u32)> = level_indices(max_level)
        .into_par_iter()
        .filter(|&(m, n)| {
            let a = complex_hermite_sum::<S>(m, n);
            a != complex_hermite_rodrigues(m, n) || a != complex_hermite_operator(m, n)
        })
        .collect();
    let count = level_indices(max_level).len();
    Report::new(
        "routes",
        bad.is_empty(),
        format!("{count} polynomials, {} disagreements", bad.len()),
        json!({ "max_level": max_level, "polynomials": count, "mismatches": index_json(&bad) }),
    )
}

/// `<H_{m,n}, H_{k,l}> = m! n! δ_mk δ_nl` for every pair up to `max_level`.
pub fn orthonormality_check<S: Scalar>(max_level: u32, tol: f64) -> Report {
    let table = HermiteTable::<S>::build(max_level);
    let idx = level_indices(max_level);
    let violations: Vec<serde_json::Value> = idx
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let table = &table;
            idx.iter().filter_map(move |&(k, l)| {
                let got = inner_product(table.get(m, n)?, table.get(k, l)?);
                let expected = if (m, n) == (k, l) {
                    S::from_bigint(&HermiteTable::<S>::norm_sq(m, n))
                } else {
                    S::zero()
                };
                (!got.approx_eq(&expected, tol)).then(|| {
                    let (re, im) = got.to_json_parts();
                    json!({ "left": [m, n], "right": [k, l], "re": re, "im": im })
                })
            })
        })
        .collect();
    Report::new(
        "orthonormal",
        violations.is_empty(),
        format!("{} pairs up to level {max_level}, {} violations", idx.len() * idx.len(), violations.len()),
        json!({ "max_level": max_level, "backend": S::BACKEND, "violations": violations }),
    )
}

/// `∫ H_m H_n e^{-x²} dx = √π 2^n n! δ_mn` for `m, n ≤ max_n`.
pub fn real_orthogonality_check(max_n: u32) -> Report {
    let polys: Vec<RealPoly> = (0..=max_n).map(real_hermite).collect();
    let mut violations = Vec::new();
    for (m, p) in polys.iter().enumerate() {
        for (n, q) in polys.iter().enumerate() {
            let got = real_inner_product(p, q).expect("same variable");
            let expected = if m == n {
                Rational::from_integer(factorial(n as u32) << n)
            } else {
                Rational::zero()
            };
            let ok = got.rational == expected && (got.is_zero() || got.sqrt_pi_power == 1);
            if !ok {
                violations.push(json!({ "m": m, "n": n, "got": got.to_string() }));
            }
        }
    }
    Report::new(
        "real_orthogonality",
        violations.is_empty(),
        format!("m, n <= {max_n}, {} violations", violations.len()),
        json!({ "max_n": max_n, "violations": violations }),
    )
}

/// Series coefficients of both generating functions against the tables.
pub fn generating_series_check<S: Scalar>(order: u32) -> Report {
    let complex = generating_series_complex::<S>(order);
    let real = generating_series_real(order);
    let mut bad_complex = Vec::new();
    let mut bad_real = Vec::new();
    for (k, l) in level_indices(order) {
        if complex.scaled_coeff(k, l) != complex_hermite_sum(k, l) {
            bad_complex.push((k, l));
        }
        let product = &real_hermite_in(k, RealVar::X1) * &real_hermite_in(l, RealVar::X2);
        if real.scaled_coeff(k, l) != product {
            bad_real.push((k, l));
        }
    }
    Report::new(
        "genfun",
        bad_complex.is_empty() && bad_real.is_empty(),
        format!("order {order}: {} complex and {} real mismatches", bad_complex.len(), bad_real.len()),
        json!({
            "order": order,
            "complex_mismatches": index_json(&bad_complex),
            "real_mismatches": index_json(&bad_real),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = BiPoly<Coeff>;

    fn c(n: i64) -> Coeff {
        Coeff::from_i64(n)
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_cases() {
        assert_eq!(complex_hermite_sum::<Coeff>(0, 0), P::one());
        let h11 = &P::monomial(c(1), 1, 1) - &P::one();
        assert_eq!(complex_hermite_sum::<Coeff>(1, 1), h11);
        let h21 = &P::monomial(c(1), 2, 1) - &P::monomial(c(2), 1, 0);
        assert_eq!(complex_hermite_sum::<Coeff>(2, 1), h21);
        assert_eq!(complex_hermite_rodrigues::<Coeff>(1, 0), P::z());
        assert_eq!(complex_hermite_rodrigues::<Coeff>(1, 1), h11);
        assert_eq!(complex_hermite_operator::<Coeff>(2, 0), P::monomial(c(1), 2, 0));
        assert_eq!(complex_hermite_operator::<Coeff>(0, 1), P::zbar());
    }

    #[test]
    fn unswapped_rodrigues_is_transposed() {
        // Without the final exchange the Rodrigues route yields H_{n,m}.
        let h = complex_hermite_rodrigues::<Coeff>(2, 1).swap_vars();
        assert_eq!(h, complex_hermite_sum(1, 2));
        assert_ne!(h, complex_hermite_sum(2, 1));
    }

    #[test]
    fn routes_agree() {
        for (m, n) in level_indices(6) {
            let s = complex_hermite_sum::<Coeff>(m, n);
            assert_eq!(s, complex_hermite_rodrigues(m, n), "({m},{n})");
            assert_eq!(s, complex_hermite_operator(m, n), "({m},{n})");
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for (m, n) in level_indices(5) {
            let h = complex_hermite_sum::<Coeff>(m, n);
            assert_eq!(h.conj(), complex_hermite_sum(n, m));
        }
    }

    #[test]
    fn diagonal_specialization() {
        for m in 0..6 {
            assert_eq!(complex_hermite_sum::<Coeff>(m, 0), P::monomial(c(1), m, 0));
        }
    }

    #[test]
    fn orthogonality_small() {
        let t = HermiteTable::<Coeff>::build(4);
        for ((m, n), p) in t.iter() {
            for ((k, l), q) in t.iter() {
                let expected = if (m, n) == (k, l) {
                    Coeff::from_bigint(&HermiteTable::<Coeff>::norm_sq(m, n))
                } else {
                    c(0)
                };
                assert_eq!(inner_product(p, q), expected);
            }
        }
    }

    #[test]
    fn real_examples() {
        assert_eq!(real_hermite(0), RealPoly::one());
        assert_eq!(real_hermite(1), RealPoly::monomial(r(2), 1, 0));
        let h3 = &RealPoly::monomial(r(8), 3, 0) - &RealPoly::monomial(r(12), 1, 0);
        assert_eq!(real_hermite(3), h3);
        let ip = real_inner_product(&real_hermite(1), &real_hermite(1)).unwrap();
        assert_eq!(ip.rational, r(2));
        assert_eq!(ip.sqrt_pi_power, 1);
    }

    #[test]
    fn complex_generating_series() {
        let s = generating_series_complex::<Coeff>(4);
        assert_eq!(s.coeff(0, 0), P::one());
        assert_eq!(s.coeff(1, 1), complex_hermite_sum(1, 1));
        assert_eq!(s.coeff(2, 0), P::monomial(Coeff::from_rational(&Rational::new(1.into(), 2.into())), 2, 0));
        for (k, l) in level_indices(4) {
            assert_eq!(s.scaled_coeff(k, l), complex_hermite_sum(k, l));
        }
    }

    #[test]
    fn real_generating_series() {
        let s = generating_series_real(4);
        for (k, l) in level_indices(4) {
            let expected = &real_hermite_in(k, RealVar::X1) * &real_hermite_in(l, RealVar::X2);
            assert_eq!(s.scaled_coeff(k, l), expected, "({k},{l})");
        }
        assert_eq!(s.coeff(0, 0).coeff(0, 0), r(1));
    }

    #[test]
    fn table_json_order() {
        let t = HermiteTable::<Coeff>::build(2);
        let v = t.to_json();
        let keys: Vec<(u64, u64)> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["m"].as_u64().unwrap(), e["n"].as_u64().unwrap()))
            .collect();
        assert_eq!(keys, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]);
        assert_eq!(v[4]["norm_sq"], "1");
        assert_eq!(v[5]["norm_sq"], "2");
    }
}
