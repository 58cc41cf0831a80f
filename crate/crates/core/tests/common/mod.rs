//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's polynomial or operator code.

#![allow(dead_code)]

pub mod quadrature;

use std::collections::BTreeMap;

use hermite_deform::scalar::{coeff, rat};
use hermite_deform::{BiPoly, Coeff, Gl2, Monomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `(z power, z~ power) -> coefficient`.
pub type OPoly = BTreeMap<(u32, u32), Coeff>;

pub fn zero() -> Coeff {
    q(0, 1)
}

pub fn one() -> Coeff {
    q(1, 1)
}

pub fn q(n: i64, d: i64) -> Coeff {
    coeff(rat(n, d), rat(0, 1))
}

pub fn qi(n: i64, d: i64) -> Coeff {
    coeff(rat(0, 1), rat(n, d))
}

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn push(p: &mut OPoly, k: (u32, u32), c: Coeff) {
    let e = p.entry(k).or_insert_with(Coeff::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

pub fn omul(a: &OPoly, b: &OPoly) -> OPoly {
    let mut out = OPoly::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            push(&mut out, (i + k, j + l), x * y);
        }
    }
    out
}

pub fn oadd(a: &OPoly, b: &OPoly, scale_b: &Coeff) -> OPoly {
    let mut out = a.clone();
    for (&k, y) in b {
        push(&mut out, k, y * scale_b);
    }
    out
}

pub fn opow(a: &OPoly, e: u32) -> OPoly {
    (0..e).fold(OPoly::from([((0, 0), Coeff::one())]), |acc, _| omul(&acc, a))
}

pub fn from_lib(p: &BiPoly<Coeff>) -> OPoly {
    p.terms().map(|(m, c)| ((m.z, m.zbar), c.clone())).collect()
}

pub fn to_lib(p: &OPoly) -> BiPoly<Coeff> {
    BiPoly::from_terms(p.iter().map(|(&(a, b), c)| (Monomial::new(a, b), c.clone())))
}

/// `H_{m,n}` by `H_{m+1,n} = z H_{m,n} - n H_{m,n-1}`, `H_{0,n} = z~^n`.
pub fn hermite(m: u32, n: u32) -> OPoly {
    let mut rows: Vec<OPoly> = (0..=n).map(|k| OPoly::from([((0, k), Coeff::one())])).collect();
    for _ in 0..m {
        let next: Vec<OPoly> = (0..=n)
            .map(|k| {
                let zh = rows[k as usize].iter().map(|(&(a, b), c)| ((a + 1, b), c.clone())).collect();
                if k == 0 {
                    zh
                } else {
                    oadd(&zh, &rows[k as usize - 1], &q(-(k as i64), 1))
                }
            })
            .collect();
        rows = next;
    }
    rows.pop().unwrap()
}

/// Moment rule `<z^a z~^b, z^c z~^d> = (b+c)! [b+c = a+d]`, conjugate-linear on the left.
pub fn inner(p: &OPoly, r: &OPoly) -> Coeff {
    let mut acc = Coeff::zero();
    for (&(a, b), x) in p {
        for (&(c, d), y) in r {
            if b + c == a + d {
                acc += x.conj() * y * Coeff::from(Rational::from_integer(fact(b + c)));
            }
        }
    }
    acc
}

/// Column `k` holds `(g11 z + g21 z~)^k (g12 z + g22 z~)^{L-k}` in the
/// monomial basis `z^r z~^{L-r}`; the same coefficients relate `H^g` to `H`.
pub fn rep_matrix(g: &Gl2<Coeff>, level: u32) -> Vec<Vec<Coeff>> {
    let lin = |a: &Coeff, b: &Coeff| OPoly::from([((1, 0), a.clone()), ((0, 1), b.clone())]);
    let first = lin(g.entry(0, 0), g.entry(1, 0));
    let second = lin(g.entry(0, 1), g.entry(1, 1));
    let n = level as usize + 1;
    let mut m = vec![vec![Coeff::zero(); n]; n];
    for k in 0..=level {
        let p = omul(&opow(&first, k), &opow(&second, level - k));
        for r in 0..=level {
            m[r as usize][k as usize] = p.get(&(r, level - r)).cloned().unwrap_or_else(Coeff::zero);
        }
    }
    m
}

pub fn matmul(a: &[Vec<Coeff>], b: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let n = a.len();
    let p = b[0].len();
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..b.len()).fold(Coeff::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, c: &Coeff) -> Vec<Vec<Coeff>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Coeff::zero() }).collect())
        .collect()
}

/// `n! Σ_k (-1)^k (2x)^{n-2k} / (k! (n-2k)!)`, as coefficients by power.
pub fn real_hermite(n: u32) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    for k in 0..=n / 2 {
        let p = n - 2 * k;
        let mag = fact(n) * (BigInt::one() << p) / (fact(k) * fact(p));
        c[p as usize] = if k % 2 == 0 { mag } else { -mag };
    }
    c
}

/// `∫ x^{2k} e^{-x²} dx / √π = (2k)! / (4^k k!)`.
pub fn gaussian_moment(e: u32) -> Rational {
    if e % 2 == 1 {
        return Rational::zero();
    }
    let k = e / 2;
    Rational::new(fact(2 * k), (BigInt::one() << (2 * k)) * fact(k))
}
