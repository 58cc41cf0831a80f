//! Numerical Gaussian integration over the plane, for cross-checking the
//! exact moment rule.

use num_complex::Complex64;

const RADIUS: f64 = 12.0;
const ANGLES: usize = 32;

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// `(1/π) ∫ f(z) e^{-|z|²} d²z`: trapezoid rule in the angle, adaptive
/// Simpson in the radius on `[0, 12]`. `tol` is relative to the integral
/// of `|f|`-sized contributions.
pub fn gaussian_integral(f: impl Fn(Complex64) -> Complex64, tol: f64) -> Complex64 {
    let radial = |r: f64| {
        let ring: Complex64 = (0..ANGLES)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / ANGLES as f64;
                f(Complex64::from_polar(r, t))
            })
            .sum();
        ring * (2.0 / ANGLES as f64) * r * (-r * r).exp()
    };
    // Composite pass fixes the scale for the relative tolerance.
    let pieces = 48;
    let h = RADIUS / pieces as f64;
    let coarse: f64 = (0..pieces)
        .map(|k| {
            let a = k as f64 * h;
            simpson(a, a + h, radial(a), radial(a + h / 2.0), radial(a + h)).norm()
        })
        .sum();
    let abs_tol = tol * coarse.max(1.0) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
            let (fa, fm, fb) = (radial(a), radial(0.5 * (a + b)), radial(b));
            adaptive(&radial, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, 30)
        })
        .sum()
}

/// `<z^a z~^b, z^c z~^d>` by quadrature.
pub fn monomial_inner(a: u32, b: u32, c: u32, d: u32) -> Complex64 {
    gaussian_integral(
        |z| {
            let zb = z.conj();
            (z.powu(a) * zb.powu(b)).conj() * z.powu(c) * zb.powu(d)
        },
        1e-12,
    )
}
