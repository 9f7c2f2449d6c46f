//! Test-only oracles, independent of the Jacobi eigensolver.
#![allow(dead_code)]

use num_complex::Complex64;
use qutrit_core::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Monic characteristic polynomial x^4 + a x^3 + b x^2 + c x + d of a 4x4
/// matrix, from power traces via Newton's identities.
pub fn char_poly_4(m: &ComplexMatrix) -> [Complex64; 4] {
    assert_eq!(m.dim(), 4);
    let mut power = m.clone();
    let mut p = [Complex64::new(0.0, 0.0); 5];
    for pk in p.iter_mut().skip(1) {
        *pk = power.trace();
        power = power.matmul(m).unwrap();
    }
    let e1 = p[1];
    let e2 = (e1 * p[1] - p[2]) / 2.0;
    let e3 = (e2 * p[1] - e1 * p[2] + p[3]) / 3.0;
    let e4 = (e3 * p[1] - e2 * p[2] + e1 * p[3] - p[4]) / 4.0;
    [-e1, e2, -e3, e4]
}

fn cbrt_c(z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        z
    } else {
        z.powf(1.0 / 3.0)
    }
}

/// Roots of t^3 + a t^2 + b t + c by Cardano in complex arithmetic.
fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u = cbrt_c(-q / 2.0 + disc);
    if u.norm() < 1e-300 {
        u = cbrt_c(-q / 2.0 - disc);
    }
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    let mut w = Complex64::new(1.0, 0.0);
    for r in roots.iter_mut() {
        let uk = u * w;
        let vk = if uk.norm() < 1e-300 { Complex64::new(0.0, 0.0) } else { -p / (3.0 * uk) };
        *r = uk + vk - shift;
        w *= omega;
    }
    roots
}

/// Real parts of the roots of x^4 + a x^3 + b x^2 + c x + d (all roots
/// assumed real), by Ferrari's method followed by a few Newton steps on the
/// polynomial. Sorted descending.
pub fn quartic_real_roots(coeffs: [f64; 4]) -> [f64; 4] {
    let [a, b, c, d] = coeffs;
    let p = b - 3.0 * a * a / 8.0;
    let q = c - a * b / 2.0 + a * a * a / 8.0;
    let r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a.powi(4) / 256.0;
    let (pc, qc, rc) = (Complex64::new(p, 0.0), Complex64::new(q, 0.0), Complex64::new(r, 0.0));

    let ys: [Complex64; 4] = if q.abs() < 1e-14 * (1.0 + p.abs() + r.abs()) {
        let disc = (pc * pc - 4.0 * rc).sqrt();
        let z1 = (-pc + disc) / 2.0;
        let z2 = (-pc - disc) / 2.0;
        [z1.sqrt(), -z1.sqrt(), z2.sqrt(), -z2.sqrt()]
    } else {
        // 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
        let ms = cubic_roots(pc, Complex64::new((2.0 * p * p - 8.0 * r) / 8.0, 0.0), -qc * qc / 8.0);
        let m = ms
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap();
        let s = (2.0 * m).sqrt();
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            // y^2 - sign*s*y + (p/2 + m + sign*q/(2s)) = 0
            let bb = -sign * s;
            let cc = pc / 2.0 + m + sign * qc / (2.0 * s);
            let disc = (bb * bb - 4.0 * cc).sqrt();
            out[2 * k] = (-bb + disc) / 2.0;
            out[2 * k + 1] = (-bb - disc) / 2.0;
        }
        out
    };

    let poly = |x: f64| (((x + a) * x + b) * x + c) * x + d;
    let deriv = |x: f64| ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c;
    let mut roots = [0.0; 4];
    for (dst, y) in roots.iter_mut().zip(ys) {
        let mut x = y.re - a / 4.0;
        for _ in 0..3 {
            let dp = deriv(x);
            if dp == 0.0 {
                break;
            }
            let next = x - poly(x) / dp;
            if poly(next).abs() < poly(x).abs() {
                x = next;
            } else {
                break;
            }
        }
        *dst = x;
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

/// Eigenvalues (real, descending) of a 4x4 matrix known to have a real
/// spectrum, via its characteristic polynomial.
pub fn eigenvalues_by_char_poly(m: &ComplexMatrix) -> [f64; 4] {
    let c = char_poly_4(m);
    quartic_real_roots([c[0].re, c[1].re, c[2].re, c[3].re])
}

/// Random Hermitian matrix with real and imaginary parts uniform in [-1, 1].
pub fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(dim).unwrap();
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..=1.0), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Haar-ish 2x2 unitary from three random angles and a global phase.
pub fn random_unitary_2(seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    let theta: f64 = rng.random_range(0.0..tau);
    let phi: f64 = rng.random_range(0.0..tau);
    let chi: f64 = rng.random_range(0.0..tau);
    let alpha: f64 = rng.random_range(0.0..tau);
    let g = Complex64::from_polar(1.0, alpha);
    let (c, s) = (theta.cos(), theta.sin());
    ComplexMatrix::from_rows(vec![
        vec![g * Complex64::from_polar(c, phi), g * Complex64::from_polar(s, chi)],
        vec![-g * Complex64::from_polar(s, -chi), g * Complex64::from_polar(c, -phi)],
    ])
    .unwrap()
}

pub fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
