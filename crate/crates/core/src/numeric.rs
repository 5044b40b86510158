//! Small floating-point helpers: polynomial roots and rational recognition.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

/// Horner evaluation, coefficients lowest degree first.
pub fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

/// All complex roots by Aberth–Ehrlich iteration followed by Newton polish.
pub fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = c.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let dc: Vec<Complex64> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, x)| x * k as f64)
        .collect();
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e6).max(1e-3) * 0.5 + 0.1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(r0, ang)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let p = horner(&c, z[k]);
            let dp = horner(&dc, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let dp = horner(&dc, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let step = horner(&c, *zk) / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    z
}

/// Best rational approximation with denominator at most `max_den`, accepted
/// only when it reproduces `x` to `tol` (relative above 1).
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        best = Some((h2, k2));
        let err = (x - h2 as f64 / k2 as f64).abs();
        if err <= tol * x.abs().max(1.0) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    let (h, k) = best?;
    let err = (x - h as f64 / k as f64).abs();
    (err <= tol * x.abs().max(1.0)).then(|| BigRational::new(BigInt::from(h), BigInt::from(k)))
}
