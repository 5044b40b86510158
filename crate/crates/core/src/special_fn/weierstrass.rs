//! The equianharmonic Weierstrass function with g2 = 0, g3 = 1 and the
//! Fermat-cubic pair built from it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C;

use crate::error::SpecialFnError;

/// Laurent coefficients c_k of ℘(z) = z⁻² + Σ c_k z^{2k−2}, k ≤ this.
const LAURENT_ORDER: usize = 12;
const POLE_TOL: f64 = 1e-8;
const ZERO_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Lattice {
    /// Real half-period: ℘(ω) is the real root of 4x³ − 1.
    pub omega: f64,
    /// Full periods 2ω and 2ωρ with ρ = e^{2πi/3}.
    pub periods: [C; 2],
    laurent: [f64; LAURENT_ORDER + 1],
}

/// Adaptive Simpson on [a, b].
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn build_lattice() -> Lattice {
    let e1 = 0.25f64.cbrt();
    // ω = ∫_{e1}^∞ dx / √(4x³ − 1); x = e1 + tan²θ removes both the endpoint
    // singularity and the infinite range.
    let integrand = |t: f64| {
        if t >= PI / 2.0 {
            return 1.0;
        }
        let u = t.tan();
        let x = e1 + u * u;
        let sec2 = 1.0 + u * u;
        sec2 / (x * x + e1 * x + e1 * e1).sqrt()
    };
    let omega = simpson(&integrand, 0.0, PI / 2.0, 1e-15);
    let rho = C::from_polar(1.0, 2.0 * PI / 3.0);
    let mut c = [0.0; LAURENT_ORDER + 1];
    // g2 = 0, g3 = 1
    c[3] = 1.0 / 28.0;
    for k in 4..=LAURENT_ORDER {
        let s: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
        c[k] = 3.0 / ((2 * k + 1) as f64 * (k as f64 - 3.0)) * s;
    }
    Lattice { omega, periods: [C::new(2.0 * omega, 0.0), rho * 2.0 * omega], laurent: c }
}

pub fn lattice() -> &'static Lattice {
    static L: OnceLock<Lattice> = OnceLock::new();
    L.get_or_init(build_lattice)
}

impl Lattice {
    /// Nearest lattice point to z (over the neighbours of the rounded one).
    pub fn nearest(&self, z: C) -> C {
        let [w1, w2] = self.periods;
        // coordinates in the (w1, w2) basis
        let det = w1.re * w2.im - w1.im * w2.re;
        let a = (z.re * w2.im - z.im * w2.re) / det;
        let b = (w1.re * z.im - w1.im * z.re) / det;
        let (a0, b0) = (a.round(), b.round());
        let mut best = w1 * a0 + w2 * b0;
        for da in -1..=1 {
            for db in -1..=1 {
                let cand = w1 * (a0 + da as f64) + w2 * (b0 + db as f64);
                if (z - cand).norm() < (z - best).norm() {
                    best = cand;
                }
            }
        }
        best
    }

    fn series(&self, z: C) -> (C, C) {
        let z2 = z * z;
        let mut p = z2.inv();
        let mut dp = -2.0 * p / z;
        let mut pw = C::new(1.0, 0.0);
        for k in 2..=LAURENT_ORDER {
            pw *= z2; // z^{2k−2}
            if self.laurent[k] != 0.0 {
                p += pw * self.laurent[k];
                dp += pw / z * ((2 * k - 2) as f64 * self.laurent[k]);
            }
        }
        (p, dp)
    }
}

/// ℘(z) and ℘′(z) for g2 = 0, g3 = 1.
pub fn weierstrass_p(z: C) -> Result<(C, C), SpecialFnError> {
    let l = lattice();
    let near = l.nearest(z);
    let u = z - near;
    if u.norm() < POLE_TOL {
        return Err(SpecialFnError::Pole { re: near.re, im: near.im });
    }
    if u.norm() <= 0.25 * l.periods[0].norm() {
        return Ok(l.series(u));
    }
    // one duplication step from u/2
    let (p, dp) = l.series(u / 2.0);
    if dp.norm() < 1e-300 {
        return Err(SpecialFnError::Pole { re: near.re, im: near.im });
    }
    let p2 = p * p;
    let p3 = p2 * p;
    let p6 = p3 * p3;
    let dp2 = dp * dp;
    let wp = -2.0 * p + 9.0 * p2 * p2 / dp2;
    let dwp = -dp + 18.0 * p3 / dp - 54.0 * p6 / (dp2 * dp);
    Ok((wp, dwp))
}

/// H(z) = (1 + ℘′/√3)/(2℘) and G(z) = H(−z), with H³ + G³ = 1.
pub fn fermat_pair(z: C) -> Result<(C, C), SpecialFnError> {
    let (p, dp) = weierstrass_p(z)?;
    if p.norm() < ZERO_TOL {
        return Err(SpecialFnError::Singular(format!("℘ vanishes near {}", z)));
    }
    let s3 = 3f64.sqrt();
    let h = (1.0 + dp / s3) / (2.0 * p);
    let g = (1.0 - dp / s3) / (2.0 * p);
    Ok((h, g))
}
