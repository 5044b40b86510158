//! Jacobi sn, cn, dn by descending Landen transformation, and the fit of
//! the symmetric biquadratic x²y² − (x² + y²) + κ² = 0 to sn.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::SpecialFnError;

/// (sn, cn, dn) of u with modulus k, |k| < 1.
pub fn jacobi_sncndn(u: C, k: C) -> Result<(C, C, C), SpecialFnError> {
    if k.norm() >= 1.0 {
        return Err(SpecialFnError::Modulus(k.norm()));
    }
    Ok(landen(u, k, 0))
}

pub fn jacobi_sn(u: C, k: C) -> Result<C, SpecialFnError> {
    jacobi_sncndn(u, k).map(|t| t.0)
}

fn landen(u: C, k: C, depth: u32) -> (C, C, C) {
    if k.norm() < 1e-9 || depth > 40 {
        // first-order correction in k²
        let (s, c) = (u.sin(), u.cos());
        let m4 = k * k / 4.0;
        let sn = s - m4 * (u - s * c) * c;
        let cn = c + m4 * (u - s * c) * s;
        let dn = 1.0 - k * k * s * s / 2.0;
        return (sn, cn, dn);
    }
    let kp = (1.0 - k * k).sqrt();
    let k1 = (1.0 - kp) / (1.0 + kp);
    let w = u / (1.0 + k1);
    let (s, c, d) = landen(w, k1, depth + 1);
    let den = 1.0 + k1 * s * s;
    let sn = (1.0 + k1) * s / den;
    let cn = c * d / den;
    let dn = (1.0 - k1 * s * s) / den;
    (sn, cn, dn)
}

/// Complete elliptic integral K(k) = π / (2·AGM(1, k′)).
pub fn complete_k(k: C) -> C {
    let (mut a, mut b) = (C::new(1.0, 0.0), (1.0 - k * k).sqrt());
    for _ in 0..60 {
        if (a - b).norm() < 1e-16 * a.norm() {
            break;
        }
        let an = (a + b) / 2.0;
        b = (a * b).sqrt();
        // keep the "right" square root so the iteration converges
        if (an - b).norm() > (an + b).norm() {
            b = -b;
        }
        a = an;
    }
    PI / (2.0 * a)
}

/// Parametrization of the biquadratic by sn: with x = scale·sn(φ ± τ, k) and
/// y = scale·sn(φ, k), x²y² − (x² + y²) + κ² = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BiquadParams {
    pub modulus: C,
    /// k², the form in which the constant enters the relation.
    pub parameter: C,
    pub tau: C,
    /// The modulus itself when |κ²| < 1; 1 in the reciprocal branch, where
    /// k = 1/κ and τ sits at K + iK′.
    pub scale: C,
}

impl BiquadParams {
    fn from_kt(k: C, tau: C, reciprocal: bool) -> Self {
        let scale = if reciprocal { C::new(1.0, 0.0) } else { k };
        BiquadParams { modulus: k, parameter: k * k, tau, scale }
    }

    /// Residual of the relation at φ for both signs of τ.
    pub fn residual(&self, kappa2: C, phi: C) -> Result<f64, SpecialFnError> {
        let y = self.scale * jacobi_sn(phi, self.modulus)?;
        let mut worst: f64 = 0.0;
        for sign in [1.0, -1.0] {
            let x = self.scale * jacobi_sn(phi + sign * self.tau, self.modulus)?;
            let (x2, y2) = (x * x, y * y);
            let r = x2 * y2 - (x2 + y2) + kappa2;
            worst = worst.max(r.norm() / (1.0 + (x2 * y2).norm()));
        }
        Ok(worst)
    }
}

pub fn sample_phis(count: usize) -> Vec<C> {
    (0..count)
        .map(|j| {
            let t = j as f64 / count as f64;
            C::new(-1.5 + 3.0 * t, 0.4 * (2.0 * PI * t).sin())
        })
        .collect()
}

fn max_residual(p: &BiquadParams, kappa2: C, phis: &[C]) -> Option<f64> {
    phis.iter()
        .map(|&phi| p.residual(kappa2, phi).ok())
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))
}

/// Fit (k, τ) for κ² by Gauss–Newton on the sampled relation, starting from
/// the addition-theorem guess k² = κ², τ = K(k), or from `start`.
///
/// For |κ²| > 1 that guess leaves the unit disc, so the reciprocal modulus
/// k = 1/κ is used with unit scale: sn(u + K + iK′) = dn u / (k cn u) gives
/// the same relation.
pub fn biquadratic_params_from(kappa2: C, start: Option<(C, C)>) -> Result<BiquadParams, SpecialFnError> {
    if kappa2.norm() < 1e-12 || (kappa2 - 1.0).norm() < 1e-12 {
        return Err(SpecialFnError::Parameter(format!("kappa^2 = {} is excluded (0 and 1 are degenerate)", kappa2)));
    }
    let reciprocal = kappa2.norm() > 1.0;
    let (mut k, mut tau) = start.unwrap_or_else(|| {
        if reciprocal {
            let k = kappa2.sqrt().inv();
            (k, complete_k(k) + C::i() * complete_k((1.0 - k * k).sqrt()))
        } else {
            let k = kappa2.sqrt();
            (k, complete_k(k))
        }
    });
    if k.norm() >= 1.0 {
        return Err(SpecialFnError::SearchFailure(format!(
            "modulus {} from kappa^2 = {} is outside |k| < 1",
            k, kappa2
        )));
    }
    let phis = sample_phis(12);
    let eval = |k: C, tau: C| -> Option<Vec<C>> {
        let scale = BiquadParams::from_kt(k, tau, reciprocal).scale;
        let mut out = Vec::new();
        for &phi in &phis {
            let y = scale * jacobi_sn(phi, k).ok()?;
            let x = scale * jacobi_sn(phi + tau, k).ok()?;
            let (x2, y2) = (x * x, y * y);
            out.push(x2 * y2 - (x2 + y2) + kappa2);
        }
        Some(out)
    };
    for _ in 0..60 {
        let Some(r) = eval(k, tau) else { break };
        let nr: f64 = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nr < 1e-14 {
            break;
        }
        let h = 1e-7;
        let (Some(rk), Some(rt)) = (eval(k + h, tau), eval(k, tau + h)) else { break };
        // 2-unknown holomorphic least squares: normal equations by hand
        let jk: Vec<C> = rk.iter().zip(&r).map(|(a, b)| (a - b) / h).collect();
        let jt: Vec<C> = rt.iter().zip(&r).map(|(a, b)| (a - b) / h).collect();
        let dot = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C>();
        let (a11, a12, a22) = (dot(&jk, &jk), dot(&jk, &jt), dot(&jt, &jt));
        let (b1, b2) = (-dot(&jk, &r), -dot(&jt, &r));
        let det = a11 * a22 - a12.conj() * a12;
        if det.norm() < 1e-300 {
            break;
        }
        let dk = (a22 * b1 - a12 * b2) / det;
        let dt = (a11 * b2 - a12.conj() * b1) / det;
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-6 {
            let (kn, tn) = (k + dk * t, tau + dt * t);
            if kn.norm() < 1.0 {
                if let Some(rn) = eval(kn, tn) {
                    if rn.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() < nr {
                        (k, tau) = (kn, tn);
                        moved = true;
                        break;
                    }
                }
            }
            t /= 2.0;
        }
        if !moved {
            break;
        }
    }
    let p = BiquadParams::from_kt(k, tau, reciprocal);
    match max_residual(&p, kappa2, &sample_phis(50)) {
        Some(r) if r <= 1e-8 => Ok(p),
        other => Err(SpecialFnError::SearchFailure(format!(
            "no sn parameters reproduce kappa^2 = {} (best residual {:?})",
            kappa2, other
        ))),
    }
}

pub fn biquadratic_params(kappa2: C) -> Result<BiquadParams, SpecialFnError> {
    biquadratic_params_from(kappa2, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn degenerate_moduli() {
        assert!(jacobi_sn(c(0.0), c(0.5)).unwrap().norm() < 1e-15);
        assert!((jacobi_sn(c(1.1), c(0.0)).unwrap() - c(1.1f64.sin())).norm() < 1e-10);
        assert!(matches!(jacobi_sn(c(0.3), c(1.0)), Err(SpecialFnError::Modulus(_))));
    }

    #[test]
    fn quarter_period_and_pythagoras() {
        let k = c(0.6);
        let kk = complete_k(k);
        // K(0.6) from tables: 1.750754 (A&S 17.1 at m = 0.36)
        assert!((kk.re - 1.750_753_8).abs() < 1e-6);
        assert!((jacobi_sn(kk, k).unwrap() - 1.0).norm() < 1e-9);
        for u in [C::new(0.3, 0.2), C::new(-1.7, 0.5), C::new(2.4, -0.8)] {
            let (s, cn, d) = jacobi_sncndn(u, k).unwrap();
            assert!((s * s + cn * cn - 1.0).norm() < 1e-9);
            assert!((d * d + k * k * s * s - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn derivative_matches_cn_dn() {
        let (k, u, h) = (c(0.6), C::new(0.7, 0.3), 1e-6);
        let d = (jacobi_sn(u + h, k).unwrap() - jacobi_sn(u - h, k).unwrap()) / (2.0 * h);
        let (_, cn, dn) = jacobi_sncndn(u, k).unwrap();
        assert!((d - cn * dn).norm() < 1e-8);
    }

    #[test]
    fn real_axis_bounds() {
        for j in 0..40 {
            let u = c(-4.0 + 0.2 * j as f64);
            let s = jacobi_sn(u, c(0.8)).unwrap();
            assert!(s.im.abs() < 1e-12 && s.re.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn biquadratic_quarter() {
        let p = biquadratic_params(c(0.25)).unwrap();
        assert!(max_residual(&p, c(0.25), &sample_phis(50)).unwrap() <= 1e-8);
        let q = biquadratic_params_from(c(0.25), Some((C::new(0.45, 0.03), C::new(1.6, 0.05)))).unwrap();
        assert!(max_residual(&q, c(0.25), &sample_phis(50)).unwrap() <= 1e-8);
        assert!(matches!(biquadratic_params(c(1.0)), Err(SpecialFnError::Parameter(_))));
    }

    #[test]
    fn biquadratic_reciprocal_branch() {
        for k2 in [c(3.0 + 2.0 * 2f64.sqrt()), C::new(1.4, -0.9)] {
            let p = biquadratic_params(k2).unwrap();
            assert!(p.modulus.norm() < 1.0 && p.scale == c(1.0));
            assert!(max_residual(&p, k2, &sample_phis(50)).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn biquadratic_complex_constant() {
        let k2 = C::new(-0.3, 0.4);
        let p = biquadratic_params(k2).unwrap();
        assert!(max_residual(&p, k2, &sample_phis(50)).unwrap() <= 1e-8);
    }
}
