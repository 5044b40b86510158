//! Numerical residual checks, exact multiplicity bookkeeping along pole
//! orbits, and the composition-degree invariant.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{compose_rational, FRat};
use crate::equation::EquationSpec;
use crate::error::VerifyError;
use crate::numeric::poly_roots;
use crate::solutions::{eval_solution, FamilyKind, SolutionFamily};

/// Points with |f| above this are skipped.
pub const MAGNITUDE_GUARD: f64 = 1e8;
/// Points with f this close to a zero of Q(z, ·) are skipped.
pub const DENOMINATOR_GUARD: f64 = 1e-6;

/// Rectangular grid `re0:re1:nre,im0:im1:nim`, endpoints included.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub re: (f64, f64, usize),
    pub im: (f64, f64, usize),
}

impl Default for Grid {
    /// 200 points of [0, 3] × [−1, 1].
    fn default() -> Self {
        Grid { re: (0.0, 3.0, 20), im: (-1.0, 1.0, 10) }
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect()
}

impl Grid {
    pub fn points(&self) -> Vec<C> {
        let ims = axis(self.im.0, self.im.1, self.im.2);
        axis(self.re.0, self.re.1, self.re.2)
            .into_iter()
            .flat_map(|x| ims.iter().map(move |&y| C::new(x, y)))
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{},{}:{}:{}", self.re.0, self.re.1, self.re.2, self.im.0, self.im.1, self.im.2)
    }
}

impl FromStr for Grid {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VerifyError::Contract(format!("grid spec '{}' is not re0:re1:nre,im0:im1:nim", s));
        let part = |t: &str| -> Result<(f64, f64, usize), VerifyError> {
            let v: Vec<&str> = t.split(':').collect();
            if v.len() != 3 {
                return Err(bad());
            }
            let lo = v[0].trim().parse().map_err(|_| bad())?;
            let hi = v[1].trim().parse().map_err(|_| bad())?;
            let n: usize = v[2].trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(VerifyError::Contract("grid must be nonempty".into()));
            }
            Ok((lo, hi, n))
        };
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(Grid { re: part(a)?, im: part(b)? })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    Magnitude,
    NearDenominatorZero,
    Pole,
    Evaluation(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResidual {
    pub z: [f64; 2],
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub z: [f64; 2],
    pub reason: SkipReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Every point was skipped by a guard.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub grid: String,
    pub tol: f64,
    pub points: Vec<PointResidual>,
    pub max_residual: Option<f64>,
    pub skipped: Vec<SkippedPoint>,
    pub skipped_fraction: f64,
    pub outcome: Outcome,
}

impl VerificationReport {
    fn assemble(grid: String, tol: f64, points: Vec<PointResidual>, skipped: Vec<SkippedPoint>) -> Self {
        let total = points.len() + skipped.len();
        let max_residual = points.iter().map(|p| p.residual).reduce(f64::max);
        let outcome = match max_residual {
            None => Outcome::Inconclusive,
            Some(m) if m <= tol => Outcome::Pass,
            Some(_) => Outcome::Fail,
        };
        let skipped_fraction = if total == 0 { 0.0 } else { skipped.len() as f64 / total as f64 };
        VerificationReport { grid, tol, points, max_residual, skipped, skipped_fraction, outcome }
    }
}

fn coeffs_at(p: &crate::algebra::FPoly, z: C) -> Vec<C> {
    p.coeffs().iter().map(|c| c.eval_complex(z)).collect()
}

/// Residual of one step f → f̄, or the reason it was not measured.
fn step_residual(spec: &EquationSpec, z: C, f: C, fb: C) -> Result<f64, SkipReason> {
    if f.norm() > MAGNITUDE_GUARD || fb.norm() > MAGNITUDE_GUARD {
        return Err(SkipReason::Magnitude);
    }
    let q = coeffs_at(&spec.q, z);
    if poly_roots(&q).iter().any(|r| (f - r).norm() < DENOMINATOR_GUARD) {
        return Err(SkipReason::NearDenominatorZero);
    }
    let rhs = spec.p.eval_complex(z, f) / spec.q.eval_complex(z, f);
    let lhs = fb.powu(spec.n);
    let r = (lhs - rhs).norm() / (1.0 + lhs.norm());
    if r.is_finite() {
        Ok(r)
    } else {
        Err(SkipReason::Evaluation("non-finite residual".into()))
    }
}

fn sample(sol: &SolutionFamily, z: C) -> Result<C, SkipReason> {
    match eval_solution(sol, z) {
        Ok(Some(v)) => Ok(v),
        Ok(None) => Err(SkipReason::Pole),
        Err(e) => Err(SkipReason::Evaluation(e.to_string())),
    }
}

/// |f(z+1)ⁿ − R(z, f(z))| / (1 + |f(z+1)|ⁿ) over the grid. Orbit families
/// are checked on their consecutive steps instead.
pub fn verify_residual(
    spec: &EquationSpec,
    sol: &SolutionFamily,
    grid: &Grid,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    if !(tol > 0.0) {
        return Err(VerifyError::Contract(format!("tolerance must be positive, got {}", tol)));
    }
    let (desc, zs) = match &sol.kind {
        FamilyKind::DeltaOrbit { orbit, .. } => {
            let steps = orbit.deltas.len().saturating_sub(1);
            (format!("orbit steps 0..{}", steps), (0..steps).map(|s| C::new(s as f64, 0.0)).collect())
        }
        _ => (grid.to_string(), grid.points()),
    };
    let (mut points, mut skipped) = (Vec::new(), Vec::new());
    for z in zs {
        let zp = [z.re, z.im];
        let r = sample(sol, z).and_then(|f| sample(sol, z + 1.0).and_then(|fb| step_residual(spec, z, f, fb)));
        match r {
            Ok(residual) => points.push(PointResidual { z: zp, residual }),
            Err(reason) => skipped.push(SkippedPoint { z: zp, reason }),
        }
    }
    Ok(VerificationReport::assemble(desc, tol, points, skipped))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityOrbit {
    pub n: u32,
    pub exponent: u32,
    pub m0: u64,
    /// m_s = m0·(exponent/n)^s, as exact fractions.
    #[serde(serialize_with = "ser_ratios")]
    pub sequence: Vec<BigRational>,
    /// First s with m_s not an integer.
    pub first_non_integral: Option<usize>,
    /// n divides the exponent, so no step can break.
    pub integral_forever: bool,
}

fn ser_ratios<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Multiplicity carried from a pole (or zero) of order m0 along z0 + s.
/// Stops at the first non-integral step or after `max_steps` steps.
pub fn orbit_multiplicity(n: u32, exponent: u32, m0: u64, max_steps: usize) -> Result<MultiplicityOrbit, VerifyError> {
    if n < 2 || exponent < 1 || m0 < 1 {
        return Err(VerifyError::Contract(format!(
            "need n >= 2, exponent >= 1, m0 >= 1; got ({}, {}, {})",
            n, exponent, m0
        )));
    }
    let ratio = BigRational::new(BigInt::from(exponent), BigInt::from(n));
    let mut m = BigRational::from_integer(BigInt::from(m0));
    let mut sequence = vec![m.clone()];
    let mut first_non_integral = None;
    for s in 1..=max_steps {
        m = &m * &ratio;
        sequence.push(m.clone());
        if !m.is_integer() {
            first_non_integral = Some(s);
            break;
        }
    }
    Ok(MultiplicityOrbit { n, exponent, m0, sequence, first_non_integral, integral_forever: exponent % n == 0 })
}

/// deg(R∘F) = deg R · deg F, decided exactly.
pub fn degree_functional_check(r: &FRat, f: &FRat) -> Result<bool, VerifyError> {
    if f.is_constant() {
        return Err(VerifyError::Contract("inner map is constant".into()));
    }
    let c = compose_rational(r, f)?;
    Ok(c.degree() == r.degree() * f.degree())
}

/// m_s is integral: n^s | exponent^s·m0, checked with plain integers.
pub fn brute_force_integral(n: u32, exponent: u32, m0: u64, s: u32) -> bool {
    let num = BigInt::from(exponent).pow(s) * BigInt::from(m0);
    let den = BigInt::from(n).pow(s);
    (num % den).is_zero()
}

#[cfg(test)]
mod tests;
