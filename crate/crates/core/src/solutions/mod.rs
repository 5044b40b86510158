//! Closed-form solution families for the canonical forms, and evaluators.

mod delta;

pub use delta::{delta_map_for, exact_split, half_sum_sq, iterate_delta_map, DeltaMap, DeltaMapKind, DeltaOrbit};

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, RatZ};
use crate::classifier::Verdict;
use crate::equation::EquationSpec;
use crate::error::SolutionError;
use crate::identity::{CaseId, Scalars};
use crate::special_fn::{biquadratic_params, fermat_pair, jacobi_sn};

use delta::pack;

/// |exp(w)| ≤ 1e100 ⇔ Re w ≤ ln 1e100; the guard is applied to |w|.
pub const OVERFLOW_BOUND: f64 = 1e100;

fn guard_exp(w: C) -> Result<C, SolutionError> {
    if !w.is_finite() || w.norm() > OVERFLOW_BOUND.ln() {
        return Err(SolutionError::Overflow { bound: OVERFLOW_BOUND });
    }
    Ok(w.exp())
}

/// π(z) = Σ c_m e^{2πimz}, period one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSpec {
    /// (m, c_m) pairs; m = 0 is the constant term.
    pub modes: Vec<(i32, [f64; 2])>,
}

impl PeriodicSpec {
    pub fn constant(pi0: f64) -> Self {
        PeriodicSpec { modes: vec![(0, [pi0, 0.0])] }
    }

    pub fn eval(&self, z: C) -> C {
        self.modes
            .iter()
            .map(|(m, c)| C::new(c[0], c[1]) * (C::new(0.0, 2.0 * PI * *m as f64) * z).exp())
            .sum()
    }
}

impl Default for PeriodicSpec {
    fn default() -> Self {
        PeriodicSpec::constant(0.1)
    }
}

/// Principal power base^z for a real nonzero base.
fn real_pow(base: f64, z: C) -> C {
    (C::new(base, 0.0).ln() * z).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyKind {
    /// f = c^{1/(n−m)} exp[π(z) (m/n)^z]; m = p, or m = −q.
    ExpPower { c: [f64; 2], n: u32, m: i64, ratio: f64, periodic: PeriodicSpec },
    /// f = (δ² + δ⁻²)/2, δ = prefactor · exp[π(z) base^z].
    HalfSumDelta { base: f64, prefactor: [f64; 2], periodic: PeriodicSpec },
    /// f = (λ + λ⁻¹)/2, λ = prefactor · exp[π(z) base^z].
    HalfSumLambda { base: f64, prefactor: [f64; 2], periodic: PeriodicSpec },
    /// f(s) = (δ_s² + δ_s⁻²)/2 along the orbit of a first-order δ map.
    DeltaOrbit { map: DeltaMap, seed: [f64; 2], orbit: DeltaOrbit },
    /// f(z+1) = H(φ(z)) with φ(z+1) = A φ(z) + B.
    EllipticWeierstrass { a: [f64; 2], b: [f64; 2], phi0: [f64; 2] },
    /// f(z+1) = scale · sn(φ(z) + sign·τ, k) with φ(z+1) = C φ(z) + D.
    EllipticSn { modulus: [f64; 2], tau: [f64; 2], scale: [f64; 2], sign: f64, c: [f64; 2], d: [f64; 2], phi0: [f64; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFamily {
    /// Verdict id of the canonical form this family solves.
    pub form: String,
    #[serde(flatten)]
    pub kind: FamilyKind,
    /// Whether the family is a declared shell (not a closed form).
    pub shell: bool,
}

/// Constructor selectors; branches are never inferred.
#[derive(Clone, Debug)]
pub struct SolutionOptions {
    pub periodic: PeriodicSpec,
    /// Chooses +i (true) or −i in the (±i) prefactors.
    pub plus_i: bool,
    /// Use the negative exponent base −(p0+1/2), −(p0+1).
    pub negative_base: bool,
    pub theta: f64,
    pub sign: f64,
    pub seed: C,
    pub orbit_steps: usize,
    /// Inner affine map (A, B) and φ(0) for the elliptic shells.
    pub affine: (C, C),
    pub phi0: C,
}

impl Default for SolutionOptions {
    fn default() -> Self {
        SolutionOptions {
            periodic: PeriodicSpec::default(),
            plus_i: true,
            negative_base: false,
            theta: 1.0,
            sign: 1.0,
            seed: C::new(1.5, 0.0),
            orbit_steps: 20,
            affine: (C::new(2.0, 0.0), C::new(0.0, 0.0)),
            phi0: C::new(0.1, 0.05),
        }
    }
}

fn constant(c: &RatZ, what: &str) -> Result<C, SolutionError> {
    c.as_const()
        .map(|k| k.to_complex())
        .ok_or_else(|| SolutionError::NoClosedForm(format!("{} has a z-dependent coefficient", what)))
}

fn pm_i(plus: bool) -> C {
    if plus {
        C::i()
    } else {
        -C::i()
    }
}

/// Principal (±i)^e.
fn pm_i_pow(plus: bool, e: f64) -> C {
    (pm_i(plus).ln() * e).exp()
}

/// The (κ², label) constant that enters the biquadratic for a 2c case.
fn biquad_constant(case: CaseId, sc: &Scalars) -> Option<RatZ> {
    let sq = |x: &RatZ| x.clone() * x.clone();
    match case {
        CaseId::C1 | CaseId::C4 | CaseId::C8 => Some(sq(&sc.kappa)),
        CaseId::C7 | CaseId::C9 => Some(sc.kappa2.clone()),
        CaseId::C3 => Some(sc.gamma2.clone()),
        CaseId::C4Minus => Some(sq(&sc.gamma)),
        _ => None,
    }
}

pub fn build_solution(
    verdict: &Verdict,
    canonical: &EquationSpec,
    opts: &SolutionOptions,
) -> Result<SolutionFamily, SolutionError> {
    let form = verdict.id();
    let periodic = opts.periodic.clone();
    let n = canonical.n;
    let kind = match verdict {
        Verdict::T1aPower { c } | Verdict::T1cPower { c } => FamilyKind::ExpPower {
            c: pack(constant(c, &form)?),
            n,
            m: canonical.p_deg() as i64,
            ratio: canonical.p_deg() as f64 / n as f64,
            periodic,
        },
        Verdict::T2aInvPower { c } | Verdict::T2bInvPower { c } => FamilyKind::ExpPower {
            c: pack(constant(c, &form)?),
            n,
            m: -(canonical.q_deg() as i64),
            ratio: -(canonical.q_deg() as f64) / n as f64,
            periodic,
        },
        Verdict::T1cChebOdd { p0, .. } => {
            let p0 = *p0 as f64;
            let (base, e) = if opts.negative_base {
                (-(p0 + 0.5), 1.0 / (3.0 + 2.0 * p0))
            } else {
                (p0 + 0.5, 1.0 / (1.0 - 2.0 * p0))
            };
            FamilyKind::HalfSumDelta { base, prefactor: pack(pm_i_pow(opts.plus_i, e)), periodic }
        }
        Verdict::T1cChebEven { p0, .. } => {
            let p0 = *p0 as f64;
            let (base, e) = if opts.negative_base { (-(p0 + 1.0), 1.0 / (2.0 + p0)) } else { (p0 + 1.0, -1.0 / p0) };
            FamilyKind::HalfSumLambda { base, prefactor: pack(pm_i_pow(opts.plus_i, e)), periodic }
        }
        Verdict::T2bDeltaMap(params) => {
            let map = delta_map_for(params, opts.theta, opts.sign)
                .ok_or_else(|| SolutionError::NoClosedForm(format!("{}: slots are not autonomous", form)))?;
            let orbit = iterate_delta_map(&map, opts.seed, opts.orbit_steps);
            FamilyKind::DeltaOrbit { map, seed: pack(opts.seed), orbit }
        }
        Verdict::T2c(case) => {
            let (a, b) = opts.affine;
            match biquad_constant(case.case, &case.scalars) {
                Some(k2) => {
                    let k2 = constant(&k2, &form)?;
                    let p = biquadratic_params(k2)?;
                    FamilyKind::EllipticSn {
                        modulus: pack(p.modulus),
                        tau: pack(p.tau),
                        scale: pack(p.scale),
                        sign: opts.sign,
                        c: pack(a),
                        d: pack(b),
                        phi0: pack(opts.phi0),
                    }
                }
                None => FamilyKind::EllipticWeierstrass { a: pack(a), b: pack(b), phi0: pack(opts.phi0) },
            }
        }
        Verdict::N1 | Verdict::NoSolution { .. } | Verdict::OutOfScopeDEqualsN | Verdict::Unclassified { .. } => {
            return Err(SolutionError::NoClosedForm(form));
        }
    };
    let shell = matches!(kind, FamilyKind::EllipticSn { .. } | FamilyKind::EllipticWeierstrass { .. });
    Ok(SolutionFamily { form, kind, shell })
}

fn unpack(c: [f64; 2]) -> C {
    C::new(c[0], c[1])
}

/// φ(z) solving φ(z+1) = Aφ(z) + B with φ(0) = φ0.
fn affine_orbit(a: C, b: C, phi0: C, z: C) -> Result<C, SolutionError> {
    if (a - 1.0).norm() < 1e-14 {
        return Ok(phi0 + b * z);
    }
    let fixed = b / (1.0 - a);
    Ok((phi0 - fixed) * guard_exp(a.ln() * z)? + fixed)
}

/// Value of the family at z; `Ok(None)` marks a pole.
pub fn eval_solution(sol: &SolutionFamily, z: C) -> Result<Option<C>, SolutionError> {
    let v = match &sol.kind {
        FamilyKind::ExpPower { c, n, m, ratio, periodic } => {
            let root = (unpack(*c).ln() / (*n as i64 - *m) as f64).exp();
            let w = periodic.eval(z) * real_pow(*ratio, z);
            root * guard_exp(w)?
        }
        FamilyKind::HalfSumDelta { base, prefactor, periodic } => {
            let w = periodic.eval(z) * real_pow(*base, z);
            let d2 = unpack(*prefactor).powu(2) * guard_exp(2.0 * w)?;
            (d2 + d2.inv()) / 2.0
        }
        FamilyKind::HalfSumLambda { base, prefactor, periodic } => {
            let w = periodic.eval(z) * real_pow(*base, z);
            let l = unpack(*prefactor) * guard_exp(w)?;
            (l + l.inv()) / 2.0
        }
        FamilyKind::DeltaOrbit { orbit, .. } => {
            let s = z.re.round();
            if z.im != 0.0 || (z.re - s).abs() > 1e-12 || s < 0.0 {
                return Err(SolutionError::Domain(format!(
                    "an orbit family is defined at z = 0, 1, 2, ... only, not at {}",
                    z
                )));
            }
            match orbit.delta(s as usize) {
                Some(d) => half_sum_sq(d),
                None => return Ok(None),
            }
        }
        FamilyKind::EllipticWeierstrass { a, b, phi0 } => {
            let phi = affine_orbit(unpack(*a), unpack(*b), unpack(*phi0), z - 1.0)?;
            match fermat_pair(phi) {
                Ok((h, _)) => h,
                Err(_) => return Ok(None),
            }
        }
        FamilyKind::EllipticSn { modulus, tau, scale, sign, c, d, phi0 } => {
            let phi = affine_orbit(unpack(*c), unpack(*d), unpack(*phi0), z - 1.0)?;
            let s = jacobi_sn(phi + *sign * unpack(*tau), unpack(*modulus))?;
            unpack(*scale) * s
        }
    };
    Ok(v.is_finite().then_some(v))
}

/// Exact fixed point c^{1/(n−m)} of a power family, when it lies in the field.
pub fn exact_constant_solution(verdict: &Verdict, canonical: &EquationSpec) -> Option<RatZ> {
    let (c, m) = match verdict {
        Verdict::T1aPower { c } | Verdict::T1cPower { c } => (c, canonical.p_deg() as i64),
        Verdict::T2aInvPower { c } | Verdict::T2bInvPower { c } => (c, -(canonical.q_deg() as i64)),
        _ => return None,
    };
    let k = canonical.n as i64 - m;
    let root = crate::algebra::roots::nth_root(c.as_const()?, k.unsigned_abs() as u32)?;
    let root = if k < 0 { root.inv()? } else { root };
    Some(RatZ::from_const(root))
}

#[cfg(test)]
mod tests;
