//! Small-degree instance search: multistart Levenberg–Marquardt on the
//! coefficient-matching system under each of the four field embeddings,
//! coordinate recovery from matched conjugate solutions, then exact
//! verification. Only verified instances are returned.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_budget, verify_pair_identity, CaseId, Instance, PairIdentity, PowerSlot, Scalars};
use crate::algebra::roots::{recognize, EMB};
use crate::algebra::{Cyclo24, FPoly, Field, Poly, RatZ};
use crate::error::IdentityError;

#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Random starts per embedding and degree assignment.
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { starts: 64, seed: 0, max_iter: 100 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoundInstance {
    pub identity: PairIdentity,
    pub slots: Instance,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub instances: Vec<FoundInstance>,
    pub note: String,
}

const TOL: f64 = 1e-12;
const ACCEPT: f64 = 1e-11;
const MAX_COMBOS: usize = 4096;

type CP = Vec<C>;

fn cadd(a: &CP, b: &CP) -> CP {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
        .collect()
}

fn cscale(a: &CP, s: C) -> CP {
    a.iter().map(|x| x * s).collect()
}

fn csub(a: &CP, b: &CP) -> CP {
    cadd(a, &cscale(b, C::new(-1.0, 0.0)))
}

fn cmul(a: &CP, b: &CP) -> CP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn cpow(a: &CP, e: u32) -> CP {
    (0..e).fold(vec![C::new(1.0, 0.0)], |acc, _| cmul(&acc, a))
}

fn cconst(c: C) -> CP {
    vec![c]
}

/// f − c
fn clin(c: C) -> CP {
    vec![-c, C::new(1.0, 0.0)]
}

/// f² − c
fn cquad(c: C) -> CP {
    vec![-c, C::default(), C::new(1.0, 0.0)]
}

/// Numeric copies of the scalars under one embedding.
#[derive(Clone, Copy)]
struct NumScalars {
    kappa: C,
    kappa2: C,
    gamma: C,
    gamma2: C,
    eta: C,
    two_i: C,
    k1: u32,
    k2: u32,
    l0: u32,
}

fn embed_ratz(x: &RatZ, j: u32) -> C {
    x.as_const().map(|c| c.embed(j)).unwrap_or_default()
}

impl NumScalars {
    fn new(sc: &Scalars, j: u32) -> Self {
        NumScalars {
            kappa: embed_ratz(&sc.kappa, j),
            kappa2: embed_ratz(&sc.kappa2, j),
            gamma: embed_ratz(&sc.gamma, j),
            gamma2: embed_ratz(&sc.gamma2, j),
            eta: embed_ratz(&sc.eta, j),
            two_i: Cyclo24::i().embed(j) * 2.0,
            k1: sc.k1,
            k2: sc.k2,
            l0: sc.l0,
        }
    }
}

/// Differences `lhs − rhs` of every relation, numerically and autonomously.
fn relations_num(case: CaseId, sc: &NumScalars, s: &dyn Fn(&str) -> CP) -> Vec<CP> {
    let one = C::new(1.0, 0.0);
    let m1 = clin(one);
    let p1 = clin(-one);
    match case {
        CaseId::Rel2b => {
            let l = csub(&s("P011"), &cmul(&s("P012"), &cpow(&m1, sc.k1)));
            let r = cscale(&cmul(&s("Q1"), &cpow(&p1, sc.l0)), sc.two_i);
            vec![csub(&l, &r)]
        }
        CaseId::OddCheb => vec![csub(&csub(&cmul(&s("P0"), &m1), &cmul(&s("P1"), &p1)), &cconst(one))],
        CaseId::EvenCheb => vec![cadd(&csub(&cmul(&s("P0"), &cquad(one)), &cconst(one)), &s("P1"))],
        _ => {
            let k2 = sc.kappa * sc.kappa;
            let (n, d) = match case {
                CaseId::C1 => (cmul(&cmul(&s("P0"), &m1), &clin(sc.kappa)), s("Q0")),
                CaseId::C2 => (cmul(&cmul(&s("P0"), &cpow(&m1, sc.k1)), &cpow(&p1, sc.k2)), s("Q0")),
                CaseId::C3 => (cmul(&s("P0"), &cquad(one)), s("Q0")),
                CaseId::C4 => (cmul(&s("P0"), &clin(sc.kappa)), cmul(&s("Q0"), &m1)),
                CaseId::C4Minus => (cmul(&s("P0"), &p1), cmul(&s("Q0"), &m1)),
                CaseId::C5 => (cmul(&s("P0"), &m1), cmul(&s("Q0"), &clin(sc.eta))),
                CaseId::C6 => (cmul(&s("P0"), &vec![-one, C::default(), C::default(), one]), s("Q0")),
                CaseId::C7 => (cmul(&s("P0"), &cquad(sc.kappa2)), cmul(&s("Q0"), &cquad(one))),
                CaseId::C8 => (
                    cmul(&cmul(&s("P0"), &clin(sc.kappa)), &m1),
                    cmul(&cmul(&s("Q0"), &clin(-sc.kappa)), &p1),
                ),
                CaseId::C9 => (cmul(&cmul(&s("P0"), &cquad(sc.kappa2)), &cquad(one)), s("Q0")),
                _ => unreachable!(),
            };
            let diff = csub(&n, &d);
            let with = |c: C| csub(&n, &cscale(&d, c));
            match case {
                CaseId::C1 => vec![
                    csub(&diff, &cmul(&cmul(&s("P1"), &p1), &clin(-sc.kappa))),
                    csub(&with(k2), &s("P2")),
                ],
                CaseId::C2 | CaseId::C6 => vec![csub(&diff, &s("P1"))],
                CaseId::C3 => vec![
                    csub(&diff, &cmul(&s("P1"), &cquad(sc.gamma2))),
                    csub(&with(sc.gamma2), &s("P2")),
                ],
                CaseId::C4 => vec![
                    csub(&diff, &cmul(&s("P1"), &clin(-sc.kappa))),
                    csub(&with(k2), &cmul(&s("P2"), &p1)),
                ],
                CaseId::C4Minus => vec![
                    csub(&diff, &cmul(&s("P1"), &clin(sc.gamma))),
                    csub(&with(sc.gamma * sc.gamma), &cmul(&s("P2"), &clin(-sc.gamma))),
                ],
                CaseId::C5 => vec![csub(&diff, &cmul(&s("P1"), &clin(sc.eta * sc.eta)))],
                CaseId::C7 | CaseId::C9 => vec![csub(&diff, &s("P1")), csub(&with(sc.kappa2), &s("P2"))],
                CaseId::C8 => vec![csub(&diff, &s("P1")), csub(&with(k2), &s("P2"))],
                _ => unreachable!(),
            }
        }
    }
}

/// Scalar the search treats as unknown, if the case has one.
fn scalar_unknown(case: CaseId) -> Option<&'static str> {
    match case {
        CaseId::C1 | CaseId::C4 | CaseId::C8 => Some("kappa"),
        CaseId::C7 | CaseId::C9 => Some("kappa2"),
        CaseId::C3 => Some("gamma2"),
        CaseId::C4Minus => Some("gamma"),
        _ => None,
    }
}

fn q_side(name: &str) -> bool {
    name == "Q0" || name == "Q1"
}

/// Unknown layout: per slot an optional constant then the non-leading
/// coefficients of the monic base, then the scalar unknown.
#[derive(Clone, Debug)]
struct Layout {
    slots: Vec<(&'static str, usize)>,
    scalar: Option<&'static str>,
}

impl Layout {
    /// Solver coordinates: every slot as a full root polynomial `R` with
    /// value `Rⁿ`; Q-side roots keep leading coefficient one.
    fn solver_len(&self) -> usize {
        self.slots.iter().map(|(k, d)| d + 1 + usize::from(!q_side(k))).sum::<usize>() - self.slots.len()
            + usize::from(self.scalar.is_some())
    }

    /// Solver coordinates to (constant, monic base) coordinates; `None` when
    /// a leading coefficient degenerates.
    fn to_coords(&self, x: &[C], n: u32) -> Option<Vec<C>> {
        let mut out = Vec::with_capacity(x.len());
        let mut k = 0;
        for &(name, d) in &self.slots {
            if q_side(name) {
                out.extend_from_slice(&x[k..k + d]);
                k += d;
            } else {
                let lc = x[k + d];
                if lc.norm() < 1e-4 {
                    return None;
                }
                out.push(lc.powu(n));
                out.extend(x[k..k + d].iter().map(|c| c / lc));
                k += d + 1;
            }
        }
        if self.scalar.is_some() {
            out.push(x[k]);
        }
        Some(out)
    }

    fn split<'a, T: Clone>(&self, x: &'a [T], one: T) -> (Vec<(&'static str, T, &'a [T])>, Option<T>) {
        let mut k = 0;
        let mut out = Vec::new();
        for &(name, d) in &self.slots {
            let c = if q_side(name) {
                one.clone()
            } else {
                k += 1;
                x[k - 1].clone()
            };
            out.push((name, c, &x[k..k + d]));
            k += d;
        }
        (out, self.scalar.map(|_| x[k].clone()))
    }
}

fn set_scalar_num(sc: &mut NumScalars, which: Option<&str>, v: Option<C>) {
    if let (Some(w), Some(v)) = (which, v) {
        match w {
            "kappa" => sc.kappa = v,
            "kappa2" => sc.kappa2 = v,
            "gamma" => sc.gamma = v,
            _ => sc.gamma2 = v,
        }
    }
}

fn set_scalar(sc: &mut Scalars, which: Option<&str>, v: Option<RatZ>) {
    if let (Some(w), Some(v)) = (which, v) {
        match w {
            "kappa" => sc.kappa = v,
            "kappa2" => sc.kappa2 = v,
            "gamma" => sc.gamma = v,
            _ => sc.gamma2 = v,
        }
    }
}

fn residual_generic(case: CaseId, base: &Scalars, lay: &Layout, j: u32, x: &[C]) -> Vec<C> {
    let n = case.power();
    let mut sc = NumScalars::new(base, j);
    let mut roots: Vec<(&str, CP)> = Vec::new();
    let mut k = 0;
    for &(name, d) in &lay.slots {
        let mut r: CP = x[k..k + d].to_vec();
        k += d;
        if q_side(name) {
            r.push(C::new(1.0, 0.0));
        } else {
            r.push(x[k]);
            k += 1;
        }
        roots.push((name, r));
    }
    set_scalar_num(&mut sc, lay.scalar, lay.scalar.map(|_| x[k]));
    let lookup = |name: &str| -> CP {
        let (_, r) = roots.iter().find(|(k, _)| *k == name).expect("slot in layout");
        cpow(r, n)
    };
    relations_num(case, &sc, &lookup).concat()
}

/// Exact instance from recovered coordinates.
fn build_generic(case: CaseId, base: &Scalars, lay: &Layout, x: &[Cyclo24]) -> Option<FoundInstance> {
    let (parts, scal) = lay.split(x, Cyclo24::one());
    let mut sc = base.clone();
    set_scalar(&mut sc, lay.scalar, scal.map(RatZ::from_const));
    let mut slots = Instance::new();
    for (name, c, b) in parts {
        let mut coeffs: Vec<RatZ> = b.iter().cloned().map(RatZ::from_const).collect();
        coeffs.push(RatZ::one());
        slots.insert(name.to_string(), PowerSlot::new(RatZ::from_const(c), FPoly::new(coeffs)));
    }
    let identity = PairIdentity { case, scalars: sc };
    verify_pair_identity(&identity, &slots)
        .ok()
        .filter(|v| v.holds())
        .map(|_| FoundInstance { identity, slots })
}

fn dist(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Damped Gauss–Newton in real coordinates on the residual deflated by the
/// roots already found; `Some` when the undeflated residual vanishes.
fn newton(f: &dyn Fn(&[C]) -> Vec<C>, x0: Vec<C>, deflate: &[Vec<C>], max_iter: usize) -> Option<Vec<C>> {
    let to_c = |y: &[f64]| -> Vec<C> { y.chunks(2).map(|p| C::new(p[0], p[1])).collect() };
    let eval = |y: &[f64]| -> Vec<f64> {
        let x = to_c(y);
        let fac: f64 = deflate
            .iter()
            .map(|d| 1.0 + 1.0 / dist(&x, d).powi(2).max(1e-300))
            .product();
        f(&x).iter().flat_map(|z| [z.re * fac, z.im * fac]).collect()
    };
    let nrm = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut y: Vec<f64> = x0.iter().flat_map(|z| [z.re, z.im]).collect();
    let k = y.len();
    let mut r = eval(&y);
    let mut nr = nrm(&r);
    for _ in 0..max_iter {
        if nr < TOL || !nr.is_finite() {
            break;
        }
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, k);
        for c in 0..k {
            let h = 1e-7 * y[c].abs().max(1.0);
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[c] += h;
            ym[c] -= h;
            let (rp, rm) = (eval(&yp), eval(&ym));
            for row in 0..m {
                jac[(row, c)] = (rp[row] - rm[row]) / (2.0 * h);
            }
        }
        let rhs = -DVector::from_column_slice(&r);
        let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-14) else { break };
        // backtrack until the residual decreases
        let mut t = 1.0;
        let accepted = loop {
            let yn: Vec<f64> = y.iter().zip(step.iter()).map(|(a, b)| a + t * b).collect();
            let rn = eval(&yn);
            let nn = nrm(&rn);
            if nn.is_finite() && nn <= nr * (1.0 - 1e-4 * t) {
                break Some((yn, rn, nn));
            }
            t /= 2.0;
            if t < 1e-6 {
                break None;
            }
        };
        match accepted {
            Some((yn, rn, nn)) => (y, r, nr) = (yn, rn, nn),
            None => break,
        }
    }
    let x = to_c(&y);
    let raw = f(&x).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (raw < ACCEPT && x.iter().all(|z| z.norm() < 1e6)).then_some(x)
}

type Post<'a> = &'a dyn Fn(&[C]) -> Option<Vec<C>>;

/// Multistart with deflation: every converged root, degenerate or not, is
/// deflated so later starts are pushed towards new ones.
fn multistart(
    f: &dyn Fn(&[C]) -> Vec<C>,
    post: Post,
    k: usize,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<C>> {
    let mut sols: Vec<Vec<C>> = Vec::new();
    let mut found: Vec<Vec<C>> = Vec::new();
    for _ in 0..budget.starts {
        let x0: Vec<C> = (0..k).map(|_| C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let Some(x) = newton(f, x0, &found, budget.max_iter) else { continue };
        if let Some(c) = post(&x) {
            let dup = sols
                .iter()
                .any(|s| s.iter().zip(&c).all(|(a, b)| (a - b).norm() < 1e-6 * (1.0 + a.norm())));
            if !dup {
                sols.push(c);
            }
        }
        if found.len() < 48 {
            found.push(x);
        }
    }
    sols
}

/// Solve under every embedding, then recover coordinates from conjugate
/// quadruples and keep what `build` verifies.
fn solve_and_recover(
    k: usize,
    residual: &dyn Fn(u32, &[C]) -> Vec<C>,
    post: Post,
    build: &dyn Fn(&[Cyclo24]) -> Option<FoundInstance>,
    budget: &SearchBudget,
    salt: u64,
) -> Vec<FoundInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let sols: Vec<Vec<Vec<C>>> = EMB
        .iter()
        .map(|&j| multistart(&|x: &[C]| residual(j, x), post, k, budget, &mut rng))
        .collect();
    let mut out = Vec::new();
    if sols.iter().any(|s| s.is_empty()) {
        return out;
    }
    for a in &sols[0] {
        let mut tried = 0;
        for b in &sols[1] {
            for c in &sols[2] {
                for d in &sols[3] {
                    tried += 1;
                    if tried > MAX_COMBOS {
                        break;
                    }
                    let coords: Option<Vec<Cyclo24>> =
                        (0..a.len()).map(|m| recognize([a[m], b[m], c[m], d[m]])).collect();
                    if let Some(x) = coords.and_then(|x| build(&x)) {
                        if !out.contains(&x) {
                            out.push(x);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Tail-slot degree assignments the budget admits for the given (p0, q0).
fn degree_assignments(id: &PairIdentity, p0: usize, q0: usize) -> Result<Vec<Vec<(&'static str, usize)>>, IdentityError> {
    let case = id.case;
    let mut sc = id.scalars.clone();
    // placeholder values clear the scalar exclusions during the degree scan
    let two = RatZ::from_i64(2);
    for w in ["kappa", "kappa2", "gamma", "gamma2"] {
        set_scalar(&mut sc, Some(w), Some(two.clone()));
    }
    let probe = PairIdentity { case, scalars: sc };
    let mono = |d: usize| PowerSlot::new(RatZ::one(), FPoly::monomial(RatZ::one(), d));
    let bound = 3 * (p0 + q0) + 8;
    let mut found = Vec::new();
    let mut last_err = None;
    let fixed: Vec<(&'static str, usize)> = match case {
        CaseId::Rel2b => Vec::new(),
        CaseId::OddCheb | CaseId::EvenCheb => vec![("P0", p0)],
        _ => vec![("P0", p0), ("Q0", q0)],
    };
    let free: Vec<&'static str> = case
        .slots()
        .iter()
        .copied()
        .filter(|s| !fixed.iter().any(|(k, _)| k == s))
        .collect();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut assign = fixed.clone();
        assign.extend(free.iter().copied().zip(idx.iter().copied()));
        let ok = match case {
            // P011/P012 split p0, Q1 carries (q0 − l0)/2
            CaseId::Rel2b => {
                assign[0].1 + assign[1].1 == p0 && 2 * assign[2].1 + id.scalars.l0 as usize == q0
            }
            _ => true,
        };
        if ok {
            let inst: Instance = assign.iter().map(|(k, d)| (k.to_string(), mono(*d))).collect();
            match check_budget(&probe, &inst) {
                Ok(()) => found.push(assign),
                Err(e) => last_err = Some(e),
            }
        }
        // odometer over the free degrees
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return if found.is_empty() {
                    Err(last_err.unwrap_or(IdentityError::DegreeBudget {
                        case: case.id().into(),
                        msg: "no admissible degrees".into(),
                    }))
                } else {
                    Ok(found)
                };
            }
            idx[pos] += 1;
            if idx[pos] <= bound {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Search verified instances of `id` with P0, Q0 of degrees (p0, q0).
/// For the pair relation p0 is deg P011 + deg P012 and q0 is deg Q0; for the
/// Chebyshev families q0 is ignored.
pub fn search_instances(
    id: &PairIdentity,
    degrees: (usize, usize),
    budget: &SearchBudget,
) -> Result<SearchOutcome, IdentityError> {
    let (p0, q0) = degrees;
    let assignments = degree_assignments(id, p0, q0)?;
    let mut instances: Vec<FoundInstance> = Vec::new();
    if id.case == CaseId::C6 && p0 % 9 == 1 && q0 == p0 + 2 {
        instances.extend(search_c6_ansatz((p0 - 1) / 9, budget));
    }
    if instances.is_empty() {
        for (salt, assign) in assignments.iter().enumerate() {
            let lay = Layout { slots: assign.clone(), scalar: scalar_unknown(id.case) };
            let k = lay.solver_len();
            let n = id.case.power();
            let res = |j: u32, x: &[C]| residual_generic(id.case, &id.scalars, &lay, j, x);
            let post = |x: &[C]| lay.to_coords(x, n);
            let build = |x: &[Cyclo24]| build_generic(id.case, &id.scalars, &lay, x);
            for f in solve_and_recover(k, &res, &post, &build, budget, salt as u64 + 1) {
                if !instances.contains(&f) {
                    instances.push(f);
                }
            }
        }
    }
    instances.sort_by_key(instance_key);
    let note = if instances.is_empty() {
        format!("budget exhausted: no verified instance within {} starts per system", budget.starts)
    } else {
        format!("{} verified instance(s)", instances.len())
    };
    Ok(SearchOutcome { instances, note })
}

pub fn instance_key(f: &FoundInstance) -> String {
    let mut keys = BTreeSet::new();
    for (k, s) in &f.slots {
        keys.insert(format!("{}={}|{}", k, s.constant, s.base));
    }
    keys.into_iter().collect::<Vec<_>>().join(";")
}

/// Case 2c-6 through its cube-factor split: with g = f³,
/// `X₀ + η X₁ + η² X₂ = 0` where `X_k = a_k F_k(g)³` times (g − 1) on one
/// index and g on another, `P1 + η^k Q0 = X_k`, and Q0 monic.
fn search_c6_ansatz(s: usize, budget: &SearchBudget) -> Vec<FoundInstance> {
    let mut out = Vec::new();
    let k = 3 + 3 * s;
    for t in 0..3usize {
        for u in (0..3usize).filter(|&u| u != t) {
            let res = |j: u32, x: &[C]| c6_residual(s, t, u, Cyclo24::eta().embed(j), x);
            let build = |x: &[Cyclo24]| c6_build(s, t, u, x);
            let salt = 100 + (3 * t + u) as u64;
            let post = |x: &[C]| Some(x.to_vec());
            for f in solve_and_recover(k, &res, &post, &build, budget, salt) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

fn c6_parts<T: Clone>(s: usize, x: &[T]) -> ([T; 3], [&[T]; 3]) {
    (
        [x[0].clone(), x[1].clone(), x[2].clone()],
        [&x[3..3 + s], &x[3 + s..3 + 2 * s], &x[3 + 2 * s..3 + 3 * s]],
    )
}

fn c6_residual(s: usize, t: usize, u: usize, eta: C, x: &[C]) -> Vec<C> {
    let one = C::new(1.0, 0.0);
    let (a, f) = c6_parts(s, x);
    let xs: Vec<CP> = (0..3)
        .map(|m| {
            let mut base: CP = f[m].to_vec();
            base.push(one);
            let mut p = cscale(&cpow(&base, 3), a[m]);
            if m == t {
                p = cmul(&p, &clin(one));
            }
            if m == u {
                p = cmul(&p, &vec![C::default(), one]);
            }
            p
        })
        .collect();
    let sum = cadd(&cadd(&xs[0], &cscale(&xs[1], eta)), &cscale(&xs[2], eta * eta));
    let top = 3 * s + 1;
    let q0 = cscale(&csub(&xs[0], &xs[1]), one / (one - eta));
    let mut r = sum;
    r.resize(top + 1, C::default());
    r.push(q0.get(top).copied().unwrap_or_default() - one);
    r
}

fn c6_build(s: usize, t: usize, u: usize, x: &[Cyclo24]) -> Option<FoundInstance> {
    let (a, f) = c6_parts(s, x);
    let one = RatZ::one();
    let eta = RatZ::from_const(Cyclo24::eta());
    // polynomial in g = f³ lifted to f
    let lift = |p: &Poly<Cyclo24>| -> FPoly {
        let mut c = vec![RatZ::zero(); 3 * p.coeffs().len().max(1)];
        for (m, v) in p.coeffs().iter().enumerate() {
            c[3 * m] = RatZ::from_const(v.clone());
        }
        FPoly::new(c)
    };
    let f3m1 = FPoly::new(vec![-one.clone(), RatZ::zero(), RatZ::zero(), one.clone()]);
    let mut bases = Vec::new();
    let mut xs = Vec::new();
    for m in 0..3 {
        let mut c: Vec<Cyclo24> = f[m].to_vec();
        c.push(Cyclo24::one());
        let mut base = lift(&Poly::new(c));
        if m == u {
            base = &base * &FPoly::x();
        }
        let mut xm = base.pow(3).scale(&RatZ::from_const(a[m].clone()));
        if m == t {
            xm = &xm * &f3m1;
        }
        bases.push(base);
        xs.push(xm);
    }
    let q0 = (&xs[0] - &xs[1]).scale(&(one.clone() / (one.clone() - eta)));
    let p1 = &xs[0] - &q0;
    if q0.is_zero() || p1.is_zero() || !q0.is_monic() {
        return None;
    }
    let c0 = a.iter().cloned().fold(Cyclo24::one(), |acc, v| acc * v);
    let p0base = bases.iter().fold(FPoly::one(), |acc, b| &acc * b);
    let mut slots = Instance::new();
    slots.insert("P0".into(), PowerSlot::new(RatZ::from_const(c0), p0base));
    slots.insert("Q0".into(), PowerSlot::from_poly(&q0, 3));
    slots.insert("P1".into(), PowerSlot::from_poly(&p1, 3));
    let identity = PairIdentity { case: CaseId::C6, scalars: Scalars::default() };
    verify_pair_identity(&identity, &slots)
        .ok()
        .filter(|v| v.holds())
        .map(|_| FoundInstance { identity, slots })
}

/// Paper-style bookkeeping for the (f+1)(f+κ) case at degrees (p0, q0) in
/// the generic situation: unknowns are A, κ and the roots of P0, Q0, P1, P2;
/// equations are the non-leading coefficients of both relations.
pub fn c1_coefficient_count(p0: usize, q0: usize) -> (usize, usize) {
    let d = (2 * p0 + 2).max(2 * q0);
    let (p1, p2) = ((d - 2) / 2, d / 2);
    (2 + p0 + q0 + p1 + p2, 2 * d)
}
