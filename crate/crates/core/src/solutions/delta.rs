//! First-order maps for δ in the half-sum parametrization f = (δ² + δ⁻²)/2,
//! where F = (δ⁴ + 1)/(2δ²) is f itself and h = (δ² − 1)/(√2 δ) is a square
//! root of f − 1.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::algebra::roots::roots_in_field;
use crate::algebra::{Cyclo24, Field, Poly};
use crate::classifier::DeltaMapParams;
use crate::identity::PowerSlot;

type KPoly = Poly<Cyclo24>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DeltaMapKind {
    /// δ̄ = s·i^{1/2}·(P021(F) + θ P022(F) h^{k1}) / (P021(F) − θ P022(F) h^{k1})
    Split { p021: Vec<[f64; 2]>, p022: Vec<[f64; 2]> },
    /// δ̄ = s·(−i)^{1/2}·(P023(F) δ^{t1} + θ P024(F)) / (P023(F) δ^{t1} − θ P024(F))
    SplitT { p023: Vec<[f64; 2]>, p024: Vec<[f64; 2]>, t1: i32 },
    /// δ̄² = i (P011(F) + θ P012(F) h^{k1}) / (P011(F) − θ P012(F) h^{k1}),
    /// δ̄ the principal root times s. Used when no exact split exists.
    Squared { p011: Vec<[f64; 2]>, p012: Vec<[f64; 2]> },
    /// δ̄ = (aδ + b)/(cδ + d)
    Mobius { a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaMap {
    #[serde(flatten)]
    pub kind: DeltaMapKind,
    pub k1: u32,
    /// θ = ±1
    pub theta: f64,
    /// global sign s = ±1
    pub sign: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaOrbit {
    pub deltas: Vec<[f64; 2]>,
    /// Step at which the map hit a pole, if it did.
    pub truncated_at: Option<usize>,
}

impl DeltaOrbit {
    pub fn delta(&self, s: usize) -> Option<C> {
        self.deltas.get(s).map(|d| C::new(d[0], d[1]))
    }

    /// f along the orbit.
    pub fn f_values(&self) -> Vec<C> {
        (0..self.deltas.len()).filter_map(|s| self.delta(s)).map(half_sum_sq).collect()
    }
}

pub(crate) fn pack(c: C) -> [f64; 2] {
    [c.re, c.im]
}

fn unpack(c: &[f64; 2]) -> C {
    C::new(c[0], c[1])
}

fn horner(p: &[[f64; 2]], x: C) -> C {
    p.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * x + unpack(c))
}

/// (δ² + δ⁻²)/2
pub fn half_sum_sq(d: C) -> C {
    let d2 = d * d;
    (d2 + d2.inv()) / 2.0
}

const POLE: f64 = 1e-12;

fn ratio(num: C, den: C) -> Option<C> {
    (den.norm() > POLE * (1.0 + num.norm())).then(|| num / den).filter(|r| r.is_finite())
}

impl DeltaMap {
    /// One step δ → δ̄; `None` at a pole of the map.
    pub fn step(&self, d: C) -> Option<C> {
        if let DeltaMapKind::Mobius { a, b, c, d: dd } = &self.kind {
            return ratio(unpack(a) * d + unpack(b), unpack(c) * d + unpack(dd));
        }
        if d.norm() < POLE || !d.is_finite() {
            return None;
        }
        let f = half_sum_sq(d);
        let h = (d * d - 1.0) / (2f64.sqrt() * d);
        let hk = h.powu(self.k1);
        let th = self.theta;
        let i = C::i();
        let r = match &self.kind {
            DeltaMapKind::Split { p021, p022 } => {
                let (a, b) = (horner(p021, f), horner(p022, f) * hk);
                ratio(a + th * b, a - th * b)? * i.sqrt()
            }
            DeltaMapKind::SplitT { p023, p024, t1 } => {
                let a = horner(p023, f) * d.powi(*t1);
                let b = horner(p024, f);
                ratio(a + th * b, a - th * b)? * (-i).sqrt()
            }
            DeltaMapKind::Squared { p011, p012 } => {
                let (a, b) = (horner(p011, f), horner(p012, f) * hk);
                (ratio(a + th * b, a - th * b)? * i).sqrt()
            }
            DeltaMapKind::Mobius { .. } => unreachable!(),
        };
        Some(self.sign * r).filter(|v| v.is_finite())
    }
}

/// δ(z0), δ(z0+1), …: `steps` applications of the map after the seed.
pub fn iterate_delta_map(map: &DeltaMap, seed: C, steps: usize) -> DeltaOrbit {
    let mut deltas = vec![pack(seed)];
    let mut d = seed;
    for s in 0..steps {
        match map.step(d) {
            Some(next) => {
                deltas.push(pack(next));
                d = next;
            }
            None => {
                return DeltaOrbit { deltas, truncated_at: Some(s) };
            }
        }
    }
    DeltaOrbit { deltas, truncated_at: None }
}

fn slot_num(s: &PowerSlot) -> Option<Vec<[f64; 2]>> {
    let root = s.constant.as_const()?.to_complex().sqrt();
    let base = s.base.to_const_poly()?;
    Some(base.coeffs().iter().map(|c| pack(c.to_complex() * root)).collect())
}

/// (c, B) with slot value c·B², B over the constants.
fn slot_parts(s: &PowerSlot) -> Option<(Cyclo24, KPoly)> {
    Some((s.constant.as_const()?.clone(), s.base.to_const_poly()?))
}

/// Roots with multiplicity, when the polynomial splits over the field.
fn linear_roots(p: &KPoly) -> Option<Vec<Cyclo24>> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in roots_in_field(p) {
        let lin = KPoly::linear_root(r.clone());
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            out.push(r.clone());
        }
    }
    rest.is_constant().then_some(out)
}

fn prod_sq(roots: &[Cyclo24]) -> KPoly {
    roots.iter().fold(KPoly::one(), |acc, r| &acc * &KPoly::linear_root(r.clone()).pow(2))
}

fn subsets(roots: &[Cyclo24]) -> impl Iterator<Item = (Vec<Cyclo24>, Vec<Cyclo24>)> + '_ {
    (0u32..1 << roots.len()).map(move |mask| {
        let (mut s, mut t) = (Vec::new(), Vec::new());
        for (j, r) in roots.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s.push(r.clone());
            } else {
                t.push(r.clone());
            }
        }
        (s, t)
    })
}

fn prod(roots: &[Cyclo24]) -> KPoly {
    roots.iter().fold(KPoly::one(), |acc, r| &acc * &KPoly::linear_root(r.clone()))
}

/// Numeric (a, b) with a² = √c_self·α, b² = √c_self·β and a·b = √c_other·lc,
/// accepted only when the squared relation c_self·α·β = c_other·lc² holds
/// exactly. Principal roots throughout, matching the numeric slot values.
fn split_constants(alpha: &Cyclo24, beta: &Cyclo24, c_self: &Cyclo24, c_other: &Cyclo24, lc: &Cyclo24) -> Option<(C, C)> {
    if alpha.is_zero() || beta.is_zero() {
        return None;
    }
    if c_self.clone() * alpha.clone() * beta.clone() != c_other.clone() * lc.clone() * lc.clone() {
        return None;
    }
    let a = (c_self.to_complex().sqrt() * alpha.to_complex()).sqrt();
    let b = c_other.to_complex().sqrt() * lc.to_complex() / a;
    Some((a, b))
}

fn scaled(p: &KPoly, k: C) -> Vec<[f64; 2]> {
    p.coeffs().iter().map(|c| pack(c.to_complex() * k)).collect()
}

/// Laurent polynomial in δ over the field: Σ c[j] δ^{lo + j}.
#[derive(Clone, Debug)]
struct Laurent {
    lo: i64,
    c: Vec<Cyclo24>,
}

impl Laurent {
    fn mono(k: Cyclo24, e: i64) -> Self {
        Laurent { lo: e, c: vec![k] }
    }

    fn get(&self, e: i64) -> Cyclo24 {
        usize::try_from(e - self.lo).ok().and_then(|j| self.c.get(j).cloned()).unwrap_or_else(Cyclo24::zero)
    }

    fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        Laurent { lo, c: (lo..=hi).map(|e| self.get(e) + o.get(e)).collect() }
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut c = vec![Cyclo24::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + x.clone() * y.clone();
            }
        }
        Laurent { lo: self.lo + o.lo, c }
    }

    fn scale(&self, k: &Cyclo24) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|x| x.clone() * k.clone()).collect() }
    }

    fn shift(&self, e: i64) -> Laurent {
        Laurent { lo: self.lo + e, c: self.c.clone() }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..=self.hi()).filter(|&e| !self.get(e).is_zero())
    }

    /// p(F) with F = (δ² + δ⁻²)/2.
    fn eval_f(p: &KPoly) -> Laurent {
        let half = Cyclo24::from_ratio(1, 2);
        let f = Laurent::mono(half.clone(), -2).add(&Laurent::mono(half, 2));
        p.coeffs()
            .iter()
            .rev()
            .fold(Laurent::mono(Cyclo24::zero(), 0), |acc, k| acc.mul(&f).add(&Laurent::mono(k.clone(), 0)))
    }
}

/// Solve x·X + y·Y = L exactly, if some solution reproduces L.
fn solve_two(x: &Laurent, y: &Laurent, l: &Laurent) -> Option<(Cyclo24, Cyclo24)> {
    let ex: Vec<i64> = x.exponents().chain(y.exponents()).collect();
    for (i, &e1) in ex.iter().enumerate() {
        for &e2 in &ex[i + 1..] {
            let det = x.get(e1) * y.get(e2) - x.get(e2) * y.get(e1);
            if det.is_zero() {
                continue;
            }
            let a = (l.get(e1) * y.get(e2) - l.get(e2) * y.get(e1)) / det.clone();
            let b = (x.get(e1) * l.get(e2) - x.get(e2) * l.get(e1)) / det;
            let rest = l.add(&x.scale(&-a.clone())).add(&y.scale(&-b.clone()));
            return rest.is_zero().then_some((a, b));
        }
    }
    None
}

const MAX_ROOTS: usize = 12;

/// Look for the exact factorization behind a single-valued δ map.
pub fn exact_split(params: &DeltaMapParams) -> Option<DeltaMapKind> {
    let (c11, b11) = slot_parts(&params.p011)?;
    let (c12, b12) = slot_parts(&params.p012)?;
    let k1 = params.k1;
    if params.l0 == 0 {
        // 2·B11 = α·U + β·V with U = ∏_S (f−r)², V = ∏_rest (f−r)² (f−1)^{k1},
        // the roots r running over B12
        let roots = linear_roots(&b12)?;
        if roots.len() > MAX_ROOTS {
            return None;
        }
        let target = b11.scale(&Cyclo24::from_i64(2));
        let fm1 = KPoly::linear_root(Cyclo24::one()).pow(k1);
        for (s, t) in subsets(&roots) {
            let u = prod_sq(&s);
            let v = &prod_sq(&t) * &fm1;
            let (hi, lo, hi_is_u) = if u.deg() > v.deg() { (&u, &v, true) } else { (&v, &u, false) };
            let xh = target.coeff(hi.deg());
            let rest = &target - &hi.scale(&xh);
            let xl = rest.coeff(lo.deg());
            if !(&rest - &lo.scale(&xl)).is_zero() {
                continue;
            }
            let (alpha, beta) = if hi_is_u { (xh, xl) } else { (xl, xh) };
            if let Some((a, b)) = split_constants(&alpha, &beta, &c11, &c12, &b12.lc()) {
                return Some(DeltaMapKind::Split { p021: scaled(&prod(&s), a), p022: scaled(&prod(&t), b) });
            }
        }
        None
    } else {
        // B12(F) h^{k1} = ½[α U(F) δ^{t1} + β V(F) δ^{−t1}], roots over B11
        let roots = linear_roots(&b11)?;
        if roots.len() > MAX_ROOTS {
            return None;
        }
        let s2 = Cyclo24::sqrt2();
        let h = Laurent::mono(s2.clone() / Cyclo24::from_i64(2), 1)
            .add(&Laurent::mono(-(s2 / Cyclo24::from_i64(2)), -1));
        let hk = (0..k1).fold(Laurent::mono(Cyclo24::one(), 0), |acc, _| acc.mul(&h));
        let l = Laurent::eval_f(&b12).mul(&hk);
        let half = Cyclo24::from_ratio(1, 2);
        let bound = (4 * b11.deg() + 2 * b12.deg()) as i32 + k1 as i32 + 2;
        for (s, t) in subsets(&roots) {
            let u = Laurent::eval_f(&prod_sq(&s)).scale(&half);
            let v = Laurent::eval_f(&prod_sq(&t)).scale(&half);
            for t1 in -bound..=bound {
                let x = u.shift(t1 as i64);
                let y = v.shift(-(t1 as i64));
                let Some((alpha, beta)) = solve_two(&x, &y, &l) else { continue };
                if let Some((a, b)) = split_constants(&alpha, &beta, &c12, &c11, &b11.lc()) {
                    return Some(DeltaMapKind::SplitT { p023: scaled(&prod(&s), a), p024: scaled(&prod(&t), b), t1 });
                }
            }
        }
        None
    }
}

/// The δ map for a delta-map verdict: the exact split when one exists,
/// otherwise the squared form with the principal root.
pub fn delta_map_for(params: &DeltaMapParams, theta: f64, sign: f64) -> Option<DeltaMap> {
    let kind = match exact_split(params) {
        Some(k) => k,
        None => DeltaMapKind::Squared { p011: slot_num(&params.p011)?, p012: slot_num(&params.p012)? },
    };
    Some(DeltaMap { kind, k1: params.k1, theta, sign })
}
