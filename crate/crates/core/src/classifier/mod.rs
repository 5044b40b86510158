//! Decision tree from an equation to a canonical form, a structural
//! no-solution verdict, or an out-of-scope report.

mod structure;
mod transform;
mod verdict;

pub use structure::{factor_structure, root_polynomial, split_roots, FactorStructure, ResidualFactor};
pub use transform::{apply_step, reduce_gcd_root, Step, Transformation};
pub use verdict::{Case2c, DeltaMapParams, Verdict};

use crate::algebra::{is_perfect_power, squarefree_decompose, Cyclo24, FPoly, Field, RatZ};
use crate::equation::EquationSpec;
use crate::identity::{
    chebyshev_pair, verify_pair_identity, CaseId, ChebParity, Instance, PairIdentity, PowerSlot, Scalars,
    Verification,
};
use structure::{multiplicity, nth_root_in_field, sqrt_in_field};

pub const CITE_ROOT_COUNT: &str = "residual-root count against the Nevanlinna degree inequality";
pub const CITE_T1: &str = "q = 0 analysis: only the pure power and Chebyshev-type forms admit transcendental solutions";
pub const CITE_T2A: &str = "q >= 1, n > d analysis: P has no nonzero root and Q is a power of f";
pub const CITE_T2B: &str = "q >= 1, n < d, n not dividing |p - q|: the case p > q cannot occur and n = 2 forces a single residual root";
pub const CITE_T2C: &str = "q >= 1, n < d, n dividing |p - q|: root-configuration case analysis";

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub input: EquationSpec,
    /// Factor structure of the input; absent when n = 1.
    pub structure: Option<FactorStructure>,
    pub trace: Transformation,
    pub canonical: EquationSpec,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

enum Flow {
    Done(Verdict),
    Again,
}

struct Run {
    spec: EquationSpec,
    trace: Transformation,
    notes: Vec<String>,
    reciprocals: u32,
}

fn no_solution(reason: impl Into<String>, citation: &str) -> Flow {
    Flow::Done(Verdict::NoSolution { reason: reason.into(), citation: citation.to_string() })
}

fn unclassified(cond: impl Into<String>) -> Flow {
    Flow::Done(Verdict::Unclassified { failed_condition: cond.into() })
}

pub fn classify(spec: &EquationSpec) -> ClassificationReport {
    let structure = (spec.n >= 2).then(|| factor_structure(spec));
    let mut run = Run { spec: spec.clone(), trace: Transformation::default(), notes: Vec::new(), reciprocals: 0 };
    let verdict = loop {
        match run.step() {
            Flow::Done(v) => break v,
            Flow::Again => continue,
        }
    };
    if let Some(false) = verdict.side_condition_holds() {
        // every gated verdict is built from a verified identity
        unreachable!("side condition failed to re-verify for {}", verdict.id());
    }
    ClassificationReport {
        input: spec.clone(),
        structure,
        trace: run.trace,
        canonical: run.spec,
        verdict,
        notes: run.notes,
    }
}

fn scaled(spec: &EquationSpec, alpha: &RatZ) -> EquationSpec {
    if alpha.is_one() {
        return spec.clone();
    }
    apply_step(spec, &Step::LinearScale { alpha: alpha.clone() }).expect("nonzero scale")
}

/// Nonzero candidates for the root sent to 1, with 1 itself first.
fn normalizers(roots: &[RatZ]) -> Vec<RatZ> {
    let mut v: Vec<RatZ> = roots.iter().filter(|r| !r.is_zero()).cloned().collect();
    if let Some(k) = v.iter().position(|r| r.is_one()) {
        let one = v.remove(k);
        v.insert(0, one);
    }
    v
}

fn c_i(v: i64) -> RatZ {
    RatZ::from_i64(v)
}

fn lin(root: RatZ) -> FPoly {
    FPoly::linear_root(root)
}

fn quad(c0: RatZ) -> FPoly {
    FPoly::new(vec![-c0, RatZ::zero(), RatZ::one()])
}

fn sq(x: &RatZ) -> RatZ {
    x.clone() * x.clone()
}

/// `poly / cofactor` as an n-th power slot.
fn power_slot(poly: &FPoly, cofactor: &FPoly, n: u32) -> Option<PowerSlot> {
    if poly.is_zero() {
        return Some(PowerSlot::new(RatZ::zero(), FPoly::one()));
    }
    let q = poly.exact_div(cofactor)?;
    let pp = is_perfect_power(&q, n).ok()??;
    Some(PowerSlot::new(pp.constant, pp.base))
}

/// Product of the squarefree factors of odd multiplicity, monic.
fn odd_part(p: &FPoly) -> FPoly {
    if p.is_constant() {
        return FPoly::one();
    }
    squarefree_decompose(p)
        .expect("nonzero")
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(FPoly::one(), |acc, (g, _)| &acc * &g)
}

fn monomial_constant(p: &FPoly) -> Option<RatZ> {
    let lc = p.lc();
    (*p == FPoly::monomial(lc.clone(), p.deg())).then_some(lc)
}

fn is_even(p: &FPoly) -> bool {
    *p == p.negate_var()
}

/// Match the canonical spec against one q ≥ 1 case and verify it exactly.
fn try_case(spec: &EquationSpec, case: CaseId, mut sc: Scalars) -> Result<Case2c, String> {
    let n = case.power();
    let one = RatZ::one();
    let f1m = lin(one.clone());
    let f1p = lin(-one.clone());
    let (cn, cd) = match case {
        CaseId::C1 => (&f1m * &lin(sc.kappa.clone()), FPoly::one()),
        CaseId::C2 => (&f1m.pow(sc.k1) * &f1p.pow(sc.k2), FPoly::one()),
        CaseId::C3 => (quad(one.clone()), FPoly::one()),
        CaseId::C4 => (lin(sc.kappa.clone()), f1m.clone()),
        CaseId::C4Minus => (f1p.clone(), f1m.clone()),
        CaseId::C5 => (f1m.clone(), lin(sc.eta.clone())),
        CaseId::C6 => (FPoly::new(vec![-one.clone(), RatZ::zero(), RatZ::zero(), one.clone()]), FPoly::one()),
        CaseId::C7 => (quad(sc.kappa2.clone()), quad(one.clone())),
        CaseId::C8 => (&lin(sc.kappa.clone()) * &f1m, &lin(-sc.kappa.clone()) * &f1p),
        CaseId::C9 => (&quad(sc.kappa2.clone()) * &quad(one.clone()), FPoly::one()),
        _ => return Err(format!("{} is not a q >= 1 case", case)),
    };
    let p0 = power_slot(&spec.p, &cn, n).ok_or("P over its residual cofactor is not an n-th power")?;
    let q0 = power_slot(&spec.q, &cd, n).ok_or("Q over its residual cofactor is not an n-th power")?;
    let (nn, dd) = (&spec.p, &spec.q);
    let diff = nn - dd;
    let with = |c: &RatZ| nn - &dd.scale(c);
    let mut inst = Instance::new();
    inst.insert("P0".into(), p0);
    inst.insert("Q0".into(), q0);
    let mut put = |name: &str, poly: FPoly, cof: FPoly| -> Result<(), String> {
        let s = power_slot(&poly, &cof, n)
            .ok_or_else(|| format!("{} does not factor as the case requires", name))?;
        inst.insert(name.into(), s);
        Ok(())
    };
    match case {
        CaseId::C1 => {
            put("P1", diff, &f1p * &lin(-sc.kappa.clone()))?;
            put("P2", with(&sq(&sc.kappa.shift())), FPoly::one())?;
        }
        CaseId::C2 | CaseId::C6 => put("P1", diff, FPoly::one())?,
        CaseId::C3 => {
            let odd = odd_part(&diff);
            if odd.deg() != 2 || !odd.coeff(1).is_zero() {
                return Err("N - D has no factor f^2 - gamma^2 of odd multiplicity".into());
            }
            sc.gamma2 = -odd.coeff(0);
            put("P1", diff, odd)?;
            put("P2", with(&sc.gamma2.shift()), FPoly::one())?;
        }
        CaseId::C4 => {
            put("P1", diff, lin(-sc.kappa.clone()))?;
            put("P2", with(&sq(&sc.kappa.shift())), f1p)?;
        }
        CaseId::C4Minus => {
            let odd = odd_part(&diff);
            if odd.deg() != 1 {
                return Err("N - D has no linear factor f - gamma of odd multiplicity".into());
            }
            sc.gamma = -odd.coeff(0);
            put("P1", diff, odd)?;
            put("P2", with(&sq(&sc.gamma.shift())), lin(-sc.gamma.clone()))?;
        }
        CaseId::C5 => put("P1", diff, lin(sq(&sc.eta)))?,
        CaseId::C7 | CaseId::C9 => {
            put("P1", diff, FPoly::one())?;
            put("P2", with(&sc.kappa2.shift()), FPoly::one())?;
        }
        CaseId::C8 => {
            put("P1", diff, FPoly::one())?;
            put("P2", with(&sq(&sc.kappa.shift())), FPoly::one())?;
        }
        _ => unreachable!(),
    }
    let id = PairIdentity { case, scalars: sc };
    match verify_pair_identity(&id, &inst) {
        Ok(Verification::Holds) => Ok(Case2c { case, scalars: id.scalars, slots: inst }),
        Ok(Verification::Fails(f)) => Err(format!("identity {} fails: {}", case, f[0].0)),
        Err(e) => Err(e.to_string()),
    }
}

impl Run {
    fn commit(&mut self, step: Step) {
        self.spec = apply_step(&self.spec, &step).expect("classifier steps are valid");
        self.trace.steps.push(step);
    }

    fn commit_scale(&mut self, alpha: &RatZ) {
        if !alpha.is_one() {
            self.commit(Step::LinearScale { alpha: alpha.clone() });
        }
    }

    fn reciprocal(&mut self) -> Flow {
        if self.reciprocals >= 2 {
            return unclassified("reciprocal transformation did not settle the orientation");
        }
        self.reciprocals += 1;
        self.commit(Step::Reciprocal);
        Flow::Again
    }

    fn step(&mut self) -> Flow {
        let s = self.spec.clone();
        let n = s.n;
        if n == 1 {
            return Flow::Done(Verdict::N1);
        }
        let fs = factor_structure(&s);
        if fs.gcd_k > 1 {
            let step = transform::kth_root_step(&s, fs.gcd_k);
            if let Step::KthRoot { root: None, constant, k } = &step {
                self.notes.push(format!(
                    "the {}-th root of the leading constant {} is not in the field; it is omitted from later constants",
                    k, constant
                ));
            }
            self.commit(step);
            return Flow::Again;
        }
        let d = s.d();
        if d == 1 {
            self.commit(Step::NegateZ);
            return Flow::Again;
        }
        let (p, q) = (s.p_deg(), s.q_deg());
        // the Picard argument behind this exclusion does not use d != n
        if q >= 1 && p > q && (p - q) % n as usize != 0 {
            return no_solution("p > q >= 1 with n not dividing p - q", CITE_T2B);
        }
        if d as u32 == n {
            return Flow::Done(Verdict::OutOfScopeDEqualsN);
        }
        if q == 0 {
            return if (n as usize) > p { self.t1a(&s) } else { self.t1c(&s, &fs) };
        }
        if n as usize > d {
            return self.t2a(&s);
        }
        if (p as i64 - q as i64).rem_euclid(n as i64) != 0 {
            self.t2b(&s, &fs)
        } else {
            self.t2c(&s, &fs)
        }
    }

    fn t1a(&mut self, s: &EquationSpec) -> Flow {
        match monomial_constant(&s.p) {
            Some(c) => Flow::Done(Verdict::T1aPower { c }),
            None => no_solution("P has a nonzero residual root", CITE_ROOT_COUNT),
        }
    }

    fn t1c(&mut self, s: &EquationSpec, fs: &FactorStructure) -> Flow {
        if let Some(c) = monomial_constant(&s.p) {
            return Flow::Done(Verdict::T1cPower { c });
        }
        if s.n >= 3 {
            return no_solution("for n >= 3 the right side must be c f^p", CITE_T1);
        }
        if fs.zero_flags.0 {
            return no_solution("a zero residual root forces P = c f^p", CITE_T1);
        }
        let odd = s.p_deg() % 2 == 1;
        let rp = &fs.residual_p;
        if rp.iter().any(|r| r.order != 1) {
            return no_solution("residual roots of P must be simple", CITE_T1);
        }
        let roots = root_polynomial(rp);
        let alpha = if odd {
            if roots.deg() != 1 {
                return no_solution("p odd needs exactly one residual root", CITE_T1);
            }
            -roots.coeff(0)
        } else {
            if roots.deg() != 2 || !is_even(&roots) {
                return no_solution("p even needs two residual roots with sum zero", CITE_T1);
            }
            match sqrt_in_field(&-roots.coeff(0)) {
                Some(a) => a,
                None => return unclassified(format!("a square root of {} is not in the field", -roots.coeff(0))),
            }
        };
        let t = scaled(s, &alpha);
        let (parity, cof) = if odd {
            (ChebParity::Odd, lin(RatZ::one()))
        } else {
            (ChebParity::Even, quad(RatZ::one()))
        };
        let p0 = power_slot(&t.p, &cof, 2).expect("structure guarantees a square");
        let deg = p0.base.deg();
        let (c0, c1) = chebyshev_pair(deg as u32, parity).expect("p0 >= 1 here");
        if PowerSlot::from_poly(&c0, 2) != p0 {
            return no_solution(format!("P0 of degree {} is not the Chebyshev-type polynomial", deg), CITE_T1);
        }
        let mut slots = Instance::new();
        slots.insert("P0".into(), p0);
        slots.insert("P1".into(), PowerSlot::from_poly(&c1, 2));
        let case = if odd { CaseId::OddCheb } else { CaseId::EvenCheb };
        let id = PairIdentity { case, scalars: Scalars::default() };
        if !verify_pair_identity(&id, &slots).map(|v| v.holds()).unwrap_or(false) {
            return no_solution(format!("identity {} fails", case), CITE_T1);
        }
        self.commit_scale(&alpha);
        Flow::Done(if odd {
            Verdict::T1cChebOdd { p0: deg, slots }
        } else {
            Verdict::T1cChebEven { p0: deg, slots }
        })
    }

    fn t2a(&mut self, s: &EquationSpec) -> Flow {
        if s.p.is_constant() && monomial_constant(&s.q).is_some() {
            Flow::Done(Verdict::T2aInvPower { c: s.p.coeff(0) })
        } else {
            no_solution("P must be constant and Q a pure power of f", CITE_T2A)
        }
    }

    fn t2b(&mut self, s: &EquationSpec, fs: &FactorStructure) -> Flow {
        if s.p.is_constant() && monomial_constant(&s.q).is_some() {
            return Flow::Done(Verdict::T2bInvPower { c: s.p.coeff(0) });
        }
        if s.n >= 3 {
            return no_solution("for n >= 3 the right side must be c f^-q", CITE_T2B);
        }
        let (np, nq) = (fs.numerator_roots(), fs.denominator_roots());
        if np == 0 && nq == 1 {
            return no_solution("the shape P0^2/(Q0^2 (f - beta)^l1) is eliminated", CITE_T2B);
        }
        if np != 1 || nq != 0 {
            return no_solution(format!("N_c must be 1 with a numerator root, found {} + {}", np, nq), CITE_T2B);
        }
        let alpha = -fs.residual_p[0].factor.coeff(0);
        if alpha.is_zero() {
            return no_solution("the residual root must be nonzero", CITE_T2B);
        }
        let t = scaled(s, &alpha);
        match delta_map(&t) {
            Ok(params) => {
                self.commit_scale(&alpha);
                Flow::Done(Verdict::T2bDeltaMap(params))
            }
            Err(Flow::Done(v)) => Flow::Done(v),
            Err(Flow::Again) => unreachable!(),
        }
    }

    fn t2c(&mut self, s: &EquationSpec, fs: &FactorStructure) -> Flow {
        let n = s.n;
        if n >= 4 {
            return no_solution("no form with n dividing |p - q| exists for n >= 4", CITE_T2C);
        }
        if !fs.all_orders_one() {
            return no_solution("residual roots must be simple in this shape", CITE_T2C);
        }
        let (np, nq) = (fs.numerator_roots(), fs.denominator_roots());
        let rn = root_polynomial(&fs.residual_p);
        let rd = root_polynomial(&fs.residual_q);
        if n == 3 {
            return match (np, nq) {
                (1, 1) => {
                    let (a, b) = (-rn.coeff(0), -rd.coeff(0));
                    if a.is_zero() {
                        return no_solution("the numerator root must be nonzero", CITE_T2C);
                    }
                    let eta = b / a.clone();
                    let sc = Scalars { eta, ..Scalars::default() };
                    self.finish_case(s, &a, CaseId::C5, sc)
                }
                (3, 0) => {
                    if !rn.coeff(1).is_zero() || !rn.coeff(2).is_zero() {
                        return no_solution("the three roots are not an eta-orbit", CITE_T2C);
                    }
                    let a = -rn.coeff(0);
                    match nth_root_in_field(&a, 3) {
                        Some(r) => self.finish_case(s, &r, CaseId::C6, Scalars::default()),
                        None => unclassified(format!("a cube root of {} is not in the field", a)),
                    }
                }
                (0, 3) => self.reciprocal(),
                _ => no_solution(format!("n = 3 shape with {} + {} residual roots is eliminated", np, nq), CITE_T2C),
            };
        }
        match (np, nq) {
            (2, 0) => self.two_numerator_roots(s, &rn),
            (0, 2) | (0, 4) => self.reciprocal(),
            (1, 1) => {
                let (a, b) = (-rn.coeff(0), -rd.coeff(0));
                if b.is_zero() {
                    return no_solution("the denominator root must be nonzero", CITE_T2C);
                }
                let kappa = a / b.clone();
                if kappa == c_i(-1) {
                    self.finish_case(s, &b, CaseId::C4Minus, Scalars::default())
                } else {
                    self.finish_case(s, &b, CaseId::C4, Scalars { kappa, ..Scalars::default() })
                }
            }
            (4, 0) => {
                if !is_even(&rn) {
                    return no_solution("the four roots do not pair as +-", CITE_T2C);
                }
                // roots of u^2 + c2 u + c0 in u = f^2
                let u = FPoly::new(vec![rn.coeff(0), rn.coeff(2), RatZ::one()]);
                let Some(us) = split_roots(&u) else {
                    return unclassified("the squared root pairs are not in the field");
                };
                let mut last = None;
                for (j, uj) in us.iter().enumerate() {
                    let Some(b) = sqrt_in_field(uj) else { continue };
                    if b.is_zero() {
                        continue;
                    }
                    let kappa2 = us[1 - j].clone() / uj.clone();
                    match self.try_scaled(s, &b, CaseId::C9, Scalars { kappa2, ..Scalars::default() }) {
                        Ok(v) => return Flow::Done(v),
                        Err(e) => last = Some(e),
                    }
                }
                match last {
                    Some(e) => no_solution(e, CITE_T2C),
                    None => unclassified("no root pair has its square root in the field"),
                }
            }
            (2, 2) => {
                if is_even(&rn) && is_even(&rd) {
                    let b2 = -rd.coeff(0);
                    let Some(b) = sqrt_in_field(&b2) else {
                        return unclassified(format!("a square root of {} is not in the field", b2));
                    };
                    let kappa2 = -rn.coeff(0) / b2;
                    self.finish_case(s, &b, CaseId::C7, Scalars { kappa2, ..Scalars::default() })
                } else if rd == rn.negate_var().monic() {
                    let Some(roots) = split_roots(&rn) else {
                        return unclassified("the numerator roots are not in the field");
                    };
                    let mut last = String::from("both numerator roots are zero");
                    for r in normalizers(&roots) {
                        let other = roots.iter().find(|x| **x != r).cloned().unwrap_or_else(|| r.clone());
                        let kappa = other / r.clone();
                        match self.try_scaled(s, &r, CaseId::C8, Scalars { kappa, ..Scalars::default() }) {
                            Ok(v) => return Flow::Done(v),
                            Err(e) => last = e,
                        }
                    }
                    no_solution(last, CITE_T2C)
                } else {
                    no_solution("no +- pairing between numerator and denominator roots", CITE_T2C)
                }
            }
            (3, 1) | (1, 3) => no_solution("the shape with three roots on one side and one on the other is eliminated", CITE_T2C),
            _ => no_solution(format!("n = 2 shape with {} + {} residual roots is eliminated", np, nq), CITE_T2C),
        }
    }

    fn two_numerator_roots(&mut self, s: &EquationSpec, rn: &FPoly) -> Flow {
        if is_even(rn) {
            let a2 = -rn.coeff(0);
            let Some(a) = sqrt_in_field(&a2) else {
                return unclassified(format!("a square root of {} is not in the field", a2));
            };
            let mut last = String::new();
            for alpha in normalizers(&[a.clone(), -a.clone()]) {
                // full multiplicities, so that P0 avoids both residual roots
                let k1 = multiplicity(&s.p, &alpha);
                let k2 = multiplicity(&s.p, &-alpha.clone());
                match self.try_scaled(s, &alpha, CaseId::C2, Scalars { k1, k2, ..Scalars::default() }) {
                    Ok(v) => return Flow::Done(v),
                    Err(e) => last = e,
                }
                match self.try_scaled(s, &alpha, CaseId::C3, Scalars::default()) {
                    Ok(v) => return Flow::Done(v),
                    Err(e) => last = format!("{}; {}", last, e),
                }
            }
            return no_solution(last, CITE_T2C);
        }
        let Some(roots) = split_roots(rn) else {
            return unclassified("the two numerator roots are not in the field");
        };
        let mut last = String::from("both numerator roots are zero");
        for r in normalizers(&roots) {
            let other = roots.iter().find(|x| **x != r).cloned().expect("two distinct roots");
            let kappa = other / r.clone();
            match self.try_scaled(s, &r, CaseId::C1, Scalars { kappa, ..Scalars::default() }) {
                Ok(v) => return Flow::Done(v),
                Err(e) => last = e,
            }
        }
        no_solution(last, CITE_T2C)
    }

    fn try_scaled(&mut self, s: &EquationSpec, alpha: &RatZ, case: CaseId, sc: Scalars) -> Result<Verdict, String> {
        let t = scaled(s, alpha);
        let c = try_case(&t, case, sc)?;
        self.commit_scale(alpha);
        Ok(Verdict::T2c(c))
    }

    fn finish_case(&mut self, s: &EquationSpec, alpha: &RatZ, case: CaseId, sc: Scalars) -> Flow {
        match self.try_scaled(s, alpha, case, sc) {
            Ok(v) => Flow::Done(v),
            Err(e) => no_solution(e, CITE_T2C),
        }
    }
}

/// Split M = M1·M2 on the scaled spec `f̄² = A'·M²(f−1)^k1 / Q0²` and solve
/// `2i·Q0 = A2·M1² − B2·M2²(f−1)^k1` with `A2·B2 = A'`.
fn delta_map(t: &EquationSpec) -> Result<DeltaMapParams, Flow> {
    let fs = factor_structure(t);
    let k1 = multiplicity(&t.p, &RatZ::one());
    let a_prime = fs.lc.clone();
    let Some(m) = power_slot(&t.p, &lin(RatZ::one()).pow(k1), 2).map(|s| s.base) else {
        return Err(no_solution("P/(f-1)^k1 is not a square", CITE_T2B));
    };
    let q0 = fs.q0.clone();
    let g1p = lin(-RatZ::one());
    let mut l0 = 0u32;
    let mut rest = q0.clone();
    while let Some(r) = rest.exact_div(&g1p) {
        rest = r;
        l0 += 1;
    }
    if l0 != 0 && l0 % 2 == 0 {
        return Err(no_solution("the order l0 of f+1 in Q0 must be zero or odd", CITE_T2B));
    }
    let Some(q1) = is_perfect_power(&rest, 2).ok().flatten().map(|pp| pp.base) else {
        return Err(no_solution("Q0/(f+1)^l0 is not a square", CITE_T2B));
    };
    // coprime atoms of M: linear factors where they split, else whole squarefree parts
    let mut atoms: Vec<FPoly> = Vec::new();
    if !m.is_constant() {
        for (g, e) in squarefree_decompose(&m).expect("nonzero") {
            match split_roots(&g) {
                Some(rs) => atoms.extend(rs.into_iter().map(|r| lin(r).pow(e))),
                None => atoms.push(g.pow(e)),
            }
        }
    }
    if atoms.len() > 12 {
        return Err(unclassified("too many coprime factors of P0 to enumerate its splits"));
    }
    let two_i = RatZ::from_const(Cyclo24::i()) * c_i(2);
    let target = q0.scale(&two_i);
    let tail = lin(RatZ::one()).pow(k1);
    for mask in 0u32..(1 << atoms.len()) {
        let (mut m1, mut m2) = (FPoly::one(), FPoly::one());
        for (j, a) in atoms.iter().enumerate() {
            if mask & (1 << j) != 0 {
                m1 = &m1 * a;
            } else {
                m2 = &m2 * a;
            }
        }
        let x = m1.pow(2);
        let y = &m2.pow(2) * &tail;
        let Some((a2, b2)) = solve_two_term(&target, &x, &y) else { continue };
        if a2.clone() * b2.clone() != a_prime {
            continue;
        }
        let params = DeltaMapParams {
            k1,
            l0,
            q1: q1.clone(),
            p011: PowerSlot::new(a2, m1),
            p012: PowerSlot::new(b2, m2),
        };
        if verdict::Verdict::T2bDeltaMap(params.clone()).side_condition_holds() == Some(true) {
            return Ok(params);
        }
    }
    Err(no_solution(
        "no split P0 = P011 P012 satisfies 2i Q0 = P011^2 - P012^2 (f-1)^k1",
        CITE_T2B,
    ))
}

/// Constants with `t = a·x − b·y`, both nonzero; x and y differ in degree.
fn solve_two_term(t: &FPoly, x: &FPoly, y: &FPoly) -> Option<(RatZ, RatZ)> {
    let (dx, dy) = (x.deg(), y.deg());
    if t.is_zero() || t.deg() > dx.max(dy) {
        return None;
    }
    let (a, b) = if dx > dy {
        let a = t.coeff(dx) / x.lc();
        let r = &x.scale(&a) - t;
        (a, r.coeff(dy) / y.lc())
    } else {
        let b = -(t.coeff(dy) / y.lc());
        let r = t + &y.scale(&b);
        (r.coeff(dx) / x.lc(), b)
    };
    if a.is_zero() || b.is_zero() {
        return None;
    }
    (&(&x.scale(&a) - &y.scale(&b)) - t).is_zero().then_some((a, b))
}
