//! Exact pair identities gating the q >= 1 canonical forms, the Chebyshev
//! families, and a float-then-exact search for small instances.

mod chebyshev;
mod search;

pub use chebyshev::{chebyshev_pair, chebyshev_u, ChebParity};
pub use search::{c1_coefficient_count, instance_key, search_instances, FoundInstance, SearchBudget, SearchOutcome};

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Cyclo24, FPoly, Field, RatZ};
use crate::error::IdentityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Rel2b,
    C1,
    C2,
    C3,
    C4,
    C4Minus,
    C5,
    C6,
    C7,
    C8,
    C9,
    OddCheb,
    EvenCheb,
}

impl CaseId {
    pub const ALL: [CaseId; 13] = [
        CaseId::Rel2b,
        CaseId::C1,
        CaseId::C2,
        CaseId::C3,
        CaseId::C4,
        CaseId::C4Minus,
        CaseId::C5,
        CaseId::C6,
        CaseId::C7,
        CaseId::C8,
        CaseId::C9,
        CaseId::OddCheb,
        CaseId::EvenCheb,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CaseId::Rel2b => "2b-rel",
            CaseId::C1 => "2c-1",
            CaseId::C2 => "2c-2",
            CaseId::C3 => "2c-3",
            CaseId::C4 => "2c-4",
            CaseId::C4Minus => "2c-4m",
            CaseId::C5 => "2c-5",
            CaseId::C6 => "2c-6",
            CaseId::C7 => "2c-7",
            CaseId::C8 => "2c-8",
            CaseId::C9 => "2c-9",
            CaseId::OddCheb => "1c-odd",
            CaseId::EvenCheb => "1c-even",
        }
    }

    pub fn parse(s: &str) -> Result<CaseId, IdentityError> {
        CaseId::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| IdentityError::UnknownCase(s.to_string()))
    }

    /// Power carried by every slot.
    pub fn power(self) -> u32 {
        match self {
            CaseId::C5 | CaseId::C6 => 3,
            _ => 2,
        }
    }

    /// Slot names in the order the identity uses them.
    pub fn slots(self) -> &'static [&'static str] {
        match self {
            CaseId::Rel2b => &["P011", "P012", "Q1"],
            CaseId::C2 | CaseId::C5 | CaseId::C6 => &["P0", "Q0", "P1"],
            CaseId::OddCheb | CaseId::EvenCheb => &["P0", "P1"],
            _ => &["P0", "Q0", "P1", "P2"],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A slot known through its power: `slotⁿ = constant · baseⁿ`, base monic.
/// The constant's n-th root need not lie in the field.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSlot {
    pub constant: RatZ,
    pub base: FPoly,
}

impl PowerSlot {
    pub fn from_poly(p: &FPoly, n: u32) -> Self {
        let lc = p.lc();
        let mut c = RatZ::one();
        for _ in 0..n {
            c = c * lc.clone();
        }
        PowerSlot { constant: c, base: p.monic() }
    }

    pub fn new(constant: RatZ, base: FPoly) -> Self {
        PowerSlot { constant, base }
    }

    pub fn power(&self, n: u32) -> FPoly {
        self.base.pow(n).scale(&self.constant)
    }

    pub fn degree(&self) -> usize {
        if self.constant.is_zero() {
            0
        } else {
            self.base.deg()
        }
    }
}

/// Scalars of an identity; unused ones stay at their defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalars {
    pub kappa: RatZ,
    pub gamma: RatZ,
    /// γ² for the (f²−1) case, where γ itself may lie outside the field.
    pub gamma2: RatZ,
    /// κ² for the cases that only ever use the square.
    pub kappa2: RatZ,
    pub eta: RatZ,
    pub k1: u32,
    pub k2: u32,
    pub l0: u32,
}

impl Default for Scalars {
    fn default() -> Self {
        Scalars {
            kappa: RatZ::zero(),
            gamma: RatZ::zero(),
            gamma2: RatZ::zero(),
            kappa2: RatZ::zero(),
            eta: RatZ::from_const(Cyclo24::eta()),
            k1: 1,
            k2: 1,
            l0: 0,
        }
    }
}

/// One identity case with its scalar parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PairIdentity {
    pub case: CaseId,
    pub scalars: Scalars,
}

/// Slot assignment.
pub type Instance = BTreeMap<String, PowerSlot>;

pub fn instance_from_polys(case: CaseId, polys: &[(&str, FPoly)]) -> Instance {
    let n = case.power();
    polys
        .iter()
        .map(|(k, p)| (k.to_string(), PowerSlot::from_poly(p, n)))
        .collect()
}

/// Outcome of exact verification.
#[derive(Clone, Debug, PartialEq)]
pub enum Verification {
    Holds,
    /// Each failing relation with its nonzero difference (left − right).
    Fails(Vec<(String, FPoly)>),
}

impl Verification {
    pub fn holds(&self) -> bool {
        matches!(self, Verification::Holds)
    }
}

fn f_minus(c: RatZ) -> FPoly {
    FPoly::linear_root(c)
}

fn f_plus(c: RatZ) -> FPoly {
    FPoly::linear_root(-c)
}

fn f2_minus(c: RatZ) -> FPoly {
    FPoly::new(vec![-c, RatZ::zero(), RatZ::one()])
}

fn c(v: i64) -> RatZ {
    RatZ::from_i64(v)
}

fn sq(x: &RatZ) -> RatZ {
    x.clone() * x.clone()
}

/// Numerator-side and denominator-side products plus the relations
/// `(name, lhs, rhs)` the case requires.
fn relations(
    id: &PairIdentity,
    s: &dyn Fn(&str) -> FPoly,
) -> Vec<(String, FPoly, FPoly)> {
    let sc = &id.scalars;
    let one = RatZ::one();
    let kb2 = sq(&sc.kappa.shift());
    let gb2 = sq(&sc.gamma.shift());
    let g2b = sc.gamma2.shift();
    let k2b = sc.kappa2.shift();
    let mut out = Vec::new();
    let mut rel = |name: &str, l: FPoly, r: FPoly| out.push((name.to_string(), l, r));
    match id.case {
        CaseId::Rel2b => {
            let l = &s("P011") - &(&s("P012") * &f_minus(one.clone()).pow(sc.k1));
            let r = (&s("Q1") * &f_plus(one).pow(sc.l0)).scale(&(c(2) * RatZ::from_const(Cyclo24::i())));
            rel("P011^2 - P012^2 (f-1)^k1 = 2i Q1^2 (f+1)^l0", l, r);
        }
        CaseId::OddCheb => {
            let l = &(&s("P0") * &f_minus(one.clone())) - &(&s("P1") * &f_plus(one.clone()));
            rel("P0^2 (f-1) - P1^2 (f+1) = 1", l, FPoly::one());
        }
        CaseId::EvenCheb => {
            let l = &(&s("P0") * &f2_minus(one.clone())) - &FPoly::one();
            rel("P0^2 (f^2-1) - 1 = -P1^2", l, -&s("P1"));
        }
        CaseId::C1 => {
            let n = &(&s("P0") * &f_minus(one.clone())) * &f_minus(sc.kappa.clone());
            let d = s("Q0");
            rel("N - D = P1^2 (f+1)(f+kappa)", &n - &d, &(&s("P1") * &f_plus(one)) * &f_plus(sc.kappa.clone()));
            rel("N - kappa^2 D = P2^2", &n - &d.scale(&kb2), s("P2"));
        }
        CaseId::C2 => {
            let n = &(&s("P0") * &f_minus(one.clone()).pow(sc.k1)) * &f_plus(one).pow(sc.k2);
            rel("N - Q0^2 = P1^2", &n - &s("Q0"), s("P1"));
        }
        CaseId::C3 => {
            let n = &s("P0") * &f2_minus(one);
            let d = s("Q0");
            rel("N - D = P1^2 (f^2-gamma^2)", &n - &d, &s("P1") * &f2_minus(sc.gamma2.clone()));
            rel("N - gamma^2 D = P2^2", &n - &d.scale(&g2b), s("P2"));
        }
        CaseId::C4 => {
            let n = &s("P0") * &f_minus(sc.kappa.clone());
            let d = &s("Q0") * &f_minus(one.clone());
            rel("N - D = P1^2 (f+kappa)", &n - &d, &s("P1") * &f_plus(sc.kappa.clone()));
            rel("N - kappa^2 D = P2^2 (f+1)", &n - &d.scale(&kb2), &s("P2") * &f_plus(one));
        }
        CaseId::C4Minus => {
            let n = &s("P0") * &f_plus(one.clone());
            let d = &s("Q0") * &f_minus(one);
            rel("N - D = P1^2 (f-gamma)", &n - &d, &s("P1") * &f_minus(sc.gamma.clone()));
            rel("N - gamma^2 D = P2^2 (f+gamma)", &n - &d.scale(&gb2), &s("P2") * &f_plus(sc.gamma.clone()));
        }
        CaseId::C5 => {
            let n = &s("P0") * &f_minus(one);
            let d = &s("Q0") * &f_minus(sc.eta.clone());
            rel("N - D = P1^3 (f-eta^2)", &n - &d, &s("P1") * &f_minus(sq(&sc.eta)));
        }
        CaseId::C6 => {
            let cube = FPoly::new(vec![-one, RatZ::zero(), RatZ::zero(), RatZ::one()]);
            let n = &s("P0") * &cube;
            rel("N - Q0^3 = P1^3", &n - &s("Q0"), s("P1"));
        }
        CaseId::C7 => {
            let n = &s("P0") * &f2_minus(sc.kappa2.clone());
            let d = &s("Q0") * &f2_minus(one);
            rel("N - D = P1^2", &n - &d, s("P1"));
            rel("N - kappa^2 D = P2^2", &n - &d.scale(&k2b), s("P2"));
        }
        CaseId::C8 => {
            let n = &(&s("P0") * &f_minus(sc.kappa.clone())) * &f_minus(one.clone());
            let d = &(&s("Q0") * &f_plus(sc.kappa.clone())) * &f_plus(one);
            rel("N - D = P1^2", &n - &d, s("P1"));
            rel("N - kappa^2 D = P2^2", &n - &d.scale(&kb2), s("P2"));
        }
        CaseId::C9 => {
            let n = &(&s("P0") * &f2_minus(sc.kappa2.clone())) * &f2_minus(one);
            let q = s("Q0");
            rel("N - Q0^2 = P1^2", &n - &q, s("P1"));
            rel("N - kappa^2 Q0^2 = P2^2", &n - &q.scale(&k2b), s("P2"));
        }
    }
    out
}

fn in_set(x: i64, set: &[i64]) -> bool {
    set.contains(&x)
}

/// Degree constraints and scalar exclusions of each case.
pub fn check_budget(id: &PairIdentity, inst: &Instance) -> Result<(), IdentityError> {
    let case = id.case;
    let deg = |k: &str| -> Result<i64, IdentityError> {
        inst.get(k)
            .map(|s| s.degree() as i64)
            .ok_or_else(|| IdentityError::MissingSlot(k.to_string()))
    };
    for k in case.slots() {
        deg(k)?;
    }
    let bad = |msg: String| {
        Err(IdentityError::DegreeBudget {
            case: case.id().to_string(),
            msg,
        })
    };
    let sc = &id.scalars;
    let is_const_val = |x: &RatZ, v: i64| *x == RatZ::from_i64(v);
    let excl = |x: &RatZ, name: &str| -> Result<(), IdentityError> {
        if x.is_zero() || is_const_val(x, 1) || is_const_val(x, -1) {
            return Err(IdentityError::DegreeBudget {
                case: case.id().to_string(),
                msg: format!("{} must avoid 0 and ±1", name),
            });
        }
        Ok(())
    };
    let n = case.power() as i64;
    match case {
        CaseId::Rel2b => {
            let (a, b, q1) = (deg("P011")?, deg("P012")?, deg("Q1")?);
            let q0 = 2 * q1 + sc.l0 as i64;
            if sc.k1 % 2 == 0 || (sc.l0 != 0 && sc.l0 % 2 == 0) {
                return bad("k1 must be odd and l0 zero or odd".into());
            }
            if 2 * (a + b) + sc.k1 as i64 >= 2 * q0 {
                return bad(format!("2p0 + k1 < 2q0 fails with p0={}, q0={}", a + b, q0));
            }
        }
        CaseId::OddCheb | CaseId::EvenCheb => {
            let (p0, p1) = (deg("P0")?, deg("P1")?);
            let want = if case == CaseId::OddCheb { p0 } else { p0 + 1 };
            if p0 < 1 || p1 != want {
                return bad(format!("degrees p0={}, p1={} do not fit", p0, p1));
            }
        }
        _ => {
            let (p0, q0) = (deg("P0")?, deg("Q0")?);
            let (range, dn, dd, tails): (&[i64], i64, i64, &[(&str, i64)]) = match case {
                CaseId::C1 => (&[-2, -1, 0], 2 * p0 + 2, 2 * q0, &[("P1", 2), ("P2", 0)]),
                CaseId::C2 => (&[-2, -1, 0, 1, 2], 2 * p0 + (sc.k1 + sc.k2) as i64, 2 * q0, &[]),
                CaseId::C3 => (&[-2, -1, 0], 2 * p0 + 2, 2 * q0, &[("P1", 2), ("P2", 0)]),
                CaseId::C4 | CaseId::C4Minus => (&[-1, 0, 1], 2 * p0 + 1, 2 * q0 + 1, &[("P1", 1), ("P2", 1)]),
                CaseId::C5 => (&[-1, 0, 1], 3 * p0 + 1, 3 * q0 + 1, &[("P1", 1)]),
                CaseId::C6 => (&[-2, -1, 0], 3 * p0 + 3, 3 * q0, &[("P1", 0)]),
                CaseId::C7 | CaseId::C8 => (&[-1, 0, 1], 2 * p0 + 2, 2 * q0 + 2, &[("P1", 0), ("P2", 0)]),
                CaseId::C9 => (&[-3, -2, -1], 2 * p0 + 4, 2 * q0, &[("P1", 0), ("P2", 0)]),
                _ => unreachable!(),
            };
            if case != CaseId::C2 && !in_set(p0 - q0, range) {
                return bad(format!("p0 - q0 = {} outside {:?}", p0 - q0, range));
            }
            let d = dn.max(dd);
            for (slot, extra) in tails {
                let v = n * deg(slot)? + extra;
                if v != d && v != d - n {
                    return bad(format!("{}: {}·p + {} = {} not in {{d, d-{}}} with d = {}", slot, n, extra, v, n, d));
                }
            }
            if case == CaseId::C2 && (sc.k1 % 2 == 0 || sc.k2 % 2 == 0) {
                return bad("k1 and k2 must be odd".into());
            }
        }
    }
    match case {
        CaseId::C1 | CaseId::C4 | CaseId::C8 => excl(&sc.kappa, "kappa")?,
        CaseId::C3 | CaseId::C7 | CaseId::C9 => {
            let (v, name) = if case == CaseId::C3 { (&sc.gamma2, "gamma^2") } else { (&sc.kappa2, "kappa^2") };
            if v.is_zero() || is_const_val(v, 1) {
                return bad(format!("{} must avoid 0 and 1", name));
            }
        }
        CaseId::C4Minus => excl(&sc.gamma, "gamma")?,
        CaseId::C5 => {
            let e = &sc.eta;
            if !(e.clone() * e.clone() + e.clone() + RatZ::one()).is_zero() {
                return bad("eta must satisfy eta^2 + eta + 1 = 0".into());
            }
        }
        _ => {}
    }
    if case == CaseId::C4 && is_const_val(&sc.kappa, -1) {
        return bad("kappa = -1 belongs to the gamma variant".into());
    }
    Ok(())
}

/// Expand both sides exactly after the budget check.
pub fn verify_pair_identity(id: &PairIdentity, inst: &Instance) -> Result<Verification, IdentityError> {
    check_budget(id, inst)?;
    Ok(verify_unchecked(id, inst))
}

/// Expansion without the degree budget; used for literal identities.
pub fn verify_unchecked(id: &PairIdentity, inst: &Instance) -> Verification {
    let n = id.case.power();
    let s = |k: &str| inst.get(k).map(|s| s.power(n)).unwrap_or_else(FPoly::zero);
    let fails: Vec<(String, FPoly)> = relations(id, &s)
        .into_iter()
        .filter_map(|(name, l, r)| {
            let diff = &l - &r;
            (!diff.is_zero()).then_some((name, diff))
        })
        .collect();
    if fails.is_empty() {
        Verification::Holds
    } else {
        Verification::Fails(fails)
    }
}
