use crate::algebra::{FPoly, RatZ};
use crate::identity::{verify_pair_identity, CaseId, Instance, PairIdentity, PowerSlot, Scalars};

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaMapParams {
    pub k1: u32,
    pub l0: u32,
    pub q1: FPoly,
    pub p011: PowerSlot,
    pub p012: PowerSlot,
}

/// A matched q ≥ 1, n | p−q canonical form with its verified slots.
#[derive(Clone, Debug, PartialEq)]
pub struct Case2c {
    pub case: CaseId,
    pub scalars: Scalars,
    pub slots: Instance,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    N1,
    T1aPower { c: RatZ },
    T1cPower { c: RatZ },
    T1cChebOdd { p0: usize, slots: Instance },
    T1cChebEven { p0: usize, slots: Instance },
    T2aInvPower { c: RatZ },
    T2bInvPower { c: RatZ },
    T2bDeltaMap(DeltaMapParams),
    T2c(Case2c),
    NoSolution { reason: String, citation: String },
    OutOfScopeDEqualsN,
    Unclassified { failed_condition: String },
}

impl Verdict {
    pub fn id(&self) -> String {
        match self {
            Verdict::N1 => "N1".into(),
            Verdict::T1aPower { .. } => "T1a-power".into(),
            Verdict::T1cPower { .. } => "T1c-power".into(),
            Verdict::T1cChebOdd { .. } => "T1c-cheb-odd".into(),
            Verdict::T1cChebEven { .. } => "T1c-cheb-even".into(),
            Verdict::T2aInvPower { .. } => "T2a-inv-power".into(),
            Verdict::T2bInvPower { .. } => "T2b-inv-power".into(),
            Verdict::T2bDeltaMap(_) => "T2b-delta-map".into(),
            Verdict::T2c(c) => {
                let num = match c.case {
                    CaseId::C4Minus => "4",
                    other => other.id().trim_start_matches("2c-"),
                };
                format!("T2c-{}", num)
            }
            Verdict::NoSolution { .. } => "no-transcendental-meromorphic-solution".into(),
            Verdict::OutOfScopeDEqualsN => "out-of-scope-d-equals-n".into(),
            Verdict::Unclassified { .. } => "unclassified".into(),
        }
    }

    /// The identity that gates this verdict, if it has one.
    pub fn gating_identity(&self) -> Option<(PairIdentity, Instance)> {
        match self {
            Verdict::T1cChebOdd { slots, .. } => Some((
                PairIdentity { case: CaseId::OddCheb, scalars: Scalars::default() },
                slots.clone(),
            )),
            Verdict::T1cChebEven { slots, .. } => Some((
                PairIdentity { case: CaseId::EvenCheb, scalars: Scalars::default() },
                slots.clone(),
            )),
            Verdict::T2bDeltaMap(d) => {
                let mut inst = Instance::new();
                inst.insert("P011".into(), d.p011.clone());
                inst.insert("P012".into(), d.p012.clone());
                inst.insert("Q1".into(), PowerSlot::from_poly(&d.q1, 2));
                Some((
                    PairIdentity {
                        case: CaseId::Rel2b,
                        scalars: Scalars { k1: d.k1, l0: d.l0, ..Scalars::default() },
                    },
                    inst,
                ))
            }
            Verdict::T2c(c) => Some((PairIdentity { case: c.case, scalars: c.scalars.clone() }, c.slots.clone())),
            _ => None,
        }
    }

    /// Re-run the gating identity exactly; `None` when there is none.
    pub fn side_condition_holds(&self) -> Option<bool> {
        self.gating_identity()
            .map(|(id, inst)| verify_pair_identity(&id, &inst).map(|v| v.holds()).unwrap_or(false))
    }
}
