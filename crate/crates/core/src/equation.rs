use std::fmt;

use crate::algebra::{FPoly, FRat, Field, RatZ};

/// `f(z+1)^n = P(z,f)/Q(z,f)` with P, Q coprime and Q monic.
#[derive(Clone, PartialEq, Debug)]
pub struct EquationSpec {
    pub n: u32,
    pub p: FPoly,
    pub q: FPoly,
}

impl EquationSpec {
    /// Canonical spec; also returns the common factor that was cancelled.
    pub fn new(n: u32, p: FPoly, q: FPoly) -> (Self, FPoly) {
        let (r, g) = FRat::canonical(p, q);
        (
            EquationSpec {
                n,
                p: r.num().clone(),
                q: r.den().clone(),
            },
            g,
        )
    }

    pub fn canonical(n: u32, p: FPoly, q: FPoly) -> Self {
        Self::new(n, p, q).0
    }

    pub fn p_deg(&self) -> usize {
        self.p.deg()
    }

    pub fn q_deg(&self) -> usize {
        self.q.deg()
    }

    /// deg_f of P/Q.
    pub fn d(&self) -> usize {
        self.p_deg().max(self.q_deg())
    }

    pub fn rhs(&self) -> FRat {
        FRat::new(self.p.clone(), self.q.clone()).expect("nonzero denominator")
    }

    pub fn is_autonomous(&self) -> bool {
        self.p.is_autonomous() && self.q.is_autonomous()
    }
}

/// Rescale so that Q is monic, leaving P/Q unchanged.
pub fn normalize_monic_denominator(spec: &EquationSpec) -> EquationSpec {
    let lc = spec.q.lc();
    if lc.is_one() || lc.is_zero() {
        return spec.clone();
    }
    let inv: RatZ = lc.inv().expect("nonzero");
    EquationSpec {
        n: spec.n,
        p: spec.p.scale(&inv),
        q: spec.q.scale(&inv),
    }
}

impl fmt::Display for EquationSpec {
    /// Parser-compatible text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_one() {
            write!(f, "F^{} = {}", self.n, self.p)
        } else {
            write!(f, "F^{} = ({})/({})", self.n, self.p, self.q)
        }
    }
}
