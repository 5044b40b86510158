use num_integer::Integer;

use crate::algebra::roots::roots_in_field;
use crate::algebra::{squarefree_decompose, FPoly, Field, RatZ};
use crate::equation::EquationSpec;

/// A residual factor with its multiplicity reduced mod n (never zero).
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualFactor {
    pub factor: FPoly,
    pub order: u32,
}

/// `P = lc · P0ⁿ · ∏ αᵢ^{kᵢ}` and `Q = Q0ⁿ · ∏ βⱼ^{lⱼ}` with `0 < kᵢ, lⱼ < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorStructure {
    pub n: u32,
    pub lc: RatZ,
    pub p0: FPoly,
    pub q0: FPoly,
    pub p0_deg: usize,
    pub q0_deg: usize,
    pub residual_p: Vec<ResidualFactor>,
    pub residual_q: Vec<ResidualFactor>,
    /// Residual roots counted once each: the sum of residual factor degrees.
    pub n_c: usize,
    /// gcd of n with every residual order.
    pub gcd_k: u32,
    /// Whether f divides a residual factor of P, resp. Q.
    pub zero_flags: (bool, bool),
}

/// Linear factors for the roots found in the field, then the leftover.
fn field_factors(g: &FPoly) -> Vec<FPoly> {
    if g.deg() < 2 {
        return vec![g.clone()];
    }
    let Some(cg) = g.to_const_poly() else {
        return vec![g.clone()];
    };
    let mut out = Vec::new();
    let mut rest = g.clone();
    for r in roots_in_field(&cg) {
        let lin = FPoly::linear_root(RatZ::from_const(r));
        rest = rest.exact_div(&lin).expect("field root divides");
        out.push(lin);
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}

fn split(p: &FPoly, n: u32) -> (FPoly, Vec<ResidualFactor>) {
    let mut base = FPoly::one();
    let mut res = Vec::new();
    if p.is_constant() {
        return (base, res);
    }
    for (g, e) in squarefree_decompose(p).expect("nonzero polynomial") {
        if e >= n {
            base = &base * &g.pow(e / n);
        }
        if e % n != 0 {
            for factor in field_factors(&g) {
                res.push(ResidualFactor { factor, order: e % n });
            }
        }
    }
    (base, res)
}

pub fn factor_structure(spec: &EquationSpec) -> FactorStructure {
    let n = spec.n;
    let (p0, residual_p) = split(&spec.p, n);
    let (q0, residual_q) = split(&spec.q, n);
    let all = || residual_p.iter().chain(residual_q.iter());
    let n_c = all().map(|r| r.factor.deg()).sum();
    let gcd_k = all().fold(n, |g, r| g.gcd(&r.order));
    let has_zero = |v: &[ResidualFactor]| v.iter().any(|r| r.factor.coeff(0).is_zero());
    FactorStructure {
        n,
        lc: spec.p.lc(),
        p0_deg: p0.deg(),
        q0_deg: q0.deg(),
        zero_flags: (has_zero(&residual_p), has_zero(&residual_q)),
        p0,
        q0,
        residual_p,
        residual_q,
        n_c,
        gcd_k,
    }
}

impl FactorStructure {
    /// `lc · P0ⁿ · ∏ factor^order`, which must equal P.
    pub fn rebuild_p(&self) -> FPoly {
        rebuild(&self.p0, &self.residual_p, self.n).scale(&self.lc)
    }

    pub fn rebuild_q(&self) -> FPoly {
        rebuild(&self.q0, &self.residual_q, self.n)
    }

    pub fn numerator_roots(&self) -> usize {
        self.residual_p.iter().map(|r| r.factor.deg()).sum()
    }

    pub fn denominator_roots(&self) -> usize {
        self.residual_q.iter().map(|r| r.factor.deg()).sum()
    }

    pub fn all_orders_one(&self) -> bool {
        self.residual_p.iter().chain(self.residual_q.iter()).all(|r| r.order == 1)
    }
}

fn rebuild(base: &FPoly, res: &[ResidualFactor], n: u32) -> FPoly {
    res.iter()
        .fold(base.pow(n), |acc, r| &acc * &r.factor.pow(r.order))
}

/// Product of the distinct residual factors, ignoring orders.
pub fn root_polynomial(res: &[ResidualFactor]) -> FPoly {
    res.iter().fold(FPoly::one(), |acc, r| &acc * &r.factor)
}

/// Every root of `p`, when it splits into distinct linear factors over the field.
pub fn split_roots(p: &FPoly) -> Option<Vec<RatZ>> {
    match p.deg() {
        0 => return Some(Vec::new()),
        1 => return Some(vec![-(p.coeff(0) / p.coeff(1))]),
        _ => {}
    }
    let cp = p.to_const_poly()?;
    let r = roots_in_field(&cp);
    (r.len() == p.deg()).then(|| r.into_iter().map(RatZ::from_const).collect())
}

/// Full multiplicity of the root `r` in `p`.
pub fn multiplicity(p: &FPoly, r: &RatZ) -> u32 {
    let lin = FPoly::linear_root(r.clone());
    let mut k = 0;
    let mut q = p.clone();
    while !q.is_zero() {
        match q.exact_div(&lin) {
            Some(x) => {
                q = x;
                k += 1;
            }
            None => break,
        }
    }
    k
}

/// A square root of a field constant, when one exists in the field.
pub fn sqrt_in_field(a: &RatZ) -> Option<RatZ> {
    nth_root_in_field(a, 2)
}

pub fn nth_root_in_field(a: &RatZ, k: u32) -> Option<RatZ> {
    if a.is_one() {
        return Some(RatZ::one());
    }
    let c = a.as_const()?;
    crate::algebra::roots::nth_root(c, k).map(RatZ::from_const)
}
