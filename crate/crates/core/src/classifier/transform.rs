use std::fmt;

use crate::algebra::{is_perfect_power, Cyclo24, FPoly, Field, RatZ};
use crate::equation::EquationSpec;
use crate::error::ClassifyError;

use super::structure::nth_root_in_field;

/// One invertible change of variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// f → α·f.
    LinearScale { alpha: RatZ },
    /// f → 1/f.
    Reciprocal,
    /// x = −z on an equation of degree one in f; the Möbius right side is
    /// inverted so the result has n = 1.
    NegateZ,
    /// k-th root of both sides. `root` is the chosen k-th root of the
    /// leading constant; when it lies outside the field the constant is
    /// dropped from the new right side and kept here symbolically.
    KthRoot { k: u32, constant: RatZ, root: Option<RatZ> },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::LinearScale { alpha } => write!(f, "linear scale f -> ({})*f", alpha),
            Step::Reciprocal => write!(f, "reciprocal f -> 1/f"),
            Step::NegateZ => write!(f, "reverse direction x = -z (degree-one right side inverted)"),
            Step::KthRoot { k, constant, root: Some(r) } => {
                write!(f, "take {}-th root (constant {} -> {})", k, constant, r)
            }
            Step::KthRoot { k, constant, root: None } => {
                write!(f, "take {}-th root (constant ({})^(1/{}) kept symbolic)", k, constant, k)
            }
        }
    }
}

/// Ordered steps; replaying them on the input gives the canonical spec.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Transformation {
    pub steps: Vec<Step>,
}

impl Transformation {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn replay(&self, input: &EquationSpec) -> Result<EquationSpec, ClassifyError> {
        self.steps.iter().try_fold(input.clone(), |s, st| apply_step(&s, st))
    }
}

fn invalid<T>(msg: &str) -> Result<T, ClassifyError> {
    Err(ClassifyError::InvalidStep(msg.to_string()))
}

pub fn apply_step(spec: &EquationSpec, step: &Step) -> Result<EquationSpec, ClassifyError> {
    let n = spec.n;
    match step {
        Step::LinearScale { alpha } => {
            if alpha.is_zero() {
                return invalid("scale factor is zero");
            }
            let ab = alpha.shift();
            let mut abn = RatZ::one();
            for _ in 0..n {
                abn = abn * ab.clone();
            }
            let p = spec.p.scale_var(alpha);
            let q = spec.q.scale_var(alpha).scale(&abn);
            Ok(EquationSpec::canonical(n, p, q))
        }
        Step::Reciprocal => {
            let d = spec.d();
            Ok(EquationSpec::canonical(n, spec.q.reverse(d), spec.p.reverse(d)))
        }
        Step::NegateZ => {
            if spec.d() != 1 {
                return invalid("direction reversal needs a right side of degree one");
            }
            // f̄ⁿ = (a f + b)/(c f + e)  gives  f = (e f̄ⁿ − b)/(a − c f̄ⁿ),
            // then g(x) = f(−x) moves every coefficient to w = −x − 1.
            let w = |h: RatZ| h.affine_z(&-Cyclo24::one(), &-Cyclo24::one());
            let (a, b) = (spec.p.coeff(1), spec.p.coeff(0));
            let (c, e) = (spec.q.coeff(1), spec.q.coeff(0));
            let gn = |lo: RatZ, hi: RatZ| {
                let mut v = vec![RatZ::zero(); n as usize + 1];
                v[0] = lo;
                v[n as usize] = hi;
                FPoly::new(v)
            };
            let p = gn(-w(b), w(e));
            let q = gn(w(a), -w(c));
            Ok(EquationSpec::canonical(1, p, q))
        }
        Step::KthRoot { k, constant, root } => {
            if *k < 2 || n % k != 0 {
                return invalid("k must be at least 2 and divide n");
            }
            let pp = is_perfect_power(&spec.p, *k)?;
            let qp = is_perfect_power(&spec.q, *k)?;
            let (Some(pp), Some(qp)) = (pp, qp) else {
                return invalid("right side is not a k-th power up to its constant");
            };
            if pp.constant != *constant {
                return invalid("recorded constant does not match the leading coefficient");
            }
            let p = match root {
                Some(r) => pp.base.scale(r),
                None => pp.base,
            };
            Ok(EquationSpec::canonical(n / k, p, qp.base.scale(&qp.constant)))
        }
    }
}

/// The KthRoot step for `k`, with the field root closest to the principal one.
pub fn kth_root_step(spec: &EquationSpec, k: u32) -> Step {
    let constant = spec.p.lc();
    let root = nth_root_in_field(&constant, k);
    Step::KthRoot { k, constant, root }
}

/// Divide out gcd_k by a k-th root; identity when gcd_k = 1.
pub fn reduce_gcd_root(spec: &EquationSpec) -> Result<(EquationSpec, Transformation), ClassifyError> {
    let k = super::structure::factor_structure(spec).gcd_k;
    if k <= 1 {
        return Ok((spec.clone(), Transformation::default()));
    }
    let step = kth_root_step(spec, k);
    let out = apply_step(spec, &step)?;
    Ok((out, Transformation { steps: vec![step] }))
}
