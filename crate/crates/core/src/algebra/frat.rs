use std::fmt;

use super::poly::gcd_raw;
use super::{require, FPoly, Field, RatZ};
use crate::error::AlgebraError;

/// Rational function in `f`, coprime with a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct FRat {
    num: FPoly,
    den: FPoly,
}

impl FRat {
    pub fn new(num: FPoly, den: FPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::Degenerate("zero denominator".into()));
        }
        Ok(Self::canonical(num, den).0)
    }

    /// Canonical form together with the removed common factor (monic).
    pub fn canonical(num: FPoly, den: FPoly) -> (Self, FPoly) {
        let g = gcd_raw(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = d.lc().inv().expect("nonzero denominator");
        (
            FRat {
                num: n.scale(&inv),
                den: d.scale(&inv),
            },
            g,
        )
    }

    pub fn from_poly(p: FPoly) -> Self {
        FRat {
            num: p,
            den: FPoly::one(),
        }
    }

    pub fn num(&self) -> &FPoly {
        &self.num
    }

    pub fn den(&self) -> &FPoly {
        &self.den
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn eval(&self, x: &RatZ) -> Option<RatZ> {
        self.den.eval(x).inv().map(|d| self.num.eval(x) * d)
    }
}

/// `R ∘ S` in lowest terms.
pub fn compose_rational(r: &FRat, s: &FRat) -> Result<FRat, AlgebraError> {
    require(!s.is_constant(), "compose_rational needs a nonconstant inner map")?;
    let d = r.degree();
    let homog = |p: &FPoly| {
        let mut acc = FPoly::zero();
        let mut upow = FPoly::one();
        for k in 0..=d {
            let c = p.coeff(k);
            if !c.is_zero() {
                let term = &upow * &s.den.pow((d - k) as u32);
                acc = &acc + &term.scale(&c);
            }
            upow = &upow * &s.num;
        }
        acc
    };
    FRat::new(homog(&r.num), homog(&r.den))
}

impl fmt::Display for FRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> FPoly {
        FPoly::new(c.iter().map(|&x| RatZ::from_i64(x)).collect())
    }

    #[test]
    fn composition_examples() {
        let r = FRat::from_poly(p(&[0, 0, 1]));
        let s = FRat::from_poly(p(&[1, 1]));
        assert_eq!(compose_rational(&r, &s).unwrap(), FRat::from_poly(p(&[1, 2, 1])));
        let r = FRat::new(p(&[1]), p(&[0, 1])).unwrap();
        let s = FRat::from_poly(p(&[0, 0, 1]));
        let c = compose_rational(&r, &s).unwrap();
        assert_eq!(c, FRat::new(p(&[1]), p(&[0, 0, 1])).unwrap());
        assert_eq!(c.degree(), 2);
        // the Möbius inner map has degree 1, so the composite has degree 2
        let r = FRat::new(p(&[-1, 0, 1]), p(&[0, 1])).unwrap();
        let s = FRat::new(p(&[1, 1]), p(&[-1, 1])).unwrap();
        let c = compose_rational(&r, &s).unwrap();
        assert_eq!(c.degree(), 2);
        // with a quadratic inner map the product rule gives 4
        let s2 = FRat::new(p(&[1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(compose_rational(&r, &s2).unwrap().degree(), 4);
        // hand expansion: ((f+1)^2 - (f-1)^2) / ((f+1)(f-1)) = 4f / (f^2 - 1)
        assert_eq!(c, FRat::new(p(&[0, 4]), p(&[-1, 0, 1])).unwrap());
        assert!(compose_rational(&r, &FRat::from_poly(p(&[3]))).is_err());
    }
}
