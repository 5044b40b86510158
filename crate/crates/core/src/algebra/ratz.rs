use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::poly::gcd_raw;
use super::{Cyclo24, Field, ZPoly};

/// Rational function of `z` over the cyclotomic field, kept coprime with a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatZ {
    num: ZPoly,
    den: ZPoly,
}

impl RatZ {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "RatZ with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.lc().inv().expect("nonzero");
            return RatZ {
                num: num.scale(&inv),
                den: ZPoly::one(),
            };
        }
        let g = gcd_raw(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = d.lc().inv().expect("nonzero");
        RatZ {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    pub fn from_const(c: Cyclo24) -> Self {
        RatZ {
            num: ZPoly::constant(c),
            den: ZPoly::one(),
        }
    }

    pub fn z() -> Self {
        RatZ {
            num: ZPoly::x(),
            den: ZPoly::one(),
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    /// The constant value when free of `z`.
    pub fn as_const(&self) -> Option<&Cyclo24> {
        if self.den.is_one() && self.num.is_constant() {
            static ZERO: std::sync::OnceLock<Cyclo24> = std::sync::OnceLock::new();
            Some(
                self.num
                    .coeffs()
                    .first()
                    .unwrap_or_else(|| ZERO.get_or_init(Cyclo24::zero)),
            )
        } else {
            None
        }
    }

    /// `z -> z + 1`.
    pub fn shift(&self) -> Self {
        if self.as_const().is_some() {
            return self.clone();
        }
        let one = Cyclo24::one();
        RatZ::new(self.num.shift_var(&one), self.den.shift_var(&one))
    }

    /// `z -> -z`.
    pub fn negate_z(&self) -> Self {
        self.affine_z(&-Cyclo24::one(), &Cyclo24::zero())
    }

    /// `z -> a·z + b`.
    pub fn affine_z(&self, a: &Cyclo24, b: &Cyclo24) -> Self {
        if self.as_const().is_some() {
            return self.clone();
        }
        let m = ZPoly::new(vec![b.clone(), a.clone()]);
        RatZ::new(self.num.compose(&m), self.den.compose(&m))
    }

    /// Numerical value at `z` under the principal embedding.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let ev = |p: &ZPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
        };
        ev(&self.num) / ev(&self.den)
    }

    pub fn key(&self) -> String {
        format!("{}|{}", self.num, self.den)
    }
}

impl Field for RatZ {
    fn zero() -> Self {
        RatZ {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }
    fn one() -> Self {
        Self::from_const(Cyclo24::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatZ::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_const(Cyclo24::from_i64(v))
    }
}

impl Add for RatZ {
    type Output = RatZ;
    fn add(self, o: RatZ) -> RatZ {
        if self.den == o.den {
            if self.den.is_one() {
                return RatZ {
                    num: &self.num + &o.num,
                    den: self.den,
                };
            }
            return RatZ::new(&self.num + &o.num, self.den);
        }
        RatZ::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for RatZ {
    type Output = RatZ;
    fn sub(self, o: RatZ) -> RatZ {
        self + (-o)
    }
}

impl Neg for RatZ {
    type Output = RatZ;
    fn neg(self) -> RatZ {
        RatZ {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatZ {
    type Output = RatZ;
    fn mul(self, o: RatZ) -> RatZ {
        if self.den.is_one() && o.den.is_one() {
            return RatZ {
                num: &self.num * &o.num,
                den: self.den,
            };
        }
        RatZ::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatZ {
    type Output = RatZ;
    fn div(self, o: RatZ) -> RatZ {
        self * o.inv().expect("division by zero in RatZ")
    }
}

impl fmt::Display for RatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_const() {
            return write!(f, "{}", c);
        }
        let n = self.num.fmt_var("z");
        if self.den.is_one() {
            return write!(f, "{}", n);
        }
        write!(f, "({})/({})", n, self.den.fmt_var("z"))
    }
}

impl fmt::Debug for RatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatZ({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_shift() {
        let z = RatZ::z();
        let one = RatZ::one();
        // (z^2 - 1)/(2z - 2) = (z + 1)/2
        let a = (z.clone() * z.clone() - one.clone()) / (RatZ::from_i64(2) * z.clone() - RatZ::from_i64(2));
        let b = (z.clone() + one.clone()) / RatZ::from_i64(2);
        assert_eq!(a, b);
        assert_eq!(z.shift(), z.clone() + one.clone());
        assert_eq!((one.clone() / z.clone()).shift(), one.clone() / (z + one));
    }
}
