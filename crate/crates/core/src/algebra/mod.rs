//! Exact arithmetic: the 24th cyclotomic field, rational functions of `z`
//! over it, and polynomials / rational functions in `f`.

mod cyclo;
mod frat;
mod poly;
mod ratz;
pub mod roots;

pub use cyclo::Cyclo24;
pub use frat::{compose_rational, FRat};
pub use poly::{
    is_perfect_power, nth_power_split, poly_gcd, squarefree_decompose, PerfectPower, Poly,
    PowerSplit,
};
pub use ratz::RatZ;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::AlgebraError;

/// Coefficient field interface shared by `Cyclo24` and `RatZ`.
///
/// Division by zero panics through `Div`; use [`Field::inv`] when the
/// divisor may vanish.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Polynomials in `f` with coefficients rational in `z`.
pub type FPoly = Poly<RatZ>;

/// Polynomials in `z` over the cyclotomic field.
pub type ZPoly = Poly<Cyclo24>;

impl FPoly {
    /// Lift a polynomial with constant coefficients.
    pub fn from_const_poly(p: &Poly<Cyclo24>) -> FPoly {
        Poly::new(p.coeffs().iter().cloned().map(RatZ::from_const).collect())
    }

    /// Whether every coefficient is free of `z`.
    pub fn is_autonomous(&self) -> bool {
        self.coeffs().iter().all(|c| c.as_const().is_some())
    }

    /// Constant-coefficient view, when autonomous.
    pub fn to_const_poly(&self) -> Option<Poly<Cyclo24>> {
        self.coeffs()
            .iter()
            .map(|c| c.as_const().cloned())
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Numerical value at (z, f) under the principal embedding.
    pub fn eval_complex(&self, z: num_complex::Complex64, f: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs()
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * f + c.eval_complex(z))
    }

    /// Apply `z -> z+1` to every coefficient.
    pub fn shift_z(&self) -> FPoly {
        Poly::new(self.coeffs().iter().map(|c| c.shift()).collect())
    }
}

pub(crate) fn require(cond: bool, msg: &str) -> Result<(), AlgebraError> {
    if cond {
        Ok(())
    } else {
        Err(AlgebraError::Contract(msg.to_string()))
    }
}
