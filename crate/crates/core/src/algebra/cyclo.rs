use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

/// Element of Q(ζ), ζ = exp(2πi/24), stored as integer coordinates over a
/// common positive denominator in the basis ζ⁰..ζ⁷ modulo x⁸ − x⁴ + 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo24 {
    num: [BigInt; 8],
    den: BigInt,
}

/// Units of Z/24: the Galois group acts by ζ -> ζ^k for these k.
pub const GALOIS: [u32; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

fn zeta_table() -> &'static [[i64; 8]; 24] {
    static T: OnceLock<[[i64; 8]; 24]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [[0i64; 8]; 24];
        let mut cur = [0i64; 8];
        cur[0] = 1;
        for row in t.iter_mut() {
            *row = cur;
            // multiply by x, then fold x^8 = x^4 - 1
            let top = cur[7];
            for k in (1..8).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = -top;
            cur[4] += top;
        }
        t
    })
}

impl Cyclo24 {
    fn from_parts(num: [BigInt; 8], den: BigInt) -> Self {
        let mut c = Cyclo24 { num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.abs();
        for x in &self.num {
            g = g.gcd(x);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn from_coords(c: &[BigRational; 8]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = std::array::from_fn(|k| c[k].numer() * (&den / c[k].denom()));
        Self::from_parts(num, den)
    }

    pub fn from_int_coords(c: [i64; 8]) -> Self {
        Self::from_parts(c.map(BigInt::from), BigInt::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut num: [BigInt; 8] = Default::default();
        num[0] = r.numer().clone();
        Self::from_parts(num, r.denom().clone())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn coords(&self) -> [BigRational; 8] {
        std::array::from_fn(|k| BigRational::new(self.num[k].clone(), self.den.clone()))
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        Self::from_int_coords(zeta_table()[k.rem_euclid(24) as usize])
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    /// Primitive cube root of unity exp(2πi/3).
    pub fn eta() -> Self {
        Self::zeta_pow(8)
    }

    pub fn sqrt2() -> Self {
        Self::zeta_pow(3) + Self::zeta_pow(21)
    }

    pub fn sqrt3() -> Self {
        Self::zeta_pow(2) + Self::zeta_pow(22)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Galois automorphism ζ -> ζ^k, k a unit mod 24.
    pub fn galois(&self, k: u32) -> Self {
        let t = zeta_table();
        let mut out: [BigInt; 8] = Default::default();
        for (m, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &t[(k as usize * m) % 24];
            for (o, r) in out.iter_mut().zip(row) {
                if *r != 0 {
                    *o += a * r;
                }
            }
        }
        Self::from_parts(out, self.den.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(23)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> BigRational {
        let mut p = self.clone();
        for &k in &GALOIS[1..] {
            p = p * self.galois(k);
        }
        p.as_rational().expect("norm is rational")
    }

    /// Value under the embedding ζ -> exp(2πi j/24).
    pub fn embed(&self, j: u32) -> Complex64 {
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut s = Complex64::new(0.0, 0.0);
        for (m, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ang = std::f64::consts::PI * (j as f64) * (m as f64) / 12.0;
            s += Complex64::from_polar(1.0, ang) * (a.to_f64().unwrap_or(f64::NAN) / d);
        }
        s
    }

    /// Principal embedding ζ -> exp(2πi/24).
    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b.clone();
            }
            e >>= 1;
            if e > 0 {
                b = b.clone() * b;
            }
        }
        r
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|v| v.pow((-e) as u32))
        }
    }

    /// Coordinates in the real-friendly basis {1, √2, √3, √6} x {1, i}.
    pub fn surd_coords(&self) -> [BigRational; 8] {
        let inv = surd_inverse();
        let c = self.coords();
        std::array::from_fn(|r| {
            let mut s = BigRational::zero();
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() && !inv[r][k].is_zero() {
                    s += &inv[r][k] * ck;
                }
            }
            s
        })
    }

    /// Sort key that is stable across runs.
    pub fn key(&self) -> String {
        let c: Vec<String> = self.num.iter().map(|x| x.to_string()).collect();
        format!("{}/{}", c.join(","), self.den)
    }

    /// Number of nonzero surd terms; used to decide parenthesization.
    pub fn term_count(&self) -> usize {
        self.surd_coords().iter().filter(|c| !c.is_zero()).count()
    }
}

const SURD_NAMES: [&str; 8] = [
    "",
    "sqrt2",
    "sqrt3",
    "sqrt2*sqrt3",
    "i",
    "i*sqrt2",
    "i*sqrt3",
    "i*sqrt2*sqrt3",
];

fn surd_basis() -> [Cyclo24; 8] {
    let one = Cyclo24::one();
    let s2 = Cyclo24::sqrt2();
    let s3 = Cyclo24::sqrt3();
    let s6 = s2.clone() * s3.clone();
    let i = Cyclo24::i();
    [
        one.clone(),
        s2.clone(),
        s3.clone(),
        s6.clone(),
        i.clone(),
        i.clone() * s2,
        i.clone() * s3,
        i * s6,
    ]
}

/// Exact inverse of the change-of-basis matrix from surd to ζ coordinates.
fn surd_inverse() -> &'static Vec<Vec<BigRational>> {
    static INV: OnceLock<Vec<Vec<BigRational>>> = OnceLock::new();
    INV.get_or_init(|| {
        let basis = surd_basis();
        // column j = ζ-coordinates of basis element j
        let m: Vec<Vec<BigRational>> = (0..8)
            .map(|r| (0..8).map(|j| basis[j].coords()[r].clone()).collect())
            .collect();
        invert_exact(m).expect("surd basis is a basis")
    })
}

/// Gauss-Jordan inverse over Q.
pub(crate) fn invert_exact(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for c in 0..n {
            m[col][c] = &m[col][c] / &p;
            inv[col][c] = &inv[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..n {
                    let a = &m[col][c] * &factor;
                    m[r][c] -= a;
                    let b = &inv[col][c] * &factor;
                    inv[r][c] -= b;
                }
            }
        }
    }
    Some(inv)
}

impl Field for Cyclo24 {
    fn zero() -> Self {
        Cyclo24 {
            num: Default::default(),
            den: BigInt::one(),
        }
    }
    fn one() -> Self {
        Self::from_int_coords([1, 0, 0, 0, 0, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut p = Self::one();
        for &k in &GALOIS[1..] {
            p = p * self.galois(k);
        }
        let n = (self.clone() * p.clone()).as_rational()?;
        Some(p * Self::from_rational(n.recip()))
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }
}

impl Add for Cyclo24 {
    type Output = Cyclo24;
    fn add(self, o: Cyclo24) -> Cyclo24 {
        if self.den == o.den {
            let num = std::array::from_fn(|k| &self.num[k] + &o.num[k]);
            return Self::from_parts(num, self.den);
        }
        let num = std::array::from_fn(|k| &self.num[k] * &o.den + &o.num[k] * &self.den);
        Self::from_parts(num, &self.den * &o.den)
    }
}

impl Sub for Cyclo24 {
    type Output = Cyclo24;
    fn sub(self, o: Cyclo24) -> Cyclo24 {
        self + (-o)
    }
}

impl Neg for Cyclo24 {
    type Output = Cyclo24;
    fn neg(self) -> Cyclo24 {
        Cyclo24 {
            num: self.num.map(|x| -x),
            den: self.den,
        }
    }
}

impl Mul for Cyclo24 {
    type Output = Cyclo24;
    fn mul(self, o: Cyclo24) -> Cyclo24 {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut prod: [BigInt; 15] = Default::default();
        for (a, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[a + b] += x * y;
                }
            }
        }
        for k in (8..15).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                prod[k - 4] += &c;
                prod[k - 8] -= c;
            }
        }
        let num = std::array::from_fn(|k| std::mem::take(&mut prod[k]));
        Self::from_parts(num, self.den * o.den)
    }
}

impl Div for Cyclo24 {
    type Output = Cyclo24;
    fn div(self, o: Cyclo24) -> Cyclo24 {
        self * o.inv().expect("division by zero in Cyclo24")
    }
}

impl fmt::Display for Cyclo24 {
    /// Grammar-compatible text, e.g. `1/2 - sqrt2 + i*sqrt3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let c = self.surd_coords();
        let mut first = true;
        for (k, r) in c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let name = SURD_NAMES[k];
            if name.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}*{}", a, name)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo24({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinguished_constants() {
        let i = Cyclo24::i();
        assert_eq!(i.clone() * i, -Cyclo24::one());
        let e = Cyclo24::eta();
        assert!((e.clone() * e.clone() + e + Cyclo24::one()).is_zero());
        let s2 = Cyclo24::sqrt2();
        assert_eq!(s2.clone() * s2, Cyclo24::from_i64(2));
        let s3 = Cyclo24::sqrt3();
        assert_eq!(s3.clone() * s3, Cyclo24::from_i64(3));
        assert_eq!(Cyclo24::zeta_pow(1).pow(24), Cyclo24::one());
        assert_ne!(Cyclo24::zeta_pow(1).pow(12), Cyclo24::one());
        assert_ne!(Cyclo24::zeta_pow(1).pow(8), Cyclo24::one());
    }

    #[test]
    fn embedding_matches_numeric_values() {
        let z = Cyclo24::sqrt2().to_complex();
        assert!((z.re - 2f64.sqrt()).abs() < 1e-14 && z.im.abs() < 1e-14);
        let e = Cyclo24::eta().to_complex();
        assert!((e.re + 0.5).abs() < 1e-14 && (e.im - 0.75f64.sqrt()).abs() < 1e-14);
        // under ζ -> ζ^5, √2 -> -√2
        assert!((Cyclo24::sqrt2().embed(5).re + 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn inverse_and_norm() {
        let a = Cyclo24::from_int_coords([3, -1, 0, 2, 0, 0, 1, -5]);
        let b = a.inv().unwrap();
        assert_eq!(a.clone() * b, Cyclo24::one());
        assert_eq!(Cyclo24::sqrt2().norm(), BigRational::from_integer(16.into()));
    }

    #[test]
    fn display_uses_surds() {
        assert_eq!(Cyclo24::sqrt2().to_string(), "sqrt2");
        assert_eq!((Cyclo24::i() * Cyclo24::sqrt3()).to_string(), "i*sqrt3");
        assert_eq!(Cyclo24::eta().to_string(), "-1/2 + 1/2*i*sqrt3");
    }
}
