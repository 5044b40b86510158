use crate::algebra::{Cyclo24, FPoly, Field, Poly};
#[cfg(test)]
use crate::algebra::RatZ;
use crate::error::IdentityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebParity {
    Odd,
    Even,
}

fn int_poly(c: &[i64]) -> Poly<Cyclo24> {
    Poly::new(c.iter().map(|&x| Cyclo24::from_i64(x)).collect())
}

/// Chebyshev polynomial of the second kind by U_{k+1} = 2f·U_k − U_{k−1}.
pub fn chebyshev_u(k: u32) -> Poly<Cyclo24> {
    let two_f = int_poly(&[0, 2]);
    let (mut a, mut b) = (int_poly(&[1]), two_f.clone());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = &(&two_f * &b) - &a;
        a = b;
        b = c;
    }
    b
}

/// First kind, T_{k+1} = 2f·T_k − T_{k−1}.
pub fn chebyshev_t(k: u32) -> Poly<Cyclo24> {
    let two_f = int_poly(&[0, 2]);
    let (mut a, mut b) = (int_poly(&[1]), int_poly(&[0, 1]));
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = &(&two_f * &b) - &a;
        a = b;
        b = c;
    }
    b
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1)) as i64
}

/// `(P0, P1)` of the q = 0, n = 2 families.
///
/// Odd: `P0 = (i/√2)(U_{p0} + U_{p0−1})`, `P1 = (i/√2)(U_{p0} − U_{p0−1})`,
/// with `P0²(f−1) − P1²(f+1) = 1`.
/// Even: `P0 = i Σ C(p0+1, 2l+1) f^{p0−2l} (f²−1)^l` and `P1 = T_{p0+1}`,
/// with `P0²(f²−1) − 1 = −P1²`.
pub fn chebyshev_pair(p0: u32, parity: ChebParity) -> Result<(FPoly, FPoly), IdentityError> {
    if p0 == 0 {
        return Err(IdentityError::DegenerateChebyshev);
    }
    let i = Cyclo24::i();
    let lift = |p: &Poly<Cyclo24>| FPoly::from_const_poly(p);
    match parity {
        ChebParity::Odd => {
            let k = i / Cyclo24::sqrt2();
            let (u, v) = (chebyshev_u(p0), chebyshev_u(p0 - 1));
            Ok((lift(&(&u + &v).scale(&k)), lift(&(&u - &v).scale(&k))))
        }
        ChebParity::Even => {
            let f2m1 = int_poly(&[-1, 0, 1]);
            let mut s = Poly::zero();
            for l in 0..=(p0 / 2) {
                let term = &Poly::monomial(Cyclo24::from_i64(binom(p0 as u64 + 1, 2 * l as u64 + 1)), (p0 - 2 * l) as usize)
                    * &f2m1.pow(l);
                s = &s + &term;
            }
            Ok((lift(&s.scale(&i)), lift(&chebyshev_t(p0 + 1))))
        }
    }
}

#[cfg(test)]
/// Leading coefficient family check: the f^{p0−2t} coefficient of
/// U_{p0} + U_{p0−1} is (−1)^t 2^{p0−2t} C(p0−t, t).
pub fn odd_coefficient(p0: u32, t: u32) -> i64 {
    let sign = if t % 2 == 0 { 1 } else { -1 };
    sign * (1i64 << (p0 - 2 * t)) * binom((p0 - t) as u64, t as u64)
}
