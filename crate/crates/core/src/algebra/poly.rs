use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{require, Field};
use crate::error::AlgebraError;

/// Dense univariate polynomial, coefficients stored from degree 0 upward
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    c: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(k: K) -> Self {
        Self::new(vec![k])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn monomial(k: K, deg: usize) -> Self {
        let mut c = vec![K::zero(); deg + 1];
        c[deg] = k;
        Self::new(c)
    }

    /// `x - a`.
    pub fn linear_root(a: K) -> Self {
        Self::new(vec![-a, K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::zero)
    }

    /// `None` is the sentinel degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn lc(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly::new(self.c.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].clone() * inv.clone();
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = r[k + j].clone() - t.clone() * dj.clone();
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x.clone() * K::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// `self(g(x))` by Horner's scheme.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(a·x)`.
    pub fn scale_var(&self, a: &K) -> Self {
        let mut pw = K::one();
        let mut out = Vec::with_capacity(self.c.len());
        for c in &self.c {
            out.push(c.clone() * pw.clone());
            pw = pw * a.clone();
        }
        Poly::new(out)
    }

    /// `self(-x)`.
    pub fn negate_var(&self) -> Self {
        self.scale_var(&-K::one())
    }

    /// `x^d · self(1/x)` for `d >= deg`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.is_zero() || self.deg() <= d);
        let mut c = vec![K::zero(); d + 1];
        for (k, x) in self.c.iter().enumerate() {
            c[d - k] = x.clone();
        }
        Poly::new(c)
    }

    /// `self(x + a)`.
    pub fn shift_var(&self, a: &K) -> Self {
        self.compose(&Poly::new(vec![a.clone(), K::one()]))
    }

    /// Multiplicity of `x` as a factor.
    pub fn zero_order(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &Poly<K>) -> Poly<K> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &Poly<K>) -> Poly<K> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &Poly<K>) -> Poly<K> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[a + b] = c[a + b].clone() + x.clone() * y.clone();
                }
            }
        }
        Poly::new(c)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.c.iter().map(|x| -x.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Field> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: Poly<K>) -> Poly<K> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    /// Grammar-compatible text in the variable `f`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.fmt_var("f"))
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly({})", self)
    }
}

impl<K: Field> Poly<K> {
    /// Text with an arbitrary variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            let cs = c.to_string();
            let simple = !cs.contains([' ', '+']) && !cs[1..].contains('-');
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            let term = if mono.is_empty() {
                if simple {
                    body
                } else {
                    format!("({})", body)
                }
            } else if body == "1" {
                mono
            } else if simple {
                format!("{}*{}", body, mono)
            } else {
                format!("({})*{}", body, mono)
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&term);
        }
        s
    }
}

/// Monic gcd; the gcd of a nonzero polynomial with zero is its monic part.
pub fn poly_gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Result<Poly<K>, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::Degenerate("gcd of two zero polynomials".into()));
    }
    Ok(gcd_raw(a, b))
}

pub(crate) fn gcd_raw<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        // keep intermediate remainders monic to curb coefficient growth
        y = r.monic();
    }
    x.monic()
}

/// Yun's squarefree decomposition: monic pairwise coprime squarefree factors
/// with their multiplicities, increasing in multiplicity.
pub fn squarefree_decompose<K: Field>(p: &Poly<K>) -> Result<Vec<(Poly<K>, u32)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::Degenerate("squarefree decomposition of zero".into()));
    }
    let p = p.monic();
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = gcd_raw(&p, &dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd_raw(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// `P = lc · P0ⁿ · ∏ factorᵢ^{orderᵢ}` with every order in `1..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSplit<K: Field> {
    pub lc: K,
    pub p0: Poly<K>,
    pub residual: Vec<(Poly<K>, u32)>,
}

pub fn nth_power_split<K: Field>(p: &Poly<K>, n: u32) -> Result<PowerSplit<K>, AlgebraError> {
    require(n >= 2, "nth_power_split needs n >= 2")?;
    let sq = squarefree_decompose(p)?;
    let mut p0 = Poly::one();
    let mut residual = Vec::new();
    for (g, e) in sq {
        if e / n > 0 {
            p0 = &p0 * &g.pow(e / n);
        }
        if e % n != 0 {
            residual.push((g, e % n));
        }
    }
    Ok(PowerSplit {
        lc: p.lc(),
        p0,
        residual,
    })
}

/// `P = constant · baseᵐ` with `base` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectPower<K: Field> {
    pub base: Poly<K>,
    pub constant: K,
}

pub fn is_perfect_power<K: Field>(
    p: &Poly<K>,
    m: u32,
) -> Result<Option<PerfectPower<K>>, AlgebraError> {
    require(m >= 2, "is_perfect_power needs m >= 2")?;
    let sq = squarefree_decompose(p)?;
    if sq.iter().any(|(_, e)| e % m != 0) {
        return Ok(None);
    }
    let base = sq
        .iter()
        .fold(Poly::one(), |acc, (g, e)| &acc * &g.pow(e / m));
    Ok(Some(PerfectPower {
        base,
        constant: p.lc(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Cyclo24;

    fn p(c: &[i64]) -> Poly<Cyclo24> {
        Poly::new(c.iter().map(|&x| Cyclo24::from_i64(x)).collect())
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 0, 0, 1]), &p(&[1, 1])).unwrap(), p(&[1]));
        // (f-1)^2 (f+2) and (f-1)(f-3), expanded by hand
        let a = p(&[2, -3, 0, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(&[-1, 1]));
        assert!(poly_gcd(&Poly::<Cyclo24>::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        let sq = squarefree_decompose(&p(&[1, -1, -1, 1])).unwrap();
        assert_eq!(sq, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decompose(&p(&[0, 0, 0, 1])).unwrap(), vec![(p(&[0, 1]), 3)]);
        // (f^2+1)^2 (f-2) = f^5 - 2f^4 + 2f^3 - 4f^2 + f - 2
        let sq = squarefree_decompose(&p(&[-2, 1, -4, 2, -2, 1])).unwrap();
        assert_eq!(sq, vec![(p(&[-2, 1]), 1), (p(&[1, 0, 1]), 2)]);
    }

    #[test]
    fn power_split_examples() {
        let s = nth_power_split(&p(&[0, 0, 0, 1]), 2).unwrap();
        assert_eq!(s.p0, p(&[0, 1]));
        assert_eq!(s.residual, vec![(p(&[0, 1]), 1)]);
        // (f-1)^4 (f+2)^3
        let q = p(&[-1, 1]).pow(4) * p(&[2, 1]).pow(3);
        let s = nth_power_split(&q, 2).unwrap();
        assert_eq!(s.p0, p(&[-1, 1]).pow(2) * p(&[2, 1]));
        assert_eq!(s.residual, vec![(p(&[2, 1]), 1)]);
        let s = nth_power_split(&p(&[0, 0, 0, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(s.p0, p(&[0, 0, 1]));
        assert!(s.residual.is_empty());
        assert!(nth_power_split(&p(&[1, 1]), 1).is_err());
    }

    #[test]
    fn perfect_power_examples() {
        let r = is_perfect_power(&p(&[1, -2, 1]), 2).unwrap().unwrap();
        assert_eq!(r.base, p(&[-1, 1]));
        // -(2f^2-1)^2 = -4f^4 + 4f^2 - 1
        let r = is_perfect_power(&p(&[-1, 0, 4, 0, -4]), 2).unwrap().unwrap();
        assert_eq!(r.base.scale(&Cyclo24::from_i64(2)), p(&[-1, 0, 2]));
        assert_eq!(r.constant, Cyclo24::from_i64(-4));
        assert!(is_perfect_power(&p(&[-1, 0, 0, 1]), 3).unwrap().is_none());
    }

    #[test]
    fn formatting() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*f^2 - 1");
        let q = Poly::new(vec![Cyclo24::i(), Cyclo24::one() + Cyclo24::sqrt2()]);
        assert_eq!(q.to_string(), "(1 + sqrt2)*f + i");
    }
}
