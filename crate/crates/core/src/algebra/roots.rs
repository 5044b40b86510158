//! Roots lying in the cyclotomic field.
//!
//! Numerical roots under the four embeddings ζ -> ζ^j, j ∈ {1,5,7,11},
//! pin down the eight rational coordinates of a candidate; candidates are
//! rationalized and kept only when they vanish exactly.

use std::sync::OnceLock;

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::{poly::gcd_raw, Cyclo24, Field, Poly};
use crate::numeric::{poly_roots, rationalize};

pub(crate) const EMB: [u32; 4] = [1, 5, 7, 11];
const MAX_DEN: i64 = 1_000_000;

fn coord_solver() -> &'static SMatrix<f64, 8, 8> {
    static M: OnceLock<SMatrix<f64, 8, 8>> = OnceLock::new();
    M.get_or_init(|| {
        let mut a = SMatrix::<f64, 8, 8>::zeros();
        for (r, &j) in EMB.iter().enumerate() {
            for m in 0..8 {
                let w = Complex64::from_polar(1.0, std::f64::consts::PI * (j * m as u32) as f64 / 12.0);
                a[(2 * r, m)] = w.re;
                a[(2 * r + 1, m)] = w.im;
            }
        }
        a.try_inverse().expect("embedding matrix is invertible")
    })
}

/// Recover field coordinates from the four embedding values.
pub(crate) fn recognize(vals: [Complex64; 4]) -> Option<Cyclo24> {
    let mut b = SVector::<f64, 8>::zeros();
    for (r, v) in vals.iter().enumerate() {
        b[2 * r] = v.re;
        b[2 * r + 1] = v.im;
    }
    let x = coord_solver() * b;
    let scale = vals.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut coords: [num_rational::BigRational; 8] = Default::default();
    for m in 0..8 {
        coords[m] = rationalize(x[m], MAX_DEN, 1e-9 * scale)?;
    }
    Some(Cyclo24::from_coords(&coords))
}

/// Squarefree part, monic.
pub fn squarefree_part(p: &Poly<Cyclo24>) -> Poly<Cyclo24> {
    let g = gcd_raw(p, &p.derivative());
    p.exact_div(&g).expect("gcd divides").monic()
}

/// Distinct roots of `p` that lie in the field.
pub fn roots_in_field(p: &Poly<Cyclo24>) -> Vec<Cyclo24> {
    if p.is_constant() {
        return Vec::new();
    }
    let mut q = squarefree_part(p);
    let mut found: Vec<Cyclo24> = Vec::new();
    // peel off rational-coefficient linear factors cheaply first
    while q.deg() >= 1 {
        if q.deg() == 1 {
            found.push(-q.coeff(0) / q.lc());
            break;
        }
        let emb: Vec<Vec<Complex64>> = EMB
            .iter()
            .map(|&j| {
                let c: Vec<Complex64> = q.coeffs().iter().map(|c| c.embed(j)).collect();
                poly_roots(&c)
            })
            .collect();
        let mut hit = None;
        'outer: for &r1 in &emb[0] {
            for &r5 in &emb[1] {
                for &r7 in &emb[2] {
                    for &r11 in &emb[3] {
                        if let Some(a) = recognize([r1, r5, r7, r11]) {
                            if q.eval(&a).is_zero() {
                                hit = Some(a);
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        match hit {
            Some(a) => {
                q = q.exact_div(&Poly::linear_root(a.clone())).expect("root divides");
                found.push(a);
            }
            None => break,
        }
    }
    found.sort_by(|a, b| order_key(a).partial_cmp(&order_key(b)).unwrap());
    found
}

fn order_key(a: &Cyclo24) -> (f64, f64, String) {
    let z = a.to_complex();
    let arg = if z.norm() < 1e-300 { -10.0 } else { z.arg() };
    (round(arg), round(z.norm()), a.key())
}

fn round(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Every n-th root of `a` lying in the field.
pub fn nth_roots_in_field(a: &Cyclo24, n: u32) -> Vec<Cyclo24> {
    if a.is_zero() {
        return vec![Cyclo24::zero()];
    }
    let mut c = vec![Cyclo24::zero(); n as usize + 1];
    c[0] = -a.clone();
    c[n as usize] = Cyclo24::one();
    roots_in_field(&Poly::new(c))
}

/// The field n-th root closest to the principal complex root, if any
/// n-th root lies in the field.
pub fn nth_root(a: &Cyclo24, n: u32) -> Option<Cyclo24> {
    let target = a.to_complex().powf(1.0 / n as f64);
    nth_roots_in_field(a, n).into_iter().min_by(|x, y| {
        let dx = (x.to_complex() - target).norm();
        let dy = (y.to_complex() - target).norm();
        dx.partial_cmp(&dy).unwrap()
    })
}
