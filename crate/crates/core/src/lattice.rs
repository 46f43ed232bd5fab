//! Two-dimensional lattice basis reduction.
//!
//! The continued fraction of w1/w2 hands over an unordered minimal basis in
//! one shot: invert the convergent matrix against (w1, w2) and the new ratio
//! is the tail, which lies in F'. The classic nearest-integer Gauss
//! reduction is implemented alongside as an independent route to the minima.

use num_bigint::BigInt;
use num_traits::One;

use crate::cfrac::{cf_expand, convergents, Variant};
use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Rational};
use crate::modgroup::Mat2;
use crate::regions::{in_region, Region};

/// An R-linearly independent pair spanning a lattice Z w1 + Z w2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    w1: QuadElem,
    w2: QuadElem,
}

impl Basis {
    pub fn new(w1: QuadElem, w2: QuadElem) -> Result<Self> {
        if w2.is_zero() || w1.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        let ratio = w1.div(&w2)?;
        if !ratio.radicand().is_complex_or_rational() {
            return Err(Error::PositiveRadicand);
        }
        if ratio.im_sign() == 0 {
            return Err(Error::DegenerateLattice);
        }
        Ok(Basis { w1, w2 })
    }

    pub fn w1(&self) -> &QuadElem {
        &self.w1
    }

    pub fn w2(&self) -> &QuadElem {
        &self.w2
    }
}

/// Unordered minimal basis via the continued fraction of w1/w2, together
/// with the convergent matrix M satisfying (w1, w2)^T = M (u, v)^T.
pub fn reduce_basis(basis: &Basis) -> Result<(QuadElem, QuadElem, Mat2)> {
    let z = basis.w1.div(&basis.w2)?;
    let cf = cf_expand(&z, Variant::V1)?;
    let conv = convergents(cf.coeffs());
    let r = cf.degree() as isize;
    let m = Mat2::new(
        conv.h(r - 1).clone(),
        conv.h(r).clone(),
        conv.k(r - 1).clone(),
        conv.k(r).clone(),
    )
    .expect("convergent matrix has determinant (-1)^r");
    // (u, v)^T = M^{-1} (w1, w2)^T = (-1)^r [[k_r, -h_r], [-k_{r-1}, h_{r-1}]].
    let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let u = basis
        .w1
        .mul_int(&(conv.k(r) * &sign))
        .sub(&basis.w2.mul_int(&(conv.h(r) * &sign)))?;
    let v = basis
        .w2
        .mul_int(&(conv.h(r - 1) * &sign))
        .sub(&basis.w1.mul_int(&(conv.k(r - 1) * &sign)))?;
    debug_assert_eq!(u.div(&v).unwrap(), *cf.tail());
    Ok((u, v, m))
}

/// Nearest integer to a rational, with half-integers rounded up.
fn round_half_up(r: &Rational) -> BigInt {
    (r + Rational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer()
}

/// Classic Gauss reduction: keep the shorter vector, reduce the longer one
/// by the nearest-integer multiple, stop once nothing shrinks. The output
/// satisfies |u| <= |v| <= |u +- v|.
pub fn classic_gauss_step_reduce(basis: &Basis) -> Result<(QuadElem, QuadElem)> {
    let mut u = basis.w1.clone();
    let mut v = basis.w2.clone();
    loop {
        if u.abs_sq() > v.abs_sq() {
            std::mem::swap(&mut u, &mut v);
        }
        let t = v.div(&u)?;
        let m = round_half_up(t.re());
        v = v.sub(&u.mul_int(&m))?;
        if v.abs_sq() >= u.abs_sq() {
            return Ok((u, v));
        }
    }
}

/// A pair is unordered minimal exactly when u/v lies in closure(F').
pub fn is_unordered_minimal(u: &QuadElem, v: &QuadElem) -> Result<bool> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::DegenerateLattice);
    }
    let ratio = u.div(v)?;
    if !ratio.radicand().is_complex_or_rational() {
        return Err(Error::PositiveRadicand);
    }
    if ratio.im_sign() == 0 {
        return Err(Error::DegenerateLattice);
    }
    in_region(&ratio, Region::FprimeClosure)
}
