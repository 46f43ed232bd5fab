//! Exact membership predicates for the regions driving the algorithms.
//!
//! F is the standard fundamental domain of SL(2,Z) with its left boundary
//! included; G is the variant with the right boundary included. F' is the
//! hourglass F u SF u {0} u -(F u SF), closed under z -> -z and z -> 1/z.
//! C and D are the halting regions of the version-2 and version-3 expansion
//! loops. All tests are boundary-aware and use squared moduli, so no square
//! root is ever extracted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{sign_a_plus_b_sqrt, QuadElem, Radicand, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    F,
    G,
    Fprime,
    Gprime,
    FprimeClosure,
    C,
    D,
}

fn require_complex(z: &QuadElem) -> Result<()> {
    if z.radicand().is_complex_or_rational() {
        Ok(())
    } else {
        Err(Error::PositiveRadicand)
    }
}

/// Exact membership of z in the given region; z must be rational or complex.
pub fn in_region(z: &QuadElem, r: Region) -> Result<bool> {
    require_complex(z)?;
    Ok(match r {
        Region::F => in_f(z),
        Region::G => in_g(z),
        Region::Fprime => in_fprime(z),
        Region::Gprime => in_gprime(z),
        Region::FprimeClosure => in_fprime_closure(z),
        Region::C => in_c(z),
        Region::D => in_d(z),
    })
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// -1/2 <= Re(z) < 1/2, |z| >= 1, |z| = 1 implies Re(z) <= 0, Im(z) > 0.
pub(crate) fn in_f(z: &QuadElem) -> bool {
    if z.im_sign() <= 0 {
        return false;
    }
    let x = z.re();
    if *x < -half() || *x >= half() {
        return false;
    }
    let n = z.abs_sq();
    if n < Rational::one() {
        return false;
    }
    n > Rational::one() || !x.is_positive()
}

/// Mirror of F with the boundary on the right.
pub(crate) fn in_g(z: &QuadElem) -> bool {
    if z.im_sign() <= 0 {
        return false;
    }
    let x = z.re();
    if *x <= -half() || *x > half() {
        return false;
    }
    let n = z.abs_sq();
    if n < Rational::one() {
        return false;
    }
    n > Rational::one() || !x.is_negative()
}

/// The four-chart union F u SF u {0} u -(F u SF), with S: z -> -1/z.
pub(crate) fn in_fprime(z: &QuadElem) -> bool {
    if z.is_zero() {
        return true;
    }
    if in_f(z) || in_f(&z.neg()) {
        return true;
    }
    let inv = z.inv().expect("nonzero");
    in_f(&inv.neg()) || in_f(&inv)
}

pub(crate) fn in_gprime(z: &QuadElem) -> bool {
    if z.is_zero() {
        return true;
    }
    if in_g(z) || in_g(&z.neg()) {
        return true;
    }
    let inv = z.inv().expect("nonzero");
    in_g(&inv.neg()) || in_g(&inv)
}

/// closure(F') = { -1/2 <= Re(z) <= 1/2, |z-1| >= 1, |z+1| >= 1 }.
pub(crate) fn in_fprime_closure(z: &QuadElem) -> bool {
    let x = z.re();
    if *x < -half() || *x > half() {
        return false;
    }
    let one = QuadElem::one();
    z.sub(&one).expect("radicands agree").abs_sq() >= Rational::one()
        && z.add(&one).expect("radicands agree").abs_sq() >= Rational::one()
}

/// Halting region of the version-2 loop: the lens |z| <= 1, |z-1| <= 1 minus
/// the lower part of the left circle and the upper part of the right circle.
pub(crate) fn in_c(z: &QuadElem) -> bool {
    let n0 = z.abs_sq();
    if n0 > Rational::one() {
        return false;
    }
    let n1 = z.sub(&QuadElem::one()).expect("radicands agree").abs_sq();
    if n1 > Rational::one() {
        return false;
    }
    let im = z.im_sign();
    if n0 == Rational::one() && im <= 0 {
        return false;
    }
    !(n1 == Rational::one() && im >= 0)
}

/// Halting region of the version-3 loop: the open disc |z - 1/2| < 1/2.
pub(crate) fn in_d(z: &QuadElem) -> bool {
    let c = QuadElem::rational(half());
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    z.sub(&c).expect("radicands agree").abs_sq() < quarter
}

/// A cusp p/q in lowest terms with q >= 0; q = 0 only as +-1/0 (infinity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Ok(Fraction { p, q })
    }

    pub fn from_ints(p: i64, q: i64) -> Result<Self> {
        Fraction::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn infinity() -> Self {
        Fraction {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn value(&self) -> Result<Rational> {
        if self.is_infinite() {
            Err(Error::InfiniteFraction)
        } else {
            Ok(Rational::new(self.p.clone(), self.q.clone()))
        }
    }

    /// |p1*q2 - p2*q1| = 1.
    pub fn is_farey_neighbor(&self, other: &Fraction) -> bool {
        (&self.p * &other.q - &other.p * &self.q).abs().is_one()
    }

    pub fn mediant(&self, other: &Fraction) -> Result<Fraction> {
        Fraction::new(&self.p + &other.p, &self.q + &other.q)
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Exact test |z - (p/q + i/(2q^2))|^2 <= 1/(4q^4) for the Ford circle of
/// diameter 1/q^2 tangent to R at p/q. Boundary points count as inside.
pub fn in_ford_circle(z: &QuadElem, f: &Fraction) -> Result<bool> {
    require_complex(z)?;
    if f.is_infinite() {
        return Err(Error::InfiniteFraction);
    }
    // Expanding the square: (x - p/q)^2 + Im^2 - Im/q^2 + 1/(4q^4) <= 1/(4q^4)
    // reduces to A <= B*sqrt(|N|) with A = (x - p/q)^2 + y^2|N|, B = y/q^2.
    let pq = f.value()?;
    let dx = z.re() - &pq;
    let a = &dx * &dx + z.im_sq();
    let q2 = Rational::from(&f.q * &f.q);
    let (b, absn) = match z.radicand() {
        Radicand::Rational => (Rational::zero(), BigInt::zero()),
        Radicand::Sqrt(n) => (z.y() / &q2, -n.clone()),
    };
    Ok(sign_a_plus_b_sqrt(&a, &(-b), &absn) <= 0)
}
