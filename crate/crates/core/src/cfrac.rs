//! The continued fraction algorithms and the structure that hangs off them.
//!
//! `cf_expand` produces the canonical representation
//! [a_0, a_1, ..., a_n + z_0] with a_j >= 1 for j >= 1 and tail z_0 in F'.
//! Three equivalent loop formulations are provided (V1 terminates on the
//! hourglass F' with a delta-shift, V2 on the lens C, V3 on the disc D) and
//! must agree coefficient for coefficient. The rest of the module covers
//! evaluation, convergents, canonicity, the corner-tail twin identities,
//! conjugation, the G' re-representation, Serret equivalence, the
//! convergence bound, and periodic expansions of real quadratic surds.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Radicand, Rational};
use crate::regions::{in_f, in_fprime, in_gprime};

/// Defensive bound; no legal input comes anywhere near it.
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

/// Which side of the hourglass the tail is normalized to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    FPrime,
    GPrime,
}

/// A finite representation [a_0, a_1, ..., a_n + tail].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    coeffs: Vec<BigInt>,
    tail: QuadElem,
    chart: Chart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    V1,
    V2,
    V3,
}

impl ContinuedFraction {
    /// An F'-representation. Coefficients must be positive after the first
    /// and the tail must lie in F'.
    pub fn new(coeffs: Vec<BigInt>, tail: QuadElem) -> Result<Self> {
        Self::new_in(coeffs, tail, Chart::FPrime)
    }

    /// A G'-representation, produced by `to_gprime`.
    pub fn new_gprime(coeffs: Vec<BigInt>, tail: QuadElem) -> Result<Self> {
        Self::new_in(coeffs, tail, Chart::GPrime)
    }

    fn new_in(coeffs: Vec<BigInt>, tail: QuadElem, chart: Chart) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidContinuedFraction("no coefficients"));
        }
        if coeffs.iter().skip(1).any(|a| !a.is_positive()) {
            return Err(Error::InvalidContinuedFraction(
                "coefficients after the first must be positive",
            ));
        }
        if !tail.radicand().is_complex_or_rational() {
            return Err(Error::InvalidContinuedFraction("tail must not be a real surd"));
        }
        let ok = match chart {
            Chart::FPrime => in_fprime(&tail),
            Chart::GPrime => in_gprime(&tail),
        };
        if !ok {
            return Err(Error::InvalidContinuedFraction("tail outside its region"));
        }
        Ok(ContinuedFraction { coeffs, tail, chart })
    }

    pub fn from_ints(coeffs: &[i64], tail: QuadElem) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| BigInt::from(a)).collect(), tail)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn tail(&self) -> &QuadElem {
        &self.tail
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Index of the last coefficient (n in [a_0, ..., a_n + z_0]).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl std::fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.tail.is_zero() {
            write!(f, " + {}", self.tail)?;
        }
        write!(f, "]")?;
        if self.chart == Chart::GPrime {
            write!(f, "_G'")?;
        }
        Ok(())
    }
}

fn reject_real_irrational(z: &QuadElem) -> Result<()> {
    match z.radicand() {
        Radicand::Sqrt(n) if n.is_positive() => Err(Error::RealIrrational),
        _ => Ok(()),
    }
}

/// Canonical continued fraction of z by the requested loop formulation.
/// All three variants return identical output.
pub fn cf_expand(z: &QuadElem, variant: Variant) -> Result<ContinuedFraction> {
    cf_expand_capped(z, variant, DEFAULT_MAX_ITERS)
}

pub fn cf_expand_capped(z: &QuadElem, variant: Variant, cap: usize) -> Result<ContinuedFraction> {
    reject_real_irrational(z)?;
    match variant {
        Variant::V1 => expand_v1(z, cap),
        Variant::V2 => expand_v2(z, cap),
        Variant::V3 => expand_v3(z, cap),
    }
}

fn expand_v1(z: &QuadElem, cap: usize) -> Result<ContinuedFraction> {
    let mut z = z.clone();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for _ in 0..cap {
        let m = z.re().floor().to_integer();
        let w = z.sub_int(&m);
        // Terminal test for delta = 0, then delta = 1; 0 wins when both hold.
        if in_fprime(&w) {
            coeffs.push(m);
            return ContinuedFraction::new(coeffs, w);
        }
        let w1 = w.sub_int(&BigInt::one());
        if in_fprime(&w1) {
            coeffs.push(m + 1);
            return ContinuedFraction::new(coeffs, w1);
        }
        coeffs.push(m);
        z = w.inv().expect("w is nonzero: 0 lies in F'");
    }
    Err(Error::IterationLimit)
}

fn expand_v2(z: &QuadElem, cap: usize) -> Result<ContinuedFraction> {
    let mut z = z.clone();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for _ in 0..cap {
        let m = z.re().floor().to_integer();
        let w = z.sub_int(&m);
        if crate::regions::in_c(&w) {
            coeffs.push(m);
            z = w.inv().expect("0 is not in C");
            continue;
        }
        coeffs.push(m);
        if in_fprime(&w) {
            return ContinuedFraction::new(coeffs, w);
        }
        let w1 = w.sub_int(&BigInt::one());
        assert!(in_fprime(&w1), "outside C, w or w-1 lies in F'");
        let last = coeffs.last_mut().expect("just pushed");
        *last += 1;
        return ContinuedFraction::new(coeffs, w1);
    }
    Err(Error::IterationLimit)
}

fn expand_v3(z: &QuadElem, cap: usize) -> Result<ContinuedFraction> {
    let mut z = z.clone();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for _ in 0..cap {
        let m = z.re().floor().to_integer();
        let w = z.sub_int(&m);
        if crate::regions::in_d(&w) {
            coeffs.push(m);
            z = w.inv().expect("0 is not in D");
            continue;
        }
        coeffs.push(m);
        if in_fprime(&w) {
            return ContinuedFraction::new(coeffs, w);
        }
        let w1 = w.sub_int(&BigInt::one());
        if in_fprime(&w1) {
            let last = coeffs.last_mut().expect("just pushed");
            *last += 1;
            return ContinuedFraction::new(coeffs, w1);
        }
        // w in C - D: w = 1/(1 + z_0), so append a 1 and unwrap the tail.
        let tail = w.inv().expect("w nonzero").sub_int(&BigInt::one());
        assert!(in_fprime(&tail), "C - D unwraps into F'");
        coeffs.push(BigInt::one());
        return ContinuedFraction::new(coeffs, tail);
    }
    Err(Error::IterationLimit)
}

/// Convergent table h_m/k_m for m = -2 .. n, stored with the seed columns
/// h_{-1}/k_{-1} = 1/0 and h_{-2}/k_{-2} = 0/1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergents {
    h: Vec<BigInt>,
    k: Vec<BigInt>,
}

impl Convergents {
    pub fn h(&self, m: isize) -> &BigInt {
        &self.h[(m + 2) as usize]
    }

    pub fn k(&self, m: isize) -> &BigInt {
        &self.k[(m + 2) as usize]
    }

    /// Largest valid index n.
    pub fn degree(&self) -> isize {
        self.h.len() as isize - 3
    }
}

/// h_m = a_m h_{m-1} + h_{m-2}, k_m = a_m k_{m-1} + k_{m-2}.
pub fn convergents(coeffs: &[BigInt]) -> Convergents {
    let mut h = Vec::with_capacity(coeffs.len() + 2);
    let mut k = Vec::with_capacity(coeffs.len() + 2);
    h.push(BigInt::zero());
    h.push(BigInt::one());
    k.push(BigInt::one());
    k.push(BigInt::zero());
    for a in coeffs {
        let hm = a * &h[h.len() - 1] + &h[h.len() - 2];
        let km = a * &k[k.len() - 1] + &k[k.len() - 2];
        h.push(hm);
        k.push(km);
    }
    Convergents { h, k }
}

/// Exact value (h_{n-1} z_0 + h_n) / (k_{n-1} z_0 + k_n).
pub fn cf_eval(cf: &ContinuedFraction) -> QuadElem {
    let conv = convergents(cf.coeffs());
    let n = cf.degree() as isize;
    let z0 = cf.tail();
    let num = z0.mul_int(conv.h(n - 1)).add_rat(&Rational::from(conv.h(n).clone()));
    let den = z0.mul_int(conv.k(n - 1)).add_rat(&Rational::from(conv.k(n).clone()));
    // The denominator cannot vanish: -k_n/k_{n-1} <= -1 never lies in F'.
    num.div(&den).expect("denominator nonzero for tails in F'")
}

/// The corner rho = e^{i pi/3} = (1 + sqrt(-3))/2.
pub fn corner_rho() -> QuadElem {
    QuadElem::from_parts(1, 2, 1, 2, -3).expect("-3 is a valid radicand")
}

/// rho^2 = (-1 + sqrt(-3))/2.
pub fn corner_rho2() -> QuadElem {
    QuadElem::from_parts(-1, 2, 1, 2, -3).expect("-3 is a valid radicand")
}

/// rho^4 = (-1 - sqrt(-3))/2.
pub fn corner_rho4() -> QuadElem {
    QuadElem::from_parts(-1, 2, -1, 2, -3).expect("-3 is a valid radicand")
}

/// rho^5 = (1 - sqrt(-3))/2.
pub fn corner_rho5() -> QuadElem {
    QuadElem::from_parts(1, 2, -1, 2, -3).expect("-3 is a valid radicand")
}

/// Canonical means: tail not rho^2 or rho^4, and a_n >= 2 whenever the tail
/// is 0 and there is more than one coefficient.
pub fn is_canonical(cf: &ContinuedFraction) -> bool {
    let tail = cf.tail();
    if *tail == corner_rho2() || *tail == corner_rho4() {
        return false;
    }
    if tail.is_zero() && cf.degree() >= 1 {
        let last = cf.coeffs().last().expect("nonempty");
        if *last < BigInt::from(2) {
            return false;
        }
    }
    true
}

/// The equal-valued alternative representation when the tail is one of the
/// four corners rho, rho^2, rho^4, rho^5. Each corner value has exactly one
/// twin reachable by a single identity:
///
///   [..., a + rho]    = [..., (a+1) + rho^2]
///   [..., a + rho^5]  = [..., (a+1) + rho^4]
///   [..., a + rho^2]  = [..., (a-1) + rho]      (or, when a = 1 mid-word,
///                        [..., c, 1 + rho^2] = [..., (c+1) + rho^4])
///   [..., a + rho^4]  = [..., (a-1) + rho^5]    (or, when a = 1 mid-word,
///                        [..., c, 1 + rho^4] = [..., c + rho])
pub fn exceptional_twin(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    let tail = cf.tail();
    let mut coeffs = cf.coeffs().to_vec();
    let last_is_one = *coeffs.last().expect("nonempty") == BigInt::one();
    let mid_word = coeffs.len() >= 2;
    if *tail == corner_rho() {
        *coeffs.last_mut().unwrap() += 1;
        ContinuedFraction::new(coeffs, corner_rho2())
    } else if *tail == corner_rho5() {
        *coeffs.last_mut().unwrap() += 1;
        ContinuedFraction::new(coeffs, corner_rho4())
    } else if *tail == corner_rho2() {
        if mid_word && last_is_one {
            coeffs.pop();
            *coeffs.last_mut().unwrap() += 1;
            ContinuedFraction::new(coeffs, corner_rho4())
        } else {
            *coeffs.last_mut().unwrap() -= 1;
            ContinuedFraction::new(coeffs, corner_rho())
        }
    } else if *tail == corner_rho4() {
        if mid_word && last_is_one {
            coeffs.pop();
            ContinuedFraction::new(coeffs, corner_rho())
        } else {
            *coeffs.last_mut().unwrap() -= 1;
            ContinuedFraction::new(coeffs, corner_rho5())
        }
    } else {
        Err(Error::NotACorner)
    }
}

/// Which dashed border of F' the conjugated tail falls on, if any.
enum Border {
    InsideFprime,
    B1, // Re = 1/2, Im > 0 (above rho)
    B2, // inside the unit disc, Im > 0 (between rho^2 and 0)
    B3, // inside the unit disc, Im < 0 (between 0 and rho^5)
    B4, // Re = -1/2, Im < 0 (below rho^4)
}

fn classify_conjugate(zbar: &QuadElem) -> Border {
    if in_fprime(zbar) {
        return Border::InsideFprime;
    }
    let n = zbar.abs_sq();
    let one = Rational::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if n > one {
        if *zbar.re() == half {
            Border::B1
        } else {
            debug_assert_eq!(*zbar.re(), -half);
            Border::B4
        }
    } else {
        debug_assert!(n < one);
        if zbar.im_sign() > 0 {
            Border::B2
        } else {
            Border::B3
        }
    }
}

/// Canonical continued fraction of the complex conjugate of `cf_eval(cf)`,
/// computed by the border case rules rather than by re-expanding.
pub fn conjugate_cf(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    if cf.chart() != Chart::FPrime {
        return Err(Error::InvalidContinuedFraction("expected an F' representation"));
    }
    let z0 = cf.tail();
    let zbar = z0.conj();
    let mut coeffs = cf.coeffs().to_vec();
    let n = cf.degree();
    match classify_conjugate(&zbar) {
        Border::InsideFprime => ContinuedFraction::new(coeffs, zbar),
        Border::B1 => {
            *coeffs.last_mut().unwrap() += 1;
            ContinuedFraction::new(coeffs, z0.neg())
        }
        Border::B2 => {
            if n == 0 || *coeffs.last().unwrap() >= BigInt::from(2) {
                *coeffs.last_mut().unwrap() -= 1;
                coeffs.push(BigInt::one());
                ContinuedFraction::new(coeffs, z0.clone())
            } else {
                coeffs.pop();
                *coeffs.last_mut().unwrap() += 1;
                ContinuedFraction::new(coeffs, z0.clone())
            }
        }
        Border::B3 => {
            coeffs.push(BigInt::one());
            ContinuedFraction::new(coeffs, z0.inv()?.neg())
        }
        Border::B4 => {
            if n == 0 || *coeffs.last().unwrap() >= BigInt::from(2) {
                *coeffs.last_mut().unwrap() -= 1;
                ContinuedFraction::new(coeffs, z0.neg())
            } else {
                coeffs.pop();
                ContinuedFraction::new(coeffs, z0.inv()?.neg())
            }
        }
    }
}

/// The G'-representation of the same value, by the five-case conversion rule.
pub fn to_gprime(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    if cf.chart() != Chart::FPrime {
        return Err(Error::InvalidContinuedFraction("expected an F' representation"));
    }
    let z0 = cf.tail();
    let zbar = z0.conj();
    let mut coeffs = cf.coeffs().to_vec();
    let n = cf.degree();
    match classify_conjugate(&zbar) {
        Border::InsideFprime => ContinuedFraction::new_gprime(coeffs, z0.clone()),
        Border::B1 => {
            *coeffs.last_mut().unwrap() += 1;
            ContinuedFraction::new_gprime(coeffs, zbar.neg())
        }
        Border::B2 => {
            if n == 0 || *coeffs.last().unwrap() >= BigInt::from(2) {
                *coeffs.last_mut().unwrap() -= 1;
                coeffs.push(BigInt::one());
                ContinuedFraction::new_gprime(coeffs, zbar)
            } else {
                coeffs.pop();
                *coeffs.last_mut().unwrap() += 1;
                ContinuedFraction::new_gprime(coeffs, zbar)
            }
        }
        Border::B3 => {
            coeffs.push(BigInt::one());
            ContinuedFraction::new_gprime(coeffs, zbar.inv()?.neg())
        }
        Border::B4 => {
            if n == 0 || *coeffs.last().unwrap() >= BigInt::from(2) {
                *coeffs.last_mut().unwrap() -= 1;
                ContinuedFraction::new_gprime(coeffs, zbar.neg())
            } else {
                coeffs.pop();
                ContinuedFraction::new_gprime(coeffs, zbar.inv()?.neg())
            }
        }
    }
}

/// GL(2,Z) equivalence via tails: w ~ z iff w_0 is one of z_0, -z_0, 1/z_0,
/// -1/z_0 (with 0 matching only 0, making all rationals equivalent).
pub fn serret_equivalent(z: &QuadElem, w: &QuadElem) -> Result<bool> {
    let z0 = cf_expand(z, Variant::V1)?.tail().clone();
    let w0 = cf_expand(w, Variant::V1)?.tail().clone();
    if z0.is_zero() || w0.is_zero() {
        return Ok(z0.is_zero() && w0.is_zero());
    }
    if z0.radicand() != w0.radicand() {
        return Ok(false);
    }
    Ok(w0 == z0 || w0 == z0.neg() || w0 == z0.inv()? || w0 == z0.inv()?.neg())
}

/// 1/(k_n k_{n-1}), an upper bound for the distance between the full value
/// and the truncation [a_0, ..., a_n].
pub fn tail_distance_bound(cf: &ContinuedFraction) -> Result<Rational> {
    let n = cf.degree() as isize;
    if n < 1 {
        return Err(Error::TooShort);
    }
    let conv = convergents(cf.coeffs());
    Ok(Rational::new(BigInt::one(), conv.k(n) * conv.k(n - 1)))
}

/// Eventually periodic expansion of a real quadratic surd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCF {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl std::fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.preperiod.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.preperiod.is_empty() {
            write!(f, ", ")?;
        }
        write!(f, "(")?;
        for (i, a) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")]")
    }
}

impl PeriodicCF {
    /// Coefficient at any index of the infinite sequence.
    pub fn coefficient(&self, m: usize) -> &BigInt {
        if m < self.preperiod.len() {
            &self.preperiod[m]
        } else {
            &self.period[(m - self.preperiod.len()) % self.period.len()]
        }
    }
}

/// Ordinary continued fraction of x + y*sqrt(N), N > 0 non-square, y != 0,
/// by the classical (P + sqrt(D))/Q state recursion with repeat detection.
pub fn periodic_cf(s: &QuadElem) -> Result<PeriodicCF> {
    let n = match s.radicand() {
        Radicand::Rational => return Err(Error::RationalInput),
        Radicand::Sqrt(n) => {
            if n.is_negative() {
                return Err(Error::NotRealSurd);
            }
            n.clone()
        }
    };
    // s = (a + b*sqrt(n))/c; flip signs so the sqrt coefficient is positive.
    let c = s.x().denom().lcm(s.y().denom());
    let a = s.x().numer() * (&c / s.x().denom());
    let b = s.y().numer() * (&c / s.y().denom());
    let (mut p, mut q, mut d) = if b.is_positive() {
        (a, c, &b * &b * &n)
    } else {
        (-a, -c, &b * &b * &n)
    };
    // Ensure q divides d - p^2, scaling by |q| if needed.
    if !((&d - &p * &p) % &q).is_zero() {
        let qa = q.abs();
        p *= &qa;
        d *= &qa * &qa;
        q *= &qa;
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    for i in 0..DEFAULT_MAX_ITERS {
        if let Some(&j) = seen.get(&(p.clone(), q.clone())) {
            let preperiod = coeffs[..j].to_vec();
            let period = coeffs[j..].to_vec();
            return Ok(normalize_periodic(preperiod, period));
        }
        seen.insert((p.clone(), q.clone()), i);
        let state = QuadElem::new(
            Rational::new(p.clone(), q.clone()),
            Rational::new(BigInt::one(), q.clone()),
            d.clone(),
        )
        .expect("d is non-square");
        let a_i = state.floor_real();
        coeffs.push(a_i.clone());
        let p_next = &a_i * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
    Err(Error::IterationLimit)
}

/// Shrink the period to its minimal rotation and absorb a preperiod suffix
/// that merely rotates the period.
fn normalize_periodic(mut preperiod: Vec<BigInt>, mut period: Vec<BigInt>) -> PeriodicCF {
    let len = period.len();
    for d in 1..len {
        if len % d == 0 && period.chunks(d).all(|ch| ch == &period[..d]) {
            period.truncate(d);
            break;
        }
    }
    while let Some(last) = preperiod.last() {
        if last == period.last().expect("nonempty period") {
            let rotated = period.pop().expect("nonempty period");
            period.insert(0, rotated);
            preperiod.pop();
        } else {
            break;
        }
    }
    PeriodicCF { preperiod, period }
}

/// True when the tail lies in F or -F (used by fan location).
pub fn tail_in_pm_f(tail: &QuadElem) -> bool {
    in_f(tail) || in_f(&tail.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadElem;

    fn expand(z: &QuadElem) -> ContinuedFraction {
        cf_expand(z, Variant::V1).unwrap()
    }

    fn gaussian(xn: i64, xd: i64, yn: i64, yd: i64) -> QuadElem {
        QuadElem::gaussian(xn, xd, yn, yd)
    }

    #[test]
    fn eq423_expansion() {
        let z = gaussian(-101732, 28505, 1, 171030);
        let cf = expand(&z);
        let expected = ContinuedFraction::from_ints(&[-4, 2, 3, 7, 1, 5], gaussian(1, 4, -3, 4)).unwrap();
        assert_eq!(cf, expected);
        assert_eq!(cf_eval(&cf), z);
    }

    #[test]
    fn section6_expansion() {
        let z = QuadElem::parse("(79356+2i)/93505").unwrap();
        let cf = expand(&z);
        let expected =
            ContinuedFraction::from_ints(&[0, 1, 5, 1, 1, 1, 1, 4], gaussian(0, 1, -1, 2)).unwrap();
        assert_eq!(cf, expected);
    }

    #[test]
    fn rational_half() {
        let cf = expand(&gaussian(1, 2, 0, 1));
        assert_eq!(cf, ContinuedFraction::from_ints(&[0, 2], QuadElem::zero()).unwrap());
        assert!(is_canonical(&cf));
    }

    #[test]
    fn corner_rho_expands_to_itself() {
        // The ambiguous case z - m = rho resolves with delta = 0.
        let cf = expand(&corner_rho());
        assert_eq!(cf, ContinuedFraction::new(vec![BigInt::zero()], corner_rho()).unwrap());
    }

    #[test]
    fn variants_agree_on_examples() {
        let samples = [
            gaussian(-101732, 28505, 1, 171030),
            gaussian(79356, 93505, 2, 93505),
            gaussian(1, 2, 0, 1),
            gaussian(-7, 3, 22, 9),
            QuadElem::zero(),
            QuadElem::from_int(-3),
        ];
        for z in &samples {
            let a = cf_expand(z, Variant::V1).unwrap();
            let b = cf_expand(z, Variant::V2).unwrap();
            let c = cf_expand(z, Variant::V3).unwrap();
            assert_eq!(a, b, "V1 vs V2 on {z}");
            assert_eq!(a, c, "V1 vs V3 on {z}");
        }
    }

    #[test]
    fn eval_matrix_form() {
        // [2, 1, 3, 3, 10, 2, 4 + rho] from the Farey corner example.
        let cf = ContinuedFraction::from_ints(&[2, 1, 3, 3, 10, 2, 4], corner_rho()).unwrap();
        let v = cf_eval(&cf);
        // (p1 (rho - 1) - p2) / (q1 (rho - 1) - q2)
        let rho_minus_1 = corner_rho().sub_int(&BigInt::one());
        let num = rho_minus_1.mul_int(&BigInt::from(3483)).add_rat(&Rational::from(BigInt::from(-778)));
        let den = rho_minus_1.mul_int(&BigInt::from(1258)).add_rat(&Rational::from(BigInt::from(-281)));
        assert_eq!(v, num.div(&den).unwrap());
    }

    #[test]
    fn eval_single_coefficient() {
        let cf = ContinuedFraction::from_ints(&[5], QuadElem::zero()).unwrap();
        assert_eq!(cf_eval(&cf), QuadElem::from_int(5));
    }

    #[test]
    fn convergents_table() {
        let coeffs: Vec<BigInt> = [2, 1, 3, 3, 10, 2, 4].iter().map(|&a| BigInt::from(a)).collect();
        let conv = convergents(&coeffs);
        assert_eq!(*conv.h(-1), BigInt::one());
        assert_eq!(*conv.k(-1), BigInt::zero());
        assert_eq!(*conv.h(-2), BigInt::zero());
        assert_eq!(*conv.k(-2), BigInt::one());
        assert_eq!(*conv.h(6), BigInt::from(3483));
        assert_eq!(*conv.k(6), BigInt::from(1258));
        assert_eq!(*conv.h(5), BigInt::from(778));
        assert_eq!(*conv.k(5), BigInt::from(281));
    }

    #[test]
    fn convergents_determinant_alternates() {
        let coeffs: Vec<BigInt> = [-4, 2, 3, 7, 1, 5].iter().map(|&a| BigInt::from(a)).collect();
        let conv = convergents(&coeffs);
        for m in 0..=5isize {
            let det = conv.h(m - 1) * conv.k(m) - conv.h(m) * conv.k(m - 1);
            let expected = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(det, expected);
        }
    }

    #[test]
    fn canonicity_rules() {
        let a = ContinuedFraction::from_ints(&[4, 3], QuadElem::zero()).unwrap();
        assert!(is_canonical(&a));
        let b = ContinuedFraction::from_ints(&[4, 2, 1], QuadElem::zero()).unwrap();
        assert!(!is_canonical(&b));
        assert_eq!(cf_eval(&a), cf_eval(&b));
        let c = ContinuedFraction::from_ints(&[0], corner_rho2()).unwrap();
        assert!(!is_canonical(&c));
        let d = ContinuedFraction::from_ints(&[0], gaussian(0, 1, 1, 1)).unwrap();
        assert!(is_canonical(&d));
    }

    #[test]
    fn twin_of_rho_tail() {
        let cf = ContinuedFraction::from_ints(&[3], corner_rho()).unwrap();
        let twin = exceptional_twin(&cf).unwrap();
        assert_eq!(twin, ContinuedFraction::from_ints(&[4], corner_rho2()).unwrap());
        assert_eq!(cf_eval(&twin), cf_eval(&cf));
        // And back: the twin of [4 + rho^2] is [3 + rho] again.
        assert_eq!(exceptional_twin(&twin).unwrap(), cf);
    }

    #[test]
    fn twin_of_trailing_one_rho2() {
        // [c, 1 + rho^2] = [(c+1) + rho^4].
        let cf = ContinuedFraction::from_ints(&[7, 1], corner_rho2()).unwrap();
        let twin = exceptional_twin(&cf).unwrap();
        assert_eq!(twin, ContinuedFraction::from_ints(&[8], corner_rho4()).unwrap());
        assert_eq!(cf_eval(&twin), cf_eval(&cf));
    }

    #[test]
    fn twin_requires_corner() {
        let cf = ContinuedFraction::from_ints(&[0], gaussian(0, 1, 1, 1)).unwrap();
        assert_eq!(exceptional_twin(&cf), Err(Error::NotACorner));
    }

    #[test]
    fn conjugate_real_tail_fixed() {
        let cf = ContinuedFraction::from_ints(&[0, 2], QuadElem::zero()).unwrap();
        assert_eq!(conjugate_cf(&cf).unwrap(), cf);
    }

    #[test]
    fn conjugate_matches_reexpansion_on_eq423() {
        let cf = expand(&gaussian(-101732, 28505, 1, 171030));
        let conj = conjugate_cf(&cf).unwrap();
        let direct = expand(&gaussian(-101732, 28505, -1, 171030));
        assert_eq!(conj, direct);
    }

    #[test]
    fn conjugate_b1_increments() {
        // tail = 1/2 - 2i has conjugate on B1.
        let cf = ContinuedFraction::from_ints(&[3, 2], gaussian(1, 2, -2, 1)).unwrap();
        let conj = conjugate_cf(&cf).unwrap();
        assert_eq!(
            conj,
            ContinuedFraction::from_ints(&[3, 3], gaussian(-1, 2, 2, 1)).unwrap()
        );
        assert_eq!(cf_eval(&conj), cf_eval(&cf).conj());
    }

    #[test]
    fn gprime_of_i_tail_unchanged() {
        let cf = ContinuedFraction::from_ints(&[0], gaussian(0, 1, 1, 1)).unwrap();
        let g = to_gprime(&cf).unwrap();
        assert_eq!(g.coeffs(), cf.coeffs());
        assert_eq!(g.tail(), cf.tail());
        assert_eq!(g.chart(), Chart::GPrime);
    }

    #[test]
    fn gprime_preserves_value() {
        for z in [
            gaussian(-101732, 28505, 1, 171030),
            gaussian(7, 5, -9, 4),
            gaussian(2, 3, 1, 7),
        ] {
            let cf = expand(&z);
            let g = to_gprime(&cf).unwrap();
            assert_eq!(cf_eval(&g), z);
            assert!(in_gprime(g.tail()));
        }
    }

    #[test]
    fn serret_examples() {
        let a = gaussian(3, 7, 0, 1);
        let b = gaussian(22, 9, 0, 1);
        assert!(serret_equivalent(&a, &b).unwrap());
        let i = gaussian(0, 1, 1, 1);
        let two_i = gaussian(0, 1, 2, 1);
        assert!(!serret_equivalent(&i, &two_i).unwrap());
        assert!(serret_equivalent(&i, &i.neg()).unwrap());
    }

    #[test]
    fn distance_bound_values() {
        let cf = ContinuedFraction::from_ints(&[2, 1, 3], gaussian(0, 1, 1, 1)).unwrap();
        assert_eq!(
            tail_distance_bound(&cf).unwrap(),
            Rational::new(BigInt::one(), BigInt::from(4))
        );
        let cf2 = ContinuedFraction::from_ints(&[0, 2], gaussian(0, 1, 1, 1)).unwrap();
        assert_eq!(
            tail_distance_bound(&cf2).unwrap(),
            Rational::new(BigInt::one(), BigInt::from(2))
        );
        let short = ContinuedFraction::from_ints(&[5], QuadElem::zero()).unwrap();
        assert_eq!(tail_distance_bound(&short), Err(Error::TooShort));
    }

    #[test]
    fn periodic_sqrt2() {
        let s = QuadElem::from_parts(0, 1, 1, 1, 2).unwrap();
        let p = periodic_cf(&s).unwrap();
        assert_eq!(p.preperiod, vec![BigInt::one()]);
        assert_eq!(p.period, vec![BigInt::from(2)]);
    }

    #[test]
    fn periodic_golden_ratio() {
        let s = QuadElem::from_parts(1, 2, 1, 2, 5).unwrap();
        let p = periodic_cf(&s).unwrap();
        assert!(p.preperiod.is_empty());
        assert_eq!(p.period, vec![BigInt::one()]);
        let t = QuadElem::from_parts(-1, 2, 1, 2, 5).unwrap();
        let p = periodic_cf(&t).unwrap();
        assert_eq!(p.preperiod, vec![BigInt::zero()]);
        assert_eq!(p.period, vec![BigInt::one()]);
    }

    #[test]
    fn periodic_sqrt7() {
        let s = QuadElem::from_parts(0, 1, 1, 1, 7).unwrap();
        let p = periodic_cf(&s).unwrap();
        assert_eq!(p.preperiod, vec![BigInt::from(2)]);
        assert_eq!(
            p.period,
            vec![BigInt::one(), BigInt::one(), BigInt::one(), BigInt::from(4)]
        );
    }

    #[test]
    fn periodic_rejects_rationals_and_complex() {
        assert_eq!(periodic_cf(&QuadElem::from_int(3)), Err(Error::RationalInput));
        assert_eq!(
            periodic_cf(&gaussian(0, 1, 1, 1)),
            Err(Error::NotRealSurd)
        );
    }

    #[test]
    fn expand_rejects_real_surd() {
        let s = QuadElem::from_parts(0, 1, 1, 1, 2).unwrap();
        assert_eq!(cf_expand(&s, Variant::V1), Err(Error::RealIrrational));
    }

    #[test]
    fn corner_table_kc() {
        // alpha_{n,k} = k - 1/(n + rho); the delta = 0 convention fixes each row.
        let rho = corner_rho();
        let rho5 = corner_rho5();
        for k in [-2i64, 0, 3] {
            for n in -4i64..=4 {
                let alpha = QuadElem::from_int(k)
                    .sub(&QuadElem::from_int(n).add(&rho).unwrap().inv().unwrap())
                    .unwrap();
                let got = expand(&alpha);
                let expected = if n >= 2 {
                    ContinuedFraction::from_ints(&[k - 1, 1, n - 1], rho.clone()).unwrap()
                } else if n == 1 {
                    ContinuedFraction::from_ints(&[k - 1, 1], rho5.clone()).unwrap()
                } else if n == 0 {
                    ContinuedFraction::from_ints(&[k - 1], rho.clone()).unwrap()
                } else if n == -1 {
                    ContinuedFraction::from_ints(&[k], rho.clone()).unwrap()
                } else {
                    ContinuedFraction::from_ints(&[k, -n - 1], rho5.clone()).unwrap()
                };
                assert_eq!(got, expected, "alpha({n}, {k})");
            }
        }
    }
}
