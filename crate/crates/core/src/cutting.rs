//! Cutting sequences on the Farey tessellation by exact mediant descent.
//!
//! Farey edges are the images of the imaginary axis under words in L and R.
//! An edge "contains" a point when its closed semidisc (or right half plane,
//! for a vertical edge) does. Descending from the axis and recording which
//! child edge keeps containing z yields the run-length word
//! L^{c_0} R^{c_1} ... whose exponents match the continued fraction of z up
//! to a last-coefficient adjustment.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cfrac::{cf_expand, convergents, tail_in_pm_f, Variant, DEFAULT_MAX_ITERS};
use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Radicand, Rational};
use crate::modgroup::Mat2;
use crate::regions::Fraction;

/// How a cutting sequence ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// z is a vertex of the tessellation (a rational number).
    RationalEndpoint,
    /// z lies on a Farey edge.
    OnEdge,
    /// z is interior to a Farey triangle.
    Interior,
    /// The step budget ran out (only possible for real irrationals).
    Truncated,
}

/// Run-length exponents of the alternating L/R word: exps[0] counts L,
/// exps[1] counts R, and so on. exps[0] may be 0; later runs are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuttingSequence {
    pub exps: Vec<BigInt>,
    pub terminal: Terminal,
}

/// A Farey edge M*I for M a word in L and R (det 1, non-negative entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyEdge {
    m: Mat2,
}

impl FareyEdge {
    /// The imaginary axis itself.
    pub fn axis() -> Self {
        FareyEdge { m: Mat2::identity() }
    }

    /// Build M*I from LR run-length exponents.
    pub fn from_word(body: &[BigInt]) -> Self {
        let mut m = Mat2::identity();
        for (j, a) in body.iter().enumerate() {
            let gen = if j % 2 == 0 { Mat2::l_pow(a) } else { Mat2::r_pow(a) };
            m = m.mul(&gen);
        }
        FareyEdge { m }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    /// Endpoints (M(infinity), M(0)) as cusps.
    pub fn endpoints(&self) -> (Fraction, Fraction) {
        let (a, b, c, d) = self.m.entries();
        (
            Fraction::new(a.clone(), c.clone()).expect("cusp"),
            Fraction::new(b.clone(), d.clone()).expect("cusp"),
        )
    }

    fn child_l(&self) -> FareyEdge {
        FareyEdge { m: self.m.mul(&Mat2::l()) }
    }

    fn child_r(&self) -> FareyEdge {
        FareyEdge { m: self.m.mul(&Mat2::r()) }
    }

    /// The new vertex shared by both children: M(1) = mediant of the endpoints.
    fn mediant(&self) -> Rational {
        let (a, b, c, d) = self.m.entries();
        Rational::new(a + b, c + d)
    }

    /// Closed containment: semidisc over the finite endpoints, or the half
    /// plane Re(z) >= k for the vertical edge with an endpoint at infinity.
    pub fn contains(&self, z: &QuadElem) -> bool {
        let (a, b, c, d) = self.m.entries();
        if c.is_zero() {
            // M = L^k: the half plane Re(z) >= k.
            let k = Rational::new(b.clone(), d.clone());
            return match z.radicand() {
                Radicand::Sqrt(n) if n.is_positive() => {
                    z.add_rat(&-k).signum_real() >= 0
                }
                _ => *z.re() >= k,
            };
        }
        let f1 = Rational::new(a.clone(), c.clone());
        let f2 = Rational::new(b.clone(), d.clone());
        match z.radicand() {
            Radicand::Sqrt(n) if n.is_positive() => {
                let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
                z.add_rat(&-lo).signum_real() >= 0 && z.add_rat(&-hi).signum_real() <= 0
            }
            _ => {
                let ctr = (&f1 + &f2) / Rational::from(BigInt::from(2));
                let half_diff = (&f1 - &f2) / Rational::from(BigInt::from(2));
                let r2 = &half_diff * &half_diff;
                let dx = z.re() - ctr;
                &dx * &dx + z.im_sq() <= r2
            }
        }
    }

    /// Is z exactly on this edge's circle (or vertical line)?
    pub fn on_circle(&self, z: &QuadElem) -> bool {
        let (a, b, c, d) = self.m.entries();
        if let Radicand::Sqrt(n) = z.radicand() {
            if n.is_positive() {
                // A real irrational never sits on an edge.
                return false;
            }
        }
        if c.is_zero() {
            return *z.re() == Rational::new(b.clone(), d.clone());
        }
        let f1 = Rational::new(a.clone(), c.clone());
        let f2 = Rational::new(b.clone(), d.clone());
        let ctr = (&f1 + &f2) / Rational::from(BigInt::from(2));
        let half_diff = (&f1 - &f2) / Rational::from(BigInt::from(2));
        let dx = z.re() - ctr;
        &dx * &dx + z.im_sq() == &half_diff * &half_diff
    }
}

fn check_half_plane(z: &QuadElem) -> Result<()> {
    match z.radicand() {
        Radicand::Sqrt(n) if n.is_positive() => {
            if z.signum_real() > 0 {
                Ok(())
            } else {
                Err(Error::OutOfHalfPlane)
            }
        }
        _ => {
            let sx = if z.re().is_zero() {
                0
            } else if z.re().is_positive() {
                1
            } else {
                -1
            };
            if sx > 0 || (sx == 0 && z.im_sign() > 0) {
                if z.im_sign() < 0 {
                    Err(Error::OutOfHalfPlane)
                } else {
                    Ok(())
                }
            } else {
                Err(Error::OutOfHalfPlane)
            }
        }
    }
}

/// Mediant descent from the imaginary axis. Accepts rationals, complex
/// values, and real surds (whose sequences are infinite and get truncated
/// after `max_steps` letters). Points on the axis get the sequence L^0.
pub fn cutting_sequence(z: &QuadElem, max_steps: usize) -> Result<CuttingSequence> {
    check_half_plane(z)?;
    let mut edge = FareyEdge::axis();
    let mut exps: Vec<BigInt> = vec![BigInt::zero()];
    let finish = |exps: Vec<BigInt>, terminal| Ok(CuttingSequence { exps, terminal });
    for _ in 0..max_steps {
        if edge.on_circle(z) {
            return finish(exps, Terminal::OnEdge);
        }
        if z.is_rational() && *z.re() == edge.mediant() {
            return finish(exps, Terminal::RationalEndpoint);
        }
        let left = edge.child_l();
        let right = edge.child_r();
        if left.contains(z) {
            // exps alternates starting with the L-run at index 0.
            if exps.len() % 2 == 1 {
                *exps.last_mut().expect("nonempty") += 1;
            } else {
                exps.push(BigInt::one());
            }
            edge = left;
        } else if right.contains(z) {
            if exps.len() % 2 == 0 {
                *exps.last_mut().expect("nonempty") += 1;
            } else {
                exps.push(BigInt::one());
            }
            edge = right;
        } else {
            return finish(exps, Terminal::Interior);
        }
    }
    finish(exps, Terminal::Truncated)
}

/// Which of the three adjustments connects the cutting sequence exponents
/// (c_0, ..., c_n) to the canonical continued fraction of z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutCfCase {
    /// [c_0, ..., c_n + w_0]
    Exact,
    /// [c_0, ..., c_n + 1 + w_0]
    PlusOne,
    /// [c_0, ..., c_n, 1 + w_0]
    AppendOne,
}

pub fn relate_cut_cf(z: &QuadElem) -> Result<CutCfCase> {
    if let Radicand::Sqrt(n) = z.radicand() {
        if n.is_positive() {
            return Err(Error::RealIrrational);
        }
    }
    check_half_plane(z)?;
    let cs = cutting_sequence(z, DEFAULT_MAX_ITERS)?;
    debug_assert_ne!(cs.terminal, Terminal::Truncated);
    let cf = cf_expand(z, Variant::V1)?;
    let c = &cs.exps;
    let a = cf.coeffs();
    let n = c.len();
    if a == &c[..] {
        return Ok(CutCfCase::Exact);
    }
    if a.len() == n && a[..n - 1] == c[..n - 1] && a[n - 1] == &c[n - 1] + 1u32 {
        return Ok(CutCfCase::PlusOne);
    }
    if a.len() == n + 1 && a[..n] == c[..] && a[n].is_one() {
        return Ok(CutCfCase::AppendOne);
    }
    Err(Error::Unrelated)
}

/// The fan containing z: F_{h_{n-1}/k_{n-1}} when the tail lies in F or -F,
/// F_{h_n/k_n} otherwise.
pub fn locate_fan(z: &QuadElem) -> Result<Fraction> {
    if z.im_sign() <= 0 {
        return Err(Error::NotUpperHalfPlane);
    }
    let cf = cf_expand(z, Variant::V1)?;
    let conv = convergents(cf.coeffs());
    let n = cf.degree() as isize;
    let m = if tail_in_pm_f(cf.tail()) { n - 1 } else { n };
    Fraction::new(conv.h(m).clone(), conv.k(m).clone())
}

/// The four shapes a Farey neighbor's continued fraction can take relative
/// to the shorter one [a_0, ..., a_r] (with m >= 2 throughout):
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FareyNeighborCase {
    /// [a_0, ..., a_r - 1, 2]
    DecrementThenTwo,
    /// [a_0, ..., a_r - 1, 1, m]
    DecrementThenOneM,
    /// [a_0, ..., a_r +- 1]
    LastDiffersByOne,
    /// [a_0, ..., a_r, m]
    AppendTerm,
}

pub fn farey_neighbor_case(f1: &Fraction, f2: &Fraction) -> Result<FareyNeighborCase> {
    if f1.is_infinite() || f2.is_infinite() || !f1.is_farey_neighbor(f2) {
        return Err(Error::NotNeighbors);
    }
    let cf1 = cf_expand(&QuadElem::rational(f1.value()?), Variant::V1)?;
    let cf2 = cf_expand(&QuadElem::rational(f2.value()?), Variant::V1)?;
    let (u, v) = if cf1.coeffs().len() <= cf2.coeffs().len() {
        (cf1.coeffs(), cf2.coeffs())
    } else {
        (cf2.coeffs(), cf1.coeffs())
    };
    let r = u.len();
    let two = BigInt::from(2);
    if v.len() == r {
        let diff = &v[r - 1] - &u[r - 1];
        if v[..r - 1] == u[..r - 1] && diff.abs().is_one() {
            return Ok(FareyNeighborCase::LastDiffersByOne);
        }
    } else if v.len() == r + 1 {
        if v[..r] == u[..] && v[r] >= two {
            return Ok(FareyNeighborCase::AppendTerm);
        }
        if v[..r - 1] == u[..r - 1] && v[r - 1] == &u[r - 1] - 1u32 && v[r] == two {
            return Ok(FareyNeighborCase::DecrementThenTwo);
        }
    } else if v.len() == r + 2
        && v[..r - 1] == u[..r - 1]
        && v[r - 1] == &u[r - 1] - 1u32
        && v[r].is_one()
        && v[r + 1] >= two
    {
        return Ok(FareyNeighborCase::DecrementThenOneM);
    }
    Err(Error::NotNeighbors)
}
