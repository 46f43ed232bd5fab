//! Integral binary quadratic forms and their reduction.
//!
//! For D < 0 the complex continued fraction of the upper root (-b + sqrt(D))/(2a)
//! supplies the word of L and R turns that lands the form on its Gauss
//! reduced representative. For D > 0 non-square the ordinary (periodic)
//! continued fraction of the real root does the same and the form sequence
//! settles into a cycle instead of a single representative.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cfrac::{cf_expand, periodic_cf, Variant};
use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Rational};
use crate::modgroup::Mat2;
use crate::regions::in_f;

/// q(x, y) = a x^2 + b xy + c y^2, written [a, b, c].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QForm { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        QForm::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    /// D = b^2 - 4ac.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }
}

impl std::fmt::Display for QForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Right action q|M = q(alpha x + beta y, gamma x + delta y); requires
/// det M = +1 and preserves the discriminant.
pub fn act(q: &QForm, m: &Mat2) -> Result<QForm> {
    if !m.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let (al, be, ga, de) = m.entries();
    let two = BigInt::from(2);
    let a = &q.a * al * al + &q.b * al * ga + &q.c * ga * ga;
    let b = &two * &q.a * al * be + &q.b * (al * de + be * ga) + &two * &q.c * ga * de;
    let c = &q.a * be * be + &q.b * be * de + &q.c * de * de;
    Ok(QForm::new(a, b, c))
}

fn require_definite(q: &QForm) -> Result<()> {
    if q.discriminant().is_negative() && q.a.is_positive() && q.c.is_positive() {
        Ok(())
    } else {
        Err(Error::WrongSignature)
    }
}

/// Gauss's criterion for D < 0, a, c > 0: |b| <= a <= c, with b >= 0 when
/// |b| = a or a = c. Equivalent to the upper root lying in F.
pub fn is_gauss_reduced(q: &QForm) -> Result<bool> {
    require_definite(q)?;
    let babs = q.b.abs();
    if babs > q.a || q.a > q.c {
        return Ok(false);
    }
    if (babs == q.a || q.a == q.c) && q.b.is_negative() {
        return Ok(false);
    }
    Ok(true)
}

/// The zero of q(x, 1) in the upper half plane: (-b + sqrt(D))/(2a), exact
/// over Q(sqrt(D)).
pub fn root_upper(q: &QForm) -> Result<QuadElem> {
    let d = q.discriminant();
    if !d.is_negative() || !q.a.is_positive() {
        return Err(Error::WrongSignature);
    }
    let two_a = BigInt::from(2) * &q.a;
    QuadElem::new(
        Rational::new(-q.b.clone(), two_a.clone()),
        Rational::new(BigInt::one(), two_a),
        d,
    )
}

/// Reduce a positive definite form: p = q|M is Gauss reduced, where M is the
/// L/R word of the root's continued fraction with an S appended exactly when
/// the tail needs it to land in F.
pub fn reduce_negative(q: &QForm) -> Result<(QForm, Mat2)> {
    require_definite(q)?;
    let z = root_upper(q)?;
    let cf = cf_expand(&z, Variant::V1)?;
    let mut m = Mat2::identity();
    for (j, a) in cf.coeffs().iter().enumerate() {
        let gen = if j % 2 == 0 { Mat2::l_pow(a) } else { Mat2::r_pow(a) };
        m = m.mul(&gen);
    }
    let tail = cf.tail();
    let z1 = if cf.degree() % 2 == 0 {
        tail.clone()
    } else {
        tail.inv().expect("nonreal tail")
    };
    if !in_f(&z1) {
        m = m.mul(&Mat2::s());
        debug_assert!(in_f(&Mat2::s().apply(&z1).expect("nonzero")));
    }
    let p = act(q, &m)?;
    debug_assert!(is_gauss_reduced(&p).unwrap_or(false));
    Ok((p, m))
}

/// The periodic cycle of q_m = q|L^{a_0}R^{a_1}...[L or R]^{a_m} for D > 0
/// non-square, with (a_j) the ordinary continued fraction of the real root
/// (-b + sqrt(D))/(2a). Reported with minimal period, rotated to start at
/// the lexicographically least (a, b, c).
pub fn reduce_cycle_positive(q: &QForm) -> Result<Vec<QForm>> {
    let d = q.discriminant();
    if !d.is_positive() {
        return Err(Error::WrongSignature);
    }
    if d.sqrt().pow(2) == d {
        return Err(Error::SquareDiscriminant);
    }
    // a != 0 since a = 0 forces D = b^2, a square.
    let two_a = BigInt::from(2) * &q.a;
    let root = QuadElem::new(
        Rational::new(-q.b.clone(), two_a.clone()),
        Rational::new(BigInt::one(), two_a),
        d,
    )?;
    let pcf = periodic_cf(&root)?;
    let pre_len = pcf.preperiod.len();
    let per_len = pcf.period.len();
    // State: the current form plus the phase of the coefficient stream and
    // the L/R parity of the next step. Preperiod phases never recur.
    let mut form = q.clone();
    let mut seen: HashMap<(QForm, usize, usize), usize> = HashMap::new();
    let mut forms: Vec<QForm> = Vec::new();
    let mut m = 0usize;
    loop {
        let a = pcf.coefficient(m);
        let gen = if m % 2 == 0 { Mat2::l_pow(a) } else { Mat2::r_pow(a) };
        form = act(&form, &gen)?;
        forms.push(form.clone());
        let next = m + 1;
        let phase = if next < pre_len {
            next
        } else {
            pre_len + (next - pre_len) % per_len
        };
        let key = (form.clone(), phase, next % 2);
        if let Some(&first) = seen.get(&key) {
            let cycle = forms[first..forms.len() - 1].to_vec();
            return Ok(canonical_rotation(minimize_period(cycle)));
        }
        seen.insert(key, forms.len() - 1);
        m = next;
        if m > crate::cfrac::DEFAULT_MAX_ITERS {
            return Err(Error::IterationLimit);
        }
    }
}

fn minimize_period(cycle: Vec<QForm>) -> Vec<QForm> {
    let len = cycle.len();
    for d in 1..len {
        if len % d == 0 && cycle.chunks(d).all(|ch| ch == &cycle[..d]) {
            return cycle[..d].to_vec();
        }
    }
    cycle
}

fn canonical_rotation(cycle: Vec<QForm>) -> Vec<QForm> {
    let len = cycle.len();
    let start = (0..len)
        .min_by(|&i, &j| cycle[i].cmp(&cycle[j]))
        .unwrap_or(0);
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(cycle[(start + k) % len].clone());
    }
    out
}
