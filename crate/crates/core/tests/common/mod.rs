//! Shared corpus builders, invariant checkers, and brute-force oracles.
//!
//! The oracles here are deliberately independent of the library's internal
//! computation paths: minima come from box enumeration, reduced forms from
//! exhaustive inequality scans, and form cycles from full matrix products.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ccfrac::cfrac::{
    cf_eval, cf_expand, convergents, is_canonical, ContinuedFraction, Variant,
};
use ccfrac::lattice::Basis;
use ccfrac::modgroup::Mat2;
use ccfrac::qform::{act, QForm};
use ccfrac::regions::{in_region, Region};
use ccfrac::{QuadElem, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Random Gaussian rational with numerators and denominators up to `max`.
pub fn random_gaussian(r: &mut ChaCha8Rng, max: i64) -> QuadElem {
    let xn = r.gen_range(-max..=max);
    let xd = r.gen_range(1..=max);
    let yn = r.gen_range(-max..=max);
    let yd = r.gen_range(1..=max);
    QuadElem::gaussian(xn, xd, yn, yd)
}

/// Random rational value carried as a QuadElem.
pub fn random_rational_elem(r: &mut ChaCha8Rng, max: i64) -> QuadElem {
    QuadElem::gaussian(r.gen_range(-max..=max), r.gen_range(1..=max), 0, 1)
}

/// A random tail strictly inside one of the four charts of F', over the
/// requested radicand. Never a corner: the F-chart sample has Im >= 1.
pub fn random_fprime_tail(r: &mut ChaCha8Rng, n: i64) -> QuadElem {
    let q = r.gen_range(2..=9i64);
    let p = r.gen_range(-(q / 2)..=(q - 1) / 2);
    let ynum = r.gen_range(1..=12i64);
    let yden = r.gen_range(1..=4i64);
    // y >= 1 guarantees |z| > 1 alongside |n| >= 1.
    let y = rat(ynum.max(yden), yden);
    let zf = QuadElem::new(rat(p, q), y, BigInt::from(n)).expect("non-square radicand");
    let z = match r.gen_range(0..4) {
        0 => zf,
        1 => zf.neg(),
        2 => zf.inv().expect("nonzero"),
        _ => zf.inv().expect("nonzero").neg(),
    };
    debug_assert!(in_region(&z, Region::Fprime).unwrap());
    z
}

/// Random canonical continued fraction over N in {-1, -3, -7}, with an
/// occasional zero tail.
pub fn random_canonical_cf(r: &mut ChaCha8Rng) -> ContinuedFraction {
    let len = r.gen_range(1..=7usize);
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(len);
    coeffs.push(BigInt::from(r.gen_range(-8..=8i64)));
    for _ in 1..len {
        coeffs.push(BigInt::from(r.gen_range(1..=8i64)));
    }
    let tail = if r.gen_range(0..5) == 0 {
        if len >= 2 {
            let last = coeffs.last_mut().unwrap();
            if *last < BigInt::from(2) {
                *last = BigInt::from(2);
            }
        }
        QuadElem::zero()
    } else {
        let n = [-1i64, -3, -7][r.gen_range(0..3)];
        random_fprime_tail(r, n)
    };
    let cf = ContinuedFraction::new(coeffs, tail).expect("sampled tail lies in F'");
    debug_assert!(is_canonical(&cf));
    cf
}

/// Random element of SL(2,Z) as a short product of generators.
pub fn random_sl2(r: &mut ChaCha8Rng, len: usize) -> Mat2 {
    let mut m = Mat2::identity();
    for _ in 0..len {
        let g = match r.gen_range(0..3) {
            0 => Mat2::l_pow(&BigInt::from(r.gen_range(1..=4i64))),
            1 => Mat2::r_pow(&BigInt::from(r.gen_range(1..=4i64))),
            _ => Mat2::s(),
        };
        m = m.mul(&g);
    }
    if r.gen_bool(0.5) {
        m = m.neg();
    }
    m
}

/// Random element of GL(2,Z) (determinant +-1).
pub fn random_gl2(r: &mut ChaCha8Rng, len: usize) -> Mat2 {
    let m = random_sl2(r, len);
    if r.gen_bool(0.5) {
        Mat2::j().mul(&m)
    } else {
        m
    }
}

pub fn fib(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// The invariants every expansion must satisfy: value recovery, sign rule,
/// tail membership, determinant alternation, Fibonacci growth.
pub fn check_expansion_invariants(z: &QuadElem, cf: &ContinuedFraction) {
    assert_eq!(cf_eval(cf), *z, "eval must invert expand at {z}");
    let n = cf.degree();
    // sgn(Im z) = (-1)^n sgn(Im z_0).
    let lhs = z.im_sign();
    let rhs = if n % 2 == 0 { cf.tail().im_sign() } else { -cf.tail().im_sign() };
    assert_eq!(lhs, rhs, "sign rule fails at {z}");
    assert!(
        in_region(cf.tail(), Region::Fprime).unwrap(),
        "tail outside F' at {z}"
    );
    let conv = convergents(cf.coeffs());
    for m in 0..=n as isize {
        let det = conv.h(m - 1) * conv.k(m) - conv.h(m) * conv.k(m - 1);
        let expected = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        assert_eq!(det, expected, "determinant alternation fails at {z}");
        assert!(
            *conv.k(m) >= fib(m as usize + 1),
            "k_m < Fib(m+1) at {z}"
        );
    }
}

/// Expand with all three variants, assert byte-identical agreement, and
/// return the canonical result.
pub fn expand_all_variants(z: &QuadElem) -> ContinuedFraction {
    let a = cf_expand(z, Variant::V1).expect("expandable");
    let b = cf_expand(z, Variant::V2).expect("expandable");
    let c = cf_expand(z, Variant::V3).expect("expandable");
    assert_eq!(a, b, "V1 vs V2 disagree at {z}");
    assert_eq!(a, c, "V1 vs V3 disagree at {z}");
    assert_eq!(format!("{a}"), format!("{b}"));
    assert_eq!(format!("{a}"), format!("{c}"));
    a
}

/// First and second minimum squared lengths over the coefficient box
/// |m|, |n| <= bound. A test-only device: fed a reduced basis, the true
/// minima sit at coefficients in {-1, 0, 1}, so the box certifies them.
pub fn brute_force_minima(w1: &QuadElem, w2: &QuadElem, bound: i64) -> (Rational, Rational) {
    let mut best: Option<(Rational, i64, i64)> = None;
    let mut all: Vec<(Rational, i64, i64)> = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            let v = w1
                .mul_int(&BigInt::from(m))
                .add(&w2.mul_int(&BigInt::from(n)))
                .expect("same field");
            let norm = v.abs_sq();
            if best.as_ref().map_or(true, |(b, _, _)| norm < *b) {
                best = Some((norm.clone(), m, n));
            }
            all.push((norm, m, n));
        }
    }
    let (min1, m0, n0) = best.expect("nonempty box");
    let min2 = all
        .into_iter()
        .filter(|(_, m, n)| m * n0 - n * m0 != 0)
        .map(|(norm, _, _)| norm)
        .min()
        .expect("independent vector in box");
    (min1, min2)
}

/// Random basis whose Gaussian-integer entries stay within `max`.
pub fn random_basis(r: &mut ChaCha8Rng, max: i64) -> Basis {
    loop {
        let w1 = QuadElem::gaussian(r.gen_range(-max..=max), 1, r.gen_range(-max..=max), 1);
        let w2 = QuadElem::gaussian(r.gen_range(-max..=max), 1, r.gen_range(-max..=max), 1);
        if let Ok(b) = Basis::new(w1, w2) {
            return b;
        }
    }
}

/// All Gauss reduced forms of discriminant d < 0 by exhaustive scan of
/// |b| <= a <= sqrt(|d|/3).
pub fn enumerate_reduced_forms(d: i64) -> Vec<QForm> {
    assert!(d < 0);
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            out.push(QForm::from_ints(a, b, c));
        }
        a += 1;
    }
    out
}

/// Independent route to the positive-discriminant cycle: build each prefix
/// word L^{a_0} R^{a_1} ... as a full matrix product, act once per step, and
/// read the cycle off the stabilized sequence.
pub fn redb_cycle_oracle(q: &QForm) -> Vec<QForm> {
    let d = q.discriminant();
    assert!(d.is_positive());
    let two_a = BigInt::from(2) * &q.a;
    let root = QuadElem::new(
        Rational::new(-q.b.clone(), two_a.clone()),
        Rational::new(BigInt::one(), two_a),
        d,
    )
    .expect("non-square discriminant");
    let pcf = ccfrac::cfrac::periodic_cf(&root).expect("real surd");
    let pre = pcf.preperiod.len();
    let per = pcf.period.len();
    let total = pre + 6 * per + 8;
    let mut word = Mat2::identity();
    let mut forms = Vec::with_capacity(total);
    for m in 0..total {
        let a = pcf.coefficient(m).clone();
        let gen = if m % 2 == 0 { Mat2::l_pow(&a) } else { Mat2::r_pow(&a) };
        word = word.mul(&gen);
        forms.push(act(q, &word).expect("det 1 word"));
    }
    // The tail of `forms` is periodic; find the least p that matches twice.
    for p in 1..=forms.len() / 2 {
        let end = forms.len();
        if forms[end - 2 * p..end - p] == forms[end - p..end] {
            let cycle = forms[end - p..end].to_vec();
            return canonical_rotation(minimize_period(cycle));
        }
    }
    panic!("no cycle detected for {q}");
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
    let start = (0..len).min_by(|&i, &j| cycle[i].cmp(&cycle[j])).unwrap_or(0);
    (0..len).map(|k| cycle[(start + k) % len].clone()).collect()
}

/// Seed forms for the positive discriminants used in the tests.
pub fn seed_form_for_disc(d: i64) -> QForm {
    match d {
        5 => QForm::from_ints(1, 1, -1),
        8 => QForm::from_ints(1, 0, -2),
        12 => QForm::from_ints(1, 2, -2),
        13 => QForm::from_ints(1, 1, -3),
        _ => panic!("no seed form for {d}"),
    }
}

/// Does the continued fraction of z match one of the five shapes relative
/// to the canonical continued fraction of the cusp p/q it approaches?
pub fn matches_pqx_shape(z_coeffs: &[BigInt], pq_coeffs: &[BigInt]) -> bool {
    let r = pq_coeffs.len() - 1;
    let prefix = &pq_coeffs[..r];
    let last = &pq_coeffs[r];
    let dec = last - 1u32;
    // [.., a_m - 1, 1, a_{m+2}]
    if z_coeffs.len() == r + 3
        && z_coeffs[..r] == *prefix
        && z_coeffs[r] == dec
        && z_coeffs[r + 1].is_one()
    {
        return true;
    }
    // [.., a_m - 1, 1]
    if z_coeffs.len() == r + 2 && z_coeffs[..r] == *prefix && z_coeffs[r] == dec && z_coeffs[r + 1].is_one() {
        return true;
    }
    // [.., a_m - 1]
    if z_coeffs.len() == r + 1 && z_coeffs[..r] == *prefix && z_coeffs[r] == dec {
        return true;
    }
    // [.., a_m]
    if z_coeffs == pq_coeffs {
        return true;
    }
    // [.., a_m, a_{m+1}]
    if z_coeffs.len() == r + 2 && z_coeffs[..=r] == *pq_coeffs {
        return true;
    }
    false
}
