//! Integer 2x2 matrices of determinant +-1 and the three unique generator
//! word decompositions of SL(2,Z).
//!
//! Every M in SL(2,Z) has unique expressions
//!
//!   +-(S) L^{a_0} R^{a_1} ... [L or R]^{a_m} (S)      (LR basis)
//!   +-(S) U^{e_1} S U^{e_2} S ... S U^{e_n} (S)       (US basis, e_j in {1,2})
//!   +-(S) T^{b_1} S T^{b_2} S ... S T^{b_r} (S)       (TS basis)
//!
//! and all three fall out of the continued fraction of (S)M(2i).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cfrac::{cf_expand, Variant};
use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Rational};
use crate::regions::Fraction;

/// 2x2 integer matrix with determinant +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if det.abs().is_one() {
            Ok(Mat2 { a, b, c, d })
        } else {
            Err(Error::NotUnimodular)
        }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mat2::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1).expect("unimodular")
    }

    /// S = [[0,-1],[1,0]], acting as z -> -1/z.
    pub fn s() -> Self {
        Mat2::from_ints(0, -1, 1, 0).expect("unimodular")
    }

    /// T = [[1,1],[0,1]], acting as z -> z + 1.
    pub fn t() -> Self {
        Mat2::from_ints(1, 1, 0, 1).expect("unimodular")
    }

    /// U = TS = [[1,-1],[1,0]]; U^3 = -I.
    pub fn u() -> Self {
        Mat2::from_ints(1, -1, 1, 0).expect("unimodular")
    }

    /// J = [[0,1],[1,0]], acting as z -> 1/z (determinant -1).
    pub fn j() -> Self {
        Mat2::from_ints(0, 1, 1, 0).expect("unimodular")
    }

    /// L = T.
    pub fn l() -> Self {
        Mat2::t()
    }

    /// R = TST = [[1,0],[1,1]].
    pub fn r() -> Self {
        Mat2::from_ints(1, 0, 1, 1).expect("unimodular")
    }

    /// L^k = [[1,k],[0,1]] in closed form.
    pub fn l_pow(k: &BigInt) -> Self {
        Mat2 {
            a: BigInt::one(),
            b: k.clone(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// R^k = [[1,0],[k,1]] in closed form.
    pub fn r_pow(k: &BigInt) -> Self {
        Mat2 {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: k.clone(),
            d: BigInt::one(),
        }
    }

    /// T^k = L^k.
    pub fn t_pow(k: &BigInt) -> Self {
        Mat2::l_pow(k)
    }

    /// U^e for e in {1, 2}: U^2 = [[0,-1],[1,-1]].
    pub fn u_pow(e: u8) -> Self {
        match e {
            1 => Mat2::u(),
            2 => Mat2::from_ints(0, -1, 1, -1).expect("unimodular"),
            _ => panic!("U exponents are 1 or 2"),
        }
    }

    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        // det = +-1, so the adjugate over det stays integral.
        Mat2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }

    /// Fractional linear action (a z + b) / (c z + d).
    pub fn apply(&self, z: &QuadElem) -> Result<QuadElem> {
        let num = z.mul_int(&self.a).add_rat(&Rational::from(self.b.clone()));
        let den = z.mul_int(&self.c).add_rat(&Rational::from(self.d.clone()));
        num.div(&den)
    }

    /// Projective action on cusps: p/q -> (a p + b q)/(c p + d q).
    pub fn apply_fraction(&self, f: &Fraction) -> Fraction {
        Fraction::new(&self.a * f.p() + &self.b * f.q(), &self.c * f.p() + &self.d * f.q())
            .expect("unimodular image of a cusp is a cusp")
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordBasis {
    LR,
    US,
    TS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A generator word +-(S) body (S) in one of the three bases.
///
/// LR: body lists the alternating exponents a_0, a_1, ... starting with L
/// (a_0 = 0 means the word starts with R and needs at least two entries).
/// US: body lists e_1..e_n in {1,2} with an S after every U^e except that
/// the final S is controlled by `trail_s`. TS: body lists b_1..b_r with the
/// same S convention; interior exponents are at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenWord {
    sign: Sign,
    lead_s: bool,
    body: Vec<BigInt>,
    trail_s: bool,
    basis: WordBasis,
}

impl GenWord {
    pub fn new(
        sign: Sign,
        lead_s: bool,
        body: Vec<BigInt>,
        trail_s: bool,
        basis: WordBasis,
    ) -> Result<Self> {
        let w = GenWord {
            sign,
            lead_s,
            body,
            trail_s,
            basis,
        };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        if self.body.is_empty() {
            if self.trail_s {
                return Err(Error::InvalidWord("empty words normalize S to the lead position"));
            }
            return Ok(());
        }
        match self.basis {
            WordBasis::LR => {
                if self.body[0].is_negative() {
                    return Err(Error::InvalidWord("LR exponents are non-negative"));
                }
                if self.body[0].is_zero() && self.body.len() == 1 {
                    return Err(Error::InvalidWord("L^0 alone is the empty word"));
                }
                if self.body.iter().skip(1).any(|a| !a.is_positive()) {
                    return Err(Error::InvalidWord("LR exponents after the first are positive"));
                }
            }
            WordBasis::US => {
                if self
                    .body
                    .iter()
                    .any(|e| *e != BigInt::one() && *e != BigInt::from(2))
                {
                    return Err(Error::InvalidWord("US exponents are 1 or 2"));
                }
            }
            WordBasis::TS => {
                if self.body.iter().any(|b| !b.is_positive()) {
                    return Err(Error::InvalidWord("TS exponents are positive"));
                }
                let r = self.body.len();
                if r > 2 && self.body[1..r - 1].iter().any(|b| *b < BigInt::from(2)) {
                    return Err(Error::InvalidWord("interior TS exponents are at least 2"));
                }
            }
        }
        Ok(())
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn lead_s(&self) -> bool {
        self.lead_s
    }

    pub fn body(&self) -> &[BigInt] {
        &self.body
    }

    pub fn trail_s(&self) -> bool {
        self.trail_s
    }

    pub fn basis(&self) -> WordBasis {
        self.basis
    }

    /// Sum of the LR exponents (the word weight n with 2^n words per weight).
    pub fn weight(&self) -> BigInt {
        match self.basis {
            WordBasis::LR => self.body.iter().sum(),
            _ => panic!("weight is defined for LR words"),
        }
    }

    /// Parse in a specific basis. Words without letters (I, S and their
    /// negatives) fit any basis; otherwise the letters must match.
    pub fn parse_in(text: &str, basis: WordBasis) -> Result<GenWord> {
        let w = GenWord::parse(text)?;
        if w.body.is_empty() {
            return Ok(GenWord { basis, ..w });
        }
        if w.basis == basis {
            Ok(w)
        } else {
            Err(Error::InvalidWord("letters do not match the requested basis"))
        }
    }

    /// Parse the whitespace-separated caret format, e.g.
    /// "-S R^1 L^5 R^1 L^1 R^1 L^1 R^4". The basis is inferred from the
    /// letters; a bare "S", "-S", "I" or "-I" parses in any basis.
    pub fn parse(text: &str) -> Result<GenWord> {
        let mut sign = Sign::Plus;
        let mut rest = text.trim();
        if let Some(stripped) = rest.strip_prefix('-') {
            sign = Sign::Minus;
            rest = stripped;
        } else if let Some(stripped) = rest.strip_prefix('+') {
            rest = stripped;
        }
        let mut tokens: Vec<(char, BigInt)> = Vec::new();
        for tok in rest.split_whitespace() {
            if tok == "S" {
                tokens.push(('S', BigInt::zero()));
            } else if tok == "I" {
                tokens.push(('I', BigInt::zero()));
            } else {
                let (letter, exp) = match tok.split_once('^') {
                    Some((l, e)) => {
                        let exp: BigInt = e
                            .parse()
                            .map_err(|_| Error::InvalidWord("bad exponent"))?;
                        (l, exp)
                    }
                    None => (tok, BigInt::one()),
                };
                let ch = match letter {
                    "L" => 'L',
                    "R" => 'R',
                    "U" => 'U',
                    "T" => 'T',
                    _ => return Err(Error::InvalidWord("unknown generator letter")),
                };
                tokens.push((ch, exp));
            }
        }
        if tokens.iter().all(|(c, _)| *c == 'I') && tokens.len() <= 1 {
            return GenWord::new(sign, false, Vec::new(), false, WordBasis::LR);
        }
        let lead_s = matches!(tokens.first(), Some(('S', _)));
        if lead_s {
            tokens.remove(0);
        }
        if tokens.is_empty() {
            return GenWord::new(sign, lead_s, Vec::new(), false, WordBasis::LR);
        }
        let letters: Vec<char> = tokens.iter().map(|(c, _)| *c).filter(|c| *c != 'S').collect();
        let basis = if letters.iter().all(|c| *c == 'L' || *c == 'R') {
            WordBasis::LR
        } else if letters.iter().all(|c| *c == 'U') {
            WordBasis::US
        } else if letters.iter().all(|c| *c == 'T') {
            WordBasis::TS
        } else {
            return Err(Error::InvalidWord("mixed generator letters"));
        };
        match basis {
            WordBasis::LR => {
                let mut body: Vec<BigInt> = Vec::new();
                let mut expect_l = true;
                let mut trail_s = false;
                for (i, (c, e)) in tokens.iter().enumerate() {
                    if trail_s {
                        return Err(Error::InvalidWord("S inside an LR word"));
                    }
                    match c {
                        'S' => {
                            trail_s = true;
                        }
                        'L' => {
                            if !expect_l {
                                return Err(Error::InvalidWord("LR letters must alternate"));
                            }
                            body.push(e.clone());
                            expect_l = false;
                        }
                        'R' => {
                            if expect_l {
                                if i == 0 {
                                    body.push(BigInt::zero());
                                } else {
                                    return Err(Error::InvalidWord("LR letters must alternate"));
                                }
                            }
                            body.push(e.clone());
                            expect_l = true;
                        }
                        _ => unreachable!(),
                    }
                }
                GenWord::new(sign, lead_s, body, trail_s, WordBasis::LR)
            }
            WordBasis::US | WordBasis::TS => {
                let mut body: Vec<BigInt> = Vec::new();
                let mut expect_letter = true;
                let mut trail_s = false;
                for (c, e) in &tokens {
                    if *c == 'S' {
                        if expect_letter {
                            return Err(Error::InvalidWord("doubled S"));
                        }
                        expect_letter = true;
                        trail_s = true;
                    } else {
                        if !expect_letter {
                            return Err(Error::InvalidWord("missing S separator"));
                        }
                        body.push(e.clone());
                        expect_letter = false;
                        trail_s = false;
                    }
                }
                GenWord::new(sign, lead_s, body, trail_s, basis)
            }
        }
    }
}

impl std::fmt::Display for GenWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        if self.lead_s {
            tokens.push("S".to_string());
        }
        match self.basis {
            WordBasis::LR => {
                for (j, a) in self.body.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let letter = if j % 2 == 0 { 'L' } else { 'R' };
                    tokens.push(format!("{letter}^{a}"));
                }
            }
            WordBasis::US | WordBasis::TS => {
                let letter = if self.basis == WordBasis::US { 'U' } else { 'T' };
                for (j, e) in self.body.iter().enumerate() {
                    if j > 0 {
                        tokens.push("S".to_string());
                    }
                    tokens.push(format!("{letter}^{e}"));
                }
            }
        }
        if self.trail_s {
            tokens.push("S".to_string());
        }
        if tokens.is_empty() {
            tokens.push("I".to_string());
        }
        let joined = tokens.join(" ");
        match self.sign {
            Sign::Plus => write!(f, "{joined}"),
            Sign::Minus => write!(f, "-{joined}"),
        }
    }
}

/// Multiply the word out, sign included.
pub fn compose(w: &GenWord) -> Mat2 {
    let mut acc = if w.lead_s { Mat2::s() } else { Mat2::identity() };
    match w.basis {
        WordBasis::LR => {
            for (j, a) in w.body.iter().enumerate() {
                let gen = if j % 2 == 0 {
                    Mat2::l_pow(a)
                } else {
                    Mat2::r_pow(a)
                };
                acc = acc.mul(&gen);
            }
        }
        WordBasis::US => {
            for (j, e) in w.body.iter().enumerate() {
                if j > 0 {
                    acc = acc.mul(&Mat2::s());
                }
                let e = u8::try_from(e).expect("validated exponent");
                acc = acc.mul(&Mat2::u_pow(e));
            }
        }
        WordBasis::TS => {
            for (j, b) in w.body.iter().enumerate() {
                if j > 0 {
                    acc = acc.mul(&Mat2::s());
                }
                acc = acc.mul(&Mat2::t_pow(b));
            }
        }
    }
    if w.trail_s {
        acc = acc.mul(&Mat2::s());
    }
    match w.sign {
        Sign::Plus => acc,
        Sign::Minus => acc.neg(),
    }
}

/// Unique generator word of M in the requested basis, via the continued
/// fraction of (S)M(2i). Requires det M = +1; factor out J first for
/// determinant -1.
pub fn word_decompose(m: &Mat2, basis: WordBasis) -> Result<GenWord> {
    if !m.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let two_i = QuadElem::gaussian(0, 1, 2, 1);
    let w = m.apply(&two_i).expect("2i is not a pole");
    let lead_s = w.re().is_negative();
    let z = if lead_s {
        Mat2::s().apply(&w).expect("nonzero")
    } else {
        w
    };
    let cf = cf_expand(&z, Variant::V1)?;
    let mut body = cf.coeffs().to_vec();
    // The tail is one of 2i, i/2 (even degree) or -i/2, -2i (odd degree);
    // the inner two need a trailing S to reach the base point 2i in F.
    let tail = cf.tail();
    let even = cf.degree() % 2 == 0;
    let trail_s = if even {
        if *tail == two_i {
            false
        } else {
            debug_assert_eq!(*tail, QuadElem::gaussian(0, 1, 1, 2));
            true
        }
    } else if *tail == QuadElem::gaussian(0, 1, -1, 2) {
        false
    } else {
        debug_assert_eq!(*tail, QuadElem::gaussian(0, 1, -2, 1));
        true
    };
    if body == [BigInt::zero()] {
        body.clear();
    }
    let lr = normalize_empty(GenWord {
        sign: Sign::Plus,
        lead_s,
        body,
        trail_s,
        basis: WordBasis::LR,
    });
    let composed = compose(&lr);
    let lr = if composed == *m {
        lr
    } else {
        debug_assert_eq!(composed.neg(), *m, "word must compose to +-M");
        GenWord { sign: Sign::Minus, ..lr }
    };
    lr.validate()?;
    match basis {
        WordBasis::LR => Ok(lr),
        WordBasis::US => Ok(lr_to_us(&lr)),
        WordBasis::TS => Ok(lr_to_ts(&lr)),
    }
}

/// S^p (empty) S^t collapses: S S = -I, and a single trailing S moves to the
/// lead position.
fn normalize_empty(w: GenWord) -> GenWord {
    if !w.body.is_empty() {
        return w;
    }
    match (w.lead_s, w.trail_s) {
        (true, true) => GenWord {
            sign: w.sign.flip(),
            lead_s: false,
            trail_s: false,
            ..w
        },
        (false, true) => GenWord {
            lead_s: true,
            trail_s: false,
            ..w
        },
        _ => w,
    }
}

/// Rewrite an LR word over U and S: L = -US and R = -U^2 S, so each letter
/// contributes one U-exponent and a sign flip, and a trailing S collapses
/// with the final letter's S.
pub fn lr_to_us(lr: &GenWord) -> GenWord {
    assert_eq!(lr.basis, WordBasis::LR);
    let mut es: Vec<BigInt> = Vec::new();
    for (j, a) in lr.body.iter().enumerate() {
        let e = if j % 2 == 0 { 1u8 } else { 2u8 };
        let mut count = a.clone();
        while count.is_positive() {
            es.push(BigInt::from(e));
            count -= 1;
        }
    }
    if es.is_empty() {
        return GenWord { basis: WordBasis::US, ..lr.clone() };
    }
    let n = es.len();
    let mut sign = if n % 2 == 1 { lr.sign.flip() } else { lr.sign };
    let trail_s = !lr.trail_s;
    if lr.trail_s {
        // ...U^e S S = -...U^e
        sign = sign.flip();
    }
    GenWord {
        sign,
        lead_s: lr.lead_s,
        body: es,
        trail_s,
        basis: WordBasis::US,
    }
}

/// Rewrite an LR word over T and S: L = T and R = TST, merging adjacent
/// powers of T.
pub fn lr_to_ts(lr: &GenWord) -> GenWord {
    assert_eq!(lr.basis, WordBasis::LR);
    let mut ts: Vec<BigInt> = Vec::new();
    let mut cur = BigInt::zero();
    for (j, a) in lr.body.iter().enumerate() {
        if j % 2 == 0 {
            cur += a;
        } else {
            let mut count = a.clone();
            while count.is_positive() {
                cur += 1;
                ts.push(std::mem::replace(&mut cur, BigInt::one()));
                count -= 1;
            }
        }
    }
    if ts.is_empty() && cur.is_zero() {
        return GenWord { basis: WordBasis::TS, ..lr.clone() };
    }
    ts.push(cur);
    GenWord {
        sign: lr.sign,
        lead_s: lr.lead_s,
        body: ts,
        trail_s: lr.trail_s,
        basis: WordBasis::TS,
    }
}

/// Number of LR bodies with exponent sum n: 2^n for n >= 1, and 1 for the
/// empty word.
pub fn count_words(n: u64) -> BigInt {
    if n == 0 {
        BigInt::one()
    } else {
        BigInt::one() << n
    }
}

/// All LR bodies of weight n, for small-scale enumeration checks.
pub fn enumerate_lr_bodies(n: u64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    // Compositions of n, each either taken as-is (a_0 > 0) or prefixed by 0.
    fn compositions(n: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for first in 1..=n {
            acc.push(first);
            compositions(n - first, acc, out);
            acc.pop();
        }
    }
    let mut comps = Vec::new();
    compositions(n, &mut Vec::new(), &mut comps);
    for comp in comps {
        let body: Vec<BigInt> = comp.iter().map(|&a| BigInt::from(a)).collect();
        let mut with_zero = vec![BigInt::zero()];
        with_zero.extend(body.iter().cloned());
        out.push(body);
        out.push(with_zero);
    }
    out
}
