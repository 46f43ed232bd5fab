//! Exact rational and quadratic-field arithmetic.
//!
//! `QuadElem` represents x + y*sqrt(N) with rational x, y and an integer
//! radicand N that is not a perfect square. N < 0 gives a complex value with
//! Re = x and Im = y*sqrt(|N|); N > 0 gives a real surd. Pure rationals carry
//! a sentinel radicand and combine with any field, so continued fraction
//! heads and convergents need no special casing.
//!
//! Everything is exact: no floating point appears anywhere in this crate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The field a value lives in: plain Q, or Q(sqrt(n)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Radicand {
    /// Sentinel for pure rationals.
    Rational,
    /// sqrt(n), n not a perfect square (n may be negative; -1 gives Q(i)).
    Sqrt(BigInt),
}

impl Radicand {
    pub fn is_rational(&self) -> bool {
        matches!(self, Radicand::Rational)
    }

    /// True for rationals and complex fields (n < 0).
    pub fn is_complex_or_rational(&self) -> bool {
        match self {
            Radicand::Rational => true,
            Radicand::Sqrt(n) => n.is_negative(),
        }
    }
}

/// Exact element x + y*sqrt(N).
///
/// Invariant: y == 0 if and only if the radicand is the rational sentinel,
/// so equality is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    x: Rational,
    y: Rational,
    rad: Radicand,
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

/// floor(b * sqrt(n)) for n > 0 not a perfect square.
fn floor_mul_sqrt(b: &BigInt, n: &BigInt) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let s = (b * b * n).sqrt();
    if b.is_negative() {
        // b*sqrt(n) is a negative irrational, so floor = -(isqrt + 1).
        -s - 1
    } else {
        s
    }
}

/// Sign of A + B*sqrt(p) for p >= 0 (p may be a perfect square or zero).
pub(crate) fn sign_a_plus_b_sqrt(a: &Rational, b: &Rational, p: &BigInt) -> i32 {
    let sa = rat_sign(a);
    if b.is_zero() || p.is_zero() {
        return sa;
    }
    let sb = rat_sign(b);
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // Opposite signs: compare a^2 with b^2 * p.
    let lhs = a * a;
    let rhs = b * b * Rational::from(p.clone());
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl QuadElem {
    fn make(x: Rational, y: Rational, rad: Radicand) -> Self {
        if y.is_zero() {
            QuadElem {
                x,
                y,
                rad: Radicand::Rational,
            }
        } else {
            QuadElem { x, y, rad }
        }
    }

    pub fn rational(x: Rational) -> Self {
        QuadElem::make(x, Rational::zero(), Radicand::Rational)
    }

    pub fn from_int(n: i64) -> Self {
        QuadElem::rational(Rational::from(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QuadElem::rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        QuadElem::from_int(0)
    }

    pub fn one() -> Self {
        QuadElem::from_int(1)
    }

    /// x + y*sqrt(n). Rejects n = 0 and perfect-square n; the caller must
    /// simplify sqrt(16) themselves. Any negative n is accepted.
    pub fn new(x: Rational, y: Rational, n: BigInt) -> Result<Self> {
        if is_perfect_square(&n) {
            return Err(Error::InvalidRadicand);
        }
        Ok(QuadElem::make(x, y, Radicand::Sqrt(n)))
    }

    /// Convenience constructor from integer parts: (xn/xd) + (yn/yd)*sqrt(n).
    pub fn from_parts(xn: i64, xd: i64, yn: i64, yd: i64, n: i64) -> Result<Self> {
        QuadElem::new(
            Rational::new(BigInt::from(xn), BigInt::from(xd)),
            Rational::new(BigInt::from(yn), BigInt::from(yd)),
            BigInt::from(n),
        )
    }

    /// Gaussian rational xn/xd + (yn/yd)i.
    pub fn gaussian(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        QuadElem::from_parts(xn, xd, yn, yd, -1).expect("-1 is a valid radicand")
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn radicand(&self) -> &Radicand {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_rational()
    }

    /// True when the value is a real number: rational or a real surd.
    pub fn is_real(&self) -> bool {
        match &self.rad {
            Radicand::Rational => true,
            Radicand::Sqrt(n) => n.is_positive(),
        }
    }

    /// Rational part; equals Re for rationals and complex radicands.
    pub fn re(&self) -> &Rational {
        &self.x
    }

    /// Sign of the imaginary part: 0 for any real value.
    pub fn im_sign(&self) -> i32 {
        match &self.rad {
            Radicand::Rational => 0,
            Radicand::Sqrt(n) => {
                if n.is_negative() {
                    rat_sign(&self.y)
                } else {
                    0
                }
            }
        }
    }

    /// Im(z)^2 = y^2 * |N|, exactly rational. Zero for real values.
    pub fn im_sq(&self) -> Rational {
        match &self.rad {
            Radicand::Rational => Rational::zero(),
            Radicand::Sqrt(n) => {
                if n.is_negative() {
                    &self.y * &self.y * Rational::from(-n.clone())
                } else {
                    Rational::zero()
                }
            }
        }
    }

    /// |z|^2 = x^2 - N*y^2; rational for complex and rational values.
    ///
    /// Panics on real surds, where |z|^2 is not rational in general; those
    /// never reach the complex-plane predicates that use this.
    pub fn abs_sq(&self) -> Rational {
        match &self.rad {
            Radicand::Rational => &self.x * &self.x,
            Radicand::Sqrt(n) => {
                assert!(n.is_negative(), "abs_sq needs a complex or rational value");
                &self.x * &self.x - Rational::from(n.clone()) * &self.y * &self.y
            }
        }
    }

    fn unify(&self, other: &QuadElem) -> Result<Radicand> {
        match (&self.rad, &other.rad) {
            (Radicand::Rational, r) => Ok(r.clone()),
            (r, Radicand::Rational) => Ok(r.clone()),
            (Radicand::Sqrt(a), Radicand::Sqrt(b)) => {
                if a == b {
                    Ok(Radicand::Sqrt(a.clone()))
                } else {
                    Err(Error::MixedRadicand)
                }
            }
        }
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem> {
        let rad = self.unify(other)?;
        Ok(QuadElem::make(&self.x + &other.x, &self.y + &other.y, rad))
    }

    pub fn sub(&self, other: &QuadElem) -> Result<QuadElem> {
        let rad = self.unify(other)?;
        Ok(QuadElem::make(&self.x - &other.x, &self.y - &other.y, rad))
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem::make(-&self.x, -&self.y, self.rad.clone())
    }

    /// Negates the sqrt(N) coefficient. For N < 0 this is complex conjugation.
    pub fn conj(&self) -> QuadElem {
        QuadElem::make(self.x.clone(), -&self.y, self.rad.clone())
    }

    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem> {
        let rad = self.unify(other)?;
        let (x, y) = match &rad {
            Radicand::Rational => (&self.x * &other.x, Rational::zero()),
            Radicand::Sqrt(n) => {
                let n = Rational::from(n.clone());
                (
                    &self.x * &other.x + &n * &self.y * &other.y,
                    &self.x * &other.y + &self.y * &other.x,
                )
            }
        };
        Ok(QuadElem::make(x, y, rad))
    }

    /// 1/(x + y*sqrt(N)) = (x - y*sqrt(N)) / (x^2 - N*y^2).
    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.rad {
            Radicand::Rational => Ok(QuadElem::rational(self.x.recip())),
            Radicand::Sqrt(n) => {
                // The norm never vanishes for nonzero elements: sqrt(N) is irrational.
                let norm = &self.x * &self.x - Rational::from(n.clone()) * &self.y * &self.y;
                Ok(QuadElem::make(
                    &self.x / &norm,
                    -&self.y / &norm,
                    self.rad.clone(),
                ))
            }
        }
    }

    pub fn div(&self, other: &QuadElem) -> Result<QuadElem> {
        self.mul(&other.inv()?)
    }

    pub fn add_rat(&self, r: &Rational) -> QuadElem {
        QuadElem::make(&self.x + r, self.y.clone(), self.rad.clone())
    }

    pub fn sub_int(&self, n: &BigInt) -> QuadElem {
        QuadElem::make(&self.x - Rational::from(n.clone()), self.y.clone(), self.rad.clone())
    }

    pub fn mul_rat(&self, r: &Rational) -> QuadElem {
        QuadElem::make(&self.x * r, &self.y * r, self.rad.clone())
    }

    pub fn mul_int(&self, n: &BigInt) -> QuadElem {
        self.mul_rat(&Rational::from(n.clone()))
    }

    /// Exact sign of a real value (rational or real surd).
    ///
    /// Panics on complex values.
    pub fn signum_real(&self) -> i32 {
        match &self.rad {
            Radicand::Rational => rat_sign(&self.x),
            Radicand::Sqrt(n) => {
                assert!(n.is_positive(), "signum_real needs a real value");
                sign_a_plus_b_sqrt(&self.x, &self.y, n)
            }
        }
    }

    /// floor of the real value of z: floor(x) when N <= 0 (that is floor(Re z)),
    /// and floor(x + y*sqrt(N)) by exact integer bracketing when N > 0.
    pub fn floor_real(&self) -> BigInt {
        match &self.rad {
            Radicand::Rational => self.x.floor().to_integer(),
            Radicand::Sqrt(n) if n.is_negative() => self.x.floor().to_integer(),
            Radicand::Sqrt(n) => {
                // z = (a + b*sqrt(n))/c with c > 0; floor(b*sqrt(n)) is exact,
                // and b*sqrt(n) is irrational, so z in (a+f, a+f+1)/c.
                let c = self.x.denom().lcm(self.y.denom());
                let a = self.x.numer() * (&c / self.x.denom());
                let b = self.y.numer() * (&c / self.y.denom());
                let f = floor_mul_sqrt(&b, n);
                (a + f).div_floor(&c)
            }
        }
    }

    /// Parse per the exact-number grammar; see the module docs of `cli` and
    /// the crate README for the accepted syntax.
    pub fn parse(text: &str) -> Result<QuadElem> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let v = p.parse_number()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    /// Parse, then check against an expected radicand. The parsed value wins
    /// when it is rational; a concrete radicand must match `default_n`.
    pub fn parse_exact(text: &str, default_n: &BigInt) -> Result<QuadElem> {
        let v = QuadElem::parse(text)?;
        match v.radicand() {
            Radicand::Rational => Ok(v),
            Radicand::Sqrt(n) if n == default_n => Ok(v),
            Radicand::Sqrt(_) => Err(Error::MixedRadicand),
        }
    }
}

impl FromStr for QuadElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuadElem> {
        QuadElem::parse(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.bytes[self.pos..].starts_with(s.as_bytes())
    }

    /// number := ['+'|'-'] term (('+'|'-') term)*
    fn parse_number(&mut self) -> Result<QuadElem> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        self.skip_ws();
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            let sub = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            self.skip_ws();
            let t = self.parse_term()?;
            let off = self.pos;
            acc = if sub { acc.sub(&t) } else { acc.add(&t) }.map_err(|e| match e {
                Error::MixedRadicand => Error::Parse {
                    offset: off,
                    message: "terms mix incompatible surds".to_string(),
                },
                other => other,
            })?;
        }
        Ok(acc)
    }

    /// term := '(' number ')' '/' posint
    ///       | rat ['*'] unit | rat | unit
    /// unit := 'i' | 'sqrt' '(' int ')'
    fn parse_term(&mut self) -> Result<QuadElem> {
        if self.eat(b'(') {
            let inner = self.parse_number()?;
            self.skip_ws();
            self.expect(b')')?;
            self.skip_ws();
            self.expect(b'/')?;
            self.skip_ws();
            let q = self.parse_posint()?;
            return Ok(inner.mul_rat(&Rational::new(BigInt::one(), q)));
        }
        if self.unit_ahead() {
            return self.parse_unit();
        }
        let r = self.parse_rat()?;
        // Optional unit factor, '*' optional: "2i", "1/2*i", "3*sqrt(5)".
        let save = self.pos;
        self.skip_ws();
        let starred = self.eat(b'*');
        if starred {
            self.skip_ws();
        }
        if self.unit_ahead() {
            let u = self.parse_unit()?;
            Ok(u.mul_rat(&r))
        } else if starred {
            Err(self.err("expected 'i' or 'sqrt(...)' after '*'"))
        } else {
            self.pos = save;
            Ok(QuadElem::rational(r))
        }
    }

    fn unit_ahead(&self) -> bool {
        match self.peek() {
            Some(b'i') => true,
            Some(b's') => self.starts_with("sqrt"),
            _ => false,
        }
    }

    fn parse_unit(&mut self) -> Result<QuadElem> {
        if self.eat(b'i') {
            return Ok(QuadElem::new(Rational::zero(), Rational::one(), BigInt::from(-1))
                .expect("-1 is a valid radicand"));
        }
        if self.starts_with("sqrt") {
            self.pos += 4;
            self.skip_ws();
            self.expect(b'(')?;
            self.skip_ws();
            let off = self.pos;
            let n = self.parse_int()?;
            self.skip_ws();
            self.expect(b')')?;
            return QuadElem::new(Rational::zero(), Rational::one(), n).map_err(|_| Error::Parse {
                offset: off,
                message: "radicand is zero or a perfect square".to_string(),
            });
        }
        Err(self.err("expected 'i' or 'sqrt(...)'"))
    }

    /// rat := int ['/' posint]
    fn parse_rat(&mut self) -> Result<Rational> {
        let n = self.parse_int()?;
        let save = self.pos;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            // "1/2" yes, but "1/sqrt(2)" is not in the grammar.
            if self.peek().map_or(false, |b| b.is_ascii_digit()) {
                let q = self.parse_posint()?;
                return Ok(Rational::new(n, q));
            }
        }
        self.pos = save;
        Ok(Rational::from(n))
    }

    fn parse_int(&mut self) -> Result<BigInt> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let mut v: BigInt = digits.parse().unwrap();
        if neg {
            v = -v;
        }
        Ok(v)
    }

    fn parse_posint(&mut self) -> Result<BigInt> {
        let off = self.pos;
        let v = self.parse_int()?;
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::Parse {
                offset: off,
                message: "expected a positive integer".to_string(),
            })
        }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// "i", "sqrt(-3)", "3*i", "2/5*sqrt(2)" for a nonzero coefficient.
fn fmt_unit_term(coeff: &Rational, n: &BigInt) -> String {
    let unit = if *n == BigInt::from(-1) {
        "i".to_string()
    } else {
        format!("sqrt({n})")
    };
    if coeff.is_one() {
        unit
    } else if (-coeff).is_one() {
        format!("-{unit}")
    } else {
        format!("{}*{}", fmt_rat(coeff), unit)
    }
}

impl fmt::Display for QuadElem {
    /// Canonical formatting, always re-parseable: "x + y*sqrt(N)" in lowest
    /// terms, with "i" substituted when N = -1, and a compact "(a+b*i)/q"
    /// form when both parts share a denominator q > 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match &self.rad {
            Radicand::Rational => return write!(f, "{}", fmt_rat(&self.x)),
            Radicand::Sqrt(n) => n,
        };
        if self.x.is_zero() {
            return write!(f, "{}", fmt_unit_term(&self.y, n));
        }
        let q = self.x.denom();
        if q == self.y.denom() && !q.is_one() {
            let a = self.x.numer();
            let b = Rational::from(self.y.numer().clone());
            let b_term = fmt_unit_term(&b.abs(), n);
            let sign = if b.is_negative() { '-' } else { '+' };
            return write!(f, "({a}{sign}{b_term})/{q}");
        }
        let sign = if self.y.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}",
            fmt_rat(&self.x),
            sign,
            fmt_unit_term(&self.y.abs(), n)
        )
    }
}
