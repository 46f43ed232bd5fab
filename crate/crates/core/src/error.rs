//! Error type shared by all modules.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by an exactly-zero field element.
    DivisionByZero,
    /// Arithmetic between elements of Q(sqrt(M)) and Q(sqrt(N)) with M != N.
    MixedRadicand,
    /// The radicand is zero or a perfect square; the caller must simplify first.
    InvalidRadicand,
    /// Input text does not match the exact-number grammar.
    Parse { offset: usize, message: String },
    /// Region membership is only defined for complex or rational values.
    PositiveRadicand,
    /// The fraction 1/0 has no Ford circle.
    InfiniteFraction,
    /// Real quadratic surds have infinite expansions; use `periodic_cf`.
    RealIrrational,
    /// `periodic_cf` needs an irrational input.
    RationalInput,
    /// `periodic_cf` needs a real surd, not a complex value.
    NotRealSurd,
    /// The continued fraction has no next-to-last convergent.
    TooShort,
    /// The tail is not one of the four corners of the fundamental region.
    NotACorner,
    /// Basis vectors are linearly dependent over R.
    DegenerateLattice,
    /// The matrix does not have determinant +1.
    NotUnimodular,
    /// The form does not have the signature required by this reduction.
    WrongSignature,
    /// Square discriminants are outside the scope of cycle reduction.
    SquareDiscriminant,
    /// The point is not in the open upper half plane.
    NotUpperHalfPlane,
    /// Cutting sequences require Re(z) > 0 (or z on the imaginary axis).
    OutOfHalfPlane,
    /// The cutting sequence and continued fraction failed to match (a bug).
    Unrelated,
    /// The two fractions are not Farey neighbors.
    NotNeighbors,
    /// Structural invariant of a continued fraction violated.
    InvalidContinuedFraction(&'static str),
    /// Structural invariant of a generator word violated.
    InvalidWord(&'static str),
    /// Defensive iteration cap reached; legal inputs never hit this.
    IterationLimit,
}

impl Error {
    /// Stable machine-readable code, used verbatim in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedRadicand => "MixedRadicand",
            Error::InvalidRadicand => "InvalidRadicand",
            Error::Parse { .. } => "ParseError",
            Error::PositiveRadicand => "PositiveRadicand",
            Error::InfiniteFraction => "InfiniteFraction",
            Error::RealIrrational => "RealIrrational",
            Error::RationalInput => "RationalInput",
            Error::NotRealSurd => "NotRealSurd",
            Error::TooShort => "TooShort",
            Error::NotACorner => "NotACorner",
            Error::DegenerateLattice => "DegenerateLattice",
            Error::NotUnimodular => "NotUnimodular",
            Error::WrongSignature => "WrongSignature",
            Error::SquareDiscriminant => "SquareDiscriminant",
            Error::NotUpperHalfPlane => "NotUpperHalfPlane",
            Error::OutOfHalfPlane => "OutOfHalfPlane",
            Error::Unrelated => "Unrelated",
            Error::NotNeighbors => "NotNeighbors",
            Error::InvalidContinuedFraction(_) => "InvalidContinuedFraction",
            Error::InvalidWord(_) => "InvalidWord",
            Error::IterationLimit => "IterationLimit",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::MixedRadicand => write!(f, "mixed radicands; operands lie in different quadratic fields"),
            Error::InvalidRadicand => write!(f, "radicand is zero or a perfect square"),
            Error::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
            Error::PositiveRadicand => write!(f, "region membership needs a complex or rational value"),
            Error::InfiniteFraction => write!(f, "1/0 has no Ford circle"),
            Error::RealIrrational => write!(f, "real irrational input; use the periodic expansion"),
            Error::RationalInput => write!(f, "rational input has a finite expansion, not a periodic one"),
            Error::NotRealSurd => write!(f, "periodic expansion needs a real quadratic surd"),
            Error::TooShort => write!(f, "expansion too short; needs at least two coefficients"),
            Error::NotACorner => write!(f, "tail is not a corner of the fundamental region"),
            Error::DegenerateLattice => write!(f, "vectors are linearly dependent over the reals"),
            Error::NotUnimodular => write!(f, "matrix must have determinant +1"),
            Error::WrongSignature => write!(f, "form does not have the required signature"),
            Error::SquareDiscriminant => write!(f, "square discriminants are not supported"),
            Error::NotUpperHalfPlane => write!(f, "point is not in the open upper half plane"),
            Error::OutOfHalfPlane => write!(f, "cutting sequences need Re(z) > 0"),
            Error::Unrelated => write!(f, "cutting sequence does not match the continued fraction"),
            Error::NotNeighbors => write!(f, "fractions are not Farey neighbors"),
            Error::InvalidContinuedFraction(why) => write!(f, "invalid continued fraction: {why}"),
            Error::InvalidWord(why) => write!(f, "invalid generator word: {why}"),
            Error::IterationLimit => write!(f, "iteration cap reached"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
