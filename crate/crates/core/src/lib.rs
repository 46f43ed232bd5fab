//! Integer continued fractions for complex numbers, with exact arithmetic.
//!
//! A value z in C has a representation [a_0, a_1, ..., a_n + z_0] with
//! integer coefficients that are positive after the first and an exact tail
//! z_0 in the hourglass region F'. The expansion is computed by a
//! Lagrange/Gauss-style algorithm and is unique in canonical form. On top of
//! it sit four applications: two-dimensional lattice reduction, binary
//! quadratic form reduction for either sign of the discriminant, generator
//! word decompositions in SL(2,Z), and Farey cutting sequences.
//!
//! All arithmetic is exact over Q or a quadratic field Q(sqrt(N)); no
//! floating point is used anywhere.

pub mod cfrac;
pub mod cutting;
pub mod error;
pub mod exactnum;
pub mod lattice;
pub mod modgroup;
pub mod qform;
pub mod regions;

pub use error::{Error, Result};
pub use exactnum::{QuadElem, Radicand, Rational};
