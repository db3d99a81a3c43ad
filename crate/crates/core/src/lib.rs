//! Exact arithmetic for quadratic Artin-Schreier theory over local function
//! fields K = F_{2^f}((t)), and the L-packet bookkeeping for SL(2) over K and
//! its nonsplit inner form.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf2e`] -- bit-packed arithmetic in F_{2^f}: trace, square roots, bases.
//! * [`laurent`] -- truncated Laurent series with explicit precision, formal
//!   derivative, residue, and the convergent product expansion of units.
//! * [`artin_schreier`] -- the symbol `(alpha, beta]` on K^x x K/wp(K), the
//!   canonical coset reduction, and the quadratic characters `chi_{n,j}` with
//!   their closed-form evaluation and levels.
//! * [`ramification`] -- quadratic/biquadratic extensions as lines and planes
//!   in K/wp(K), upper-numbering break profiles, Hasse-Herbrand conversion to
//!   lower numbering, and exact counting by subspace enumeration.
//! * [`depth`] -- Artin conductors and depths from filtration data, plus the
//!   closed-form depth pairs for octahedral, tetrahedral and imprimitive
//!   parameters. All depths are exact rationals.
//! * [`packets`] -- packet cardinalities, component groups, relevance and
//!   depth for a combinatorial parameter descriptor.
//! * [`suites`] -- seeded self-check suites behind the `verify` CLI command.

pub mod artin_schreier;
pub mod depth;
pub mod error;
pub mod f2linalg;
pub mod gf2e;
pub mod laurent;
pub mod packets;
pub mod ramification;
pub mod suites;

pub use error::{Error, Result};
pub use gf2e::{Field, FieldSpec, FqElem, TraceBasis};
pub use laurent::{LaurentSeries, ProductExpansion};

/// Exact rational values (depths, conductors). No floating point anywhere.
pub type Rational = num_rational::Ratio<i64>;
