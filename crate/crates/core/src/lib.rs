//! Exact computation and certification of LMOV/BPS integrality invariants:
//! the framed unknot (disc, annulus, multi-hole, all-genus one-hole), the
//! Ooguri–Vafa and Donaldson–Thomas factorizations of the reduced partition
//! function, and extremal BPS invariants of twist knots.
//!
//! All arithmetic is exact. Half-integer exponents are stored doubled:
//! `q^(k/2)` and `a^(k/2)` have integer exponent `k`.

pub mod arith;
pub mod error;
pub mod genus0;
pub mod gwdt;
pub mod onehole;
pub mod partition;
pub mod qa_ring;
pub mod series;
pub mod table;
pub mod twist;

pub use arith::BigRat;
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use partition::Partition;
pub use qa_ring::{Coeff, LaurentQ, LaurentQA, RationalQ, RationalQA, UPoly, ZBasisTable};
pub use series::{BiSeries, Series};
pub use table::{Formula, InvariantTable};
