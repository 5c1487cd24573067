pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod cyclo;
pub mod descent;
pub mod error;
pub mod field;
pub mod gf;
pub mod isotypy;
pub mod linalg;
pub mod localfield;
pub mod perm;
pub mod poly;
pub mod session;

pub use cyclo::Rational;
pub use error::{Error, Result};

/// Elements of Q(zeta_N) with arbitrary-precision rational coefficients.
pub type Cyclotomic = cyclo::CyclotomicNumber<Rational>;
