//! Exact coefficient rings and truncated power series.

mod bipoly;
mod biseries;
mod color;
mod gaussian;
mod quadratic;
mod ring;
mod series;

pub use bipoly::{newton_lift, BivariatePoly};
pub use biseries::BiSeries;
pub use color::ColorPoly;
pub use gaussian::GaussianRational;
pub use quadratic::QuadraticNumber;
pub use ring::{q, qi, Ring, Scalar};
pub use series::{newton_solve, Series};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
