//! Perturbative planar correlators of the two-coupling O(n) matrix model
//!
//! ```text
//! Z = ∫ dM exp N tr( −(t/2) Σ M_a² + (g₁/4) Σ M_a M_b M_a M_b + (g₂/2) Σ M_a² M_b² )
//! ```
//!
//! by exhaustive enumeration of planar Wick pairings. Coefficients are
//! polynomials in `n`, the number of matrices.

mod enumerate;
mod oracle;
mod word;

pub use enumerate::Filter;
pub use oracle::{PlanarOracle, DEFAULT_BUDGET, HARD_LIMIT};
pub use word::{ColorLabel, TraceWord, VertexType};

use crate::algebra::{BiSeries, ColorPoly};

/// Bivariate series in `(g₁, g₂)` with coefficients polynomial in `n`.
pub type CouplingSeries = BiSeries<ColorPoly>;
