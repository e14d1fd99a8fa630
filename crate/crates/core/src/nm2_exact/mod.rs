//! The `n = −2` model: exact four-leg counts and the location of the
//! nearest singularities of their generating function.

mod elliptic;
mod hp;
mod jet;
mod series;
mod singular;

pub use elliptic::elliptic_eval;
pub use hp::{bits_for_digits, ComplexHP, Field};
pub use jet::Jet2;
pub use series::{
    elliptic_series, gamma_table, model_series, solve_renorm_nm2, solve_renorm_nm2_real, EllipticSeries, ModelSeries,
};
pub use singular::{
    asymptotic_check, find_singularities, model_jets, residual, AsymptoticReport, AsymptoticRow, ModelJets, SearchBox,
    Singularity,
};
