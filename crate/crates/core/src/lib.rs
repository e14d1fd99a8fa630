//! Exact enumeration of prime alternating tangles.
//!
//! The guide in `book/` walks through the modules; its code listings run
//! as doc-tests of this crate.

pub mod algebra;
pub mod error;
pub mod golden;
pub mod n1_exact;
pub mod nm2_exact;
pub mod planar;
pub mod renorm;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/planar.md")]
    mod planar {}
    #[doc = include_str!("../../../book/src/renorm.md")]
    mod renorm {}
    #[doc = include_str!("../../../book/src/n1.md")]
    mod n1 {}
    #[doc = include_str!("../../../book/src/nm2.md")]
    mod nm2 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
