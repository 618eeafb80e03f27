//! Convergent kernel series for the completed Riemann zeta function, with an
//! Euler-Maclaurin oracle and the Riemann-Siegel and Berry-Keating sums for
//! comparison. The guide in `book/` walks through the pieces.

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod complex_special;
pub mod error;
pub mod kernels;
pub mod reference;
pub mod series;

pub use error::{Error, Result};

// The book's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/critical_line.md")]
    mod critical_line {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
