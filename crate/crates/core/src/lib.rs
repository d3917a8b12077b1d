//! Exact counting and bound checking for shadows, rainbow cliques and their
//! relatives.
//!
//! Counts are exact big integers and ratios exact rationals. Real numbers
//! appear only where a bound is evaluated at a real parameter, and those
//! comparisons use the tolerances documented on each check.
//!
//! - [`hypergraph`]: colored hypergraphs, shadows and every combinatorial count.
//! - [`numkit`]: real binomials, Gaussian binomials and their inverses.
//! - [`entropy`]: exact finite distributions and entropy inequalities.
//! - [`forbidding`]: forbidding systems and the generalized shadow bound.
//! - [`qlinalg`]: subspaces of `F_q^n` and their shadows.
//! - [`constructions`]: explicit extremal configurations.
//! - [`search`]: exhaustive and randomized ratio searches.

pub mod constructions;
pub mod entropy;
pub mod error;
pub mod forbidding;
pub mod hypergraph;
pub mod numkit;
pub mod qlinalg;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use hypergraph::{ColoredHypergraph, Edge, SetFamily, Vertex};
pub use report::{BoundReport, Direction, Quantity};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/shadows.md")]
    pub mod shadows {}
    #[doc = include_str!("../../../book/src/rainbow.md")]
    pub mod rainbow {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    pub mod entropy {}
    #[doc = include_str!("../../../book/src/forbidding.md")]
    pub mod forbidding {}
    #[doc = include_str!("../../../book/src/qanalog.md")]
    pub mod qanalog {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub mod constructions {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
