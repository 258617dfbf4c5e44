//! Degree-variance ("sigma") index for fuzzy graphs.
//!
//! The crate covers the data model ([`FuzzyGraph`]), the scalar indices in
//! [`index`], graph constructions in [`ops`], named and random families in
//! [`families`], a catalog of bounds and identities in [`claims`] with a
//! campaign runner in [`campaign`], and the plain-text file format in [`io`].

pub mod campaign;
pub mod claims;
pub mod error;
pub mod families;
pub mod graph;
pub mod index;
pub mod io;
pub mod ops;
pub mod selftest;

pub use error::{GraphError, ParseError};
pub use graph::FuzzyGraph;
pub use index::{
    d_max_vertex, degree, fuzzy_size, sigma_edge_sum, sigma_star, sigma_weighted, summarize,
    SigmaReport,
};
pub use ops::TNorm;
