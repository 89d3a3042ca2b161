//! Exact computation of Chern numbers of invariant almost complex structures
//! on generalized flag manifolds `G/K`.
//!
//! The crate is organised bottom-up: [`polyring`] provides exact polynomial
//! arithmetic, [`rootsys`] builds root systems and Weyl groups, [`groebner`]
//! realizes Borel presentations, [`flagmodel`] describes the isotropy
//! decomposition and the invariant structures, and [`chern`] integrates
//! characteristic classes. [`cohomology`] checks explicit presentations and
//! [`tables`] holds published reference values.

pub mod chern;
pub mod cohomology;
pub mod error;
pub mod flagmodel;
pub mod groebner;
pub mod polyring;
pub mod rootsys;
pub mod suite;
pub mod tables;

pub use error::{Error, Result};
