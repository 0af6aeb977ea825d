//! F1-representations of quivers.
//!
//! A representation over the field with one element is a pointed set at each
//! vertex together with partial injections along the arrows. Such data is the
//! same as a winding `Γ → Q`, and this crate works with both views: it decides
//! finiteness of nice length through the universal nice-grading iteration,
//! counts subrepresentations to obtain Euler characteristics of quiver
//! Grassmannians (with a finite-field point-counting cross-check) and
//! computes in the Hall algebra of F1-representations.

pub mod builders;
pub mod canon;
pub mod corpus;
pub mod error;
pub mod gradings;
pub mod grassmannian;
pub mod hall;
pub mod json;
pub mod lattice;
pub mod morphism;
pub mod named;
pub mod quiver;
pub mod rep;

pub use error::{Error, Result};
pub use quiver::{Quiver, QuiverMap, ShapeClass, Winding};
pub use rep::F1Rep;
