#![cfg_attr(not(test), no_std)]

//! Exact mixed-volume and mixed-integral machinery for counting the zeros of generic
//! sparse polynomial systems and the multiplicities of those zeros, together with an
//! independent multiplicity-matrix oracle for concrete instances.

extern crate alloc;

pub mod dual;
pub mod engine;
pub mod envelope;
pub mod error;
mod linalg;
pub mod mixed;
pub mod num;
pub mod point;
pub mod polytope;
pub mod support;

pub use error::{Condition, Error, Result};
pub use num::{RPoint, Rational};
pub use point::{LatticePoint, PointSet};
pub use polytope::{Facet, Polytope};
pub use support::SupportFamily;
