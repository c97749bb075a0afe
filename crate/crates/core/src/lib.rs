#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod field;
pub mod matrix;
pub mod algebra;
pub mod modrep;
pub mod fitting;
pub mod upoly;
pub mod witness;
pub mod stable;
pub mod graph;
pub mod jordan;
pub mod mfpoly;
pub mod fixtures;
pub mod laws;

pub use error::Error;
pub use field::{Field, Rational, Scalar};
pub use algebra::{FiniteAlgebra, Ideal, QuotientMap};
pub use modrep::{HomBasis, ModuleRep};
pub use matrix::{Matrix, Subspace, Vector};
