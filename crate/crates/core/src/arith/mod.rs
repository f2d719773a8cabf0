//! Exact arithmetic kernel: rings, polynomials, matrices, normal forms,
//! resultants and rational lattices.

pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod resultant;
pub mod ring;
pub mod sparse;

pub use lattice::Lattice;
pub use matrix::{IntMatrix, Matrix};
pub use normal_form::{hnf, snf, HermiteForm, SmithForm};
pub use poly::{IntPoly, Poly, RatPoly};
pub use resultant::resultant;
pub use ring::{ExactDivision, Integers, PrimeField, Rationals, Ring};
