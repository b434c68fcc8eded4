//! Exact integer and rational linear algebra: expansion tests, fundamental
//! domains and digit decompositions, lattices in Hermite canonical form, and
//! the saturation procedure for height lattices.

mod digits;
mod expansion;
mod hnf;
mod matrix;
pub mod numeric;

pub use digits::{coset_representatives, is_fundamental_domain, DigitDecomposition, DigitSystem};
pub use expansion::is_expansion;
pub use hnf::{saturate_height, Lattice, RatLattice};
pub use matrix::{IntMatrix, RatMatrix};
