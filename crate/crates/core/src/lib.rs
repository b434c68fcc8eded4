//! Exact-arithmetic analysis of multidimensional constant-shape substitutions.
//!
//! A constant-shape substitution maps each letter of a finite alphabet to a
//! pattern laid out on a fixed fundamental domain `F` of `L(Z^d)`, where `L`
//! is an expansive integer matrix. This crate models those substitutions and
//! the combinatorial, geometric and algebraic invariants of their subshifts:
//! filling and cover sets, languages over finite supports, digit-tile
//! geometry and normal fans, certified nondeterministic directions, height
//! lattices and odometer factors, automorphisms and symmetry-group
//! candidates.
//!
//! All decisions are made in exact integer or rational arithmetic. Floating
//! point never enters the core; where a real quantity is needed (operator
//! norms, radius bounds) a certified rational upper bound is used instead.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `conshape` crate.

#![no_std]

#[macro_use]
extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod directions;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod morphisms;
pub mod patterns;
pub mod point;
pub mod substitution;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, Lattice};
pub use point::Point;
pub use substitution::Substitution;
