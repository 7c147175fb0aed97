//! Exact computations for metaplectic covers of split reductive groups over
//! the local field `F_q((t))`.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: prime fields, roots of unity, Laurent series and exact rational functions.
//! - [`rootdata`]: root data, Weyl groups, invariant bilinear forms.
//! - [`metalattice`]: the lattice `Λ`, the integers `n_α` and the dual root datum.
//! - [`hilbert`]: the tame Hilbert symbol.
//! - [`cocycle`]: torus cocycles, commutators and the Kubota cocycle on `SL_2`.
//! - [`sl2`]: brute-force Satake, convolution and intertwining computations on the `SL_2` cover.
//! - [`hecke`]: group algebras, the Iwahori–Hecke algebra and its presentation.
//! - [`catalog`] and [`input`]: worked data and JSON input validation for the CLI.

pub mod arith;
pub mod catalog;
pub mod cocycle;
pub mod hecke;
pub mod hilbert;
pub mod input;
pub mod intmat;
pub mod metalattice;
pub mod rootdata;
pub mod scalar;
pub mod sl2;
