//! Exact arithmetic for modular Lie algebras of Cartan type and the thin
//! loop algebras obtained from their cyclic gradings.

pub mod cartan;
pub mod cli;
pub mod ffield;
pub mod grading;
pub mod liealg;
pub mod linalg;
pub mod reproduce;
pub mod thinloop;
