//! Exact integer linear algebra.
//!
//! All arithmetic is over `BigInt`; there is no floating point and no
//! modular shortcut anywhere. The central routine is [`smith`], which brings
//! an integer matrix A into Smith normal form U·A·V = S with unimodular U, V
//! and diagonal S whose positive entries form a divisibility chain. Kernels,
//! cokernels, and integer linear solving are all derived from it.

mod lattice;
mod matrix;
mod smith_nf;

pub use lattice::{column_lattice_basis, lattice_saturation, quotient_by_lattice, Quotient};
pub use matrix::IntMatrix;
pub use smith_nf::{cokernel, kernel_basis, smith, solve, Cokernel, SmithForm};
