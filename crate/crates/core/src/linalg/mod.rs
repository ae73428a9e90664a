//! Exact linear algebra over `Z/p^N` and over the residue field `F_p`.

pub mod kmatrix;
pub mod poly;
pub mod rmatrix;
pub mod scalar;
pub mod smith;

pub use kmatrix::{KMatrix, Rref};
pub use poly::FpPoly;
pub use rmatrix::RMatrix;
pub use scalar::{TruncScalar, Zpn, GUARD};
pub use smith::{
    kernel_basis, kernel_with_coordinates, rank, smith, smith_pivots, solve, subquotient_invariant,
    ModuleInvariant, SmithForm, Solver,
};
