//! Lattices over `A` and `K` together with their quiver representations.

pub mod module;
pub mod quiver;
pub mod rank;
pub mod typed;

pub use module::Module;
pub use quiver::{
    decompose, find_isomorphism, find_monomorphism, hom_space, is_indecomposable, QuiverRep, RepHom, Violation,
};
pub use rank::VectorRank;
pub use typed::TypedLattice;
