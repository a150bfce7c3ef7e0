//! Exact-arithmetic lab for functor categories on skeletal linear sites
//! over small finite fields.
//!
//! Everything here is finite and enumerable: fields F_q with q <= 16,
//! matrices and canonical (RREF) subspaces over them, skeletal source
//! categories built from enumerated hom-sets, and functors on those sites
//! stored as explicit dimension vectors plus one matrix per site morphism.
//! On top of that sit the fundamental functor catalog, the monadic
//! resolution calculus, the Boolean coalgebra structure of the subspace
//! linearization `k[Gr]`, and truncation-aware Hom/Ext computations.
//!
//! Conventions used throughout:
//!
//! * Vectors are row vectors and maps act on the right: a linear map
//!   `f : F_q^a -> F_q^b` is an `a x b` matrix, `v |-> v * M`.
//!   Consequently the matrix of a composite `g . f` is `M_f * M_g`.
//! * A subspace is identified with the unique reduced row echelon basis
//!   of its row space; subspaces are equal iff their RREF bases are
//!   bit-identical.
//! * Skeletal site objects carry coordinate bases `E_m = span(e_1..e_m)`;
//!   values of functors at non-coordinate bases are obtained by a fixed
//!   completion-to-basis transport (see [`ctx::Ctx`]).

pub mod error;
pub mod gfq;
pub mod linalg;
pub mod ctx;
pub mod sites;
pub mod funcat;
pub mod fundops;
pub mod grcoalg;
pub mod homology;
pub mod corpus;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use gfq::{Field, FieldElem};
pub use linalg::{Matrix, Subspace};
