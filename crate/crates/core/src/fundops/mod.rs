//! The cross-category functor catalog (embeddings, integrals,
//! restrictions), the split monad on the product site with its
//! canonical resolution, and the structural isomorphism checks.

#[cfg(test)]
mod tests;

pub mod catalog;
pub mod monad;
pub mod checks;

pub use catalog::*;
pub use monad::*;
pub use checks::*;
