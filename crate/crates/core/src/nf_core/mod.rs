//! Number fields, their integers, ideals and orders.

mod element;
pub mod embeddings;
pub mod field;
pub mod ideal;
pub mod order;
pub mod prime;
mod square;

pub use embeddings::{Ball, Embeddings, SigmaVector};
pub use field::{is_irreducible, FieldSpec, NumberField, RationalEntry, Q};
pub use ideal::{ideal_norm, IdealLattice};
pub use order::{conductor, ContractedIdeal, IndexBound, SubOrder};
pub use prime::PrimeIdealData;

/// Integer coordinates on the integral basis.
pub type AlgebraicInt = Vec<i128>;

/// Largest residue ring enumerated by brute force.
pub const RESIDUE_CAP: u128 = 1_000_000;
