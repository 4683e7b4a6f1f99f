//! Boxes of totally positive elements, lattice enumeration and the
//! lattice-point counting bounds.

mod counting;
mod enumerate;
mod minima;
mod region;

pub use counting::{
    count_coset, embed_lattice, rescaling, rescaling_det, volume_constant, CosetCount,
};
pub use enumerate::{enumerate_region, ENUMERATION_CAP};
pub use minima::{
    count_in_box, successive_minima, widmer_bound, widmer_bound_from_minima, widmer_constant,
    EmbeddedLattice, MINIMA_DIM_LIMIT, MINIMA_ENUM_CAP,
};
pub use region::{in_region, RegionBox};
