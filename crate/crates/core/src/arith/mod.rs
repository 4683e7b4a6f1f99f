//! Integer, lattice and finite-field arithmetic shared by the algebraic layers.

pub mod factor;
pub mod ffpoly;
pub mod fmat;
pub mod hnf;
pub mod interval;
pub mod zpoly;
