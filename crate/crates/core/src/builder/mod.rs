//! Towers of quadratic extensions whose rings of integers are generated by
//! units, built from an order generated by units of the base field.

mod belcher;
mod compositum;
mod omega;
mod step;
mod tower;
mod units;

pub use belcher::{belcher_criterion, belcher_table, BelcherRow};
pub use compositum::{compositum_basis, CompositumBasis, CompositumElement, CompositumRing};
pub use omega::{find_omega, omega_conditions, shell};
pub use step::{llorente_nart_valuation, quadratic_step, TowerStep};
pub use tower::{
    build_tower, verify_steps, verify_unit_generation, StartOrder, Tower, TowerCaps,
    UnitGenerationReport,
};
pub use units::{check_hypotheses, unit_order};
