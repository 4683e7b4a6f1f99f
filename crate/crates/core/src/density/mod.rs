//! The m-free sieve: root counts modulo ideals, the density as an Euler
//! product, direct counts, and the exponent calculus for the error term.

mod empirical;
mod euler;
mod exponent;
mod gap;
mod poly;
mod roots;

use serde::Serialize;

use crate::arith::interval::RatInterval;

pub use empirical::{counted_elements, empirical_count, empirical_rows, is_counted, EmpiricalRow};
pub(crate) use euler::prime_label;
pub use euler::{
    conductor_product, conductor_sum, euler_density, exceptional_rational_primes,
    resultant_with_derivative, volume_constant_interval, DensityParams, EulerDensity, FixedDivisor,
};
pub use exponent::{error_exponent, mfree_threshold, verify_chain, ExponentData};
pub(crate) use gap::base_change_remedy;
pub use gap::{density_gap_check, small_prime_obstruction, GapReport};
pub use poly::{Irreducibility, SievePolynomial};
pub use roots::{
    root_count, root_count_brute, root_count_order, root_count_order_brute, root_count_prime_power,
};

/// Density enclosure together with direct counts and the error exponent.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub density: RatInterval,
    pub truncation_norm: u128,
    pub empirical: Vec<EmpiricalRow>,
    pub exponents: ExponentData,
}

/// Runs the full comparison for the given volume parameters.
pub fn density_report(
    p: &DensityParams,
    truncation_norm: u128,
    xs: &[f64],
) -> crate::Result<DensityReport> {
    let d = euler_density(p, truncation_norm)?;
    let mid = crate::arith::interval::to_f64(&d.interval.mid());
    let empirical = empirical_rows(p, xs, mid)?;
    let exponents = error_exponent(p.field.degree() as u32, p.poly.degree() as u32, p.m)?;
    Ok(DensityReport {
        density: d.interval,
        truncation_norm,
        empirical,
        exponents,
    })
}
