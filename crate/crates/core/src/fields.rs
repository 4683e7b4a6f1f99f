//! Bundled demonstration fields.

use crate::nf_core::NumberField;

pub const QSQRT5_JSON: &str = include_str!("../data/qsqrt5.json");
pub const QSQRT2_JSON: &str = include_str!("../data/qsqrt2.json");
pub const QI_JSON: &str = include_str!("../data/qi.json");

/// `Q(sqrt5)` with `theta` the golden ratio, `theta^2 = theta + 1`.
pub fn golden() -> NumberField {
    NumberField::from_json(QSQRT5_JSON).expect("bundled field")
}

/// `Q(sqrt2)` with `theta = sqrt2`.
pub fn sqrt2() -> NumberField {
    NumberField::from_json(QSQRT2_JSON).expect("bundled field")
}

/// `Q(i)` with `theta = i`.
pub fn gaussian() -> NumberField {
    NumberField::from_json(QI_JSON).expect("bundled field")
}

/// Look up a bundled field by name.
pub fn bundled(name: &str) -> Option<NumberField> {
    match name {
        "qsqrt5" | "Q(sqrt5)" => Some(golden()),
        "qsqrt2" | "Q(sqrt2)" => Some(sqrt2()),
        "qi" | "Q(i)" | "gaussian" => Some(gaussian()),
        _ => None,
    }
}

pub fn bundled_json(name: &str) -> Option<&'static str> {
    match name {
        "qsqrt5" | "Q(sqrt5)" => Some(QSQRT5_JSON),
        "qsqrt2" | "Q(sqrt2)" => Some(QSQRT2_JSON),
        "qi" | "Q(i)" | "gaussian" => Some(QI_JSON),
        _ => None,
    }
}
