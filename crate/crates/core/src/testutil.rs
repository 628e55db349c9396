use crate::{Instance, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Validated instance from `(numerator, denominator)` pairs.
pub fn inst(rows: &[&[(i64, i64)]]) -> Instance {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|&(n, d)| r(n, d)).collect())
        .collect();
    Instance::validate(rows).expect("test instance is normalized")
}
