//! Small numeric helpers shared by the planners and bound checkers.

use num_bigint::BigUint;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::Fraction;

/// `x^(1/k)` for `x >= 0`, snapped to the integer root when `x` is a perfect
/// `k`-th power. `powf` returns `9.999999999999998` for `1000^(1/3)`, which
/// would push a subsequent `ceil` up by one.
pub fn root(x: f64, k: u32) -> f64 {
    if k == 1 || x <= 0.0 {
        return x;
    }
    let y = x.powf(1.0 / k as f64);
    let rounded = y.round();
    if rounded > 0.0 && (rounded.powi(k as i32) - x).abs() <= x * 4.0 * f64::EPSILON {
        rounded
    } else {
        y
    }
}

/// `x^(a/b)` computed as a root of an integer power where that stays finite.
pub fn pow_ratio(x: f64, a: u32, b: u32) -> f64 {
    let p = x.powi(a as i32);
    if p.is_finite() {
        root(p, b)
    } else {
        x.powf(a as f64 / b as f64)
    }
}

pub fn log2(x: f64) -> f64 {
    x.log2()
}

/// Ceiling of a non-negative real as a count, saturating at `u64::MAX`.
pub fn ceil_count(x: f64) -> u64 {
    if x.is_nan() || x <= 0.0 {
        0
    } else if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.ceil() as u64
    }
}

pub fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

pub fn fraction_to_f64(x: Fraction) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Median of a non-empty slice; the mean of the two middle values for even
/// lengths. NaNs sort last.
pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Greater));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_roots_snap() {
        assert_eq!(root(1000.0, 3), 10.0);
        assert_eq!(root(1e12, 3), 1e4);
        assert_eq!(root(16.0, 4), 2.0);
        assert!((root(20.0, 2) - 20f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ceil_saturates() {
        assert_eq!(ceil_count(-1.0), 0);
        assert_eq!(ceil_count(2.0), 2);
        assert_eq!(ceil_count(2.1), 3);
        assert_eq!(ceil_count(f64::INFINITY), u64::MAX);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
