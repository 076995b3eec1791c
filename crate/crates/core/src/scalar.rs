//! Scalar abstraction shared by the parsers and the evaluation kernel.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type used for attribute values, membership degrees and
/// quality measures. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion of a count into the scalar domain.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Shortest decimal text that parses back to the same value.
    fn to_text(self) -> String {
        format!("{self}")
    }
}

impl Scalar for f32 {}

impl Scalar for f64 {}

/// Parses a base-10 decimal with '.' separator. Rejects non-finite input.
pub(crate) fn parse_finite<T: Scalar>(text: &str) -> Option<T> {
    let text = text.trim();
    if text.is_empty() || text.contains(',') {
        return None;
    }
    let lower = text.to_ascii_lowercase();
    if lower.contains("inf") || lower.contains("nan") {
        return None;
    }
    text.parse::<T>().ok().filter(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_finite_accepts_plain_decimals() {
        assert_eq!(parse_finite::<f64>("-1.95"), Some(-1.95));
        assert_eq!(parse_finite::<f64>(" 3 "), Some(3.0));
        assert_eq!(parse_finite::<f32>("2.5e1"), Some(25.0));
    }

    #[test]
    fn parse_finite_rejects_garbage() {
        for bad in ["", "1,5", "NaN", "inf", "-Infinity", "abc"] {
            assert_eq!(parse_finite::<f64>(bad), None, "{bad}");
        }
    }

    #[test]
    fn text_round_trips() {
        let x = 0.1f64 + 0.2;
        assert_eq!(x.to_text().parse::<f64>().unwrap(), x);
        let y = 1.0e-7f32;
        assert_eq!(y.to_text().parse::<f32>().unwrap(), y);
    }
}
