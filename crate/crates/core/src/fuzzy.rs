//! Triangular linguistic labels.

use std::fmt;

use crate::scalar::Scalar;

/// Triangular membership function with vertices `a <= b <= c`, `a < c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularLabel<T> {
    pub label_index: usize,
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> TriangularLabel<T> {
    /// Returns `None` unless the vertices are finite and form a
    /// non-degenerate triangle.
    pub fn new(label_index: usize, a: T, b: T, c: T) -> Option<Self> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite();
        (finite && a <= b && b <= c && a < c).then_some(Self { label_index, a, b, c })
    }

    pub fn membership(&self, x: T) -> T {
        membership(x, self)
    }
}

impl<T: Scalar> fmt::Display for TriangularLabel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Label {} ({} {} {})",
            self.label_index,
            self.a.to_text(),
            self.b.to_text(),
            self.c.to_text()
        )
    }
}

/// Degree of membership of `x` in `label`.
///
/// Zero outside the open support `(a, c)`, one at the peak, linear on each
/// edge. A vertical edge (`a == b` or `b == c`) still yields 1 at the peak.
pub fn membership<T: Scalar>(x: T, label: &TriangularLabel<T>) -> T {
    let TriangularLabel { a, b, c, .. } = *label;
    if x.is_nan() {
        return T::zero();
    }
    if x == b {
        return T::one();
    }
    if x <= a || x >= c {
        return T::zero();
    }
    if x < b {
        (x - a) / (b - a)
    } else {
        (c - x) / (c - b)
    }
}
