//! Working-grid helpers: equispaced grids, trapezoid quadrature, linear
//! interpolation of grid functions.

use crate::error::{CoreError, Result};
use crate::scalar::Real;

/// Builds an equispaced grid of `m` points covering `[lo, hi]` inclusive.
pub fn work_grid<T: Real>(lo: T, hi: T, m: usize) -> Vec<T> {
    assert!(m >= 2, "work grid needs at least two points");
    let step = (hi - lo) / T::from_usize(m - 1).unwrap();
    (0..m)
        .map(|i| {
            if i == m - 1 {
                hi
            } else {
                lo + step * T::from_usize(i).unwrap()
            }
        })
        .collect()
}

/// Trapezoid quadrature weights for an arbitrary (sorted) grid.
pub fn trapezoid_weights<T: Real>(grid: &[T]) -> Vec<T> {
    let n = grid.len();
    let half = T::of(0.5);
    let mut w = vec![T::zero(); n];
    if n < 2 {
        if n == 1 {
            w[0] = T::one();
        }
        return w;
    }
    w[0] = (grid[1] - grid[0]) * half;
    w[n - 1] = (grid[n - 1] - grid[n - 2]) * half;
    for i in 1..n - 1 {
        w[i] = (grid[i + 1] - grid[i - 1]) * half;
    }
    w
}

/// Trapezoid-rule integral of `values` over `grid`.
pub fn trapezoid_integral<T: Real>(grid: &[T], values: &[T]) -> T {
    debug_assert_eq!(grid.len(), values.len());
    trapezoid_weights(grid)
        .iter()
        .zip(values)
        .fold(T::zero(), |acc, (&w, &v)| acc + w * v)
}

/// Inner product of two grid functions under trapezoid quadrature.
pub fn trapezoid_inner<T: Real>(grid: &[T], a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    trapezoid_weights(grid)
        .iter()
        .zip(a.iter().zip(b))
        .fold(T::zero(), |acc, (&w, (&x, &y))| acc + w * x * y)
}

/// Linearly interpolates a grid function at `t`.
///
/// Evaluation at a grid node returns the stored value exactly; `t` outside
/// the grid span is an extrapolation error.
pub fn interp_linear<T: Real>(grid: &[T], values: &[T], t: T) -> Result<T> {
    debug_assert_eq!(grid.len(), values.len());
    let n = grid.len();
    let (lo, hi) = (grid[0], grid[n - 1]);
    if t < lo || t > hi {
        return Err(CoreError::Extrapolation {
            time: t.as_f64(),
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    // partition_point: first index with grid[i] > t, so seg in 1..n
    let seg = grid.partition_point(|&g| g <= t).clamp(1, n - 1);
    let (x0, x1) = (grid[seg - 1], grid[seg]);
    let theta = (t - x0) / (x1 - x0);
    // Two-sided form keeps nodes exact: theta = 0 or 1 returns the endpoint.
    Ok(values[seg - 1] * (T::one() - theta) + values[seg] * theta)
}

/// Interpolates a grid function at several times.
pub fn interp_linear_many<T: Real>(grid: &[T], values: &[T], times: &[T]) -> Result<Vec<T>> {
    times
        .iter()
        .map(|&t| interp_linear(grid, values, t))
        .collect()
}
