//! Local-linear kernel smoothers in one and two dimensions with GCV
//! bandwidth selection.
//!
//! The 1D smoother fits a weighted least-squares line centered at each
//! evaluation point and returns the intercept; the 2D smoother fits a local
//! plane on a grid and symmetrizes the result. Both reproduce affine inputs
//! exactly, which is the contract the FPCA stage relies on.

use crate::error::{CoreError, Result};
use crate::scalar::Real;
use nalgebra::DMatrix;

/// Kernel family for local weighting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Unbounded support; robust on sparse designs.
    #[default]
    Gaussian,
    /// Compact support on `[-1, 1]`.
    Epanechnikov,
}

impl Kernel {
    #[inline]
    pub fn eval<T: Real>(self, u: T) -> T {
        match self {
            Kernel::Gaussian => (-u * u * T::of(0.5)).exp(),
            Kernel::Epanechnikov => {
                let one = T::one();
                if u.abs() < one {
                    T::of(0.75) * (one - u * u)
                } else {
                    T::zero()
                }
            }
        }
    }
}

/// One-dimensional local-linear smoother.
#[derive(Debug, Clone, Copy)]
pub struct Smoother1D<T> {
    pub bandwidth: T,
    pub kernel: Kernel,
}

impl<T: Real> Smoother1D<T> {
    pub fn new(bandwidth: T, kernel: Kernel) -> Result<Self> {
        if bandwidth <= T::zero() {
            return Err(CoreError::Parameter {
                name: "bandwidth",
                reason: format!("must be positive, got {}", bandwidth.as_f64()),
            });
        }
        Ok(Self { bandwidth, kernel })
    }

    /// Smooths `(x, y)` with observation weights `w` at `eval_points`.
    pub fn smooth(&self, x: &[T], y: &[T], w: &[T], eval_points: &[T]) -> Result<Vec<T>> {
        smooth_1d(x, y, w, self.kernel, self.bandwidth, eval_points)
    }
}

/// Two-dimensional local-linear surface smoother.
#[derive(Debug, Clone, Copy)]
pub struct Smoother2D<T> {
    pub bandwidths: (T, T),
    pub kernel: Kernel,
}

impl<T: Real> Smoother2D<T> {
    pub fn new(bandwidths: (T, T), kernel: Kernel) -> Result<Self> {
        if bandwidths.0 <= T::zero() || bandwidths.1 <= T::zero() {
            return Err(CoreError::Parameter {
                name: "bandwidths",
                reason: "both bandwidths must be positive".into(),
            });
        }
        Ok(Self { bandwidths, kernel })
    }

    pub fn smooth(&self, s: &[T], t: &[T], z: &[T], eval_grid: &[T]) -> Result<DMatrix<T>> {
        smooth_2d(s, t, z, self.kernel, self.bandwidths, eval_grid)
    }
}

// Relative tolerance deciding that a local design matrix is singular, and the
// absolute floor on local kernel mass.
fn mass_floor<T: Real>() -> T {
    T::of(1e-12)
}

/// Local-linear smooth of scattered `(x, y)` data evaluated at `eval_points`.
///
/// At each evaluation point `p` the estimate is the intercept of the
/// kernel-weighted least-squares line in `x - p`. Every observation carries
/// its own multiplicative weight `w`.
pub fn smooth_1d<T: Real>(
    x: &[T],
    y: &[T],
    w: &[T],
    kernel: Kernel,
    bandwidth: T,
    eval_points: &[T],
) -> Result<Vec<T>> {
    check_1d_inputs(x, y, w, bandwidth)?;
    eval_points
        .iter()
        .map(|&p| local_linear_fit(x, y, w, kernel, bandwidth, p).map(|(a, _)| a))
        .collect()
}

/// Fitted values and hat-matrix trace of the 1D smoother at the data points.
///
/// Used by GCV; returns `(fitted, trace)`.
pub fn smooth_1d_fitted<T: Real>(
    x: &[T],
    y: &[T],
    w: &[T],
    kernel: Kernel,
    bandwidth: T,
) -> Result<(Vec<T>, T)> {
    check_1d_inputs(x, y, w, bandwidth)?;
    let mut fitted = Vec::with_capacity(x.len());
    let mut trace = T::zero();
    for (i, &p) in x.iter().enumerate() {
        let (a, hat_own) = local_linear_fit_hat(x, y, w, kernel, bandwidth, p, i)?;
        fitted.push(a);
        trace += hat_own;
    }
    Ok((fitted, trace))
}

fn check_1d_inputs<T: Real>(x: &[T], y: &[T], w: &[T], bandwidth: T) -> Result<()> {
    if x.len() != y.len() || x.len() != w.len() {
        return Err(CoreError::Parameter {
            name: "x/y/weights",
            reason: format!(
                "length mismatch: {} / {} / {}",
                x.len(),
                y.len(),
                w.len()
            ),
        });
    }
    if x.len() < 2 {
        return Err(CoreError::Parameter {
            name: "x",
            reason: "need at least two observations".into(),
        });
    }
    if bandwidth <= T::zero() {
        return Err(CoreError::Parameter {
            name: "bandwidth",
            reason: "must be positive".into(),
        });
    }
    Ok(())
}

/// Weighted-least-squares line fit centered at `p`; returns `(intercept, slope)`.
fn local_linear_fit<T: Real>(
    x: &[T],
    y: &[T],
    w: &[T],
    kernel: Kernel,
    bandwidth: T,
    p: T,
) -> Result<(T, T)> {
    let (mut s0, mut s1, mut s2) = (T::zero(), T::zero(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::zero());
    for ((&xi, &yi), &wi) in x.iter().zip(y).zip(w) {
        let d = xi - p;
        let k = kernel.eval(d / bandwidth) * wi;
        s0 += k;
        s1 += k * d;
        s2 += k * d * d;
        t0 += k * yi;
        t1 += k * d * yi;
    }
    let den = s0 * s2 - s1 * s1;
    if s0 < mass_floor() || !(den > s0 * s2 * T::of(1e-12)) {
        return Err(CoreError::BandwidthTooSmall { point: p.as_f64() });
    }
    let a = (s2 * t0 - s1 * t1) / den;
    let b = (s0 * t1 - s1 * t0) / den;
    Ok((a, b))
}

/// As [`local_linear_fit`] but also returns the hat weight of observation
/// `own` in its own fitted value (the diagonal entry of the smoother matrix).
fn local_linear_fit_hat<T: Real>(
    x: &[T],
    y: &[T],
    w: &[T],
    kernel: Kernel,
    bandwidth: T,
    p: T,
    own: usize,
) -> Result<(T, T)> {
    let (a, _) = local_linear_fit(x, y, w, kernel, bandwidth, p)?;
    // Recompute moments to extract the hat weight l_own(p).
    let (mut s0, mut s1, mut s2) = (T::zero(), T::zero(), T::zero());
    let mut k_own = T::zero();
    for (i, (&xi, &wi)) in x.iter().zip(w).enumerate() {
        let d = xi - p;
        let k = kernel.eval(d / bandwidth) * wi;
        s0 += k;
        s1 += k * d;
        s2 += k * d * d;
        if i == own {
            k_own = k;
        }
    }
    let den = s0 * s2 - s1 * s1;
    let d_own = x[own] - p;
    let hat = k_own * (s2 - s1 * d_own) / den;
    Ok((a, hat))
}

/// Local-linear plane fit of scattered `(s, t, z)` data on
/// `eval_grid x eval_grid`, symmetrized as `(S + S^T) / 2`.
pub fn smooth_2d<T: Real>(
    s: &[T],
    t: &[T],
    z: &[T],
    kernel: Kernel,
    bandwidths: (T, T),
    eval_grid: &[T],
) -> Result<DMatrix<T>> {
    if s.len() != t.len() || s.len() != z.len() {
        return Err(CoreError::Parameter {
            name: "s/t/z",
            reason: "length mismatch".into(),
        });
    }
    if s.len() < 3 {
        return Err(CoreError::Parameter {
            name: "s",
            reason: "need at least three observations".into(),
        });
    }
    let (bw_s, bw_t) = bandwidths;
    if bw_s <= T::zero() || bw_t <= T::zero() {
        return Err(CoreError::Parameter {
            name: "bandwidths",
            reason: "must be positive".into(),
        });
    }

    let m = eval_grid.len();
    let n = s.len();

    // The kernel factorizes over the two coordinates, so per-node weights are
    // products of two per-axis tables computed once.
    let mut ks = vec![T::zero(); m * n];
    let mut kt = vec![T::zero(); m * n];
    for (j, &g) in eval_grid.iter().enumerate() {
        for i in 0..n {
            ks[j * n + i] = kernel.eval((s[i] - g) / bw_s);
            kt[j * n + i] = kernel.eval((t[i] - g) / bw_t);
        }
    }

    let mut surface = DMatrix::<T>::zeros(m, m);
    for ju in 0..m {
        let u = eval_grid[ju];
        let wu = &ks[ju * n..(ju + 1) * n];
        for jv in 0..m {
            let v = eval_grid[jv];
            let wv = &kt[jv * n..(jv + 1) * n];

            let (mut s00, mut s10, mut s01) = (T::zero(), T::zero(), T::zero());
            let (mut s20, mut s11, mut s02) = (T::zero(), T::zero(), T::zero());
            let (mut t00, mut t10, mut t01) = (T::zero(), T::zero(), T::zero());
            for i in 0..n {
                let k = wu[i] * wv[i];
                if k == T::zero() {
                    continue;
                }
                let ds = s[i] - u;
                let dt = t[i] - v;
                s00 += k;
                s10 += k * ds;
                s01 += k * dt;
                s20 += k * ds * ds;
                s11 += k * ds * dt;
                s02 += k * dt * dt;
                let kz = k * z[i];
                t00 += kz;
                t10 += kz * ds;
                t01 += kz * dt;
            }

            // Cramer solve of the 3x3 normal equations; the intercept is the
            // surface value at the node.
            let det = s00 * (s20 * s02 - s11 * s11) - s10 * (s10 * s02 - s11 * s01)
                + s01 * (s10 * s11 - s20 * s01);
            let scale = s00 * s20 * s02;
            if s00 < mass_floor() || !(det > scale * T::of(1e-12)) {
                return Err(CoreError::BandwidthTooSmall { point: u.as_f64() });
            }
            let det_a = t00 * (s20 * s02 - s11 * s11) - s10 * (t10 * s02 - s11 * t01)
                + s01 * (t10 * s11 - s20 * t01);
            surface[(ju, jv)] = det_a / det;
        }
    }

    // Exact symmetrization.
    let half = T::of(0.5);
    for ju in 0..m {
        for jv in 0..ju {
            let avg = (surface[(ju, jv)] + surface[(jv, ju)]) * half;
            surface[(ju, jv)] = avg;
            surface[(jv, ju)] = avg;
        }
    }
    Ok(surface)
}

/// Geometric bandwidth candidate grid on `[lo, hi]`.
pub fn gcv_candidates<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    assert!(count >= 2 && lo > T::zero() && hi > lo);
    let ratio = (hi / lo).ln() / T::from_usize(count - 1).unwrap();
    (0..count)
        .map(|i| lo * (ratio * T::from_usize(i).unwrap()).exp())
        .collect()
}

/// Selects the GCV-minimizing bandwidth among `candidates` for the 1D
/// smoother, breaking ties toward the larger bandwidth.
///
/// Candidates on which the smoother degenerates (singular local fits or a
/// saturated hat matrix) are skipped; if none survive, the error names the
/// problem.
pub fn select_bandwidth_gcv<T: Real>(
    x: &[T],
    y: &[T],
    w: &[T],
    kernel: Kernel,
    candidates: &[T],
) -> Result<T> {
    if candidates.len() < 2 {
        return Err(CoreError::Parameter {
            name: "candidates",
            reason: "need at least two candidates".into(),
        });
    }
    if candidates.iter().any(|&c| c <= T::zero()) {
        return Err(CoreError::Parameter {
            name: "candidates",
            reason: "all candidates must be positive".into(),
        });
    }
    let n = T::from_usize(x.len()).unwrap();
    let mut sorted = candidates.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // An exact interpolating fit leaves RSS at rounding-noise level, which
    // must compare as a tie across bandwidths rather than as a minimum.
    let y_scale = y.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let rss_floor = y_scale * T::EPS * T::EPS * n;

    let mut best: Option<(T, T)> = None;
    for &bw in &sorted {
        let Ok((fitted, trace)) = smooth_1d_fitted(x, y, w, kernel, bw) else {
            continue;
        };
        let denom = n - trace;
        if denom <= T::zero() {
            continue;
        }
        let mut rss = y
            .iter()
            .zip(&fitted)
            .fold(T::zero(), |acc, (&yi, &fi)| acc + (yi - fi) * (yi - fi));
        if rss <= rss_floor {
            rss = T::zero();
        }
        let score = n * rss / (denom * denom);
        if !score.is_finite() {
            continue;
        }
        // Ascending scan with `<=` keeps the largest bandwidth on ties.
        match best {
            Some((best_score, _)) if score > best_score => {}
            _ => best = Some((score, bw)),
        }
    }
    best.map(|(_, bw)| bw).ok_or(CoreError::NoValidBandwidth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn equal_weights(n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    #[test]
    fn reproduces_affine_exactly() {
        let x: Vec<f64> = (0..40).map(|i| i as f64 * 0.3).collect();
        let y: Vec<f64> = x.iter().map(|t| 2.0 * t + 1.0).collect();
        let w = equal_weights(x.len());
        for bw in [0.2, 1.0, 5.0] {
            let eval: Vec<f64> = vec![0.0, 1.7, 6.3, 11.7];
            let out = smooth_1d(&x, &y, &w, Kernel::Gaussian, bw, &eval).unwrap();
            for (p, v) in eval.iter().zip(&out) {
                assert_relative_eq!(*v, 2.0 * p + 1.0, epsilon = 1e-10, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn reproduces_constant() {
        let x: Vec<f64> = (0..15).map(|i| i as f64).collect();
        let y = vec![4.5; 15];
        let w = equal_weights(15);
        let out = smooth_1d(&x, &y, &w, Kernel::Epanechnikov, 3.0, &x).unwrap();
        for v in out {
            assert_relative_eq!(v, 4.5, epsilon = 1e-10);
        }
    }

    #[test]
    fn linearity_in_y() {
        let x: Vec<f64> = (0..30).map(|i| i as f64 * 0.4).collect();
        let y1: Vec<f64> = x.iter().map(|t| t.sin()).collect();
        let y2: Vec<f64> = x.iter().map(|t| t * t * 0.1).collect();
        let combo: Vec<f64> = y1.iter().zip(&y2).map(|(a, b)| 2.0 * a - 3.0 * b).collect();
        let w = equal_weights(30);
        let eval = vec![1.0, 5.0, 9.0];
        let f1 = smooth_1d(&x, &y1, &w, Kernel::Gaussian, 1.0, &eval).unwrap();
        let f2 = smooth_1d(&x, &y2, &w, Kernel::Gaussian, 1.0, &eval).unwrap();
        let fc = smooth_1d(&x, &combo, &w, Kernel::Gaussian, 1.0, &eval).unwrap();
        for i in 0..eval.len() {
            assert_relative_eq!(fc[i], 2.0 * f1[i] - 3.0 * f2[i], epsilon = 1e-9);
        }
    }

    #[test]
    fn tiny_bandwidth_names_the_point() {
        let x = vec![0.0f64, 1.0, 2.0, 3.0];
        let y = vec![0.0, 1.0, 2.0, 3.0];
        let w = equal_weights(4);
        let err = smooth_1d(&x, &y, &w, Kernel::Gaussian, 1e-4, &[1.5]).unwrap_err();
        match err {
            CoreError::BandwidthTooSmall { point } => assert_eq!(point, 1.5),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn plane_recovered_exactly() {
        // Symmetric plane: survives the (S + S^T)/2 step unchanged.
        let mut s = Vec::new();
        let mut t = Vec::new();
        let mut z = Vec::new();
        for i in 0..12 {
            for j in 0..12 {
                let (a, b) = (i as f64, j as f64);
                s.push(a);
                t.push(b);
                z.push(1.5 + 0.3 * a + 0.3 * b);
            }
        }
        let grid: Vec<f64> = (0..6).map(|i| 2.0 * i as f64).collect();
        let surf = smooth_2d(&s, &t, &z, Kernel::Gaussian, (2.0, 2.0), &grid).unwrap();
        for (ju, &u) in grid.iter().enumerate() {
            for (jv, &v) in grid.iter().enumerate() {
                assert_relative_eq!(surf[(ju, jv)], 1.5 + 0.3 * u + 0.3 * v, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn general_plane_recovered_as_symmetrized_plane() {
        let mut s = Vec::new();
        let mut t = Vec::new();
        let mut z = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                let (a, b) = (i as f64 * 0.5, j as f64 * 0.5);
                s.push(a);
                t.push(b);
                z.push(2.0 + 0.8 * a - 0.2 * b);
            }
        }
        let grid: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let surf = smooth_2d(&s, &t, &z, Kernel::Gaussian, (1.0, 1.0), &grid).unwrap();
        for (ju, &u) in grid.iter().enumerate() {
            for (jv, &v) in grid.iter().enumerate() {
                // (square scatter) symmetrization averages the two slopes
                assert_relative_eq!(surf[(ju, jv)], 2.0 + 0.3 * (u + v), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn surface_is_exactly_symmetric() {
        let s = vec![0.0f64, 1.0, 2.0, 1.0, 0.0, 2.0, 0.5, 1.5];
        let t = vec![1.0f64, 0.0, 1.0, 2.0, 0.0, 2.0, 1.5, 0.5];
        let z = vec![0.3, 0.3, 0.9, 0.9, 0.1, 2.0, 0.4, 0.4];
        let grid = vec![0.0, 0.5, 1.0, 1.5, 2.0];
        let surf = smooth_2d(&s, &t, &z, Kernel::Gaussian, (0.8, 0.8), &grid).unwrap();
        for i in 0..grid.len() {
            for j in 0..grid.len() {
                assert_eq!(surf[(i, j)], surf[(j, i)]);
            }
        }
    }

    #[test]
    fn gcv_flat_ties_pick_largest() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.25).collect();
        let y: Vec<f64> = x.iter().map(|t| 3.0 * t - 2.0).collect();
        let w = equal_weights(50);
        let cands = gcv_candidates(0.3, 6.0, 10);
        let bw = select_bandwidth_gcv(&x, &y, &w, Kernel::Gaussian, &cands).unwrap();
        assert_relative_eq!(bw, 6.0, epsilon = 1e-9);
    }

    #[test]
    fn gcv_single_valid_candidate_wins() {
        let x = vec![0.0f64, 1.0, 2.0, 3.0, 4.0];
        let y = vec![0.0, 1.0, 0.0, 1.0, 0.0];
        let w = equal_weights(5);
        // First candidates are so small every local fit is degenerate.
        let cands = vec![1e-8, 1e-7, 1.2];
        let bw = select_bandwidth_gcv(&x, &y, &w, Kernel::Gaussian, &cands).unwrap();
        assert_eq!(bw, 1.2);
    }

    #[test]
    fn gcv_all_degenerate_errors() {
        let x = vec![0.0f64, 1.0, 2.0, 3.0];
        let y = vec![0.0, 1.0, 0.0, 1.0];
        let w = equal_weights(4);
        let err = select_bandwidth_gcv(&x, &y, &w, Kernel::Gaussian, &[1e-9, 1e-8]).unwrap_err();
        assert!(matches!(err, CoreError::NoValidBandwidth));
    }

    #[test]
    fn f32_instantiation_compiles_and_runs() {
        let x: Vec<f32> = (0..20).map(|i| i as f32 * 0.5).collect();
        let y: Vec<f32> = x.iter().map(|t| 2.0 * t + 1.0).collect();
        let w = vec![1.0f32; 20];
        let out = smooth_1d(&x, &y, &w, Kernel::Gaussian, 1.0f32, &[2.0f32]).unwrap();
        assert!((out[0] - 5.0).abs() < 1e-3);
    }
}
