//! Closed forms for `μ(S_{n,k})` and upper bounds on `μ(G)` in terms of
//! order, size and minimum degree. Radicands are assembled in exact integer
//! arithmetic (scaled by 4) before the single square root.

use super::SpectralError;
use crate::scalar::Scalar;

fn check_split(n: usize, k: usize, min_gap: usize) -> Result<(), SpectralError> {
    if k < 1 || k + min_gap > n {
        return Err(SpectralError::InvalidParameters(format!(
            "need 1 <= k <= n-{min_gap}, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `μ(S_{n,k}) = (k−1)/2 + √(kn − (3k² + 2k − 1)/4)`, the largest root of
/// `x² − (k−1)x − k(n−k)`.
pub fn mu_s_closed<T: Scalar>(n: usize, k: usize) -> Result<T, SpectralError> {
    check_split(n, k, 1)?;
    let (n, k) = (n as i128, k as i128);
    let radicand4 = 4 * k * n - 3 * k * k - 2 * k + 1;
    if radicand4 <= 0 {
        return Err(SpectralError::InvalidParameters(format!(
            "non-positive radicand for n={n}, k={k}"
        )));
    }
    let r = T::from_i64_lossy(radicand4 as i64).sqrt();
    Ok((T::from_i64_lossy((k - 1) as i64) + r) * T::half())
}

/// Open interval `(lo, hi)` containing `μ(S⁺_{n,k})`, with
/// `lo = μ(S_{n,k})` and `hi = lo + 1/(n − k − 2√((n−k)/k))`.
pub fn mu_s_plus_bounds<T: Scalar>(n: usize, k: usize) -> Result<(T, T), SpectralError> {
    check_split(n, k, 2)?;
    let lo = mu_s_closed::<T>(n, k)?;
    let m = T::from_usize_lossy(n - k);
    let kk = T::from_usize_lossy(k);
    let two = T::one() + T::one();
    let denom = m - two * (m / kk).sqrt();
    if !(denom > T::zero()) {
        return Err(SpectralError::BoundInapplicable(format!(
            "n - k - 2*sqrt((n-k)/k) = {denom} is not positive for n={n}, k={k}"
        )));
    }
    Ok((lo, lo + T::one() / denom))
}

/// `(δ−1)/2 + √(2m − δn + (δ+1)²/4)` for a graph with `n` vertices, `m` edges
/// and minimum degree `δ`.
pub fn bound_min_degree<T: Scalar>(n: usize, m: usize, delta: usize) -> Result<T, SpectralError> {
    if n == 0 || delta > n - 1 || m > n * (n - 1) / 2 || delta * n > 2 * m {
        return Err(SpectralError::InvalidParameters(format!(
            "inconsistent statistics n={n}, m={m}, delta={delta}"
        )));
    }
    let (n, m, d) = (n as i128, m as i128, delta as i128);
    let radicand4 = 8 * m - 4 * d * n + (d + 1) * (d + 1);
    if radicand4 < 0 {
        return Err(SpectralError::BoundInapplicable(format!(
            "negative radicand for n={n}, m={m}, delta={d}"
        )));
    }
    let r = T::from_i64_lossy(radicand4 as i64).sqrt();
    Ok((T::from_i64_lossy((d - 1) as i64) + r) * T::half())
}

/// `−1/2 + √(2m + 1/4)` for a graph with `m` edges.
pub fn bound_edges<T: Scalar>(m: usize) -> T {
    let r = T::from_usize_lossy(8 * m + 1).sqrt();
    (r - T::one()) * T::half()
}
