//! Search for a dense subgraph by k-core peeling.

use serde::Serialize;

use super::{spectral_radius_robust, SpectralError};
use crate::graph::Graph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreBranch {
    /// `μ(H) > √((2k+1)|H|)`.
    SpectralDensity,
    /// `|H|² ≥ n`, `δ(H) ≥ k` and `μ(H) > (k−1)/2 + √(k|H| − k² + c + 1/2)`.
    LargeCore,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreWitness<T> {
    pub subgraph: Graph,
    /// Host ids of the vertices of `subgraph`.
    pub vertices: Vec<usize>,
    pub mu: T,
    pub threshold: T,
    pub branch: CoreBranch,
    /// Peeling rounds completed before the witness was found.
    pub round: usize,
}

/// Peels vertices of degree `< k` one round at a time and returns the first
/// intermediate subgraph meeting either condition.
pub fn dense_core_witness<T: Scalar>(
    g: &Graph,
    k: usize,
    c: T,
) -> Result<Option<CoreWitness<T>>, SpectralError> {
    if k < 2 {
        return Err(SpectralError::InvalidParameters(format!("k must be at least 2, got {k}")));
    }
    let n = g.n();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut round = 0;
    while !alive.is_empty() {
        let h = g.induced(&alive);
        let size = alive.len();
        let mu = spectral_radius_robust(&h, T::from_f64_lossy(super::DEFAULT_TOL))?.mu;
        let sz = T::from_usize_lossy(size);
        let kk = T::from_usize_lossy(k);

        let t1 = (T::from_usize_lossy(2 * k + 1) * sz).sqrt();
        if mu > t1 {
            return Ok(Some(witness(h, alive, mu, t1, CoreBranch::SpectralDensity, round)));
        }
        let radicand = kk * sz - kk * kk + c + T::half();
        if size * size >= n && h.min_degree() >= k && radicand >= T::zero() {
            let t2 = (kk - T::one()) * T::half() + radicand.sqrt();
            if mu > t2 {
                return Ok(Some(witness(h, alive, mu, t2, CoreBranch::LargeCore, round)));
            }
        }

        let next: Vec<usize> = (0..size).filter(|&i| h.degree(i) >= k).map(|i| alive[i]).collect();
        if next.len() == size {
            break;
        }
        alive = next;
        round += 1;
    }
    Ok(None)
}

fn witness<T>(
    subgraph: Graph,
    vertices: Vec<usize>,
    mu: T,
    threshold: T,
    branch: CoreBranch,
    round: usize,
) -> CoreWitness<T> {
    CoreWitness {
        subgraph,
        vertices,
        mu,
        threshold,
        branch,
        round,
    }
}
