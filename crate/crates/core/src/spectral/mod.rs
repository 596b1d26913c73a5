//! Spectral radius of the adjacency matrix, closed forms and upper bounds
//! for it, exact quotient certificates, and a dense-core witness search.
//!
//! The eigensolver is shifted power iteration: each connected component is
//! iterated with `A + I` from the all-ones vector, and the Rayleigh quotient
//! of the current iterate is reported together with the achieved residual
//! `‖Av − μv‖∞` (with `‖v‖∞ = 1`). The shift keeps the Perron root strictly
//! dominant in modulus on bipartite components, where `−μ` is also an
//! eigenvalue.

mod bounds;
mod certificate;
mod core_witness;
mod dense;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;

pub use bounds::{bound_edges, bound_min_degree, mu_s_closed, mu_s_plus_bounds};
pub use certificate::{
    lemma1_certificate, quotient_column_sums, walk_sum_b_u, CertificateVerdict, QuotientCertificate,
    WalkSumDecomposition,
};
pub use core_witness::{dense_core_witness, CoreBranch, CoreWitness};
pub use dense::{dense_spectral_radius, symmetric_eigenvalues, DENSE_CAP};

/// Default residual tolerance for [`spectral_radius`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration budget multiplier: at most `100 · n` iterations per component.
pub const ITERATIONS_PER_VERTEX: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("spectral radius of the empty graph is undefined")]
    EmptyGraph,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "power iteration did not converge after {iterations} iterations \
         (best residual {best_residual:e}, estimate {mu_estimate})"
    )]
    NonConvergence {
        iterations: usize,
        best_residual: f64,
        mu_estimate: f64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("bound not applicable: {0}")]
    BoundInapplicable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("dense solver limited to {cap} vertices, got {n}")]
    TooLargeForDense { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralResult<T> {
    pub mu: T,
    /// `‖Av − μv‖∞` for the reported Perron vector, normalised to `‖v‖∞ = 1`.
    pub residual: T,
    pub iterations: usize,
    /// Index (in [`Graph::components`] order) of the component attaining `mu`.
    pub component_id: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions<T> {
    pub tol: T,
    /// Per-component iteration cap; `None` means `100 · n`.
    pub max_iterations: Option<usize>,
}

impl<T: Scalar> PowerOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        PowerOptions {
            tol,
            max_iterations: None,
        }
    }
}

impl<T: Scalar> Default for PowerOptions<T> {
    fn default() -> Self {
        Self::with_tol(T::from_f64_lossy(DEFAULT_TOL))
    }
}

/// Largest adjacency eigenvalue with the default iteration budget.
pub fn spectral_radius<T: Scalar>(g: &Graph, tol: T) -> Result<SpectralResult<T>, SpectralError> {
    spectral_radius_with(g, PowerOptions::with_tol(tol))
}

pub fn spectral_radius_with<T: Scalar>(
    g: &Graph,
    opts: PowerOptions<T>,
) -> Result<SpectralResult<T>, SpectralError> {
    if g.n() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if !(opts.tol > T::zero()) {
        return Err(SpectralError::InvalidTolerance(opts.tol.to_f64_lossy()));
    }
    let max_iter = opts.max_iterations.unwrap_or(ITERATIONS_PER_VERTEX * g.n());
    let mut best: Option<SpectralResult<T>> = None;
    for (cid, comp) in g.components().iter().enumerate() {
        let r = component_radius(g, comp, opts.tol, max_iter)?;
        let r = SpectralResult { component_id: cid, ..r };
        if best.is_none_or(|b| r.mu > b.mu) {
            best = Some(r);
        }
    }
    Ok(best.expect("non-empty graph has a component"))
}

/// Power iteration, falling back to the dense solver (small graphs) or to a
/// twenty-fold iteration budget when the default budget is exhausted.
pub fn spectral_radius_robust<T: Scalar>(g: &Graph, tol: T) -> Result<SpectralResult<T>, SpectralError> {
    match spectral_radius(g, tol) {
        Err(SpectralError::NonConvergence { .. }) if g.n() <= DENSE_CAP => {
            let r = dense_spectral_radius(g)?;
            Ok(r)
        }
        Err(SpectralError::NonConvergence { .. }) => spectral_radius_with(
            g,
            PowerOptions {
                tol,
                max_iterations: Some(20 * ITERATIONS_PER_VERTEX * g.n()),
            },
        ),
        other => other,
    }
}

fn component_radius<T: Scalar>(
    g: &Graph,
    comp: &[usize],
    tol: T,
    max_iter: usize,
) -> Result<SpectralResult<T>, SpectralError> {
    let m = comp.len();
    if m == 1 {
        return Ok(SpectralResult {
            mu: T::zero(),
            residual: T::zero(),
            iterations: 0,
            component_id: 0,
        });
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| g.neighbors(v).map(|w| local[w]).collect())
        .collect();

    let mut v = vec![T::one(); m];
    let mut av = vec![T::zero(); m];
    let mut best_res = T::infinity();
    let mut best_mu = T::zero();
    for it in 1..=max_iter {
        for (i, nb) in adj.iter().enumerate() {
            av[i] = nb.iter().fold(T::zero(), |s, &j| s + v[j]);
        }
        let (mut num, mut den) = (T::zero(), T::zero());
        for i in 0..m {
            num = num + v[i] * av[i];
            den = den + v[i] * v[i];
        }
        let mu = num / den;
        let res = (0..m).fold(T::zero(), |r, i| r.max((av[i] - mu * v[i]).abs()));
        if res < best_res {
            best_res = res;
            best_mu = mu;
        }
        if res <= tol {
            return Ok(SpectralResult {
                mu,
                residual: res,
                iterations: it,
                component_id: 0,
            });
        }
        // v ← (A + I) v, rescaled to unit max-norm.
        let mut scale = T::zero();
        for i in 0..m {
            v[i] = av[i] + v[i];
            scale = scale.max(v[i].abs());
        }
        for x in v.iter_mut() {
            *x = *x / scale;
        }
    }
    Err(SpectralError::NonConvergence {
        iterations: max_iter,
        best_residual: best_res.to_f64_lossy(),
        mu_estimate: best_mu.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn complete_graph_and_star() {
        let r = spectral_radius(&Graph::complete(4), 1e-10).unwrap();
        assert!((r.mu - 3.0f64).abs() <= 1e-10);
        let star = FamilySpec::Star(8).build().unwrap();
        let r = spectral_radius(&star, 1e-10f64).unwrap();
        assert!((r.mu - 8f64.sqrt()).abs() <= 1e-10, "{r:?}");
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn complete_split_five_two_is_three() {
        let g = FamilySpec::CompleteSplit { n: 5, k: 2 }.build().unwrap();
        let r: SpectralResult<f64> = spectral_radius(&g, 1e-10).unwrap();
        assert!((r.mu - 3.0).abs() <= 1e-8);
    }

    #[test]
    fn maximum_over_components() {
        let g = crate::graph::disjoint_union(&Graph::complete(3), &Graph::complete(5)).unwrap();
        let r: SpectralResult<f64> = spectral_radius(&g, 1e-10).unwrap();
        assert!((r.mu - 4.0).abs() < 1e-9);
        assert_eq!(r.component_id, 1);
        let r: SpectralResult<f64> = spectral_radius(&Graph::empty(3), 1e-10).unwrap();
        assert_eq!(r.mu, 0.0);
    }

    #[test]
    fn single_precision_instance() {
        let g = FamilySpec::CompleteSplit { n: 8, k: 2 }.build().unwrap();
        let r: SpectralResult<f32> = spectral_radius(&g, 1e-4).unwrap();
        assert!((r.mu - 4.0).abs() < 1e-3);
    }

    #[test]
    fn error_paths() {
        assert_eq!(spectral_radius(&Graph::empty(0), 1e-10f64), Err(SpectralError::EmptyGraph));
        assert!(matches!(
            spectral_radius(&Graph::complete(2), 0.0f64),
            Err(SpectralError::InvalidTolerance(_))
        ));
        let p = FamilySpec::Path(40).build().unwrap();
        let opts = PowerOptions {
            tol: 1e-12f64,
            max_iterations: Some(3),
        };
        assert!(matches!(
            spectral_radius_with(&p, opts),
            Err(SpectralError::NonConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let g = FamilySpec::CompleteSplitPlus { n: 30, k: 3 }.build().unwrap();
        let a: SpectralResult<f64> = spectral_radius(&g, 1e-10).unwrap();
        let b: SpectralResult<f64> = spectral_radius(&g, 1e-10).unwrap();
        assert_eq!(a, b);
    }
}
