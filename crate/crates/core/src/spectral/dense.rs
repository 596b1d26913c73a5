//! Cyclic Jacobi eigensolver for small dense symmetric matrices. Used as an
//! independent second opinion next to power iteration.

use super::{SpectralError, SpectralResult};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Largest graph order accepted by the dense solver.
pub const DENSE_CAP: usize = 64;

const MAX_SWEEPS: usize = 100;

/// All eigenvalues (ascending) and the matching orthonormal eigenvectors
/// (`vectors[i]` belongs to `values[i]`) of a symmetric matrix.
pub fn symmetric_eigenvalues<T: Scalar>(matrix: &[Vec<T>]) -> (Vec<T>, Vec<Vec<T>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let two = T::one() + T::one();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + a[i][j] * a[i][j]);
        if off <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite eigenvalues"));
    let values = idx.iter().map(|&i| a[i][i]).collect();
    let vectors = idx.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (values, vectors)
}

/// Spectral radius through a full dense eigendecomposition.
pub fn dense_spectral_radius<T: Scalar>(g: &Graph) -> Result<SpectralResult<T>, SpectralError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if n > DENSE_CAP {
        return Err(SpectralError::TooLargeForDense { n, cap: DENSE_CAP });
    }
    let matrix: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if g.has_edge(i, j) { T::one() } else { T::zero() }).collect())
        .collect();
    let (values, vectors) = symmetric_eigenvalues(&matrix);
    let mu = values[n - 1];
    let x = &vectors[n - 1];
    let scale = x.iter().fold(T::zero(), |s, &xi| s.max(xi.abs()));
    let residual = (0..n).fold(T::zero(), |r, i| {
        let ax = g.neighbors(i).fold(T::zero(), |s, j| s + x[j]);
        r.max((ax - mu * x[i]).abs() / scale)
    });
    // Component of the Perron vector: the one carrying the largest entry.
    let peak = (0..n)
        .max_by(|&i, &j| x[i].abs().partial_cmp(&x[j].abs()).expect("finite"))
        .expect("n > 0");
    let component_id = g
        .components()
        .iter()
        .position(|c| c.contains(&peak))
        .expect("every vertex lies in a component");
    Ok(SpectralResult {
        mu,
        residual,
        iterations: 0,
        component_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn path_spectrum_matches_cosine_formula() {
        let p = FamilySpec::Path(6).build().unwrap();
        let m: Vec<Vec<f64>> = (0..6)
            .map(|i| (0..6).map(|j| if p.has_edge(i, j) { 1.0 } else { 0.0 }).collect())
            .collect();
        let (values, _) = symmetric_eigenvalues(&m);
        for (j, &val) in values.iter().enumerate() {
            let expect = 2.0 * (std::f64::consts::PI * (6 - j) as f64 / 7.0).cos();
            assert!((val - expect).abs() < 1e-12, "{val} vs {expect}");
        }
    }

    #[test]
    fn dense_agrees_on_small_families() {
        let g = FamilySpec::CompleteSplit { n: 8, k: 2 }.build().unwrap();
        let r: SpectralResult<f64> = dense_spectral_radius(&g).unwrap();
        assert!((r.mu - 4.0).abs() < 1e-12);
        assert!(r.residual < 1e-10);
        assert!(matches!(
            dense_spectral_radius::<f64>(&Graph::empty(65)),
            Err(SpectralError::TooLargeForDense { .. })
        ));
    }
}
