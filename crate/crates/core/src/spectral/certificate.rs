//! Exact quotient certificates.
//!
//! For `B = A² − aA − bI` the column sum at `j` is
//! `Σ_{x∼j} d(x) − a·d(j) − b`, an integer. If every column sum of a
//! connected graph is `≤ 0` then `μ ≤ μ'`, the largest root of
//! `x² − ax − b`, with equality exactly when all of them vanish.

use serde::Serialize;

use super::SpectralError;
use crate::graph::{neighborhood_shells, Graph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    ProvesUpperBound,
    ProvesEquality,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientCertificate<T> {
    pub a: u64,
    pub b: u64,
    pub column_sums: Vec<i64>,
    pub mu_prime: T,
    pub verdict: CertificateVerdict,
}

/// Column sums of `A² − aA − bI`, no hypotheses checked.
pub fn quotient_column_sums(g: &Graph, a: i64, b: i64) -> Vec<i64> {
    let deg: Vec<i64> = g.degrees().into_iter().map(|d| d as i64).collect();
    (0..g.n())
        .map(|j| g.neighbors(j).map(|x| deg[x]).sum::<i64>() - a * deg[j] - b)
        .collect()
}

/// Certificate for `μ(g) ≤ μ'` with `μ'` the largest root of `x² − ax − b`.
///
/// `a = 0` is accepted so that the star case `S_{n,1}` (`a = k − 1 = 0`) is
/// covered; `b` must be positive.
pub fn lemma1_certificate<T: Scalar>(
    g: &Graph,
    a: u64,
    b: u64,
) -> Result<QuotientCertificate<T>, SpectralError> {
    if b == 0 {
        return Err(SpectralError::InvalidParameters("b must be a positive integer".into()));
    }
    if !g.is_connected() {
        return Err(SpectralError::HypothesisViolation(
            "certificate requires a connected graph (irreducible adjacency matrix)".into(),
        ));
    }
    let column_sums = quotient_column_sums(g, a as i64, b as i64);
    let verdict = if column_sums.iter().all(|&s| s == 0) {
        CertificateVerdict::ProvesEquality
    } else if column_sums.iter().all(|&s| s <= 0) {
        CertificateVerdict::ProvesUpperBound
    } else {
        CertificateVerdict::Inconclusive
    };
    let af = T::from_f64_lossy(a as f64);
    let disc = af * af + T::from_f64_lossy(4.0 * b as f64);
    Ok(QuotientCertificate {
        a,
        b,
        column_sums,
        mu_prime: (af + disc.sqrt()) * T::half(),
        verdict,
    })
}

/// The walk-sum decomposition around one vertex `u`.
///
/// `l_u` has vertex set `N¹(u) ∪ N²(u)` (first-shell vertices first, in
/// `l_u_vertices` order) and keeps the edges inside `N¹(u)` plus the edges
/// between the two shells.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSumDecomposition {
    pub u: usize,
    pub first_shell: Vec<usize>,
    pub second_shell: Vec<usize>,
    pub l_u: Graph,
    /// Host ids of the vertices of `l_u`.
    pub l_u_vertices: Vec<usize>,
    /// `(x, d_{L_u}(x))` for every `x` in the first shell.
    pub degree_in_l: Vec<(usize, usize)>,
    pub edges_in_first_shell: usize,
    pub edges_between_shells: usize,
    /// `Σ_{x∈N¹(u)} d_{L_u}(x) − (k−2)·d(u) − k(n−k)`.
    pub b_u: i64,
}

pub fn walk_sum_b_u(g: &Graph, u: usize, k: usize) -> Result<WalkSumDecomposition, SpectralError> {
    if u >= g.n() {
        return Err(SpectralError::VertexOutOfRange { vertex: u, n: g.n() });
    }
    if k < 1 {
        return Err(SpectralError::InvalidParameters("k must be at least 1".into()));
    }
    let shells = neighborhood_shells(g, u).expect("vertex checked");
    let first = shells.first().cloned().unwrap_or_default();
    let second = shells.get(1).cloned().unwrap_or_default();
    let mut vertices = first.clone();
    vertices.extend(&second);
    let f = first.len();

    let mut l_u = Graph::empty(vertices.len());
    let (mut inside, mut between) = (0, 0);
    for i in 0..f {
        for j in i + 1..vertices.len() {
            if g.has_edge(vertices[i], vertices[j]) {
                l_u.insert_edge(i, j);
                if j < f {
                    inside += 1;
                } else {
                    between += 1;
                }
            }
        }
    }
    let degree_in_l: Vec<(usize, usize)> = (0..f).map(|i| (vertices[i], l_u.degree(i))).collect();
    let sum: i64 = degree_in_l.iter().map(|&(_, d)| d as i64).sum();
    let (n, k, du) = (g.n() as i64, k as i64, g.degree(u) as i64);
    let b_u = sum - (k - 2) * du - k * (n - k);
    Ok(WalkSumDecomposition {
        u,
        first_shell: first,
        second_shell: second,
        l_u,
        l_u_vertices: vertices,
        degree_in_l,
        edges_in_first_shell: inside,
        edges_between_shells: between,
        b_u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn split(n: usize, k: usize) -> Graph {
        FamilySpec::CompleteSplit { n, k }.build().unwrap()
    }

    #[test]
    fn equality_certificate_for_complete_split() {
        let c: QuotientCertificate<f64> = lemma1_certificate(&split(5, 2), 1, 6).unwrap();
        assert!(c.column_sums.iter().all(|&s| s == 0));
        assert_eq!(c.verdict, CertificateVerdict::ProvesEquality);
        assert!((c.mu_prime - 3.0).abs() < 1e-12);

        let c: QuotientCertificate<f64> = lemma1_certificate(&split(8, 2), 1, 12).unwrap();
        assert_eq!(c.column_sums, vec![0; 8]);
        assert!((c.mu_prime - 4.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_is_inconclusive() {
        // Column sums of A² − A − I on K3: (2 + 2) − 2 − 1 = 1 for every column.
        let c: QuotientCertificate<f64> = lemma1_certificate(&Graph::complete(3), 1, 1).unwrap();
        assert_eq!(c.column_sums, vec![1, 1, 1]);
        assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
    }

    #[test]
    fn strict_upper_bound_verdict() {
        // P3 against x² − x − 2 (root 2): columns 2−1−2, 2−2−2, 2−1−2.
        let p3 = FamilySpec::Path(3).build().unwrap();
        let c: QuotientCertificate<f64> = lemma1_certificate(&p3, 1, 2).unwrap();
        assert_eq!(c.column_sums, vec![-1, -2, -1]);
        assert_eq!(c.verdict, CertificateVerdict::ProvesUpperBound);
    }

    #[test]
    fn hypothesis_and_parameter_errors() {
        let g = Graph::empty(2);
        assert!(matches!(
            lemma1_certificate::<f64>(&g, 1, 1),
            Err(SpectralError::HypothesisViolation(_))
        ));
        assert!(matches!(
            lemma1_certificate::<f64>(&Graph::complete(2), 1, 0),
            Err(SpectralError::InvalidParameters(_))
        ));
    }

    #[test]
    fn walk_sum_on_complete_split() {
        let s = split(5, 2);
        let w = walk_sum_b_u(&s, 0, 2).unwrap();
        assert_eq!(w.b_u, 0);
        assert_eq!(w.first_shell.len(), 4);
        assert!(w.second_shell.is_empty());
        assert_eq!(w.degree_in_l.iter().map(|d| d.1).sum::<usize>(), 6);

        let w = walk_sum_b_u(&s, 3, 2).unwrap();
        assert_eq!(w.first_shell, vec![0, 1]);
        assert_eq!(w.second_shell, vec![2, 4]);
        assert_eq!(w.degree_in_l, vec![(0, 3), (1, 3)]);
        assert_eq!(w.b_u, 0);
        assert_eq!(w.l_u.edge_count(), w.edges_in_first_shell + w.edges_between_shells);
        assert!(walk_sum_b_u(&s, 5, 2).is_err());
    }
}
