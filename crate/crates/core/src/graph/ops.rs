use super::{check_order, Graph, GraphError};

/// `g ∨ h`: disjoint union plus every edge between the two parts. Vertices
/// of `h` are shifted by `g.n()`.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let mut out = disjoint_union(g, h)?;
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.insert_edge(u, g.n() + v);
        }
    }
    Ok(out)
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n() + h.n();
    check_order(n)?;
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.insert_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.insert_edge(g.n() + u, g.n() + v);
    }
    Ok(out)
}

/// `mG`, the disjoint union of `m` copies of `g`.
pub fn m_copies(g: &Graph, m: usize) -> Result<Graph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidFamily("m_copies needs m >= 1".into()));
    }
    let n = g.n().checked_mul(m).ok_or(GraphError::TooManyVertices {
        requested: usize::MAX,
        max: super::max_vertices(),
    })?;
    check_order(n)?;
    let mut out = Graph::empty(n);
    for c in 0..m {
        let off = c * g.n();
        for (u, v) in g.edges() {
            out.insert_edge(off + u, off + v);
        }
    }
    Ok(out)
}

/// Distance shells around `u`: element `d-1` holds the vertices at distance
/// exactly `d`. Vertices in other components appear in no shell.
pub fn neighborhood_shells(g: &Graph, u: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    g.check_vertex(u)?;
    let mut shells: Vec<Vec<usize>> = Vec::new();
    for (v, d) in g.distances_from(u).into_iter().enumerate() {
        match d {
            Some(d) if d > 0 => {
                if shells.len() < d {
                    shells.resize(d, Vec::new());
                }
                shells[d - 1].push(v);
            }
            _ => {}
        }
    }
    Ok(shells)
}
