//! Plain edge-list text: a header line `n <count>` followed by one `u v`
//! pair per line. Blank lines and `#` comments are ignored on input.

use super::{Graph, GraphError};

pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn decode_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let malformed = |line: usize, reason: &str| GraphError::MalformedEdgeList {
        line,
        reason: reason.to_string(),
    };
    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing 'n <count>' header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse::<usize>().map_err(|_| malformed(hline, "bad vertex count"))?,
        _ => return Err(malformed(hline, "expected 'n <count>' header")),
    };
    let mut edges = Vec::new();
    for (line, l) in lines {
        let parts: Vec<_> = l.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(malformed(line, "expected two vertex ids"));
        };
        let u = u.parse().map_err(|_| malformed(line, "bad vertex id"))?;
        let v = v.parse().map_err(|_| malformed(line, "bad vertex id"))?;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn round_trip_and_format() {
        let g = FamilySpec::Path(3).build().unwrap();
        let text = encode_edge_list(&g);
        assert_eq!(text, "n 3\n0 1\n1 2\n");
        assert_eq!(decode_edge_list(&text).unwrap(), g);
        let isolated = decode_edge_list("# comment\nn 4\n\n2 3 # tail\n").unwrap();
        assert_eq!((isolated.n(), isolated.edge_count()), (4, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(decode_edge_list(""), Err(GraphError::MalformedEdgeList { .. })));
        assert!(matches!(decode_edge_list("3\n0 1"), Err(GraphError::MalformedEdgeList { line: 1, .. })));
        assert!(matches!(
            decode_edge_list("n 3\n0 1 2\n"),
            Err(GraphError::MalformedEdgeList { line: 2, .. })
        ));
        assert_eq!(decode_edge_list("n 3\n0 0\n"), Err(GraphError::SelfLoop(0)));
        assert_eq!(decode_edge_list("n 3\n0 1\n1 0\n"), Err(GraphError::DuplicateEdge(0, 1)));
    }
}
