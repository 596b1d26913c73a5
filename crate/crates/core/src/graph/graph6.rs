//! graph6 encoding (the format used by nauty's `geng`/`showg`).
//!
//! The vertex count `N(n)` is one byte `n + 63` for `n <= 62`, `~` followed
//! by three 6-bit groups for `n <= 258047`, and `~~` followed by six groups
//! beyond that. The upper triangle of the adjacency matrix is then written
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`), padded with zero
//! bits to a multiple of six, six bits per byte, each byte offset by 63.

use thiserror::Error;

use super::{check_order, Graph, GraphError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: string truncated, expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: {extra} unexpected trailing byte(s)")]
    TrailingBytes { offset: usize, extra: usize },
    #[error("byte {offset}: non-zero padding bits")]
    NonZeroPadding { offset: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + nbits.div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    if body.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset: base + i, byte: b });
        }
    }
    let group = |i: usize| -> Result<usize, Graph6Error> {
        body.get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or(Graph6Error::Truncated { offset: base + i, expected: 0 })
    };
    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.get(1) != Some(&126) {
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | group(i).map_err(|_| truncated(base, i, 4))?;
        }
        (n, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | group(i).map_err(|_| truncated(base, i, 8))?;
        }
        (n, 8)
    };
    check_order(n)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = pos + nbits.div_ceil(6);
    if body.len() < expected {
        return Err(truncated(base, body.len(), expected));
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingBytes {
            offset: base + expected,
            extra: body.len() - expected,
        });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit == nbits {
                break 'outer;
            }
            let byte = (body[pos + bit / 6] - 63) as usize;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            bit += 1;
        }
    }
    pos += nbits / 6;
    if nbits % 6 != 0 {
        let last = (body[pos] - 63) as usize;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding { offset: base + pos });
        }
    }
    Ok(g)
}

fn truncated(base: usize, offset: usize, expected: usize) -> Graph6Error {
    Graph6Error::Truncated {
        offset: base + offset,
        expected: base + expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn known_encodings() {
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
        assert_eq!(encode_graph6(&Graph::empty(1)), "@");
        assert_eq!(encode_graph6(&Graph::complete(2)), "A_");
        assert_eq!(encode_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(encode_graph6(&Graph::complete(4)), "C~");
        // Star centred at vertex 4 on five vertices.
        let star = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&star), "D?{");
        assert_eq!(encode_graph6(&FamilySpec::Path(4).build().unwrap()), "Ch");
    }

    #[test]
    fn round_trip_fixture() {
        let g = decode_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(encode_graph6(&g), "D?{");
        assert_eq!(decode_graph6(">>graph6<<D?{\n").unwrap(), g);
    }

    #[test]
    fn long_form_size_prefix() {
        let g = FamilySpec::CompleteSplitPlus { n: 70, k: 2 }.build().unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@E"));
        assert_eq!(s.len(), 4 + (70 * 69 / 2usize).div_ceil(6));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert_eq!(decode_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(decode_graph6("D?"), Err(Graph6Error::Truncated { offset: 2, .. })));
        assert!(matches!(decode_graph6("D?{?"), Err(Graph6Error::TrailingBytes { offset: 3, .. })));
        assert!(matches!(
            decode_graph6("D? "),
            Err(Graph6Error::BadByte { offset: 2, byte: b' ' })
        ));
        // n = 2 has one data bit; the five padding bits must be zero.
        assert!(matches!(decode_graph6("A`"), Err(Graph6Error::NonZeroPadding { offset: 1 })));
        assert!(matches!(decode_graph6("~?"), Err(Graph6Error::Truncated { .. })));
    }
}
