//! The graph6 text format: one undirected graph per line.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable with the 4-byte size prefix.
pub const MAX_ORDER: usize = 258_047;

const HEADER: &str = ">>graph6<<";

fn bad(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let first = *bytes.first().ok_or_else(|| bad("empty line"))?;
    if !(63..=126).contains(&first) {
        return Err(bad(format!("invalid size byte {first:#x}")));
    }
    if first < 126 {
        return Ok(((first - 63) as usize, &bytes[1..]));
    }
    if bytes.len() < 4 {
        return Err(bad("truncated size prefix"));
    }
    if bytes[1] == 126 {
        return Err(bad("orders beyond 258047 are not supported"));
    }
    let mut n = 0usize;
    for &b in &bytes[1..4] {
        if !(63..=126).contains(&b) {
            return Err(bad(format!("invalid size byte {b:#x}")));
        }
        n = (n << 6) | (b - 63) as usize;
    }
    Ok((n, &bytes[4..]))
}

/// Parses one graph6 line. A leading `>>graph6<<` header is tolerated.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let (n, body) = decode_size(line.as_bytes())?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(bad(format!(
            "expected {need} payload bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad(format!("invalid payload byte {byte:#x}")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(format!("invalid payload byte {b:#x}")));
    }
    Graph::new(n, &edges)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_ORDER, "graph too large for graph6");
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    String::from_utf8(out).unwrap()
}

/// Parses every non-empty line of a graph6 corpus.
pub fn parse_corpus(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && *l != HEADER)
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, petersen};

    #[test]
    fn known_strings() {
        assert_eq!(parse_graph6("C~").unwrap(), complete(4).unwrap());
        let g = parse_graph6("D??").unwrap();
        assert_eq!((g.n(), g.num_edges()), (5, 0));
        assert_eq!(emit_graph6(&complete(4).unwrap()), "C~");
        // Petersen in the usual labeling is "IheA@GUAo".
        assert_eq!(parse_graph6("IheA@GUAo").unwrap().regular_degree(), Some(3));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), complete(4).unwrap());
    }

    #[test]
    fn malformed() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("\x20").is_err());
        assert!(parse_graph6("~?").is_err());
    }

    #[test]
    fn large_order_prefix() {
        let g = crate::graph::cycle(70).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn petersen_round_trip() {
        let p = petersen();
        assert_eq!(parse_graph6(&emit_graph6(&p)).unwrap(), p);
    }
}
