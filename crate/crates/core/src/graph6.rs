//! graph6 serialization (standard format, restricted to `n <= 64`).
//!
//! Bits are the upper triangle in column order: `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six per byte, offset by 63, zero padded.

use crate::graph::{bit, Graph, GraphError, MAX_VERTICES};

const OPTIONAL_HEADER: &str = ">>graph6<<";

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let first = *bytes.first().ok_or_else(|| err("empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(format!("malformed header byte {first:#x}")));
    }
    let (n, body) = if first < 126 {
        ((first - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(err("truncated extended header"));
        }
        if bytes[1] == 126 {
            return Err(err("8-byte header not supported"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(err(format!("malformed header byte {b:#x}")));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(err(format!(
            "truncated bit stream: expected {need} bytes, found {}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(err(format!(
            "trailing data: expected {need} bytes, found {}",
            body.len()
        )));
    }
    let mut adj = vec![0u64; n];
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            let b = body[idx / 6];
            if !(63..=126).contains(&b) {
                return Err(err(format!("invalid data byte {b:#x}")));
            }
            if ((b - 63) >> (5 - idx % 6)) & 1 == 1 {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
            idx += 1;
        }
    }
    if let Some(&last) = body.last() {
        if !(63..=126).contains(&last) {
            return Err(err(format!("invalid data byte {last:#x}")));
        }
        let pad = need * 6 - nbits;
        if (last - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}
