//! The graph6 text format: a size header followed by the upper triangle of
//! the adjacency matrix, column by column, six bits per printable byte.

use super::{Graph, GraphError};

const OFFSET: u8 = 63;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LONG_MAX: usize = (1 << 36) - 1;

fn check_byte(b: u8, at: usize) -> Result<u8, GraphError> {
    if (OFFSET..=126).contains(&b) {
        Ok(b - OFFSET)
    } else {
        Err(GraphError::MalformedHeader(format!(
            "byte {b:#04x} at offset {at} is outside the graph6 range"
        )))
    }
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let first = *bytes
        .first()
        .ok_or_else(|| GraphError::MalformedHeader("empty input".into()))?;
    if first < 126 {
        return Ok((check_byte(first, 0)? as usize, 1));
    }
    let (start, count) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    if bytes.len() < start + count {
        return Err(GraphError::MalformedHeader("truncated size header".into()));
    }
    let mut n = 0usize;
    for (i, &b) in bytes[start..start + count].iter().enumerate() {
        n = (n << 6) | check_byte(b, start + i)? as usize;
    }
    Ok((n, start + count))
}

/// Parses one graph6 record. A leading `>>graph6<<` marker and trailing line
/// terminators are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, header) = read_size(bytes)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < needed {
        return Err(GraphError::TruncatedBitVector {
            expected: needed,
            found: body.len(),
        });
    }
    if body.len() > needed {
        return Err(GraphError::TrailingGarbage(format!(
            "{} bytes after the bit vector",
            body.len() - needed
        )));
    }
    let mut g = Graph::new(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = check_byte(body[bit / 6], header + bit / 6)?;
            if byte & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if let Some(&last) = body.last() {
        let used = pairs - 6 * (needed - 1);
        let pad_mask = (1u8 << (6 - used)) - 1;
        if check_byte(last, bytes.len() - 1)? & pad_mask != 0 {
            return Err(GraphError::TrailingGarbage("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= SHORT_MAX {
        out.push(n as u8 + OFFSET);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    } else if n <= LONG_MAX {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    } else {
        return Err(GraphError::TooLarge(n));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
