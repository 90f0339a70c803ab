//! Bit-exact graph6 codec.
//!
//! One graph per line: a header encoding the order (byte `n+63` for
//! `n <= 62`, or `'~'` followed by three bytes carrying an 18-bit `n`),
//! then `ceil(n(n-1)/2 / 6)` payload bytes. Payload bits are the upper
//! adjacency triangle in column-major order `(0,1), (0,2), (1,2), (0,3),
//! ...`, packed six per byte (most significant first) with value `+63`,
//! zero-padded at the end.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} outside the printable range 63..=126")]
    ByteOutOfRange { pos: usize, byte: u8 },
    #[error("truncated long-form order header")]
    TruncatedHeader,
    #[error("graph6 order {0} exceeds the {MAX_VERTICES}-vertex cap")]
    OrderTooLarge(usize),
    #[error("graph6 encodes the order-0 graph, which is not representable")]
    ZeroOrder,
    #[error("payload has {got} bytes, expected {expected}")]
    PayloadLength { expected: usize, got: usize },
    #[error("padding bits after the adjacency triangle are not zero")]
    NonZeroPadding,
}

const OFFSET: u8 = 63;

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decode a single graph6 line.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::ByteOutOfRange { pos, byte: b });
        }
    }

    let (n, payload) = if bytes[0] == b'~' {
        // long form: '~' then three 6-bit groups, big-endian
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader);
        }
        if bytes[1] == b'~' {
            // 8-byte form encodes n > 258047, far beyond the cap
            let n_lower_bound = 258048;
            return Err(Graph6Error::OrderTooLarge(n_lower_bound));
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };

    if n == 0 {
        return Err(Graph6Error::ZeroOrder);
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let expected = payload_len(n);
    if payload.len() != expected {
        return Err(Graph6Error::PayloadLength {
            expected,
            got: payload.len(),
        });
    }

    let mut g = Graph::empty(n).expect("order already validated");
    let mut bit_index = 0usize;
    let mut edges = Vec::new();
    for col in 1..n {
        for row in 0..col {
            let byte = payload[bit_index / 6] - OFFSET;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                edges.push((row, col));
            }
            bit_index += 1;
        }
    }
    // trailing padding must be zero
    let total_bits = payload.len() * 6;
    for k in bit_index..total_bits {
        let byte = payload[k / 6] - OFFSET;
        if (byte >> (5 - k % 6)) & 1 != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    g = g.add_edges(&edges).expect("triangle indices are in range");
    Ok(g)
}

/// Encode a graph as its canonical graph6 line for the given labeling.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + OFFSET);
        out.push(((n >> 6) & 0x3f) as u8 + OFFSET);
        out.push((n & 0x3f) as u8 + OFFSET);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | g.has_edge(row, col) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

impl Graph {
    pub fn from_graph6(text: &str) -> Result<Self, Graph6Error> {
        parse_graph6(text)
    }

    pub fn to_graph6(&self) -> String {
        emit_graph6(self)
    }
}
