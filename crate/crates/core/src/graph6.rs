//! graph6 short form (n ≤ 62).
//!
//! Header byte is `63 + n`. The upper triangle is read column by column,
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed into 6-bit groups
//! (most significant bit first, zero padded) and offset by 63.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed header byte {0:#04x}")]
    MalformedHeader(u8),
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("payload too long: expected {expected} bytes, found {found}")]
    TrailingBytes { expected: usize, found: usize },
}

/// Graphs serialize as their graph6 string.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&encode(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        decode(&text).map_err(serde::de::Error::custom)
    }
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= MAX_VERTICES);
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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

/// Parses one graph6 line; surrounding whitespace is ignored.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim().as_bytes();
    let (&header, payload) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=63 + MAX_VERTICES as u8).contains(&header) {
        return Err(Graph6Error::MalformedHeader(header));
    }
    let n = (header - 63) as usize;
    let expected = payload_len(n);
    if let Some((offset, &byte)) = payload.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(Graph6Error::ByteOutOfRange { byte, offset: offset + 1 });
    }
    if payload.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingBytes { expected, found: payload.len() });
    }
    let mut g = Graph::empty(n).expect("n ≤ 62 by header check");
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = payload[bit / 6] - 63;
            if group >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j).expect("each pair visited once");
            }
            bit += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Expected strings cross-checked against networkx's graph6 writer.
    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
    }

    #[test]
    fn decode_known() {
        assert_eq!(decode("Bw\n").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode("Bg").unwrap(), Graph::path(3).unwrap());
        assert_eq!(decode("@").unwrap().n(), 1);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode(">"), Err(Graph6Error::MalformedHeader(b'>')));
        assert_eq!(decode("~??"), Err(Graph6Error::MalformedHeader(b'~')));
        assert_eq!(decode("C"), Err(Graph6Error::Truncated { expected: 1, found: 0 }));
        assert_eq!(decode("Bww"), Err(Graph6Error::TrailingBytes { expected: 1, found: 2 }));
        assert_eq!(decode("B\x7f"), Err(Graph6Error::ByteOutOfRange { byte: 0x7f, offset: 1 }));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=MAX_VERTICES).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut it = bits.into_iter();
                for j in 1..n {
                    for i in 0..j {
                        if it.next().unwrap() {
                            g.add_edge(i, j).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph()) {
            let s = encode(&g);
            prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
            prop_assert_eq!(decode(&s).unwrap(), g);
        }
    }
}
