//! graph6 interchange format.
//!
//! Bit-exact per the published format: the size header is `n + 63` for
//! `n <= 62`, or `126` followed by three six-bit groups for larger `n`;
//! the upper triangle is packed column by column, i.e. in the bit order
//! `(0,1), (0,2), (1,2), (0,3), ...`, padded with zeros to a multiple of
//! six, each group offset by 63.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

fn parse_error(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6Parse { offset, message: message.into() }
}

/// Encodes a graph as graph6 text.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else {
        // 126, then n in three six-bit groups, high bits first
        bytes.push(126);
        for shift in [12u32, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let nbits = n * (n.saturating_sub(1)) / 2;
    let mut bits = vec![false; nbits.div_ceil(6) * 6];
    for &(u, v) in g.edges() {
        // column-major position of (u, v) with u < v
        bits[v * (v - 1) / 2 + u] = true;
    }
    for chunk in bits.chunks(6) {
        let mut val = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                val |= 1 << (5 - i);
            }
        }
        bytes.push(63 + val);
    }
    String::from_utf8(bytes).expect("graph6 bytes are ASCII")
}

/// Decodes graph6 text. Errors report the byte offset of the problem.
pub fn decode_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(parse_error(0, "empty input"));
    }
    let pos: usize;
    let n: usize;
    if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(parse_error(1, "graphs with n > 258047 are not supported"));
        }
        if bytes.len() < 4 {
            return Err(parse_error(bytes.len(), "truncated size header"));
        }
        let mut val = 0usize;
        for (i, &b) in bytes.iter().enumerate().take(4).skip(1) {
            if !(63..=126).contains(&b) {
                return Err(parse_error(i, format!("byte {b} outside graph6 range 63..=126")));
            }
            val = (val << 6) | (b - 63) as usize;
        }
        n = val;
        pos = 4;
    } else {
        let b = bytes[0];
        if !(63..=125).contains(&b) {
            return Err(parse_error(0, format!("bad size byte {b}")));
        }
        n = (b - 63) as usize;
        pos = 1;
    }
    if n > MAX_VERTICES {
        return Err(parse_error(0, format!("vertex count {n} exceeds the supported maximum {MAX_VERTICES}")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = nbits.div_ceil(6);
    if bytes.len() - pos != expect {
        return Err(parse_error(
            bytes.len().min(pos + expect),
            format!("expected {expect} data bytes for n={n}, got {}", bytes.len() - pos),
        ));
    }
    let mut bits = Vec::with_capacity(expect * 6);
    for (i, &b) in bytes[pos..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_error(pos + i, format!("byte {b} outside graph6 range 63..=126")));
        }
        let val = b - 63;
        for k in 0..6 {
            bits.push(val & (1 << (5 - k)) != 0);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(parse_error(bytes.len() - 1, "nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    #[test]
    fn k3_encodes_to_bw() {
        // header 63+3 = 'B'; bits 111 padded to 111000 = 56, 56+63 = 'w'
        let k3 = FamilySpec::complete(3).unwrap().generate();
        assert_eq!(encode_graph6(&k3), "Bw");
        assert_eq!(decode_graph6("Bw").unwrap(), k3);
    }

    #[test]
    fn single_vertex_is_at_sign() {
        let g = Graph::empty(1);
        assert_eq!(encode_graph6(&g), "@");
        assert_eq!(decode_graph6("@").unwrap(), g);
    }

    #[test]
    fn known_encodings() {
        // 5-vertex graph with edges {02,04,13,34}, a standard format example
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn generated_families_round_trip() {
        let specs = [
            FamilySpec::complete(6).unwrap(),
            FamilySpec::cycle(9).unwrap(),
            FamilySpec::hypercube(3).unwrap(),
            FamilySpec::complete_multipartite(vec![3, 3, 2]).unwrap(),
            FamilySpec::cluster(2, 4).unwrap(),
            FamilySpec::ladder(10).unwrap(),
            FamilySpec::threshold_tail(7).unwrap(),
        ];
        for spec in specs {
            let g = spec.generate();
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g, "{}", spec.tag());
        }
    }

    #[test]
    fn large_size_header() {
        let g = Graph::new(100, [(0, 99), (50, 51)]).unwrap();
        let enc = encode_graph6(&g);
        assert_eq!(enc.as_bytes()[0], 126);
        assert_eq!(decode_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        match decode_graph6("") {
            Err(GraphError::Graph6Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        // K_3 header with missing data byte
        assert!(decode_graph6("B").is_err());
        // data byte below 63
        match decode_graph6("B ") {
            Err(GraphError::Graph6Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        // trailing garbage
        assert!(decode_graph6("Bww").is_err());
    }
}
