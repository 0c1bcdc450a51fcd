//! graph6 encoding (header `63+n` for `n <= 62`, otherwise `126` plus three
//! 6-bit groups; upper triangle in column order, six bits per byte, `+63`,
//! zero padded).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(skip + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let Some(&first) = body.first() else {
        return Err(bad(skip, "empty record"));
    };
    let (n, mut pos) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if body.len() < 4 {
            return Err(bad(skip + body.len(), "truncated size header"));
        }
        if body[1] == 126 {
            return Err(bad(skip + 1, "8-byte size header exceeds vertex cap"));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(bad(skip, format!("non-canonical long header for n={n}")));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            cap: MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let payload = &body[pos..];
    if payload.len() < need {
        return Err(bad(
            skip + body.len(),
            format!(
                "truncated payload: need {need} bytes, got {}",
                payload.len()
            ),
        ));
    }
    if payload.len() > need {
        return Err(bad(skip + pos + need, "trailing bytes after payload"));
    }
    let mut g = Graph::new(n)?;
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = payload[need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(bad(skip + pos + need - 1, "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, body.len());
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
