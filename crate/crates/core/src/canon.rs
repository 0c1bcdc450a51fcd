//! Edge masks and the minimum-edge-mask canonical form used to deduplicate
//! small graphs.
//!
//! The edge mask of a graph reads its graph6 bit string (pairs
//! `(0,1), (0,2), (1,2), (0,3), ..`) as a big-endian binary number, so
//! numeric order on masks is lexicographic order on bit strings. Masks fit in
//! a `u64` for `n <= 11`.

use crate::graph::{Graph, VertexSet};

/// Largest `n` whose edge mask fits in 64 bits.
pub const MASK_MAX_N: usize = 11;

/// Largest `n` accepted by [`canonical_mask`].
pub const CANON_MAX_N: usize = 10;

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn edge_mask(g: &Graph) -> u64 {
    assert!(g.n() <= MASK_MAX_N, "edge mask needs n <= {MASK_MAX_N}");
    let mut m = 0u64;
    for v in 1..g.n() {
        for u in 0..v {
            m = (m << 1) | g.has_edge(u, v) as u64;
        }
    }
    m
}

pub fn from_edge_mask(n: usize, mask: u64) -> Graph {
    assert!(n <= MASK_MAX_N, "edge mask needs n <= {MASK_MAX_N}");
    let total = pair_count(n);
    let mut g = Graph::new(n).expect("n <= cap");
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> (total - 1 - k) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

/// Minimum edge mask over all relabellings of `g`, with the relabelling
/// (`perm[old] = new`) that attains it.
///
/// Branch and bound over labellings built position by position: placing a
/// vertex at position `k` fixes the `k` bits of column `k`, and a partial
/// labelling whose columns already exceed the best complete one is cut.
/// Twins (same neighbourhood up to each other) are interchangeable, so only
/// the smallest unplaced member of each twin class is tried.
pub fn canonical_form(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.n();
    assert!(n <= CANON_MAX_N, "canonical form needs n <= {CANON_MAX_N}");
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let twin_rep: Vec<usize> = (0..n)
        .map(|v| {
            (0..v)
                .find(|&u| {
                    let mu = g.neighbors(u).bits() & !(1u64 << v);
                    let mv = g.neighbors(v).bits() & !(1u64 << u);
                    mu == mv
                })
                .unwrap_or(v)
        })
        .collect();
    let mut s = Canon {
        g,
        n,
        twin_rep,
        order: Vec::with_capacity(n),
        cols: vec![0; n],
        best_cols: vec![u16::MAX; n],
        best_order: Vec::new(),
    };
    s.search(VertexSet::EMPTY);
    let mut mask = 0u64;
    for k in 1..n {
        mask = (mask << k) | s.best_cols[k] as u64;
    }
    let mut perm = vec![0; n];
    for (new, &old) in s.best_order.iter().enumerate() {
        perm[old] = new;
    }
    (mask, perm)
}

pub fn canonical_mask(g: &Graph) -> u64 {
    canonical_form(g).0
}

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    twin_rep: Vec<usize>,
    order: Vec<usize>,
    // column k holds bits (0,k)..(k-1,k), (0,k) most significant
    cols: Vec<u16>,
    best_cols: Vec<u16>,
    best_order: Vec<usize>,
}

impl Canon<'_> {
    fn search(&mut self, placed: VertexSet) {
        let k = self.order.len();
        if k == self.n {
            if self.cols[1..] < self.best_cols[1..] {
                self.best_cols.copy_from_slice(&self.cols);
                self.best_order.clone_from(&self.order);
            }
            return;
        }
        for v in 0..self.n {
            if placed.contains(v) {
                continue;
            }
            let rep = self.twin_rep[v];
            if rep != v && !placed.contains(rep) {
                continue;
            }
            let mut col = 0u16;
            for &u in &self.order {
                col = (col << 1) | self.g.has_edge(u, v) as u16;
            }
            self.cols[k] = col;
            if k >= 1 && self.cols[1..=k] > self.best_cols[1..=k] {
                continue;
            }
            self.order.push(v);
            let mut next = placed;
            next.insert(v);
            self.search(next);
            self.order.pop();
        }
    }
}
