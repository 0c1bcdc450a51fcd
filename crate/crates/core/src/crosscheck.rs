//! Second solvers that share no code with the main search engines, used to
//! confirm any reported counterexample and as test oracles.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest `n` for the subset dynamic programme.
pub const DP_MAX_N: usize = 20;

/// Circumference by dynamic programming over vertex subsets: `ends[m]` holds
/// the vertices `v` such that some path from the lowest vertex of `m` to `v`
/// visits exactly `m`. Same degenerate convention as the search engine.
pub fn circumference_dp(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > DP_MAX_N {
        return Err(Error::SearchInfeasible {
            what: "subset dynamic programme",
            size: n,
            cap: DP_MAX_N,
        });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).bits() as u32).collect();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 0;
    for m in 1usize..1 << n {
        let e = ends[m];
        if e == 0 {
            continue;
        }
        let s = m.trailing_zeros() as usize;
        let size = m.count_ones() as usize;
        if size >= 3 && e & adj[s] != 0 {
            best = best.max(size);
        }
        let above = !((1u32 << (s + 1)) - 1);
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut ext = adj[v] & !(m as u32) & above;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[m | 1 << w] |= 1 << w;
            }
        }
    }
    Ok(match best {
        0 if g.edge_count() > 0 => 2,
        0 => 1,
        c => c,
    })
}

/// Connectivity by trying every vertex subset in order of size.
pub fn connectivity_naive(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    for k in 0..n - 1 {
        for bits in subsets_of_size(n, k) {
            let rest = g.vertices().difference(VertexSet::from_bits(bits));
            let first = rest.first().expect("k < n");
            if g.reachable(first, rest) != rest {
                return k;
            }
        }
    }
    n - 1
}

/// Independence number by scanning every vertex subset.
pub fn independence_naive(g: &Graph) -> usize {
    assert!(g.n() <= 24, "naive independence scan is exponential");
    (0u64..1 << g.n())
        .map(VertexSet::from_bits)
        .filter(|&s| g.is_independent(s))
        .map(VertexSet::len)
        .max()
        .unwrap_or(0)
}

/// All `k`-subsets of `0..n` as bit masks, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = (k <= n).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{clique_join, cycle, path, petersen};

    #[test]
    fn dp_examples() {
        assert_eq!(circumference_dp(&petersen()).unwrap(), 9);
        assert_eq!(circumference_dp(&cycle(7).unwrap()).unwrap(), 7);
        assert_eq!(circumference_dp(&path(5).unwrap()).unwrap(), 2);
        assert_eq!(circumference_dp(&Graph::new(2).unwrap()).unwrap(), 1);
        assert_eq!(circumference_dp(&clique_join(4, 2, 3).unwrap()).unwrap(), 9);
    }

    #[test]
    fn naive_examples() {
        assert_eq!(connectivity_naive(&petersen()), 3);
        assert_eq!(independence_naive(&petersen()), 4);
        assert_eq!(connectivity_naive(&clique_join(4, 2, 3).unwrap()), 3);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_of_size(6, 3).count(), 20);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(4, 4).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }
}
