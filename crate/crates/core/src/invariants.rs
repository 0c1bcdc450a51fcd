//! Exact invariants: minimum degree, connectivity, independence number,
//! circumference and the constrained longest-path / longest-cycle queries
//! the lemma checkers need.
//!
//! Circumference follows the convention that a single vertex and a single
//! edge count as cycles of length 1 and 2: an edgeless graph on `n >= 1`
//! vertices has `c = 1`, a forest with at least one edge has `c = 2`.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Vertices of a cycle in traversal order. Length-1 and length-2 witnesses
/// are a single vertex and a single edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(pub Vec<usize>);

impl CycleWitness {
    /// Number of edges on the cycle, with the degenerate convention.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Whether this is a cycle of `g` (or a vertex / an edge of `g` for
    /// lengths 1 and 2).
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = &self.0;
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        match vs.len() {
            0 => false,
            1 => true,
            2 => g.has_edge(vs[0], vs[1]),
            k => {
                vs.iter().copied().collect::<VertexSet>().len() == k
                    && (0..k).all(|i| g.has_edge(vs[i], vs[(i + 1) % k]))
            }
        }
    }

    /// Whether `(u, v)` is consecutive on the cycle (either direction).
    pub fn uses_edge(&self, u: usize, v: usize) -> bool {
        let k = self.0.len();
        k >= 3
            && (0..k).any(|i| {
                let (a, b) = (self.0[i], self.0[(i + 1) % k]);
                (a, b) == (u, v) || (a, b) == (v, u)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub n: usize,
    pub delta: usize,
    pub kappa: usize,
    pub alpha: usize,
    pub c: usize,
    pub hamiltonian: bool,
    pub witness: CycleWitness,
}

impl InvariantBundle {
    pub fn compute(g: &Graph) -> Result<Self> {
        Self::compute_within(g, &Budget::unlimited())
    }

    pub fn compute_within(g: &Graph, budget: &Budget) -> Result<Self> {
        budget.tick()?;
        let delta = min_degree(g)?;
        let kappa = connectivity(g);
        let alpha = max_independent_set_within(g, budget)?.len();
        let (c, witness) = circumference_within(g, budget)?;
        Ok(InvariantBundle {
            n: g.n(),
            delta,
            kappa,
            alpha,
            c,
            hamiltonian: c == g.n() && g.n() >= 3,
            witness,
        })
    }
}

pub fn min_degree(g: &Graph) -> Result<usize> {
    g.min_degree().ok_or(Error::EmptyGraph)
}

// ---------------------------------------------------------------------------
// connectivity

/// Minimum number of vertices whose removal leaves a disconnected or trivial
/// graph: `n-1` for `K_n`, 0 for disconnected graphs and for `K_1`.
///
/// Minimum over non-adjacent pairs of the number of internally disjoint
/// paths (unit vertex capacities, augmenting paths).
pub fn connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let mut best = n - 1;
    for u in 0..n {
        if g.degree(u) < best {
            best = g.degree(u);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                best = best.min(local_connectivity(g, u, v, best));
                if best == 0 {
                    return 0;
                }
            }
        }
    }
    best
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths for
/// non-adjacent `s != t`, stopping early once `limit` paths are found.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    assert!(
        s != t && !g.has_edge(s, t),
        "local connectivity needs a non-adjacent pair"
    );
    let n = g.n();
    // node 2v = v_in, 2v+1 = v_out
    let size = 2 * n;
    let mut cap = vec![0u8; size * size];
    let at = |a: usize, b: usize| a * size + b;
    for v in 0..n {
        cap[at(2 * v, 2 * v + 1)] = if v == s || v == t { 2 } else { 1 };
    }
    for (u, v) in g.edges() {
        cap[at(2 * u + 1, 2 * v)] = 1;
        cap[at(2 * v + 1, 2 * u)] = 1;
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut parent = vec![usize::MAX; size];
    while flow < limit {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..size {
                if parent[b] == usize::MAX && cap[at(a, b)] > 0 {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut b = sink;
        while b != source {
            let a = parent[b];
            cap[at(a, b)] -= 1;
            cap[at(b, a)] += 1;
            b = a;
        }
        flow += 1;
    }
    flow
}

// ---------------------------------------------------------------------------
// independence number

pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

pub fn max_independent_set(g: &Graph) -> VertexSet {
    max_independent_set_within(g, &Budget::unlimited()).expect("unlimited budget")
}

/// Maximum clique of the complement, branch and bound with greedy colouring
/// bounds.
pub fn max_independent_set_within(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let comp = g.complement();
    let adj: Vec<u64> = (0..g.n()).map(|v| comp.neighbors(v).bits()).collect();
    let mut best = 0u64;
    max_clique(&adj, g.vertices().bits(), 0, &mut best, budget)?;
    Ok(VertexSet::from_bits(best))
}

fn max_clique(adj: &[u64], cand: u64, current: u64, best: &mut u64, budget: &Budget) -> Result<()> {
    budget.tick()?;
    let (order, colors) = color_sort(adj, cand);
    let mut cand = cand;
    let cur = current.count_ones();
    for i in (0..order.len()).rev() {
        if cur + colors[i] <= best.count_ones() {
            return Ok(());
        }
        let v = order[i];
        let next = current | 1u64 << v;
        let sub = cand & adj[v];
        if sub == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            max_clique(adj, sub, next, best, budget)?;
        }
        cand &= !(1u64 << v);
    }
    Ok(())
}

/// Greedy colouring of `cand` into independent sets of `adj`; vertices come
/// back in colour order with their colour numbers (1-based).
fn color_sort(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<u32>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v);
            q &= !adj[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

// ---------------------------------------------------------------------------
// cycles and paths

pub fn circumference(g: &Graph) -> Result<(usize, CycleWitness)> {
    circumference_within(g, &Budget::unlimited())
}

/// Exact circumference by depth-first search over paths whose first vertex
/// is the smallest on the cycle, pruned by the number of vertices still
/// reachable from the path's end.
pub fn circumference_within(g: &Graph, budget: &Budget) -> Result<(usize, CycleWitness)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut search = CycleSearch::new(g, budget, VertexSet::EMPTY, &[]);
    for s in 0..n {
        let allowed = VertexSet::from_bits(g.vertices().bits() & !((1u64 << s) - 1));
        if allowed.len() <= search.best.len() {
            break;
        }
        search.allowed = allowed;
        search.target = allowed.len();
        search.run_from(s)?;
        if search.best.len() == n {
            break;
        }
    }
    Ok(degenerate_or(g, search.best))
}

fn degenerate_or(g: &Graph, best: Vec<usize>) -> (usize, CycleWitness) {
    if best.len() >= 3 {
        return (best.len(), CycleWitness(best));
    }
    match g.edges().next() {
        Some((u, v)) => (2, CycleWitness(vec![u, v])),
        None => (1, CycleWitness(vec![0])),
    }
}

pub fn is_hamiltonian(g: &Graph) -> bool {
    g.n() >= 3 && circumference(g).map(|(c, _)| c == g.n()).unwrap_or(false)
}

/// Longest simple `u`–`v` path, in edges; `None` when `v` is unreachable.
pub fn longest_path_between(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    longest_path_between_within(g, u, v, &Budget::unlimited())
}

pub fn longest_path_between_within(
    g: &Graph,
    u: usize,
    v: usize,
    budget: &Budget,
) -> Result<Option<usize>> {
    Ok(longest_path(g, u, v, g.vertices(), VertexSet::EMPTY, budget)?.map(|p| p.len() - 1))
}

/// Longest simple path from `from` to `to` inside `allowed` that visits all
/// of `required`, as a vertex list.
pub fn longest_path(
    g: &Graph,
    from: usize,
    to: usize,
    allowed: VertexSet,
    required: VertexSet,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    for w in [from, to] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                n: g.n(),
            });
        }
    }
    if from == to {
        return Err(Error::SameVertex(from));
    }
    let mut allowed = allowed;
    allowed.insert(from);
    allowed.insert(to);
    if !required.is_subset(allowed) {
        return Ok(None);
    }
    let mut s = PathSearch {
        g,
        budget,
        allowed,
        required,
        to,
        path: vec![from],
        best: Vec::new(),
    };
    s.dfs(from, VertexSet::singleton(from))?;
    Ok((!s.best.is_empty()).then_some(s.best))
}

struct PathSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    allowed: VertexSet,
    required: VertexSet,
    to: usize,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl PathSearch<'_> {
    fn dfs(&mut self, x: usize, visited: VertexSet) -> Result<()> {
        self.budget.tick()?;
        if x == self.to {
            if self.required.is_subset(visited) && self.path.len() > self.best.len() {
                self.best.clone_from(&self.path);
            }
            return Ok(());
        }
        let free = self.allowed.difference(visited);
        let reach = self.g.reachable(x, free);
        if !reach.contains(self.to) || !self.required.difference(visited).is_subset(reach) {
            return Ok(());
        }
        if self.path.len() + reach.len() - 1 <= self.best.len() {
            return Ok(());
        }
        for w in self.g.neighbors(x).intersection(free) {
            self.path.push(w);
            let mut next = visited;
            next.insert(w);
            self.dfs(w, next)?;
            self.path.pop();
        }
        Ok(())
    }
}

/// Longest cycle (length at least 3) containing every edge of `edges`.
///
/// With `require_independent` the edges must be pairwise vertex-disjoint.
/// An empty edge list asks for a longest cycle of length at least 3.
pub fn longest_cycle_through_edges(
    g: &Graph,
    edges: &[(usize, usize)],
    require_independent: bool,
) -> Result<Option<CycleWitness>> {
    longest_cycle_through_edges_within(
        g,
        edges,
        require_independent,
        g.vertices(),
        &Budget::unlimited(),
    )
}

pub fn longest_cycle_through_edges_within(
    g: &Graph,
    edges: &[(usize, usize)],
    require_independent: bool,
    allowed: VertexSet,
    budget: &Budget,
) -> Result<Option<CycleWitness>> {
    let mut touched = VertexSet::EMPTY;
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(Error::NotAnEdge(format!("{u}-{v}")));
        }
        if require_independent && (touched.contains(u) || touched.contains(v)) {
            return Err(Error::InvalidParameter(format!(
                "edges are not independent: {u}-{v} shares a vertex"
            )));
        }
        touched.insert(u);
        touched.insert(v);
    }
    if !touched.is_subset(allowed) {
        return Ok(None);
    }
    let mut search = CycleSearch::new(g, budget, touched, edges);
    search.allowed = allowed;
    search.target = allowed.len();
    match edges.first() {
        Some(&(u, _)) => search.run_from(u)?,
        None => {
            for s in allowed {
                let above = VertexSet::from_bits(allowed.bits() & !((1u64 << s) - 1));
                if above.len() <= search.best.len() {
                    break;
                }
                search.allowed = above;
                search.run_from(s)?;
            }
        }
    }
    Ok((search.best.len() >= 3).then(|| CycleWitness(search.best)))
}

/// Longest cycle (length at least 3) whose vertex set contains `required`.
pub fn longest_cycle_containing(
    g: &Graph,
    required: VertexSet,
    budget: &Budget,
) -> Result<Option<CycleWitness>> {
    let Some(s) = required.first() else {
        return longest_cycle_through_edges_within(g, &[], false, g.vertices(), budget);
    };
    let mut search = CycleSearch::new(g, budget, required, &[]);
    search.allowed = g.vertices();
    search.target = g.n();
    search.run_from(s)?;
    Ok((search.best.len() >= 3).then(|| CycleWitness(search.best)))
}

/// Depth-first cycle search from a fixed start vertex, with optional
/// prescribed edges (each vertex's prescribed partners must be its cycle
/// neighbours) and required vertices.
struct CycleSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    allowed: VertexSet,
    required: VertexSet,
    partner: Vec<u64>,
    l_count: usize,
    target: usize,
    start: usize,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl<'a> CycleSearch<'a> {
    fn new(
        g: &'a Graph,
        budget: &'a Budget,
        required: VertexSet,
        edges: &[(usize, usize)],
    ) -> Self {
        let mut partner = vec![0u64; g.n()];
        for &(u, v) in edges {
            partner[u] |= 1 << v;
            partner[v] |= 1 << u;
        }
        CycleSearch {
            g,
            budget,
            allowed: g.vertices(),
            required,
            partner,
            l_count: edges.len(),
            target: g.n(),
            start: 0,
            path: Vec::new(),
            best: Vec::new(),
        }
    }

    fn run_from(&mut self, s: usize) -> Result<()> {
        if !self.allowed.contains(s) || self.partner[s].count_ones() > 2 {
            return Ok(());
        }
        self.start = s;
        self.path.clear();
        self.path.push(s);
        let first = self.partner[s];
        let candidates = if first != 0 {
            // one prescribed edge leaves s first; a second one must close
            VertexSet::singleton(first.trailing_zeros() as usize)
        } else {
            self.g.neighbors(s).intersection(self.allowed)
        };
        for w in candidates {
            if !self.allowed.contains(w) {
                continue;
            }
            self.path.push(w);
            let used = (first >> w & 1) as usize;
            let mut visited = VertexSet::singleton(s);
            visited.insert(w);
            self.dfs(w, s, visited, used)?;
            self.path.pop();
            if self.best.len() >= self.target {
                break;
            }
        }
        Ok(())
    }

    fn dfs(&mut self, x: usize, prev: usize, visited: VertexSet, used: usize) -> Result<()> {
        self.budget.tick()?;
        let s = self.start;
        let len = self.path.len();
        let open = self.partner[x] & !(1u64 << prev);

        if len >= 3 && self.g.has_edge(x, s) && open & !(1u64 << s) == 0 {
            let second = self.path[1];
            let s_ok = self.partner[s] & !(1u64 << second) & !(1u64 << x) == 0;
            let closing = (self.partner[x] >> s & 1) as usize;
            if s_ok
                && used + closing == self.l_count
                && self.required.is_subset(visited)
                && len > self.best.len()
            {
                self.best.clone_from(&self.path);
            }
        }
        if self.best.len() >= self.target {
            return Ok(());
        }

        let free = self.allowed.difference(visited);
        let candidates = match open.count_ones() {
            0 => self.g.neighbors(x).intersection(free),
            1 => {
                let y = open.trailing_zeros() as usize;
                if !free.contains(y) {
                    return Ok(());
                }
                VertexSet::singleton(y)
            }
            _ => return Ok(()),
        };
        if candidates.is_empty() {
            return Ok(());
        }
        let reach = self.g.reachable(x, free);
        if len + reach.len() - 1 <= self.best.len() {
            return Ok(());
        }
        if !self.required.difference(visited).is_subset(reach) {
            return Ok(());
        }
        if self
            .g
            .neighbors(s)
            .intersection(reach)
            .difference(VertexSet::singleton(x))
            .is_empty()
        {
            return Ok(());
        }
        for w in candidates {
            self.path.push(w);
            let mut next = visited;
            next.insert(w);
            let step = (self.partner[x] >> w & 1) as usize;
            self.dfs(w, x, next, used + step)?;
            self.path.pop();
            if self.best.len() >= self.target {
                break;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{clique_join, complete, cycle, path, petersen};

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(min_degree(&complete(6).unwrap()).unwrap(), 5);
        assert_eq!(min_degree(&clique_join(4, 2, 3).unwrap()).unwrap(), 4);
        assert!(matches!(
            min_degree(&Graph::new(0).unwrap()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(connectivity(&complete(5).unwrap()), 4);
        assert_eq!(connectivity(&petersen()), 3);
        assert_eq!(connectivity(&clique_join(4, 2, 3).unwrap()), 3);
        assert_eq!(connectivity(&complete(1).unwrap()), 0);
        assert_eq!(connectivity(&Graph::new(3).unwrap()), 0);
        assert_eq!(connectivity(&path(4).unwrap()), 1);
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&complete(7).unwrap()), 1);
        assert_eq!(independence_number(&cycle(5).unwrap()), 2);
        assert_eq!(independence_number(&petersen()), 4);
        assert_eq!(independence_number(&Graph::new(0).unwrap()), 0);
        let mis = max_independent_set(&petersen());
        assert!(petersen().is_independent(mis));
    }

    #[test]
    fn circumference_examples() {
        for n in 3..9 {
            assert_eq!(circumference(&cycle(n).unwrap()).unwrap().0, n);
        }
        assert_eq!(circumference(&path(4).unwrap()).unwrap().0, 2);
        assert_eq!(circumference(&Graph::new(3).unwrap()).unwrap().0, 1);
        let (c, w) = circumference(&petersen()).unwrap();
        assert_eq!(c, 9);
        assert!(w.is_valid_in(&petersen()));
        assert_eq!(circumference(&clique_join(5, 2, 4).unwrap()).unwrap().0, 12);
        assert!(circumference(&Graph::new(0).unwrap()).is_err());
    }

    #[test]
    fn hamiltonicity_examples() {
        assert!(is_hamiltonian(&cycle(6).unwrap()));
        assert!(!is_hamiltonian(&petersen()));
        assert!(!is_hamiltonian(&complete(2).unwrap()));
    }

    #[test]
    fn longest_paths() {
        assert_eq!(
            longest_path_between(&cycle(5).unwrap(), 0, 1).unwrap(),
            Some(4)
        );
        assert_eq!(
            longest_path_between(&complete(4).unwrap(), 1, 3).unwrap(),
            Some(3)
        );
        // a Hamiltonian 0-1 path plus the edge 01 would be a Hamiltonian cycle
        assert_eq!(longest_path_between(&petersen(), 0, 1).unwrap(), Some(8));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(longest_path_between(&two, 0, 2).unwrap(), None);
        assert!(matches!(
            longest_path_between(&two, 1, 1),
            Err(Error::SameVertex(1))
        ));
    }

    #[test]
    fn cycles_through_edges() {
        let c5 = cycle(5).unwrap();
        let w = longest_cycle_through_edges(&c5, &[(2, 3)], true)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.uses_edge(2, 3));

        let k4 = complete(4).unwrap();
        let w = longest_cycle_through_edges(&k4, &[(0, 1), (2, 3)], true)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.uses_edge(0, 1) && w.uses_edge(2, 3));

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            longest_cycle_through_edges(&star, &[(0, 1)], true).unwrap(),
            None
        );

        assert!(longest_cycle_through_edges(&c5, &[(0, 2)], true).is_err());
        assert!(longest_cycle_through_edges(&k4, &[(0, 1), (1, 2)], true).is_err());
        // a path of two prescribed edges is fine when independence is relaxed
        let w = longest_cycle_through_edges(&k4, &[(0, 1), (1, 2)], false)
            .unwrap()
            .unwrap();
        assert!(w.uses_edge(0, 1) && w.uses_edge(1, 2));
    }

    #[test]
    fn cycle_containing_set() {
        let g = petersen();
        let req: VertexSet = [0, 2, 7].into_iter().collect();
        let w = longest_cycle_containing(&g, req, &Budget::unlimited())
            .unwrap()
            .unwrap();
        assert!(w.is_valid_in(&g));
        assert!(req.is_subset(w.vertex_set()));
        assert_eq!(w.len(), 9);
    }

    #[test]
    fn zero_budget_is_exhausted() {
        let b = Budget::from_millis(0);
        assert!(matches!(
            InvariantBundle::compute_within(&petersen(), &b),
            Err(Error::BudgetExhausted)
        ));
    }
}
