//! Extremal path systems over a fragment and the cycles built from them.
//!
//! For a fragment `A↑` with cut-set `S` and complement `A↓`:
//!
//! * `Q↑_1..Q↑_m` are vertex-disjoint paths in `⟨A↑ ∪ S⟩` with both ends in
//!   `S`, at least two vertices each, and `Σ|V(Q↑_i)|` maximum. Interior
//!   vertices may lie in `S`.
//! * `Q↓_1..Q↓_m` are paths in `⟨A↓ ∪ S⟩` that close the `Q↑` paths into one
//!   simple cycle `C*`, with `Σ|V(Q↓_i)|` maximum.
//! * `Q↓₀` is a longest `F(Q↑_1)`–`L(Q↑_1)` path through a fixed
//!   `z ∈ S - V↑` inside `⟨A↓ ∪ {F, L, z}⟩`, used when `|V↓ ∩ S| = 2`.
//! * `C**` is a longest cycle of `g` whose vertex set contains `V(C*)`.
//!
//! All searches are exhaustive and budgeted. Among the `Σ`-maximal `Q↑`
//! systems the one giving the longest `C*` is selected; remaining ties go to
//! fewest paths, then the lexicographically smallest `V↑`, then the smallest
//! path sequence.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fragments::Fragment;
use crate::graph::{Graph, VertexSet};
use crate::invariants::{
    longest_cycle_containing, longest_cycle_through_edges_within, longest_path, CycleWitness,
};

/// Largest `|A↑ ∪ S|` (and `|A↓ ∪ S|`) the exact searches accept.
pub const EXACT_SEARCH_CAP: usize = 16;

/// Largest number of `Σ`-maximal systems kept for the `C*` selection.
pub const MAX_TIED_SYSTEMS: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    /// Each path runs from its smaller terminal to its larger one; paths are
    /// ordered by first vertex.
    pub paths: Vec<Vec<usize>>,
    pub v_up: VertexSet,
    pub m: usize,
    pub sigma: usize,
}

impl PathSystem {
    pub fn from_paths(paths: Vec<Vec<usize>>) -> Self {
        let v_up = paths.iter().flatten().copied().collect::<VertexSet>();
        let sigma = paths.iter().map(Vec::len).sum();
        PathSystem {
            m: paths.len(),
            paths,
            v_up,
            sigma,
        }
    }

    /// Whether this is an admissible (not necessarily maximum) system for
    /// `frag` in `g`.
    pub fn is_admissible(&self, g: &Graph, frag: &Fragment) -> bool {
        let allowed = frag.x.union(frag.s);
        self.v_up.len() == self.sigma
            && self.paths.iter().all(|p| {
                p.len() >= 2
                    && frag.s.contains(p[0])
                    && frag.s.contains(p[p.len() - 1])
                    && p.iter().all(|&v| allowed.contains(v))
                    && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            })
    }

    /// The united path: the `Q↑_i` in order, joined `L(Q↑_i)`–`F(Q↑_{i+1})`.
    /// Joins that are not edges of `g` are listed as virtual.
    pub fn united(&self, g: &Graph) -> UnitedPath {
        let vertices: Vec<usize> = self.paths.iter().flatten().copied().collect();
        let virtual_edges = self
            .paths
            .windows(2)
            .map(|w| (w[0][w[0].len() - 1], w[1][0]))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        UnitedPath {
            vertices,
            virtual_edges,
        }
    }

    fn tie_key(&self) -> (usize, Vec<usize>, &Vec<Vec<usize>>) {
        (self.m, self.v_up.to_vec(), &self.paths)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitedPath {
    pub vertices: Vec<usize>,
    pub virtual_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementSystem {
    /// `Q↓_i` runs from the last vertex of the `i`-th traversed `Q↑` path to
    /// the first vertex of the next one.
    pub paths: Vec<Vec<usize>>,
    /// Traversal order of the `Q↑` paths: `(index, reversed)`.
    pub order: Vec<(usize, bool)>,
    pub v_down: VertexSet,
    /// `|V↓ ∩ S|`.
    pub f: usize,
    pub z: Option<usize>,
    pub q0: Option<Vec<usize>>,
    pub c_star: CycleWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinedCycles {
    pub up: PathSystem,
    pub down: Option<ComplementSystem>,
    pub c_star: Option<CycleWitness>,
    pub c_star_star: Option<CycleWitness>,
    /// Number of `Σ`-maximal systems compared.
    pub tied_systems: usize,
}

fn check_cap(what: &'static str, size: usize) -> Result<()> {
    if size > EXACT_SEARCH_CAP {
        Err(Error::SearchInfeasible {
            what,
            size,
            cap: EXACT_SEARCH_CAP,
        })
    } else {
        Ok(())
    }
}

/// Every `Σ`-maximal system, in tie-break order (fewest paths, smallest
/// `V↑`, smallest path sequence). Never empty: with no admissible path the
/// empty system is the maximum.
pub fn all_max_path_systems(
    g: &Graph,
    frag: &Fragment,
    budget: &Budget,
) -> Result<Vec<PathSystem>> {
    let allowed = frag.x.union(frag.s);
    check_cap("path system search on |A↑ ∪ S|", allowed.len())?;
    let mut search = UpSearch {
        g,
        budget,
        allowed,
        s: frag.s,
        paths: Vec::new(),
        cur: Vec::new(),
        best: 0,
        found: Vec::new(),
    };
    search.start_paths(VertexSet::EMPTY, 0, 0)?;
    let mut systems: Vec<PathSystem> = search
        .found
        .into_iter()
        .map(PathSystem::from_paths)
        .collect();
    systems.sort_by(|a, b| a.tie_key().cmp(&b.tie_key()));
    Ok(systems)
}

pub fn max_path_system(g: &Graph, frag: &Fragment, budget: &Budget) -> Result<PathSystem> {
    Ok(all_max_path_systems(g, frag, budget)?.swap_remove(0))
}

struct UpSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    allowed: VertexSet,
    s: VertexSet,
    paths: Vec<Vec<usize>>,
    cur: Vec<usize>,
    best: usize,
    found: Vec<Vec<Vec<usize>>>,
}

impl UpSearch<'_> {
    fn start_paths(&mut self, used: VertexSet, sigma: usize, min_first: usize) -> Result<()> {
        self.budget.tick()?;
        if sigma > self.best || self.found.is_empty() {
            self.best = sigma;
            self.found.clear();
        }
        if sigma == self.best {
            if self.found.len() >= MAX_TIED_SYSTEMS {
                return Err(Error::SearchInfeasible {
                    what: "tied maximal path systems",
                    size: self.found.len() + 1,
                    cap: MAX_TIED_SYSTEMS,
                });
            }
            self.found.push(self.paths.clone());
        }
        let free_s = self.s.difference(used);
        if free_s.len() < 2 || sigma + self.allowed.difference(used).len() < self.best {
            return Ok(());
        }
        for first in free_s {
            if first < min_first {
                continue;
            }
            self.cur.push(first);
            let mut next = used;
            next.insert(first);
            self.extend(first, next, sigma, first)?;
            self.cur.pop();
        }
        Ok(())
    }

    fn extend(&mut self, x: usize, used: VertexSet, sigma: usize, first: usize) -> Result<()> {
        self.budget.tick()?;
        if self.cur.len() >= 2 && self.s.contains(x) && x > first {
            let path = std::mem::take(&mut self.cur);
            let len = path.len();
            self.paths.push(path);
            self.start_paths(used, sigma + len, first + 1)?;
            self.cur = self.paths.pop().expect("pushed above");
        }
        if sigma + self.cur.len() + self.allowed.difference(used).len() < self.best {
            return Ok(());
        }
        for w in self
            .g
            .neighbors(x)
            .intersection(self.allowed)
            .difference(used)
        {
            self.cur.push(w);
            let mut next = used;
            next.insert(w);
            self.extend(w, next, sigma, first)?;
            self.cur.pop();
        }
        Ok(())
    }
}

/// The maximal complementary system for `ps`, or `None` when no choice of
/// paths in `⟨A↓ ∪ S⟩` closes the `Q↑` paths into a simple cycle.
pub fn complement_system(
    g: &Graph,
    frag: &Fragment,
    ps: &PathSystem,
    budget: &Budget,
) -> Result<Option<ComplementSystem>> {
    if ps.m == 0 {
        return Ok(None);
    }
    let region = frag.complement.union(frag.s);
    check_cap("complement search on |A↓ ∪ S|", region.len())?;
    let mut search = DownSearch {
        g,
        budget,
        free: region.difference(ps.v_up),
        up: &ps.paths,
        order: vec![(0, false)],
        down: Vec::new(),
        cur: vec![*ps.paths[0].last().expect("paths have two vertices")],
        best: None,
    };
    search.dfs(VertexSet::EMPTY, 1, 0)?;
    let Some((_, down, order)) = search.best else {
        return Ok(None);
    };

    let mut cycle = Vec::new();
    for (i, &(j, rev)) in order.iter().enumerate() {
        let p = &ps.paths[j];
        if rev {
            cycle.extend(p.iter().rev());
        } else {
            cycle.extend(p.iter());
        }
        let q = &down[i];
        cycle.extend(&q[1..q.len() - 1]);
    }
    let v_down: VertexSet = down.iter().flatten().copied().collect();
    let f = v_down.intersection(frag.s).len();
    let spare = frag.s.difference(ps.v_up);
    let (z, q0) = if f == 2 && !spare.is_empty() {
        let z = spare.first().expect("nonempty");
        let p1 = &ps.paths[0];
        let allowed = frag.complement.union(VertexSet::singleton(z));
        let q0 = longest_path(
            g,
            p1[0],
            p1[p1.len() - 1],
            allowed,
            VertexSet::singleton(z),
            budget,
        )?;
        (Some(z), q0)
    } else {
        (None, None)
    };
    Ok(Some(ComplementSystem {
        paths: down,
        order,
        v_down,
        f,
        z,
        q0,
        c_star: CycleWitness(cycle),
    }))
}

type DownBest = (usize, Vec<Vec<usize>>, Vec<(usize, bool)>);

struct DownSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    free: VertexSet,
    up: &'a [Vec<usize>],
    order: Vec<(usize, bool)>,
    down: Vec<Vec<usize>>,
    cur: Vec<usize>,
    best: Option<DownBest>,
}

impl DownSearch<'_> {
    fn dfs(&mut self, visited: VertexSet, used_paths: usize, interior: usize) -> Result<()> {
        self.budget.tick()?;
        if let Some((b, _, _)) = &self.best {
            if interior + self.free.difference(visited).len() <= *b {
                return Ok(());
            }
        }
        let x = *self.cur.last().expect("current path is nonempty");
        let m = self.up.len();

        if used_paths == m {
            let f1 = self.up[0][0];
            let up_len: usize = self.up.iter().map(Vec::len).sum();
            if self.g.has_edge(x, f1) && up_len + interior >= 3 {
                let better = self.best.as_ref().map_or(true, |(b, _, _)| interior > *b);
                if better {
                    let mut down = self.down.clone();
                    let mut last = self.cur.clone();
                    last.push(f1);
                    down.push(last);
                    self.best = Some((interior, down, self.order.clone()));
                }
            }
        } else {
            for j in 1..m {
                if self.order.iter().any(|&(k, _)| k == j) {
                    continue;
                }
                let p = &self.up[j];
                for (t, other, rev) in [(p[0], p[p.len() - 1], false), (p[p.len() - 1], p[0], true)]
                {
                    if !self.g.has_edge(x, t) {
                        continue;
                    }
                    let mut done = std::mem::replace(&mut self.cur, vec![other]);
                    done.push(t);
                    self.down.push(done);
                    self.order.push((j, rev));
                    self.dfs(visited, used_paths + 1, interior)?;
                    self.order.pop();
                    let mut done = self.down.pop().expect("pushed above");
                    done.pop();
                    self.cur = done;
                }
            }
        }

        for w in self
            .g
            .neighbors(x)
            .intersection(self.free)
            .difference(visited)
        {
            self.cur.push(w);
            let mut next = visited;
            next.insert(w);
            self.dfs(next, used_paths, interior + 1)?;
            self.cur.pop();
        }
        Ok(())
    }
}

/// Selects, among all `Σ`-maximal systems, one whose `C*` is longest, and
/// finds `C**`.
pub fn combined_cycles(g: &Graph, frag: &Fragment, budget: &Budget) -> Result<CombinedCycles> {
    let systems = all_max_path_systems(g, frag, budget)?;
    let tied = systems.len();
    let mut best: Option<(PathSystem, ComplementSystem)> = None;
    for ps in &systems {
        if let Some(cs) = complement_system(g, frag, ps, budget)? {
            let longer = best
                .as_ref()
                .map_or(true, |(_, b)| cs.c_star.len() > b.c_star.len());
            if longer {
                let full = cs.c_star.len() == g.n();
                best = Some((ps.clone(), cs));
                if full {
                    break;
                }
            }
        }
    }
    match best {
        Some((up, down)) => {
            let c_star = down.c_star.clone();
            let c_star_star = longest_cycle_containing(g, c_star.vertex_set(), budget)?;
            Ok(CombinedCycles {
                up,
                down: Some(down),
                c_star: Some(c_star),
                c_star_star,
                tied_systems: tied,
            })
        }
        None => Ok(CombinedCycles {
            up: systems.into_iter().next().expect("never empty"),
            down: None,
            c_star: None,
            c_star_star: None,
            tied_systems: tied,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "cycle", rename_all = "snake_case")]
pub enum MatchingCycle {
    /// No edges were prescribed.
    Vacuous,
    Found(CycleWitness),
    Absent,
}

/// A cycle inside `⟨A↓ ∪ V(L)⟩` using every edge of `L`, where `frag.x` is
/// the endfragment `A↓` and `L` is a set of independent edges of `⟨S⟩`.
pub fn cycle_through_matching(
    g: &Graph,
    frag: &Fragment,
    edges: &[(usize, usize)],
    budget: &Budget,
) -> Result<MatchingCycle> {
    let mut ends = VertexSet::EMPTY;
    for &(u, v) in edges {
        if !frag.s.contains(u) || !frag.s.contains(v) {
            return Err(Error::InvalidParameter(format!(
                "edge {u}-{v} is not inside the cut-set"
            )));
        }
        ends.insert(u);
        ends.insert(v);
    }
    if edges.is_empty() {
        return Ok(MatchingCycle::Vacuous);
    }
    let allowed = frag.x.union(ends);
    match longest_cycle_through_edges_within(g, edges, true, allowed, budget)? {
        Some(c) => Ok(MatchingCycle::Found(c)),
        None => Ok(MatchingCycle::Absent),
    }
}
