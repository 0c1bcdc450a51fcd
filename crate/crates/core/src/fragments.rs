//! Minimum cut-sets, fragments and endfragments.
//!
//! A fragment is a nonempty `X` whose neighbourhood `S = N(X)` is a minimum
//! cut-set and whose complement `X̂ = V - (X ∪ S)` is nonempty. For a fixed
//! minimum cut-set `T` these are exactly the nonempty proper unions of
//! components of `g - T`: every vertex of a minimum cut-set has a neighbour
//! in every component, so `N(X) = T`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::crosscheck::subsets_of_size;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::connectivity;

/// Default cap on the number of fragments in a catalog.
pub const DEFAULT_CATALOG_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fragment {
    pub x: VertexSet,
    pub s: VertexSet,
    pub complement: VertexSet,
}

impl Fragment {
    /// The fragment on `x`, with `S` and `X̂` computed from `g`. No check that
    /// `S` is minimum; see [`Fragment::validate`].
    pub fn on(g: &Graph, x: VertexSet) -> Fragment {
        let s = g.neighborhood(x);
        Fragment {
            x,
            s,
            complement: g.vertices().difference(x.union(s)),
        }
    }

    /// The fragment on `X̂`; applying it twice gives back `self`.
    pub fn complement(&self) -> Fragment {
        Fragment {
            x: self.complement,
            s: self.s,
            complement: self.x,
        }
    }

    /// Checks every defining property against `g` with connectivity `kappa`.
    pub fn validate(&self, g: &Graph, kappa: usize) -> Result<()> {
        let fail = |why: &str| {
            Err(Error::InvalidParameter(format!(
                "invalid fragment {:?}: {why}",
                self.x
            )))
        };
        if self.x.is_empty() {
            return fail("empty");
        }
        if g.neighborhood(self.x) != self.s {
            return fail("S is not N(X)");
        }
        if self.s.len() != kappa {
            return fail("|S| is not the connectivity");
        }
        if self.complement.is_empty() {
            return fail("complement is empty");
        }
        if self.complement != g.vertices().difference(self.x.union(self.s)) {
            return fail("complement does not partition V");
        }
        if !g
            .neighborhood(self.x)
            .intersection(self.complement)
            .is_empty()
        {
            return fail("edge between X and its complement");
        }
        if Fragment::on(g, self.complement).complement != self.x {
            return fail("double complement is not X");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentCatalog {
    pub kappa: usize,
    /// True for complete graphs, which have no cut-set.
    pub no_cutsets: bool,
    pub cutsets: Vec<VertexSet>,
    /// Ordered by size, then by ascending member list.
    pub fragments: Vec<Fragment>,
    pub endfragment: Vec<bool>,
}

impl FragmentCatalog {
    pub fn endfragments(&self) -> impl Iterator<Item = (usize, &Fragment)> {
        self.fragments
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.endfragment[i])
    }

    pub fn index_of(&self, x: VertexSet) -> Option<usize> {
        self.fragments.iter().position(|f| f.x == x)
    }
}

/// All vertex sets `T` of size `κ` with `g - T` disconnected. Complete graphs
/// give an empty list; disconnected graphs give `[∅]`.
pub fn minimum_cutsets(g: &Graph) -> Vec<VertexSet> {
    if g.is_complete() {
        return Vec::new();
    }
    let kappa = connectivity(g);
    subsets_of_size(g.n(), kappa)
        .map(VertexSet::from_bits)
        .filter(|&t| {
            let rest = g.vertices().difference(t);
            let first = rest.first().expect("non-complete graphs keep a vertex");
            g.reachable(first, rest) != rest
        })
        .collect()
}

pub fn enumerate_fragments(g: &Graph) -> Result<FragmentCatalog> {
    enumerate_fragments_capped(g, DEFAULT_CATALOG_CAP)
}

pub fn enumerate_fragments_capped(g: &Graph, cap: usize) -> Result<FragmentCatalog> {
    let kappa = connectivity(g);
    let cutsets = minimum_cutsets(g);
    let mut found = BTreeSet::new();
    for &t in &cutsets {
        let comps = g.components(g.vertices().difference(t));
        let c = comps.len();
        if c >= usize::BITS as usize - 1 || (1usize << c) - 2 > cap.saturating_sub(found.len()) {
            return Err(Error::CatalogTooLarge { cap });
        }
        for pick in 1usize..(1 << c) - 1 {
            let x = comps
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick >> i & 1 == 1)
                .fold(VertexSet::EMPTY, |acc, (_, &comp)| acc.union(comp));
            found.insert((x.len(), x.to_vec(), x.bits()));
        }
        if found.len() > cap {
            return Err(Error::CatalogTooLarge { cap });
        }
    }
    let fragments: Vec<Fragment> = found
        .into_iter()
        .map(|(_, _, x)| Fragment::on(g, VertexSet::from_bits(x)))
        .collect();
    let endfragment = fragments
        .iter()
        .map(|f| !fragments.iter().any(|h| h.x.is_proper_subset(f.x)))
        .collect();
    Ok(FragmentCatalog {
        kappa,
        no_cutsets: cutsets.is_empty(),
        cutsets,
        fragments,
        endfragment,
    })
}

pub fn endfragments(g: &Graph) -> Result<Vec<Fragment>> {
    let cat = enumerate_fragments(g)?;
    Ok(cat.endfragments().map(|(_, f)| *f).collect())
}

pub fn fragment_complement(frag: &Fragment) -> Fragment {
    frag.complement()
}
