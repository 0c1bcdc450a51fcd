//! Graph constructors: joins, unions, named fixtures, the clique-join and
//! `H(a,b,t,k)` extremal families, and seeded G(n,p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// `g + h`: disjoint union plus every edge between the two parts. Vertices of
/// `h` are shifted by `g.n()`.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = disjoint_union(g, h)?;
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, g.n() + v);
        }
    }
    Ok(out)
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n() + h.n();
    check_cap(n)?;
    let mut out = Graph::new(n)?;
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(g.n() + u, g.n() + v);
    }
    Ok(out)
}

/// `m` disjoint copies of `g`.
pub fn copies(m: usize, g: &Graph) -> Result<Graph> {
    check_cap(m * g.n())?;
    (0..m).try_fold(Graph::new(0)?, |acc, _| disjoint_union(&acc, g))
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for v in 1..n {
        for u in 0..v {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn empty(n: usize) -> Result<Graph> {
    Graph::new(n)
}

pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    Ok(g)
}

/// `C_n` with edges `{i, i+1 mod n}`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0);
    Ok(g)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10).expect("10 <= cap");
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    g
}

pub fn named(name: &str) -> Result<Graph> {
    match name {
        "petersen" => Ok(petersen()),
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// `m K_a + K_k`.
pub fn clique_join(m: usize, a: usize, k: usize) -> Result<Graph> {
    if m == 0 || a == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "clique join needs m, a, k >= 1, got ({m}, {a}, {k})"
        )));
    }
    join(&copies(m, &complete(a)?)?, &complete(k)?)
}

/// How the `K_b` in `H(a,b,t,k)` is placed. The defining sentence only says
/// that `k` vertices of the independent `t`-set are joined to all of `K_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HReading {
    /// `K_b` is a fresh clique whose only outside neighbours are the `k`
    /// chosen vertices.
    Disjoint,
    /// `K_b` enlarges the first `K_a` copy to `K_{a+b}`; the new vertices see
    /// that copy and the `k` chosen vertices.
    EnlargedCopy,
    /// `K_b` is joined to the whole independent `t`-set, so every
    /// independent vertex is chosen.
    JoinedToIndependent,
}

impl HReading {
    pub const ALL: [HReading; 3] = [
        HReading::Disjoint,
        HReading::EnlargedCopy,
        HReading::JoinedToIndependent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HReading::Disjoint => "disjoint",
            HReading::EnlargedCopy => "enlarged_copy",
            HReading::JoinedToIndependent => "joined_to_independent",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        HReading::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown H reading {s:?}")))
    }
}

/// `H(a,b,t,k)`. Vertex layout: the `t` copies of `K_a` first (`0..t*a`),
/// then the independent `t`-set, then the `b` vertices of `K_b`. The chosen
/// `k` independent vertices are the first `k` of the independent set.
pub fn limit_h(a: usize, b: usize, t: usize, k: usize, reading: HReading) -> Result<Graph> {
    if a == 0 || b == 0 || t == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "H(a,b,t,k) needs all parameters >= 1, got ({a}, {b}, {t}, {k})"
        )));
    }
    if k > t {
        return Err(Error::InvalidParameter(format!(
            "H(a,b,t,k) needs k <= t, got k={k}, t={t}"
        )));
    }
    let base = join(&copies(t, &complete(a)?)?, &empty(t)?)?;
    let mut g = disjoint_union(&base, &complete(b)?)?;
    let indep = t * a;
    let kb = indep + t;
    let chosen = match reading {
        HReading::JoinedToIndependent => t,
        _ => k,
    };
    for x in indep..indep + chosen {
        for y in kb..kb + b {
            g.add_edge(x, y);
        }
    }
    if reading == HReading::EnlargedCopy {
        for x in 0..a {
            for y in kb..kb + b {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// G(n, p) from ChaCha8 seeded with `seed`; pairs drawn row-major
/// (`(0,1), (0,2), .., (1,2), ..`), each kept when a uniform `f64` in `[0,1)`
/// falls below `p`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let rng = ChaCha8Rng::seed_from_u64(seed);
    random_gnp_with(n, p, rng)
}

/// Same as [`random_gnp`] but drawing from ChaCha8 stream `stream` of
/// `seed`, so the i-th graph of a random stream is addressable directly.
pub fn random_gnp_stream(n: usize, p: f64, seed: u64, stream: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    random_gnp_with(n, p, rng)
}

fn random_gnp_with(n: usize, p: f64, mut rng: ChaCha8Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in [0,1], got {p}"
        )));
    }
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
