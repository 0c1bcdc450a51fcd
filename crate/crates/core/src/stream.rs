//! Graph sources for scans: exhaustive enumeration (labelled or up to
//! isomorphism), graph6 files, seeded random graphs and explicit lists.
//!
//! Every stream is addressed by a position (the number of graphs already
//! yielded), so a scan can stop and later resume at the same place.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{canonical_mask, from_edge_mask, pair_count, MASK_MAX_N};
use crate::dsl;
use crate::error::{Error, Result};
use crate::families::random_gnp_stream;
use crate::graph::{Graph, VertexSet};
use crate::graph6::parse_graph6;

/// Largest `n` for isomorphism-free enumeration.
pub const DEDUP_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum StreamSpec {
    /// All graphs on `n` vertices; labelled ones in edge-mask order, or one
    /// minimum-mask representative per isomorphism class in mask order.
    /// `connected` keeps graphs with connectivity at least 1.
    Enumerate {
        n: usize,
        #[serde(default)]
        connected: bool,
        #[serde(default = "default_true")]
        dedup: bool,
    },
    /// One graph6 record per line; blank lines are skipped.
    Graph6File { path: PathBuf },
    /// `count` graphs G(n,p); graph `i` comes from ChaCha8 stream `i` of
    /// `seed`.
    Random {
        n: usize,
        p: f64,
        seed: u64,
        count: u64,
    },
    /// Explicit constructor strings or graph6 records.
    List { graphs: Vec<String> },
    /// The given sources one after another.
    Chain { parts: Vec<StreamSpec> },
}

fn default_true() -> bool {
    true
}

impl StreamSpec {
    pub fn enumerate_connected(n: usize) -> Self {
        StreamSpec::Enumerate {
            n,
            connected: true,
            dedup: true,
        }
    }

    /// Short stable hash of the serialized spec.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("stream spec serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn open(&self) -> Result<GraphStream> {
        self.open_at(0)
    }

    /// Open positioned so that the next graph yielded is the one at
    /// `position`.
    pub fn open_at(&self, position: u64) -> Result<GraphStream> {
        let inner = self.open_inner()?;
        let mut stream = GraphStream { inner, position: 0 };
        while stream.position < position {
            if stream.next_graph()?.is_none() {
                break;
            }
        }
        Ok(stream)
    }

    fn open_inner(&self) -> Result<Source> {
        Ok(match self {
            StreamSpec::Enumerate {
                n,
                connected,
                dedup,
            } => {
                if *dedup {
                    let reps = dedup_representatives(*n)?;
                    Source::Masks {
                        n: *n,
                        masks: reps.to_vec().into_iter(),
                        connected: *connected,
                    }
                } else {
                    if *n > MASK_MAX_N {
                        return Err(Error::SearchInfeasible {
                            what: "labelled enumeration order",
                            size: *n,
                            cap: MASK_MAX_N,
                        });
                    }
                    Source::Labelled {
                        n: *n,
                        next: 0,
                        end: 1u128 << pair_count(*n),
                        connected: *connected,
                    }
                }
            }
            StreamSpec::Graph6File { path } => Source::File {
                lines: BufReader::new(File::open(path)?).lines(),
                line_no: 0,
            },
            StreamSpec::Random { n, p, seed, count } => Source::Random {
                n: *n,
                p: *p,
                seed: *seed,
                next: 0,
                count: *count,
            },
            StreamSpec::List { graphs } => Source::List {
                items: graphs.clone().into_iter(),
            },
            StreamSpec::Chain { parts } => Source::Chain {
                parts: parts
                    .iter()
                    .map(StreamSpec::open_inner)
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .rev()
                    .collect(),
            },
        })
    }
}

enum Source {
    Labelled {
        n: usize,
        next: u128,
        end: u128,
        connected: bool,
    },
    Masks {
        n: usize,
        masks: std::vec::IntoIter<u64>,
        connected: bool,
    },
    File {
        lines: std::io::Lines<BufReader<File>>,
        line_no: usize,
    },
    Random {
        n: usize,
        p: f64,
        seed: u64,
        next: u64,
        count: u64,
    },
    List {
        items: std::vec::IntoIter<String>,
    },
    // reversed so the next part is at the back
    Chain {
        parts: Vec<Source>,
    },
}

/// Connectivity at least 1: connected with at least two vertices.
fn keeps(connected: bool, g: &Graph) -> bool {
    !connected || (g.n() >= 2 && g.is_connected())
}

impl Source {
    fn next_graph(&mut self) -> Result<Option<Graph>> {
        match self {
            Source::Labelled {
                n,
                next,
                end,
                connected,
            } => {
                while *next < *end {
                    let g = from_edge_mask(*n, *next as u64);
                    *next += 1;
                    if keeps(*connected, &g) {
                        return Ok(Some(g));
                    }
                }
                Ok(None)
            }
            Source::Masks {
                n,
                masks,
                connected,
            } => {
                for m in masks.by_ref() {
                    let g = from_edge_mask(*n, m);
                    if keeps(*connected, &g) {
                        return Ok(Some(g));
                    }
                }
                Ok(None)
            }
            Source::File { lines, line_no } => {
                for line in lines.by_ref() {
                    let line = line?;
                    *line_no += 1;
                    if line.trim().is_empty() {
                        continue;
                    }
                    return parse_graph6(line.trim()).map(Some).map_err(|e| match e {
                        Error::Graph6 { offset, reason } => Error::Graph6 {
                            offset,
                            reason: format!("line {line_no}: {reason}"),
                        },
                        other => other,
                    });
                }
                Ok(None)
            }
            Source::Random {
                n,
                p,
                seed,
                next,
                count,
            } => {
                if *next >= *count {
                    return Ok(None);
                }
                let g = random_gnp_stream(*n, *p, *seed, *next)?;
                *next += 1;
                Ok(Some(g))
            }
            Source::List { items } => match items.next() {
                Some(s) => Ok(Some(dsl::resolve(&s)?.graph)),
                None => Ok(None),
            },
            Source::Chain { parts } => {
                while let Some(part) = parts.last_mut() {
                    if let Some(g) = part.next_graph()? {
                        return Ok(Some(g));
                    }
                    parts.pop();
                }
                Ok(None)
            }
        }
    }
}

/// A positioned, single-consumer sequence of graphs.
pub struct GraphStream {
    inner: Source,
    position: u64,
}

impl GraphStream {
    /// Number of graphs yielded so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn next_graph(&mut self) -> Result<Option<Graph>> {
        let g = self.inner.next_graph()?;
        if g.is_some() {
            self.position += 1;
        }
        Ok(g)
    }
}

impl Iterator for GraphStream {
    type Item = Result<(u64, Graph)>;

    fn next(&mut self) -> Option<Self::Item> {
        let pos = self.position;
        self.next_graph().transpose().map(|r| r.map(|g| (pos, g)))
    }
}

/// Canonical masks of all graphs on `n` vertices, ascending. Cached per `n`.
pub fn dedup_representatives(n: usize) -> Result<&'static [u64]> {
    if n > DEDUP_MAX_N {
        return Err(Error::SearchInfeasible {
            what: "isomorphism-free enumeration",
            size: n,
            cap: DEDUP_MAX_N,
        });
    }
    static CACHE: OnceLock<Mutex<Vec<Option<&'static [u64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; DEDUP_MAX_N + 1]));
    if let Some(done) = cache.lock().expect("cache lock")[n] {
        return Ok(done);
    }
    let reps: &'static [u64] = if n == 0 {
        Box::leak(vec![0].into_boxed_slice())
    } else {
        let parents = dedup_representatives(n - 1)?;
        Box::leak(extend_by_one_vertex(n - 1, parents).into_boxed_slice())
    };
    cache.lock().expect("cache lock")[n] = Some(reps);
    Ok(reps)
}

/// Every graph on `n+1` vertices is `P` plus a new vertex of maximum degree
/// for some graph `P` on `n` vertices, namely `G` minus a maximum-degree
/// vertex. So it suffices to add one vertex to each representative, keep
/// the additions where the new vertex has maximum degree, and canonicalise.
fn extend_by_one_vertex(n: usize, parents: &[u64]) -> Vec<u64> {
    use rayon::prelude::*;
    let found: Vec<HashSet<u64>> = parents
        .par_iter()
        .map(|&pm| {
            let parent = from_edge_mask(n, pm);
            let mut local = HashSet::new();
            for nb in 0u64..(1u64 << n) {
                let s = VertexSet::from_bits(nb);
                let d = s.len();
                let ok = (0..n).all(|u| parent.degree(u) + s.contains(u) as usize <= d);
                if !ok {
                    continue;
                }
                let mut g = Graph::new(n + 1).expect("small");
                for (u, v) in parent.edges() {
                    g.add_edge(u, v);
                }
                for u in s {
                    g.add_edge(u, n);
                }
                local.insert(canonical_mask(&g));
            }
            local
        })
        .collect();
    let all: BTreeSet<u64> = found.into_iter().flatten().collect();
    all.into_iter().collect()
}
