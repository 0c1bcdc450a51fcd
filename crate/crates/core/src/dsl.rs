//! Constructor strings: `petersen`, `K_n`, `C_n`, `P_n`, `E_n` (edgeless),
//! `mK_a+K_k`, `H(a,b,t,k)` with an optional `;reading` suffix, and
//! `gnp(n,p,seed)`. Anything else is tried as a graph6 record.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, HReading};
use crate::graph::Graph;
use crate::graph6::parse_graph6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    LimitH {
        a: usize,
        b: usize,
        t: usize,
        k: usize,
        reading: HReading,
    },
    CliqueJoin {
        m: usize,
        a: usize,
        k: usize,
    },
    Named {
        name: String,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Empty {
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::LimitH {
                a,
                b,
                t,
                k,
                reading,
            } => families::limit_h(a, b, t, k, reading),
            FamilySpec::CliqueJoin { m, a, k } => families::clique_join(m, a, k),
            FamilySpec::Named { ref name } => families::named(name),
            FamilySpec::Complete { n } => families::complete(n),
            FamilySpec::Cycle { n } => families::cycle(n),
            FamilySpec::Path { n } => families::path(n),
            FamilySpec::Empty { n } => families::empty(n),
            FamilySpec::Gnp { n, p, seed } => families::random_gnp(n, p, seed),
        }
    }

    /// Parse a constructor string; `Ok(None)` when the text is not
    /// constructor syntax at all.
    pub fn parse(text: &str) -> Result<Option<FamilySpec>> {
        let s = text.trim();
        if s == "petersen" {
            return Ok(Some(FamilySpec::Named { name: s.into() }));
        }
        if let Some(args) = call_args(s, "H") {
            let (nums, reading) = match args.split_once(';') {
                Some((nums, r)) => (nums, HReading::from_name(r.trim())?),
                None => (args, HReading::Disjoint),
            };
            let v = ints(nums, 4, s)?;
            return Ok(Some(FamilySpec::LimitH {
                a: v[0],
                b: v[1],
                t: v[2],
                k: v[3],
                reading,
            }));
        }
        if let Some(args) = call_args(s, "gnp") {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad_spec(s));
            }
            let n = parts[0].parse().map_err(|_| bad_spec(s))?;
            let p = parts[1].parse().map_err(|_| bad_spec(s))?;
            let seed = parts[2].parse().map_err(|_| bad_spec(s))?;
            return Ok(Some(FamilySpec::Gnp { n, p, seed }));
        }
        if let Some((left, right)) = s.split_once('+') {
            let (m, a) = match left.split_once("K_") {
                Some(("", a)) => (1, a),
                Some((m, a)) => (m.parse().map_err(|_| bad_spec(s))?, a),
                None => return Err(bad_spec(s)),
            };
            let a = a.parse().map_err(|_| bad_spec(s))?;
            let k = right
                .strip_prefix("K_")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| bad_spec(s))?;
            return Ok(Some(FamilySpec::CliqueJoin { m, a, k }));
        }
        for (prefix, make) in [
            ("K_", FamilySpec::complete as fn(usize) -> FamilySpec),
            ("C_", FamilySpec::cycle),
            ("P_", FamilySpec::path),
            ("E_", FamilySpec::empty),
        ] {
            if let Some(n) = s.strip_prefix(prefix) {
                if let Ok(n) = n.parse() {
                    return Ok(Some(make(n)));
                }
            }
        }
        Ok(None)
    }

    fn complete(n: usize) -> Self {
        FamilySpec::Complete { n }
    }
    fn cycle(n: usize) -> Self {
        FamilySpec::Cycle { n }
    }
    fn path(n: usize) -> Self {
        FamilySpec::Path { n }
    }
    fn empty(n: usize) -> Self {
        FamilySpec::Empty { n }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::LimitH {
                a,
                b,
                t,
                k,
                reading,
            } => {
                write!(f, "H({a},{b},{t},{k};{})", reading.name())
            }
            FamilySpec::CliqueJoin { m, a, k } => write!(f, "{m}K_{a}+K_{k}"),
            FamilySpec::Named { name } => write!(f, "{name}"),
            FamilySpec::Complete { n } => write!(f, "K_{n}"),
            FamilySpec::Cycle { n } => write!(f, "C_{n}"),
            FamilySpec::Path { n } => write!(f, "P_{n}"),
            FamilySpec::Empty { n } => write!(f, "E_{n}"),
            FamilySpec::Gnp { n, p, seed } => write!(f, "gnp({n},{p},{seed})"),
        }
    }
}

fn bad_spec(s: &str) -> Error {
    Error::InvalidParameter(format!("malformed graph spec {s:?}"))
}

fn call_args<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

fn ints(args: &str, count: usize, whole: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = args
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad_spec(whole))?;
    if v.len() != count {
        return Err(bad_spec(whole));
    }
    Ok(v)
}

/// A graph together with the constructor that produced it, if any.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub graph: Graph,
    pub family: Option<FamilySpec>,
}

/// Constructor string first, then graph6.
pub fn resolve(text: &str) -> Result<Resolved> {
    match FamilySpec::parse(text)? {
        Some(family) => Ok(Resolved {
            graph: family.build()?,
            family: Some(family),
        }),
        None => Ok(Resolved {
            graph: parse_graph6(text.trim())?,
            family: None,
        }),
    }
}
