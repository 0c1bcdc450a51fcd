//! `(Q,r)`-schemes on abstract hosts (a cycle or a path on positions
//! `0..len`), their nontriviality via systems of distinct representatives,
//! the host-length lower bounds for two to four classes, and a brute-force
//! search for the shortest host that admits a nontrivial scheme.
//!
//! Distances are measured along the host: cyclic distance on a cycle,
//! position difference on a path.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest host length the brute-force search accepts.
pub const ORACLE_MAX_HOST: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostKind {
    Cycle,
    Path,
}

impl HostKind {
    pub fn distance(self, len: usize, x: usize, y: usize) -> usize {
        let d = x.abs_diff(y);
        match self {
            HostKind::Cycle => d.min(len - d),
            HostKind::Path => d,
        }
    }
}

impl FromStr for HostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(HostKind::Cycle),
            "path" => Ok(HostKind::Path),
            _ => Err(Error::InvalidParameter(format!(
                "host must be cycle or path, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for HostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HostKind::Cycle => "cycle",
            HostKind::Path => "path",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeInstance {
    pub host: HostKind,
    pub len: usize,
    pub classes: Vec<Vec<usize>>,
    pub r: usize,
}

impl SchemeInstance {
    /// Both gap conditions: distinct members of one class at distance at
    /// least 2, distinct members of different classes at distance at least
    /// `r`.
    pub fn is_scheme(&self) -> Result<bool> {
        if let Some(&bad) = self.classes.iter().flatten().find(|&&x| x >= self.len) {
            return Err(Error::InvalidParameter(format!(
                "position {bad} outside host of length {}",
                self.len
            )));
        }
        let d = |x, y| self.host.distance(self.len, x, y);
        for (i, zi) in self.classes.iter().enumerate() {
            for (a, &x) in zi.iter().enumerate() {
                if zi[a + 1..].iter().any(|&y| x != y && d(x, y) < 2) {
                    return Ok(false);
                }
                for zj in &self.classes[i + 1..] {
                    if zj.iter().any(|&y| x != y && d(x, y) < self.r) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_nontrivial(&self) -> Result<bool> {
        if !self.is_scheme()? {
            return Err(Error::NotAScheme(format!("{:?}", self.classes)));
        }
        let masks: Vec<u64> = self
            .classes
            .iter()
            .map(|z| z.iter().fold(0u64, |m, &x| m | 1 << x))
            .collect();
        Ok(has_sdr(&masks))
    }
}

/// Whether the sets (as bit masks) have a system of distinct
/// representatives, by augmenting-path bipartite matching.
pub fn has_sdr(sets: &[u64]) -> bool {
    let mut owner = [usize::MAX; 64];
    for i in 0..sets.len() {
        let mut seen = 0u64;
        if !augment(sets, i, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(sets: &[u64], i: usize, owner: &mut [usize; 64], seen: &mut u64) -> bool {
    let mut cand = sets[i] & !*seen;
    while cand != 0 {
        let x = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        *seen |= 1 << x;
        if owner[x] == usize::MAX || augment(sets, owner[x], owner, seen) {
            owner[x] = i;
            return true;
        }
    }
    false
}

/// The host-length lower bounds, one per class-count and host shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundLemma {
    A,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
}

impl BoundLemma {
    pub const ALL: [BoundLemma; 9] = [
        BoundLemma::A,
        BoundLemma::L1,
        BoundLemma::L2,
        BoundLemma::L3,
        BoundLemma::L4,
        BoundLemma::L5,
        BoundLemma::L6,
        BoundLemma::L7,
        BoundLemma::L8,
    ];

    pub fn host(self) -> HostKind {
        match self {
            BoundLemma::A | BoundLemma::L1 | BoundLemma::L2 => HostKind::Cycle,
            _ => HostKind::Path,
        }
    }

    /// Number of classes.
    pub fn classes(self) -> usize {
        match self {
            BoundLemma::A | BoundLemma::L3 | BoundLemma::L4 => 2,
            BoundLemma::L1 | BoundLemma::L5 | BoundLemma::L6 => 3,
            BoundLemma::L2 | BoundLemma::L7 | BoundLemma::L8 => 4,
        }
    }

    /// Whether `sizes` satisfies the lemma's class-count and size
    /// constraints (all classes nonempty).
    pub fn admits(self, sizes: &[usize]) -> bool {
        if sizes.len() != self.classes() || sizes.contains(&0) {
            return false;
        }
        match self {
            BoundLemma::A | BoundLemma::L3 => true,
            BoundLemma::L1 | BoundLemma::L5 => sizes[0] == 1,
            BoundLemma::L2 | BoundLemma::L7 => sizes[0] == 1 && sizes[1] == 1,
            BoundLemma::L4 => sizes[0] == 1 && sizes[1] >= 2,
            BoundLemma::L6 => sizes[0] == 1 && sizes[1] == 1 && sizes[2] >= 3,
            BoundLemma::L8 => sizes[..3] == [1, 1, 1] && sizes[3] >= 4,
        }
    }

    fn constraint_text(self) -> &'static str {
        match self {
            BoundLemma::A | BoundLemma::L3 => "two nonempty classes",
            BoundLemma::L1 | BoundLemma::L5 => "three classes with |Z1| = 1",
            BoundLemma::L2 | BoundLemma::L7 => "four classes with |Z1| = |Z2| = 1",
            BoundLemma::L4 => "two classes with |Z1| = 1 and |Z2| >= 2",
            BoundLemma::L6 => "three classes with |Z1| = |Z2| = 1 and |Z3| >= 3",
            BoundLemma::L8 => "four classes with |Z1| = |Z2| = |Z3| = 1 and |Z4| >= 4",
        }
    }

    /// The guaranteed minimum host length: the stated minimum evaluated over
    /// the rationals and rounded up.
    pub fn bound(self, sizes: &[usize], r: usize) -> Result<i64> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!(
                "r must be at least 2, got {r}"
            )));
        }
        if !self.admits(sizes) {
            return Err(Error::InvalidParameter(format!(
                "{self} needs {}, got sizes {sizes:?}",
                self.constraint_text()
            )));
        }
        let s: i64 = sizes.iter().map(|&x| x as i64).sum();
        let r = r as i64;
        let last = *sizes.last().expect("nonempty") as i64;
        // (linear term, numerator of the halved term, constant added after halving)
        let (lin, half): (i64, Option<(i64, i64)>) = match self {
            BoundLemma::A => (2 * s + 2 * r - 6, Some((r * s, 0))),
            BoundLemma::L1 => (2 * s + 3 * r - 12, Some((r * (s - 1), 0))),
            BoundLemma::L2 => (2 * s + 4 * r - 18, Some((r * (s - 2), 0))),
            BoundLemma::L3 => (2 * s + r - 5, Some((r * (s - 2), 1))),
            BoundLemma::L4 => (2 * last + r - 3, None),
            BoundLemma::L5 => (2 * s + 2 * r - 11, Some((r * (s - 3), 1))),
            BoundLemma::L6 => (2 * last + 2 * r - 5, None),
            BoundLemma::L7 => (2 * s + 3 * r - 17, Some((r * (s - 4), 1))),
            BoundLemma::L8 => (2 * last + 3 * r - 7, None),
        };
        Ok(match half {
            Some((num, add)) => lin.min(num.div_euclid(2) + num.rem_euclid(2) + add),
            None => lin,
        })
    }
}

impl fmt::Display for BoundLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for BoundLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundLemma::ALL
            .into_iter()
            .find(|l| l.to_string() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("unknown scheme lemma {s:?}; expected A or L1..L8"))
            })
    }
}

/// `scheme_bound` with the host shape checked against the lemma.
pub fn scheme_bound(lemma: BoundLemma, sizes: &[usize], r: usize, host: HostKind) -> Result<i64> {
    if lemma.host() != host {
        return Err(Error::InvalidParameter(format!(
            "{lemma} concerns a {} host, got {host}",
            lemma.host()
        )));
    }
    lemma.bound(sizes, r)
}

/// A shortest host admitting a nontrivial scheme with the given class sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub len: usize,
    pub classes: Vec<Vec<usize>>,
}

/// Smallest host length `<= cap` on which some nontrivial `(Q,r)`-scheme
/// has exactly the given class sizes; `None` when no length up to `cap`
/// works.
pub fn min_host_bruteforce(
    sizes: &[usize],
    r: usize,
    host: HostKind,
    cap: usize,
) -> Result<Option<Placement>> {
    if cap > ORACLE_MAX_HOST {
        return Err(Error::SearchInfeasible {
            what: "scheme host length",
            size: cap,
            cap: ORACLE_MAX_HOST,
        });
    }
    if sizes.len() < 2 || sizes.contains(&0) || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two nonempty classes and r >= 2, got sizes {sizes:?}, r = {r}"
        )));
    }
    for len in 1..=cap {
        let mut search = Placer::new(sizes, r, host, len);
        if search.place(0, 0) {
            let classes = search
                .chosen
                .iter()
                .map(|&m| (0..len).filter(|&x| m >> x & 1 == 1).collect())
                .collect();
            return Ok(Some(Placement { len, classes }));
        }
    }
    Ok(None)
}

struct Placer<'a> {
    sizes: &'a [usize],
    host: HostKind,
    len: usize,
    // near[x]: positions y != x with d(x, y) < r
    near: Vec<u32>,
    // adjacent[x]: positions y != x with d(x, y) < 2
    adjacent: Vec<u32>,
    chosen: Vec<u32>,
}

impl<'a> Placer<'a> {
    fn new(sizes: &'a [usize], r: usize, host: HostKind, len: usize) -> Self {
        let ball = |x: usize, radius: usize| {
            (0..len)
                .filter(|&y| y != x && host.distance(len, x, y) < radius)
                .fold(0u32, |m, y| m | 1 << y)
        };
        Placer {
            sizes,
            host,
            len,
            near: (0..len).map(|x| ball(x, r)).collect(),
            adjacent: (0..len).map(|x| ball(x, 2)).collect(),
            chosen: Vec::new(),
        }
    }

    /// Place class `i`; `forbidden` collects positions too close to earlier
    /// classes.
    fn place(&mut self, i: usize, forbidden: u32) -> bool {
        if i == self.sizes.len() {
            let sets: Vec<u64> = self.chosen.iter().map(|&m| m as u64).collect();
            return has_sdr(&sets);
        }
        let all = if self.len == 32 {
            u32::MAX
        } else {
            (1u32 << self.len) - 1
        };
        let allowed = all & !forbidden;
        // rotate cycles so that the first class contains position 0
        if i == 0 && self.host == HostKind::Cycle {
            if allowed & 1 == 0 {
                return false;
            }
            return self.pick(i, 1, allowed & !1 & !self.adjacent[0], 1, forbidden);
        }
        self.pick(i, 0, allowed, 0, forbidden)
    }

    fn pick(&mut self, i: usize, set: u32, cand: u32, from: usize, forbidden: u32) -> bool {
        if set.count_ones() as usize == self.sizes[i] {
            let mut next = forbidden;
            for x in (0..self.len).filter(|&x| set >> x & 1 == 1) {
                next |= self.near[x];
            }
            self.chosen.push(set);
            // a later class may reuse a position of this one unless another
            // member of this class is closer than r to it
            if self.place(i + 1, next) {
                return true;
            }
            self.chosen.pop();
            return false;
        }
        let need = self.sizes[i] - set.count_ones() as usize;
        let rest = cand & !((1u32 << from) - 1);
        if (rest.count_ones() as usize) < need {
            return false;
        }
        for x in from..self.len {
            if rest >> x & 1 == 0 {
                continue;
            }
            if self.pick(i, set | 1 << x, cand & !self.adjacent[x], x + 1, forbidden) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(host: HostKind, len: usize, classes: &[&[usize]], r: usize) -> SchemeInstance {
        SchemeInstance {
            host,
            len,
            classes: classes.iter().map(|c| c.to_vec()).collect(),
            r,
        }
    }

    #[test]
    fn scheme_examples() {
        assert!(inst(HostKind::Cycle, 6, &[&[0], &[3]], 3)
            .is_scheme()
            .unwrap());
        assert!(!inst(HostKind::Cycle, 6, &[&[0, 1], &[3]], 3)
            .is_scheme()
            .unwrap());
        assert!(!inst(HostKind::Path, 5, &[&[0], &[4]], 5)
            .is_scheme()
            .unwrap());
        assert!(inst(HostKind::Path, 5, &[&[0], &[9]], 2)
            .is_scheme()
            .is_err());
    }

    #[test]
    fn nontrivial_examples() {
        assert!(inst(HostKind::Path, 9, &[&[0, 2], &[6]], 3)
            .is_nontrivial()
            .unwrap());
        assert!(!inst(HostKind::Path, 5, &[&[2], &[2]], 3)
            .is_nontrivial()
            .unwrap());
        assert!(!inst(HostKind::Path, 9, &[&[0], &[0, 2], &[0, 2]], 2)
            .is_nontrivial()
            .unwrap());
        assert!(matches!(
            inst(HostKind::Cycle, 6, &[&[0, 1], &[3]], 3).is_nontrivial(),
            Err(Error::NotAScheme(_))
        ));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(
            scheme_bound(BoundLemma::A, &[4, 4], 4, HostKind::Cycle).unwrap(),
            16
        );
        assert_eq!(
            scheme_bound(BoundLemma::L1, &[1, 3, 3], 5, HostKind::Cycle).unwrap(),
            15
        );
        assert_eq!(
            scheme_bound(BoundLemma::L4, &[1, 3], 4, HostKind::Path).unwrap(),
            7
        );
        // halves round up: A with sizes (1,2), r = 3 -> min{6, 9/2} -> 5
        assert_eq!(BoundLemma::A.bound(&[1, 2], 3).unwrap(), 5);
        assert!(BoundLemma::L6.bound(&[1, 1, 2], 4).is_err());
        assert!(scheme_bound(BoundLemma::L3, &[2, 2], 3, HostKind::Cycle).is_err());
        assert!(BoundLemma::A.bound(&[1, 1], 1).is_err());
    }

    #[test]
    fn oracle_examples() {
        let c = min_host_bruteforce(&[1, 1], 2, HostKind::Cycle, 14)
            .unwrap()
            .unwrap();
        assert_eq!(c.len, 4);
        let p = min_host_bruteforce(&[1, 1], 2, HostKind::Path, 14)
            .unwrap()
            .unwrap();
        assert_eq!(p.len, 3);
        let q = min_host_bruteforce(&[1, 1], 3, HostKind::Cycle, 14)
            .unwrap()
            .unwrap();
        assert!(q.len as i64 >= BoundLemma::A.bound(&[1, 1], 3).unwrap());
        assert!(min_host_bruteforce(&[1, 1], 2, HostKind::Cycle, 15).is_err());
    }

    #[test]
    fn sdr_examples() {
        assert!(has_sdr(&[0b01, 0b10]));
        assert!(!has_sdr(&[0b1, 0b1]));
        assert!(has_sdr(&[0b001, 0b011, 0b111]));
        assert!(!has_sdr(&[0b011, 0b011, 0b011]));
        assert!(has_sdr(&[]));
    }
}
