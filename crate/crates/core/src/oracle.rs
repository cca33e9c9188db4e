//! Brute-force reference enumerator for small streams.
//!
//! Builds every `G_t` from scratch and checks all vertex subsets directly:
//! a subset `C` starting at `t` is a time-maximal clique iff it is a clique of
//! `G_t` containing a link that begins at `t`, with `t1` the minimum end time of
//! its pairs; it is maximal iff every common neighbor lowers that end time.
//! Nothing here is shared with the sweep enumerator.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::enumerate::TimedClique;
use crate::stream::{LinkStream, Time, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_links: usize,
}

impl OracleLimits {
    /// Size guard used unless the caller forces a run.
    pub const DEFAULT: OracleLimits = OracleLimits {
        max_vertices: 12,
        max_links: 100,
    };

    pub fn admits(&self, stream: &LinkStream) -> bool {
        stream.n() <= self.max_vertices && stream.m() <= self.max_links
    }
}

/// Subsets are enumerated over at most this many vertices per instant.
const MAX_LOCAL_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "stream too large for the brute-force oracle (n = {n}, m = {m}; limits n <= {max_vertices}, m <= {max_links})"
    )]
    TooLarge {
        n: usize,
        m: usize,
        max_vertices: usize,
        max_links: usize,
    },
    #[error("instant {t} involves {vertices} candidate vertices, more than the oracle can enumerate")]
    InstantTooDense { t: Time, vertices: usize },
}

/// All maximal cliques of `stream`. Refuses streams above [`OracleLimits::DEFAULT`]
/// unless `force` is set.
pub fn oracle_enumerate(stream: &LinkStream, force: bool) -> Result<BTreeSet<TimedClique>, OracleError> {
    let limits = OracleLimits::DEFAULT;
    if !force && !limits.admits(stream) {
        return Err(OracleError::TooLarge {
            n: stream.n(),
            m: stream.m(),
            max_vertices: limits.max_vertices,
            max_links: limits.max_links,
        });
    }

    let begins: BTreeSet<Time> = stream.links().iter().map(|l| l.begin).collect();
    let mut out = BTreeSet::new();
    for t in begins {
        let snapshot = Snapshot::at(stream, t);
        snapshot.collect_maximal(stream.n(), &mut out)?;
    }
    Ok(out)
}

/// `G_t` as a pair map, plus the pairs whose link begins at `t`.
struct Snapshot {
    t: Time,
    ends: HashMap<(VertexId, VertexId), Time>,
    fresh: HashSet<(VertexId, VertexId)>,
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

impl Snapshot {
    fn at(stream: &LinkStream, t: Time) -> Self {
        let mut ends = HashMap::new();
        let mut fresh = HashSet::new();
        for l in stream.links() {
            if l.begin <= t && t <= l.end {
                ends.insert(key(l.u, l.v), l.end);
                if l.begin == t {
                    fresh.insert(key(l.u, l.v));
                }
            }
        }
        Snapshot { t, ends, fresh }
    }

    fn end(&self, a: VertexId, b: VertexId) -> Option<Time> {
        self.ends.get(&key(a, b)).copied()
    }

    /// Endpoints of fresh pairs and their common neighbors: every clique starting
    /// at `t` lies inside this set.
    fn relevant_vertices(&self, n: usize) -> Vec<VertexId> {
        let mut set = BTreeSet::new();
        for &(u, v) in &self.fresh {
            set.insert(u);
            set.insert(v);
            for w in 0..n as VertexId {
                if self.end(u, w).is_some() && self.end(v, w).is_some() {
                    set.insert(w);
                }
            }
        }
        set.into_iter().collect()
    }

    fn collect_maximal(&self, n: usize, out: &mut BTreeSet<TimedClique>) -> Result<(), OracleError> {
        let local = self.relevant_vertices(n);
        if local.len() > MAX_LOCAL_VERTICES {
            return Err(OracleError::InstantTooDense {
                t: self.t,
                vertices: local.len(),
            });
        }
        for mask in 1u32..(1u32 << local.len()) {
            if mask.count_ones() < 2 {
                continue;
            }
            let members: Vec<VertexId> = (0..local.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| local[i])
                .collect();
            let Some(t1) = self.final_time(&members) else {
                continue;
            };
            if !self.has_fresh_pair(&members) {
                continue;
            }
            if self.vertex_maximal(n, &members, t1) {
                out.insert(TimedClique::new(self.t, t1, members));
            }
        }
        Ok(())
    }

    /// Minimum end time over all pairs, or `None` if some pair is not linked at `t`.
    fn final_time(&self, members: &[VertexId]) -> Option<Time> {
        let mut t1 = Time::MAX;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                t1 = t1.min(self.end(a, b)?);
            }
        }
        Some(t1)
    }

    fn has_fresh_pair(&self, members: &[VertexId]) -> bool {
        members.iter().enumerate().any(|(i, &a)| {
            members[i + 1..]
                .iter()
                .any(|&b| self.fresh.contains(&key(a, b)))
        })
    }

    fn vertex_maximal(&self, n: usize, members: &[VertexId], t1: Time) -> bool {
        (0..n as VertexId)
            .filter(|w| !members.contains(w))
            .all(|w| {
                let mut with_w = t1;
                for &c in members {
                    match self.end(w, c) {
                        Some(e) => with_w = with_w.min(e),
                        None => return true,
                    }
                }
                with_w < t1
            })
    }
}
