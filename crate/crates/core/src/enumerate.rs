//! Sweep over begin times with a restricted Bron–Kerbosch search per instant.
//!
//! For every instant `t` at which some link begins, each such link `{u, v}` seeds
//! a search for the cliques of `G_t` that contain `{u, v}`. Seeds already used at
//! `t` become forbidden edges, so a clique containing several new edges is visited
//! from exactly one seed. Every visited clique `C` is a time-maximal clique
//! `(C, [t, E_t(C)])`; it is emitted when no common neighbor can join it without
//! lowering its final time.
//!
//! Candidate sets are sorted by vertex id. Each candidate carries the minimum end
//! time of its links into the current clique, so final times of extended cliques
//! and the vertex-maximality test need no adjacency lookups.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::instant::{CursorError, InstantCursor, Neighbor};
use crate::stream::{LinkStream, Time, VertexId};

/// A clique `(members, [t0, t1])`. Members are sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TimedClique {
    pub t0: Time,
    pub t1: Time,
    pub members: Vec<VertexId>,
}

impl TimedClique {
    pub fn new(t0: Time, t1: Time, mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        TimedClique { t0, t1, members }
    }

    /// Member labels, sorted bytewise.
    pub fn labels<'s>(&self, stream: &'s LinkStream) -> Vec<&'s str> {
        let mut labels: Vec<&str> = self.members.iter().map(|&v| stream.label(v)).collect();
        labels.sort_unstable();
        labels
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumOptions {
    /// Prune the search with the pivot that maximizes the skipped set.
    pub pivot: bool,
    /// Restrict the sweep to begin times in `[lo, hi)`.
    pub begin_range: Option<(Time, Time)>,
    /// Check the frame invariants at every search call. Slow; meant for tests.
    pub check_invariants: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            pivot: true,
            begin_range: None,
            check_invariants: false,
        }
    }
}

impl EnumOptions {
    pub fn with_pivot(pivot: bool) -> Self {
        EnumOptions {
            pivot,
            ..Self::default()
        }
    }
}

/// Instrumentation of one enumeration run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnumCounters {
    /// Vertices in the stream.
    pub n: usize,
    /// Links whose begin time lies in the swept range.
    pub m: usize,
    /// Distinct begin or end instants in the swept range.
    pub distinct_instants: usize,
    /// Maximum degree of any visited `G_t`.
    pub max_degree: usize,
    /// Largest emitted clique.
    pub max_clique_size: usize,
    /// Maximal cliques emitted.
    pub alpha: u64,
    /// Time-maximal cliques visited, one per search call.
    pub alpha_t: u64,
    /// Search calls that made no recursive call.
    pub leaves: u64,
    /// Leaves whose clique was emitted.
    pub leaves_max: u64,
    pub wall_time_secs: f64,
}

impl EnumCounters {
    pub fn leaves_not_max(&self) -> u64 {
        self.leaves - self.leaves_max
    }

    /// Ratio of good leaves `leaves_max / leaves`; 1 when there are no leaves.
    pub fn ratio(&self) -> f64 {
        if self.leaves == 0 {
            1.0
        } else {
            self.leaves_max as f64 / self.leaves as f64
        }
    }

    /// Folds the counters of a disjoint range into `self`.
    pub fn merge(&mut self, other: &EnumCounters) {
        self.n = self.n.max(other.n);
        self.m += other.m;
        self.distinct_instants += other.distinct_instants;
        self.max_degree = self.max_degree.max(other.max_degree);
        self.max_clique_size = self.max_clique_size.max(other.max_clique_size);
        self.alpha += other.alpha;
        self.alpha_t += other.alpha_t;
        self.leaves += other.leaves;
        self.leaves_max += other.leaves_max;
        self.wall_time_secs = self.wall_time_secs.max(other.wall_time_secs);
    }
}

/// A vertex adjacent to every member of the current clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub vertex: VertexId,
    /// Minimum end time of the links between this vertex and the clique.
    pub end_with_clique: Time,
    /// In `P` (may extend the clique) rather than `X` (already explored).
    pub in_p: bool,
}

/// One search call, reported to the visitor on entry.
#[derive(Debug)]
pub struct Visit<'a> {
    pub t: Time,
    /// Clique members in insertion order, seed edge first.
    pub clique: &'a [VertexId],
    /// `E_t(clique)`.
    pub final_time: Time,
    /// Common neighbors of the clique, sorted by id.
    pub neighborhood: &'a [Candidate],
    /// Whether `(clique, [t, final_time])` is vertex-maximal.
    pub maximal: bool,
}

/// Vertex-maximality test evaluated through the cursor: true iff every
/// `u` in `neighborhood` lowers the final time of `clique` when added.
pub fn vertex_maximal(
    cursor: &InstantCursor,
    clique: &[VertexId],
    neighborhood: &[VertexId],
    end_of_clique: Time,
) -> bool {
    neighborhood.iter().all(|&u| {
        let with_u = clique
            .iter()
            .map(|&v| cursor.edge_end_time(u, v).unwrap_or(Time::MIN))
            .fold(end_of_clique, Time::min);
        with_u < end_of_clique
    })
}

/// A search frame `(R, P, X)` at the cursor's current instant.
#[derive(Clone, Debug)]
pub struct EnumFrame {
    pub clique: Vec<VertexId>,
    pub final_time: Time,
    pub candidates: Vec<Candidate>,
}

impl EnumFrame {
    /// Builds a frame from explicit sets. `clique` must be a clique of `G_now`
    /// and `p`, `x` disjoint subsets of its common neighborhood.
    pub fn new(
        cursor: &InstantCursor,
        clique: &[VertexId],
        p: &[VertexId],
        x: &[VertexId],
    ) -> Result<Self, CursorError> {
        let final_time = cursor.clique_final_time(clique)?;
        let mut candidates = Vec::with_capacity(p.len() + x.len());
        for (set, in_p) in [(p, true), (x, false)] {
            for &w in set {
                let mut end = Time::MAX;
                for &v in clique {
                    end = end.min(cursor.edge_end_time(v, w)?);
                }
                candidates.push(Candidate {
                    vertex: w,
                    end_with_clique: end,
                    in_p,
                });
            }
        }
        candidates.sort_unstable_by_key(|c| c.vertex);
        Ok(EnumFrame {
            clique: clique.to_vec(),
            final_time,
            candidates,
        })
    }
}

/// Pivot `p ∈ P ∪ X` maximizing `|Del(p)|`, with `Del(p)` sorted by id.
///
/// `Del(p)` holds the `u ∈ P ∩ N_t(p)` with `E_t(R ∪ {u}) = E_t(R ∪ {u, p})`.
/// Ties go to the smallest id, scanning `P` before `X`. Returns `None` when `P` is empty.
pub fn choose_pivot(frame: &EnumFrame, cursor: &InstantCursor) -> Option<(VertexId, Vec<VertexId>)> {
    let best = best_pivot(cursor, frame.final_time, &frame.candidates)?;
    let mut del = Vec::new();
    for_each_del(
        cursor,
        frame.final_time,
        &frame.candidates,
        &frame.candidates[best],
        |i| del.push(frame.candidates[i].vertex),
    );
    Some((frame.candidates[best].vertex, del))
}

/// Calls `f` with the index in `cands` of every member of `Del(pivot)`.
fn for_each_del(
    cursor: &InstantCursor,
    final_time: Time,
    cands: &[Candidate],
    pivot: &Candidate,
    mut f: impl FnMut(usize),
) {
    let neighbors = cursor.neighbors(pivot.vertex);
    let mut on_common = |i: usize, n: &Neighbor| {
        let c = &cands[i];
        if !c.in_p {
            return;
        }
        let with_u = final_time.min(c.end_with_clique);
        if pivot.end_with_clique.min(n.end) >= with_u {
            f(i);
        }
    };
    if neighbors.len() > 8 * cands.len() {
        for (i, c) in cands.iter().enumerate() {
            if let Ok(j) = neighbors.binary_search_by_key(&c.vertex, |n| n.vertex) {
                on_common(i, &neighbors[j]);
            }
        }
    } else {
        let (mut i, mut j) = (0, 0);
        while i < cands.len() && j < neighbors.len() {
            match cands[i].vertex.cmp(&neighbors[j].vertex) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    on_common(i, &neighbors[j]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

fn best_pivot(cursor: &InstantCursor, final_time: Time, cands: &[Candidate]) -> Option<usize> {
    if !cands.iter().any(|c| c.in_p) {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    let p_first = cands
        .iter()
        .enumerate()
        .filter(|(_, c)| c.in_p)
        .chain(cands.iter().enumerate().filter(|(_, c)| !c.in_p));
    for (i, pivot) in p_first {
        let mut size = 0;
        for_each_del(cursor, final_time, cands, pivot, |_| size += 1);
        if best.is_none_or(|(_, s)| size > s) {
            best = Some((i, size));
        }
    }
    best.map(|(i, _)| i)
}

#[derive(Clone, Debug, Default)]
struct SearchStats {
    alpha: u64,
    alpha_t: u64,
    leaves: u64,
    leaves_max: u64,
    max_clique_size: usize,
}

/// Per-instant search state: forbidden seed edges, the clique stack and scratch buffers.
///
/// Call [`CliqueSearch::begin_instant`] after advancing the cursor to a new instant,
/// then [`CliqueSearch::run_seed`] once per link beginning at that instant.
#[derive(Debug)]
pub struct CliqueSearch {
    pivot: bool,
    check_invariants: bool,
    forbid: Vec<Vec<VertexId>>,
    forbid_touched: Vec<VertexId>,
    in_clique: Vec<bool>,
    clique: Vec<VertexId>,
    cand_pool: Vec<Vec<Candidate>>,
    mark_pool: Vec<Vec<bool>>,
    stats: SearchStats,
}

impl CliqueSearch {
    pub fn new(n: usize, options: &EnumOptions) -> Self {
        CliqueSearch {
            pivot: options.pivot,
            check_invariants: options.check_invariants,
            forbid: vec![Vec::new(); n],
            forbid_touched: Vec::new(),
            in_clique: vec![false; n],
            clique: Vec::new(),
            cand_pool: Vec::new(),
            mark_pool: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    /// Clears the forbidden edges.
    pub fn begin_instant(&mut self) {
        for v in self.forbid_touched.drain(..) {
            self.forbid[v as usize].clear();
        }
    }

    /// Whether `{u, v}` was already used as a seed at the current instant.
    pub fn is_forbidden(&self, u: VertexId, v: VertexId) -> bool {
        self.forbid[u as usize].contains(&v)
    }

    /// Visits every clique of `G_now` containing `{u, v}` and no forbidden edge,
    /// then forbids `{u, v}`.
    pub fn run_seed<F>(
        &mut self,
        cursor: &InstantCursor,
        u: VertexId,
        v: VertexId,
        visitor: &mut F,
    ) -> Result<(), CursorError>
    where
        F: FnMut(&Visit<'_>),
    {
        let t = cursor.now().ok_or(CursorError::EdgeAbsent { u, v, t: None })?;
        let end_uv = cursor.edge_end_time(u, v)?;

        let mut cands = self.cand_pool.pop().unwrap_or_default();
        cands.clear();
        intersect_neighbors(cursor.neighbors(u), cursor.neighbors(v), &mut cands);

        self.clique.extend([u, v]);
        self.in_clique[u as usize] = true;
        self.in_clique[v as usize] = true;
        self.search(cursor, t, end_uv, &mut cands, visitor);
        self.in_clique[u as usize] = false;
        self.in_clique[v as usize] = false;
        self.clique.clear();
        self.cand_pool.push(cands);

        for (a, b) in [(u, v), (v, u)] {
            if self.forbid[a as usize].is_empty() {
                self.forbid_touched.push(a);
            }
            self.forbid[a as usize].push(b);
        }
        Ok(())
    }

    fn has_forbidden_edge_into_clique(&self, w: VertexId) -> bool {
        self.forbid[w as usize]
            .iter()
            .any(|&x| self.in_clique[x as usize])
    }

    fn search<F>(
        &mut self,
        cursor: &InstantCursor,
        t: Time,
        final_time: Time,
        cands: &mut [Candidate],
        visitor: &mut F,
    ) where
        F: FnMut(&Visit<'_>),
    {
        self.stats.alpha_t += 1;
        if self.check_invariants {
            self.check_frame(cursor, final_time, cands);
        }
        let maximal = cands.iter().all(|c| c.end_with_clique < final_time);
        if maximal {
            self.stats.alpha += 1;
            self.stats.max_clique_size = self.stats.max_clique_size.max(self.clique.len());
        }
        visitor(&Visit {
            t,
            clique: &self.clique,
            final_time,
            neighborhood: cands,
            maximal,
        });

        // skip[i]: cands[i] is not iterated (in X, in Del, or in Q)
        let mut skip = self.mark_pool.pop().unwrap_or_default();
        skip.clear();
        skip.extend(
            cands
                .iter()
                .map(|c| !c.in_p || self.has_forbidden_edge_into_clique(c.vertex)),
        );
        if self.pivot {
            if let Some(p) = best_pivot(cursor, final_time, cands) {
                for_each_del(cursor, final_time, cands, &cands[p], |i| skip[i] = true);
            }
        }

        let mut recursed = false;
        for i in 0..cands.len() {
            if skip[i] {
                continue;
            }
            let u = cands[i].vertex;
            let child_final = final_time.min(cands[i].end_with_clique);
            let mut child = self.cand_pool.pop().unwrap_or_default();
            child.clear();
            extend_candidates(cands, cursor.neighbors(u), &mut child);

            self.clique.push(u);
            self.in_clique[u as usize] = true;
            self.search(cursor, t, child_final, &mut child, visitor);
            self.in_clique[u as usize] = false;
            self.clique.pop();
            self.cand_pool.push(child);

            cands[i].in_p = false;
            recursed = true;
        }
        self.mark_pool.push(skip);

        if !recursed {
            self.stats.leaves += 1;
            if maximal {
                self.stats.leaves_max += 1;
            }
        }
    }

    fn check_frame(&self, cursor: &InstantCursor, final_time: Time, cands: &[Candidate]) {
        let clique = &self.clique;
        assert_eq!(cursor.clique_final_time(clique), Ok(final_time), "final time of {clique:?}");
        let first = clique[0];
        let common: Vec<VertexId> = cursor
            .neighbors(first)
            .iter()
            .map(|n| n.vertex)
            .filter(|&w| {
                !clique.contains(&w) && clique.iter().all(|&v| cursor.edge_end_time(v, w).is_ok())
            })
            .collect();
        let listed: Vec<VertexId> = cands.iter().map(|c| c.vertex).collect();
        assert_eq!(listed, common, "P ∪ X differs from the common neighborhood of {clique:?}");
        for c in cands {
            let end = clique
                .iter()
                .map(|&v| cursor.edge_end_time(v, c.vertex).unwrap())
                .min()
                .unwrap();
            assert_eq!(c.end_with_clique, end);
        }
    }
}

/// Seed candidates: `N(u) ∩ N(v)`, all in `P`.
fn intersect_neighbors(a: &[Neighbor], b: &[Neighbor], out: &mut Vec<Candidate>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].vertex.cmp(&b[j].vertex) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(Candidate {
                    vertex: a[i].vertex,
                    end_with_clique: a[i].end.min(b[j].end),
                    in_p: true,
                });
                i += 1;
                j += 1;
            }
        }
    }
}

/// Child candidates after adding a vertex with adjacency `neighbors`: `(P ∪ X) ∩ N(u)`.
fn extend_candidates(cands: &[Candidate], neighbors: &[Neighbor], out: &mut Vec<Candidate>) {
    let (mut i, mut j) = (0, 0);
    while i < cands.len() && j < neighbors.len() {
        match cands[i].vertex.cmp(&neighbors[j].vertex) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(Candidate {
                    end_with_clique: cands[i].end_with_clique.min(neighbors[j].end),
                    ..cands[i]
                });
                i += 1;
                j += 1;
            }
        }
    }
}

/// Enumerates the maximal cliques starting in the configured range, passing each to
/// `sink` in nondecreasing `t0` order.
pub fn enumerate_maximal_cliques<F>(
    stream: &LinkStream,
    options: &EnumOptions,
    mut sink: F,
) -> EnumCounters
where
    F: FnMut(TimedClique),
{
    let started = Instant::now();
    let (lo, hi) = options.begin_range.unwrap_or((0, Time::MAX));
    let links = stream.links();
    let mut cursor = InstantCursor::new(stream);
    let mut search = CliqueSearch::new(stream.n(), options);
    let mut emit = |visit: &Visit<'_>| {
        if visit.maximal {
            sink(TimedClique::new(visit.t, visit.final_time, visit.clique.to_vec()));
        }
    };

    let mut i = stream.first_link_at_or_after(lo);
    let first = i;
    while i < links.len() && links[i].begin < hi {
        let t = links[i].begin;
        cursor.advance_to(t).expect("begin times are visited in order");
        search.begin_instant();
        while let Some(link) = links.get(i).filter(|l| l.begin == t) {
            search
                .run_seed(&cursor, link.u, link.v, &mut emit)
                .expect("a link beginning now is an edge of G_now");
            i += 1;
        }
    }

    let stats = &search.stats;
    EnumCounters {
        n: stream.n(),
        m: i - first,
        distinct_instants: stream.distinct_instants_in(lo, hi),
        max_degree: cursor.max_degree(),
        max_clique_size: stats.max_clique_size,
        alpha: stats.alpha,
        alpha_t: stats.alpha_t,
        leaves: stats.leaves,
        leaves_max: stats.leaves_max,
        wall_time_secs: started.elapsed().as_secs_f64(),
    }
}

pub fn enumerate_to_vec(stream: &LinkStream, options: &EnumOptions) -> (Vec<TimedClique>, EnumCounters) {
    let mut cliques = Vec::new();
    let counters = enumerate_maximal_cliques(stream, options, |c| cliques.push(c));
    (cliques, counters)
}
