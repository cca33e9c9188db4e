//! The instantaneous graph `G_t`, maintained incrementally along a forward sweep.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::stream::{LinkStream, Time, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CursorError {
    #[error("cannot move the sweep backwards from {now} to {requested}")]
    Backwards { now: Time, requested: Time },
    #[error("no edge between {u} and {v} at time {t:?}")]
    EdgeAbsent {
        u: VertexId,
        v: VertexId,
        t: Option<Time>,
    },
    #[error("vertex set is not a clique of size >= 2 at time {t:?}")]
    NotAClique { t: Option<Time> },
}

/// One adjacency entry: a neighbor and the end time of the link joining them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Neighbor {
    pub vertex: VertexId,
    pub end: Time,
}

/// Mutable view of `G_t` for a monotone sweep over `t`.
///
/// Adjacency lists are sorted by neighbor id. Links are inserted when the sweep
/// reaches their begin time and expire lazily once the sweep moves past their end.
#[derive(Debug)]
pub struct InstantCursor<'s> {
    stream: &'s LinkStream,
    now: Option<Time>,
    adjacency: Vec<Vec<Neighbor>>,
    expiry: BinaryHeap<Reverse<(Time, VertexId, VertexId)>>,
    next_link: usize,
    max_degree: usize,
}

impl<'s> InstantCursor<'s> {
    pub fn new(stream: &'s LinkStream) -> Self {
        InstantCursor {
            stream,
            now: None,
            adjacency: vec![Vec::new(); stream.n()],
            expiry: BinaryHeap::new(),
            next_link: 0,
            max_degree: 0,
        }
    }

    pub fn stream(&self) -> &'s LinkStream {
        self.stream
    }

    /// Current sweep instant, `None` before the first advance.
    pub fn now(&self) -> Option<Time> {
        self.now
    }

    /// Moves the sweep to `t`: drops links ending before `t` and inserts every
    /// not-yet-seen link with `begin <= t <= end`.
    pub fn advance_to(&mut self, t: Time) -> Result<(), CursorError> {
        if let Some(now) = self.now {
            if t < now {
                return Err(CursorError::Backwards { now, requested: t });
            }
        }
        self.now = Some(t);

        while let Some(&Reverse((end, u, v))) = self.expiry.peek() {
            if end >= t {
                break;
            }
            self.expiry.pop();
            remove_neighbor(&mut self.adjacency[u as usize], v);
            remove_neighbor(&mut self.adjacency[v as usize], u);
        }

        let links = self.stream.links();
        while let Some(link) = links.get(self.next_link) {
            if link.begin > t {
                break;
            }
            self.next_link += 1;
            if link.end < t {
                continue;
            }
            let (u, v) = (link.u as usize, link.v as usize);
            insert_neighbor(&mut self.adjacency[u], link.v, link.end);
            insert_neighbor(&mut self.adjacency[v], link.u, link.end);
            self.max_degree = self
                .max_degree
                .max(self.adjacency[u].len())
                .max(self.adjacency[v].len());
            self.expiry.push(Reverse((link.end, link.u, link.v)));
        }
        Ok(())
    }

    /// Neighbors of `u` in `G_now`, sorted by id, with link end times.
    pub fn neighbors(&self, u: VertexId) -> &[Neighbor] {
        &self.adjacency[u as usize]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adjacency[u as usize].len()
    }

    /// Largest degree seen in any `G_t` visited so far.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_end_time(&self, u: VertexId, v: VertexId) -> Result<Time, CursorError> {
        let list = &self.adjacency[u as usize];
        list.binary_search_by_key(&v, |n| n.vertex)
            .map(|i| list[i].end)
            .map_err(|_| CursorError::EdgeAbsent { u, v, t: self.now })
    }

    /// Minimum end time over all pairs of `clique`.
    pub fn clique_final_time(&self, clique: &[VertexId]) -> Result<Time, CursorError> {
        if clique.len() < 2 {
            return Err(CursorError::NotAClique { t: self.now });
        }
        let mut final_time = Time::MAX;
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                let end = self
                    .edge_end_time(u, v)
                    .map_err(|_| CursorError::NotAClique { t: self.now })?;
                final_time = final_time.min(end);
            }
        }
        Ok(final_time)
    }
}

fn insert_neighbor(list: &mut Vec<Neighbor>, vertex: VertexId, end: Time) {
    match list.binary_search_by_key(&vertex, |n| n.vertex) {
        Ok(i) => {
            // only reachable with a non-simple stream
            debug_assert!(false, "edge inserted twice");
            list[i].end = list[i].end.max(end);
        }
        Err(i) => list.insert(i, Neighbor { vertex, end }),
    }
}

fn remove_neighbor(list: &mut Vec<Neighbor>, vertex: VertexId) {
    if let Ok(i) = list.binary_search_by_key(&vertex, |n| n.vertex) {
        list.remove(i);
    }
}
