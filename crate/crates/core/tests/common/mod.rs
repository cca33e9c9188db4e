#![allow(dead_code)]

use std::collections::BTreeSet;

use lsclique::{LinkStream, StreamConfig, Time, TimedClique, VertexId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const L_STAR: &str = "1 5 a c\n3 5 b c\n3 7 a b\n";
pub const L1: &str = "2 4 a b\n2 4 a c\n1 5 b c\n1 11 c d\n";

/// Instantaneous stream with `n <= 10` vertices, `m <= 60` contacts at times
/// `<= 30`, and a delta in `0..=5`.
pub fn random_stream(seed: u64) -> LinkStream {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=10u32);
    let m = rng.gen_range(1..=60);
    let delta = rng.gen_range(0..=5);
    let mut text = String::new();
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let t = rng.gen_range(0..=30);
        text.push_str(&format!("{t} v{a} v{b}\n"));
    }
    LinkStream::parse(&text, &StreamConfig::instantaneous(delta)).unwrap()
}

/// Random interval stream whose link end times are pairwise distinct after merging.
pub fn random_distinct_end_stream(seed: u64) -> LinkStream {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    loop {
        let n = rng.gen_range(3..=10u32);
        let m = rng.gen_range(2..=40);
        let mut used = BTreeSet::new();
        let mut text = String::new();
        for _ in 0..m {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let begin: Time = rng.gen_range(0..=30);
            let mut end = begin + rng.gen_range(0..=5);
            while !used.insert(end) {
                end += 1;
            }
            text.push_str(&format!("{begin} {end} v{a} v{b}\n"));
        }
        let stream = LinkStream::from_interval_text(&text).unwrap();
        let ends: BTreeSet<Time> = stream.links().iter().map(|l| l.end).collect();
        if ends.len() == stream.m() {
            return stream;
        }
    }
}

pub fn labeled(stream: &LinkStream, cliques: &[TimedClique]) -> BTreeSet<(Time, Time, Vec<String>)> {
    cliques
        .iter()
        .map(|c| {
            let labels = c.labels(stream).into_iter().map(str::to_owned).collect();
            (c.t0, c.t1, labels)
        })
        .collect()
}

pub fn expect(items: &[(&[&str], Time, Time)]) -> BTreeSet<(Time, Time, Vec<String>)> {
    items
        .iter()
        .map(|(m, a, b)| (*a, *b, m.iter().map(|s| s.to_string()).collect()))
        .collect()
}

/// The link of `{a, b}` alive at `t`, if any.
fn covering(stream: &LinkStream, a: VertexId, b: VertexId, t: Time) -> Option<(Time, Time)> {
    let (u, v) = (a.min(b), a.max(b));
    stream
        .links()
        .iter()
        .find(|l| l.u == u && l.v == v && l.begin <= t && t <= l.end)
        .map(|l| (l.begin, l.end))
}

fn pairs(members: &[VertexId]) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    members
        .iter()
        .enumerate()
        .flat_map(move |(i, &a)| members[i + 1..].iter().map(move |&b| (a, b)))
}

/// Checks an emitted clique against the raw links, independently of any enumerator:
/// pairs covered over `[t0, t1]`, `t1` is the final time at `t0`, some pair begins
/// at `t0`, and no common neighbor keeps the final time.
pub fn certificate(stream: &LinkStream, c: &TimedClique) -> Result<(), String> {
    if c.members.len() < 2 || c.t1 < c.t0 {
        return Err(format!("degenerate clique {c:?}"));
    }
    let mut final_time = Time::MAX;
    let mut fresh = false;
    for (a, b) in pairs(&c.members) {
        let (begin, end) =
            covering(stream, a, b, c.t0).ok_or_else(|| format!("{a}-{b} not linked at t0 in {c:?}"))?;
        if end < c.t1 {
            return Err(format!("{a}-{b} not linked over [t0, t1] in {c:?}"));
        }
        final_time = final_time.min(end);
        fresh |= begin == c.t0;
    }
    if final_time != c.t1 {
        return Err(format!("t1 is not the final time in {c:?}"));
    }
    if !fresh {
        return Err(format!("no pair begins at t0 in {c:?}"));
    }
    for w in 0..stream.n() as VertexId {
        if c.members.contains(&w) {
            continue;
        }
        let ends: Option<Vec<Time>> = c
            .members
            .iter()
            .map(|&x| covering(stream, w, x, c.t0).map(|(_, e)| e))
            .collect();
        if let Some(ends) = ends {
            if ends.into_iter().all(|e| e >= c.t1) {
                return Err(format!("vertex {w} extends {c:?}"));
            }
        }
    }
    Ok(())
}

/// All small hand-built streams used as fixed vectors across the suites.
pub fn golden_streams() -> Vec<LinkStream> {
    [
        L_STAR,
        L1,
        "2 9 u v\n",
        "0 10 a b\n0 10 a c\n0 10 b c\n",
        "0 10 a b\n0 10 a d\n0 10 b c\n0 10 c d\n5 10 a c\n5 10 b d\n",
        "4 4 a b\n4 4 b c\n4 4 a c\n",
    ]
    .iter()
    .map(|t| LinkStream::from_interval_text(t).unwrap())
    .collect()
}

pub fn complete_stream(q: usize, begin: Time, end: Time) -> LinkStream {
    let labels: Vec<String> = (0..q).map(|i| format!("v{i}")).collect();
    let mut links = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            links.push((begin, end, labels[i].as_str(), labels[j].as_str()));
        }
    }
    LinkStream::from_labeled(links).unwrap()
}
