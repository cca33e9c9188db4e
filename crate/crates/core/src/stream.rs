//! Link streams: parsing, normalization and the vertex table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer time instant. Accepted values fit in 63 bits.
pub type Time = u64;

/// Dense interned vertex identifier.
pub type VertexId = u32;

/// Largest timestamp accepted on input (2^63 - 1).
pub const MAX_TIME: Time = i64::MAX as Time;

/// One undirected link: `u` and `v` interact during the closed interval `[begin, end]`.
///
/// Links built with [`Link::new`] always store the smaller id in `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Link {
    pub begin: Time,
    pub end: Time,
    pub u: VertexId,
    pub v: VertexId,
}

impl Link {
    pub fn new(begin: Time, end: Time, a: VertexId, b: VertexId) -> Self {
        debug_assert!(end >= begin);
        debug_assert_ne!(a, b);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Link { begin, end, u, v }
    }

    /// Whether the link exists at instant `t`.
    pub fn alive_at(&self, t: Time) -> bool {
        self.begin <= t && t <= self.end
    }

    fn pair(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    fn stream_order(&self) -> (Time, VertexId, VertexId, Time) {
        (self.begin, self.u, self.v, self.end)
    }
}

/// Bidirectional mapping between vertex labels and dense ids, in first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexTable {
    labels: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl VertexTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = VertexId::try_from(self.labels.len()).expect("vertex id space exhausted");
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.labels[id as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// `b e u v` per line.
    Interval,
    /// `t u v` per line, expanded to `(t, t + delta, u, v)`.
    Instantaneous,
}

impl InputFormat {
    fn token_count(self) -> usize {
        match self {
            InputFormat::Interval => 4,
            InputFormat::Instantaneous => 3,
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Interval => "interval",
            InputFormat::Instantaneous => "instantaneous",
        })
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interval" => Ok(InputFormat::Interval),
            "instantaneous" => Ok(InputFormat::Instantaneous),
            other => Err(format!("unknown input format {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamConfig {
    /// Duration given to each instantaneous link. Ignored for interval input.
    pub delta: Time,
    pub format: InputFormat,
}

impl StreamConfig {
    pub fn interval() -> Self {
        StreamConfig {
            delta: 0,
            format: InputFormat::Interval,
        }
    }

    pub fn instantaneous(delta: Time) -> Self {
        StreamConfig {
            delta,
            format: InputFormat::Instantaneous,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected} tokens, found {found}")]
    TokenCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid timestamp {token:?} (expected an integer in [0, 2^63))")]
    BadTimestamp { line: usize, token: String },
    #[error("line {line}: self-loop on vertex {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: end time {end} precedes begin time {begin}")]
    EndBeforeBegin { line: usize, begin: Time, end: Time },
    #[error("line {line}: timestamp overflow adding delta {delta} to {time}")]
    Overflow { line: usize, time: Time, delta: Time },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::TokenCount { line, .. }
            | ParseError::BadTimestamp { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::EndBeforeBegin { line, .. }
            | ParseError::Overflow { line, .. } => line,
        }
    }
}

/// Parsed but not yet merged links, with the labels they were interned from.
#[derive(Clone, Debug, Default)]
pub struct RawLinks {
    pub links: Vec<Link>,
    pub vertices: VertexTable,
}

impl RawLinks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a labeled link, validating it like a parsed line numbered `line`.
    pub fn push_labeled(
        &mut self,
        line: usize,
        begin: Time,
        end: Time,
        a: &str,
        b: &str,
    ) -> Result<(), ParseError> {
        for time in [begin, end] {
            if time > MAX_TIME {
                return Err(ParseError::BadTimestamp {
                    line,
                    token: time.to_string(),
                });
            }
        }
        if a == b {
            return Err(ParseError::SelfLoop {
                line,
                label: a.to_owned(),
            });
        }
        if end < begin {
            return Err(ParseError::EndBeforeBegin { line, begin, end });
        }
        let u = self.vertices.intern(a);
        let v = self.vertices.intern(b);
        self.links.push(Link::new(begin, end, u, v));
        Ok(())
    }
}

fn parse_time(line: usize, token: &str) -> Result<Time, ParseError> {
    token
        .parse::<Time>()
        .ok()
        .filter(|&t| t <= MAX_TIME)
        .ok_or_else(|| ParseError::BadTimestamp {
            line,
            token: token.to_owned(),
        })
}

/// Parses line-oriented link text. Blank lines and lines starting with `#` are skipped.
pub fn parse_links(text: &str, config: &StreamConfig) -> Result<RawLinks, ParseError> {
    let expected = config.format.token_count();
    let mut raw = RawLinks::new();
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != expected {
            return Err(ParseError::TokenCount {
                line: line_no,
                expected,
                found: tokens.len(),
            });
        }
        let (begin, end, a, b) = match config.format {
            InputFormat::Interval => {
                let begin = parse_time(line_no, tokens[0])?;
                let end = parse_time(line_no, tokens[1])?;
                (begin, end, tokens[2], tokens[3])
            }
            InputFormat::Instantaneous => {
                let time = parse_time(line_no, tokens[0])?;
                let end = time
                    .checked_add(config.delta)
                    .filter(|&e| e <= MAX_TIME)
                    .ok_or(ParseError::Overflow {
                        line: line_no,
                        time,
                        delta: config.delta,
                    })?;
                (time, end, tokens[1], tokens[2])
            }
        };
        raw.push_labeled(line_no, begin, end, a, b)?;
    }
    Ok(raw)
}

/// Merges, per vertex pair, every group of links whose intervals intersect or touch,
/// and sorts the result by `(begin, u, v)`.
pub fn normalize_links(mut links: Vec<Link>) -> Vec<Link> {
    links.sort_unstable_by_key(|l| (l.pair(), l.begin, l.end));
    let mut merged: Vec<Link> = Vec::with_capacity(links.len());
    for link in links {
        match merged.last_mut() {
            Some(last) if last.pair() == link.pair() && link.begin <= last.end => {
                last.end = last.end.max(link.end);
            }
            _ => merged.push(link),
        }
    }
    merged.sort_unstable_by_key(Link::stream_order);
    merged
}

pub fn normalize(raw: RawLinks) -> LinkStream {
    LinkStream {
        links: normalize_links(raw.links),
        vertices: raw.vertices,
    }
}

/// A simple link stream: per vertex pair, link intervals are pairwise disjoint.
/// Links are sorted by `(begin, u, v)`. Immutable once built.
#[derive(Clone, Debug, Default)]
pub struct LinkStream {
    links: Vec<Link>,
    vertices: VertexTable,
}

impl LinkStream {
    /// Builds a stream from links over `vertices`, normalizing them.
    pub fn new(links: Vec<Link>, vertices: VertexTable) -> Self {
        assert!(
            links
                .iter()
                .all(|l| (l.v as usize) < vertices.len() && l.u < l.v && l.end >= l.begin),
            "links must be canonical and reference interned vertices"
        );
        normalize(RawLinks { links, vertices })
    }

    pub fn parse(text: &str, config: &StreamConfig) -> Result<Self, ParseError> {
        parse_links(text, config).map(normalize)
    }

    pub fn from_interval_text(text: &str) -> Result<Self, ParseError> {
        Self::parse(text, &StreamConfig::interval())
    }

    /// Builds a stream from `(begin, end, u, v)` tuples with string labels.
    pub fn from_labeled<'a, I>(links: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = (Time, Time, &'a str, &'a str)>,
    {
        let mut raw = RawLinks::new();
        for (i, (b, e, u, v)) in links.into_iter().enumerate() {
            raw.push_labeled(i + 1, b, e, u, v)?;
        }
        Ok(normalize(raw))
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn vertices(&self) -> &VertexTable {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.vertices.id(label)
    }

    pub fn label(&self, id: VertexId) -> &str {
        self.vertices.label(id)
    }

    /// `[min begin, max end]`, or `None` for an empty stream.
    pub fn horizon(&self) -> Option<(Time, Time)> {
        let first = self.links.first()?.begin;
        let last = self.links.iter().map(|l| l.end).max()?;
        Some((first, last))
    }

    /// Index of the first link whose begin time is `>= t`.
    pub fn first_link_at_or_after(&self, t: Time) -> usize {
        self.links.partition_point(|l| l.begin < t)
    }

    /// Number of distinct instants at which some link begins or ends, within `[lo, hi)`.
    pub fn distinct_instants_in(&self, lo: Time, hi: Time) -> usize {
        let mut instants: Vec<Time> = self
            .links
            .iter()
            .flat_map(|l| [l.begin, l.end])
            .filter(|&t| lo <= t && t < hi)
            .collect();
        instants.sort_unstable();
        instants.dedup();
        instants.len()
    }

    pub fn distinct_instants(&self) -> usize {
        self.distinct_instants_in(0, Time::MAX)
    }

    /// Serializes as interval text, one `b e u v` line per link in stream order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.links {
            out.push_str(&format!(
                "{} {} {} {}\n",
                l.begin,
                l.end,
                self.label(l.u),
                self.label(l.v)
            ));
        }
        out
    }

    /// Links keyed by labels instead of ids, with each label pair ordered bytewise.
    pub fn labeled_links(&self) -> BTreeSet<(Time, Time, &str, &str)> {
        self.links
            .iter()
            .map(|l| {
                let (a, b) = (self.label(l.u), self.label(l.v));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (l.begin, l.end, a, b)
            })
            .collect()
    }

    /// Same links over the same labels, regardless of how the labels were interned.
    pub fn equivalent(&self, other: &LinkStream) -> bool {
        self.m() == other.m() && self.labeled_links() == other.labeled_links()
    }
}
