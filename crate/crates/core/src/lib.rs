//! Enumeration of maximal cliques in link streams.
//!
//! A link stream is a set of undirected links `(b, e, u, v)`, each stating
//! that `u` and `v` interact during the whole closed interval `[b, e]`.
//! A clique `(C, [t0, t1])` is a vertex set whose pairs are all linked over
//! `[t0, t1]`; it is maximal when neither the interval nor the vertex set
//! can be enlarged.
//!
//! The enumerator sweeps the begin times of the stream. At each instant `t`
//! it runs a restricted Bron–Kerbosch search in the instantaneous graph
//! `G_t`, seeded by every link starting at `t`, and keeps the cliques that
//! cannot absorb another vertex without shortening their interval.
//!
//! ```
//! use lsclique::{enumerate_to_vec, EnumOptions, LinkStream};
//!
//! let stream = LinkStream::from_interval_text("1 5 a c\n3 5 b c\n3 7 a b\n").unwrap();
//! let (cliques, counters) = enumerate_to_vec(&stream, &EnumOptions::default());
//! assert_eq!(cliques.len(), 3);
//! assert_eq!(counters.alpha, 3);
//! ```

pub mod datasets;
pub mod enumerate;
pub mod instant;
pub mod oracle;
pub mod parallel;
pub mod stream;

pub use enumerate::{
    choose_pivot, enumerate_maximal_cliques, enumerate_to_vec, vertex_maximal, Candidate, CliqueSearch,
    EnumCounters, EnumFrame, EnumOptions, TimedClique, Visit,
};
pub use instant::{CursorError, InstantCursor, Neighbor};
pub use oracle::{oracle_enumerate, OracleError, OracleLimits};
pub use parallel::{parallel_enumerate, split_intervals, ParallelRun, SplitPlan};
pub use stream::{
    normalize, parse_links, InputFormat, Link, LinkStream, ParseError, RawLinks, StreamConfig,
    Time, VertexId, VertexTable, MAX_TIME,
};
