//! Parallel enumeration over contiguous ranges of begin times.
//!
//! Cliques are keyed by their start instant, so ranges that never split an
//! instant partition the output. Each worker rebuilds `G_t` at its range start
//! from the links still alive there and sweeps its own range.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_maximal_cliques, EnumCounters, EnumOptions, TimedClique};
use crate::stream::{LinkStream, Time};

/// Half-open ranges `[boundaries[i], boundaries[i + 1])` of begin times.
///
/// Boundaries are nondecreasing; an empty range has equal bounds. The last bound
/// is `Time::MAX`, standing for +∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub boundaries: Vec<Time>,
    /// Links beginning in each range.
    pub counts: Vec<usize>,
}

impl SplitPlan {
    pub fn ranges(&self) -> impl Iterator<Item = (Time, Time)> + '_ {
        self.boundaries.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Splits the begin times of `stream` into `threads` ranges holding roughly
/// `m / threads` starting links each, cutting only between distinct instants.
pub fn split_intervals(stream: &LinkStream, threads: usize) -> SplitPlan {
    assert!(threads >= 1, "at least one range is required");
    let links = stream.links();
    let m = links.len();

    // positions where an instant starts, plus m
    let mut cuts: Vec<usize> = (0..m)
        .filter(|&i| i == 0 || links[i - 1].begin != links[i].begin)
        .collect();
    cuts.push(m);

    let mut positions = Vec::with_capacity(threads + 1);
    positions.push(0);
    for i in 1..threads {
        let target = i * m; // scaled by `threads`
        let after = cuts.partition_point(|&c| c * threads < target);
        let mut best = cuts[after.min(cuts.len() - 1)];
        if after > 0 {
            let before = cuts[after - 1];
            if target - before * threads <= best * threads - target {
                best = before;
            }
        }
        let prev = *positions.last().unwrap();
        positions.push(best.max(prev));
    }
    positions.push(m);

    let time_at = |pos: usize| links.get(pos).map_or(Time::MAX, |l| l.begin);
    let mut boundaries: Vec<Time> = positions.iter().map(|&p| time_at(p)).collect();
    boundaries[threads] = Time::MAX;
    if m == 0 {
        boundaries[0] = Time::MAX;
    }
    let counts = positions.windows(2).map(|w| w[1] - w[0]).collect();
    SplitPlan { boundaries, counts }
}

/// Output of a parallel run. Cliques are concatenated in range order.
#[derive(Clone, Debug)]
pub struct ParallelRun {
    pub cliques: Vec<TimedClique>,
    pub counters: EnumCounters,
    pub plan: SplitPlan,
    pub worker_wall_times: Vec<f64>,
}

/// Enumerates with one worker per range of [`split_intervals`]. Any
/// `options.begin_range` is replaced by the per-worker ranges.
pub fn parallel_enumerate(stream: &LinkStream, threads: usize, options: &EnumOptions) -> ParallelRun {
    let started = Instant::now();
    let plan = split_intervals(stream, threads);

    let results: Vec<(Vec<TimedClique>, EnumCounters)> = std::thread::scope(|scope| {
        let handles: Vec<_> = plan
            .ranges()
            .zip(&plan.counts)
            .map(|(range, &count)| {
                let worker_options = EnumOptions {
                    begin_range: Some(range),
                    ..options.clone()
                };
                (count > 0).then(|| {
                    scope.spawn(move || {
                        let mut cliques = Vec::new();
                        let counters =
                            enumerate_maximal_cliques(stream, &worker_options, |c| cliques.push(c));
                        (cliques, counters)
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| match h {
                Some(h) => h.join().expect("enumeration worker panicked"),
                None => (
                    Vec::new(),
                    EnumCounters {
                        n: stream.n(),
                        ..EnumCounters::default()
                    },
                ),
            })
            .collect()
    });

    let mut counters = EnumCounters {
        n: stream.n(),
        ..EnumCounters::default()
    };
    let mut cliques = Vec::new();
    let mut worker_wall_times = Vec::with_capacity(results.len());
    for (part, c) in results {
        counters.merge(&c);
        worker_wall_times.push(c.wall_time_secs);
        cliques.extend(part);
    }
    counters.wall_time_secs = started.elapsed().as_secs_f64();
    ParallelRun {
        cliques,
        counters,
        plan,
        worker_wall_times,
    }
}
