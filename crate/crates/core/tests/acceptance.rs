//! Acceptance gate: prints one PASS/FAIL line per criterion. Failures are
//! reported but only fail the process when `LSCLIQUE_ACCEPTANCE_STRICT=1`, so
//! the rest of the workspace suite still runs.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lsclique::datasets::{self, Dataset};
use lsclique::{
    enumerate_to_vec, oracle_enumerate, parallel_enumerate, CliqueSearch, EnumCounters, EnumOptions,
    InstantCursor, LinkStream, TimedClique, Visit,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_micro_tests() -> Outcome {
    let star = LinkStream::from_interval_text(L_STAR).unwrap();
    let l1 = LinkStream::from_interval_text(L1).unwrap();
    let started = Instant::now();
    let (a, _) = enumerate_to_vec(&star, &EnumOptions::default());
    let (b, _) = enumerate_to_vec(&l1, &EnumOptions::default());
    let elapsed = started.elapsed();

    let want = expect(&[(&["a", "c"], 1, 5), (&["a", "b", "c"], 3, 5), (&["a", "b"], 3, 7)]);
    let got = labeled(&star, &a);
    ensure(got == want, || format!("L* gave {got:?}"))?;
    let bc = (3, 5, vec!["b".to_owned(), "c".to_owned()]);
    ensure(!got.contains(&bc), || "({b,c},[3,5]) emitted".into())?;
    let abc = (2, 4, vec!["a".to_owned(), "b".to_owned(), "c".to_owned()]);
    ensure(labeled(&l1, &b).contains(&abc), || "L1 lacks ({a,b,c},[2,4])".into())?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}"))?;
    Ok(format!("L* and L1 exact in {elapsed:?}"))
}

fn forbid_edges() -> Outcome {
    let s = LinkStream::from_interval_text("0 10 a b\n0 10 a d\n0 10 b c\n0 10 c d\n5 10 a c\n5 10 b d\n")
        .unwrap();
    let id = |l| s.id(l).unwrap();
    let mut cursor = InstantCursor::new(&s);
    cursor.advance_to(5).unwrap();
    let mut search = CliqueSearch::new(s.n(), &EnumOptions::with_pivot(false));
    search.begin_instant();

    let mut visits = Vec::new();
    for (u, v) in [("a", "c"), ("b", "d")] {
        let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
        search
            .run_seed(&cursor, id(u), id(v), &mut |visit: &Visit<'_>| {
                let mut names: Vec<String> = visit.clique.iter().map(|&x| s.label(x).to_owned()).collect();
                names.sort();
                seen.insert(names);
            })
            .map_err(|e| e.to_string())?;
        visits.push(seen);
    }
    let sets = |items: &[&str]| -> BTreeSet<Vec<String>> {
        items.iter().map(|w| w.chars().map(String::from).collect()).collect()
    };
    ensure(visits[0] == sets(&["ac", "abc", "acd", "abcd"]), || format!("seed a-c visited {:?}", visits[0]))?;
    ensure(visits[1] == sets(&["bd", "abd", "bcd"]), || format!("seed b-d visited {:?}", visits[1]))?;
    Ok("visit sets exact for both seeds".into())
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    for seed in 0..200 {
        let s = random_stream(seed);
        let oracle = oracle_enumerate(&s, false).map_err(|e| format!("seed {seed}: {e}"))?;
        for pivot in [true, false] {
            let (cliques, _) = enumerate_to_vec(&s, &EnumOptions::with_pivot(pivot));
            let set: BTreeSet<TimedClique> = cliques.iter().cloned().collect();
            ensure(set.len() == cliques.len(), || format!("seed {seed}: duplicate output"))?;
            ensure(set == oracle, || format!("seed {seed}, pivot {pivot}: differs from oracle"))?;
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("200 streams equal in both modes in {elapsed:.2?}"))
}

fn data_dir() -> PathBuf {
    std::env::var_os("LSCLIQUE_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn check_dataset(dataset: &Dataset, text: &str) -> Result<Vec<String>, String> {
    let mut rows = Vec::new();
    for r in dataset.references {
        let started = Instant::now();
        let s = datasets::parse_contact_list(text, r.delta).map_err(|e| e.to_string())?;
        let (_, c) = enumerate_to_vec(&s, &EnumOptions::default());
        let elapsed = started.elapsed();
        let got = (c.m, c.alpha, c.max_clique_size, c.max_degree);
        let want = (r.m, r.alpha, r.max_clique_size, r.max_degree);
        ensure(got == want, || {
            format!("{} delta {}: (m, alpha, q, d) = {got:?}, expected {want:?}", dataset.name, r.delta)
        })?;
        ensure(elapsed <= Duration::from_secs(5), || {
            format!("{} delta {} took {elapsed:?}", dataset.name, r.delta)
        })?;
        rows.push(format!("{} delta {} in {elapsed:.2?}", dataset.name, r.delta));
    }
    Ok(rows)
}

fn dataset_reproduction() -> Outcome {
    let dir = data_dir();
    let hypertext = datasets::find("hypertext").unwrap();
    let path = hypertext.locate(&dir).ok_or_else(|| {
        format!(
            "hypertext dataset not found in {} (expected one of {}; set LSCLIQUE_DATA_DIR)",
            dir.display(),
            hypertext.file_names.join(", ")
        )
    })?;
    let text = datasets::read_text(&path).map_err(|e| e.to_string())?;
    let mut rows = check_dataset(hypertext, &text)?;

    let highschool = datasets::find("highschool11").unwrap();
    match highschool.locate(&dir) {
        Some(path) => {
            let text = datasets::read_text(&path).map_err(|e| e.to_string())?;
            rows.extend(check_dataset(highschool, &text)?);
        }
        None => rows.push("highschool11 absent, skipped".into()),
    }
    Ok(rows.join("; "))
}

fn counter_law(c: &EnumCounters) -> Result<(), String> {
    ensure(c.alpha <= c.alpha_t, || format!("alpha > alpha_t in {c:?}"))?;
    ensure(c.m as u64 <= c.alpha_t, || format!("m > alpha_t in {c:?}"))?;
    ensure(c.leaves == c.leaves_max + c.leaves_not_max(), || format!("leaf split in {c:?}"))?;
    if c.m > 0 {
        // 1 <= 1/r <= 2^q, i.e. l_max <= l <= l_max * 2^q
        ensure(c.leaves_max >= 1 && c.leaves_max <= c.leaves, || format!("r > 1 in {c:?}"))?;
        ensure(c.leaves <= c.leaves_max << c.max_clique_size, || format!("1/r > 2^q in {c:?}"))?;
    }
    Ok(())
}

fn test_streams() -> Vec<LinkStream> {
    let mut streams = golden_streams();
    streams.extend((0..200).map(random_stream));
    streams.extend((0..50).map(random_distinct_end_stream));
    streams.extend((2..=10).map(|q| complete_stream(q, 0, 10)));
    streams
}

fn counter_laws() -> Outcome {
    let streams = test_streams();
    for (i, s) in streams.iter().enumerate() {
        for pivot in [true, false] {
            let (_, c) = enumerate_to_vec(s, &EnumOptions::with_pivot(pivot));
            counter_law(&c).map_err(|e| format!("stream {i}, pivot {pivot}: {e}"))?;
        }
    }
    Ok(format!("{} streams in both modes", streams.len()))
}

fn distinct_end_times() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..50 {
        let s = random_distinct_end_stream(seed);
        for pivot in [true, false] {
            let (_, c) = enumerate_to_vec(&s, &EnumOptions::with_pivot(pivot));
            if c.leaves != c.leaves_max {
                failures.push(format!("seed {seed} pivot {pivot}: r = {}/{}", c.leaves_max, c.leaves));
            }
        }
    }
    if failures.is_empty() {
        Ok("r = 1 on 50 streams in both modes".into())
    } else {
        Err(format!(
            "{} of 100 runs have r < 1, first: {}",
            failures.len(),
            failures[..failures.len().min(3)].join(", ")
        ))
    }
}

fn pivot_pruning() -> Outcome {
    let q = 10;
    let s = complete_stream(q, 0, 10);
    let started = Instant::now();
    let (with, cw) = enumerate_to_vec(&s, &EnumOptions::with_pivot(true));
    let (without, co) = enumerate_to_vec(&s, &EnumOptions::with_pivot(false));
    let elapsed = started.elapsed();
    for out in [&with, &without] {
        ensure(
            out.len() == 1 && out[0].members.len() == q && (out[0].t0, out[0].t1) == (0, 10),
            || format!("expected one clique (V, [0, 10]), got {out:?}"),
        )?;
    }
    let info = format!(
        "leaves without pivot {} (plain BK figure {}), with pivot {}; {elapsed:.2?}",
        co.leaves,
        (1u64 << (q - 1)) - 1,
        cw.leaves
    );
    ensure(elapsed < Duration::from_secs(1), || format!("too slow: {info}"))?;
    ensure(co.leaves >= 100 * cw.leaves, || format!("ratio {:.1} < 100: {info}", co.leaves as f64 / cw.leaves as f64))?;
    Ok(info)
}

fn parallel_determinism() -> Outcome {
    let mut streams = golden_streams();
    streams.extend((0..200).map(random_stream));
    for (i, s) in streams.iter().enumerate() {
        let (seq, sc) = enumerate_to_vec(s, &EnumOptions::default());
        let seq_set: BTreeSet<&TimedClique> = seq.iter().collect();
        for threads in [1, 2, 4, 8] {
            let run = parallel_enumerate(s, threads, &EnumOptions::default());
            let set: BTreeSet<&TimedClique> = run.cliques.iter().collect();
            ensure(set == seq_set && run.cliques.len() == seq.len(), || {
                format!("stream {i}, {threads} threads: clique set differs")
            })?;
            ensure((run.counters.alpha, run.counters.alpha_t) == (sc.alpha, sc.alpha_t), || {
                format!("stream {i}, {threads} threads: counters differ")
            })?;
        }
    }
    Ok(format!("{} streams, threads 1/2/4/8", streams.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 golden micro-tests", golden_micro_tests),
        ("2 forbidden edges", forbid_edges),
        ("3 oracle equivalence", oracle_equivalence),
        ("4 dataset reproduction", dataset_reproduction),
        ("5 counter laws", counter_laws),
        ("6 distinct end times give r = 1", distinct_end_times),
        ("7 pivot pruning effect", pivot_pruning),
        ("8 parallel determinism", parallel_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied()))));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    let strict = std::env::var("LSCLIQUE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failed == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
