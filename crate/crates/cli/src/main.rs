use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lsclique::datasets::{self, Dataset, Reference};
use lsclique::{
    enumerate_maximal_cliques, oracle_enumerate, parallel_enumerate, EnumCounters, EnumOptions,
    InputFormat, LinkStream, OracleError, StreamConfig, Time, TimedClique,
};
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Parser, Debug)]
#[command(name = "lsclique", version, about = "Enumerate the maximal cliques of a link stream")]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run on a public contact dataset and compare with its reference statistics.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Input link stream, one `b e u v` (interval) or `t u v` (instantaneous) per line.
    #[arg(required = true)]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_format, default_value = "interval")]
    format: InputFormat,
    /// Duration given to each contact (instantaneous format only).
    #[arg(long)]
    delta: Option<Time>,
    #[arg(long)]
    no_pivot: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Sort the output by (t0, t1, members).
    #[arg(long)]
    sorted: bool,
    /// Write enumeration counters as JSON.
    #[arg(long, value_name = "FILE")]
    stats: Option<PathBuf>,
    #[arg(short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
    /// Print the brute-force oracle's cliques instead.
    #[arg(long, conflicts_with_all = ["check", "stats"])]
    oracle: bool,
    /// Compare the enumerator with the brute-force oracle.
    #[arg(long)]
    check: bool,
    /// Run the oracle above its size guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Dataset name: hypertext, highschool11, hospital-ward or highschool12.
    dataset: String,
    /// Contact list to use instead of looking in the data directory.
    #[arg(long, conflicts_with = "url")]
    file: Option<PathBuf>,
    /// Download the contact list (gzipped if the URL ends in `.gz`).
    #[arg(long)]
    url: Option<String>,
    /// Directory searched for dataset files [default: $LSCLIQUE_DATA_DIR or ./data].
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Deltas to run [default: those with reference values].
    #[arg(long)]
    delta: Vec<Time>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[arg(long)]
    no_pivot: bool,
}

fn parse_format(s: &str) -> Result<InputFormat, String> {
    s.parse::<InputFormat>().map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) | CliError::Mismatch(_) => 1,
        }
    }
}

fn io_error(what: &Path, e: io::Error) -> CliError {
    CliError::Internal(format!("{}: {e}", what.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Some(Command::Bench(args)) => bench(&args),
        None => run(&cli.run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lsclique: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(args: &RunArgs) -> Result<(), CliError> {
    let input = args.input.as_deref().expect("input is required");
    let config = match (args.format, args.delta) {
        (InputFormat::Interval, Some(_)) => {
            return Err(CliError::Input("--delta only applies to --format instantaneous".into()))
        }
        (InputFormat::Interval, None) => StreamConfig::interval(),
        (InputFormat::Instantaneous, delta) => StreamConfig::instantaneous(delta.unwrap_or(0)),
    };
    let text = datasets::read_text(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let stream = LinkStream::parse(&text, &config)
        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;

    if args.oracle || args.check {
        // surface the size guard before doing any enumeration work
        let oracle = oracle_enumerate(&stream, args.force).map_err(|e| match e {
            OracleError::TooLarge { .. } => CliError::Input(format!("{e}; use --force to run it anyway")),
            other => CliError::Input(other.to_string()),
        })?;
        if args.oracle {
            let mut out = open_output(args.output.as_deref())?;
            let mut cliques: Vec<TimedClique> = oracle.into_iter().collect();
            if args.sorted {
                sort_canonical(&stream, &mut cliques);
            }
            for c in &cliques {
                write_clique(&mut out, &stream, c).map_err(|e| io_error(Path::new("output"), e))?;
            }
            return out.flush().map_err(|e| io_error(Path::new("output"), e));
        }
        let (cliques, counters, workers) = enumerate_all(&stream, args)?;
        if let Some(path) = &args.output {
            write_all(path, &stream, cliques.clone(), args.sorted)?;
        }
        if let Some(path) = &args.stats {
            write_stats(path, &counters, &workers)?;
        }
        let found: std::collections::BTreeSet<TimedClique> = cliques.into_iter().collect();
        if found == oracle {
            println!("oracle match: {} cliques", oracle.len());
            return Ok(());
        }
        let missing = oracle.difference(&found).count();
        let extra = found.difference(&oracle).count();
        return Err(CliError::Mismatch(format!(
            "oracle mismatch: {missing} missing, {extra} unexpected (oracle has {} cliques)",
            oracle.len()
        )));
    }

    let mut out = open_output(args.output.as_deref())?;
    let out_err = |e| io_error(args.output.as_deref().unwrap_or(Path::new("stdout")), e);
    let (counters, workers) = if args.threads == 1 && !args.sorted {
        // stream cliques straight to the output as they are found
        let mut failure = None;
        let counters = enumerate_maximal_cliques(&stream, &options(args), |c| {
            if failure.is_none() {
                failure = write_clique(&mut out, &stream, &c).err();
            }
        });
        if let Some(e) = failure {
            return Err(out_err(e));
        }
        let wall = counters.wall_time_secs;
        (counters, vec![wall])
    } else {
        let (mut cliques, counters, workers) = enumerate_all(&stream, args)?;
        if args.sorted {
            sort_canonical(&stream, &mut cliques);
        }
        for c in &cliques {
            write_clique(&mut out, &stream, c).map_err(out_err)?;
        }
        (counters, workers)
    };
    out.flush().map_err(out_err)?;
    if let Some(path) = &args.stats {
        write_stats(path, &counters, &workers)?;
    }
    Ok(())
}

fn options(args: &RunArgs) -> EnumOptions {
    EnumOptions::with_pivot(!args.no_pivot)
}

fn enumerate_all(
    stream: &LinkStream,
    args: &RunArgs,
) -> Result<(Vec<TimedClique>, EnumCounters, Vec<f64>), CliError> {
    let run = parallel_enumerate(stream, args.threads as usize, &options(args));
    Ok((run.cliques, run.counters, run.worker_wall_times))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_all(path: &Path, stream: &LinkStream, mut cliques: Vec<TimedClique>, sorted: bool) -> Result<(), CliError> {
    if sorted {
        sort_canonical(stream, &mut cliques);
    }
    let mut out = open_output(Some(path))?;
    for c in &cliques {
        write_clique(&mut out, stream, c).map_err(|e| io_error(path, e))?;
    }
    out.flush().map_err(|e| io_error(path, e))
}

fn sort_canonical(stream: &LinkStream, cliques: &mut [TimedClique]) {
    cliques.sort_by_cached_key(|c| {
        let labels: Vec<String> = c.labels(stream).into_iter().map(str::to_owned).collect();
        (c.t0, c.t1, labels)
    });
}

fn write_clique(out: &mut dyn Write, stream: &LinkStream, c: &TimedClique) -> io::Result<()> {
    write!(out, "{} {}", c.t0, c.t1)?;
    for label in c.labels(stream) {
        write!(out, " {label}")?;
    }
    writeln!(out)
}

#[derive(Serialize)]
struct Stats<'a> {
    n: usize,
    m: usize,
    distinct_instants: usize,
    max_degree: usize,
    max_clique_size: usize,
    alpha: u64,
    alpha_t: u64,
    leaves: u64,
    leaves_max: u64,
    r: &'a RawValue,
    wall_time_secs: f64,
    worker_wall_time_secs: &'a [f64],
}

fn stats_json(counters: &EnumCounters, workers: &[f64]) -> String {
    let r = format!("{:.6}", counters.ratio());
    let r = RawValue::from_string(r).expect("a fixed-point number is valid JSON");
    let stats = Stats {
        n: counters.n,
        m: counters.m,
        distinct_instants: counters.distinct_instants,
        max_degree: counters.max_degree,
        max_clique_size: counters.max_clique_size,
        alpha: counters.alpha,
        alpha_t: counters.alpha_t,
        leaves: counters.leaves,
        leaves_max: counters.leaves_max,
        r: &r,
        wall_time_secs: counters.wall_time_secs,
        worker_wall_time_secs: workers,
    };
    serde_json::to_string_pretty(&stats).expect("stats serialize")
}

fn write_stats(path: &Path, counters: &EnumCounters, workers: &[f64]) -> Result<(), CliError> {
    let mut json = stats_json(counters, workers);
    json.push('\n');
    std::fs::write(path, json).map_err(|e| io_error(path, e))
}

fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let dataset = datasets::find(&args.dataset);
    if dataset.is_none() && args.file.is_none() && args.url.is_none() {
        let known: Vec<&str> = datasets::DATASETS.iter().map(|d| d.name).collect();
        return Err(CliError::Input(format!(
            "unknown dataset {:?} (known: {})",
            args.dataset,
            known.join(", ")
        )));
    }
    let text = load_dataset(args, dataset)?;

    let references: &[Reference] = dataset.map_or(&[], |d| d.references);
    let deltas: Vec<Time> = if args.delta.is_empty() {
        references.iter().map(|r| r.delta).collect()
    } else {
        args.delta.clone()
    };
    if deltas.is_empty() {
        return Err(CliError::Input("no reference values for this dataset; pass --delta".into()));
    }

    println!(
        "{:<14} {:>6} {:>15} {:>11} {:>15} {:>9} {:>9}",
        "dataset", "delta", "m", "d", "alpha", "q", "secs"
    );
    let mut mismatches = 0;
    for delta in deltas {
        let started = Instant::now();
        let stream = datasets::parse_contact_list(&text, delta).map_err(|e| CliError::Input(e.to_string()))?;
        let opts = EnumOptions::with_pivot(!args.no_pivot);
        let counters = parallel_enumerate(&stream, args.threads as usize, &opts).counters;
        let secs = started.elapsed().as_secs_f64();
        let reference = references.iter().find(|r| r.delta == delta);
        let cell = |got: u64, want: Option<u64>| match want {
            Some(w) if w == got => format!("{got} (=)"),
            Some(w) => format!("{got} ({w})"),
            None => got.to_string(),
        };
        println!(
            "{:<14} {:>6} {:>15} {:>11} {:>15} {:>9} {:>9.3}",
            args.dataset,
            delta,
            cell(counters.m as u64, reference.map(|r| r.m as u64)),
            cell(counters.max_degree as u64, reference.map(|r| r.max_degree as u64)),
            cell(counters.alpha, reference.map(|r| r.alpha)),
            cell(counters.max_clique_size as u64, reference.map(|r| r.max_clique_size as u64)),
            secs
        );
        if let Some(r) = reference {
            let got = (counters.m, counters.max_degree, counters.alpha, counters.max_clique_size);
            mismatches += usize::from(got != (r.m, r.max_degree, r.alpha, r.max_clique_size));
        }
    }
    if mismatches > 0 {
        return Err(CliError::Mismatch(format!("{mismatches} row(s) differ from the reference")));
    }
    Ok(())
}

fn load_dataset(args: &BenchArgs, dataset: Option<&Dataset>) -> Result<String, CliError> {
    if let Some(url) = &args.url {
        let bytes = download(url).map_err(|e| CliError::Input(format!("{url}: {e}")))?;
        let gz = url.ends_with(".gz") || bytes.starts_with(&[0x1f, 0x8b]);
        return datasets::decode(&bytes, gz).map_err(|e| CliError::Input(format!("{url}: {e}")));
    }
    let path = match (&args.file, dataset) {
        (Some(p), _) => p.clone(),
        (None, Some(d)) => {
            let dir = args
                .data_dir
                .clone()
                .or_else(|| std::env::var_os("LSCLIQUE_DATA_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("data"));
            d.locate(&dir).ok_or_else(|| {
                CliError::Input(format!(
                    "dataset {} not found in {} (looked for {}); use --file or --url",
                    d.name,
                    dir.display(),
                    d.file_names.join(", ")
                ))
            })?
        }
        (None, None) => unreachable!("checked by the caller"),
    };
    datasets::read_text(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn download(url: &str) -> Result<Vec<u8>, ureq::Error> {
    ureq::get(url)
        .call()?
        .body_mut()
        .with_config()
        .limit(1 << 30)
        .read_to_vec()
}
