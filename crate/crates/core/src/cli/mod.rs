//! Command-line front end: `solve`, `bench`, `prob-study`, `heatmap` and
//! `barcode`.

mod bench;
mod reference;
mod study;

pub use bench::{
    run_bench, summarize, threads_from_env, BenchReport, BenchRun, BenchSpec, Generator, StartKind, Summary,
    SUMMARY_HEADER, THREADS_ENV,
};
pub use reference::{BestKnown, Reference};
pub use study::{prob_csv, prob_study, ProbBin, ProbStudySpec, PROB_HEADER};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::graph::{Instance, Tour};
use crate::io::{
    atsp_to_tsp, gap_pct, gen_euclidean, gen_nonmetric, greedy_decode, load_heatmap, round_ms, write_csv, write_json,
    AtspReduction, HeatmapFormat, ProblemType, RunRecord, TsplibFile,
};
use crate::localsearch::{run, Algorithm, SearchConfig, SearchStats};
use crate::rtdl::compute_barcode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "topo-tsp",
    version,
    about = "Barcode-guided local search for the travelling salesman problem"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Improve a start tour on one instance and print a run record.
    Solve(SolveArgs),
    /// Run several algorithms over many seeded trials.
    Bench(BenchArgs),
    /// Membership in the optimal tour by penalty rank bin.
    ProbStudy(ProbStudyArgs),
    /// Decode a heatmap greedily and optionally refine the tour.
    Heatmap(HeatmapArgs),
    /// Write the barcode of a tour as CSV.
    Barcode(BarcodeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Euclidean,
    Nonmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SourceArgs {
    /// TSPLIB file (TSP or ATSP).
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Random instance family.
    #[arg(long, value_enum, requires = "n")]
    pub gen: Option<GenKind>,
    /// Number of cities for --gen.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct TuningArgs {
    /// Barcode refresh period in improvements (default depends on size).
    #[arg(long)]
    pub freq: Option<usize>,
    /// Initial candidate window in tour positions.
    #[arg(long, default_value_t = 10)]
    pub granularity: usize,
    #[arg(long, default_value_t = 10)]
    pub batch_step: usize,
    /// Seconds per search.
    #[arg(long, default_value_t = 20.0)]
    pub time_limit: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iters: usize,
    /// Search on the potential-shifted distances.
    #[arg(long)]
    pub opt_d: bool,
}

impl TuningArgs {
    fn config(&self, algorithm: Algorithm, seed: u64) -> Result<SearchConfig> {
        let algorithm = if self.opt_d {
            algorithm
                .with_opt_d()
                .ok_or_else(|| anyhow!("--opt-d is not available for {algorithm}"))?
        } else {
            algorithm
        };
        let cfg = SearchConfig {
            algorithm,
            freq: self.freq,
            granularity: self.granularity,
            batch_step: self.batch_step,
            time_limit: self.time_limit,
            max_iters: self.max_iters,
            seed,
            ..SearchConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value = "2opt-rtdl")]
    pub algo: Algorithm,
    #[command(flatten)]
    pub tuning: TuningArgs,
    /// Start tour when --tour is absent.
    #[arg(long, value_enum, default_value_t = StartKind::Random)]
    pub start: StartKind,
    /// Start tour file: 0-based city indices separated by whitespace.
    #[arg(long)]
    pub tour: Option<PathBuf>,
    /// Reference for the gap: none, exact, bundled, or a best-known file.
    #[arg(long = "ref", default_value = "none")]
    pub reference: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write the record here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the final tour here.
    #[arg(long)]
    pub tour_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, conflicts_with_all = ["tsplib_dir", "heatmap_dir"])]
    pub gen: Option<GenKind>,
    /// Comma-separated instance sizes for --gen.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    pub sizes: Vec<usize>,
    #[arg(long, conflicts_with = "heatmap_dir")]
    pub tsplib_dir: Option<PathBuf>,
    #[arg(long)]
    pub heatmap_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "2opt,2opt-rtdl")]
    pub algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = StartKind::Random)]
    pub start: StartKind,
    #[command(flatten)]
    pub tuning: TuningArgs,
    #[arg(long = "ref", default_value = "none")]
    pub reference: String,
    /// Directory for runs.csv, runs.json, summary.csv and summary.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProbStudyArgs {
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Comma-separated 2-opt improvement caps.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    pub iters: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GenKind::Euclidean)]
    pub gen: GenKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Refine {
    None,
    #[value(name = "2opt")]
    TwoOpt,
    #[value(name = "2opt-rtdl")]
    TwoOptRtdl,
}

#[derive(Args, Debug)]
pub struct HeatmapArgs {
    /// Heatmap matrix file.
    #[arg(long)]
    pub heatmap: PathBuf,
    /// csv or f64le-bin; guessed from the extension when absent.
    #[arg(long)]
    pub heatmap_format: Option<String>,
    /// TSPLIB instance matching the heatmap.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Refine::TwoOptRtdl)]
    pub refine: Refine,
    #[command(flatten)]
    pub tuning: TuningArgs,
    #[arg(long = "ref", default_value = "none")]
    pub reference: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub tour_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BarcodeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = StartKind::Random)]
    pub start: StartKind,
    #[arg(long)]
    pub tour: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A loaded problem. Asymmetric files are solved through their reduction.
enum Problem {
    Symmetric(Instance),
    Asymmetric { name: String, reduction: AtspReduction },
}

impl Problem {
    fn instance(&self) -> &Instance {
        match self {
            Problem::Symmetric(i) => i,
            Problem::Asymmetric { reduction, .. } => &reduction.instance,
        }
    }

    fn name(&self) -> &str {
        match self {
            Problem::Symmetric(i) => i.name(),
            Problem::Asymmetric { name, .. } => name,
        }
    }

    /// Tour and length in terms of the original problem.
    fn report_tour(&self, tour: &Tour) -> Result<(Vec<usize>, f64)> {
        match self {
            Problem::Symmetric(_) => Ok((tour.order().to_vec(), tour.length())),
            Problem::Asymmetric { reduction, .. } => {
                let order = reduction.back_map(tour.order())?;
                let cost = reduction.atsp_cost(&order);
                Ok((order, cost))
            }
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn load_problem(src: &SourceArgs) -> Result<Problem> {
    match (&src.input, src.gen) {
        (Some(path), _) => {
            let file = TsplibFile::parse(&read_file(path)?).with_context(|| format!("parsing {}", path.display()))?;
            match file.problem_type {
                ProblemType::Tsp => Ok(Problem::Symmetric(file.to_instance()?)),
                ProblemType::Atsp => Ok(Problem::Asymmetric {
                    name: file.name.clone(),
                    reduction: atsp_to_tsp(file.dimension, &file.full_matrix()?)?,
                }),
            }
        }
        (None, Some(kind)) => {
            let n = src.n.ok_or_else(|| anyhow!("--gen needs --n"))?;
            Ok(Problem::Symmetric(match kind {
                GenKind::Euclidean => gen_euclidean(n, src.seed)?,
                GenKind::Nonmetric => gen_nonmetric(n, src.seed)?,
            }))
        }
        (None, None) => bail!("one of --input or --gen is required"),
    }
}

/// Reads a tour file: 0-based indices separated by whitespace, `#` starts
/// a comment.
pub fn read_tour(inst: &Instance, path: &Path) -> Result<Tour> {
    let text = String::from_utf8(read_file(path)?).context("tour file is not UTF-8")?;
    let mut order = Vec::new();
    for (k, line) in text.lines().enumerate() {
        for tok in line.split('#').next().unwrap_or("").split_whitespace() {
            order.push(
                tok.parse::<usize>()
                    .with_context(|| format!("{}:{}: invalid city '{tok}'", path.display(), k + 1))?,
            );
        }
    }
    Ok(Tour::new(inst, order)?)
}

pub fn write_tour(order: &[usize], path: &Path) -> Result<()> {
    let line: Vec<String> = order.iter().map(|c| c.to_string()).collect();
    std::fs::write(path, format!("{}\n", line.join(" "))).with_context(|| format!("writing {}", path.display()))
}

fn start_tour(inst: &Instance, tour: &Option<PathBuf>, start: StartKind, seed: u64) -> Result<Tour> {
    match tour {
        Some(path) => read_tour(inst, path),
        None => start.tour(inst, seed),
    }
}

fn emit_records(records: &[RunRecord], format: OutputFormat, out: &Option<PathBuf>) -> Result<()> {
    let mut buf = Vec::new();
    match format {
        OutputFormat::Csv => write_csv(records, &mut buf)?,
        OutputFormat::Json => write_json(records, &mut buf)?,
    }
    match out {
        Some(path) => std::fs::write(path, buf).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(&buf)?),
    }
}

fn reference_length(spec: &str, problem: &Problem) -> Result<Option<f64>> {
    let reference: Reference = spec.parse()?;
    match problem {
        Problem::Symmetric(inst) => reference.length_for(inst),
        Problem::Asymmetric { name, .. } => match reference {
            Reference::None => Ok(None),
            Reference::Exact => bail!("exact references are not available for ATSP inputs"),
            Reference::Table(t) => t
                .get(name)
                .map(Some)
                .ok_or_else(|| anyhow!("no reference length for instance '{name}'")),
        },
    }
}

fn record(name: &str, algo: &str, seed: u64, length: f64, stats: &SearchStats, reference: Option<f64>) -> RunRecord {
    RunRecord {
        instance: name.to_string(),
        algo: algo.to_string(),
        seed,
        length,
        time_s: round_ms(stats.wall_time),
        iterations: stats.iterations,
        trials: stats.trials,
        gap_pct: reference.map(|r| gap_pct(length, r)),
        hit_time_limit: stats.hit_time_limit,
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let problem = load_problem(&args.source)?;
    let inst = problem.instance();
    let seed = args.source.seed;
    eprintln!("# seed {seed}");
    let cfg = args.tuning.config(args.algo, seed)?;
    let reference = reference_length(&args.reference, &problem)?;
    let start = start_tour(inst, &args.tour, args.start, seed)?;
    let (tour, stats) = run(inst, &start, &cfg)?;
    let (order, length) = problem.report_tour(&tour)?;
    if let Some(path) = &args.tour_out {
        write_tour(&order, path)?;
    }
    let rec = record(problem.name(), cfg.algorithm.name(), seed, length, &stats, reference);
    emit_records(&[rec], args.format, &args.out)?;
    Ok(if stats.converged { EXIT_OK } else { EXIT_LIMIT })
}

fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    let generator = match (&args.tsplib_dir, &args.heatmap_dir, args.gen) {
        (Some(dir), _, _) => Generator::TsplibDir(dir.clone()),
        (_, Some(dir), _) => Generator::HeatmapDir(dir.clone()),
        (None, None, Some(GenKind::Euclidean)) => Generator::Euclidean {
            sizes: args.sizes.clone(),
        },
        (None, None, Some(GenKind::Nonmetric)) => Generator::Nonmetric {
            sizes: args.sizes.clone(),
        },
        (None, None, None) => bail!("one of --gen, --tsplib-dir or --heatmap-dir is required"),
    };
    eprintln!("# seed {}", args.seed);
    let mut algorithms = Vec::with_capacity(args.algos.len());
    for &a in &args.algos {
        algorithms.push(args.tuning.config(a, args.seed)?.algorithm);
    }
    let spec = BenchSpec {
        generator,
        trials: args.trials,
        algorithms,
        config: args.tuning.config(Algorithm::TwoOpt, args.seed)?,
        seed: args.seed,
        start: args.start,
        reference: args.reference.parse()?,
        threads: threads_from_env()?,
    };
    let report = run_bench(&spec)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let records = report.records();
        write_csv(&records, std::fs::File::create(dir.join("runs.csv"))?)?;
        write_json(&records, std::fs::File::create(dir.join("runs.json"))?)?;
        std::fs::write(dir.join("summary.csv"), report.summary_csv())?;
        let mut json = serde_json::to_string_pretty(&report.summaries)?;
        json.push('\n');
        std::fs::write(dir.join("summary.json"), json)?;
    }
    print!("{}", report.summary_csv());
    Ok(EXIT_OK)
}

fn cmd_prob_study(args: &ProbStudyArgs) -> Result<i32> {
    eprintln!("# seed {}", args.seed);
    let spec = ProbStudySpec {
        n: args.n,
        trials: args.trials,
        iters: args.iters.clone(),
        bins: args.bins,
        seed: args.seed,
        nonmetric: args.gen == GenKind::Nonmetric,
    };
    let csv = prob_csv(&prob_study(&spec)?);
    match &args.out {
        Some(path) => std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}

fn cmd_heatmap(args: &HeatmapArgs) -> Result<i32> {
    let inst = bench::load_tsplib(&args.input)?;
    let format = match &args.heatmap_format {
        Some(f) => f.parse::<HeatmapFormat>()?,
        None => HeatmapFormat::from_path(&args.heatmap),
    };
    let heatmap = load_heatmap(&args.heatmap, format).with_context(|| format!("loading {}", args.heatmap.display()))?;
    let reference = reference_length(&args.reference, &Problem::Symmetric(inst.clone()))?;

    let started = std::time::Instant::now();
    let initial = greedy_decode(&heatmap, &inst)?;
    let decode_stats = SearchStats {
        wall_time: started.elapsed().as_secs_f64(),
        final_length: initial.length(),
        converged: true,
        ..SearchStats::default()
    };
    let mut records = vec![record(
        inst.name(),
        "greedy",
        0,
        initial.length(),
        &decode_stats,
        reference,
    )];
    let mut final_tour = initial.clone();
    let mut code = EXIT_OK;
    let algo = match args.refine {
        Refine::None => None,
        Refine::TwoOpt => Some(Algorithm::TwoOpt),
        Refine::TwoOptRtdl => Some(Algorithm::TwoOptRtdl),
    };
    if let Some(algo) = algo {
        let cfg = args.tuning.config(algo, 0)?;
        let (tour, stats) = run(&inst, &initial, &cfg)?;
        records.push(record(
            inst.name(),
            &format!("greedy+{}", cfg.algorithm.name()),
            0,
            tour.length(),
            &stats,
            reference,
        ));
        if !stats.converged {
            code = EXIT_LIMIT;
        }
        final_tour = tour;
    }
    if let Some(path) = &args.tour_out {
        write_tour(final_tour.order(), path)?;
    }
    emit_records(&records, args.format, &args.out)?;
    Ok(code)
}

fn cmd_barcode(args: &BarcodeArgs) -> Result<i32> {
    let problem = load_problem(&args.source)?;
    let Problem::Symmetric(inst) = &problem else {
        bail!("barcodes are defined for symmetric instances only");
    };
    eprintln!("# seed {}", args.source.seed);
    let tour = start_tour(inst, &args.tour, args.start, args.source.seed)?;
    let barcode = compute_barcode(inst, &tour)?;
    match &args.out {
        Some(path) => barcode.write_csv(std::fs::File::create(path)?)?,
        None => barcode.write_csv(std::io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::ProbStudy(a) => cmd_prob_study(a),
        Command::Heatmap(a) => cmd_heatmap(a),
        Command::Barcode(a) => cmd_barcode(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
