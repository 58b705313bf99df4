use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use super::reference::Reference;
use crate::graph::{nearest_neighbor_tour, random_tour, Instance, Tour};
use crate::io::{
    gap_pct, gen_euclidean, gen_nonmetric, greedy_decode, load_heatmap, parse_tsplib, round_ms, HeatmapFormat,
    RunRecord,
};
use crate::localsearch::{run, Algorithm, SearchConfig};

/// Environment variable capping the number of concurrent trials.
pub const THREADS_ENV: &str = "TOPO_TSP_THREADS";

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Euclidean {
        sizes: Vec<usize>,
    },
    Nonmetric {
        sizes: Vec<usize>,
    },
    /// Every `*.tsp` file in the directory.
    TsplibDir(PathBuf),
    /// Every `*.tsp` file with a heatmap of the same stem (`.csv` or
    /// `.hmap`); the start tour is the greedy decode.
    HeatmapDir(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StartKind {
    Random,
    #[value(name = "nn")]
    NearestNeighbor,
}

impl StartKind {
    pub fn tour(self, inst: &Instance, seed: u64) -> Result<Tour> {
        Ok(match self {
            StartKind::Random => random_tour(inst, seed),
            StartKind::NearestNeighbor => nearest_neighbor_tour(inst, None, seed)?,
        })
    }
}

/// A benchmark: instances, trials per instance, algorithms and settings.
#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub generator: Generator,
    pub trials: usize,
    pub algorithms: Vec<Algorithm>,
    /// Settings shared by all algorithms; the algorithm field is ignored.
    pub config: SearchConfig,
    /// Trial `t` uses seed `seed + t` for its instance and start tour.
    pub seed: u64,
    pub start: StartKind,
    pub reference: Reference,
    pub threads: Option<usize>,
}

impl BenchSpec {
    pub fn new(generator: Generator, trials: usize, algorithms: Vec<Algorithm>) -> Self {
        BenchSpec {
            generator,
            trials,
            algorithms,
            config: SearchConfig::default(),
            seed: 0,
            start: StartKind::Random,
            reference: Reference::None,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.algorithms.is_empty() {
            bail!("at least one algorithm is required");
        }
        if let Generator::Euclidean { sizes } | Generator::Nonmetric { sizes } = &self.generator {
            if sizes.is_empty() {
                bail!("at least one size is required");
            }
        }
        self.config.validate()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRun {
    /// Size label for generated instances, instance name otherwise.
    pub group: String,
    pub record: RunRecord,
    pub trials_per_iter: Vec<u64>,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub group: String,
    pub algo: String,
    pub runs: usize,
    pub mean_length: f64,
    pub mean_time_s: f64,
    /// Mean over runs with at least one improvement of their average
    /// number of trials per improvement.
    pub mean_trials_per_iter: Option<f64>,
    pub mean_gap_pct: Option<f64>,
    /// Share of runs more than 10% above the reference.
    pub gap_over_10_rate: Option<f64>,
    pub time_limit_rate: f64,
    /// Entry `k` averages the trials spent on improvement `k` over the runs
    /// that made at least `k + 1` improvements.
    pub trials_per_iter_series: Vec<f64>,
}

pub const SUMMARY_HEADER: &str =
    "group,algo,runs,mean_length,mean_time_s,mean_trials_per_iter,mean_gap_pct,gap_over_10_rate,time_limit_rate";

impl Summary {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.group,
            self.algo,
            self.runs,
            self.mean_length,
            self.mean_time_s,
            opt(self.mean_trials_per_iter),
            opt(self.mean_gap_pct),
            opt(self.gap_over_10_rate),
            self.time_limit_rate
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub runs: Vec<BenchRun>,
    pub summaries: Vec<Summary>,
}

impl BenchReport {
    pub fn records(&self) -> Vec<RunRecord> {
        self.runs.iter().map(|r| r.record.clone()).collect()
    }

    pub fn summary_csv(&self) -> String {
        let mut s = format!("{SUMMARY_HEADER}\n");
        for row in &self.summaries {
            s.push_str(&row.csv_row());
            s.push('\n');
        }
        s
    }
}

struct Job {
    group: String,
    trial_seed: u64,
    instance: Instance,
    start: Tour,
}

fn tsp_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("tsp")))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .tsp files in {}", dir.display());
    }
    Ok(files)
}

pub(crate) fn load_tsplib(path: &Path) -> Result<Instance> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tsplib(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn heatmap_for(tsp: &Path) -> Option<PathBuf> {
    ["csv", "hmap"]
        .iter()
        .map(|ext| tsp.with_extension(ext))
        .find(|p| p.exists())
}

fn build_jobs(spec: &BenchSpec) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let seeds = (0..spec.trials as u64).map(|t| spec.seed.wrapping_add(t));
    match &spec.generator {
        Generator::Euclidean { sizes } | Generator::Nonmetric { sizes } => {
            let euclid = matches!(spec.generator, Generator::Euclidean { .. });
            for &n in sizes {
                for s in seeds.clone() {
                    let instance = if euclid {
                        gen_euclidean(n, s)?
                    } else {
                        gen_nonmetric(n, s)?
                    };
                    let start = spec.start.tour(&instance, s)?;
                    let group = format!("{}-{n}", if euclid { "euclidean" } else { "nonmetric" });
                    jobs.push(Job {
                        group,
                        trial_seed: s,
                        instance,
                        start,
                    });
                }
            }
        }
        Generator::TsplibDir(dir) => {
            for path in tsp_files(dir)? {
                let instance = load_tsplib(&path)?;
                for s in seeds.clone() {
                    jobs.push(Job {
                        group: instance.name().to_string(),
                        trial_seed: s,
                        start: spec.start.tour(&instance, s)?,
                        instance: instance.clone(),
                    });
                }
            }
        }
        Generator::HeatmapDir(dir) => {
            for path in tsp_files(dir)? {
                let Some(hm_path) = heatmap_for(&path) else { continue };
                let instance = load_tsplib(&path)?;
                let heatmap = load_heatmap(&hm_path, HeatmapFormat::from_path(&hm_path))
                    .with_context(|| format!("loading {}", hm_path.display()))?;
                let start = greedy_decode(&heatmap, &instance)?;
                for s in seeds.clone() {
                    jobs.push(Job {
                        group: instance.name().to_string(),
                        trial_seed: s,
                        start: start.clone(),
                        instance: instance.clone(),
                    });
                }
            }
            if jobs.is_empty() {
                bail!("no instance with a matching heatmap in {}", dir.display());
            }
        }
    }
    Ok(jobs)
}

fn run_job(spec: &BenchSpec, job: &Job) -> Result<Vec<BenchRun>> {
    let reference = spec.reference.length_for(&job.instance)?;
    spec.algorithms
        .iter()
        .map(|&algo| {
            let mut cfg = spec.config.clone();
            cfg.algorithm = algo;
            cfg.seed = job.trial_seed;
            let (tour, stats) = run(&job.instance, &job.start, &cfg)?;
            Ok(BenchRun {
                group: job.group.clone(),
                record: RunRecord {
                    instance: job.instance.name().to_string(),
                    algo: algo.name().to_string(),
                    seed: job.trial_seed,
                    length: tour.length(),
                    time_s: round_ms(stats.wall_time),
                    iterations: stats.iterations,
                    trials: stats.trials,
                    gap_pct: reference.map(|r| gap_pct(tour.length(), r)),
                    hit_time_limit: stats.hit_time_limit,
                },
                trials_per_iter: stats.trials_per_iter,
                converged: stats.converged,
            })
        })
        .collect()
}

/// Thread count from `TOPO_TSP_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => bail!("{THREADS_ENV} must be a positive integer, got '{v}'"),
        },
        Err(_) => Ok(None),
    }
}

/// Runs every trial and aggregates per group and algorithm. Results do
/// not depend on the thread count.
pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport> {
    spec.validate()?;
    let jobs = build_jobs(spec)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = spec.threads {
        pool = pool.num_threads(k);
    }
    let pool = pool.build()?;
    let per_job: Vec<Vec<BenchRun>> =
        pool.install(|| jobs.par_iter().map(|job| run_job(spec, job)).collect::<Result<_>>())?;
    let runs: Vec<BenchRun> = per_job.into_iter().flatten().collect();
    let summaries = summarize(&runs);
    Ok(BenchReport { runs, summaries })
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub fn summarize(runs: &[BenchRun]) -> Vec<Summary> {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in runs {
        let key = (r.group.as_str(), r.record.algo.as_str());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(group, algo)| {
            let sel: Vec<&BenchRun> = runs
                .iter()
                .filter(|r| r.group == group && r.record.algo == algo)
                .collect();
            let k = sel.len() as f64;
            let gaps: Vec<f64> = sel.iter().filter_map(|r| r.record.gap_pct).collect();
            let longest = sel.iter().map(|r| r.trials_per_iter.len()).max().unwrap_or(0);
            let series = (0..longest)
                .map(|i| mean(sel.iter().filter_map(|r| r.trials_per_iter.get(i).map(|&t| t as f64))).unwrap_or(0.0))
                .collect();
            Summary {
                group: group.to_string(),
                algo: algo.to_string(),
                runs: sel.len(),
                mean_length: sel.iter().map(|r| r.record.length).sum::<f64>() / k,
                mean_time_s: sel.iter().map(|r| r.record.time_s).sum::<f64>() / k,
                mean_trials_per_iter: mean(
                    sel.iter()
                        .filter(|r| !r.trials_per_iter.is_empty())
                        .map(|r| r.trials_per_iter.iter().sum::<u64>() as f64 / r.trials_per_iter.len() as f64),
                ),
                mean_gap_pct: mean(gaps.iter().copied()),
                gap_over_10_rate: (gaps.len() == sel.len())
                    .then(|| gaps.iter().filter(|&&g| g > 10.0).count() as f64 / k),
                time_limit_rate: sel.iter().filter(|r| r.record.hit_time_limit).count() as f64 / k,
                trials_per_iter_series: series,
            }
        })
        .collect()
}
