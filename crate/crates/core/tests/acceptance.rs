//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use topo_tsp::cli::{prob_study, run_bench, BenchSpec, BestKnown, Generator, ProbStudySpec, Reference, Summary};
use topo_tsp::exact::{brute_force, held_karp};
use topo_tsp::graph::{random_tour, seeded_rng, tour_length, Edge, Instance, Point, Tour, UnionFind};
use topo_tsp::io::{atsp_to_tsp, att, euc_2d, gen_euclidean, gen_nonmetric, geo, parse_tsplib};
use topo_tsp::localsearch::{self, pi_transform, two_opt, Algorithm, PiSchedule, SearchConfig};
use topo_tsp::rtdl::{alpha_scores, alpha_via_rtdl, compute_barcode, oracle_bijection, oracle_phi};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

type Check = fn(&mut Shared) -> Outcome;

/// Bench results reused by several criteria.
#[derive(Default)]
struct Shared {
    euclid_100: Option<Vec<Summary>>,
}

fn instance(k: u64, n: usize, seed: u64) -> Instance {
    if k.is_multiple_of(2) {
        gen_euclidean(n, seed).unwrap()
    } else {
        gen_nonmetric(n, seed).unwrap()
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn distinct_weights(inst: &Instance) -> bool {
    let n = inst.n();
    let mut w: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| inst.dist(i, j))
        .collect();
    w.sort_by(f64::total_cmp);
    w.windows(2).all(|p| p[0] != p[1])
}

fn summary(rows: &[Summary], algo: Algorithm) -> &Summary {
    rows.iter()
        .find(|s| s.algo == algo.name())
        .expect("algorithm was benchmarked")
}

fn penalty_identity(_: &mut Shared) -> Outcome {
    let started = Instant::now();
    let mut rng = seeded_rng(101);
    let mut worst = 0.0f64;
    let mut bad_bars = 0usize;
    for k in 0..1000u64 {
        let n = rng.gen_range(10..=200);
        let inst = instance(k, n, 10_000 + k);
        let tour = random_tour(&inst, k);
        let bc = compute_barcode(&inst, &tour).unwrap();
        let penalties: f64 = bc.bars.iter().map(|b| b.death - b.birth).sum();
        worst = worst.max(rel_err(penalties, bc.path_length - bc.mst_total));
        bad_bars += bc.bars.iter().filter(|b| b.death < b.birth).count();
    }
    let secs = started.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && bad_bars == 0 && secs < 60.0,
        format!("1000 instances, max rel err {worst:.2e}, bars with death < birth {bad_bars}, {secs:.1}s"),
    )
}

fn bijectivity(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(202);
    let mut failures = 0usize;
    let count = 300u64;
    for k in 0..count {
        let n = rng.gen_range(4..=80);
        let inst = instance(k, n, 20_000 + k);
        let tour = random_tour(&inst, k);
        let bc = compute_barcode(&inst, &tour).unwrap();

        let mut matched: Vec<(usize, usize)> = bc.bars.iter().map(|b| b.tour_edge.endpoints()).collect();
        let mut path: Vec<(usize, usize)> = (0..n)
            .filter(|&p| p != bc.e_max_pos)
            .map(|p| tour.edge_at(&inst, p).endpoints())
            .collect();
        matched.sort_unstable();
        path.sort_unstable();

        let phi = oracle_phi(&inst, &tour).unwrap();
        let round_trip = phi.len() == n - 1
            && phi
                .iter()
                .all(|(m, t)| bc.psi(t.u, t.v).is_some_and(|back| back.same_endpoints(m)));
        if matched != path || !round_trip {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{count} instances, {failures} with a broken matching"),
    )
}

fn oracle_equivalence(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(303);
    let mut mismatches = 0usize;
    let mut ties = 0usize;
    for k in 0..500u64 {
        let n = rng.gen_range(3..=50);
        let inst = instance(k, n, 30_000 + k);
        if !distinct_weights(&inst) {
            ties += 1;
        }
        let tour = random_tour(&inst, k);
        let fast = compute_barcode(&inst, &tour).unwrap();
        let slow = oracle_bijection(&inst, &tour).unwrap();
        if fast.bars != slow.bars || fast.e_max != slow.e_max {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0 && ties == 0,
        format!("500 instances, {mismatches} mismatched barcodes, {ties} with tied weights"),
    )
}

/// Lightest spanning tree of the vertices other than `special`, optionally
/// required to contain `forced`, by enumerating every edge subset.
fn brute_tree(inst: &Instance, special: usize, forced: Option<(usize, usize)>) -> f64 {
    let n = inst.n();
    let rest: Vec<usize> = (0..n).filter(|&v| v != special).collect();
    let edges: Vec<Edge> = rest
        .iter()
        .enumerate()
        .flat_map(|(a, &u)| rest[a + 1..].iter().map(move |&v| (u, v)))
        .map(|(u, v)| inst.edge(u, v))
        .collect();
    let need = rest.len() - 1;
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let chosen: Vec<&Edge> = (0..edges.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| &edges[b])
            .collect();
        if let Some((i, j)) = forced {
            if !chosen.iter().any(|e| e.same_endpoints(&Edge::new(i, j, 0.0))) {
                continue;
            }
        }
        let mut uf = UnionFind::new(n);
        if chosen.iter().all(|e| uf.union(e.u, e.v)) {
            best = best.min(chosen.iter().map(|e| e.weight).sum());
        }
    }
    best
}

fn alpha_equivalence(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(404);
    let mut mismatches = 0usize;
    let mut pairs = 0usize;
    for k in 0..100u64 {
        let n = rng.gen_range(3..=30);
        let inst = instance(k, n, 40_000 + k);
        let special = rng.gen_range(0..n);
        let table = alpha_scores(&inst, special).unwrap();
        for i in (0..n).filter(|&v| v != special) {
            for j in (i + 1..n).filter(|&v| v != special) {
                pairs += 1;
                if alpha_via_rtdl(&inst, special, i, j).unwrap() != table.get(i, j) {
                    mismatches += 1;
                }
            }
        }
    }

    let mut brute_mismatches = 0usize;
    let mut brute_pairs = 0usize;
    for k in 0..60u64 {
        let n = 4 + (k as usize % 3);
        let inst = instance(k, n, 45_000 + k);
        let special = k as usize % n;
        let table = alpha_scores(&inst, special).unwrap();
        let base = brute_tree(&inst, special, None);
        for i in (0..n).filter(|&v| v != special) {
            for j in (i + 1..n).filter(|&v| v != special) {
                brute_pairs += 1;
                let want = brute_tree(&inst, special, Some((i, j))) - base;
                if (table.get(i, j) - want).abs() > 1e-12 {
                    brute_mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0 && brute_mismatches == 0,
        format!(
            "{pairs} pairs vs tree-path α: {mismatches} mismatches; \
             {brute_pairs} pairs vs exhaustive tree enumeration: {brute_mismatches} mismatches"
        ),
    )
}

fn bench_summaries(generator: Generator) -> Vec<Summary> {
    let mut spec = BenchSpec::new(generator, 100, vec![Algorithm::TwoOpt, Algorithm::TwoOptRtdl]);
    spec.seed = 0;
    run_bench(&spec).unwrap().summaries
}

fn euclid_100(shared: &mut Shared) -> &[Summary] {
    shared
        .euclid_100
        .get_or_insert_with(|| bench_summaries(Generator::Euclidean { sizes: vec![100] }))
}

fn euclidean_quality(shared: &mut Shared) -> Outcome {
    let rows = euclid_100(shared);
    let plain = summary(rows, Algorithm::TwoOpt).mean_length;
    let rtdl = summary(rows, Algorithm::TwoOptRtdl).mean_length;
    let off = 100.0 * (rtdl - 8.226).abs() / 8.226;
    outcome(
        rtdl <= plain && off <= 3.0,
        format!("100 instances n=100: 2opt {plain:.4}, 2opt-rtdl {rtdl:.4} ({off:.2}% from 8.226)"),
    )
}

fn nonmetric_quality(_: &mut Shared) -> Outcome {
    let rows = bench_summaries(Generator::Nonmetric { sizes: vec![100] });
    let plain = summary(&rows, Algorithm::TwoOpt).mean_length;
    let rtdl = summary(&rows, Algorithm::TwoOptRtdl).mean_length;
    let gain = 100.0 * (plain - rtdl) / plain;
    outcome(
        gain >= 8.0,
        format!("100 instances n=100: 2opt {plain:.4}, 2opt-rtdl {rtdl:.4} ({gain:.1}% lower)"),
    )
}

fn trials_per_improvement(shared: &mut Shared) -> Outcome {
    let rows = euclid_100(shared);
    let plain = summary(rows, Algorithm::TwoOpt)
        .mean_trials_per_iter
        .unwrap_or(f64::NAN);
    let rtdl = summary(rows, Algorithm::TwoOptRtdl)
        .mean_trials_per_iter
        .unwrap_or(f64::NAN);
    outcome(
        rtdl < plain,
        format!("mean trials per improvement: 2opt {plain:.1}, 2opt-rtdl {rtdl:.1}"),
    )
}

fn probability_trend(_: &mut Shared) -> Outcome {
    let bins = prob_study(&ProbStudySpec::default()).unwrap();
    let prob = |b: usize| bins.iter().find(|r| r.bin == b).and_then(|r| r.probability);
    match (prob(0), prob(9)) {
        (Some(low), Some(high)) => outcome(
            low - high >= 0.15,
            format!("P(optimal | lowest bin) {low:.3}, P(optimal | highest bin) {high:.3}"),
        ),
        _ => outcome(false, "a bin held no edges".into()),
    }
}

fn pi_invariance(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(909);
    let mut worst = 0.0f64;
    let mut diverged = 0usize;
    for k in 0..100u64 {
        let n = rng.gen_range(8..=80);
        let inst = instance(k, n, 90_000 + k);
        let shifted = pi_transform(&inst, &PiSchedule::default()).unwrap().instance;

        let a = random_tour(&inst, 2 * k);
        let b = random_tour(&inst, 2 * k + 1);
        let want = a.length() - b.length();
        let got = tour_length(&shifted, a.order()) - tour_length(&shifted, b.order());
        worst = worst.max((got - want).abs() / want.abs());

        let cfg = SearchConfig::default();
        let (t1, s1) = two_opt(&inst, &a, &cfg).unwrap();
        let shifted_start = Tour::new(&shifted, a.order().to_vec()).unwrap();
        let (t2, s2) = two_opt(&shifted, &shifted_start, &cfg).unwrap();
        if t1.order() != t2.order() || s1.trials_per_iter != s2.trials_per_iter {
            diverged += 1;
        }
    }
    outcome(
        worst <= 1e-9 && diverged == 0,
        format!("100 instances: max rel err of length differences {worst:.2e}, {diverged} diverging 2-opt runs"),
    )
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn parser_conformance(_: &mut Shared) -> Outcome {
    let o = Point::new(0.0, 0.0);
    let p = Point::new(3.0, 4.0);
    let units = [euc_2d(o, p), att(o, p), geo(p, p)];
    let units_ok = units == [5.0, 2.0, 0.0];

    let bytes = std::fs::read(data_dir().join("berlin52.tsp")).unwrap();
    let inst = parse_tsplib(&bytes).unwrap();
    let parsed_ok = inst.n() == 52 && inst.name() == "berlin52";

    let mut spec = BenchSpec::new(Generator::TsplibDir(data_dir()), 100, vec![Algorithm::TwoOptRtdl]);
    spec.reference = Reference::Table(BestKnown::bundled());
    spec.config.time_limit = 20.0;
    let report = run_bench(&spec).unwrap();
    let row = summary(&report.summaries, Algorithm::TwoOptRtdl);
    let gap = row.mean_gap_pct.unwrap_or(f64::NAN);
    outcome(
        units_ok && parsed_ok && gap <= 8.0 && row.time_limit_rate == 0.0,
        format!(
            "EUC/ATT/GEO {:?}, berlin52 n={}: {} runs mean gap {gap:.2}%, time-limit rate {}",
            units,
            inst.n(),
            row.runs,
            row.time_limit_rate
        ),
    )
}

fn exact_oracles(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(1111);
    let mut disagreements = 0usize;
    let mut below = 0usize;
    for k in 0..200u64 {
        let n = rng.gen_range(5..=10);
        let inst = instance(k, n, 110_000 + k);
        let hk = held_karp(&inst).unwrap();
        let bf = brute_force(&inst).unwrap();
        if hk.length != bf.length {
            disagreements += 1;
        }
        let start = random_tour(&inst, k);
        for algo in Algorithm::ALL {
            let (tour, _) = localsearch::run(&inst, &start, &SearchConfig::new(algo)).unwrap();
            if tour_length(&inst, &tour.canonical()) < bf.length {
                below += 1;
            }
        }
    }
    outcome(
        disagreements == 0 && below == 0,
        format!("200 instances n=5..10: {disagreements} Held-Karp/brute-force disagreements, {below} local optima below the optimum"),
    )
}

fn brute_atsp(n: usize, costs: &[f64]) -> f64 {
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    loop {
        let order: Vec<usize> = std::iter::once(0).chain(rest.iter().copied()).collect();
        let cost: f64 = (0..n).map(|p| costs[order[p] * n + order[(p + 1) % n]]).sum();
        best = best.min(cost);
        let Some(i) = (0..rest.len().saturating_sub(1)).rev().find(|&i| rest[i] < rest[i + 1]) else {
            return best;
        };
        let j = (i + 1..rest.len()).rev().find(|&j| rest[j] > rest[i]).unwrap();
        rest.swap(i, j);
        rest[i + 1..].reverse();
    }
}

fn atsp_reduction(_: &mut Shared) -> Outcome {
    let mut rng = seeded_rng(1212);
    let mut failures = 0usize;
    for _ in 0..50 {
        let n = rng.gen_range(4..=6);
        let costs: Vec<f64> = (0..n * n)
            .map(|idx| {
                if idx / n == idx % n {
                    0.0
                } else {
                    rng.gen_range(1..=100) as f64
                }
            })
            .collect();
        let want = brute_atsp(n, &costs);
        let red = atsp_to_tsp(n, &costs).unwrap();
        let opt = held_karp(&red.instance).unwrap();
        let order = red.back_map(opt.tour.order()).unwrap();
        if opt.length - red.constant != want || red.atsp_cost(&order) != want {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("50 instances n=4..6: {failures} optima not recovered"),
    )
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 12] = [
        ("penalty sum identity", penalty_identity),
        ("bijective matching", bijectivity),
        ("cycle exchange vs union-find oracle", oracle_equivalence),
        ("α from barcodes", alpha_equivalence),
        ("euclidean n=100 quality", euclidean_quality),
        ("non-metric n=100 quality", nonmetric_quality),
        ("trials per improvement", trials_per_improvement),
        ("low penalty predicts optimal edges", probability_trend),
        ("π-shift invariance", pi_invariance),
        ("TSPLIB conformance", parser_conformance),
        ("exact solvers", exact_oracles),
        ("ATSP reduction", atsp_reduction),
    ];

    let mut shared = Shared::default();
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let started = Instant::now();
        let result = check(&mut shared);
        let secs = started.elapsed().as_secs_f64();
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("{tag} [{:02}] {name}: {} ({secs:.1}s)", k + 1, result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
