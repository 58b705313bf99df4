use proptest::prelude::*;
use topo_tsp::graph::{compute_mst, random_tour, Tour};
use topo_tsp::io::{gen_euclidean, gen_nonmetric, parse_tsplib, write_tsplib};
use topo_tsp::localsearch::{run, Algorithm, SearchConfig};
use topo_tsp::rtdl::{compute_barcode, edge_penalties};

fn algorithm() -> impl Strategy<Value = Algorithm> {
    proptest::sample::select(Algorithm::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn penalties_sum_to_gap(n in 3usize..60, seed in 0u64..10_000, metric in any::<bool>()) {
        let inst = if metric { gen_euclidean(n, seed) } else { gen_nonmetric(n, seed) }.unwrap();
        let tour = random_tour(&inst, seed);
        let pm = edge_penalties(&inst, &tour).unwrap();
        let mst = compute_mst(&inst).unwrap();
        let gap = tour.length() - pm.e_max().weight - mst.total;
        prop_assert!((pm.path_sum() - gap).abs() <= 1e-9 * gap.abs().max(1.0));
        prop_assert!((0..n).all(|p| pm.at(p) >= 0.0));
    }

    #[test]
    fn scaling_scales_bars(n in 3usize..40, seed in 0u64..10_000, c in 0.5f64..8.0) {
        let inst = gen_nonmetric(n, seed).unwrap();
        let tour = random_tour(&inst, seed);
        let scaled = inst.scaled(c).unwrap();
        let a = compute_barcode(&inst, &tour).unwrap();
        let b = compute_barcode(&scaled, &Tour::new(&scaled, tour.order().to_vec()).unwrap()).unwrap();
        prop_assert_eq!(a.bars.len(), b.bars.len());
        for (x, y) in a.bars.iter().zip(&b.bars) {
            prop_assert!(x.mst_edge.same_endpoints(&y.mst_edge));
            prop_assert!(x.tour_edge.same_endpoints(&y.tour_edge));
        }
    }

    #[test]
    fn local_search_never_worsens(n in 3usize..40, seed in 0u64..10_000, algo in algorithm()) {
        let inst = gen_euclidean(n, seed).unwrap();
        let start = random_tour(&inst, seed);
        let (tour, stats) = run(&inst, &start, &SearchConfig::new(algo)).unwrap();
        prop_assert!(tour.length() <= start.length() + 1e-9);
        prop_assert!(stats.converged);
        prop_assert_eq!(stats.trials_per_iter.len(), stats.iterations);
    }

    #[test]
    fn tsplib_round_trip(n in 3usize..30, seed in 0u64..10_000) {
        let inst = gen_nonmetric(n, seed).unwrap();
        let back = parse_tsplib(write_tsplib(&inst).as_bytes()).unwrap();
        prop_assert_eq!(back.matrix(), inst.matrix());
    }
}
