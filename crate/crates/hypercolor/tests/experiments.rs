use hypercolor::experiments::{
    cmd_contract, cmd_couple, cmd_generate, cmd_goodness, cmd_mix, cmd_persist, schedule_steps, ContractConfig,
    CoupleConfig, GenerateConfig, GoodnessConfig, GoodnessOpts, MixConfig, PersistConfig,
};
use hypercolor::io::{format_coloring, format_hypergraph, parse_hypergraph};
use hypercolor::source::GraphSource;
use hypercolor::Error;
use hypercolor_core::oracle::sunflower_center_tail;
use hypercolor_core::{Coloring, GoodnessParams, Hypergraph};
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn mix_on_edgeless_is_noise_only() {
    let report = cmd_mix(&MixConfig::new(GraphSource::Empty { n: 4, k: 3 }, 3, 0.1, 200_000, 2)).unwrap();
    let r = &report.result;
    let tvd = r["tvd"].as_f64().unwrap();
    let floor = r["noise_floor"].as_f64().unwrap();
    assert_eq!(r["proper_count"], 81);
    assert!(tvd <= floor, "{tvd} > {floor}");
}

#[test]
fn single_replica_is_a_point_mass() {
    let report = cmd_mix(&MixConfig::new(GraphSource::TwoEdge, 2, 0.1, 1, 2)).unwrap();
    let tvd = report.result["tvd"].as_f64().unwrap();
    assert!((tvd - (1.0 - 1.0 / 18.0)).abs() < 1e-12);
    assert_eq!(report.warnings.len(), 1);
}

#[test]
fn mix_falls_back_to_empirical() {
    let mut config = MixConfig::new(GraphSource::Random { n: 30, k: 3, max_degree: 2, seed: 3 }, 3, 0.1, 50, 1);
    config.budget = 1000;
    let report = cmd_mix(&config).unwrap();
    assert_eq!(report.result["mode"], "empirical");
    assert!(report.result["tvd"].is_null());
    assert!(!report.warnings.is_empty());
}

#[test]
fn generate_rejects_k_above_n() {
    assert!(cmd_generate(&GenerateConfig::random(2, 3, 1, 0)).is_err());
    let mut exact = GenerateConfig::random(9, 3, 1, 0);
    exact.edges = Some(4);
    exact.rejection_cap = Some(50);
    match cmd_generate(&exact) {
        Err(Error::Core(e)) => assert!(e.to_string().contains("rejections"), "{e}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn generated_file_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = GenerateConfig::random(50, 4, 3, 7);
    config.output = Some(dir.path().join("x.hg"));
    config.q = Some(9);
    let report = cmd_generate(&config).unwrap();
    assert!(report.parameters.is_some());
    let text = std::fs::read_to_string(dir.path().join("x.hg")).unwrap();
    assert_eq!(format_hypergraph(&parse_hypergraph(&text).unwrap()), text);
}

#[test]
fn goodness_edgeless_never_bad() {
    let report = cmd_goodness(&GoodnessConfig::new(GraphSource::Empty { n: 5, k: 3 }, 3, 2000, 1)).unwrap();
    assert_eq!(report.result["omega"]["bad"]["count"], 0);
    assert_eq!(report.result["proper"]["bad"]["count"], 0);
    assert_eq!(report.result["proper"]["method"], "exact");
}

#[test]
fn constant_coloring_is_bad() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let h = Hypergraph::sunflower(3, 3).unwrap();
    std::fs::write(&path, format_coloring(&Coloring::constant(h.n(), 5, 0).unwrap())).unwrap();
    let mut config = GoodnessConfig::new(GraphSource::Sunflower { d: 3, k: 3 }, 5, 0, 0);
    config.coloring = Some(path.clone());
    let report = cmd_goodness(&config).unwrap();
    assert_eq!(report.result["good"], false);
    assert_eq!(report.result["proper"], false);
    let bad = report.result["bad"].as_array().unwrap();
    assert!(bad.iter().any(|b| b["vertex"] == 0 && b["i"] == 1 && b["y"] == 3));

    // a proper coloring with no repeated petal colors is good at eps = 1/2
    std::fs::write(&path, "5 7\n0 1 2 3 4 1 3\n").unwrap();
    config.goodness = GoodnessOpts::with_eps("1/2");
    let report = cmd_goodness(&config).unwrap();
    assert_eq!(report.result["good"], true);
    assert!(report.result["availability"]["violations"].as_array().unwrap().is_empty());
    assert!(report.invariant_violation.is_none());
}

#[test]
fn sunflower_bad_fraction_matches_binomial() {
    // petals have degree 1, so with threshold 2 only the center can be bad
    let (d, q) = (6, 3);
    let mut config = GoodnessConfig::new(GraphSource::Sunflower { d, k: 3 }, q, 200_000, 4);
    config.goodness = GoodnessOpts::with_eps("1/2");
    let report = cmd_goodness(&config).unwrap();
    assert_eq!(report.parameters.as_ref().unwrap().thresholds, vec![2]);
    let observed = report.result["omega"]["bad"]["fraction"].as_f64().unwrap();
    let p = sunflower_center_tail(d, 3, q, 2).to_f64().unwrap();
    let sigma = (p * (1.0 - p) / 200_000.0).sqrt();
    assert!((observed - p).abs() <= 3.0 * sigma, "{observed} vs {p} (sigma {sigma})");
}

#[test]
fn goodness_chain_mode_is_flagged() {
    let mut config = GoodnessConfig::new(GraphSource::Random { n: 30, k: 3, max_degree: 2, seed: 3 }, 5, 100, 1);
    config.budget = 10;
    config.chain_steps = Some(200);
    let report = cmd_goodness(&config).unwrap();
    assert_eq!(report.result["proper"]["method"], "chain_approximate");
    assert!(report.warnings.iter().any(|w| w.contains("estimated")));
}

#[test]
fn contraction_on_edgeless() {
    // every qualifying step picks a disagreeing vertex with probability h/n and fixes it
    let n = 6;
    let report = cmd_contract(&ContractConfig::new(GraphSource::Empty { n, k: 3 }, 3, 50_000, 1)).unwrap();
    let mean = report.result["mean_ratio"].as_f64().unwrap();
    let se = report.result["se"].as_f64().unwrap();
    assert!(mean <= 1.0 - 1.0 / (2.0 * n as f64));
    assert!((mean - (1.0 - 1.0 / n as f64)).abs() <= 4.0 * se, "{mean}");
}

#[test]
fn couple_reports_coalescence() {
    let report = cmd_couple(&CoupleConfig::new(GraphSource::Empty { n: 5, k: 3 }, 3, 10_000, 1)).unwrap();
    assert_eq!(report.result["coalesced"], true);
    assert_eq!(report.result["final_hamming"], 0);
    // identical starts meet at t = 0
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    std::fs::write(&x, "3 5\n0 1 2 0 1\n").unwrap();
    let mut config = CoupleConfig::new(GraphSource::TwoEdge, 3, 10, 1);
    config.x0 = Some(x.clone());
    config.y0 = Some(x);
    let report = cmd_couple(&config).unwrap();
    assert_eq!(report.result["coalescence_time"], 0);
}

#[test]
fn persist_follows_schedule() {
    let graph = GraphSource::Random { n: 300, k: 3, max_degree: 3, seed: 5 };
    let h = graph.load().unwrap();
    let mut config = PersistConfig::new(graph, 12, 8, 2);
    config.goodness = GoodnessOpts::with_eps("1/3");
    config.cap = 3;
    let report = cmd_persist(&config).unwrap();
    let params = GoodnessParams::for_hypergraph(&h, 12).unwrap().with_eps("1/3".parse().unwrap());
    let t0 = report.result["t0"].as_u64().unwrap();
    assert_eq!(t0, 3);
    let (_, factor, steps) = schedule_steps(&params, t0, 3);
    // t* = e^{2} > 3
    assert_eq!(factor, 3);
    assert_eq!(report.result["steps"].as_u64().unwrap(), steps);
    assert_eq!(steps, 9);
    assert!(report.warnings.iter().any(|w| w.contains("capped")));
}

#[test]
fn persist_trace_format() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("p.csv");
    let mut config = PersistConfig::new(GraphSource::Random { n: 300, k: 3, max_degree: 3, seed: 5 }, 12, 2, 2);
    config.goodness = GoodnessOpts::with_eps("1/3");
    config.steps = Some(900);
    config.trace = Some(trace.clone());
    cmd_persist(&config).unwrap();
    let text = std::fs::read_to_string(trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# rng=ChaCha20 seed=2");
    assert_eq!(lines[1], "t,proper,good_s1,good_s2,min_avail");
    assert!(lines[2].starts_with("0,true,true,"));
    assert!(lines.last().unwrap().starts_with("900,"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn io_roundtrip(n in 3usize..30, k in 3usize..5, deg in 1usize..4, seed: u64) {
        prop_assume!(n >= k);
        let h = GraphSource::Random { n, k, max_degree: deg, seed }.load().unwrap();
        let text = format_hypergraph(&h);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(back.n(), h.n());
        let mut a = back.edges().to_vec();
        let mut b = h.edges().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(format_hypergraph(&back), text);
    }
}
