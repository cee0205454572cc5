use std::collections::BTreeMap;

use hypercolor_core::coloring::{blocked_colors, is_proper};
use hypercolor_core::coupling::{coalescence_run, coupled_law, Coalescence, MaximalCoupling};
use hypercolor_core::dynamics::{random_initial, step_law, ChainState};
use hypercolor_core::oracle::{
    enumerate_proper, event_census, exact_tvd, lll_premise_check, move_graph, state_count, total_variation,
    DEFAULT_BUDGET,
};
use hypercolor_core::{Coloring, GoodnessParams, Hypergraph};
use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn two_edge() -> Hypergraph {
    Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap()
}

fn small_corpus() -> Vec<Hypergraph> {
    vec![
        Hypergraph::empty(4, 3).unwrap(),
        Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap(),
        two_edge(),
        Hypergraph::sunflower(3, 3).unwrap(),
        Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap(),
        Hypergraph::new(7, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]).unwrap(),
        Hypergraph::new(7, 4, vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]).unwrap(),
    ]
}

/// Union-find component count with the vertices of each chosen edge merged.
fn forced_components(n: usize, edges: &[&Vec<usize>]) -> u32 {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in edges {
        for w in &e[1..] {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, *w));
            parent[a] = b;
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count() as u32
}

/// Proper colorings by inclusion-exclusion over sets of monochromatic edges.
fn inclusion_exclusion(h: &Hypergraph, q: u64) -> i64 {
    let m = h.m();
    let mut total = 0i64;
    for mask in 0u32..(1 << m) {
        let chosen: Vec<&Vec<usize>> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &h.edges()[i]).collect();
        let term = q.pow(forced_components(h.n(), &chosen)) as i64;
        total += if chosen.len().is_multiple_of(2) { term } else { -term };
    }
    total
}

#[test]
fn enumeration_matches_inclusion_exclusion() {
    for h in small_corpus().iter().filter(|h| h.m() <= 3) {
        for q in 1..=4 {
            let e = enumerate_proper(h, q, DEFAULT_BUDGET).unwrap();
            assert_eq!(e.count() as i64, inclusion_exclusion(h, q as u64), "{h:?} q={q}");
            for &code in &e.proper {
                assert!(is_proper(h, &Coloring::decode(code, h.n(), q)).unwrap());
            }
        }
    }
    assert_eq!(inclusion_exclusion(&two_edge(), 2), 18);
}

#[test]
fn complement_sampling_is_improper() {
    let h = Hypergraph::sunflower(3, 3).unwrap();
    let e = enumerate_proper(&h, 3, DEFAULT_BUDGET).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let omega = state_count(h.n(), 3) as u64;
    for _ in 0..2000 {
        let code = rng.next_u64() % omega;
        let proper = is_proper(&h, &Coloring::decode(code, h.n(), 3)).unwrap();
        assert_eq!(proper, e.contains(code));
    }
}

#[test]
fn glauber_moves_stay_proper_exhaustively() {
    let h = two_edge();
    for q in 2..=3 {
        let e = enumerate_proper(&h, q, DEFAULT_BUDGET).unwrap();
        for &code in &e.proper {
            let x = Coloring::decode(code, 5, q);
            for v in 0..5 {
                for c in 0..q {
                    if blocked_colors(&h, &x, v).contains(&c) {
                        continue;
                    }
                    let mut y = x.clone();
                    y.set(v, c as u32);
                    assert!(is_proper(&h, &y).unwrap());
                }
            }
        }
    }
}

#[test]
fn step_sampler_matches_exact_law() {
    let h = two_edge();
    let x = Coloring::new(3, vec![0, 0, 1, 2, 2]).unwrap();
    let law = step_law(&h, &x).unwrap();
    let draws = 200_000;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    for _ in 0..draws {
        let mut state = ChainState::new(&h, x.clone(), &mut rng).unwrap();
        state.step(&h);
        *counts.entry(state.coloring().code()).or_default() += 1;
    }
    assert!(counts.keys().all(|k| law.contains_key(k)));
    for (code, p) in &law {
        let p = *p.numer() as f64 / *p.denom() as f64;
        let got = *counts.get(code).unwrap_or(&0) as f64 / draws as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        assert!((got - p).abs() < 5.0 * sigma, "code {code}: {got} vs {p}");
    }
}

#[test]
fn random_initial_is_uniform() {
    // Chi-square per coordinate against uniform over 10^5 draws.
    let (n, q, draws) = (4usize, 5usize, 100_000usize);
    let mut rng = ChaCha20Rng::seed_from_u64(99);
    let mut counts = vec![vec![0f64; q]; n];
    for _ in 0..draws {
        let x = random_initial(n, q, &mut rng).unwrap();
        for v in 0..n {
            counts[v][x.get(v) as usize] += 1.0;
        }
    }
    let expected = draws as f64 / q as f64;
    for row in counts {
        let chi2: f64 = row.iter().map(|c| (c - expected).powi(2) / expected).sum();
        // 4 degrees of freedom; P(chi2 > 23.5) < 1e-4
        assert!(chi2 < 23.5, "chi2 = {chi2}");
    }
    let one = random_initial(6, 1, &mut rng).unwrap();
    assert!(one.colors().iter().all(|&c| c == 0));
}

#[test]
fn coupled_marginals_equal_single_chain() {
    let h = two_edge();
    let q = 3;
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    for _ in 0..150 {
        let x = Coloring::random(5, q, &mut rng).unwrap();
        let y = Coloring::random(5, q, &mut rng).unwrap();
        let joint = coupled_law(&h, &x, &y).unwrap();
        let mut mx: BTreeMap<u64, Ratio<u64>> = BTreeMap::new();
        let mut my: BTreeMap<u64, Ratio<u64>> = BTreeMap::new();
        for (&(a, b), &p) in &joint {
            *mx.entry(a).or_insert(Ratio::from_integer(0)) += p;
            *my.entry(b).or_insert(Ratio::from_integer(0)) += p;
        }
        assert_eq!(mx, step_law(&h, &x).unwrap());
        assert_eq!(my, step_law(&h, &y).unwrap());
    }
}

#[test]
fn coupling_agreement_is_maximal() {
    // Every pair of blocked sets over a small palette.
    let q = 5usize;
    for bx in 0u32..(1 << q) {
        for by in 0u32..(1 << q) {
            let blocked_x: Vec<usize> = (0..q).filter(|c| bx >> c & 1 == 1).collect();
            let blocked_y: Vec<usize> = (0..q).filter(|c| by >> c & 1 == 1).collect();
            let coupling = MaximalCoupling::from_blocked(&blocked_x, &blocked_y, q);
            let (ax, ay) = (q - blocked_x.len(), q - blocked_y.len());
            let lattice = coupling.lattice();
            if ax == 0 && ay == 0 {
                assert_eq!(lattice, 0);
                continue;
            }
            let mut agree = 0u64;
            let mut count_x = vec![0u64; q];
            let mut count_y = vec![0u64; q];
            for u in 0..lattice {
                let (cx, cy) = coupling.resolve(u);
                if let Some(c) = cx {
                    count_x[c] += 1;
                }
                if let Some(c) = cy {
                    count_y[c] += 1;
                }
                agree += u64::from(cx.is_some() && cx == cy);
            }
            for c in 0..q {
                if ax > 0 {
                    let want = if blocked_x.contains(&c) { 0 } else { lattice / ax as u64 };
                    assert_eq!(count_x[c], want);
                }
                if ay > 0 {
                    let want = if blocked_y.contains(&c) { 0 } else { lattice / ay as u64 };
                    assert_eq!(count_y[c], want);
                }
            }
            if ax > 0 && ay > 0 {
                let mut expected = Ratio::from_integer(0u64);
                for c in 0..q {
                    if !blocked_x.contains(&c) && !blocked_y.contains(&c) {
                        expected += Ratio::new(1, ax as u64).min(Ratio::new(1, ay as u64));
                    }
                }
                assert_eq!(Ratio::new(agree, lattice), expected);
                assert_eq!(coupling.agreement_probability(), Some(expected));
            }
        }
    }
}

/// Expected absorption time of the disagreement count on an edgeless
/// hypergraph: from d, one step moves to d - 1 with probability d/n.
fn edgeless_absorption(n: usize, d: usize) -> f64 {
    let mut expected = vec![0.0; d + 1];
    for j in 1..=d {
        // E_j = 1 + (j/n) E_{j-1} + (1 - j/n) E_j
        expected[j] = (1.0 + j as f64 / n as f64 * expected[j - 1]) * n as f64 / j as f64;
    }
    expected[d]
}

#[test]
fn edgeless_coalescence_time() {
    let h = Hypergraph::empty(5, 3).unwrap();
    let q = 4;
    let x = Coloring::constant(5, q, 0).unwrap();
    let y = Coloring::new(q, vec![1, 2, 3, 0, 0]).unwrap();
    let runs = 40_000;
    let mut times = Vec::with_capacity(runs);
    for seed in 0..runs as u64 {
        match coalescence_run(&h, x.clone(), y.clone(), 10_000, ChaCha20Rng::seed_from_u64(seed), None).unwrap() {
            Coalescence::Coalesced { t } => times.push(t as f64),
            Coalescence::Timeout { .. } => panic!("timeout"),
        }
    }
    let mean = times.iter().sum::<f64>() / runs as f64;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
    let se = (var / runs as f64).sqrt();
    let exact = edgeless_absorption(5, 3);
    assert!((exact - 5.0 * (1.0 + 0.5 + 1.0 / 3.0)).abs() < 1e-12);
    assert!((mean - exact).abs() < 4.0 * se, "{mean} vs {exact} (se {se})");
}

#[test]
fn tvd_is_a_metric() {
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let mut draw = |len: usize| -> Vec<f64> {
        let raw: Vec<f64> = (0..len).map(|_| (rng.next_u32() % 100) as f64 + 1.0).collect();
        let s: f64 = raw.iter().sum();
        raw.into_iter().map(|r| r / s).collect()
    };
    for _ in 0..200 {
        let (a, b, c) = (draw(12), draw(12), draw(12));
        assert_eq!(total_variation(&a, &a), 0.0);
        assert!((total_variation(&a, &b) - total_variation(&b, &a)).abs() < 1e-15);
        assert!(total_variation(&a, &c) <= total_variation(&a, &b) + total_variation(&b, &c) + 1e-12);
        assert!(total_variation(&a, &b) > 0.0);
    }
}

#[test]
fn exact_tvd_of_exact_chain_law_decreases() {
    // Push the exact law forward; distance to uniform on Q never grows.
    let h = two_edge();
    let q = 3;
    let e = enumerate_proper(&h, q, DEFAULT_BUDGET).unwrap();
    let omega = e.omega_size() as usize;
    let mut dist = vec![1.0 / omega as f64; omega];
    let laws: Vec<_> = (0..omega).map(|c| step_law(&h, &Coloring::decode(c as u64, 5, q)).unwrap()).collect();
    let mut last = exact_tvd(&e, &dist).unwrap();
    for _ in 0..60 {
        let mut next = vec![0.0; omega];
        for (from, law) in laws.iter().enumerate() {
            for (&to, p) in law {
                next[to as usize] += dist[from] * (*p.numer() as f64 / *p.denom() as f64);
            }
        }
        dist = next;
        let now = exact_tvd(&e, &dist).unwrap();
        assert!(now <= last + 1e-12);
        last = now;
    }
    assert!(last < 0.05, "{last}");
}

#[test]
fn move_graph_closed_and_symmetric() {
    for h in small_corpus() {
        for q in 2..=3 {
            let g = move_graph(&h, q, DEFAULT_BUDGET).unwrap();
            assert_eq!(g.exits, 0);
            assert!(g.is_symmetric());
            assert_eq!(g.component_sizes.iter().sum::<usize>(), g.nodes.len());
        }
    }
}

#[test]
fn monochromatic_probability_everywhere() {
    for h in small_corpus() {
        for q in 2..=3usize {
            let p = match GoodnessParams::for_hypergraph(&h, q) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let census = event_census(&h, q, &p, DEFAULT_BUDGET).unwrap();
            for &count in &census.omega_mono {
                assert_eq!(count * (q as u64).pow(h.k() as u32 - 1), census.omega_total);
            }
        }
    }
}

#[test]
fn premise_product_matches_definition() {
    for h in small_corpus() {
        for q in 2..7usize {
            let r = lll_premise_check(&h, q);
            for e in &r.edges {
                let others = (0..h.m())
                    .filter(|&f| f != e.edge && h.edge(f).iter().any(|v| h.edge(e.edge).contains(v)))
                    .count();
                assert_eq!(e.dependents, others);
                let theta = 2.0 / (q as f64).powi(h.k() as i32 - 1);
                assert!((e.product - theta * (1.0 - theta).powi(others as i32)).abs() < 1e-15);
            }
        }
    }
}
