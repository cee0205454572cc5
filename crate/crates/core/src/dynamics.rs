//! Single-site Glauber dynamics on `Q^V`.
//!
//! One transition picks a uniform vertex `v`, then a uniform color from
//! `A(v, X)`; if every color is blocked the state is left alone.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand_core::RngCore;

use crate::coloring::goodness::{classify_goodness, GoodnessParams};
use crate::coloring::{blocked_into, is_proper_colors, min_available, nth_available, Coloring};
use crate::hypergraph::Hypergraph;
use crate::rng::uniform_index;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    pub vertex: usize,
    /// `None` when `A(v, X)` was empty and nothing changed.
    pub color: Option<u32>,
}

/// One transition in place. Consumes a vertex draw and, unless every color
/// is blocked, a color draw.
pub fn glauber_step<R: RngCore + ?Sized>(
    h: &Hypergraph,
    x: &mut Coloring,
    rng: &mut R,
    scratch: &mut Vec<usize>,
) -> StepRecord {
    let vertex = uniform_index(rng, h.n());
    blocked_into(h, x.colors(), vertex, scratch);
    let available = x.q() - scratch.len();
    if available == 0 {
        return StepRecord { vertex, color: None };
    }
    let color = nth_available(scratch, uniform_index(rng, available)) as u32;
    x.set(vertex, color);
    StepRecord { vertex, color: Some(color) }
}

/// Exact one-step law from `x`, keyed by the base-q code of the next state.
/// Only meant for instances where `q^n` fits in a `u64`.
pub fn step_law(h: &Hypergraph, x: &Coloring) -> Result<BTreeMap<u64, Ratio<u64>>> {
    x.check_dims(h)?;
    if h.n() == 0 {
        return Err(Error::InvalidParameter("chain needs at least one vertex"));
    }
    let n = h.n() as u64;
    let mut law = BTreeMap::new();
    let mut blocked = Vec::new();
    let mut next = x.clone();
    for v in 0..h.n() {
        blocked_into(h, x.colors(), v, &mut blocked);
        let available = (x.q() - blocked.len()) as u64;
        if available == 0 {
            *law.entry(x.code()).or_insert_with(|| Ratio::from_integer(0)) += Ratio::new(1, n);
            continue;
        }
        for idx in 0..available as usize {
            next.set(v, nth_available(&blocked, idx) as u32);
            *law.entry(next.code()).or_insert_with(|| Ratio::from_integer(0)) += Ratio::new(1, n * available);
        }
        next.set(v, x.get(v));
    }
    Ok(law)
}

/// A running chain: current coloring, step counter and its own random stream.
#[derive(Debug, Clone)]
pub struct ChainState<R> {
    coloring: Coloring,
    step: u64,
    rng: R,
    scratch: Vec<usize>,
}

impl<R: RngCore> ChainState<R> {
    pub fn new(h: &Hypergraph, x0: Coloring, rng: R) -> Result<Self> {
        x0.check_dims(h)?;
        if h.n() == 0 {
            return Err(Error::InvalidParameter("chain needs at least one vertex"));
        }
        Ok(ChainState { coloring: x0, step: 0, rng, scratch: Vec::new() })
    }

    pub fn step(&mut self, h: &Hypergraph) -> StepRecord {
        self.step += 1;
        glauber_step(h, &mut self.coloring, &mut self.rng, &mut self.scratch)
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn into_coloring(self) -> Coloring {
        self.coloring
    }

    pub fn steps_taken(&self) -> u64 {
        self.step
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }
}

/// `t_0 = floor(n / (4 k^2 e))`.
pub fn persistence_horizon(n: usize, k: usize) -> u64 {
    libm::floor(n as f64 / (4.0 * (k * k) as f64 * core::f64::consts::E)) as u64
}

/// `t_delta = ceil(2n ln(2n / delta))`, natural log.
pub fn mixing_horizon(n: usize, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter("delta must lie in (0, 1)"));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("mixing horizon needs n >= 1"));
    }
    let n = n as f64;
    Ok(libm::ceil(2.0 * n * libm::log(2.0 * n / delta)) as u64)
}

/// `n` values, each uniform on `0..q`.
pub fn random_initial<R: RngCore + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Coloring> {
    Coloring::random(n, q, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub t: u64,
    pub proper: bool,
    pub good_s1: bool,
    pub good_s2: bool,
    pub min_available: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryDiagnostics {
    pub checkpoints: Vec<Checkpoint>,
    pub t0: u64,
    /// Scale-2 goodness held at every step `t <= min(t0, steps)`.
    pub s2_good_through_t0: bool,
    /// Scale-1 goodness at `t0`, if the run got that far.
    pub s1_good_at_t0: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome<R> {
    pub state: ChainState<R>,
    pub diagnostics: TrajectoryDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub steps: u64,
    /// Checkpoint spacing; 0 means every `n` steps. Checkpoints at 0, `t0`
    /// and the final step are always recorded.
    pub checkpoint_every: u64,
}

/// Runs `config.steps` transitions from `x0`, recording goodness at scale 1
/// and 2 (relative to `params`' eps) at each checkpoint.
pub fn run<R: RngCore>(
    h: &Hypergraph,
    x0: Coloring,
    rng: R,
    config: RunConfig,
    params: &GoodnessParams,
) -> Result<RunOutcome<R>> {
    let s1 = params.clone().with_scale(1);
    let s2 = params.clone().with_scale(2);
    let t0 = persistence_horizon(h.n(), h.k());
    let every = if config.checkpoint_every == 0 { h.n().max(1) as u64 } else { config.checkpoint_every };
    let mut state = ChainState::new(h, x0, rng)?;

    let checkpoint = |x: &Coloring, t: u64| -> Result<Checkpoint> {
        Ok(Checkpoint {
            t,
            proper: is_proper_colors(h, x.colors()),
            good_s1: classify_goodness(h, x, &s1)?.is_good(),
            good_s2: classify_goodness(h, x, &s2)?.is_good(),
            min_available: min_available(h, x)?,
        })
    };

    let mut checkpoints = Vec::new();
    let first = checkpoint(state.coloring(), 0)?;
    let mut s2_good_through_t0 = first.good_s2;
    let mut s1_good_at_t0 = (t0 == 0).then_some(first.good_s1);
    checkpoints.push(first);

    for t in 1..=config.steps {
        state.step(h);
        let x = state.coloring();
        if t <= t0 && s2_good_through_t0 && !classify_goodness(h, x, &s2)?.is_good() {
            s2_good_through_t0 = false;
        }
        if t == t0 || t % every == 0 || t == config.steps {
            let cp = checkpoint(x, t)?;
            if t == t0 {
                s1_good_at_t0 = Some(cp.good_s1);
            }
            checkpoints.push(cp);
        }
    }
    Ok(RunOutcome {
        state,
        diagnostics: TrajectoryDiagnostics { checkpoints, t0, s2_good_through_t0, s1_good_at_t0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn two_edge() -> Hypergraph {
        Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap()
    }

    #[test]
    fn horizons() {
        assert_eq!(mixing_horizon(100, 0.1).unwrap(), 1521);
        assert_eq!(mixing_horizon(5, 0.1).unwrap(), 47);
        assert_eq!(mixing_horizon(1, 0.999_999).unwrap(), 2);
        assert!(mixing_horizon(10, 0.01).unwrap() > mixing_horizon(10, 0.1).unwrap());
        assert!(mixing_horizon(10, 0.0).is_err());
        assert!(mixing_horizon(10, 1.0).is_err());
        assert_eq!(persistence_horizon(100, 3), 1);
        assert_eq!(persistence_horizon(97, 3), 0);
    }

    #[test]
    fn only_chosen_vertex_changes() {
        let h = two_edge();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let mut x = Coloring::random(5, 3, &mut rng).unwrap();
        let mut scratch = Vec::new();
        for _ in 0..2000 {
            let before = x.clone();
            let rec = glauber_step(&h, &mut x, &mut rng, &mut scratch);
            for v in 0..5 {
                if v != rec.vertex {
                    assert_eq!(before.get(v), x.get(v));
                }
            }
        }
    }

    #[test]
    fn fully_blocked_vertex_holds() {
        // Vertex 2 sees {0,0} on one edge and {1,1} on the other: nothing left with q = 2.
        let h = two_edge();
        let x = Coloring::new(2, vec![0, 0, 1, 1, 1]).unwrap();
        let law = step_law(&h, &x).unwrap();
        let mut blocked = Vec::new();
        blocked_into(&h, x.colors(), 2, &mut blocked);
        assert_eq!(blocked, vec![0, 1]);
        for seed in 0..50 {
            let mut state = ChainState::new(&h, x.clone(), ChaCha20Rng::seed_from_u64(seed)).unwrap();
            let rec = state.step(&h);
            if rec.vertex == 2 {
                assert_eq!(rec.color, None);
                assert_eq!(&x, state.coloring());
            }
        }
        // stay: 1/10 from each of vertices 0 and 1, 1/5 from the blocked vertex
        assert_eq!(law[&x.code()], Ratio::new(2, 5));
        let total: Ratio<u64> = law.values().copied().sum();
        assert_eq!(total, Ratio::from_integer(1));
    }

    #[test]
    fn no_edges_means_uniform_resampling() {
        let h = Hypergraph::empty(3, 3).unwrap();
        let x = Coloring::constant(3, 4, 0).unwrap();
        let law = step_law(&h, &x).unwrap();
        // stay: 3 * 1/12, every single-site change: 1/12
        assert_eq!(law[&x.code()], Ratio::new(1, 4));
        assert_eq!(law.len(), 1 + 3 * 3);
        assert!(law.iter().filter(|(&c, _)| c != x.code()).all(|(_, &p)| p == Ratio::new(1, 12)));
    }

    #[test]
    fn run_is_deterministic() {
        let h = two_edge();
        let p = GoodnessParams::for_hypergraph(&h, 4).unwrap();
        let x0 = Coloring::random(5, 4, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        let cfg = RunConfig { steps: 500, checkpoint_every: 0 };
        let a = run(&h, x0.clone(), ChaCha20Rng::seed_from_u64(2), cfg, &p).unwrap();
        let b = run(&h, x0.clone(), ChaCha20Rng::seed_from_u64(2), cfg, &p).unwrap();
        assert_eq!(a.state.coloring(), b.state.coloring());
        assert_eq!(a.diagnostics, b.diagnostics);
        assert_eq!(a.state.steps_taken(), 500);
        let zero = run(&h, x0.clone(), ChaCha20Rng::seed_from_u64(2), RunConfig { steps: 0, checkpoint_every: 0 }, &p)
            .unwrap();
        assert_eq!(zero.state.coloring(), &x0);
        assert_eq!(zero.diagnostics.checkpoints.len(), 1);
    }

    #[test]
    fn checkpoint_schedule() {
        let h = Hypergraph::sunflower(60, 3).unwrap();
        let p = GoodnessParams::for_hypergraph(&h, 5).unwrap();
        let x0 = Coloring::constant(h.n(), 5, 1).unwrap();
        let out = run(&h, x0, ChaCha20Rng::seed_from_u64(4), RunConfig { steps: 300, checkpoint_every: 0 }, &p).unwrap();
        let ts: Vec<u64> = out.diagnostics.checkpoints.iter().map(|c| c.t).collect();
        assert_eq!(out.diagnostics.t0, 1);
        assert_eq!(ts, vec![0, 1, 121, 242, 300]);
        assert!(out.diagnostics.s1_good_at_t0.is_some());
    }
}
