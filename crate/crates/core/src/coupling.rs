//! Two Glauber chains driven by shared randomness.
//!
//! Both chains update the same vertex. Their colors come from a maximal
//! coupling of the two uniform laws on `A(v, X)` and `A(v, Y)`, realized by
//! one shared integer draw `u` on a lattice of `lcm(|A_X|, |A_Y|)` points
//! (a discretized inverse transform of a shared uniform).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;
use rand_core::RngCore;

use crate::coloring::goodness::GoodnessParams;
use crate::coloring::goodness::classify_goodness;
use crate::coloring::{blocked_into, Coloring};
use crate::hypergraph::Hypergraph;
use crate::rng::{uniform_below, uniform_index};
use crate::{Error, Result};

/// Menus for one coupled color draw.
///
/// The larger side reads its menu (`common` then its own colors) by plain
/// inverse transform. The smaller side agrees with it on the first
/// `|common| / max(|A_X|, |A_Y|)` of the lattice and spends the remainder on
/// the leftover mass of the common colors followed by its own colors. With
/// equal sizes this is the same prefix-aligned inverse transform on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalCoupling {
    common: Vec<usize>,
    only_x: Vec<usize>,
    only_y: Vec<usize>,
}

impl MaximalCoupling {
    /// From the two blocked sets (ascending) over a palette of `q` colors.
    pub fn from_blocked(blocked_x: &[usize], blocked_y: &[usize], q: usize) -> Self {
        let mut common = Vec::new();
        let mut only_x = Vec::new();
        let mut only_y = Vec::new();
        for c in 0..q {
            let in_x = blocked_x.binary_search(&c).is_err();
            let in_y = blocked_y.binary_search(&c).is_err();
            match (in_x, in_y) {
                (true, true) => common.push(c),
                (true, false) => only_x.push(c),
                (false, true) => only_y.push(c),
                (false, false) => {}
            }
        }
        MaximalCoupling { common, only_x, only_y }
    }

    pub fn size_x(&self) -> usize {
        self.common.len() + self.only_x.len()
    }

    pub fn size_y(&self) -> usize {
        self.common.len() + self.only_y.len()
    }

    pub fn common(&self) -> &[usize] {
        &self.common
    }

    /// Number of equally likely values of the shared draw; 0 when neither
    /// side has a color to draw.
    pub fn lattice(&self) -> u64 {
        let (ax, ay) = (self.size_x() as u64, self.size_y() as u64);
        match (ax, ay) {
            (0, 0) => 0,
            (0, a) | (a, 0) => a,
            (a, b) => a.lcm(&b),
        }
    }

    /// Colors chosen by each side for shared draw `u < lattice()`. `None`
    /// for a side with nothing available.
    pub fn resolve(&self, u: u64) -> (Option<usize>, Option<usize>) {
        let lattice = self.lattice();
        debug_assert!(u < lattice);
        let largest = self.size_x().max(self.size_y()) as u64;
        (
            self.resolve_side(&self.only_x, u, lattice, largest),
            self.resolve_side(&self.only_y, u, lattice, largest),
        )
    }

    fn resolve_side(&self, own: &[usize], u: u64, lattice: u64, largest: u64) -> Option<usize> {
        let size = (self.common.len() + own.len()) as u64;
        if size == 0 {
            return None;
        }
        let cell = lattice / size;
        if size == largest {
            let idx = (u / cell) as usize;
            return Some(if idx < self.common.len() { self.common[idx] } else { own[idx - self.common.len()] });
        }
        let shared_cell = lattice / largest;
        let shared_span = self.common.len() as u64 * shared_cell;
        if u < shared_span {
            return Some(self.common[(u / shared_cell) as usize]);
        }
        let mut rest = u - shared_span;
        let leftover = cell - shared_cell;
        if rest < leftover * self.common.len() as u64 {
            return Some(self.common[(rest / leftover) as usize]);
        }
        rest -= leftover * self.common.len() as u64;
        Some(own[(rest / cell) as usize])
    }

    /// `sum over common colors of min(1/|A_X|, 1/|A_Y|)`, when both sides
    /// have something to draw.
    pub fn agreement_probability(&self) -> Option<Ratio<u64>> {
        let largest = self.size_x().max(self.size_y()) as u64;
        (self.size_x() > 0 && self.size_y() > 0).then(|| Ratio::new(self.common.len() as u64, largest))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoupledStepRecord {
    pub vertex: usize,
    pub color_x: Option<u32>,
    pub color_y: Option<u32>,
}

impl CoupledStepRecord {
    /// Both sides drew the same color.
    pub fn agreed(&self) -> bool {
        self.color_x.is_some() && self.color_x == self.color_y
    }
}

/// A pair of colorings sharing one random stream.
#[derive(Debug, Clone)]
pub struct CoupledState<R> {
    x: Coloring,
    y: Coloring,
    t: u64,
    hamming: usize,
    rng: R,
    blocked_x: Vec<usize>,
    blocked_y: Vec<usize>,
}

impl<R: RngCore> CoupledState<R> {
    pub fn new(h: &Hypergraph, x: Coloring, y: Coloring, rng: R) -> Result<Self> {
        x.check_dims(h)?;
        y.check_dims(h)?;
        if x.q() != y.q() {
            return Err(Error::InvalidParameter("coupled colorings must share a palette"));
        }
        if h.n() == 0 {
            return Err(Error::InvalidParameter("chain needs at least one vertex"));
        }
        let hamming = x.hamming(&y);
        Ok(CoupledState { x, y, t: 0, hamming, rng, blocked_x: Vec::new(), blocked_y: Vec::new() })
    }

    pub fn step(&mut self, h: &Hypergraph) -> CoupledStepRecord {
        self.t += 1;
        let vertex = uniform_index(&mut self.rng, h.n());
        blocked_into(h, self.x.colors(), vertex, &mut self.blocked_x);
        blocked_into(h, self.y.colors(), vertex, &mut self.blocked_y);
        let coupling = MaximalCoupling::from_blocked(&self.blocked_x, &self.blocked_y, self.x.q());
        let lattice = coupling.lattice();
        if lattice == 0 {
            return CoupledStepRecord { vertex, color_x: None, color_y: None };
        }
        let (cx, cy) = coupling.resolve(uniform_below(&mut self.rng, lattice));
        let before = self.x.get(vertex) != self.y.get(vertex);
        if let Some(c) = cx {
            self.x.set(vertex, c as u32);
        }
        if let Some(c) = cy {
            self.y.set(vertex, c as u32);
        }
        let after = self.x.get(vertex) != self.y.get(vertex);
        self.hamming = self.hamming + usize::from(after) - usize::from(before);
        CoupledStepRecord { vertex, color_x: cx.map(|c| c as u32), color_y: cy.map(|c| c as u32) }
    }

    pub fn x(&self) -> &Coloring {
        &self.x
    }

    pub fn y(&self) -> &Coloring {
        &self.y
    }

    pub fn hamming(&self) -> usize {
        self.hamming
    }

    pub fn steps_taken(&self) -> u64 {
        self.t
    }

    pub fn coalesced(&self) -> bool {
        self.hamming == 0
    }
}

/// Exact joint law of one coupled step, keyed by the codes of the next pair.
pub fn coupled_law(h: &Hypergraph, x: &Coloring, y: &Coloring) -> Result<BTreeMap<(u64, u64), Ratio<u64>>> {
    x.check_dims(h)?;
    y.check_dims(h)?;
    let n = h.n() as u64;
    let mut law = BTreeMap::new();
    let (mut bx, mut by) = (Vec::new(), Vec::new());
    for v in 0..h.n() {
        blocked_into(h, x.colors(), v, &mut bx);
        blocked_into(h, y.colors(), v, &mut by);
        let coupling = MaximalCoupling::from_blocked(&bx, &by, x.q());
        let lattice = coupling.lattice();
        if lattice == 0 {
            *law.entry((x.code(), y.code())).or_insert_with(|| Ratio::from_integer(0)) += Ratio::new(1, n);
            continue;
        }
        for u in 0..lattice {
            let (cx, cy) = coupling.resolve(u);
            let (mut nx, mut ny) = (x.clone(), y.clone());
            if let Some(c) = cx {
                nx.set(v, c as u32);
            }
            if let Some(c) = cy {
                ny.set(v, c as u32);
            }
            *law.entry((nx.code(), ny.code())).or_insert_with(|| Ratio::from_integer(0)) += Ratio::new(1, n * lattice);
        }
    }
    Ok(law)
}

/// Observer called after each coupled step with the Hamming distance.
pub type StepObserver<'a> = &'a mut dyn FnMut(u64, &CoupledStepRecord, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coalescence {
    Coalesced { t: u64 },
    Timeout { hamming: usize },
}

/// Runs the coupled chains until they meet or `max_steps` is spent.
/// `trace` sees every step with the Hamming distance after it.
pub fn coalescence_run<R: RngCore>(
    h: &Hypergraph,
    x0: Coloring,
    y0: Coloring,
    max_steps: u64,
    rng: R,
    mut trace: Option<StepObserver<'_>>,
) -> Result<Coalescence> {
    let mut state = CoupledState::new(h, x0, y0, rng)?;
    if state.coalesced() {
        return Ok(Coalescence::Coalesced { t: 0 });
    }
    for t in 1..=max_steps {
        let record = state.step(h);
        if let Some(f) = trace.as_mut() {
            f(t, &record, state.hamming());
        }
        if state.coalesced() {
            return Ok(Coalescence::Coalesced { t });
        }
    }
    Ok(Coalescence::Timeout { hamming: state.hamming() })
}

/// Running sums for the one-step Hamming contraction ratio.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ContractionTally {
    pub sum: f64,
    pub sum_sq: f64,
    pub samples: usize,
    pub pairs: usize,
    pub discarded: usize,
}

impl ContractionTally {
    pub fn merge(&mut self, other: &ContractionTally) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.samples += other.samples;
        self.pairs += other.pairs;
        self.discarded += other.discarded;
    }

    pub fn report(&self, n: usize, q: usize) -> Result<ContractionReport> {
        if self.samples < 2 {
            return Err(Error::InsufficientSamples { got: self.samples, need: 2 });
        }
        let count = self.samples as f64;
        let mean = self.sum / count;
        let var = ((self.sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
        Ok(ContractionReport {
            n,
            q,
            bound: 1.0 - 1.0 / (2.0 * n as f64),
            mean_ratio: mean,
            se: libm::sqrt(var / count),
            samples: self.samples,
            discarded: self.discarded,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionReport {
    pub n: usize,
    pub q: usize,
    /// `1 - 1/(2n)`.
    pub bound: f64,
    pub mean_ratio: f64,
    pub se: f64,
    pub samples: usize,
    pub discarded: usize,
}

impl ContractionReport {
    /// `mean_ratio <= bound + sigmas * se`.
    pub fn within(&self, sigmas: f64) -> bool {
        self.mean_ratio <= self.bound + sigmas * self.se
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionConfig {
    /// Qualifying starting pairs to collect.
    pub pairs: usize,
    pub steps_per_pair: usize,
    /// Give up after this many discarded draws in a row.
    pub max_discards: usize,
}

/// Draws independent uniform pairs, keeps those where both sides are good at
/// scale 2 and distinct, and records `h(X', Y') / h(X, Y)` for every coupled
/// step taken from a qualifying state.
pub fn contraction_tally<R: RngCore>(
    h: &Hypergraph,
    params: &GoodnessParams,
    config: &ContractionConfig,
    mut rng: R,
) -> Result<ContractionTally> {
    let relaxed = params.clone().with_scale(2);
    let q = params.q();
    let qualifies = |x: &Coloring, y: &Coloring| -> Result<bool> {
        Ok(x != y && classify_goodness(h, x, &relaxed)?.is_good() && classify_goodness(h, y, &relaxed)?.is_good())
    };
    let mut tally = ContractionTally::default();
    let mut streak = 0usize;
    while tally.pairs < config.pairs {
        let x = Coloring::random(h.n(), q, &mut rng)?;
        let y = Coloring::random(h.n(), q, &mut rng)?;
        if !qualifies(&x, &y)? {
            tally.discarded += 1;
            streak += 1;
            if streak >= config.max_discards {
                break;
            }
            continue;
        }
        streak = 0;
        tally.pairs += 1;
        let mut state = CoupledState::new(h, x, y, &mut rng)?;
        for _ in 0..config.steps_per_pair {
            let ok = qualifies(state.x(), state.y())?;
            let before = state.hamming();
            state.step(h);
            if ok {
                let ratio = state.hamming() as f64 / before as f64;
                tally.sum += ratio;
                tally.sum_sq += ratio * ratio;
                tally.samples += 1;
            }
            if state.coalesced() {
                break;
            }
        }
    }
    Ok(tally)
}

pub fn contraction_estimate<R: RngCore>(
    h: &Hypergraph,
    params: &GoodnessParams,
    config: &ContractionConfig,
    rng: R,
) -> Result<ContractionReport> {
    contraction_tally(h, params, config, rng)?.report(h.n(), params.q())
}
