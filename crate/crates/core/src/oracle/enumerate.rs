use alloc::vec::Vec;
use core::ops::Range;

use crate::coloring::goodness::{first_bad_level, GoodnessParams};
use crate::coloring::is_proper_colors;
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// Default cap on `q^n` for exhaustive scans.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// `q^n`, saturating at `u128::MAX`.
pub fn state_count(n: usize, q: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = match total.checked_mul(q as u128) {
            Some(t) => t,
            None => return u128::MAX,
        };
    }
    total
}

pub(crate) fn checked_space(n: usize, q: usize, budget: u64) -> Result<u64> {
    let states = state_count(n, q);
    if states > u128::from(budget) {
        return Err(Error::BudgetExceeded { states, budget });
    }
    Ok(states as u64)
}

/// Walks colorings in code order over a code range.
pub struct OmegaWalk {
    colors: Vec<u32>,
    q: u32,
    next: u64,
    end: u64,
    started: bool,
}

impl OmegaWalk {
    pub fn new(n: usize, q: usize, range: Range<u64>) -> Self {
        let mut colors = Vec::with_capacity(n);
        let mut rest = range.start;
        for _ in 0..n {
            colors.push((rest % q as u64) as u32);
            rest /= q as u64;
        }
        OmegaWalk { colors, q: q as u32, next: range.start, end: range.end, started: false }
    }

    /// Next code and its colors. Lending, so not an `Iterator`.
    pub fn next_state(&mut self) -> Option<(u64, &[u32])> {
        if self.next >= self.end {
            return None;
        }
        if self.started {
            for c in self.colors.iter_mut() {
                *c += 1;
                if *c < self.q {
                    break;
                }
                *c = 0;
            }
        }
        self.started = true;
        let code = self.next;
        self.next += 1;
        Some((code, &self.colors))
    }
}

/// Proper colorings with codes in `range`, ascending.
pub fn enumerate_proper_range(h: &Hypergraph, q: usize, range: Range<u64>) -> Vec<u64> {
    let mut walk = OmegaWalk::new(h.n(), q, range);
    let mut out = Vec::new();
    while let Some((code, colors)) = walk.next_state() {
        if is_proper_colors(h, colors) {
            out.push(code);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub n: usize,
    pub q: usize,
    /// Codes of all proper colorings, ascending.
    pub proper: Vec<u64>,
    /// Per-coloring goodness, aligned with `proper`, once computed.
    pub good: Option<Vec<bool>>,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.proper.len()
    }

    pub fn omega_size(&self) -> u64 {
        state_count(self.n, self.q) as u64
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.proper.binary_search(&code).ok()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.index_of(code).is_some()
    }

    pub fn with_goodness(mut self, h: &Hypergraph, params: &GoodnessParams) -> Self {
        let mut counts = Vec::new();
        let mut colors = alloc::vec![0u32; self.n];
        let flags = self
            .proper
            .iter()
            .map(|&code| {
                let mut rest = code;
                for c in colors.iter_mut() {
                    *c = (rest % self.q as u64) as u32;
                    rest /= self.q as u64;
                }
                (0..self.n).all(|v| first_bad_level(h, &colors, v, params, &mut counts).is_none())
            })
            .collect();
        self.good = Some(flags);
        self
    }

    pub fn good_count(&self) -> Option<usize> {
        self.good.as_ref().map(|g| g.iter().filter(|&&b| b).count())
    }
}

/// Every proper `q`-coloring, by exhaustive scan of `Q^V`.
pub fn enumerate_proper(h: &Hypergraph, q: usize, budget: u64) -> Result<EnumerationResult> {
    if q == 0 {
        return Err(Error::EmptyPalette);
    }
    let total = checked_space(h.n(), q, budget)?;
    let proper = enumerate_proper_range(h, q, 0..total);
    Ok(EnumerationResult { n: h.n(), q, proper, good: None })
}
