use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};

use super::enumerate::{checked_space, OmegaWalk};
use super::lll::LllReport;
use crate::coloring::goodness::{first_bad_level, GoodnessParams};
use crate::coloring::is_proper_colors;
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// Exact counts from one scan of `Q^V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventCensus {
    pub n: usize,
    pub q: usize,
    pub omega_total: u64,
    pub proper_total: u64,
    /// Colorings in which vertex `v` is not good.
    pub omega_bad: Vec<u64>,
    pub proper_bad: Vec<u64>,
    /// Colorings in which edge `e` is monochromatic.
    pub omega_mono: Vec<u64>,
}

pub fn event_census(h: &Hypergraph, q: usize, params: &GoodnessParams, budget: u64) -> Result<EventCensus> {
    let omega_total = checked_space(h.n(), q, budget)?;
    let mut omega_bad = vec![0u64; h.n()];
    let mut proper_bad = vec![0u64; h.n()];
    let mut omega_mono = vec![0u64; h.m()];
    let mut proper_total = 0;
    let mut counts = Vec::new();
    let mut walk = OmegaWalk::new(h.n(), q, 0..omega_total);
    while let Some((_, colors)) = walk.next_state() {
        let proper = is_proper_colors(h, colors);
        proper_total += u64::from(proper);
        for (e, edge) in h.edges().iter().enumerate() {
            if edge.iter().all(|&w| colors[w] == colors[edge[0]]) {
                omega_mono[e] += 1;
            }
        }
        for v in 0..h.n() {
            if first_bad_level(h, colors, v, params, &mut counts).is_some() {
                omega_bad[v] += 1;
                proper_bad[v] += u64::from(proper);
            }
        }
    }
    Ok(EventCensus { n: h.n(), q, omega_total, proper_total, omega_bad, proper_bad, omega_mono })
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventProbabilities {
    pub vertex: usize,
    /// `Pr_Omega(v not good)`.
    pub pr_omega_av: BigRational,
    /// `Pr_Q(v not good)`.
    pub pr_q_av: BigRational,
    /// `Pr_Omega(e monochromatic)` for every edge.
    pub pr_omega_be: Vec<BigRational>,
}

impl EventCensus {
    pub fn probabilities(&self, v: usize) -> Result<EventProbabilities> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.proper_total == 0 {
            return Err(Error::EmptyProperSet);
        }
        Ok(EventProbabilities {
            vertex: v,
            pr_omega_av: ratio(self.omega_bad[v], self.omega_total),
            pr_q_av: ratio(self.proper_bad[v], self.proper_total),
            pr_omega_be: self.omega_mono.iter().map(|&c| ratio(c, self.omega_total)).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HssCheck {
    pub vertex: usize,
    /// Edges meeting some edge through `v`.
    pub neighborhood: usize,
    pub lhs: BigRational,
    /// `Pr_Omega(A_v) prod (1 - theta)^{-1}`; `None` if `theta >= 1`.
    pub rhs: Option<BigRational>,
    pub premise_holds: bool,
    /// The inequality, asserted only when the premise holds.
    pub holds: Option<bool>,
}

impl HssCheck {
    pub fn lhs_f64(&self) -> f64 {
        self.lhs.to_f64().unwrap_or(f64::NAN)
    }

    pub fn rhs_f64(&self) -> Option<f64> {
        self.rhs.as_ref().and_then(ToPrimitive::to_f64)
    }

    /// `lhs / rhs` when both are defined and `rhs > 0`.
    pub fn ratio(&self) -> Option<f64> {
        let rhs = self.rhs.as_ref()?;
        if rhs.is_zero() {
            return None;
        }
        (self.lhs.clone() / rhs.clone()).to_f64()
    }
}

/// Compares `Pr_Q(A_v)` with `Pr_Omega(A_v) prod_{f in N_v} (1 - theta)^{-1}`
/// in exact arithmetic.
pub fn hss_transfer_check(h: &Hypergraph, census: &EventCensus, premise: &LllReport, v: usize) -> Result<HssCheck> {
    let probs = census.probabilities(v)?;
    let neighborhood = h.neighborhood(v)?.len();
    let big_q = &premise.params.inverse_p;
    let two = BigUint::from(2u32);
    let rhs = (*big_q > two).then(|| {
        let inflation = BigRational::new(
            BigInt::from(Pow::pow(big_q.clone(), neighborhood as u32)),
            BigInt::from(Pow::pow(big_q - &two, neighborhood as u32)),
        );
        probs.pr_omega_av.clone() * inflation
    });
    let holds = match (&rhs, premise.holds) {
        (Some(r), true) => Some(probs.pr_q_av <= *r),
        _ => None,
    };
    Ok(HssCheck { vertex: v, neighborhood, lhs: probs.pr_q_av, rhs, premise_holds: premise.holds, holds })
}
