use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};

use crate::hypergraph::Hypergraph;

/// `p = q^{-(k-1)}` and the uniform weight `theta = 2p`.
#[derive(Debug, Clone, PartialEq)]
pub struct LllParams {
    /// `q^{k-1}`.
    pub inverse_p: BigUint,
    pub p: f64,
    pub theta: f64,
}

impl LllParams {
    pub fn new(k: usize, q: usize) -> Self {
        let inverse_p: BigUint = Pow::pow(BigUint::from(q as u64), (k - 1) as u32);
        let p = 1.0 / inverse_p.to_f64().unwrap_or(f64::INFINITY);
        LllParams { inverse_p, p, theta: 2.0 * p }
    }

    pub fn theta_at_most_half(&self) -> bool {
        self.inverse_p >= BigUint::from(4u32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgePremise {
    pub edge: usize,
    /// Other edges sharing a vertex with this one.
    pub dependents: usize,
    /// `theta (1 - theta)^dependents`.
    pub product: f64,
    /// `p <= product`, decided exactly.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LllReport {
    pub params: LllParams,
    pub edges: Vec<EdgePremise>,
    pub theta_at_most_half: bool,
    /// Every edge satisfies the premise and `theta <= 1/2`.
    pub holds: bool,
    /// `k Delta theta`.
    pub k_delta_theta: f64,
    /// `theta exp(-2 k Delta theta)`, the lower estimate of the product.
    pub chain_lower: f64,
    /// `chain_lower >= p`.
    pub chain_holds: bool,
}

/// Evaluates `p <= x_e prod_{f meets e, f != e} (1 - x_f)` with every
/// weight equal to `theta = 2/q^{k-1}`.
pub fn lll_premise_check(h: &Hypergraph, q: usize) -> LllReport {
    let params = LllParams::new(h.k(), q);
    let big_q = params.inverse_p.clone();
    let two = BigUint::from(2u32);
    let edges: Vec<EdgePremise> = (0..h.m())
        .map(|edge| {
            let dependents = h.edge_dependency_degree(edge);
            let product = params.theta * libm::pow(1.0 - params.theta, dependents as f64);
            // 1/Q <= (2/Q) ((Q-2)/Q)^d  <=>  Q^d <= 2 (Q-2)^d
            let holds = big_q >= two && {
                let d = dependents as u32;
                Pow::pow(&big_q, d) <= &two * Pow::pow(&big_q - &two, d)
            };
            EdgePremise { edge, dependents, product, holds }
        })
        .collect();
    let theta_at_most_half = params.theta_at_most_half();
    let holds = theta_at_most_half && edges.iter().all(|e| e.holds);
    let k_delta_theta = (h.k() * h.max_degree()) as f64 * params.theta;
    let chain_lower = params.theta * libm::exp(-2.0 * k_delta_theta);
    let chain_holds = chain_lower >= params.p;
    LllReport { params, edges, theta_at_most_half, holds, k_delta_theta, chain_lower, chain_holds }
}
