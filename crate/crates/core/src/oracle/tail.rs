use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::coloring::goodness::GoodnessParams;
use crate::{Error, Result};

/// The large-deviation bound on `Pr_Omega(y_{v,i} >= mu_i)` and the
/// simplified estimates it is chained through. Everything is carried as a
/// natural log because the values underflow quickly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub level: usize,
    pub mu: f64,
    /// `ln (e C(k-1,i) (i/q)^{k-1-i} Delta / mu_i)^{mu_i}`.
    pub ln_value: f64,
    /// `ln 10^{-2 mu_i}`.
    pub ln_ten_mu: f64,
    /// `ln 10^{-2 eps q}`.
    pub ln_ten_eps_q: f64,
    /// `ln ((k-2) 10^{-2 eps q})`, the union over levels.
    pub ln_union: f64,
    /// `ln e^{-eps q} = -eps q`.
    pub ln_exp_eps_q: f64,
}

impl TailBound {
    pub fn value(&self) -> f64 {
        libm::exp(self.ln_value)
    }

    /// A bound of 1 or more says nothing.
    pub fn vacuous(&self) -> bool {
        self.ln_value >= 0.0
    }

    pub fn clamped(&self) -> f64 {
        self.value().min(1.0)
    }
}

fn ln_binomial(n: usize, r: usize) -> f64 {
    (0..r).map(|j| libm::log((n - j) as f64) - libm::log((j + 1) as f64)).sum()
}

/// Bound for level `1 <= i <= k - 2` under `params` (its eps, scale, q and
/// max degree).
pub fn level_tail_bound(params: &GoodnessParams, i: usize) -> Result<TailBound> {
    let k = params.k();
    if i < 1 || i > k - 2 {
        return Err(Error::InvalidParameter("tail bound level must satisfy 1 <= i <= k - 2"));
    }
    let q = params.q() as f64;
    let mu = params.mu(i);
    let eps_q = params.eps().value() * f64::from(params.scale()) * q;
    let ln_base = 1.0 + ln_binomial(k - 1, i) + (k - 1 - i) as f64 * libm::log(i as f64 / q)
        + libm::log(params.max_degree() as f64)
        - libm::log(mu);
    let ln_value = if params.max_degree() == 0 { f64::NEG_INFINITY } else { mu * ln_base };
    let ln10 = core::f64::consts::LN_10;
    Ok(TailBound {
        level: i,
        mu,
        ln_value,
        ln_ten_mu: -2.0 * mu * ln10,
        ln_ten_eps_q: -2.0 * eps_q * ln10,
        ln_union: libm::log((k - 2) as f64) - 2.0 * eps_q * ln10,
        ln_exp_eps_q: -eps_q,
    })
}

/// `Pr(Bin(trials, p) >= threshold)`, exactly.
pub fn binomial_upper_tail(trials: u64, p: &BigRational, threshold: u64) -> BigRational {
    let one = BigRational::one();
    let miss = &one - p;
    let mut total = BigRational::zero();
    let mut choose = BigUint::one();
    for j in 0..=trials {
        if j > 0 {
            choose = choose * BigUint::from(trials - j + 1) / BigUint::from(j);
        }
        if j >= threshold {
            let term = BigRational::from_integer(BigInt::from(choose.clone()))
                * Pow::pow(p, j as u32)
                * Pow::pow(&miss, (trials - j) as u32);
            total += term;
        }
    }
    total
}

/// `Pr_Omega(y_{0,1} >= threshold)` at the center of `sunflower(d, k)`:
/// petals are independent and each is monochromatic off the center with
/// probability `q^{-(k-2)}`.
pub fn sunflower_center_tail(d: usize, k: usize, q: usize, threshold: u64) -> BigRational {
    let p = BigRational::new(BigInt::one(), BigInt::from(Pow::pow(BigUint::from(q as u64), (k - 2) as u32)));
    binomial_upper_tail(d as u64, &p, threshold)
}
