//! Threshold sequences and the good/bad classification of colorings.
//!
//! A coloring is bad when some vertex `v` and level `1 <= i <= k - 2` has
//! `y_{v,i} >= mu_i = (s * eps * q)^i`, good otherwise. `s = 1` is the base
//! notion; `s = 2` is the relaxed one used while tracking a running chain.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::{blocked_into, Coloring};
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// A positive rational `num / den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Eps {
    num: u64,
    den: u64,
}

impl Eps {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidParameter("eps must be a positive fraction"));
        }
        let g = num.gcd(&den);
        Ok(Eps { num: num / g, den: den / g })
    }

    /// `1 / (50 k^2)`.
    pub fn default_for(k: usize) -> Self {
        let k = k as u64;
        Eps { num: 1, den: 50 * k * k }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/b` or a plain decimal such as `0.125`.
impl FromStr for Eps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = Error::InvalidParameter("eps must look like `a/b` or a decimal");
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad.clone())?;
            let b = b.trim().parse().map_err(|_| bad)?;
            return Eps::new(a, b);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || (whole.is_empty() && frac.is_empty()) {
            return Err(bad);
        }
        let digits = alloc::format!("{whole}{frac}");
        let num: u64 = digits.parse().map_err(|_| bad)?;
        Eps::new(num, 10u64.pow(frac.len() as u32))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoodnessParams {
    k: usize,
    q: usize,
    n: usize,
    max_degree: usize,
    eps: Eps,
    scale: u32,
    c_k: f64,
    c: f64,
    /// `ceil(mu_i)` for `i = 1..=k-2`; an integer `y` satisfies
    /// `y >= mu_i` iff `y >= ceil(mu_i)`.
    thresholds: Vec<u64>,
}

impl GoodnessParams {
    /// Parameters with `eps = 1/(50k^2)`, scale 1, `C_k = 200k^2`, `c = 1`.
    pub fn new(k: usize, q: usize, n: usize, max_degree: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter("goodness needs k >= 3"));
        }
        if q == 0 {
            return Err(Error::EmptyPalette);
        }
        let mut params = GoodnessParams {
            k,
            q,
            n,
            max_degree,
            eps: Eps::default_for(k),
            scale: 1,
            c_k: 200.0 * (k * k) as f64,
            c: 1.0,
            thresholds: Vec::new(),
        };
        params.refresh();
        Ok(params)
    }

    pub fn for_hypergraph(h: &Hypergraph, q: usize) -> Result<Self> {
        Self::new(h.k(), q, h.n(), h.max_degree())
    }

    pub fn with_eps(mut self, eps: Eps) -> Self {
        self.eps = eps;
        self.refresh();
        self
    }

    pub fn with_scale(mut self, scale: u32) -> Self {
        assert!(scale >= 1, "scale must be positive");
        self.scale = scale;
        self.refresh();
        self
    }

    pub fn with_c_k(mut self, c_k: f64) -> Self {
        self.c_k = c_k;
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    fn refresh(&mut self) {
        self.thresholds = (1..=self.k - 2).map(|i| ceil_to_u64(&self.mu_exact(i))).collect();
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn c_k(&self) -> f64 {
        self.c_k
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `s * eps * q` as an exact rational.
    pub fn base_exact(&self) -> BigRational {
        self.eps.to_ratio() * BigInt::from(self.scale) * BigInt::from(self.q)
    }

    /// `mu_i` exactly: `(s eps q)^i` for `i <= k - 2`, `Delta` for `i = k - 1`.
    pub fn mu_exact(&self, i: usize) -> BigRational {
        assert!((1..self.k).contains(&i), "level {i} outside 1..k");
        if i == self.k - 1 {
            return BigRational::from_integer(BigInt::from(self.max_degree));
        }
        Pow::pow(self.base_exact(), i as u32)
    }

    pub fn mu(&self, i: usize) -> f64 {
        if i == self.k - 1 {
            return self.max_degree as f64;
        }
        libm::pow(self.eps.value() * f64::from(self.scale) * self.q as f64, i as f64)
    }

    /// `(mu_1, ..., mu_{k-1})`.
    pub fn mu_vector(&self) -> Vec<f64> {
        (1..self.k).map(|i| self.mu(i)).collect()
    }

    /// Smallest integer count that reaches `mu_i`, for `1 <= i <= k - 2`.
    pub fn threshold(&self, i: usize) -> u64 {
        self.thresholds[i - 1]
    }

    pub fn thresholds(&self) -> &[u64] {
        &self.thresholds
    }

    /// `t* = exp(c mu_1 / 2)` at scale 1.
    pub fn t_star(&self) -> f64 {
        let mu1 = self.eps.value() * self.q as f64;
        libm::exp(self.c * mu1 / 2.0)
    }
}

fn ceil_to_u64(r: &BigRational) -> u64 {
    r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goodness {
    Good,
    /// Lowest offending vertex, then lowest level at that vertex.
    Bad { vertex: usize, level: usize, y: usize },
}

impl Goodness {
    pub fn is_good(&self) -> bool {
        matches!(self, Goodness::Good)
    }
}

pub fn classify_goodness(h: &Hypergraph, x: &Coloring, params: &GoodnessParams) -> Result<Goodness> {
    x.check_dims(h)?;
    check_shape(h, params)?;
    let mut counts = Vec::new();
    for v in 0..h.n() {
        if let Some((level, y)) = first_bad_level(h, x.colors(), v, params, &mut counts) {
            return Ok(Goodness::Bad { vertex: v, level, y });
        }
    }
    Ok(Goodness::Good)
}

/// Every `(vertex, level, y)` that reaches its threshold.
pub fn bad_witnesses(h: &Hypergraph, x: &Coloring, params: &GoodnessParams) -> Result<Vec<(usize, usize, usize)>> {
    x.check_dims(h)?;
    check_shape(h, params)?;
    let mut counts = Vec::new();
    let mut out = Vec::new();
    for v in 0..h.n() {
        level_counts(h, x.colors(), v, params.k(), &mut counts);
        for (idx, &y) in counts[..params.k() - 2].iter().enumerate() {
            if y as u64 >= params.threshold(idx + 1) {
                out.push((v, idx + 1, y));
            }
        }
    }
    Ok(out)
}

fn check_shape(h: &Hypergraph, params: &GoodnessParams) -> Result<()> {
    if h.k() != params.k() {
        return Err(Error::InvalidParameter("goodness parameters were built for a different k"));
    }
    Ok(())
}

pub(crate) fn level_counts(h: &Hypergraph, colors: &[u32], v: usize, k: usize, counts: &mut Vec<usize>) {
    counts.clear();
    counts.resize(k - 1, 0);
    for &e in h.incident(v) {
        let edge = h.edge(e);
        let mut distinct = 0;
        for (a, &w) in edge.iter().enumerate() {
            if w == v {
                continue;
            }
            let c = colors[w];
            if !edge[..a].iter().any(|&u| u != v && colors[u] == c) {
                distinct += 1;
            }
        }
        counts[distinct - 1] += 1;
    }
}

pub(crate) fn first_bad_level(
    h: &Hypergraph,
    colors: &[u32],
    v: usize,
    params: &GoodnessParams,
    counts: &mut Vec<usize>,
) -> Option<(usize, usize)> {
    level_counts(h, colors, v, params.k(), counts);
    counts[..params.k() - 2]
        .iter()
        .enumerate()
        .find(|(idx, &y)| y as u64 >= params.threshold(idx + 1))
        .map(|(idx, &y)| (idx + 1, y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AvailabilityReport {
    pub min_available: usize,
    /// `(1 - s eps) q`.
    pub bound: f64,
    /// Vertices with fewer available colors than the bound. Always empty
    /// unless something is broken.
    pub violations: Vec<usize>,
}

/// For a good coloring, checks `|A(v, X)| >= (1 - s eps) q` at every vertex.
pub fn goodness_implies_available(
    h: &Hypergraph,
    x: &Coloring,
    params: &GoodnessParams,
) -> Result<AvailabilityReport> {
    if let Goodness::Bad { vertex, level, .. } = classify_goodness(h, x, params)? {
        return Err(Error::NotGood { vertex, level });
    }
    let q = params.q() as u128;
    let num = u128::from(params.eps().num()) * u128::from(params.scale());
    let den = u128::from(params.eps().den());
    let mut blocked = Vec::new();
    let mut min_available = params.q();
    let mut violations = Vec::new();
    for v in 0..h.n() {
        blocked_into(h, x.colors(), v, &mut blocked);
        let avail = params.q() - blocked.len();
        min_available = min_available.min(avail);
        // avail >= (1 - num/den) q  <=>  avail * den + num * q >= den * q
        if (avail as u128) * den + num * q < den * q {
            violations.push(v);
        }
    }
    let bound = (1.0 - params.eps().value() * f64::from(params.scale())) * params.q() as f64;
    Ok(AvailabilityReport { min_available, bound, violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `q > 2 Delta`: the classical analysis already applies.
    Jerrum,
    /// `q <= 2 Delta` and `q` clears both lower thresholds.
    LowColor,
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    /// `C_k ln n`.
    pub log_threshold: f64,
    /// `10 k eps^-1 Delta^{1/(k-1)}`.
    pub degree_threshold: f64,
    pub meets_log_threshold: bool,
    pub meets_degree_threshold: bool,
}

/// `10 k / eps`; equals `500 k^3` at the default eps.
pub fn degree_coefficient(k: usize, eps: Eps) -> BigRational {
    BigRational::from_integer(BigInt::from(10 * k as u64)) / eps.to_ratio()
}

pub fn regime_check(params: &GoodnessParams) -> RegimeReport {
    let k = params.k();
    let delta = params.max_degree();
    let q = params.q();
    let log_threshold = params.c_k() * libm::log(params.n().max(1) as f64);
    let coefficient = degree_coefficient(k, params.eps());
    let degree_threshold =
        coefficient.to_f64().unwrap_or(f64::INFINITY) * libm::pow(delta as f64, 1.0 / (k - 1) as f64);

    // q >= (10k/eps) Delta^{1/(k-1)}  <=>  (q eps)^{k-1} >= Delta (10k)^{k-1}, done exactly.
    let exponent = (k - 1) as u32;
    let lhs: BigUint = Pow::pow(BigUint::from(q as u64) * params.eps().num(), exponent);
    let rhs: BigUint =
        BigUint::from(delta as u64) * Pow::pow(BigUint::from(10 * k as u64) * params.eps().den(), exponent);
    let meets_degree_threshold = lhs >= rhs;
    let meets_log_threshold = q as f64 >= log_threshold;

    let regime = if q > 2 * delta {
        Regime::Jerrum
    } else if meets_degree_threshold && meets_log_threshold {
        Regime::LowColor
    } else {
        Regime::BelowThreshold
    };
    RegimeReport { regime, log_threshold, degree_threshold, meets_log_threshold, meets_degree_threshold }
}

/// Exact check of `10k mu_i <= mu_{i+1} <= eps q mu_i` for `1 <= i <= k - 3`.
pub fn mu_sequence_holds(params: &GoodnessParams) -> bool {
    let ten_k = BigRational::from_integer(BigInt::from(10 * params.k() as u64));
    let step = params.base_exact();
    (1..params.k().saturating_sub(2)).all(|i| {
        let mu_i = params.mu_exact(i);
        let next = params.mu_exact(i + 1);
        ten_k.clone() * mu_i.clone() <= next && next <= step.clone() * mu_i
    })
}

/// True iff `mu_i` is an integer, in which case the threshold is sharp
/// without any rounding at all.
pub fn mu_is_integral(params: &GoodnessParams, i: usize) -> bool {
    let mu = params.mu_exact(i);
    mu.denom().is_one() || mu.numer().is_zero()
}
