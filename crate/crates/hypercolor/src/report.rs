//! The JSON envelope every subcommand emits.

use std::time::{SystemTime, UNIX_EPOCH};

use hypercolor_core::coloring::goodness::regime_check;
use hypercolor_core::{GoodnessParams, Regime};
use serde::Serialize;
use serde_json::Value;

use crate::rng::RNG_NAME;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct RegimeVerdict {
    pub verdict: &'static str,
    pub low_color_regime: bool,
    pub log_threshold: f64,
    pub degree_threshold: f64,
    pub meets_log_threshold: bool,
    pub meets_degree_threshold: bool,
}

pub fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Jerrum => "jerrum",
        Regime::LowColor => "low_color",
        Regime::BelowThreshold => "below_threshold",
    }
}

/// Resolved goodness parameters as they appear in a report.
#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub k: usize,
    pub q: usize,
    pub n: usize,
    pub max_degree: usize,
    pub eps: String,
    pub eps_value: f64,
    pub eps_override: bool,
    pub scale: u32,
    pub mu: Vec<f64>,
    pub thresholds: Vec<u64>,
    pub c_k: f64,
    pub c: f64,
    pub t_star: f64,
    pub regime: RegimeVerdict,
}

impl Parameters {
    pub fn new(params: &GoodnessParams, eps_override: bool) -> Self {
        let r = regime_check(params);
        Parameters {
            k: params.k(),
            q: params.q(),
            n: params.n(),
            max_degree: params.max_degree(),
            eps: params.eps().to_string(),
            eps_value: params.eps().value(),
            eps_override,
            scale: params.scale(),
            mu: params.mu_vector(),
            thresholds: params.thresholds().to_vec(),
            c_k: params.c_k(),
            c: params.c(),
            t_star: params.t_star(),
            regime: RegimeVerdict {
                verdict: regime_name(r.regime),
                low_color_regime: r.regime == Regime::LowColor,
                log_threshold: r.log_threshold,
                degree_threshold: r.degree_threshold,
                meets_log_threshold: r.meets_log_threshold,
                meets_degree_threshold: r.meets_degree_threshold,
            },
        }
    }
}

/// A level that reached its threshold at some vertex.
#[derive(Debug, Clone, Serialize)]
pub struct BadRecord {
    pub vertex: usize,
    pub i: usize,
    pub y: usize,
    pub mu: f64,
    pub scale: u32,
}

pub fn bad_records(witnesses: &[(usize, usize, usize)], params: &GoodnessParams) -> Vec<BadRecord> {
    witnesses
        .iter()
        .map(|&(vertex, i, y)| BadRecord { vertex, i, y, mu: params.mu(i), scale: params.scale() })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    /// Seconds since the Unix epoch; the only field allowed to differ
    /// between reruns.
    pub timestamp: u64,
    pub rng: &'static str,
    pub seed: Option<u64>,
    pub config: Value,
    pub parameters: Option<Parameters>,
    pub result: Value,
    pub warnings: Vec<String>,
    /// Set when an oracle check found a violated inequality.
    pub invariant_violation: Option<String>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, config: impl Serialize) -> Result<Self> {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Ok(Report {
            command: command.to_owned(),
            version: env!("CARGO_PKG_VERSION"),
            timestamp,
            rng: RNG_NAME,
            seed,
            config: serde_json::to_value(config)?,
            parameters: None,
            result: Value::Null,
            warnings: Vec::new(),
            invariant_violation: None,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report with its timestamp removed, for reproducibility checks.
    pub fn canonical(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timestamp");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }
}

/// Drops the `timestamp` field from a serialized report.
pub fn strip_timestamp(json: &str) -> Result<String> {
    let mut value: Value = serde_json::from_str(json)?;
    if let Some(obj) = value.as_object_mut() {
        obj.remove("timestamp");
    }
    Ok(serde_json::to_string_pretty(&value)?)
}
