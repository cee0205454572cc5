use hypercolor_core::coloring::is_proper;
use hypercolor_core::dynamics::{mixing_horizon, random_initial, ChainState};
use hypercolor_core::oracle::{state_count, DEFAULT_BUDGET};
use serde::Serialize;
use serde_json::json;

use super::{as_display, GoodnessOpts};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{parallel, Result};

#[derive(Debug, Clone, Serialize)]
pub struct MixConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub delta: f64,
    pub replicas: u64,
    pub seed: u64,
    /// Replaces `t_delta` when set.
    pub steps: Option<u64>,
    pub budget: u64,
    pub goodness: GoodnessOpts,
}

impl MixConfig {
    pub fn new(graph: GraphSource, q: usize, delta: f64, replicas: u64, seed: u64) -> Self {
        MixConfig { graph, q, delta, replicas, seed, steps: None, budget: DEFAULT_BUDGET, goodness: GoodnessOpts::default() }
    }
}

/// Distance from the empirical law of `codes` (sorted) to uniform on
/// `proper` (sorted), in integers until the final division.
pub fn tvd_sorted(proper: &[u64], codes: &[u64]) -> f64 {
    let samples = codes.len() as u128;
    let size = proper.len() as u128;
    if samples == 0 || size == 0 {
        return 1.0;
    }
    let mut numerator = 0u128;
    let mut on_proper = 0u128;
    let mut rest = codes;
    for &p in proper {
        let start = rest.partition_point(|&c| c < p);
        let len = rest[start..].partition_point(|&c| c == p);
        rest = &rest[start + len..];
        let c = len as u128;
        on_proper += c;
        numerator += (c * size).abs_diff(samples);
    }
    numerator += (samples - on_proper) * size;
    numerator as f64 / (2.0 * samples as f64 * size as f64)
}

pub fn cmd_mix(config: &MixConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let q = config.q;
    let mut report = Report::new("mix", Some(config.seed), config)?;
    if h.k() >= 3 {
        let (params, over) = config.goodness.resolve(&h, q)?;
        report.parameters = Some(Parameters::new(&params, over));
    }
    let t_delta = mixing_horizon(h.n(), config.delta)?;
    let steps = config.steps.unwrap_or(t_delta);
    if config.replicas == 1 {
        report.warnings.push("a single replica gives a point mass; the TVD is close to 1 - 1/|Q| by construction".into());
    }

    let omega = state_count(h.n(), q);
    let exact = omega <= u128::from(config.budget);
    let run_chain = |rng: &mut rand_chacha::ChaCha20Rng| -> Result<_> {
        let x0 = random_initial(h.n(), q, rng)?;
        let mut chain = ChainState::new(&h, x0, rng)?;
        for _ in 0..steps {
            chain.step(&h);
        }
        Ok(chain.into_coloring())
    };

    if exact {
        let proper = parallel::enumerate_proper(&h, q, config.budget)?;
        let mut codes = parallel::replicate(
            config.replicas,
            config.seed,
            Vec::new,
            |acc: &mut Vec<u64>, _, rng| {
                acc.push(run_chain(rng)?.code());
                Ok(())
            },
            |a, b| a.extend(b),
        )?;
        codes.sort_unstable();
        let on_proper = codes.iter().filter(|&&c| proper.contains(c)).count() as u64;
        let tvd = tvd_sorted(&proper.proper, &codes);
        let noise_floor = 0.5 * (omega as f64 / config.replicas as f64).sqrt();
        report.result = json!({
            "mode": "exact",
            "t_delta": t_delta,
            "steps": steps,
            "replicas": config.replicas,
            "omega_size": omega as u64,
            "proper_count": proper.count(),
            "tvd": tvd,
            "noise_floor": noise_floor,
            "tvd_allowance": config.delta + noise_floor,
            "within_allowance": tvd <= config.delta + noise_floor,
            "improper_fraction": (config.replicas - on_proper) as f64 / config.replicas as f64,
        });
    } else {
        report.warnings.push(format!(
            "|Omega| = {omega} exceeds the enumeration budget {}; the distance to uniform on Q is not computed \
             and improper_fraction is only a lower bound on it",
            config.budget
        ));
        let proper_runs = parallel::replicate(
            config.replicas,
            config.seed,
            || 0u64,
            |acc: &mut u64, _, rng| {
                *acc += u64::from(is_proper(&h, &run_chain(rng)?)?);
                Ok(())
            },
            |a, b| *a += b,
        )?;
        report.result = json!({
            "mode": "empirical",
            "t_delta": t_delta,
            "steps": steps,
            "replicas": config.replicas,
            "tvd": null,
            "improper_fraction": (config.replicas - proper_runs) as f64 / config.replicas as f64,
        });
    }
    Ok(report)
}
