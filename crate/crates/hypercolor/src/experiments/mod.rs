//! One driver per subcommand. Each takes a serializable config, returns a
//! [`Report`](crate::report::Report), and writes its CSV trace if asked.

mod contract;
mod couple;
mod enumerate;
mod generate;
mod goodness;
mod llcheck;
mod mix;
mod persist;

use std::fmt::Display;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use hypercolor_core::{Eps, GoodnessParams, Hypergraph};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub use contract::{cmd_contract, ContractConfig};
pub use couple::{cmd_couple, CoupleConfig};
pub use enumerate::{cmd_enumerate, EnumerateConfig};
pub use generate::{cmd_generate, GenerateConfig};
pub use goodness::{cmd_goodness, GoodnessConfig};
pub use llcheck::{cmd_llcheck, LlcheckConfig};
pub use mix::{cmd_mix, tvd_sorted, MixConfig};
pub use persist::{cmd_persist, schedule_steps, PersistConfig};

/// Overrides for the goodness thresholds and regime constants.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GoodnessOpts {
    /// `a/b` or a decimal; defaults to `1/(50 k^2)`.
    pub eps: Option<String>,
    pub c_k: Option<f64>,
    pub c: Option<f64>,
}

impl GoodnessOpts {
    pub fn with_eps(eps: &str) -> Self {
        GoodnessOpts { eps: Some(eps.to_owned()), ..Default::default() }
    }

    /// Parameters for `h` and `q`, and whether eps was overridden.
    pub fn resolve(&self, h: &Hypergraph, q: usize) -> Result<(GoodnessParams, bool)> {
        let mut params = GoodnessParams::for_hypergraph(h, q)?;
        if let Some(eps) = &self.eps {
            let eps: Eps = eps.parse().map_err(|e| Error::Usage(format!("--eps {eps}: {e}")))?;
            params = params.with_eps(eps);
        }
        if let Some(c_k) = self.c_k {
            params = params.with_c_k(c_k);
        }
        if let Some(c) = self.c {
            params = params.with_c(c);
        }
        Ok((params, self.eps.is_some()))
    }
}

pub(crate) fn as_display<T: Display, S: Serializer>(value: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Proportion {
    pub count: u64,
    pub trials: u64,
    pub fraction: f64,
    pub ci95: (f64, f64),
}

impl Proportion {
    pub fn new(count: u64, trials: u64) -> Self {
        let fraction = if trials == 0 { 0.0 } else { count as f64 / trials as f64 };
        Proportion { count, trials, fraction, ci95: wilson_interval(count, trials) }
    }
}

/// CSV with a leading `# rng=... seed=...` comment line.
pub(crate) fn write_trace<R: Serialize>(path: &Path, seed: u64, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# rng={} seed={seed}", crate::rng::RNG_NAME).map_err(|e| Error::io(path, e))?;
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((lo - 0.2189).abs() < 1e-3 && (hi - 0.3958).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
        let (lo, _) = wilson_interval(0, 50);
        assert_eq!(lo, 0.0);
    }

    #[test]
    fn eps_override_flag() {
        let h = Hypergraph::sunflower(2, 3).unwrap();
        let (p, over) = GoodnessOpts::default().resolve(&h, 5).unwrap();
        assert!(!over);
        assert_eq!(p.eps().to_string(), "1/450");
        let (p, over) = GoodnessOpts::with_eps("0.25").resolve(&h, 5).unwrap();
        assert!(over);
        assert_eq!(p.eps().to_string(), "1/4");
        assert!(GoodnessOpts::with_eps("x").resolve(&h, 5).is_err());
    }
}
