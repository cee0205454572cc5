use super::EnumerationResult;
use crate::{Error, Result};

/// Half the L1 distance between two distributions on the same index set.
pub fn total_variation(p: &[f64], r: &[f64]) -> f64 {
    assert_eq!(p.len(), r.len(), "distributions over different supports");
    0.5 * p.iter().zip(r).map(|(a, b)| libm::fabs(a - b)).sum::<f64>()
}

/// Distance from `dist` (indexed by code over all of `Q^V`) to the uniform
/// law on proper colorings. Mass on improper colorings counts in full.
pub fn exact_tvd(proper: &EnumerationResult, dist: &[f64]) -> Result<f64> {
    if dist.len() as u64 != proper.omega_size() {
        return Err(Error::InvalidParameter("distribution must cover every coloring"));
    }
    let total: f64 = dist.iter().sum();
    if libm::fabs(total - 1.0) > 1e-12 {
        return Err(Error::NotNormalized(total));
    }
    if proper.count() == 0 {
        return Err(Error::EmptyProperSet);
    }
    let target = 1.0 / proper.count() as f64;
    let mut on_proper = 0.0;
    let mut off_proper = 0.0;
    let mut members = proper.proper.iter().peekable();
    for (code, &mass) in dist.iter().enumerate() {
        if members.peek() == Some(&&(code as u64)) {
            members.next();
            on_proper += libm::fabs(mass - target);
        } else {
            off_proper += mass;
        }
    }
    Ok(0.5 * (on_proper + off_proper))
}

/// Distance from the empirical law of `counts` to uniform on proper
/// colorings, computed in integers and divided once at the end.
pub fn tvd_from_counts(proper: &EnumerationResult, counts: &[u64]) -> Result<f64> {
    if counts.len() as u64 != proper.omega_size() {
        return Err(Error::InvalidParameter("counts must cover every coloring"));
    }
    if proper.count() == 0 {
        return Err(Error::EmptyProperSet);
    }
    let samples: u128 = counts.iter().map(|&c| u128::from(c)).sum();
    if samples == 0 {
        return Err(Error::NotNormalized(0.0));
    }
    let size = proper.count() as u128;
    // sum |c/N - 1/|Q|| = sum |c |Q| - N| / (N |Q|)
    let mut numerator: u128 = 0;
    let mut members = proper.proper.iter().peekable();
    for (code, &c) in counts.iter().enumerate() {
        let scaled = u128::from(c) * size;
        if members.peek() == Some(&&(code as u64)) {
            members.next();
            numerator += scaled.abs_diff(samples);
        } else {
            numerator += scaled;
        }
    }
    Ok(numerator as f64 / (2.0 * samples as f64 * size as f64))
}
