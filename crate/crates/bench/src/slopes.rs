//! Least-squares decay rates of log₂(max_err) against log₂(ρ).

use crate::config::Scheme;
use crate::experiment::ErrorRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub scheme: Scheme,
    pub r: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SlopeError {
    #[error("{scheme} r = {r}: need at least 3 distinct rho values with a positive error, found {points}")]
    InsufficientPoints { scheme: &'static str, r: usize, points: usize },
}

/// OLS fit y = slope·x + intercept. Returns (slope, intercept, R²).
pub fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r_squared)
}

/// One fit per (scheme, r), in order of first appearance. Failed cells and
/// non-positive errors are skipped.
pub fn fit_slopes(records: &[ErrorRecord]) -> Result<Vec<SlopeFit>, SlopeError> {
    let mut groups: Vec<((Scheme, usize), Vec<(f64, f64)>)> = Vec::new();
    for rec in records {
        let key = (rec.scheme, rec.r);
        let idx = match groups.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                groups.push((key, Vec::new()));
                groups.len() - 1
            }
        };
        if let (true, Some(err)) = (rec.is_usable(), rec.max_err) {
            if err > 0.0 && err.is_finite() {
                groups[idx].1.push(((rec.rho as f64).log2(), err.log2()));
            }
        }
    }
    groups
        .into_iter()
        .map(|((scheme, r), pts)| {
            let mut rhos: Vec<u64> = pts.iter().map(|p| p.0.to_bits()).collect();
            rhos.sort_unstable();
            rhos.dedup();
            if rhos.len() < 3 {
                return Err(SlopeError::InsufficientPoints { scheme: scheme.name(), r, points: rhos.len() });
            }
            let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            let (slope, intercept, r_squared) = ols(&xs, &ys);
            Ok(SlopeFit { scheme, r, slope, intercept, r_squared })
        })
        .collect()
}

pub fn write_slopes_csv<W: std::io::Write>(fits: &[SlopeFit], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["scheme", "r", "slope", "intercept", "r_squared"])?;
    for f in fits {
        w.write_record([
            f.scheme.name().to_string(),
            f.r.to_string(),
            format!("{:.16e}", f.slope),
            format!("{:.16e}", f.intercept),
            format!("{:.16e}", f.r_squared),
        ])?;
    }
    w.flush()?;
    Ok(())
}
