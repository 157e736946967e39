//! Ratio-test verdicts for nonnegative series given in log form.

use serde::Serialize;

/// Outcome of a finite ratio test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Number of trailing ratios inspected by the band test.
pub const WINDOW: usize = 5;
/// Ratios inside `[BAND_LOW, BAND_HIGH]` are inconclusive.
pub const BAND_LOW: f64 = 0.95;
pub const BAND_HIGH: f64 = 1.05;
/// Minimum drift of the log-ratio per unit `ln n` read as a trend to 0 or ∞.
pub const SLOPE_THRESHOLD: f64 = 0.05;

/// Log-ratios `ln(t_{n+1}/t_n)` between consecutive nonzero terms,
/// normalized by the index gap, keyed by the later index.
pub fn log_ratios(ln_terms: &[f64]) -> Vec<(usize, f64)> {
    let nonzero: Vec<usize> = (0..ln_terms.len()).filter(|&n| ln_terms[n].is_finite()).collect();
    nonzero
        .windows(2)
        .map(|w| (w[1], (ln_terms[w[1]] - ln_terms[w[0]]) / (w[1] - w[0]) as f64))
        .collect()
}

fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let icept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - icept - slope * x).powi(2)).sum();
    (icept, slope, (rss / n).sqrt())
}

/// Classifies `Σ t_n` from `ln t_n` (`-inf` for zero terms).
///
/// Trailing zeros mean the series terminates. Otherwise the log-ratios over
/// the second half of the terms are fitted twice: against `ln n`, which
/// captures ratios behaving like `A·n^b` (factorial powers), and against
/// `1/n`, which captures polynomial growth with ratios tending to a
/// constant. If the `ln n` model fits clearly better and its slope exceeds
/// [`SLOPE_THRESHOLD`] in magnitude, the ratios tend to 0 or ∞ and the sign
/// decides. Otherwise the last [`WINDOW`] ratios are compared against the
/// band `[0.95, 1.05]`.
pub fn ratio_verdict(ln_terms: &[f64]) -> Verdict {
    let last_nonzero = ln_terms.iter().rposition(|t| t.is_finite());
    match last_nonzero {
        None => return Verdict::Converging,
        Some(k) if k + 1 < ln_terms.len() => return Verdict::Converging,
        _ => {}
    }
    let ratios = log_ratios(ln_terms);
    if ratios.len() < WINDOW {
        return Verdict::Inconclusive;
    }
    let span = (ratios.len() / 2).max(WINDOW);
    let tail = &ratios[ratios.len() - span..];
    let ys: Vec<f64> = tail.iter().map(|r| r.1).collect();
    let ln_n: Vec<f64> = tail.iter().map(|r| (r.0 as f64).ln()).collect();
    let inv_n: Vec<f64> = tail.iter().map(|r| 1.0 / r.0 as f64).collect();
    let (_, slope, res_log) = fit(&ln_n, &ys);
    let (_, _, res_inv) = fit(&inv_n, &ys);
    if slope.abs() > SLOPE_THRESHOLD && res_log < 0.5 * res_inv {
        return if slope < 0.0 { Verdict::Converging } else { Verdict::Diverging };
    }
    let last: Vec<f64> = ratios[ratios.len() - WINDOW..].iter().map(|r| r.1.exp()).collect();
    if last.iter().all(|&r| r < BAND_LOW) {
        Verdict::Converging
    } else if last.iter().all(|&r| r > BAND_HIGH) {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    }
}
