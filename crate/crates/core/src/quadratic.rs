//! Uniform-quadratic cheap talk with sender bias `b`.
//!
//! State `ω ~ unif[0, 1]`, sender payoff `-(a - ω - b)²`, receiver payoff
//! `-(a - ω)²`. Covert equilibria are partitions of `[0, 1]`; overt
//! persuasion reveals the state and earns `-b²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-12;

fn check_bias(b: f64) -> Result<()> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveBias(b))
    }
}

// 2bN(N-1) < 1, with exact equality treated as the degenerate k₁ = 0 case.
fn partition_exists(b: f64, n: usize) -> bool {
    let n = n as f64;
    2.0 * b * n * (n - 1.0) < 1.0 - IDENTITY_TOL
}

/// Largest number of partition intervals supported in equilibrium.
pub fn n_of_b(b: f64) -> Result<usize> {
    check_bias(b)?;
    let mut n = 1;
    while partition_exists(b, n + 1) {
        n += 1;
    }
    let root = -0.5 + 0.5 * (1.0 + 2.0 / b).sqrt();
    let by_formula = ((root - 1e-9).ceil() as usize).max(1);
    if by_formula != n {
        log::warn!("partition bound for b = {b}: monotonicity gives {n}, closed form gives {by_formula}");
    }
    Ok(n)
}

fn check_partition(b: f64, n: usize) -> Result<()> {
    let max = n_of_b(b)?;
    if n == 0 || n > max {
        return Err(Error::PartitionTooFine { requested: n, max });
    }
    Ok(())
}

/// Boundaries `0 = k₀ < k₁ < … < k_N = 1` with `k_i = i/N + 2b·i(i − N)`.
pub fn partition(b: f64, n: usize) -> Result<Vec<f64>> {
    check_partition(b, n)?;
    let nf = n as f64;
    let mut k: Vec<f64> = (0..=n)
        .map(|i| {
            let i = i as f64;
            i / nf + 2.0 * b * i * (i - nf)
        })
        .collect();
    k[0] = 0.0;
    k[n] = 1.0;
    debug_assert!(k.windows(2).all(|w| w[0] < w[1]));
    Ok(k)
}

/// `-Σ d_i · d_i²/12 − b²` over interval widths `d_i`.
pub fn weighted_variance_ucs(b: f64, boundaries: &[f64]) -> f64 {
    let spread: f64 = boundaries
        .windows(2)
        .map(|w| (w[1] - w[0]).powi(3) / 12.0)
        .sum();
    -spread - b * b
}

/// Sender's covert value for the `n`-interval partition.
pub fn ucs_quadratic(b: f64, n: usize) -> Result<f64> {
    let k = partition(b, n)?;
    let nf = n as f64;
    let closed = -1.0 / (12.0 * nf * nf) - b * b * (nf * nf - 1.0) / 3.0 - b * b;
    let geometric = weighted_variance_ucs(b, &k);
    assert!(
        (closed - geometric).abs() <= IDENTITY_TOL,
        "closed form {closed} disagrees with interval variances {geometric}"
    );
    Ok(closed)
}

/// Sender's overt value: full revelation leaves only the bias.
pub fn uop_quadratic(b: f64) -> Result<f64> {
    check_bias(b)?;
    Ok(-b * b)
}

/// Sender indifference at each interior boundary of an arbitrary partition.
pub fn indifference_residuals(b: f64, boundaries: &[f64]) -> Vec<f64> {
    boundaries
        .windows(3)
        .map(|w| {
            let left = 0.5 * (w[0] + w[1]);
            let right = 0.5 * (w[1] + w[2]);
            (left - w[1] - b).powi(2) - (right - w[1] - b).powi(2)
        })
        .collect()
}

pub fn verify_partition_indifference(b: f64, n: usize) -> Result<Vec<f64>> {
    Ok(indifference_residuals(b, &partition(b, n)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticReport {
    pub b: f64,
    pub n: usize,
    pub boundaries: Vec<f64>,
    pub ucs: f64,
    pub uop: f64,
    /// `|U^CS| / |U^OP|`. Both values are negative here, so this is the
    /// inverse of a transparency ratio, not the ratio itself.
    pub ratio_abs: f64,
}

/// Report for bias `b` and `n` intervals (`N(b)` when `None`).
pub fn quadratic_report(b: f64, n: Option<usize>) -> Result<QuadraticReport> {
    let n = match n {
        Some(n) => n,
        None => n_of_b(b)?,
    };
    let boundaries = partition(b, n)?;
    let ucs = ucs_quadratic(b, n)?;
    let uop = uop_quadratic(b)?;
    Ok(QuadraticReport {
        b,
        n,
        boundaries,
        ucs,
        uop,
        ratio_abs: ucs.abs() / uop.abs(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub trials: u64,
    pub sender_mean: f64,
    pub sender_se: f64,
    pub receiver_mean: f64,
    pub receiver_se: f64,
}

const CHUNK: u64 = 1 << 16;

#[derive(Default)]
struct Moments {
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn mean_se(&self, n: u64) -> (f64, f64) {
        let nf = n as f64;
        let mean = self.sum / nf;
        if n < 2 {
            return (mean, f64::INFINITY);
        }
        let var = ((self.sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
        (mean, (var / nf).sqrt())
    }
}

/// Monte Carlo play of the partition equilibrium.
///
/// Chunk `c` draws from ChaCha8 stream `c` of `seed`, so results depend only
/// on `(b, n, trials, seed)`.
pub fn simulate_quadratic(b: f64, n: usize, trials: u64, seed: u64) -> Result<SimulationSummary> {
    if trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    let k = partition(b, n)?;
    let mids: Vec<f64> = k.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let interval_of = |x: f64| k[1..].partition_point(|&edge| edge <= x).min(n - 1);

    let mut sender = Moments::default();
    let mut receiver = Moments::default();
    let chunks = trials.div_ceil(CHUNK);
    for c in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let count = CHUNK.min(trials - c * CHUNK);
        for _ in 0..count {
            let state: f64 = rng.gen();
            let cell = interval_of(state);
            let signal = rng.gen_range(k[cell]..k[cell + 1]);
            let action = mids[interval_of(signal)];
            sender.push(-(action - state - b).powi(2));
            receiver.push(-(action - state).powi(2));
        }
    }
    let (sender_mean, sender_se) = sender.mean_se(trials);
    let (receiver_mean, receiver_se) = receiver.mean_se(trials);
    Ok(SimulationSummary {
        trials,
        sender_mean,
        sender_se,
        receiver_mean,
        receiver_se,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Log-log slope of `|U^CS(b, N(b))|` against `b`.
    pub slope_cs: f64,
    /// Log-log slope of `|U^OP(b)|` against `b`.
    pub slope_op: f64,
    pub rows: Vec<QuadraticReport>,
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Convergence orders of both values as `b → 0`, using the finest partition.
pub fn convergence_order(b_grid: &[f64]) -> Result<ConvergenceReport> {
    if b_grid.len() < 3 {
        return Err(Error::GridTooSmall(format!(
            "{} points given, need at least 3",
            b_grid.len()
        )));
    }
    for &b in b_grid {
        check_bias(b)?;
    }
    let lo = b_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = b_grid.iter().copied().fold(0.0, f64::max);
    if hi / lo < 100.0 * (1.0 - 1e-9) {
        return Err(Error::GridTooSmall(format!(
            "grid spans {lo}..{hi}, need at least two decades"
        )));
    }
    let rows = b_grid
        .iter()
        .map(|&b| quadratic_report(b, None))
        .collect::<Result<Vec<_>>>()?;
    let log_b: Vec<f64> = rows.iter().map(|r| r.b.ln()).collect();
    let log_cs: Vec<f64> = rows.iter().map(|r| r.ucs.abs().ln()).collect();
    let log_op: Vec<f64> = rows.iter().map(|r| r.uop.abs().ln()).collect();
    Ok(ConvergenceReport {
        slope_cs: ls_slope(&log_b, &log_cs),
        slope_op: ls_slope(&log_b, &log_op),
        rows,
    })
}
