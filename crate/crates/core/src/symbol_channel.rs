//! Discrete memoryless channel given by a row-stochastic matrix.
//!
//! Inputs are indices `0..n`; outputs are indices `0..m` with `m >= n`. Any
//! output that differs from the input counts as an error, which includes
//! every output past the input alphabet (the erasure symbol).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_stream, validate_weights, RngState, StreamId};
use crate::stats::StabilityTracker;

const SUM_TOLERANCE: f64 = 1e-9;

/// Probabilities of the input symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceDist {
    probs: Vec<f64>,
}

impl SourceDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("source alphabet is empty"));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(Error::invalid(format!("source probability {p} is negative")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::invalid(format!("source probabilities sum to {sum}, not 1")));
        }
        Ok(SourceDist { probs })
    }

    /// Three-letter source with probabilities 0.3, 0.25, 0.45.
    pub fn reference() -> Self {
        SourceDist::new(vec![0.3, 0.25, 0.45]).expect("valid")
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Row-stochastic transition matrix; row `i` is the output law for input `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl ChannelMatrix {
    /// Checks nonnegativity and unit row sums.
    pub fn validate(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("channel matrix has no rows"));
        }
        let cols = rows[0].len();
        if cols < rows.len() {
            return Err(Error::invalid(format!(
                "channel matrix needs at least as many outputs as inputs ({} x {cols})",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidMatrix {
                    row: i,
                    reason: format!("has {} entries, expected {cols}", row.len()),
                });
            }
            if let Some(x) = row.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(Error::InvalidMatrix {
                    row: i,
                    reason: format!("entry {x} is negative"),
                });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::InvalidMatrix {
                    row: i,
                    reason: format!("sums to {sum}"),
                });
            }
        }
        Ok(ChannelMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The 3 x 4 matrix over outputs `a1, a2, a3, b`.
    pub fn reference() -> Self {
        ChannelMatrix::validate(vec![
            vec![0.7, 0.1, 0.1, 0.1],
            vec![0.1, 0.8, 0.1, 0.0],
            vec![0.2, 0.2, 0.5, 0.1],
        ])
        .expect("valid")
    }

    /// `n x n` identity padded with `extra` all-zero columns.
    pub fn identity(n: usize, extra: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| (0..n + extra).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        ChannelMatrix::validate(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }
}

fn check_shapes(source: &SourceDist, matrix: &ChannelMatrix) -> Result<()> {
    if source.len() != matrix.rows() {
        return Err(Error::invalid(format!(
            "source has {} symbols but the matrix has {} rows",
            source.len(),
            matrix.rows()
        )));
    }
    Ok(())
}

/// Draws an input symbol from the source, then an output symbol from the
/// matching matrix row.
pub fn transmit_once(source: &SourceDist, matrix: &ChannelMatrix, rng: &mut RngState) -> Result<(usize, usize)> {
    check_shapes(source, matrix)?;
    let i = rng.choose_weighted(source.probs())?;
    let j = rng.choose_weighted(matrix.row(i))?;
    Ok((i, j))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionStats {
    pub n_sent: u64,
    /// Outputs different from the input.
    pub n_errors: u64,
    pub error_rate: f64,
    /// Outputs outside the input alphabet.
    pub n_erasures: u64,
    /// `confusion[i][j]`: input `i` received as `j`.
    pub confusion: Vec<Vec<u64>>,
    /// `(n, running error rate)` for every trial.
    pub running: Vec<(u64, f64)>,
    /// First trial count at which the running rate was judged stable.
    pub first_stable_n: Option<u64>,
}

/// Settings for the stability check on the running error rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilitySettings {
    pub window: usize,
    pub tolerance: f64,
}

impl Default for StabilitySettings {
    fn default() -> Self {
        StabilitySettings {
            window: 200,
            tolerance: 0.02,
        }
    }
}

/// Runs `trials` transmissions, trial `t` on substream `t`.
pub fn estimate_error_rate(
    source: &SourceDist,
    matrix: &ChannelMatrix,
    trials: u64,
    seed: u64,
    stability: StabilitySettings,
) -> Result<TransmissionStats> {
    check_shapes(source, matrix)?;
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let mut tracker = StabilityTracker::new(stability.window, stability.tolerance)?;
    let source_total = validate_weights(source.probs())?;
    let row_totals: Vec<f64> = (0..matrix.rows()).map(|i| matrix.row(i).iter().sum()).collect();

    let pairs: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_stream(StreamId::new(seed, t));
            let i = rng.choose_weighted_unchecked(source.probs(), source_total);
            let j = rng.choose_weighted_unchecked(matrix.row(i), row_totals[i]);
            (i, j)
        })
        .collect();

    let mut confusion = vec![vec![0u64; matrix.cols()]; matrix.rows()];
    let mut running = Vec::with_capacity(pairs.len());
    let mut n_errors = 0u64;
    let mut n_erasures = 0u64;
    let mut first_stable_n = None;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        confusion[i][j] += 1;
        n_errors += u64::from(i != j);
        n_erasures += u64::from(j >= matrix.rows());
        let n = k as u64 + 1;
        let rate = n_errors as f64 / n as f64;
        running.push((n, rate));
        if tracker.stability_reached(rate) && first_stable_n.is_none() {
            first_stable_n = Some(n);
        }
    }
    Ok(TransmissionStats {
        n_sent: trials,
        n_errors,
        error_rate: n_errors as f64 / trials as f64,
        n_erasures,
        confusion,
        running,
        first_stable_n,
    })
}

/// `sum_i p_i (1 - P_ii)`.
pub fn analytic_error_rate(source: &SourceDist, matrix: &ChannelMatrix) -> Result<f64> {
    check_shapes(source, matrix)?;
    Ok(source
        .probs()
        .iter()
        .enumerate()
        .map(|(i, p)| p * (1.0 - matrix.get(i, i)))
        .sum())
}

/// Probability that the output falls outside the input alphabet.
pub fn analytic_erasure_rate(source: &SourceDist, matrix: &ChannelMatrix) -> Result<f64> {
    check_shapes(source, matrix)?;
    Ok(source
        .probs()
        .iter()
        .enumerate()
        .map(|(i, p)| p * matrix.row(i)[matrix.rows()..].iter().sum::<f64>())
        .sum())
}
