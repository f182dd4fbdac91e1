//! Duration of a sequence of operations where each failed operation is
//! repeated until it succeeds.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_stream, RngState, StreamId};
use crate::stats::{summarize, SummaryStats};

/// Attempts allowed per operation before a run is declared runaway.
pub const MAX_ATTEMPTS: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ProcessSpec {
    durations: Vec<f64>,
    success_probs: Vec<f64>,
}

impl ProcessSpec {
    pub fn new(durations: Vec<f64>, success_probs: Vec<f64>) -> Result<Self> {
        if durations.is_empty() {
            return Err(Error::invalid("process needs at least one operation"));
        }
        if durations.len() != success_probs.len() {
            return Err(Error::invalid(format!(
                "{} durations but {} success probabilities",
                durations.len(),
                success_probs.len()
            )));
        }
        if let Some(t) = durations.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::invalid(format!("duration {t} is not positive")));
        }
        if let Some(p) = success_probs.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
            return Err(Error::invalid(format!("success probability {p} is outside (0, 1]")));
        }
        Ok(ProcessSpec {
            durations,
            success_probs,
        })
    }

    /// Five operations with durations 1.6, 2.7, 1.4, 3.8, 2.6 and success
    /// probabilities 0.6, 0.7, 0.4, 0.8, 0.6.
    pub fn reference() -> Self {
        ProcessSpec::new(vec![1.6, 2.7, 1.4, 3.8, 2.6], vec![0.6, 0.7, 0.4, 0.8, 0.6]).expect("reference spec is valid")
    }

    pub fn durations(&self) -> &[f64] {
        &self.durations
    }

    pub fn success_probs(&self) -> &[f64] {
        &self.success_probs
    }

    /// Duration when every operation succeeds first time.
    pub fn minimum_time(&self) -> f64 {
        self.durations.iter().sum()
    }
}

/// Attempts per operation in one run.
pub fn attempts_once(spec: &ProcessSpec, rng: &mut RngState) -> Result<Vec<u64>> {
    spec.success_probs
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut attempts = 1u64;
            while !rng.bernoulli_unchecked(p) {
                attempts += 1;
                if attempts > MAX_ATTEMPTS {
                    return Err(Error::Runaway {
                        attempts: MAX_ATTEMPTS,
                        what: format!("operation {i}"),
                    });
                }
            }
            Ok(attempts)
        })
        .collect()
}

/// Total time of one run.
pub fn run_once(spec: &ProcessSpec, rng: &mut RngState) -> Result<f64> {
    let attempts = attempts_once(spec, rng)?;
    Ok(attempts
        .iter()
        .zip(&spec.durations)
        .map(|(&k, &tau)| k as f64 * tau)
        .sum())
}

/// Mean and variance of the total time with independent geometric attempt
/// counts: `sum tau/p` and `sum tau^2 (1-p)/p^2`.
pub fn analytic_moments(spec: &ProcessSpec) -> (f64, f64) {
    spec.durations
        .iter()
        .zip(&spec.success_probs)
        .fold((0.0, 0.0), |(mean, var), (&tau, &p)| {
            (mean + tau / p, var + tau * tau * (1.0 - p) / (p * p))
        })
}

/// Per-trial totals, trial `t` on substream `t`.
pub fn simulate_totals(spec: &ProcessSpec, trials: u64, seed: u64) -> Result<Vec<f64>> {
    (0..trials)
        .into_par_iter()
        .map(|t| run_once(spec, &mut derive_stream(StreamId::new(seed, t))))
        .collect()
}

pub fn estimate(spec: &ProcessSpec, trials: u64, seed: u64) -> Result<SummaryStats> {
    if trials < 2 {
        return Err(Error::invalid("need at least two trials to estimate a variance"));
    }
    summarize(simulate_totals(spec, trials, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_success_takes_the_minimum() {
        let spec = ProcessSpec::new(vec![1.6, 2.7, 1.4, 3.8, 2.6], vec![1.0; 5]).unwrap();
        let mut rng = RngState::new(1);
        assert!((run_once(&spec, &mut rng).unwrap() - 12.1).abs() < 1e-12);
        let a = run_once(&spec, &mut RngState::new(4)).unwrap();
        let b = run_once(&spec, &mut RngState::new(4)).unwrap();
        assert_eq!(a, b);
        let s = estimate(&spec, 100, 1).unwrap();
        assert_eq!(s.mean, spec.minimum_time());
        assert_eq!(s.variance, 0.0);
    }

    #[test]
    fn single_operation_support() {
        let spec = ProcessSpec::new(vec![1.0], vec![0.5]).unwrap();
        let mut rng = RngState::new(2);
        for _ in 0..1000 {
            let t = run_once(&spec, &mut rng).unwrap();
            assert!(t >= 1.0 && t.fract() == 0.0);
        }
        assert_eq!(analytic_moments(&spec), (2.0, 2.0));
    }

    #[test]
    fn reference_moments() {
        let (mean, var) = analytic_moments(&ProcessSpec::reference());
        let mean_terms = 1.6 / 0.6 + 2.7 / 0.7 + 1.4 / 0.4 + 3.8 / 0.8 + 2.6 / 0.6;
        assert!((mean - mean_terms).abs() < 1e-12);
        assert!((mean - 19.1071).abs() < 1e-4);
        assert!((var - 26.6813).abs() < 1e-4);
    }

    #[test]
    fn invalid_specs() {
        assert!(ProcessSpec::new(vec![], vec![]).is_err());
        assert!(ProcessSpec::new(vec![1.0], vec![0.5, 0.5]).is_err());
        assert!(ProcessSpec::new(vec![1.0], vec![0.0]).is_err());
        assert!(ProcessSpec::new(vec![-1.0], vec![0.5]).is_err());
        assert!(estimate(&ProcessSpec::reference(), 1, 1).is_err());
    }

    #[test]
    fn estimate_matches_analytic() {
        let spec = ProcessSpec::reference();
        let s = estimate(&spec, 100_000, 1).unwrap();
        assert!((s.mean - 19.107).abs() <= 0.082, "mean {}", s.mean);
        assert!((s.variance - 26.68).abs() <= 2.0, "variance {}", s.variance);
    }

    #[test]
    fn estimates_tighten_with_trials() {
        let spec = ProcessSpec::reference();
        let (mean, var) = analytic_moments(&spec);
        for trials in [1_000u64, 10_000, 100_000] {
            let s = estimate(&spec, trials, 9).unwrap();
            let se = (var / trials as f64).sqrt();
            assert!((s.mean - mean).abs() <= 5.0 * se, "trials {trials}");
        }
    }

    #[test]
    fn totals_decompose_into_whole_attempts() {
        let spec = ProcessSpec::new(vec![1.0, std::f64::consts::SQRT_2], vec![0.5, 0.3]).unwrap();
        let totals = simulate_totals(&spec, 500, 3).unwrap();
        for t in totals {
            assert!(t >= spec.minimum_time() - 1e-12);
            let found = (1..200u32).any(|k2| {
                let rest = t - f64::from(k2) * std::f64::consts::SQRT_2;
                rest >= 1.0 - 1e-9 && (rest - rest.round()).abs() < 1e-9
            });
            assert!(found, "total {t} is not k1 + k2*sqrt(2)");
        }
    }
}
