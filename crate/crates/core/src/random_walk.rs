//! One-dimensional symmetric random walk ensembles.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_stream, RngState, StreamId};
use crate::stats::summarize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub steps: u64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkEnsembleResult {
    /// `z_N` of each trial, indexed by trial number.
    pub final_positions: Vec<i64>,
    /// Mean of `z_N^2`.
    pub msd: f64,
    pub msd_stderr: f64,
    pub mean_position: f64,
}

/// One row of a mean-square-displacement curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MsdPoint {
    pub steps: u64,
    pub msd: f64,
    pub msd_stderr: f64,
}

/// Final coordinate after `steps` unit steps, each +1 or -1 with equal odds.
pub fn walk_once(rng: &mut RngState, steps: u64) -> i64 {
    let mut z = 0i64;
    for _ in 0..steps {
        z += if rng.bernoulli_unchecked(0.5) { 1 } else { -1 };
    }
    z
}

pub fn ensemble(config: &WalkConfig) -> Result<WalkEnsembleResult> {
    ensemble_from(config, 0)
}

/// Runs the ensemble with trial `t` drawing from substream `first_stream + t`.
pub fn ensemble_from(config: &WalkConfig, first_stream: u64) -> Result<WalkEnsembleResult> {
    if config.trials == 0 {
        return Err(Error::invalid("walk needs at least one trial"));
    }
    let final_positions: Vec<i64> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_stream(StreamId::new(config.seed, first_stream + t));
            walk_once(&mut rng, config.steps)
        })
        .collect();
    let sq = summarize(final_positions.iter().map(|&z| (z * z) as f64))?;
    let mean_position = summarize(final_positions.iter().map(|&z| z as f64))?.mean;
    Ok(WalkEnsembleResult {
        final_positions,
        msd: sq.mean,
        msd_stderr: sq.stderr,
        mean_position,
    })
}

/// One ensemble per entry of `steps_list`, each on its own block of
/// `trials` substreams. Output follows input order.
pub fn msd_curve(steps_list: &[u64], trials: u64, seed: u64) -> Result<Vec<MsdPoint>> {
    if steps_list.is_empty() {
        return Err(Error::invalid("steps list is empty"));
    }
    if steps_list.contains(&0) {
        return Err(Error::invalid("every step count on a curve must be at least 1"));
    }
    steps_list
        .iter()
        .enumerate()
        .map(|(k, &steps)| {
            let cfg = WalkConfig { steps, trials, seed };
            let r = ensemble_from(&cfg, k as u64 * trials)?;
            Ok(MsdPoint {
                steps,
                msd: r.msd,
                msd_stderr: r.msd_stderr,
            })
        })
        .collect()
}

/// Ordinary least-squares `(slope, intercept)` of `y` against `x`.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::invalid("a line fit needs two points"));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("all abscissae are equal"));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn short_walks() {
        let mut rng = RngState::new(1);
        assert_eq!(walk_once(&mut rng, 0), 0);
        for _ in 0..100 {
            assert!([-1, 1].contains(&walk_once(&mut rng, 1)));
            assert!([-4, -2, 0, 2, 4].contains(&walk_once(&mut rng, 4)));
        }
    }

    #[test]
    fn single_step_msd_is_one() {
        let r = ensemble(&WalkConfig {
            steps: 1,
            trials: 1000,
            seed: 5,
        })
        .unwrap();
        assert_eq!(r.msd, 1.0);
        assert_eq!(r.msd_stderr, 0.0);
        assert_eq!(
            msd_curve(&[1], 10, 1).unwrap(),
            vec![MsdPoint {
                steps: 1,
                msd: 1.0,
                msd_stderr: 0.0
            }]
        );
    }

    #[test]
    fn zero_steps_and_errors() {
        let r = ensemble(&WalkConfig {
            steps: 0,
            trials: 10,
            seed: 1,
        })
        .unwrap();
        assert!(r.final_positions.iter().all(|&z| z == 0));
        assert!(ensemble(&WalkConfig {
            steps: 3,
            trials: 0,
            seed: 1
        })
        .is_err());
        assert!(msd_curve(&[], 10, 1).is_err());
        assert!(msd_curve(&[0], 10, 1).is_err());
    }

    #[test]
    fn msd_matches_step_count() {
        // E[z^2] = N, Var[z^2] = 2N(N-1); bounds are 5 sigma of the mean.
        for (steps, tol) in [(100u64, 2.3), (400, 9.0)] {
            let r = ensemble(&WalkConfig {
                steps,
                trials: 100_000,
                seed: 1,
            })
            .unwrap();
            assert!((r.msd - steps as f64).abs() <= tol, "N={steps}: msd {}", r.msd);
            let n = steps as f64;
            assert!(r.mean_position.abs() <= 5.0 * n.sqrt() / 100_000f64.sqrt());
            for &z in &r.final_positions {
                assert!(z.unsigned_abs() <= steps && (z - steps as i64) % 2 == 0);
            }
        }
    }

    #[test]
    fn curve_slope_and_intercept() {
        let curve = msd_curve(&[50, 100, 200], 100_000, 1).unwrap();
        let pts: Vec<(f64, f64)> = curve.iter().map(|p| (p.steps as f64, p.msd)).collect();
        let (slope, intercept) = linear_fit(&pts).unwrap();
        assert!((slope - 1.0).abs() <= 0.03, "slope {slope}");
        assert!(intercept.abs() <= 2.0, "intercept {intercept}");
    }

    #[test]
    fn duplicate_steps_use_distinct_substreams() {
        let curve = msd_curve(&[100, 100], 20_000, 3).unwrap();
        assert_ne!(curve[0].msd, curve[1].msd);
        let sigma = (curve[0].msd_stderr.powi(2) + curve[1].msd_stderr.powi(2)).sqrt();
        assert!((curve[0].msd - curve[1].msd).abs() <= 5.0 * sigma);
    }

    #[test]
    fn final_position_follows_binomial_law() {
        let n = 10u64;
        let trials = 1_000_000u64;
        let r = ensemble(&WalkConfig {
            steps: n,
            trials,
            seed: 2,
        })
        .unwrap();
        let mut counts = vec![0u64; n as usize + 1];
        for &z in &r.final_positions {
            counts[((z + n as i64) / 2) as usize] += 1;
        }
        let chi2: f64 = (0..=n)
            .map(|k| {
                let expected = trials as f64 * binomial(n, k) / 2f64.powi(n as i32);
                (counts[k as usize] as f64 - expected).powi(2) / expected
            })
            .sum();
        assert!(chi2 < 30.0, "chi2 {chi2}");
    }

    #[test]
    fn ensemble_is_deterministic() {
        let cfg = WalkConfig {
            steps: 37,
            trials: 500,
            seed: 8,
        };
        assert_eq!(ensemble(&cfg).unwrap(), ensemble(&cfg).unwrap());
    }
}
