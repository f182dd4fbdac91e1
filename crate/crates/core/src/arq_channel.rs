//! Stop-and-wait ARQ over a noisy binary channel.
//!
//! Data is cut into frames of `D` bits, `D - 1` payload bits plus one even
//! parity bit. Sending one bit costs one tact. The receiver checks parity and
//! asks for a retransmission over an ideal, zero-delay feedback channel, so
//! every attempt costs exactly `D` tacts and throughput is
//! `v = N_K (D - 1) / t` information bits per tact.
//!
//! Two error models are available:
//!
//! * [`ErrorModel::Abstract`] fails a whole frame with probability `p D`
//!   using one uniform draw per attempt. This linearization of
//!   `1 - (1 - p)^D` is the model behind the classic classroom listing and
//!   reproduces its published throughput table.
//! * [`ErrorModel::BitExact`] flips each transmitted bit independently with
//!   probability `p` and lets the parity check decide. Frames with an even
//!   number of flips slip through and are counted as undetected errors.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{check_probability, Error, Result};
use crate::rng::{RngState, StreamId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ErrorModel {
    #[default]
    Abstract,
    BitExact,
}

impl fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorModel::Abstract => "abstract",
            ErrorModel::BitExact => "bit_exact",
        })
    }
}

impl FromStr for ErrorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abstract" => Ok(ErrorModel::Abstract),
            "bit_exact" | "bit-exact" => Ok(ErrorModel::BitExact),
            other => Err(Error::invalid(format!("unknown error model '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArqConfig {
    /// Frame length `D` in bits, parity included.
    pub frame_len: u32,
    pub bit_error_p: f64,
    /// Number of distinct frames `N_K` to deliver.
    pub n_frames: u64,
    pub error_model: ErrorModel,
    /// Draw uniforms on the grid `k / q` instead of at full precision.
    pub quantize: Option<u32>,
    pub max_attempts_per_frame: u64,
    pub seed: u64,
}

impl Default for ArqConfig {
    fn default() -> Self {
        ArqConfig {
            frame_len: 8,
            bit_error_p: 0.05,
            n_frames: 500,
            error_model: ErrorModel::Abstract,
            quantize: None,
            max_attempts_per_frame: 1_000_000,
            seed: 1,
        }
    }
}

impl ArqConfig {
    pub fn validate(&self) -> Result<()> {
        if self.frame_len < 2 {
            return Err(Error::invalid("frame length must be at least 2 bits"));
        }
        check_probability("bit error probability", self.bit_error_p)?;
        if self.n_frames == 0 {
            return Err(Error::invalid("need at least one frame"));
        }
        if self.quantize == Some(0) {
            return Err(Error::invalid("quantization level q must be at least 1"));
        }
        if self.max_attempts_per_frame == 0 {
            return Err(Error::invalid("max_attempts_per_frame must be positive"));
        }
        if self.error_model == ErrorModel::Abstract && !abstract_admissible(self.frame_len, self.bit_error_p) {
            return Err(Error::invalid(format!(
                "abstract model needs p*D < 1, got p*D = {}",
                self.bit_error_p * f64::from(self.frame_len)
            )));
        }
        Ok(())
    }
}

/// `p D < 1`, otherwise every frame fails in the abstract model.
pub fn abstract_admissible(frame_len: u32, p: f64) -> bool {
    p * f64::from(frame_len) < 1.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArqResult {
    pub total_tacts: u64,
    pub frames_delivered: u64,
    pub retransmissions: u64,
    /// Information bits per tact.
    pub throughput: f64,
    /// Frames accepted with an even, nonzero number of flipped bits.
    pub undetected_error_frames: u64,
}

impl ArqResult {
    /// Standard error of `throughput` from the geometric attempt counts,
    /// `v sqrt(q / N_K)` with the frame failure rate `q` estimated from the run.
    pub fn throughput_stderr(&self) -> f64 {
        let attempts = (self.frames_delivered + self.retransmissions) as f64;
        let q = self.retransmissions as f64 / attempts;
        self.throughput * (q / self.frames_delivered as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub payload: Vec<bool>,
    pub parity: bool,
}

impl Frame {
    /// Payload followed by the parity bit.
    pub fn bits(&self) -> Vec<bool> {
        let mut bits = self.payload.clone();
        bits.push(self.parity);
        bits
    }
}

/// Appends an even-parity bit to a `frame_len - 1` bit payload.
pub fn encode_frame(payload: &[bool], frame_len: u32) -> Result<Frame> {
    if frame_len < 2 || payload.len() + 1 != frame_len as usize {
        return Err(Error::invalid(format!(
            "payload of {} bits does not fit a {frame_len}-bit frame",
            payload.len()
        )));
    }
    Ok(Frame {
        payload: payload.to_vec(),
        parity: payload.iter().fold(false, |acc, &b| acc ^ b),
    })
}

/// Even-parity check over all received bits.
pub fn parity_check(bits: &[bool]) -> bool {
    !bits.iter().fold(false, |acc, &b| acc ^ b)
}

#[inline]
fn draw(rng: &mut RngState, quantize: Option<u32>) -> f64 {
    match quantize {
        Some(q) => {
            let k = ((rng.next_uniform() * f64::from(q)) as u32).min(q - 1);
            f64::from(k) / f64::from(q)
        }
        None => rng.next_uniform(),
    }
}

/// Transmits `n_frames` frames, repeating each until the receiver accepts it.
pub fn simulate(config: &ArqConfig) -> Result<ArqResult> {
    config.validate()?;
    let d = config.frame_len;
    let p = config.bit_error_p;
    let q = config.quantize;
    let mut rng = RngState::new(config.seed);
    let mut total_tacts = 0u64;
    let mut retransmissions = 0u64;
    let mut undetected = 0u64;
    let frame_error = (p * f64::from(d)).min(1.0);
    let mut payload = vec![false; d as usize - 1];
    let mut received = vec![false; d as usize];

    for frame_no in 0..config.n_frames {
        let frame = match config.error_model {
            ErrorModel::Abstract => None,
            ErrorModel::BitExact => {
                for bit in payload.iter_mut() {
                    *bit = rng.bernoulli_unchecked(0.5);
                }
                Some(encode_frame(&payload, d)?.bits())
            }
        };
        let mut attempts = 0u64;
        loop {
            if attempts == config.max_attempts_per_frame {
                return Err(Error::Runaway {
                    attempts,
                    what: format!("frame {frame_no}"),
                });
            }
            attempts += 1;
            total_tacts += u64::from(d);
            let accepted = match &frame {
                None => draw(&mut rng, q) >= frame_error,
                Some(bits) => {
                    let mut flips = 0u32;
                    for (r, &b) in received.iter_mut().zip(bits) {
                        let flip = draw(&mut rng, q) < p;
                        flips += u32::from(flip);
                        *r = b ^ flip;
                    }
                    let ok = parity_check(&received);
                    if ok && flips > 0 {
                        undetected += 1;
                    }
                    ok
                }
            };
            if accepted {
                break;
            }
            retransmissions += 1;
        }
    }

    let frames_delivered = config.n_frames;
    Ok(ArqResult {
        total_tacts,
        frames_delivered,
        retransmissions,
        throughput: frames_delivered as f64 * f64::from(d - 1) / total_tacts as f64,
        undetected_error_frames: undetected,
    })
}

/// Expected throughput of the abstract model: `(D-1)(1 - pD)/D`.
pub fn throughput_analytic(frame_len: u32, p: f64) -> Result<f64> {
    if frame_len < 2 {
        return Err(Error::invalid("frame length must be at least 2 bits"));
    }
    check_probability("p", p)?;
    if !abstract_admissible(frame_len, p) {
        return Err(Error::invalid("throughput formula needs p*D < 1"));
    }
    let d = f64::from(frame_len);
    Ok((d - 1.0) * (1.0 - p * d) / d)
}

/// Expected throughput of the bit-exact model. A frame is rejected when an
/// odd number of bits flip, which happens with probability `(1 - (1-2p)^D)/2`.
pub fn throughput_analytic_bit_exact(frame_len: u32, p: f64) -> Result<f64> {
    if frame_len < 2 {
        return Err(Error::invalid("frame length must be at least 2 bits"));
    }
    check_probability("p", p)?;
    let d = f64::from(frame_len);
    let reject = 0.5 * (1.0 - (1.0 - 2.0 * p).powi(frame_len as i32));
    Ok((d - 1.0) / d * (1.0 - reject))
}

fn analytic_for(model: ErrorModel, frame_len: u32, p: f64) -> Result<f64> {
    match model {
        ErrorModel::Abstract => throughput_analytic(frame_len, p),
        ErrorModel::BitExact => throughput_analytic_bit_exact(frame_len, p),
    }
}

/// Capacity of the binary symmetric channel at one raw bit per tact:
/// `1 + p log2 p + (1-p) log2 (1-p)`, with `0 log 0 = 0`.
pub fn bsc_capacity(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    let plogp = |x: f64| if x == 0.0 { 0.0 } else { x * x.log2() };
    Ok(1.0 + plogp(p) + plogp(1.0 - p))
}

/// Settings shared by frame-length sweeps and capacity estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepParams {
    pub d_min: u32,
    pub d_max: u32,
    pub n_frames: u64,
    pub error_model: ErrorModel,
    pub quantize: Option<u32>,
    pub max_attempts_per_frame: u64,
    pub seed: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            d_min: 2,
            d_max: 16,
            n_frames: 500,
            error_model: ErrorModel::Abstract,
            quantize: None,
            max_attempts_per_frame: 1_000_000,
            seed: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub frame_len: u32,
    pub v_sim: f64,
    pub v_analytic: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameSweep {
    pub p: f64,
    pub points: Vec<SweepPoint>,
    /// Frame lengths left out because `p D >= 1` in the abstract model.
    pub skipped: Vec<u32>,
}

impl FrameSweep {
    /// Point with the largest simulated throughput; ties go to the shorter frame.
    pub fn best_simulated(&self) -> &SweepPoint {
        self.points
            .iter()
            .reduce(|best, pt| if pt.v_sim > best.v_sim { pt } else { best })
            .expect("sweeps are never empty")
    }

    /// Largest analytic throughput, rounded to 12 decimals so that exact
    /// ties in the formula are not split by rounding noise.
    pub fn best_analytic(&self) -> (f64, Vec<u32>) {
        let key = |v: f64| (v * 1e12).round();
        let best = self
            .points
            .iter()
            .map(|pt| key(pt.v_analytic))
            .fold(f64::NEG_INFINITY, f64::max);
        let at: Vec<u32> = self
            .points
            .iter()
            .filter(|pt| key(pt.v_analytic) == best)
            .map(|pt| pt.frame_len)
            .collect();
        (best / 1e12, at)
    }
}

/// One simulation per admissible frame length in `[d_min, d_max]`, frame
/// length `D` running on the substream keyed by `D`.
pub fn sweep_frame_length(p: f64, params: &SweepParams) -> Result<FrameSweep> {
    check_probability("p", p)?;
    if params.d_min < 2 || params.d_min > params.d_max {
        return Err(Error::invalid("frame-length range must satisfy 2 <= d_min <= d_max"));
    }
    let (admissible, skipped): (Vec<u32>, Vec<u32>) = (params.d_min..=params.d_max)
        .partition(|&d| params.error_model == ErrorModel::BitExact || abstract_admissible(d, p));
    if admissible.is_empty() {
        return Err(Error::invalid(format!("no admissible frame length for p = {p}")));
    }
    let points = admissible
        .par_iter()
        .map(|&frame_len| {
            let config = ArqConfig {
                frame_len,
                bit_error_p: p,
                n_frames: params.n_frames,
                error_model: params.error_model,
                quantize: params.quantize,
                max_attempts_per_frame: params.max_attempts_per_frame,
                seed: StreamId::new(params.seed, u64::from(frame_len)).derived_seed(),
            };
            let r = simulate(&config)?;
            Ok(SweepPoint {
                frame_len,
                v_sim: r.throughput,
                v_analytic: analytic_for(params.error_model, frame_len, p)?,
                stderr: r.throughput_stderr(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameSweep { p, points, skipped })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityEstimate {
    /// Largest simulated throughput over the frame lengths.
    pub c_emp: f64,
    pub stderr: f64,
    /// Smallest frame length attaining `c_emp`.
    pub d_opt: u32,
}

pub fn empirical_capacity(p: f64, params: &SweepParams) -> Result<CapacityEstimate> {
    let sweep = sweep_frame_length(p, params)?;
    let best = sweep.best_simulated();
    Ok(CapacityEstimate {
        c_emp: best.v_sim,
        stderr: best.stderr,
        d_opt: best.frame_len,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityPoint {
    pub p: f64,
    pub c_emp: f64,
    pub c_bsc: f64,
    pub d_opt: u32,
    pub stderr: f64,
}

/// Empirical ARQ capacity beside the BSC formula for each `p`. Entry `j`
/// of `p_list` uses its own root seed derived from `params.seed`.
pub fn capacity_curve(p_list: &[f64], params: &SweepParams) -> Result<Vec<CapacityPoint>> {
    if p_list.is_empty() {
        return Err(Error::invalid("p list is empty"));
    }
    if let Some(p) = p_list.iter().find(|p| !(**p >= 0.0 && **p < 0.5)) {
        return Err(Error::invalid(format!("capacity curve needs p in [0, 0.5), got {p}")));
    }
    p_list
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            let sub = SweepParams {
                seed: StreamId::new(params.seed, j as u64).derived_seed(),
                ..*params
            };
            let est = empirical_capacity(p, &sub)?;
            Ok(CapacityPoint {
                p,
                c_emp: est.c_emp,
                c_bsc: bsc_capacity(p)?,
                d_opt: est.d_opt,
                stderr: est.stderr,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn choose(n: u32, k: u32) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
    }

    /// Probability that an even, nonzero number of the `d` bits flip.
    fn even_flip_probability(d: u32, p: f64) -> f64 {
        (2..=d)
            .step_by(2)
            .map(|k| choose(d, k) * p.powi(k as i32) * (1.0 - p).powi((d - k) as i32))
            .sum()
    }

    #[test]
    fn parity_encoding() {
        assert!(!encode_frame(&bits("0000000"), 8).unwrap().parity);
        assert!(encode_frame(&bits("1000000"), 8).unwrap().parity);
        assert!(!encode_frame(&bits("1011001"), 8).unwrap().parity);
        assert!(encode_frame(&bits("101"), 8).is_err());
        assert_eq!(encode_frame(&bits("1"), 2).unwrap().bits(), bits("11"));
    }

    #[test]
    fn parity_detects_odd_flips_only() {
        let mut rng = RngState::new(5);
        for _ in 0..200 {
            let payload: Vec<bool> = (0..7).map(|_| rng.bernoulli(0.5).unwrap()).collect();
            let mut frame = encode_frame(&payload, 8).unwrap().bits();
            assert!(parity_check(&frame));
            frame[3] = !frame[3];
            assert!(!parity_check(&frame));
            frame[6] = !frame[6];
            assert!(parity_check(&frame));
        }
    }

    #[test]
    fn noiseless_throughput_is_exact() {
        for model in [ErrorModel::Abstract, ErrorModel::BitExact] {
            let cfg = ArqConfig {
                bit_error_p: 0.0,
                error_model: model,
                ..Default::default()
            };
            let r = simulate(&cfg).unwrap();
            assert_eq!(r.total_tacts, 4000);
            assert_eq!(r.retransmissions, 0);
            assert_eq!(r.throughput, 0.875);
        }
    }

    #[test]
    fn abstract_model_matches_table() {
        for (p, center) in [(0.01, 0.805), (0.05, 0.525)] {
            let cfg = ArqConfig {
                bit_error_p: p,
                n_frames: 100_000,
                ..Default::default()
            };
            let r = simulate(&cfg).unwrap();
            assert!((r.throughput - center).abs() <= 0.005, "p={p}: {}", r.throughput);
            let analytic = throughput_analytic(8, p).unwrap();
            assert!((r.throughput - analytic).abs() < 5.0 * r.throughput_stderr());
        }
    }

    #[test]
    fn accounting_identity() {
        for model in [ErrorModel::Abstract, ErrorModel::BitExact] {
            for p in [0.0, 0.01, 0.1] {
                let cfg = ArqConfig {
                    bit_error_p: p,
                    frame_len: 5,
                    n_frames: 2000,
                    error_model: model,
                    ..Default::default()
                };
                let r = simulate(&cfg).unwrap();
                assert_eq!(r.total_tacts, 5 * (r.frames_delivered + r.retransmissions));
                assert_eq!(r.throughput, 2000.0 * 4.0 / r.total_tacts as f64);
            }
        }
    }

    #[test]
    fn rejects_impossible_abstract_configs() {
        let cfg = ArqConfig {
            bit_error_p: 0.125,
            frame_len: 8,
            ..Default::default()
        };
        assert!(simulate(&cfg).unwrap_err().is_invalid_input());
        assert!(throughput_analytic(8, 0.125).is_err());
        let cfg = ArqConfig {
            frame_len: 1,
            ..Default::default()
        };
        assert!(simulate(&cfg).is_err());
        let cfg = ArqConfig {
            quantize: Some(0),
            ..Default::default()
        };
        assert!(simulate(&cfg).is_err());
    }

    #[test]
    fn runaway_frames_are_reported() {
        let cfg = ArqConfig {
            bit_error_p: 0.5,
            frame_len: 9,
            error_model: ErrorModel::BitExact,
            max_attempts_per_frame: 1,
            n_frames: 1000,
            ..Default::default()
        };
        assert!(matches!(simulate(&cfg), Err(Error::Runaway { .. })));
    }

    #[test]
    fn analytic_values() {
        assert_eq!(throughput_analytic(8, 0.0).unwrap(), 0.875);
        assert!((throughput_analytic(8, 0.001).unwrap() - 0.868).abs() < 5e-4);
        assert!((throughput_analytic(5, 0.05).unwrap() - 0.60).abs() < 1e-12);
        assert_eq!(bsc_capacity(0.0).unwrap(), 1.0);
        assert_eq!(bsc_capacity(1.0).unwrap(), 1.0);
        assert_eq!(bsc_capacity(0.5).unwrap(), 0.0);
        assert!((bsc_capacity(0.05).unwrap() - 0.7136).abs() < 1e-4);
        assert!(bsc_capacity(1.5).is_err());
    }

    #[test]
    fn optimal_frame_lengths() {
        let params = SweepParams {
            n_frames: 20_000,
            ..Default::default()
        };
        let s = sweep_frame_length(0.05, &params).unwrap();
        let (v, at) = s.best_analytic();
        assert!((v - 0.60).abs() < 1e-9);
        assert_eq!(at, vec![4, 5]);
        assert_eq!(s.skipped, (2..=16).filter(|d| *d >= 20).collect::<Vec<u32>>());

        let s = sweep_frame_length(0.1, &SweepParams { d_max: 9, ..params }).unwrap();
        let (v, at) = s.best_analytic();
        assert_eq!(at, vec![3]);
        assert!((v - 0.466_667).abs() < 1e-6);

        let s = sweep_frame_length(0.3, &SweepParams { d_max: 3, ..params }).unwrap();
        let (v, at) = s.best_analytic();
        assert_eq!(at, vec![2]);
        assert!((v - 0.2).abs() < 1e-12);
    }

    #[test]
    fn sweep_skips_inadmissible_lengths() {
        let s = sweep_frame_length(
            0.2,
            &SweepParams {
                d_max: 8,
                n_frames: 100,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s.points.iter().map(|p| p.frame_len).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(s.skipped, vec![5, 6, 7, 8]);
        assert!(sweep_frame_length(0.5, &SweepParams::default()).is_err());
        assert!(empirical_capacity(0.5, &SweepParams::default()).is_err());
        assert!(sweep_frame_length(
            0.1,
            &SweepParams {
                d_min: 1,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn noiseless_capacity_approaches_one() {
        let params = SweepParams {
            d_max: 64,
            n_frames: 100,
            ..Default::default()
        };
        let c = empirical_capacity(0.0, &params).unwrap();
        assert_eq!((c.c_emp, c.d_opt), (63.0 / 64.0, 64));
        let curve = capacity_curve(&[0.0], &params).unwrap();
        assert_eq!((curve[0].c_emp, curve[0].c_bsc), (63.0 / 64.0, 1.0));
        assert!(capacity_curve(&[0.5], &params).is_err());
        assert!(capacity_curve(&[], &params).is_err());
    }

    #[test]
    fn capacity_at_five_percent() {
        let params = SweepParams {
            n_frames: 100_000,
            ..Default::default()
        };
        let c = empirical_capacity(0.05, &params).unwrap();
        assert!((c.c_emp - 0.60).abs() <= 0.01);
        assert!(c.c_emp < bsc_capacity(0.05).unwrap());
    }

    #[test]
    fn bit_exact_undetected_rate() {
        let n = 100_000u64;
        for (d, p) in [(8u32, 0.005), (6, 0.03)] {
            let cfg = ArqConfig {
                frame_len: d,
                bit_error_p: p,
                n_frames: n,
                error_model: ErrorModel::BitExact,
                ..Default::default()
            };
            let r = simulate(&cfg).unwrap();
            let observed = r.undetected_error_frames as f64 / n as f64;
            // delivered frames are conditioned on even parity
            let even = 0.5 * (1.0 + (1.0 - 2.0 * p).powi(d as i32));
            let expected = even_flip_probability(d, p) / even;
            let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
            assert!(
                (observed - expected).abs() < 5.0 * sigma,
                "D={d} p={p}: {observed} vs {expected}"
            );
            if p < 0.01 {
                let unconditional = even_flip_probability(d, p);
                assert!((observed - unconditional).abs() < 5.0 * sigma);
            }
            let analytic = throughput_analytic_bit_exact(d, p).unwrap();
            assert!((r.throughput - analytic).abs() < 5.0 * r.throughput_stderr());
        }
    }

    #[test]
    fn quantized_draws_follow_listing_granularity() {
        // With q = 1000 the failure test x < pD only sees multiples of 1/1000.
        let cfg = ArqConfig {
            bit_error_p: 0.05,
            quantize: Some(1000),
            n_frames: 50_000,
            ..Default::default()
        };
        let r = simulate(&cfg).unwrap();
        assert!((r.throughput - 0.525).abs() < 5.0 * r.throughput_stderr());
        assert_eq!(simulate(&cfg).unwrap(), r);
        let cfg = ArqConfig {
            bit_error_p: 0.0001,
            quantize: Some(1000),
            n_frames: 10_000,
            ..Default::default()
        };
        // pD = 0.0008 < 1/1000: only x = 0 fails
        let r = simulate(&cfg).unwrap();
        assert!(r.retransmissions < 40);
    }

    #[test]
    fn deterministic_runs() {
        let cfg = ArqConfig {
            bit_error_p: 0.02,
            n_frames: 3000,
            error_model: ErrorModel::BitExact,
            seed: 12,
            ..Default::default()
        };
        assert_eq!(simulate(&cfg).unwrap(), simulate(&cfg).unwrap());
    }
}
