//! Summary statistics, histograms and a running-estimate stability check.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Sample size, mean and spread of a stream of reals.
///
/// `variance` uses the unbiased `n - 1` divisor. For a single sample the
/// variance, `std` and `stderr` are reported as 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryStats {
    pub n: u64,
    pub mean: f64,
    pub variance: f64,
    pub std: f64,
    pub stderr: f64,
}

impl SummaryStats {
    fn from_moments(n: u64, mean: f64, m2: f64) -> Self {
        let variance = if n > 1 { (m2 / (n - 1) as f64).max(0.0) } else { 0.0 };
        let std = variance.sqrt();
        SummaryStats {
            n,
            mean,
            variance,
            std,
            stderr: std / (n as f64).sqrt(),
        }
    }

    fn sum_sq_dev(&self) -> f64 {
        if self.n > 1 {
            self.variance * (self.n - 1) as f64
        } else {
            0.0
        }
    }

    /// Pooled statistics of the union of the two underlying samples.
    ///
    /// Counts add, means combine weighted by count and the sums of squared
    /// deviations combine with the between-group correction term.
    pub fn merge(&self, other: &SummaryStats) -> SummaryStats {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let (na, nb) = (self.n as f64, other.n as f64);
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * nb / n as f64;
        let m2 = self.sum_sq_dev() + other.sum_sq_dev() + delta * delta * na * nb / n as f64;
        SummaryStats::from_moments(n, mean, m2)
    }
}

/// Welford accumulator behind [`summarize`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn finish(&self) -> Result<SummaryStats> {
        if self.n == 0 {
            return Err(Error::invalid("cannot summarize an empty sample"));
        }
        Ok(SummaryStats::from_moments(self.n, self.mean, self.m2))
    }
}

pub fn summarize<I>(samples: I) -> Result<SummaryStats>
where
    I: IntoIterator<Item = f64>,
{
    let mut acc = RunningStats::new();
    for x in samples {
        acc.push(x);
    }
    acc.finish()
}

/// Equal-width bins over `[lo, hi)` plus underflow and overflow counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    lo: OrderedBound,
    hi: OrderedBound,
    counts: Vec<u64>,
    underflow: u64,
    overflow: u64,
}

// f64 bounds compared bitwise so Histogram can be Eq.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct OrderedBound(u64);

impl OrderedBound {
    fn get(self) -> f64 {
        f64::from_bits(self.0)
    }
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::invalid("histogram needs at least one bin"));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid(format!(
                "histogram range [{lo}, {hi}) is empty or not finite"
            )));
        }
        Ok(Histogram {
            lo: OrderedBound(lo.to_bits()),
            hi: OrderedBound(hi.to_bits()),
            counts: vec![0; bins],
            underflow: 0,
            overflow: 0,
        })
    }

    pub fn add(&mut self, x: f64) {
        let (lo, hi) = (self.lo(), self.hi());
        if x < lo || x.is_nan() {
            self.underflow += 1;
        } else if x >= hi {
            self.overflow += 1;
        } else {
            let bins = self.counts.len();
            let k = (((x - lo) / self.width()) as usize).min(bins - 1);
            self.counts[k] += 1;
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo.get()
    }

    pub fn hi(&self) -> f64 {
        self.hi.get()
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        (self.hi() - self.lo()) / self.counts.len() as f64
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn underflow(&self) -> u64 {
        self.underflow
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    /// Observations offered, including the out-of-range ones.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    /// Half-open interval covered by bin `k`.
    pub fn bin_edges(&self, k: usize) -> (f64, f64) {
        let w = self.width();
        let lo = self.lo() + k as f64 * w;
        let hi = if k + 1 == self.counts.len() { self.hi() } else { lo + w };
        (lo, hi)
    }

    /// Index of the bin that `x` falls into, if any.
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        if x < self.lo() || x >= self.hi() || x.is_nan() {
            None
        } else {
            Some((((x - self.lo()) / self.width()) as usize).min(self.counts.len() - 1))
        }
    }
}

pub fn histogram<I>(samples: I, lo: f64, hi: f64, bins: usize) -> Result<Histogram>
where
    I: IntoIterator<Item = f64>,
{
    let mut h = Histogram::new(lo, hi, bins)?;
    for x in samples {
        h.add(x);
    }
    Ok(h)
}

/// Declares a running estimate stable once its last `window` values stay
/// within `tolerance * max(1, |latest|)` of each other.
#[derive(Clone, Debug)]
pub struct StabilityTracker {
    window: usize,
    tolerance: f64,
    history: VecDeque<f64>,
}

impl StabilityTracker {
    pub fn new(window: usize, tolerance: f64) -> Result<Self> {
        if window < 2 {
            return Err(Error::invalid("stability window must be at least 2"));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::invalid("stability tolerance must be positive"));
        }
        Ok(StabilityTracker {
            window,
            tolerance,
            history: VecDeque::with_capacity(window),
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Pushes `next_estimate` and reports whether the window is now stable.
    pub fn stability_reached(&mut self, next_estimate: f64) -> bool {
        if self.history.len() == self.window {
            self.history.pop_front();
        }
        self.history.push_back(next_estimate);
        if self.history.len() < self.window {
            return false;
        }
        let (min, max) = self
            .history
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        max - min <= self.tolerance * next_estimate.abs().max(1.0)
    }
}
