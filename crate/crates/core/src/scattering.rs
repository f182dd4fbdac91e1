//! Alpha-particle trajectories in the repulsive Coulomb field of fixed
//! centers, and the deflection-angle distribution over random impact
//! parameters.
//!
//! Units are dimensionless by default (`kqQ = m = v0 = 1`). Particles start
//! at `(start_x, b)` moving along +x and are integrated with fixed-step RK4
//! until they pass `stop_x` or leave the disc of radius `10 |start_x|`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_stream, StreamId};
use crate::stats::Histogram;

/// Distances below this are treated as a collision with a center.
pub const SINGULAR_DISTANCE: f64 = 1e-9;

/// Energy drift above which an outcome is flagged.
pub const DEFAULT_ENERGY_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Center {
    pub x: f64,
    pub y: f64,
    /// Coupling `kqQ`; positive means repulsive.
    pub strength: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringConfig {
    pub centers: Vec<Center>,
    pub mass: f64,
    pub speed: f64,
    pub start_x: f64,
    pub stop_x: f64,
    pub b_min: f64,
    pub b_max: f64,
    pub dt: f64,
    pub max_steps: u64,
    pub particles: u64,
    pub energy_tolerance: f64,
    pub seed: u64,
}

impl Default for ScatteringConfig {
    fn default() -> Self {
        ScatteringConfig {
            centers: two_atoms(1.0, 1.0),
            mass: 1.0,
            speed: 1.0,
            start_x: -100.0,
            stop_x: 100.0,
            b_min: -5.0,
            b_max: 5.0,
            dt: 0.02,
            max_steps: 2_000_000,
            particles: 1000,
            energy_tolerance: DEFAULT_ENERGY_TOLERANCE,
            seed: 1,
        }
    }
}

/// A single center of the given strength at the origin.
pub fn single_atom(strength: f64) -> Vec<Center> {
    vec![Center {
        x: 0.0,
        y: 0.0,
        strength,
    }]
}

/// Two equal centers at `(0, +separation/2)` and `(0, -separation/2)`.
pub fn two_atoms(separation: f64, strength: f64) -> Vec<Center> {
    let h = 0.5 * separation;
    vec![
        Center { x: 0.0, y: h, strength },
        Center {
            x: 0.0,
            y: -h,
            strength,
        },
    ]
}

impl ScatteringConfig {
    pub fn validate(&self) -> Result<()> {
        if self.centers.is_empty() {
            return Err(Error::invalid("at least one scattering center is required"));
        }
        if let Some(c) = self
            .centers
            .iter()
            .find(|c| !(c.strength > 0.0 && c.strength.is_finite()))
        {
            return Err(Error::invalid(format!(
                "center strength {} is not repulsive",
                c.strength
            )));
        }
        for (name, v) in [("mass", self.mass), ("speed", self.speed), ("dt", self.dt)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.b_min.is_finite() && self.b_max.is_finite() && self.b_min <= self.b_max) {
            return Err(Error::invalid("impact-parameter range must satisfy b_min <= b_max"));
        }
        let min_center_x = self.centers.iter().map(|c| c.x).fold(f64::INFINITY, f64::min);
        let max_center_x = self.centers.iter().map(|c| c.x).fold(f64::NEG_INFINITY, f64::max);
        if !(self.start_x < min_center_x && self.start_x.is_finite()) {
            return Err(Error::invalid("start_x must lie left of every center"));
        }
        if !(self.stop_x > max_center_x && self.stop_x.is_finite()) {
            return Err(Error::invalid("stop_x must lie right of every center"));
        }
        if self.max_steps == 0 {
            return Err(Error::invalid("max_steps must be positive"));
        }
        Ok(())
    }

    fn escape_radius(&self) -> f64 {
        10.0 * self.start_x.abs()
    }

    fn potential(&self, x: f64, y: f64) -> f64 {
        self.centers.iter().map(|c| c.strength / (x - c.x).hypot(y - c.y)).sum()
    }
}

/// Coulomb repulsion at `point`: sum over centers of `kqQ / r^2` along the
/// unit vector from the center to the point.
pub fn force_at(point: [f64; 2], centers: &[Center]) -> Result<[f64; 2]> {
    let mut f = [0.0, 0.0];
    for (i, c) in centers.iter().enumerate() {
        let dx = point[0] - c.x;
        let dy = point[1] - c.y;
        let r2 = dx * dx + dy * dy;
        let r = r2.sqrt();
        if r < SINGULAR_DISTANCE {
            return Err(Error::Singularity { center: i, distance: r });
        }
        let scale = c.strength / (r2 * r);
        f[0] += scale * dx;
        f[1] += scale * dy;
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryOutcome {
    pub b: f64,
    /// Deflection angle in `(-pi, pi]`, positive counter-clockwise.
    pub alpha: f64,
    pub steps_used: u64,
    /// `|E_end - E_start| / |E_start|`.
    pub energy_drift: f64,
    /// `energy_drift` is within the configured tolerance.
    pub energy_ok: bool,
}

#[derive(Clone, Copy)]
struct Phase {
    x: f64,
    y: f64,
    vx: f64,
    vy: f64,
}

impl Phase {
    fn offset(&self, d: &Phase, h: f64) -> Phase {
        Phase {
            x: self.x + h * d.x,
            y: self.y + h * d.y,
            vx: self.vx + h * d.vx,
            vy: self.vy + h * d.vy,
        }
    }
}

fn derivative(s: &Phase, centers: &[Center], inv_mass: f64) -> Result<Phase> {
    let f = force_at([s.x, s.y], centers)?;
    Ok(Phase {
        x: s.vx,
        y: s.vy,
        vx: f[0] * inv_mass,
        vy: f[1] * inv_mass,
    })
}

pub fn integrate_trajectory(b: f64, config: &ScatteringConfig) -> Result<TrajectoryOutcome> {
    config.validate()?;
    if !b.is_finite() {
        return Err(Error::invalid("impact parameter must be finite"));
    }
    let centers = config.centers.as_slice();
    let inv_mass = 1.0 / config.mass;
    let h = config.dt;
    let escape_r2 = config.escape_radius().powi(2);
    let energy = |s: &Phase| 0.5 * config.mass * (s.vx * s.vx + s.vy * s.vy) + config.potential(s.x, s.y);

    let mut s = Phase {
        x: config.start_x,
        y: b,
        vx: config.speed,
        vy: 0.0,
    };
    let e0 = energy(&s);
    let mut steps = 0u64;
    loop {
        if s.x > config.stop_x || s.x * s.x + s.y * s.y > escape_r2 {
            break;
        }
        if steps == config.max_steps {
            return Err(Error::NoEscape { steps, x: s.x, y: s.y });
        }
        let k1 = derivative(&s, centers, inv_mass)?;
        let k2 = derivative(&s.offset(&k1, 0.5 * h), centers, inv_mass)?;
        let k3 = derivative(&s.offset(&k2, 0.5 * h), centers, inv_mass)?;
        let k4 = derivative(&s.offset(&k3, h), centers, inv_mass)?;
        s = Phase {
            x: s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            y: s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            vx: s.vx + h / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx),
            vy: s.vy + h / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy),
        };
        steps += 1;
    }
    let energy_drift = ((energy(&s) - e0) / e0).abs();
    Ok(TrajectoryOutcome {
        b,
        alpha: s.vy.atan2(s.vx),
        steps_used: steps,
        energy_drift,
        energy_ok: energy_drift <= config.energy_tolerance,
    })
}

/// Histogram of deflection angles plus the per-particle outcomes.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub histogram: Histogram,
    pub outcomes: Vec<Result<TrajectoryOutcome>>,
}

/// Histogram covering every angle in `(-pi, pi]`.
pub fn angle_histogram(bins: usize) -> Result<Histogram> {
    // widen past pi so alpha = pi lands in the last bin
    Histogram::new(-PI, PI * (1.0 + 1e-12), bins)
}

/// Launches `particles` trajectories with `b` uniform on `[b_min, b_max]`.
/// Failed trajectories are kept in `outcomes` and left out of the histogram.
pub fn sweep(config: &ScatteringConfig, bins: usize) -> Result<SweepResult> {
    config.validate()?;
    if config.particles == 0 {
        return Err(Error::invalid("sweep needs at least one particle"));
    }
    let mut histogram = angle_histogram(bins)?;
    let outcomes: Vec<Result<TrajectoryOutcome>> = (0..config.particles)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_stream(StreamId::new(config.seed, i));
            let b = config.b_min + (config.b_max - config.b_min) * rng.next_uniform();
            integrate_trajectory(b, config)
        })
        .collect();
    for o in outcomes.iter().flatten() {
        histogram.add(o.alpha);
    }
    Ok(SweepResult { histogram, outcomes })
}

/// Closed-form deflection for one center: `2 atan(kqQ / (m v0^2 b))`.
pub fn analytic_single_center_angle(b: f64, strength: f64, mass: f64, speed: f64) -> Result<f64> {
    if b.is_nan() || b <= 0.0 {
        return Err(Error::invalid("impact parameter must be positive"));
    }
    Ok(2.0 * (strength / (mass * speed * speed * b)).atan())
}
