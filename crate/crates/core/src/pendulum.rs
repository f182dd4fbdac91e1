//! Rigid pendulum pushed sideways by a horizontal air stream whose speed
//! changes at random while its direction stays fixed.
//!
//! Equation of motion, with `F` the drag force of the stream:
//!
//! ```text
//! phi'' = -(g/L) sin(phi) - b phi' + F / (m L) cos(phi)
//! ```
//!
//! The stream speed is piecewise constant, redrawn uniformly from
//! `[u0 - du, u0 + du]` (clamped at zero) every `wind_refresh` seconds, and
//! `F = c u^2`. For a constant force the rest angle satisfies
//! `tan(phi_eq) = F / (m g)`.

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::stats::{histogram, summarize, Histogram, SummaryStats};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PendulumParams {
    /// Gravitational acceleration, m/s^2.
    pub gravity: f64,
    /// Thread length, m.
    pub length: f64,
    /// Bob mass, kg.
    pub mass: f64,
    /// Viscous damping rate, 1/s.
    pub damping: f64,
    /// Drag coefficient `c` in `F = c u^2`, N s^2/m^2.
    pub drag_coeff: f64,
    /// Mean stream speed `u0`, m/s.
    pub wind_mean: f64,
    /// Half-width of the uniform speed band, m/s.
    pub wind_halfwidth: f64,
    /// Interval between speed redraws, s.
    pub wind_refresh: f64,
    pub dt: f64,
    pub t_total: f64,
    /// Samples before this time are excluded from the angle statistics.
    pub burn_in: f64,
    pub seed: u64,
}

impl Default for PendulumParams {
    fn default() -> Self {
        PendulumParams {
            gravity: 9.81,
            length: 1.0,
            mass: 1.0,
            damping: 0.5,
            drag_coeff: 0.5,
            wind_mean: 2.0,
            wind_halfwidth: 1.0,
            wind_refresh: 0.5,
            dt: 1e-3,
            t_total: 100.0,
            burn_in: 10.0,
            seed: 1,
        }
    }
}

impl PendulumParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [("length", self.length), ("mass", self.mass), ("dt", self.dt)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        let finite = [
            ("gravity", self.gravity),
            ("damping", self.damping),
            ("drag_coeff", self.drag_coeff),
            ("wind_mean", self.wind_mean),
            ("t_total", self.t_total),
            ("burn_in", self.burn_in),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite")));
            }
        }
        if !(self.wind_halfwidth >= 0.0 && self.wind_halfwidth.is_finite()) {
            return Err(Error::invalid("wind_halfwidth must be nonnegative"));
        }
        if !(self.wind_refresh >= self.dt && self.wind_refresh.is_finite()) {
            return Err(Error::invalid("wind_refresh must be at least dt"));
        }
        if self.t_total < 0.0 {
            return Err(Error::invalid("t_total must be nonnegative"));
        }
        if self.burn_in < 0.0 || (self.t_total > 0.0 && self.burn_in >= self.t_total) {
            return Err(Error::invalid("burn_in must lie in [0, t_total)"));
        }
        Ok(())
    }

    /// Rest angle for a constant horizontal force.
    pub fn equilibrium_angle(&self, force: f64) -> f64 {
        (force / (self.mass * self.gravity)).atan()
    }

    /// Kinetic plus potential energy, zero at the bottom at rest.
    pub fn energy(&self, state: &PendulumState) -> f64 {
        let l = self.length;
        0.5 * self.mass * l * l * state.omega * state.omega + self.mass * self.gravity * l * (1.0 - state.phi.cos())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PendulumState {
    pub phi: f64,
    pub omega: f64,
    pub t: f64,
}

impl PendulumState {
    pub fn at_rest() -> Self {
        PendulumState {
            phi: 0.0,
            omega: 0.0,
            t: 0.0,
        }
    }
}

/// Piecewise-constant stream speed, redrawn once per refresh interval.
#[derive(Clone, Debug, Default)]
pub struct Wind {
    segment: Option<u64>,
    speed: f64,
}

impl Wind {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current stream speed (m/s); meaningful after the first force query.
    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// Drag force at time `t`, drawing a new speed when `t` enters a new
    /// refresh interval.
    pub fn wind_force(&mut self, rng: &mut RngState, params: &PendulumParams, t: f64) -> f64 {
        // The small offset keeps t = k * wind_refresh on the new interval
        // despite rounding in k * dt.
        let segment = (t / params.wind_refresh + 1e-9).floor().max(0.0) as u64;
        if self.segment != Some(segment) {
            self.segment = Some(segment);
            let u = params.wind_mean + params.wind_halfwidth * (2.0 * rng.next_uniform() - 1.0);
            self.speed = u.max(0.0);
        }
        params.drag_coeff * self.speed * self.speed
    }
}

#[inline]
fn acceleration(params: &PendulumParams, phi: f64, omega: f64, force: f64) -> f64 {
    -(params.gravity / params.length) * phi.sin() - params.damping * omega
        + force / (params.mass * params.length) * phi.cos()
}

/// One classical Runge-Kutta step with `force` held over the step.
pub fn step_rk4(state: &PendulumState, params: &PendulumParams, force: f64) -> Result<PendulumState> {
    let h = params.dt;
    let (phi, omega) = (state.phi, state.omega);

    let k1p = omega;
    let k1w = acceleration(params, phi, omega, force);
    let k2p = omega + 0.5 * h * k1w;
    let k2w = acceleration(params, phi + 0.5 * h * k1p, k2p, force);
    let k3p = omega + 0.5 * h * k2w;
    let k3w = acceleration(params, phi + 0.5 * h * k2p, k3p, force);
    let k4p = omega + h * k3w;
    let k4w = acceleration(params, phi + h * k3p, k4p, force);

    let next = PendulumState {
        phi: phi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        omega: omega + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
        t: state.t + h,
    };
    if next.phi.is_finite() && next.omega.is_finite() {
        Ok(next)
    } else {
        Err(Error::Divergence { t: next.t })
    }
}

/// Trajectory from rest over `t_total`, one entry per step plus the start.
pub fn simulate(params: &PendulumParams) -> Result<Vec<PendulumState>> {
    simulate_from(params, PendulumState::at_rest())
}

pub fn simulate_from(params: &PendulumParams, initial: PendulumState) -> Result<Vec<PendulumState>> {
    params.validate()?;
    let steps = (params.t_total / params.dt).round() as u64;
    let mut rng = RngState::new(params.seed);
    let mut wind = Wind::new();
    let mut trajectory = Vec::with_capacity(steps as usize + 1);
    let mut state = initial;
    trajectory.push(state);
    for k in 0..steps {
        let t = initial.t + k as f64 * params.dt;
        let force = wind.wind_force(&mut rng, params, t);
        state = step_rk4(&state, params, force)?;
        // time from the step index, so it does not accumulate rounding
        state.t = initial.t + (k + 1) as f64 * params.dt;
        trajectory.push(state);
    }
    Ok(trajectory)
}

/// Distribution of the angle over samples with `t >= burn_in`.
///
/// Without an explicit `range` the histogram spans `mean +- 5 std`.
pub fn angle_distribution(
    trajectory: &[PendulumState],
    params: &PendulumParams,
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<(Histogram, SummaryStats)> {
    let cutoff = params.burn_in - 1e-9 * params.dt;
    let angles = || trajectory.iter().filter(move |s| s.t >= cutoff).map(|s| s.phi);
    if angles().next().is_none() {
        return Err(Error::invalid("no trajectory samples after burn-in"));
    }
    let stats = summarize(angles())?;
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let half = (5.0 * stats.std).max(1e-6);
            (stats.mean - half, stats.mean + half)
        }
    };
    Ok((histogram(angles(), lo, hi, bins)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn still_air() -> PendulumParams {
        PendulumParams {
            wind_mean: 0.0,
            wind_halfwidth: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn wind_force_cases() {
        let mut rng = RngState::new(1);
        let p = still_air();
        let mut wind = Wind::new();
        assert!((0..100).all(|k| wind.wind_force(&mut rng, &p, k as f64 * 0.1) == 0.0));

        let p = PendulumParams {
            wind_mean: 2.0,
            wind_halfwidth: 0.0,
            drag_coeff: 0.5,
            ..Default::default()
        };
        let mut wind = Wind::new();
        assert!((0..100).all(|k| wind.wind_force(&mut rng, &p, k as f64 * 0.1) == 2.0));
    }

    #[test]
    fn wind_speed_mean() {
        let p = PendulumParams {
            wind_mean: 2.0,
            wind_halfwidth: 1.0,
            wind_refresh: 1.0,
            ..Default::default()
        };
        let mut rng = RngState::new(3);
        let mut wind = Wind::new();
        let speeds: Vec<f64> = (0..10_000)
            .map(|k| {
                wind.wind_force(&mut rng, &p, k as f64);
                wind.speed()
            })
            .collect();
        let s = summarize(speeds).unwrap();
        assert!((s.mean - 2.0).abs() <= 0.03, "{}", s.mean);
    }

    #[test]
    fn speed_is_held_within_an_interval() {
        let p = PendulumParams::default();
        let mut rng = RngState::new(4);
        let mut wind = Wind::new();
        let f0 = wind.wind_force(&mut rng, &p, 0.0);
        for k in 1..500 {
            assert_eq!(wind.wind_force(&mut rng, &p, k as f64 * 1e-3), f0);
        }
        // next interval draws exactly one new speed
        let f1 = wind.wind_force(&mut rng, &p, 0.5);
        assert_ne!(f1, f0);
        assert_eq!(wind.wind_force(&mut rng, &p, 0.75), f1);
    }

    #[test]
    fn equilibrium_is_fixed_point() {
        let p = still_air();
        let s = step_rk4(&PendulumState::at_rest(), &p, 0.0).unwrap();
        assert_eq!((s.phi, s.omega), (0.0, 0.0));
    }

    #[test]
    fn constant_force_equilibrium() {
        // F = m g through c u^2 with c = 1
        let mut p = PendulumParams {
            damping: 1.0,
            drag_coeff: 1.0,
            wind_halfwidth: 0.0,
            t_total: 200.0,
            burn_in: 150.0,
            ..Default::default()
        };
        p.wind_mean = (p.mass * p.gravity / p.drag_coeff).sqrt();
        let force = p.drag_coeff * p.wind_mean * p.wind_mean;
        let traj = simulate(&p).unwrap();
        let last = traj.last().unwrap();
        assert!((last.phi - std::f64::consts::FRAC_PI_4).abs() < 1e-3);
        assert!((last.phi.tan() - force / (p.mass * p.gravity)).abs() < 1e-3);
        let (_, stats) = angle_distribution(&traj, &p, 50, None).unwrap();
        assert!(stats.std < 1e-6);
        assert!((stats.mean - p.equilibrium_angle(force)).abs() < 1e-6);
    }

    #[test]
    fn energy_conserved_without_damping_or_force() {
        let p = PendulumParams {
            damping: 0.0,
            ..still_air()
        };
        let mut s = PendulumState {
            phi: 0.1,
            omega: 0.0,
            t: 0.0,
        };
        let e0 = p.energy(&s);
        for _ in 0..10_000 {
            s = step_rk4(&s, &p, 0.0).unwrap();
        }
        assert!(((p.energy(&s) - e0) / e0).abs() < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let run = |dt: f64| {
            let p = PendulumParams {
                dt,
                t_total: 10.0,
                burn_in: 0.0,
                seed: 17,
                ..Default::default()
            };
            simulate(&p).unwrap().last().unwrap().phi
        };
        let reference = run(0.02 / 8.0);
        let e1 = (run(0.02) - reference).abs();
        let e2 = (run(0.01) - reference).abs();
        let ratio = e1 / e2;
        assert!((8.0..=32.0).contains(&ratio), "error ratio {ratio} ({e1:e} / {e2:e})");
    }

    #[test]
    fn simulate_edge_cases() {
        let p = PendulumParams {
            t_total: 0.0,
            burn_in: 0.0,
            ..Default::default()
        };
        assert_eq!(simulate(&p).unwrap(), vec![PendulumState::at_rest()]);

        let p = PendulumParams {
            t_total: 5.0,
            burn_in: 0.0,
            ..still_air()
        };
        assert_eq!(simulate(&p).unwrap(), simulate(&p).unwrap());
        let p = PendulumParams {
            t_total: 5.0,
            burn_in: 1.0,
            ..Default::default()
        };
        assert_eq!(simulate(&p).unwrap(), simulate(&p).unwrap());

        let p = PendulumParams {
            t_total: 20.0,
            burn_in: 0.0,
            ..still_air()
        };
        let (_, stats) = angle_distribution(&simulate(&p).unwrap(), &p, 10, None).unwrap();
        assert_eq!((stats.mean, stats.std), (0.0, 0.0));
    }

    #[test]
    fn gusty_wind_pushes_downstream() {
        let p = PendulumParams::default();
        let traj = simulate(&p).unwrap();
        let (h, stats) = angle_distribution(&traj, &p, 50, None).unwrap();
        assert!(stats.mean > 0.0);
        assert!(stats.std > 0.0);
        assert_eq!(h.total(), stats.n);
    }

    #[test]
    fn invalid_params_rejected() {
        let bad = [
            PendulumParams {
                length: 0.0,
                ..Default::default()
            },
            PendulumParams {
                dt: -1.0,
                ..Default::default()
            },
            PendulumParams {
                wind_refresh: 1e-4,
                ..Default::default()
            },
            PendulumParams {
                burn_in: 200.0,
                ..Default::default()
            },
            PendulumParams {
                wind_halfwidth: -1.0,
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(simulate(&p).unwrap_err().is_invalid_input());
        }
        let p = PendulumParams {
            t_total: 1.0,
            burn_in: 0.5,
            ..Default::default()
        };
        let traj = simulate(&p).unwrap();
        assert!(angle_distribution(&traj[..10], &p, 10, None).is_err());
    }

    #[test]
    fn divergence_is_reported() {
        let p = PendulumParams {
            gravity: 1e308,
            ..still_air()
        };
        let s = PendulumState {
            phi: 1.0,
            omega: 0.0,
            t: 0.0,
        };
        let err = step_rk4(&s, &p, 0.0).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }
}
