//! One function per subcommand, each producing CSV text plus run notes.

use stattrials_core::arq_channel::{self, ArqConfig, ErrorModel, SweepParams};
use stattrials_core::pendulum::{self, PendulumParams};
use stattrials_core::percolation::{self, generate_grid, label_clusters};
use stattrials_core::process_sim::{self, ProcessSpec};
use stattrials_core::random_walk::{self, WalkConfig};
use stattrials_core::scattering::{self, ScatteringConfig};
use stattrials_core::symbol_channel::{self, ChannelMatrix, SourceDist, StabilitySettings};
use stattrials_core::{derive_stream, Error, Histogram, Result, StreamId};

use crate::args::*;
use crate::cells;
use crate::format::{real, Table};

/// CSV text and `key: value` notes recorded in the manifest.
pub struct Output {
    pub csv: String,
    pub notes: Vec<(String, String)>,
}

impl Output {
    fn new(table: Table) -> Self {
        Output {
            csv: table.into_string(),
            notes: Vec::new(),
        }
    }

    fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.notes.push((key.into(), value.to_string()));
        self
    }
}

pub struct Globals {
    pub seed: u64,
    pub bins: usize,
}

pub fn run(command: &Command, g: &Globals) -> Result<Output> {
    match command {
        Command::Walk(a) => walk(a, g),
        Command::Pendulum(a) => pendulum(a, g),
        Command::Scatter(a) => scatter(a, g),
        Command::Percolation(a) => percolation(a, g),
        Command::Process(a) => process(a, g),
        Command::Arq(a) => arq(a, g),
        Command::ArqSweep(a) => arq_sweep(a, g),
        Command::Capacity(a) => capacity(a, g),
        Command::SymbolChannel(a) => symbol_channel(a, g),
    }
}

fn histogram_table(h: &Histogram) -> Table {
    let mut t = Table::new(&["bin_lo", "bin_hi", "count"]);
    for (k, &c) in h.counts().iter().enumerate() {
        let (lo, hi) = h.bin_edges(k);
        t.row(cells![lo, hi, c]);
    }
    t
}

fn walk(a: &WalkArgs, g: &Globals) -> Result<Output> {
    if let Some(list) = &a.steps_list {
        let curve = random_walk::msd_curve(list, a.trials, g.seed)?;
        let mut t = Table::new(&["N", "msd", "stderr"]);
        for pt in &curve {
            t.row(cells![pt.steps, pt.msd, pt.msd_stderr]);
        }
        let mut out = Output::new(t);
        if curve.len() >= 2 {
            let pts: Vec<(f64, f64)> = curve.iter().map(|pt| (pt.steps as f64, pt.msd)).collect();
            let (slope, intercept) = random_walk::linear_fit(&pts)?;
            out = out
                .note("fit_slope", real(slope))
                .note("fit_intercept", real(intercept));
        }
        return Ok(out);
    }
    let r = random_walk::ensemble(&WalkConfig {
        steps: a.steps,
        trials: a.trials,
        seed: g.seed,
    })?;
    let mut t = Table::new(&["trial", "z"]);
    for (i, &z) in r.final_positions.iter().enumerate() {
        t.row(cells![i, z]);
    }
    Ok(Output::new(t)
        .note("msd", real(r.msd))
        .note("mean_z", real(r.mean_position)))
}

fn pendulum(a: &PendulumArgs, g: &Globals) -> Result<Output> {
    let params = PendulumParams {
        gravity: a.gravity,
        length: a.length,
        mass: a.mass,
        damping: a.damping,
        drag_coeff: a.drag_coeff,
        wind_mean: a.wind_mean,
        wind_halfwidth: a.wind_halfwidth,
        wind_refresh: a.wind_refresh,
        dt: a.dt,
        t_total: a.t_total,
        burn_in: a.burn_in,
        seed: g.seed,
    };
    if a.record_every == 0 {
        return Err(Error::invalid("record-every must be at least 1"));
    }
    let range = match (a.hist_lo, a.hist_hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => return Err(Error::invalid("hist-lo and hist-hi must be given together")),
    };
    let traj = pendulum::simulate(&params)?;
    let (hist, stats) = pendulum::angle_distribution(&traj, &params, g.bins, range)?;
    let phi_eq = params.equilibrium_angle(params.drag_coeff * params.wind_mean * params.wind_mean);
    let out = match a.report {
        PendulumReport::Summary => {
            let mut t = Table::new(&["n", "mean_phi", "variance", "std", "stderr", "phi_eq_mean_wind"]);
            t.row(cells![
                stats.n,
                stats.mean,
                stats.variance,
                stats.std,
                stats.stderr,
                phi_eq
            ]);
            Output::new(t)
        }
        PendulumReport::Trajectory => {
            let mut t = Table::new(&["t", "phi", "omega"]);
            for s in traj.iter().step_by(a.record_every) {
                t.row(cells![s.t, s.phi, s.omega]);
            }
            Output::new(t)
        }
        PendulumReport::Histogram => Output::new(histogram_table(&hist))
            .note("underflow", hist.underflow())
            .note("overflow", hist.overflow()),
    };
    Ok(out.note("mean_phi", real(stats.mean)))
}

fn scatter(a: &ScatterArgs, g: &Globals) -> Result<Output> {
    let centers = match a.geometry {
        Geometry::Single => scattering::single_atom(a.strength),
        Geometry::Pair => scattering::two_atoms(a.separation, a.strength),
    };
    let config = ScatteringConfig {
        centers,
        mass: a.mass,
        speed: a.speed,
        start_x: a.start_x,
        stop_x: a.stop_x,
        b_min: a.b_min,
        b_max: a.b_max,
        dt: a.dt,
        max_steps: a.max_steps,
        particles: a.particles,
        energy_tolerance: a.energy_tolerance,
        seed: g.seed,
    };
    let sweep = scattering::sweep(&config, g.bins)?;
    let failed = sweep.outcomes.iter().filter(|o| o.is_err()).count();
    let drift_flagged = sweep.outcomes.iter().flatten().filter(|o| !o.energy_ok).count();
    let max_drift = sweep
        .outcomes
        .iter()
        .flatten()
        .map(|o| o.energy_drift)
        .fold(0.0, f64::max);
    let out = match a.report {
        ScatterReport::Histogram => Output::new(histogram_table(&sweep.histogram)),
        ScatterReport::Particles => {
            let mut t = Table::new(&["particle", "b", "alpha", "energy_drift", "status"]);
            for (i, o) in sweep.outcomes.iter().enumerate() {
                match o {
                    Ok(o) => {
                        let status = if o.energy_ok { "ok" } else { "energy_drift" };
                        t.row(cells![i, o.b, o.alpha, o.energy_drift, status]);
                    }
                    Err(e) => {
                        let status = match e {
                            Error::NoEscape { .. } => "no_escape",
                            Error::Singularity { .. } => "singularity",
                            _ => "error",
                        };
                        t.row(cells![i, None::<f64>, None::<f64>, None::<f64>, status]);
                    }
                }
            }
            Output::new(t)
        }
    };
    Ok(out
        .note("failed_trajectories", failed)
        .note("energy_flagged", drift_flagged)
        .note("max_energy_drift", real(max_drift)))
}

fn percolation(a: &PercolationArgs, g: &Globals) -> Result<Output> {
    match a.report {
        PercolationReport::Curve => {
            let curve = percolation::sweep_p(a.size, &a.p_list, a.trials, g.seed)?;
            let mut t = Table::new(&["p", "P", "stderr", "trials"]);
            for pt in &curve.points {
                t.row(cells![pt.p, pt.probability, pt.stderr, pt.trials]);
            }
            let crossing = curve.crossing(0.5).map_or("none".to_string(), real);
            Ok(Output::new(t).note("p_at_half", crossing))
        }
        PercolationReport::Grid | PercolationReport::Labels => {
            let p = *a.p_list.first().ok_or_else(|| Error::invalid("p list is empty"))?;
            let mut rng = derive_stream(StreamId::new(g.seed, 0));
            let grid = generate_grid(a.size, p, &mut rng)?;
            let labels = label_clusters(&grid);
            let header: Vec<String> = (0..a.size).map(|c| format!("c{c}")).collect();
            let mut t = Table::new(&header);
            for row in 0..a.size {
                let cells = (0..a.size)
                    .map(|col| match a.report {
                        PercolationReport::Grid => u64::from(grid.is_occupied(row, col)).into(),
                        _ => u64::from(labels.label(row, col)).into(),
                    })
                    .collect();
                t.row(cells);
            }
            Ok(Output::new(t)
                .note("p", real(p))
                .note("clusters", labels.cluster_count())
                .note("spanning", percolation::has_spanning_cluster(&labels)))
        }
    }
}

fn process(a: &ProcessArgs, g: &Globals) -> Result<Output> {
    let spec = ProcessSpec::new(a.durations.clone(), a.success_probs.clone())?;
    let (am, av) = process_sim::analytic_moments(&spec);
    match a.report {
        ProcessReport::Summary => {
            let s = process_sim::estimate(&spec, a.trials, g.seed)?;
            let mut t = Table::new(&[
                "mean",
                "variance",
                "std",
                "stderr",
                "analytic_mean",
                "analytic_variance",
            ]);
            t.row(cells![s.mean, s.variance, s.std, s.stderr, am, av]);
            Ok(Output::new(t))
        }
        ProcessReport::Trials => {
            if a.trials == 0 {
                return Err(Error::invalid("need at least one trial"));
            }
            let totals = process_sim::simulate_totals(&spec, a.trials, g.seed)?;
            let mut t = Table::new(&["trial", "total"]);
            for (i, &x) in totals.iter().enumerate() {
                t.row(cells![i, x]);
            }
            Ok(Output::new(t).note("analytic_mean", real(am)))
        }
    }
}

fn arq(a: &ArqArgs, g: &Globals) -> Result<Output> {
    if a.bit_error_p.is_empty() {
        return Err(Error::invalid("bit-error-p list is empty"));
    }
    let model: ErrorModel = a.model.into();
    let mut t = Table::new(&["p", "D", "N_K", "t", "retransmissions", "v", "undetected_error_frames"]);
    for (j, &p) in a.bit_error_p.iter().enumerate() {
        let config = ArqConfig {
            frame_len: a.frame_len,
            bit_error_p: p,
            n_frames: a.frames,
            error_model: model,
            quantize: a.quantize,
            max_attempts_per_frame: a.max_attempts,
            seed: StreamId::new(g.seed, j as u64).derived_seed(),
        };
        let r = arq_channel::simulate(&config)?;
        t.row(cells![
            p,
            a.frame_len,
            r.frames_delivered,
            r.total_tacts,
            r.retransmissions,
            r.throughput,
            r.undetected_error_frames
        ]);
    }
    Ok(Output::new(t))
}

fn sweep_params(
    d_min: u32,
    d_max: u32,
    frames: u64,
    model: Model,
    quantize: Option<u32>,
    max: u64,
    seed: u64,
) -> SweepParams {
    SweepParams {
        d_min,
        d_max,
        n_frames: frames,
        error_model: model.into(),
        quantize,
        max_attempts_per_frame: max,
        seed,
    }
}

fn arq_sweep(a: &ArqSweepArgs, g: &Globals) -> Result<Output> {
    if a.bit_error_p.is_empty() {
        return Err(Error::invalid("bit-error-p list is empty"));
    }
    let mut t = Table::new(&["p", "D", "v_sim", "v_analytic", "stderr"]);
    let mut out_notes = Vec::new();
    for (j, &p) in a.bit_error_p.iter().enumerate() {
        let seed = StreamId::new(g.seed, j as u64).derived_seed();
        let params = sweep_params(a.d_min, a.d_max, a.frames, a.model, a.quantize, a.max_attempts, seed);
        let sweep = arq_channel::sweep_frame_length(p, &params)?;
        for pt in &sweep.points {
            t.row(cells![p, pt.frame_len, pt.v_sim, pt.v_analytic, pt.stderr]);
        }
        let best = sweep.best_simulated();
        out_notes.push((format!("best_D[p={}]", real(p)), best.frame_len.to_string()));
        if !sweep.skipped.is_empty() {
            let skipped: Vec<String> = sweep.skipped.iter().map(u32::to_string).collect();
            out_notes.push((format!("skipped_D[p={}]", real(p)), skipped.join(",")));
        }
    }
    let mut out = Output::new(t);
    out.notes = out_notes;
    Ok(out)
}

fn capacity(a: &CapacityArgs, g: &Globals) -> Result<Output> {
    let params = sweep_params(a.d_min, a.d_max, a.frames, a.model, a.quantize, a.max_attempts, g.seed);
    let curve = arq_channel::capacity_curve(&a.p_list, &params)?;
    let mut t = Table::new(&["p", "C_emp", "C_bsc", "D_opt", "stderr"]);
    for pt in &curve {
        t.row(cells![pt.p, pt.c_emp, pt.c_bsc, pt.d_opt, pt.stderr]);
    }
    Ok(Output::new(t))
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::invalid(format!("matrix entry '{}' is not a number", v.trim())))
                })
                .collect()
        })
        .collect()
}

fn symbol_channel(a: &SymbolChannelArgs, g: &Globals) -> Result<Output> {
    let source = SourceDist::new(a.source.clone())?;
    let matrix = ChannelMatrix::validate(parse_matrix(&a.matrix)?)?;
    let settings = StabilitySettings {
        window: a.window,
        tolerance: a.tolerance,
    };
    let s = symbol_channel::estimate_error_rate(&source, &matrix, a.trials, g.seed, settings)?;
    let analytic = symbol_channel::analytic_error_rate(&source, &matrix)?;
    let out = match a.report {
        SymbolReport::Summary => {
            let mut t = Table::new(&[
                "n",
                "errors",
                "error_rate",
                "analytic_error_rate",
                "erasures",
                "analytic_erasure_rate",
                "first_stable_n",
            ]);
            t.row(cells![
                s.n_sent,
                s.n_errors,
                s.error_rate,
                analytic,
                s.n_erasures,
                symbol_channel::analytic_erasure_rate(&source, &matrix)?,
                s.first_stable_n
            ]);
            Output::new(t)
        }
        SymbolReport::Running => {
            let mut t = Table::new(&["n", "error_rate"]);
            for &(n, r) in &s.running {
                t.row(cells![n, r]);
            }
            Output::new(t)
        }
        SymbolReport::Confusion => {
            let mut header = vec!["input".to_string()];
            header.extend((0..matrix.cols()).map(|j| format!("out{j}")));
            let mut t = Table::new(&header);
            for (i, row) in s.confusion.iter().enumerate() {
                let mut cells = cells![i];
                cells.extend(row.iter().map(|&c| c.into()));
                t.row(cells);
            }
            Output::new(t)
        }
    };
    let stable = s.first_stable_n.map_or("none".to_string(), |n| n.to_string());
    Ok(out
        .note("error_rate", real(s.error_rate))
        .note("first_stable_n", stable))
}
