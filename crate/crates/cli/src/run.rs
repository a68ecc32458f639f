//! Sweep execution and CSV output.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use cloakrate::emission::{
    amplitude_strong, amplitude_weak, decay_rate, far_field_pattern, CouplingParams, Orientation, Regime,
};
use cloakrate::green::{CoefficientProvider, Method, ScatteringSource};
use cloakrate::materials::discretize_layers;
use rayon::prelude::*;

use crate::config::{linspace, RegimeName, RunConfig, SweepKind};

/// What a command wrote, and how many of its points failed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub outputs: Vec<PathBuf>,
    pub points: usize,
    pub failures: usize,
}

impl Outcome {
    pub fn all_failed(&self) -> bool {
        self.points > 0 && self.failures == self.points
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn file_tag(method: Method) -> String {
    method.to_string().replace(':', "_")
}

fn provider(config: &RunConfig, method: Method) -> Result<CoefficientProvider, String> {
    let system = config.system_for(method).ok_or("invalid system parameters")?;
    CoefficientProvider::new(&system, method).map_err(|e| e.to_string())
}

fn create(dir: &Path, name: &str) -> io::Result<(csv::Writer<fs::File>, PathBuf)> {
    let path = dir.join(name);
    Ok((csv::Writer::from_path(&path)?, path))
}

/// Normalised rate at one point, or the error text for the CSV.
fn rate_at(
    config: &RunConfig,
    source: &Result<CoefficientProvider, String>,
    orientation: Orientation,
    omega: f64,
    r_a: f64,
) -> Result<f64, String> {
    let source = source.as_ref().map_err(Clone::clone)?;
    let atom = config.atom(orientation, r_a, omega).ok_or("invalid atom parameters")?;
    decay_rate(&atom, omega, source, &config.numerics.policy()).map(|d| d.gamma_norm).map_err(|e| e.to_string())
}

pub fn decay(config: &RunConfig, dir: &Path) -> io::Result<Outcome> {
    let methods = config.methods();
    let providers: Vec<_> = methods.iter().map(|&m| provider(config, m)).collect();
    let grid = config.sweep.grid();
    let tasks: Vec<(usize, Orientation, f64)> = (0..methods.len())
        .flat_map(|m| {
            let grid = &grid;
            config.atom.orientations.iter().flat_map(move |&o| grid.iter().map(move |&x| (m, o.into(), x)))
        })
        .collect();

    let kind = config.sweep.kind;
    let results: Vec<Result<f64, String>> = tasks
        .par_iter()
        .map(|&(m, o, x)| match kind {
            SweepKind::Frequency => rate_at(config, &providers[m], o, x, config.atom.r_a),
            SweepKind::Distance => rate_at(config, &providers[m], o, config.sweep.omega, x),
        })
        .collect();

    let (name, header) = match kind {
        SweepKind::Frequency => {
            ("decay_frequency.csv", ["omega_over_omega0", "rA_omega0_over_c", "method", "orientation", "gamma_norm", "error"])
        }
        SweepKind::Distance => {
            ("decay_distance.csv", ["rA_omega0_over_c", "omega_over_omega0", "method", "orientation", "gamma_norm", "error"])
        }
    };
    let (mut w, path) = create(dir, name)?;
    w.write_record(header)?;
    let fixed = match kind {
        SweepKind::Frequency => config.atom.r_a,
        SweepKind::Distance => config.sweep.omega,
    };
    let mut outcome = Outcome { points: tasks.len(), ..Outcome::default() };
    for (&(m, o, x), r) in tasks.iter().zip(&results) {
        let (value, error) = match r {
            Ok(g) => (fmt_f64(*g), String::new()),
            Err(e) => {
                outcome.failures += 1;
                (String::new(), e.clone())
            }
        };
        w.write_record([fmt_f64(x), fmt_f64(fixed), methods[m].to_string(), o.to_string(), value, error])?;
    }
    w.flush()?;
    outcome.outputs.push(path);

    if let Some(n_max) = config.numerics.coefficient_dump_n {
        for (&method, source) in methods.iter().zip(&providers) {
            let Ok(source) = source else { continue };
            let (mut w, path) = create(dir, &format!("coefficients_{}.csv", file_tag(method)))?;
            w.write_record(["n", "re_B_M", "im_B_M", "re_B_N", "im_B_N", "condition_number"])?;
            for n in 1..=n_max {
                match source.coeffs(n, config.sweep.omega) {
                    Ok(c) => w.write_record([
                        n.to_string(),
                        fmt_f64(c.b_m.re),
                        fmt_f64(c.b_m.im),
                        fmt_f64(c.b_n.re),
                        fmt_f64(c.b_n.im),
                        fmt_f64(c.condition),
                    ])?,
                    Err(e) => eprintln!("coefficient dump, {method}, n = {n}: {e}"),
                }
            }
            w.flush()?;
            outcome.outputs.push(path);
        }
    }
    Ok(outcome)
}

/// Coupling for the strong regime. Without an explicit `Γ` the computed
/// `Γ/Γ₀` of `orientation` at `omega` is used, so rates are in units of `Γ₀`.
fn coupling(
    config: &RunConfig,
    source: &Result<CoefficientProvider, String>,
    orientation: Orientation,
    omega: f64,
) -> Result<CouplingParams, String> {
    let c = &config.coupling;
    let gamma = match c.gamma {
        Some(g) => g,
        None => rate_at(config, source, orientation, omega, config.atom.r_a)?,
    };
    CouplingParams::new(c.omega_c, c.delta_omega_c, gamma).map_err(|e| e.to_string())
}

pub fn pattern(config: &RunConfig, dir: &Path) -> io::Result<Outcome> {
    let p = &config.pattern;
    let methods = config.methods();
    let theta = linspace(0.0, std::f64::consts::PI, p.theta_points);
    let results: Vec<Result<Vec<f64>, String>> = methods
        .par_iter()
        .map(|&method| {
            let source = provider(config, method);
            let regime = match p.regime {
                RegimeName::Weak => Regime::Weak,
                RegimeName::Strong => Regime::Strong(coupling(config, &source, Orientation::Radial, p.omega)?),
            };
            let source = source?;
            let atom = config.atom(Orientation::Radial, config.atom.r_a, p.omega).ok_or("invalid atom parameters")?;
            far_field_pattern(&theta, &atom, p.omega, p.detector_radius, &source, regime, &config.numerics.policy())
                .map(|pat| pat.values)
                .map_err(|e| e.to_string())
        })
        .collect();

    let mut outcome = Outcome { points: methods.len(), ..Outcome::default() };
    for (&method, result) in methods.iter().zip(&results) {
        let (mut w, path) = create(dir, &format!("pattern_{}.csv", file_tag(method)))?;
        w.write_record(["theta_rad", "regime", "normalized_intensity", "error"])?;
        let regime = p.regime.to_string();
        match result {
            Ok(values) => {
                for (t, v) in theta.iter().zip(values) {
                    w.write_record([fmt_f64(*t), regime.clone(), fmt_f64(*v), String::new()])?;
                }
            }
            Err(e) => {
                outcome.failures += 1;
                for t in &theta {
                    w.write_record([fmt_f64(*t), regime.clone(), String::new(), e.clone()])?;
                }
            }
        }
        w.flush()?;
        outcome.outputs.push(path);
    }
    Ok(outcome)
}

/// `C_u(t)` per method. The decay rate comes from the first configured
/// orientation unless `dynamics.gamma` / `coupling.gamma` fix it.
pub fn dynamics(config: &RunConfig, dir: &Path) -> io::Result<Outcome> {
    let d = &config.dynamics;
    let methods = config.methods();
    let orientation: Orientation = config.atom.orientations.first().copied().map_or(Orientation::Radial, Into::into);
    let times = linspace(0.0, d.t_stop, d.points);

    let mut outcome = Outcome::default();
    for &method in &methods {
        let source = provider(config, method);
        let (mut w, path) = create(dir, &format!("dynamics_{}.csv", file_tag(method)))?;
        w.write_record(["t_omega0", "regime", "re_Cu", "im_Cu", "abs_Cu"])?;
        for &regime in &d.regimes {
            outcome.points += 1;
            let amplitude: Result<Box<dyn Fn(f64) -> cloakrate::Complex64 + Sync>, String> = match regime {
                RegimeName::Weak => {
                    let gamma = match d.gamma {
                        Some(g) => Ok(g),
                        None => rate_at(config, &source, orientation, d.omega_a, config.atom.r_a),
                    };
                    gamma.map(|g| {
                        let dw = d.delta_omega;
                        Box::new(move |t| amplitude_weak(t, g, dw)) as Box<dyn Fn(f64) -> _ + Sync>
                    })
                }
                RegimeName::Strong => coupling(config, &source, orientation, d.omega_a).map(|c| {
                    let w_a = d.omega_a;
                    Box::new(move |t| amplitude_strong(t, &c, w_a)) as Box<dyn Fn(f64) -> _ + Sync>
                }),
            };
            let amplitude = match amplitude {
                Ok(f) => f,
                Err(e) => {
                    outcome.failures += 1;
                    eprintln!("dynamics, {method}, {regime}: {e}");
                    continue;
                }
            };
            let values: Vec<_> = times.par_iter().map(|&t| amplitude(t)).collect();
            let name = regime.to_string();
            for (t, c) in times.iter().zip(values) {
                w.write_record([fmt_f64(*t), name.clone(), fmt_f64(c.re), fmt_f64(c.im), fmt_f64(c.norm())])?;
            }
        }
        w.flush()?;
        outcome.outputs.push(path);
    }
    Ok(outcome)
}

pub fn layers(config: &RunConfig, dir: &Path) -> io::Result<Outcome> {
    let mut outcome = Outcome { points: 1, ..Outcome::default() };
    let stack = config.cloak().ok_or_else(|| "invalid cloak parameters".to_string()).and_then(|c| {
        discretize_layers(&c, config.num_layers).map_err(|e| e.to_string())
    });
    let (mut w, path) = create(dir, "layers.csv")?;
    w.write_record(["layer_index", "r_inner", "r_outer", "eps_r_over_kL", "eps_t_over_kL"])?;
    match stack {
        Ok(stack) => {
            for row in stack.rows() {
                w.write_record([
                    row.layer_index.to_string(),
                    fmt_f64(row.r_inner),
                    fmt_f64(row.r_outer),
                    fmt_f64(row.eps_r_over_kl),
                    fmt_f64(row.eps_t_over_kl),
                ])?;
            }
        }
        Err(e) => {
            outcome.failures = 1;
            eprintln!("layers: {e}");
        }
    }
    w.flush()?;
    outcome.outputs.push(path);
    Ok(outcome)
}
