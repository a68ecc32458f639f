//! Run configuration: JSON file, dotted `--set` overrides, validation.

use std::fmt;
use std::path::PathBuf;

use cloakrate::emission::{AtomSpec, Orientation};
use cloakrate::green::{Method, SystemSpec, TruncationPolicy};
use cloakrate::materials::{CloakSpec, LorentzModel, ObjectSpec};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub atom: AtomConfig,
    pub methods: Vec<MethodName>,
    pub num_layers: usize,
    pub sweep: SweepConfig,
    pub pattern: PatternConfig,
    pub coupling: CouplingConfig,
    pub dynamics: DynamicsConfig,
    pub numerics: NumericsConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            system: SystemConfig::default(),
            atom: AtomConfig::default(),
            methods: vec![MethodName::Exact, MethodName::Bare, MethodName::Vacuum],
            num_layers: 22,
            sweep: SweepConfig::default(),
            pattern: PatternConfig::default(),
            coupling: CouplingConfig::default(),
            dynamics: DynamicsConfig::default(),
            numerics: NumericsConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemConfig {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub omega_p: f64,
    pub gamma: f64,
    pub alpha: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig { inner_radius: 3.0, outer_radius: 4.5, omega_p: 0.01, gamma: 0.01, alpha: 1.9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AtomConfig {
    pub r_a: f64,
    pub orientations: Vec<OrientationName>,
    pub dipole: f64,
}

impl Default for AtomConfig {
    fn default() -> Self {
        AtomConfig { r_a: 4.7, orientations: vec![OrientationName::Radial, OrientationName::Tangential], dipole: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationName {
    Radial,
    Tangential,
}

impl From<OrientationName> for Orientation {
    fn from(o: OrientationName) -> Self {
        match o {
            OrientationName::Radial => Orientation::Radial,
            OrientationName::Tangential => Orientation::Tangential,
        }
    }
}

/// `"exact"`, `"bare"`, `"vacuum"`, `"layered"` (uses `num_layers`) or
/// `"layered:N"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodName {
    Exact,
    Bare,
    Vacuum,
    Layered(Option<usize>),
}

impl MethodName {
    pub fn resolve(self, num_layers: usize) -> Method {
        match self {
            MethodName::Exact => Method::Exact,
            MethodName::Bare => Method::Bare,
            MethodName::Vacuum => Method::Vacuum,
            MethodName::Layered(n) => Method::Layered(n.unwrap_or(num_layers)),
        }
    }
}

impl fmt::Display for MethodName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodName::Exact => f.write_str("exact"),
            MethodName::Bare => f.write_str("bare"),
            MethodName::Vacuum => f.write_str("vacuum"),
            MethodName::Layered(None) => f.write_str("layered"),
            MethodName::Layered(Some(n)) => write!(f, "layered:{n}"),
        }
    }
}

impl std::str::FromStr for MethodName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(MethodName::Exact),
            "bare" => Ok(MethodName::Bare),
            "vacuum" => Ok(MethodName::Vacuum),
            "layered" => Ok(MethodName::Layered(None)),
            _ => match s.strip_prefix("layered:") {
                Some(n) => n.parse().map(|n| MethodName::Layered(Some(n))).map_err(|_| format!("bad layer count in `{s}`")),
                None => Err(format!("unknown method `{s}` (expected exact, layered, layered:N, bare or vacuum)")),
            },
        }
    }
}

impl Serialize for MethodName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MethodName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Frequency,
    Distance,
}

/// Grid for the `decay` command. A frequency sweep runs `start..=stop` in
/// ω/ω₀ at `atom.r_a`; a distance sweep runs it in r_A at `omega`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub omega: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { kind: SweepKind::Frequency, start: 0.01, stop: 2.0, points: 300, omega: 0.5 }
    }
}

impl SweepConfig {
    pub fn grid(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }
}

/// `points` values from `start` to `stop` inclusive; both ends exact.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { stop } else { start + (stop - start) * (i as f64 / last) })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeName {
    Weak,
    Strong,
}

impl fmt::Display for RegimeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeName::Weak => "weak",
            RegimeName::Strong => "strong",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PatternConfig {
    pub omega: f64,
    pub detector_radius: f64,
    pub theta_points: usize,
    pub regime: RegimeName,
}

impl Default for PatternConfig {
    fn default() -> Self {
        PatternConfig { omega: 0.01, detector_radius: 20.0, theta_points: 721, regime: RegimeName::Weak }
    }
}

/// Lorentzian environment for the strong-coupling regime. A null `gamma`
/// takes the computed `Γ/Γ₀` at the pattern or dynamics frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CouplingConfig {
    pub omega_c: f64,
    pub delta_omega_c: f64,
    pub gamma: Option<f64>,
}

impl Default for CouplingConfig {
    fn default() -> Self {
        CouplingConfig { omega_c: 1.0, delta_omega_c: 0.01, gamma: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsConfig {
    pub omega_a: f64,
    pub t_stop: f64,
    pub points: usize,
    pub regimes: Vec<RegimeName>,
    /// Decay rate for the weak regime; null takes the computed `Γ/Γ₀`.
    pub gamma: Option<f64>,
    pub delta_omega: f64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            omega_a: 1.0,
            t_stop: 500.0,
            points: 501,
            regimes: vec![RegimeName::Weak, RegimeName::Strong],
            gamma: None,
            delta_omega: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsConfig {
    pub tail_tol: f64,
    pub min_terms: usize,
    pub hard_cap: usize,
    /// Also write per-multipole coefficients at `sweep.omega` for `n ≤ coefficient_dump_n`.
    pub coefficient_dump_n: Option<usize>,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        let p = TruncationPolicy::default();
        NumericsConfig { tail_tol: p.tail_tol, min_terms: p.min_terms, hard_cap: p.hard_cap, coefficient_dump_n: None }
    }
}

impl NumericsConfig {
    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy { tail_tol: self.tail_tol, min_terms: self.min_terms, hard_cap: self.hard_cap }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("out") }
    }
}

/// A problem with the configuration, located by its dotted path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn diag(path: &str, message: impl Into<String>) -> Diagnostic {
    Diagnostic { path: path.to_string(), message: message.into() }
}

/// Sets `path` (dot separated) in a JSON tree. The value is parsed as JSON
/// when possible and taken as a string otherwise.
pub fn apply_override(root: &mut Value, assignment: &str) -> Result<(), Diagnostic> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| diag(assignment, "override must look like key.path=value"))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        let obj = node.as_object_mut().ok_or_else(|| diag(path, format!("`{}` is not an object", keys[..i].join("."))))?;
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        node = obj.entry(key.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    Err(diag(path, "empty override path"))
}

/// Parses a config (or a run manifest, whose `config` member is used) and
/// applies overrides on top of the defaults.
pub fn load(text: Option<&str>, overrides: &[String]) -> Result<RunConfig, Vec<Diagnostic>> {
    let mut tree = serde_json::to_value(RunConfig::default()).expect("default config serialises");
    if let Some(text) = text {
        let mut given: Value = serde_json::from_str(text)
            .map_err(|e| vec![diag(&format!("line {}, column {}", e.line(), e.column()), e.to_string())])?;
        if let Some(inner) = given.get_mut("config").filter(|_| given_is_manifest(text)) {
            given = inner.take();
        }
        merge(&mut tree, given);
    }
    for o in overrides {
        apply_override(&mut tree, o).map_err(|d| vec![d])?;
    }
    serde_path_to_error::deserialize(tree).map_err(|e| {
        let path = e.path().to_string();
        vec![diag(&path, e.into_inner().to_string())]
    })
}

fn given_is_manifest(text: &str) -> bool {
    serde_json::from_str::<Value>(text).map(|v| v.get("manifest_version").is_some()).unwrap_or(false)
}

fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

impl RunConfig {
    pub fn lorentz(&self) -> Option<LorentzModel> {
        LorentzModel::new(self.system.omega_p, self.system.gamma).ok()
    }

    pub fn cloak(&self) -> Option<CloakSpec> {
        CloakSpec::new(self.system.inner_radius, self.system.outer_radius, self.lorentz()?).ok()
    }

    pub fn object(&self) -> Option<ObjectSpec> {
        ObjectSpec::new(self.system.alpha, self.lorentz()?).ok()
    }

    /// System for `method`: bare runs drop the cloak.
    pub fn system_for(&self, method: Method) -> Option<SystemSpec> {
        match method {
            Method::Bare => SystemSpec::bare(self.object()?, self.system.inner_radius).ok(),
            _ => Some(SystemSpec::cloaked(self.cloak()?, self.object()?)),
        }
    }

    pub fn methods(&self) -> Vec<Method> {
        self.methods.iter().map(|m| m.resolve(self.num_layers)).collect()
    }

    pub fn atom(&self, orientation: Orientation, r_a: f64, omega_a: f64) -> Option<AtomSpec> {
        AtomSpec::new(r_a, orientation, omega_a, self.atom.dipole).ok()
    }

    /// Everything that would stop a run from starting. `command` limits the
    /// checks to the sections it uses.
    pub fn validate(&self, command: Command) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let s = &self.system;
        if !(s.inner_radius > 0.0 && s.inner_radius.is_finite()) {
            out.push(diag("system.inner_radius", "must be finite and > 0"));
        }
        if !(s.outer_radius > s.inner_radius && s.outer_radius.is_finite()) {
            out.push(diag("system.outer_radius", "must be finite and exceed system.inner_radius"));
        }
        if !(s.omega_p >= 0.0 && s.omega_p.is_finite()) {
            out.push(diag("system.omega_p", "must be finite and >= 0"));
        }
        if !(s.gamma > 0.0 && s.gamma.is_finite()) {
            out.push(diag("system.gamma", "must be finite and > 0 (the medium must be lossy)"));
        }
        if !(s.alpha > 0.0 && s.alpha.is_finite()) {
            out.push(diag("system.alpha", "must be finite and > 0"));
        }
        if command == Command::Layers {
            if self.num_layers < 2 {
                out.push(diag("num_layers", "a single layer freezes the radial components at zero; need at least 2"));
            }
            return out;
        }

        if self.methods.is_empty() {
            out.push(diag("methods", "at least one method is required"));
        }
        for (i, m) in self.methods.iter().enumerate() {
            let count = match m {
                MethodName::Layered(Some(n)) => Some((*n, format!("methods[{i}]"))),
                MethodName::Layered(None) => Some((self.num_layers, "num_layers".to_string())),
                _ => None,
            };
            if let Some((n, path)) = count {
                if n < 2 {
                    out.push(diag(&path, "a single layer freezes the radial components at zero; need at least 2"));
                }
            }
        }
        let cloaked = self.methods.iter().any(|m| *m != MethodName::Bare);
        let shell = if cloaked { s.outer_radius } else { s.inner_radius };
        let shell_msg = if cloaked { "atom inside cloak shell" } else { "atom inside object" };
        if !(self.atom.dipole > 0.0 && self.atom.dipole.is_finite()) {
            out.push(diag("atom.dipole", "must be finite and > 0"));
        }
        let n = &self.numerics;
        if !(n.tail_tol > 0.0 && n.tail_tol < 1.0) {
            out.push(diag("numerics.tail_tol", "must lie in (0, 1)"));
        }
        if n.hard_cap < n.min_terms || n.hard_cap == 0 {
            out.push(diag("numerics.hard_cap", "must be >= numerics.min_terms and > 0"));
        }

        match command {
            Command::Decay => {
                if self.atom.orientations.is_empty() {
                    out.push(diag("atom.orientations", "at least one orientation is required"));
                }
                let w = &self.sweep;
                check_grid(&mut out, "sweep", w.start, w.stop, w.points);
                match w.kind {
                    SweepKind::Frequency => {
                        if !(w.start > 0.0) {
                            out.push(diag("sweep.start", "frequencies must be > 0"));
                        }
                        if !(self.atom.r_a > shell) {
                            out.push(diag("atom.r_a", shell_msg));
                        }
                    }
                    SweepKind::Distance => {
                        if !(w.start > shell) {
                            out.push(diag("sweep.start", shell_msg));
                        }
                        if !(w.omega > 0.0 && w.omega.is_finite()) {
                            out.push(diag("sweep.omega", "must be finite and > 0"));
                        }
                    }
                }
                if n.coefficient_dump_n == Some(0) {
                    out.push(diag("numerics.coefficient_dump_n", "must be >= 1"));
                }
            }
            Command::Pattern => {
                let p = &self.pattern;
                if !(self.atom.r_a > shell) {
                    out.push(diag("atom.r_a", shell_msg));
                }
                if !(p.omega > 0.0 && p.omega.is_finite()) {
                    out.push(diag("pattern.omega", "must be finite and > 0"));
                }
                if !(p.detector_radius > self.atom.r_a && p.detector_radius.is_finite()) {
                    out.push(diag("pattern.detector_radius", "must exceed atom.r_a"));
                }
                if p.theta_points < 2 {
                    out.push(diag("pattern.theta_points", "need at least 2 points"));
                }
                if p.regime == RegimeName::Strong {
                    self.check_coupling(&mut out);
                }
            }
            Command::Dynamics => {
                let d = &self.dynamics;
                if !(self.atom.r_a > shell) {
                    out.push(diag("atom.r_a", shell_msg));
                }
                if !(d.omega_a > 0.0 && d.omega_a.is_finite()) {
                    out.push(diag("dynamics.omega_a", "must be finite and > 0"));
                }
                check_grid(&mut out, "dynamics", 0.0, d.t_stop, d.points);
                if d.regimes.is_empty() {
                    out.push(diag("dynamics.regimes", "at least one regime is required"));
                }
                if let Some(g) = d.gamma {
                    if !(g >= 0.0 && g.is_finite()) {
                        out.push(diag("dynamics.gamma", "must be finite and >= 0"));
                    }
                }
                if d.regimes.contains(&RegimeName::Strong) {
                    self.check_coupling(&mut out);
                }
            }
            Command::Layers => unreachable!(),
        }
        out
    }

    fn check_coupling(&self, out: &mut Vec<Diagnostic>) {
        let c = &self.coupling;
        if !(c.omega_c > 0.0 && c.omega_c.is_finite()) {
            out.push(diag("coupling.omega_c", "must be finite and > 0"));
        }
        if !(c.delta_omega_c > 0.0 && c.delta_omega_c.is_finite()) {
            out.push(diag("coupling.delta_omega_c", "must be finite and > 0"));
        }
        if let Some(g) = c.gamma {
            if !(g > 0.0 && g.is_finite()) {
                out.push(diag("coupling.gamma", "must be finite and > 0"));
            }
        }
    }
}

fn check_grid(out: &mut Vec<Diagnostic>, section: &str, start: f64, stop: f64, points: usize) {
    if points == 0 {
        out.push(diag(&format!("{section}.points"), "grid must not be empty"));
    }
    if !(start.is_finite() && stop.is_finite()) {
        out.push(diag(section, "grid bounds must be finite"));
    } else if points > 1 && !(stop > start) {
        out.push(diag(&format!("{section}.stop"), "grid must be strictly increasing"));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Decay,
    Pattern,
    Dynamics,
    Layers,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Decay => "decay",
            Command::Pattern => "pattern",
            Command::Dynamics => "dynamics",
            Command::Layers => "layers",
        }
    }
}
