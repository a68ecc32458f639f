//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Reference values come from `support` (independent Mie recursion, point
//! dipole field, Volterra integrator) and from the published figure
//! configuration: `ω_p = γ = 0.01`, `R1 = 3`, `R2 = 4.5`, `r_A = 4.7`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use cloakrate::emission::{
    amplitude_strong, decay_rate, default_theta_grid, far_field_pattern, AtomSpec, CouplingParams, Orientation, Regime,
};
use cloakrate::green::{CoefficientProvider, Method, ScatteringSource, SystemSpec, TruncationPolicy};
use cloakrate::materials::{CloakSpec, LorentzModel, ObjectSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::{dipole, mie, volterra};

const R1: f64 = 3.0;
const R2: f64 = 4.5;
const R_A: f64 = 4.7;

fn lorentz() -> LorentzModel {
    LorentzModel::new(0.01, 0.01).unwrap()
}

fn provider(alpha: f64, method: Method) -> CoefficientProvider {
    let object = ObjectSpec::new(alpha, lorentz()).unwrap();
    let system = match method {
        Method::Bare => SystemSpec::bare(object, R1).unwrap(),
        _ => SystemSpec::cloaked(CloakSpec::new(R1, R2, lorentz()).unwrap(), object),
    };
    CoefficientProvider::new(&system, method).unwrap()
}

fn rate(source: &dyn ScatteringSource, orientation: Orientation, omega: f64, r_a: f64) -> f64 {
    let atom = AtomSpec::new(r_a, orientation, omega, 1.0).unwrap();
    decay_rate(&atom, omega, source, &TruncationPolicy::default()).unwrap().gamma_norm
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

struct Verdict {
    passed: bool,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.details.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn within(elapsed: Duration, limit: f64, v: &mut Verdict) {
    let s = elapsed.as_secs_f64();
    v.check(s < limit, format!("runtime {s:.2} s (limit {limit} s)"));
}

fn vacuum_null() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    // a vacuum sphere of radius R1 lets the grid reach r_A = 3.1
    let system = SystemSpec::bare(ObjectSpec::vacuum(), R1).unwrap();
    let bare_vacuum = CoefficientProvider::new(&system, Method::Vacuum).unwrap();
    // the cloak geometry with every material set to vacuum, where r_A > R2
    let shell_vacuum = provider(1.9, Method::Vacuum);
    let mut worst = 0.0_f64;
    for omega in linspace(0.1, 2.0, 50) {
        for r_a in linspace(3.1, 30.0, 20) {
            for o in [Orientation::Radial, Orientation::Tangential] {
                worst = worst.max((rate(&bare_vacuum, o, omega, r_a) - 1.0).abs());
                if r_a > R2 {
                    worst = worst.max((rate(&shell_vacuum, o, omega, r_a) - 1.0).abs());
                }
            }
        }
    }
    v.check(worst <= 1e-10, format!("max |Γ/Γ₀ − 1| over 50×20 grid = {worst:.3e}"));

    let mut worst_b = 0.0_f64;
    for omega in linspace(0.1, 2.0, 50) {
        for n in 1..=30 {
            for p in [&bare_vacuum, &shell_vacuum] {
                let c = p.coeffs(n, omega).unwrap();
                worst_b = worst_b.max(c.b_m.norm()).max(c.b_n.norm());
            }
        }
    }
    v.check(worst_b <= 1e-10, format!("max |B_M|, |B_N| for n ≤ 30 = {worst_b:.3e}"));
    within(start.elapsed(), 10.0, &mut v);
    v
}

fn mie_oracle() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let alpha = 1.9;
    let bare = provider(alpha, Method::Bare);
    let mut worst = 0.0_f64;
    let mut at = (0.0, 0.0);
    for _ in 0..100 {
        let omega = rng.gen_range(0.1..2.0);
        let r_a = rng.gen_range(3.5..12.0);
        let eps = lorentz().factor(omega).unwrap() * alpha;
        let (perp, para) = mie::decay_rates(omega, r_a, &[mie::Region { radius: R1, eps, mu: eps }]);
        for (o, want) in [(Orientation::Radial, perp), (Orientation::Tangential, para)] {
            let got = rate(&bare, o, omega, r_a);
            let rel = ((got - want) / want).abs();
            if rel > worst {
                worst = rel;
                at = (omega, r_a);
            }
        }
    }
    v.check(worst <= 1e-8, format!("max relative difference {worst:.3e} at (ω, r_A) = ({:.4}, {:.4})", at.0, at.1));
    v
}

fn published_rates() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let omega = 0.5;
    let cases = [
        ("radial, bare α=1.3", 1.3, Method::Bare, Orientation::Radial, 1.01, 0.02),
        ("radial, bare α=1.9", 1.9, Method::Bare, Orientation::Radial, 1.16, 0.03),
        ("radial, cloaked", 1.9, Method::Exact, Orientation::Radial, 1.04, 0.02),
        ("tangential, bare α=1.3", 1.3, Method::Bare, Orientation::Tangential, 1.04, 0.02),
        ("tangential, bare α=1.9", 1.9, Method::Bare, Orientation::Tangential, 1.07, 0.02),
        ("tangential, cloaked", 1.9, Method::Exact, Orientation::Tangential, 1.01, 0.02),
    ];
    for (label, alpha, method, o, want, tol) in cases {
        let got = rate(&provider(alpha, method), o, omega, R_A);
        v.check((got - want).abs() <= tol, format!("{label}: Γ/Γ₀ = {got:.4} (expected {want} ± {tol})"));
    }
    // the cloaked value must not depend on what is hidden
    let a = rate(&provider(1.3, Method::Exact), Orientation::Radial, omega, R_A);
    let b = rate(&provider(1.9, Method::Exact), Orientation::Radial, omega, R_A);
    v.check((a - b).abs() <= 1e-9, format!("cloaked radial independent of α: {a:.10} vs {b:.10}"));
    within(start.elapsed(), 5.0, &mut v);
    v
}

fn max_deviation(source: &dyn ScatteringSource, o: Orientation, grid: &[f64]) -> f64 {
    grid.iter().map(|&w| (rate(source, o, w, R_A) - 1.0).abs()).fold(0.0, f64::max)
}

fn cloaking_quality() -> Verdict {
    let mut v = Verdict::new();
    let exact = provider(1.9, Method::Exact);
    let bare = provider(1.9, Method::Bare);
    let off = linspace(0.1, 0.7, 61);
    let near = linspace(0.951, 1.049, 50);
    for o in [Orientation::Radial, Orientation::Tangential] {
        let (c, b) = (max_deviation(&exact, o, &off), max_deviation(&bare, o, &off));
        v.check(c <= 0.1, format!("{o}, ω ∈ [0.1, 0.7]: cloaked max |Γ/Γ₀ − 1| = {c:.4} (≤ 0.1)"));
        v.check(c < b, format!("{o}, ω ∈ [0.1, 0.7]: cloaked {c:.4} < bare {b:.4}"));
        let (c, b) = (max_deviation(&exact, o, &near), max_deviation(&bare, o, &near));
        v.check(c > b, format!("{o}, |ω − 1| < 0.05: cloaked {c:.4} > bare {b:.4}"));
    }
    v
}

fn layered_convergence() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let omega = 0.5;
    let exact = rate(&provider(1.9, Method::Exact), Orientation::Radial, omega, R_A);
    let mut previous = f64::INFINITY;
    let mut monotone = true;
    let mut last = 0.0;
    let mut line = String::new();
    for n in [8, 14, 22, 50, 100] {
        let got = rate(&provider(1.9, Method::Layered(n)), Orientation::Radial, omega, R_A);
        let rel = ((got - exact) / exact).abs();
        monotone &= rel <= previous;
        previous = rel;
        last = rel;
        line.push_str(&format!(" N={n}: {rel:.3e}"));
    }
    v.check(monotone, format!("relative difference nonincreasing:{line}"));
    v.check(last < 0.02, format!("N = 100: {last:.3e} (< 2e-2)"));
    within(start.elapsed(), 60.0, &mut v);
    v
}

fn dynamics() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let delta = rng.gen_range(0.1..1.0);
        let ratio = 10f64.powf(rng.gen_range(-2.0..2.0));
        let detuning = rng.gen_range(-1.0..1.0);
        let t = rng.gen_range(0.5..2.0) / delta;
        let p = CouplingParams::from_rabi(1.0, delta, ratio * delta).unwrap();
        let got = amplitude_strong(t, &p, 1.0 - detuning);
        let want = volterra::amplitude(t, p.rabi, detuning, delta, 20_000);
        worst = worst.max((got - want).norm());
    }
    v.check(worst <= 1e-4, format!("20 random sets, Ω/δω_c ∈ [0.01, 100]: max |ΔC_u| = {worst:.3e}"));

    // damped Rabi oscillation: zeros of C_u at (2k+1)π/Ω
    let delta = 0.01;
    let p = CouplingParams::from_rabi(1.0, delta, 100.0 * delta).unwrap();
    let period = 2.0 * PI / p.rabi;
    let mut worst_shift = 0.0_f64;
    for k in 0..10 {
        let predicted = (2 * k + 1) as f64 * PI / p.rabi;
        let f = |t: f64| amplitude_strong(t, &p, 1.0).re;
        let (mut a, mut b) = (predicted - 0.25 * period, predicted + 0.25 * period);
        assert!(f(a) * f(b) < 0.0, "no sign change around zero {k}");
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if f(a) * f(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        worst_shift = worst_shift.max((0.5 * (a + b) - predicted).abs() / period);
    }
    v.check(worst_shift <= 0.005, format!("Ω = 100 δω_c: zeros within {worst_shift:.3e} of a period (≤ 5e-3)"));
    v
}

fn peak(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

fn patterns() -> Verdict {
    let mut v = Verdict::new();
    let grid = default_theta_grid();
    let policy = TruncationPolicy::default();
    let atom = AtomSpec::new(R_A, Orientation::Radial, 1.0, 1.0).unwrap();
    let vacuum = provider(1.9, Method::Vacuum);
    let pattern = |source: &dyn ScatteringSource, omega: f64, regime: Regime| {
        far_field_pattern(&grid, &atom, omega, 20.0, source, regime, &policy).unwrap().values
    };

    let mut worst = 0.0_f64;
    for omega in [0.01, 0.5, 1.0, 2.0] {
        let got = pattern(&vacuum, omega, Regime::Weak);
        let want: Vec<f64> = grid
            .iter()
            .map(|&t| {
                let (fr, ft) = dipole::field(omega, R_A, 20.0, t);
                (fr.norm_sqr() + ft.norm_sqr()) / (omega * omega)
            })
            .collect();
        let p = peak(&want);
        worst = worst.max(got.iter().zip(&want).map(|(g, w)| (g - w).abs() / p).fold(0.0, f64::max));
    }
    v.check(worst <= 1e-8, format!("vacuum system vs point dipole: max error {worst:.3e} of peak"));

    let free = pattern(&vacuum, 0.01, Regime::Weak);
    for alpha in [1.3, 1.9] {
        let cloaked = pattern(&provider(alpha, Method::Exact), 0.01, Regime::Weak);
        let dev = cloaked.iter().zip(&free).map(|(c, f)| (c - f).abs()).fold(0.0, f64::max) / peak(&free);
        v.check(dev <= 0.05, format!("ω = 0.01, α = {alpha}: cloaked vs free space {dev:.3e} of peak (≤ 5e-2)"));
    }

    for alpha in [1.3, 1.9] {
        let exact = provider(alpha, Method::Exact);
        let off = peak(&pattern(&exact, 0.01, Regime::Weak));
        let on = peak(&pattern(&exact, 1.0, Regime::Weak));
        let factor = off / on;
        v.check(
            (1.5..=3.0).contains(&factor),
            format!("α = {alpha}: off-resonance peak / resonant peak = {factor:.3e} (expected in [1.5, 3])"),
        );
    }

    // strong coupling with δω_c = 0.01 and Γ taken as the computed Γ/Γ₀
    let exact = provider(1.9, Method::Exact);
    let omega = 0.01;
    let gamma = rate(&exact, Orientation::Radial, omega, R_A);
    let coupling = CouplingParams::new(1.0, 0.01, gamma).unwrap();
    let weak = peak(&pattern(&exact, omega, Regime::Weak));
    let strong = peak(&pattern(&exact, omega, Regime::Strong(coupling)));
    let suppression = weak / strong;
    v.check(
        (1e3 / 3.0..=3e3).contains(&suppression),
        format!("strong-coupling suppression {suppression:.3e} (10³ within a factor of 3)"),
    );
    v
}

fn determinism() -> Verdict {
    let mut v = Verdict::new();
    let tmp = std::env::temp_dir().join(format!("cloakrate-acceptance-{}", std::process::id()));
    let run = |sub: &str, cmd: &str, workers: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cloakrate"));
        c.args([cmd, "--set", "sweep.points=120", "--set", "pattern.theta_points=181"]).arg("--output").arg(tmp.join(sub));
        if let Some(w) = workers {
            c.args(["--workers", w]);
        }
        assert!(c.stderr(Stdio::null()).status().unwrap().success());
    };
    for cmd in ["decay", "pattern", "dynamics", "layers"] {
        run("one", cmd, Some("1"));
        run("again", cmd, Some("1"));
        run("all", cmd, None);
    }
    let mut files: Vec<_> = fs::read_dir(tmp.join("one"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n.to_string_lossy().ends_with(".csv"))
        .collect();
    files.sort();
    let mut same = true;
    for name in &files {
        let a = fs::read(tmp.join("one").join(name)).unwrap();
        same &= a == fs::read(tmp.join("again").join(name)).unwrap();
        same &= a == fs::read(tmp.join("all").join(name)).unwrap();
    }
    v.check(
        same && files.len() == 8,
        format!("{} CSV files byte-identical across two runs and 1 vs all workers", files.len()),
    );
    let _ = fs::remove_dir_all(&tmp);
    v
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("vacuum null suite", vacuum_null),
        ("Mie-oracle equivalence", mie_oracle),
        ("published decay rates at ω = 0.5", published_rates),
        ("off-resonance cloaking quality", cloaking_quality),
        ("layered convergence", layered_convergence),
        ("strong-coupling dynamics", dynamics),
        ("emission patterns", patterns),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        println!("{} {name} ({secs:.2} s)", if verdict.passed { "PASS" } else { "FAIL" });
        for d in &verdict.details {
            println!("       {d}");
        }
        failed += usize::from(!verdict.passed);
    }
    println!("\n{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
