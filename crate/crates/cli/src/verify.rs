//! The acceptance criteria, runnable from the CLI (`verify`) and from tests.
//!
//! Every criterion is deterministic for a given seed. Runtimes are measured
//! and compared with a budget, but only the pass/fail outcome of that
//! comparison enters the JSON report, so reports are byte-identical across
//! runs.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarzian_core::robertson::{
    delta, dieudonne_report, extremal_f0, extremal_fz0p, extremal_value, g_profile, h_poly,
    membership_min, pre_schwarzian_norm_bound, robertson_from_omega, s0, schwarzian,
    schwarzian_norm_bound, schwarzian_via_omega,
};
use schwarzian_core::{
    norm_pre_schwarzian, norm_schwarzian, GridConfig64, RobertsonFunction64, SchwarzFunction64,
    SpiralAlpha64, C64, DEFAULT_ORDER,
};

use crate::commands::grid_section;
use crate::report::{Field, Report, Section};

/// Environment variable holding the seed for randomized sampling.
pub const SEED_VAR: &str = "SCHWARZIAN_LAB_SEED";

/// Reads the sampling seed; unset means 0.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR}={v:?} is not an unsigned integer")),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(format!("{SEED_VAR}: {e}")),
    }
}

/// Replaceable pieces, for checking that the suite catches a broken bound.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub pointwise_bound: fn(&SpiralAlpha64, f64) -> f64,
}

impl Default for Hooks {
    fn default() -> Self {
        Self {
            pointwise_bound: schwarzian_core::robertson::pointwise_bound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    /// Numerical checks passed.
    pub checks_passed: bool,
    pub budget: Option<Duration>,
    pub runtime: Duration,
    pub details: Section,
}

impl Outcome {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.runtime <= b)
    }

    pub fn passed(&self) -> bool {
        self.checks_passed && self.within_budget()
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let budget = self.budget.map_or(String::new(), |b| {
            format!(" (budget {:.0} s)", b.as_secs_f64())
        });
        format!(
            "[{}] {:<22} {:>8.3} s{}  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.runtime.as_secs_f64(),
            budget,
            self.title,
        )
    }
}

struct Ctx {
    seed: u64,
    hooks: Hooks,
    grid: GridConfig64,
    /// Every Robertson function built by the suite, for the membership check.
    built: Vec<(String, RobertsonFunction64)>,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn keep(&mut self, label: String, f: &RobertsonFunction64) {
        self.built.push((label, f.clone()));
    }
}

fn alpha(x: f64) -> SpiralAlpha64 {
    SpiralAlpha64::new(x).expect("suite angles are in range")
}

fn random_alpha(rng: &mut ChaCha8Rng) -> SpiralAlpha64 {
    alpha(rng.gen_range(-1.0..1.0) * (FRAC_PI_2 - 1e-6))
}

fn random_disk_point(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> C64 {
    Complex::from_polar(rng.gen_range(r_min..=r_max), rng.gen_range(0.0..TAU))
}

/// Rotation, real degree-2 product or complex product of degree 2 or 3.
fn random_omega(rng: &mut ChaCha8Rng) -> SchwarzFunction64 {
    match rng.gen_range(0..3) {
        0 => SchwarzFunction64::rotation(rng.gen_range(0.0..TAU)),
        1 => {
            let p = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            SchwarzFunction64::blaschke2(p, rng.gen_range(-0.95..0.95)).unwrap()
        }
        _ => {
            let n = rng.gen_range(1..=2);
            let zeros = (0..n).map(|_| random_disk_point(rng, 0.0, 0.9)).collect();
            SchwarzFunction64::blaschke_fix0(rng.gen_range(0.0..TAU), zeros).unwrap()
        }
    }
}

fn run(
    id: &'static str,
    title: &'static str,
    budget_s: Option<f64>,
    body: impl FnOnce() -> (bool, Section),
) -> Outcome {
    let start = Instant::now();
    let (checks_passed, details) = body();
    Outcome {
        id,
        title,
        checks_passed,
        budget: budget_s.map(Duration::from_secs_f64),
        runtime: start.elapsed(),
        details,
    }
}

fn convex_sharpness(ctx: &mut Ctx) -> Outcome {
    let mut built = Vec::new();
    let out = run(
        "convex_sharpness",
        "alpha = 0: (1-z0^2)^2 |S(z0)| = 2 for the two-point extremal",
        Some(1.0),
        || {
            let a = SpiralAlpha64::convex();
            let mut worst = 0.0f64;
            for z0 in [0.3, 0.5, 0.7] {
                let f = extremal_fz0p(a, z0, DEFAULT_ORDER).unwrap();
                let s = schwarzian_via_omega(&a, f.omega(), Complex::new(z0, 0.0))
                    .unwrap()
                    .norm();
                let w = 1.0 - z0 * z0;
                worst = worst.max((w * w * s - 2.0).abs());
                built.push((format!("fz0p(alpha=0, z0={z0})"), f));
            }
            (
                worst <= 1e-9,
                Section::new()
                    .with("max_abs_error", worst)
                    .with("tolerance", 1e-9),
            )
        },
    );
    for (label, f) in built {
        ctx.keep(label, &f);
    }
    out
}

fn large_alpha_norm(ctx: &mut Ctx) -> Outcome {
    let grid = ctx.grid;
    let mut built = Vec::new();
    let out = run(
        "large_alpha_norm",
        "|alpha| > pi/6: norm of f0 reaches 8 cos(a) sin|a|",
        Some(5.0),
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for x in [FRAC_PI_4, FRAC_PI_3, 1.2] {
                let a = alpha(x);
                let f = extremal_f0(a, DEFAULT_ORDER).unwrap();
                let res = norm_schwarzian(&f, &grid).unwrap();
                let bound = 8.0 * a.cos() * a.sin_abs();
                ok &= res.value >= 0.99 * bound && res.value <= bound + 1e-6;
                rows.push(Field::from(
                    Section::new()
                        .with("alpha", x)
                        .with("bound", bound)
                        .with("value", res.value)
                        .with("ratio", res.value / bound),
                ));
                built.push((format!("f0(alpha={x})"), f));
            }
            (
                ok,
                Section::new()
                    .with("cases", rows)
                    .with("min_ratio", 0.99)
                    .with("excess_tolerance", 1e-6),
            )
        },
    );
    for (label, f) in built {
        ctx.keep(label, &f);
    }
    out
}

fn small_alpha_norm(ctx: &mut Ctx) -> Outcome {
    let grid = ctx.grid;
    let mut built = Vec::new();
    let out = run(
        "small_alpha_norm",
        "|alpha| <= pi/6: 2cos(a)/(1-sin|a|) approached, never exceeded",
        Some(10.0),
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for x in [0.0, 0.2, FRAC_PI_6] {
                let a = alpha(x);
                let bound = schwarzian_norm_bound(&a);
                let mut best = 0.0f64;
                let mut max_numeric = 0.0f64;
                for z0 in [0.9, 0.99] {
                    let w = 1.0 - z0 * z0;
                    best = best.max(w * w * extremal_value(&a, z0).unwrap());
                    let f = extremal_fz0p(a, z0, DEFAULT_ORDER).unwrap();
                    max_numeric = max_numeric.max(norm_schwarzian(&f, &grid).unwrap().value);
                    built.push((format!("fz0p(alpha={x}, z0={z0})"), f));
                }
                ok &= best >= 0.99 * bound && max_numeric <= bound + 1e-6;
                rows.push(Field::from(
                    Section::new()
                        .with("alpha", x)
                        .with("bound", bound)
                        .with("sup_weighted_extremal_value", best)
                        .with("max_numeric_norm", max_numeric),
                ));
            }
            (
                ok,
                Section::new()
                    .with("cases", rows)
                    .with("min_ratio", 0.99)
                    .with("excess_tolerance", 1e-6),
            )
        },
    );
    for (label, f) in built {
        ctx.keep(label, &f);
    }
    out
}

fn pre_schwarzian_norm(ctx: &mut Ctx) -> Outcome {
    let grid = ctx.grid;
    let mut built = Vec::new();
    let out = run(
        "pre_schwarzian_norm",
        "pre-Schwarzian norm of f0 equals 4 cos(a)",
        Some(2.0),
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for x in [0.0, FRAC_PI_4, FRAC_PI_3] {
                let a = alpha(x);
                let f = extremal_f0(a, DEFAULT_ORDER).unwrap();
                let v = norm_pre_schwarzian(&f, &grid).unwrap().value;
                let bound = pre_schwarzian_norm_bound(&a);
                let rel = (v - bound).abs() / bound;
                ok &= rel <= 1e-3;
                rows.push(Field::from(
                    Section::new()
                        .with("alpha", x)
                        .with("value", v)
                        .with("rel_error", rel),
                ));
                built.push((format!("f0(alpha={x})"), f));
            }
            (
                ok,
                Section::new()
                    .with("cases", rows)
                    .with("rel_tolerance", 1e-3),
            )
        },
    );
    for (label, f) in built {
        ctx.keep(label, &f);
    }
    out
}

fn pointwise_domination(ctx: &mut Ctx) -> Outcome {
    let mut rng = ctx.rng(5);
    let bound = ctx.hooks.pointwise_bound;
    run(
        "pointwise_domination",
        "|S_f(z)| <= pointwise bound on 10^4 random samples",
        Some(5.0),
        || {
            let samples = 10_000usize;
            let mut violations = 0usize;
            let mut worst = f64::NEG_INFINITY;
            for _ in 0..samples {
                let a = random_alpha(&mut rng);
                let w = random_omega(&mut rng);
                let z = random_disk_point(&mut rng, 1e-3, 0.95);
                let s = schwarzian_via_omega(&a, &w, z).unwrap().norm();
                let excess = s - bound(&a, z.norm());
                worst = worst.max(excess);
                if excess > 1e-9 {
                    violations += 1;
                }
            }
            (
                violations == 0,
                Section::new()
                    .with("samples", samples)
                    .with("violations", violations)
                    .with("max_excess", worst)
                    .with("tolerance", 1e-9),
            )
        },
    )
}

fn branch_continuity(ctx: &mut Ctx) -> Outcome {
    let bound = ctx.hooks.pointwise_bound;
    run(
        "branch_continuity",
        "bounds are continuous across r = delta and alpha = pi/6",
        None,
        || {
            let mut worst = 0.0f64;
            for x in [FRAC_PI_4, FRAC_PI_3] {
                let a = alpha(x);
                let d = delta(&a).unwrap();
                worst = worst.max((bound(&a, d - 1e-9) - bound(&a, d + 1e-9)).abs());
            }
            let norm_jump = (schwarzian_norm_bound(&alpha(FRAC_PI_6 - 1e-9))
                - schwarzian_norm_bound(&alpha(FRAC_PI_6 + 1e-9)))
            .abs();
            (
                worst <= 1e-6 && norm_jump <= 1e-6,
                Section::new()
                    .with("pointwise_jump", worst)
                    .with("norm_bound_jump", norm_jump)
                    .with("tolerance", 1e-6),
            )
        },
    )
}

fn critical_point(ctx: &mut Ctx) -> Outcome {
    let mut rng = ctx.rng(7);
    run(
        "critical_point",
        "scan of g(s) on [0, r] peaks at s0 (h > 0) or at r (h <= 0)",
        None,
        || {
            let (mut worst, mut interior, mut endpoint) = (0.0f64, 0usize, 0usize);
            for _ in 0..100 {
                let a = random_alpha(&mut rng);
                let r: f64 = rng.gen_range(0.01..0.99);
                let n = (r / 1e-4).floor() as usize;
                let mut best = (f64::NEG_INFINITY, 0.0);
                for s in (0..=n).map(|k| k as f64 * 1e-4).chain(std::iter::once(r)) {
                    let g = g_profile(&a, r, s);
                    if g > best.0 {
                        best = (g, s);
                    }
                }
                let target = if h_poly(&a, r) > 0.0 {
                    interior += 1;
                    s0(&a, r)
                } else {
                    endpoint += 1;
                    r
                };
                worst = worst.max((best.1 - target).abs());
            }
            (
                worst <= 2e-4,
                Section::new()
                    .with("pairs", 100usize)
                    .with("interior_maxima", interior)
                    .with("endpoint_maxima", endpoint)
                    .with("max_location_error", worst)
                    .with("tolerance", 2e-4),
            )
        },
    )
}

fn dieudonne(ctx: &mut Ctx) -> Outcome {
    let mut rng = ctx.rng(8);
    run(
        "dieudonne",
        "equality for degree-2 products, strict inequality for degree 3",
        None,
        || {
            let mut max_slack2 = 0.0f64;
            let mut min_slack3 = f64::INFINITY;
            for _ in 0..50 {
                let p = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let w = SchwarzFunction64::blaschke2(p, rng.gen_range(-0.95..0.95)).unwrap();
                let z0 = random_disk_point(&mut rng, 0.05, 0.95);
                max_slack2 = max_slack2.max(dieudonne_report(&w, z0).unwrap().slack.abs());
            }
            for _ in 0..50 {
                let zeros = vec![
                    random_disk_point(&mut rng, 0.0, 0.9),
                    random_disk_point(&mut rng, 0.0, 0.9),
                ];
                let w = SchwarzFunction64::blaschke_fix0(rng.gen_range(0.0..TAU), zeros).unwrap();
                let z0 = random_disk_point(&mut rng, 0.05, 0.95);
                min_slack3 = min_slack3.min(dieudonne_report(&w, z0).unwrap().slack);
            }
            (
                max_slack2 <= 1e-10 && min_slack3 > 0.0,
                Section::new()
                    .with("degree2_max_abs_slack", max_slack2)
                    .with("degree3_min_slack", min_slack3)
                    .with("tolerance", 1e-10),
            )
        },
    )
}

fn series_consistency(ctx: &mut Ctx) -> Outcome {
    let mut rng = ctx.rng(9);
    let mut built = Vec::new();
    let out = run(
        "series_consistency",
        "series-path Schwarzian matches closed form for |z| <= 0.7",
        Some(10.0),
        || {
            let mut worst = 0.0f64;
            for case in 0..20 {
                let a = random_alpha(&mut rng);
                let w = random_omega(&mut rng);
                let f = robertson_from_omega(a, w.clone(), DEFAULT_ORDER).unwrap();
                for _ in 0..100 {
                    let z = random_disk_point(&mut rng, 0.0, 0.7);
                    let series = schwarzian(f.series(), z).unwrap();
                    let closed = schwarzian_via_omega(&a, &w, z).unwrap();
                    worst = worst.max((series - closed).norm());
                }
                built.push((format!("random #{case}"), f));
            }
            (
                worst <= 1e-8,
                Section::new()
                    .with("functions", 20usize)
                    .with("points_per_function", 100usize)
                    .with("order", DEFAULT_ORDER)
                    .with("max_abs_error", worst)
                    .with("tolerance", 1e-8),
            )
        },
    );
    for (label, f) in built {
        ctx.keep(label, &f);
    }
    out
}

fn membership(ctx: &mut Ctx) -> Outcome {
    let grid = GridConfig64::default();
    let built = &ctx.built;
    run(
        "membership",
        "every function built above is in its Robertson class",
        None,
        || {
            let mut worst = f64::INFINITY;
            let mut failures = Vec::new();
            for (label, f) in built {
                let m = membership_min(f.alpha(), f, &grid).unwrap();
                worst = worst.min(m);
                if !(m > -1e-9) {
                    failures.push(label.clone());
                }
            }
            (
                failures.is_empty(),
                Section::new()
                    .with("functions", built.len())
                    .with("min_real_part", worst)
                    .with("failures", failures)
                    .with("tolerance", -1e-9),
            )
        },
    )
}

/// Runs every criterion in a fixed order.
pub fn run_all(seed: u64, hooks: Hooks) -> Vec<Outcome> {
    let mut ctx = Ctx {
        seed,
        hooks,
        grid: GridConfig64::default(),
        built: Vec::new(),
    };
    let mut out = vec![
        convex_sharpness(&mut ctx),
        large_alpha_norm(&mut ctx),
        small_alpha_norm(&mut ctx),
        pre_schwarzian_norm(&mut ctx),
        pointwise_domination(&mut ctx),
        branch_continuity(&mut ctx),
        critical_point(&mut ctx),
        dieudonne(&mut ctx),
        series_consistency(&mut ctx),
    ];
    out.push(membership(&mut ctx));
    out
}

pub fn all_passed(outcomes: &[Outcome]) -> bool {
    outcomes.iter().all(Outcome::passed)
}

/// JSON report of a run; runtimes enter only as budget pass/fail flags.
pub fn verify_report(outcomes: &[Outcome], seed: u64, out: Option<&str>) -> Report {
    let mut r = Report::new("verify");
    r.args.set("out", out);
    r.params.set("seed", seed);
    r.params.set("grid", grid_section(&GridConfig64::default()));
    r.params.set("order", DEFAULT_ORDER);
    let mut criteria = Section::new();
    for o in outcomes {
        criteria.set(
            o.id,
            Section::new()
                .with("title", o.title)
                .with("passed", o.passed())
                .with("checks_passed", o.checks_passed)
                .with("budget_s", o.budget.map(|b| b.as_secs_f64()))
                .with("within_budget", o.within_budget())
                .with("details", o.details.clone()),
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    r.results.set("criteria", criteria);
    r.results.set("passed", passed);
    r.results.set("total", outcomes.len());
    r.results.set("all_passed", passed == outcomes.len());
    r.notes.set(
        "seed",
        "SCHWARZIAN_LAB_SEED; drives every randomized sample",
    );
    r.notes.set(
        "within_budget",
        "wall-clock runtime of the criterion stayed within budget_s",
    );
    r
}
