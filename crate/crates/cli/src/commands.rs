//! The subcommands, as functions returning a [`Report`].

use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use schwarzian_core::robertson::{
    delta, extremal_b, extremal_f0, extremal_fz0p, extremal_p, extremal_value, phase_aligned_omega,
    pointwise_bound, pre_schwarzian_norm_bound, s0, schwarzian_norm_bound, schwarzian_via_omega,
};
use schwarzian_core::{
    norm_pre_schwarzian, norm_schwarzian, DiskFunction, GridConfig64, NormResult64, SchwarzFamily,
    SpiralAlpha64, DEFAULT_ORDER,
};
use thiserror::Error;

use crate::report::{fmt_float, Report, Section};
use crate::spec::{parse_spec, AngleLiteral, SpecError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] schwarzian_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type CliResult<T> = Result<T, CliError>;

const NOTE_S_NORM: &str =
    "class bound for sup (1-|z|^2)^2 |S_f|: 2cos(a)/(1-sin|a|) if |a| <= pi/6, else 8cos(a)sin|a|";
const NOTE_P_NORM: &str = "class bound for sup (1-|z|^2) |f''/f'|: 4cos(a)";
const NOTE_DELTA: &str =
    "branch radius (1-sin|a|)/sin|a| of the pointwise bound, defined for |a| > pi/6";
const NOTE_POINTWISE: &str = "class bound for |S_f(z)| at |z| = r: \
    2cos(a)(1-(1-r^2)sin|a|)/((1-r^2)^2(1-sin|a|)), or 2cos(a)sin|a|/(1-r)^2 when |a| > pi/6 and r >= delta";

fn alpha_params(section: &mut Section, lit: &AngleLiteral, alpha: &SpiralAlpha64) {
    section.set("alpha", alpha.value());
    section.set("alpha_literal", lit.to_string());
    section.set("regime", alpha.regime().as_str());
}

/// `bound --alpha A [--z R]`
pub fn cmd_bound(alpha_text: &str, z: Option<f64>) -> CliResult<Report> {
    let lit: AngleLiteral = alpha_text.parse()?;
    let alpha = lit.to_alpha()?;
    let mut r = Report::new("bound");
    r.args.set("alpha", alpha_text);
    r.args.set("z", z);
    alpha_params(&mut r.params, &lit, &alpha);

    r.results.set("S_norm_bound", schwarzian_norm_bound(&alpha));
    r.results
        .set("P_norm_bound", pre_schwarzian_norm_bound(&alpha));
    r.results.set("delta", delta(&alpha));
    r.results.set("regime", alpha.regime().as_str());
    r.notes.set("S_norm_bound", NOTE_S_NORM);
    r.notes.set("P_norm_bound", NOTE_P_NORM);
    r.notes.set("delta", NOTE_DELTA);
    if let Some(z) = z {
        let radius = z.abs();
        if !(radius < 1.0) {
            return Err(SpecError::Domain(format!("z = {z} violates |z| < 1")).into());
        }
        let outer = delta(&alpha).is_some_and(|d| radius >= d);
        r.params.set("r", radius);
        r.results
            .set("pointwise_bound", pointwise_bound(&alpha, radius));
        r.results
            .set("pointwise_branch", if outer { "outer" } else { "inner" });
        r.notes.set("pointwise_bound", NOTE_POINTWISE);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NormKind {
    Pre,
    Schwarzian,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Pre => "pre",
            NormKind::Schwarzian => "schwarzian",
        }
    }
}

/// Grid overrides accepted by `norm`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridFlags {
    pub radii: Option<usize>,
    pub angles: Option<usize>,
    pub rmax: Option<f64>,
}

impl GridFlags {
    pub fn config(&self) -> CliResult<GridConfig64> {
        let mut cfg = GridConfig64::default();
        cfg.n_radii = self.radii.unwrap_or(cfg.n_radii);
        cfg.n_angles = self.angles.unwrap_or(cfg.n_angles);
        cfg.r_max = self.rmax.unwrap_or(cfg.r_max);
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

pub fn grid_section(cfg: &GridConfig64) -> Section {
    Section::new()
        .with("n_angles", cfg.n_angles)
        .with("n_radii", cfg.n_radii)
        .with("r_max", cfg.r_max)
        .with("refine_iters", cfg.refine_iters)
        .with("refine_tol", cfg.refine_tol)
}

fn norm_section(res: &NormResult64) -> Section {
    Section::new()
        .with("argmax", res.argmax)
        .with("boundary_attained", res.boundary_attained)
        .with("evaluations", res.evaluations)
        .with("r_max_scanned", res.r_max)
        .with("truncation_limited", res.truncation_limited)
        .with("value", res.value)
}

/// `norm --spec S --kind pre|schwarzian [--radii N --angles M --rmax X]`
pub fn cmd_norm(spec_text: &str, kind: NormKind, flags: GridFlags) -> CliResult<Report> {
    let spec = parse_spec(spec_text)?;
    let cfg = flags.config()?;
    let f = spec.build(DEFAULT_ORDER)?;
    let res = match kind {
        NormKind::Pre => norm_pre_schwarzian(&f, &cfg)?,
        NormKind::Schwarzian => norm_schwarzian(&f, &cfg)?,
    };
    let mut r = Report::new("norm");
    r.args.set("spec", spec_text);
    r.args.set("kind", kind.name());
    r.args.set("radii", flags.radii);
    r.args.set("angles", flags.angles);
    r.args.set("rmax", flags.rmax);
    r.params.set("spec", spec.to_string());
    r.params.set("family", spec.family.name());
    r.params.set("evaluator", f.evaluator());
    r.params.set("order", DEFAULT_ORDER);
    r.params.set("grid", grid_section(&cfg));
    r.params
        .set("alpha", spec.spiral_alpha().map(|a| a.value()));

    let bound = spec.spiral_alpha().map(|a| match kind {
        NormKind::Pre => pre_schwarzian_norm_bound(&a),
        NormKind::Schwarzian => schwarzian_norm_bound(&a),
    });
    r.results = norm_section(&res);
    r.results.set("bound", bound);
    r.results.set("ratio", bound.map(|b| res.value / b));
    r.notes.set(
        "value",
        match kind {
            NormKind::Pre => {
                "grid-and-refine lower estimate of sup (1-|z|^2) |f''/f'| over |z| <= r_max_scanned"
            }
            NormKind::Schwarzian => {
                "grid-and-refine lower estimate of sup (1-|z|^2)^2 |S_f| over |z| <= r_max_scanned"
            }
        },
    );
    r.notes.set(
        "bound",
        match kind {
            NormKind::Pre => NOTE_P_NORM,
            NormKind::Schwarzian => NOTE_S_NORM,
        },
    );
    r.notes.set(
        "boundary_attained",
        "argmax lies in the outermost radial cell; the supremum may only be approached as |z| -> 1",
    );
    Ok(r)
}

/// `extremal --alpha A --z0 X`
pub fn cmd_extremal(alpha_text: &str, z0: f64) -> CliResult<Report> {
    let lit: AngleLiteral = alpha_text.parse()?;
    let alpha = lit.to_alpha()?;
    let b = extremal_b(&alpha, z0)?;
    let p = extremal_p(&alpha);
    let value = extremal_value(&alpha, z0)?;
    let z = Complex::new(z0, 0.0);
    let f = extremal_fz0p(alpha, z0, DEFAULT_ORDER)?;
    let s_fz0p = schwarzian_via_omega(&alpha, f.omega(), z)?.norm();
    let aligned = phase_aligned_omega(&alpha, z0)?;
    let s_aligned = schwarzian_via_omega(&alpha, &aligned, z)?.norm();
    let w = 1.0 - z0 * z0;

    let mut r = Report::new("extremal");
    r.args.set("alpha", alpha_text);
    r.args.set("z0", z0);
    alpha_params(&mut r.params, &lit, &alpha);
    r.params.set("z0", z0);
    r.params.set("delta", delta(&alpha));
    r.params.set("p", p);
    r.params.set("b", b);
    if let SchwarzFamily::BlaschkeFix0 { theta, zeros } = aligned.family() {
        r.params.set(
            "aligned_omega",
            Section::new().with("theta", *theta).with("zero", zeros[0]),
        );
    }

    r.results.set("s0", s0(&alpha, z0.abs()));
    r.results.set("omega_at_z0", f.omega().eval(z));
    r.results.set("aligned_omega_at_z0", aligned.eval(z));
    r.results.set("extremal_value", value);
    r.results
        .set("pointwise_bound", pointwise_bound(&alpha, z0.abs()));
    r.results.set("weighted_extremal_value", w * w * value);
    r.results.set("fz0p_abs_S_at_z0", s_fz0p);
    r.results.set("fz0p_ratio", s_fz0p / value);
    r.results.set("aligned_abs_S_at_z0", s_aligned);
    r.results.set("aligned_ratio", s_aligned / value);

    r.notes.set("p", "-1 for alpha >= 0, +1 for alpha < 0");
    r.notes.set(
        "b",
        "real zero of phi(z) = p z (z-b)/(1-bz) with |phi(z0)| = s0",
    );
    r.notes.set(
        "s0",
        "r^2/(1-(1-r^2)sin|a|) at r = |z0|, the maximizing value of |omega(z0)|",
    );
    r.notes.set(
        "extremal_value",
        "2cos(a)(1-(1-z0^2)sin|a|)/((1-z0^2)^2(1-sin|a|))",
    );
    r.notes
        .set("weighted_extremal_value", "(1-z0^2)^2 * extremal_value");
    r.notes.set(
        "fz0p_abs_S_at_z0",
        "|S_f(z0)| for f generated by phi; equals extremal_value only when alpha = 0",
    );
    r.notes.set(
        "aligned_abs_S_at_z0",
        "|S_f(z0)| for f generated by z*q, q the disk automorphism with q(z0) = s0/z0 and \
         arg q'(z0) = arg(i sign(a) e^{-ia}); attains extremal_value",
    );
    Ok(r)
}

/// One row of the `sweep` table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub regime: &'static str,
    pub delta: Option<f64>,
    pub s_norm_bound: f64,
    pub p_norm_bound: f64,
    pub numeric_s_norm_f0: f64,
    pub sharpness_ratio: f64,
}

pub const SWEEP_HEADER: [&str; 7] = [
    "alpha",
    "regime",
    "delta_or_blank",
    "S_norm_bound",
    "P_norm_bound",
    "numeric_S_norm_of_f0",
    "numeric_sharpness_ratio",
];

/// `α_i = (α_min (K-1-i) + α_max i) / (K-1)`, `i = 0..K`.
pub fn sweep_alphas(alpha_min: f64, alpha_max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![alpha_min];
    }
    let k = (steps - 1) as f64;
    (0..steps)
        .map(|i| (alpha_min * (k - i as f64) + alpha_max * i as f64) / k)
        .collect()
}

pub fn sweep_rows(
    alpha_min: f64,
    alpha_max: f64,
    steps: usize,
    cfg: &GridConfig64,
) -> CliResult<Vec<SweepRow>> {
    sweep_alphas(alpha_min, alpha_max, steps)
        .into_iter()
        .map(|x| {
            let alpha = SpiralAlpha64::new(x)?;
            let f0 = extremal_f0(alpha, DEFAULT_ORDER)?;
            let numeric = norm_schwarzian(&f0, cfg)?.value;
            let bound = schwarzian_norm_bound(&alpha);
            Ok(SweepRow {
                alpha: x,
                regime: alpha.regime().as_str(),
                delta: delta(&alpha),
                s_norm_bound: bound,
                p_norm_bound: pre_schwarzian_norm_bound(&alpha),
                numeric_s_norm_f0: numeric,
                sharpness_ratio: numeric / bound,
            })
        })
        .collect()
}

/// CSV with `,` separators, `\n` line endings and 17-digit floats.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record([
            fmt_float(row.alpha),
            row.regime.to_string(),
            row.delta.map(fmt_float).unwrap_or_default(),
            fmt_float(row.s_norm_bound),
            fmt_float(row.p_norm_bound),
            fmt_float(row.numeric_s_norm_f0),
            fmt_float(row.sharpness_ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `sweep --alpha-min A --alpha-max B --steps K --out F.csv`
pub fn cmd_sweep(alpha_min: &str, alpha_max: &str, steps: usize, out: &Path) -> CliResult<Report> {
    let lo: AngleLiteral = alpha_min.parse()?;
    let hi: AngleLiteral = alpha_max.parse()?;
    lo.to_alpha()?;
    hi.to_alpha()?;
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let cfg = GridConfig64::default();
    let rows = sweep_rows(lo.radians(), hi.radians(), steps, &cfg)?;
    let file = std::fs::File::create(out)?;
    write_sweep_csv(&rows, std::io::BufWriter::new(file))?;

    let mut r = Report::new("sweep");
    r.args.set("alpha_max", alpha_max);
    r.args.set("alpha_min", alpha_min);
    r.args.set("out", out.display().to_string());
    r.args.set("steps", steps);
    r.params.set("alpha_max", hi.radians());
    r.params.set("alpha_min", lo.radians());
    r.params.set("grid", grid_section(&cfg));
    r.results.set("rows", rows.len());
    r.results.set(
        "min_sharpness_ratio_large_regime",
        rows.iter()
            .filter(|row| row.regime == "Large")
            .map(|row| row.sharpness_ratio)
            .reduce(f64::min),
    );
    r.notes.set(
        "numeric_S_norm_of_f0",
        "norm estimate for the function generated by omega(z) = z",
    );
    r.notes.set(
        "numeric_sharpness_ratio",
        "numeric_S_norm_of_f0 / S_norm_bound; near 1 where f0 is extremal (|a| > pi/6)",
    );
    Ok(r)
}
