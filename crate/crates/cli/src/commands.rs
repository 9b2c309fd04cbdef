//! The `lattice`, `coeffs`, `reconstruct`, `plancherel` and `convolve`
//! subcommands. Each writes its artifacts under the output directory and
//! returns their paths.

use std::f64::consts::{SQRT_2, TAU};
use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use se2_coset::action::ConvolutionSeries;
use se2_coset::series::{coeff_direct_table, format_real, NormalizationAudit};
use se2_coset::{
    enumerate_shells, oslash, plancherel_direct, BasisIndexBox, Convention, CosetFunction, CosetPoint,
    GroupFunction, Periodized, SpectralTable,
};

use crate::builtins::TestFunction;
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{self, num, object, string};

/// `λ` measured on the index box `|kᵢ| ≤ k`, spectral over direct.
pub fn calibrate(f: &TestFunction, k: usize, cfg: &RunConfig) -> Result<NormalizationAudit> {
    let q = cfg.quadrature();
    let table = SpectralTable::compute(f, k, k as f64 * SQRT_2, cfg.series_band(), &q)?;
    let vectors = BasisIndexBox::cube(k).vectors(None);
    let spectral = table.coefficients(&vectors)?;
    let direct = coeff_direct_table(&Periodized::new(*f)?, &vectors, &q)?;
    Ok(NormalizationAudit::run(&spectral, &direct)?)
}

fn audit_json(name: &str, a: &NormalizationAudit) -> String {
    object(&[
        ("function", string(name)),
        ("lambda", num(a.lambda)),
        ("lambda_rec", num(a.lambda_rec())),
        ("max_relative_deviation", num(a.max_relative_deviation)),
        ("relative_std", num(a.relative_std)),
        ("count", a.count.to_string()),
    ])
}

/// Uniform points in a box `[x0,x1]×[y0,y1]×[t0,t1]`, from a fixed seed.
pub fn sample_points(seed: u64, n: usize, x: (f64, f64), y: (f64, f64), t: (f64, f64)) -> Vec<CosetPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let g = se2_coset::GroupElement::new(
                rng.gen_range(x.0..=x.1),
                rng.gen_range(y.0..=y.1),
                rng.gen_range(t.0..=t.1),
            );
            se2_coset::coset_project(&g)
        })
        .collect()
}

pub fn lattice(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let shells = enumerate_shells(cfg.series.rho_max);
    Ok(vec![output::write(&cfg.output.dir, "lattice.json", &output::shells_json(&shells))?])
}

/// Spectral coefficients over `|kᵢ| ≤ k_max`, `ρ ≤ rho_max`: the raw (Weil)
/// table as JSON, and as CSV rescaled by the measured `λ_rec` against the
/// direct quadrature.
pub fn coeffs(f: &TestFunction, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let q = cfg.quadrature();
    let k = cfg.series.k_max;
    let vectors = BasisIndexBox::cube(k).vectors(Some(cfg.series.rho_max));
    let rho = cfg.series.rho_max.min(k as f64 * SQRT_2);
    let table = SpectralTable::compute(f, k, rho, cfg.series_band(), &q)?;
    let spectral = table.coefficients(&vectors)?;
    let direct = coeff_direct_table(&Periodized::new(*f)?, &vectors, &q)?;
    let audit = NormalizationAudit::run(&spectral, &direct)?;
    let scaled = spectral.rescaled(audit.lambda_rec(), Convention::Orthonormal);
    let dir = &cfg.output.dir;
    Ok(vec![
        output::write(dir, &format!("coeffs_{}.json", f.name), &spectral.to_json())?,
        output::write(dir, &format!("coeffs_{}.csv", f.name), &scaled.to_csv(Some(&direct)))?,
        output::write(dir, &format!("audit_{}.json", f.name), &audit_json(f.name, &audit))?,
    ])
}

/// Truncated series against `f̃` at seeded points of Ω.
pub fn reconstruct(f: &TestFunction, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let q = cfg.quadrature();
    let lambda_rec = calibrate(f, 2, cfg)?.lambda_rec();
    let table = SpectralTable::compute(f, cfg.series.k_max, cfg.series.rho_max, cfg.series_band(), &q)?;
    let psi = Periodized::new(*f)?;
    let points = sample_points(cfg.sampling.seed, cfg.sampling.reconstruction_points, (0.0, 1.0), (0.0, 1.0), (0.0, TAU));
    let mut csv = String::from("x,y,theta,re,im,exact_re,exact_im,abs_err\n");
    for p in &points {
        let v = table.reconstruct_shells(p, lambda_rec);
        let e = psi.eval(p);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            format_real(p.x),
            format_real(p.y),
            format_real(p.theta),
            format_real(v.re),
            format_real(v.im),
            format_real(e.re),
            format_real(e.im),
            format_real((v - e).norm())
        );
    }
    Ok(vec![output::write(&cfg.output.dir, &format!("reconstruct_{}.csv", f.name), &csv)?])
}

pub fn plancherel(f: &TestFunction, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let q = cfg.quadrature();
    let lambda_rec = calibrate(f, 2, cfg)?.lambda_rec();
    let table = SpectralTable::compute(f, cfg.series.k_max, cfg.series.rho_max, cfg.series_band(), &q)?;
    let (character, shells) = table.plancherel_parts();
    let direct = plancherel_direct(&Periodized::new(*f)?, &q)?;
    let scaled = (character + shells) * lambda_rec * lambda_rec;
    let text = object(&[
        ("function", string(f.name)),
        ("k_max", cfg.series.k_max.to_string()),
        ("rho_max", num(cfg.series.rho_max)),
        ("direct", num(direct)),
        ("spectral_character", num(character)),
        ("spectral_shells", num(shells)),
        ("lambda_rec", num(lambda_rec)),
        ("spectral_scaled", num(scaled)),
        ("relative_error", num((scaled - direct).abs() / direct)),
        ("shell_fraction", num(shells / (character + shells))),
    ]);
    Ok(vec![output::write(&cfg.output.dir, &format!("plancherel_{}.json", f.name), &text)?])
}

/// Seeded points where `f̃₁ ⊘ f₂` is sizeable: the central half of the
/// translation box of `f₁`, with rotations around the sum of the two
/// rotation windows.
pub fn convolution_points(f1: &TestFunction, f2: &TestFunction, seed: u64, n: usize) -> Vec<CosetPoint> {
    let (b1, b2) = (f1.support(), f2.support());
    let quarter = |lo: f64, hi: f64| (lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo));
    let theta = b1.theta.sum(&b2.theta);
    let t = match theta {
        se2_coset::ThetaRange::Full => (0.0, TAU),
        se2_coset::ThetaRange::Window { start, width } => (start + 0.25 * width, start + 0.75 * width),
    };
    sample_points(seed, n, quarter(b1.x.lo, b1.x.hi), quarter(b1.y.lo, b1.y.hi), t)
}

pub struct ConvolutionRow {
    pub point: CosetPoint,
    pub direct: Complex64,
    pub series: Complex64,
}

pub fn convolution_rows(
    f1: &TestFunction,
    f2: &TestFunction,
    points: &[CosetPoint],
    k3_max: usize,
    rho_max: f64,
    lambda_rec: f64,
    cfg: &RunConfig,
) -> Result<Vec<ConvolutionRow>> {
    let q = cfg.quadrature();
    let series = ConvolutionSeries::compute(f1, f2, k3_max, rho_max, &q)?;
    let psi = Periodized::new(*f1)?;
    points
        .iter()
        .map(|p| {
            Ok(ConvolutionRow {
                point: *p,
                direct: oslash(&psi, f2, p, &q)?,
                series: series.eval(p, lambda_rec),
            })
        })
        .collect()
}

pub fn convolve(f1: &TestFunction, f2: &TestFunction, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let lambda_rec = calibrate(f1, 2, cfg)?.lambda_rec();
    let points = convolution_points(f1, f2, cfg.sampling.seed, cfg.sampling.convolution_points);
    let rows = convolution_rows(f1, f2, &points, cfg.series.k_max, cfg.series.rho_max, lambda_rec, cfg)?;
    let mut csv = String::from("x,y,theta,direct_re,direct_im,series_re,series_im,abs_err\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            format_real(r.point.x),
            format_real(r.point.y),
            format_real(r.point.theta),
            format_real(r.direct.re),
            format_real(r.direct.im),
            format_real(r.series.re),
            format_real(r.series.im),
            format_real((r.direct - r.series).norm())
        );
    }
    let name = format!("convolve_{}_{}.csv", f1.name, f2.name);
    Ok(vec![output::write(&cfg.output.dir, &name, &csv)?])
}
