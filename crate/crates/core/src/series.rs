//! Fourier series on `Z²\SE(2)` in the basis
//! `ψ_k(x, y, θ) = e^{2πi(k₁x + k₂y)} e^{ik₃θ}`.
//!
//! Coefficients come from two independent paths: quadrature on the
//! fundamental domain Ω ([`coeff_direct`]), and the closed form in terms of
//! `f̂(2πρ)` at lattice radii ([`coeff_spectral`], [`SpectralTable`]).
//!
//! Two measures on Ω are in play. [`Convention::Weil`] weights Ω by
//! `(4π²)⁻¹`, the weight that makes `∫_{SE(2)} f dg = ∫_Ω f̃`. The spectral
//! formulas produce Weil inner products. [`Convention::Orthonormal`] weights
//! Ω by `(2π)⁻¹`, for which `{ψ_k}` is orthonormal; the direct path and all
//! norms use it. The ratio is [`EXPECTED_LAMBDA`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{self, FourierMatrix, SpectralSampler};
use crate::function::{CosetFunction, GroupFunction};
use crate::group::CosetPoint;
use crate::irreps::margin_band;
use crate::lattice::{enumerate_shells, rho_phi, shell_kernel, LatticeShell, LatticeVector};
use crate::par;
use crate::quadrature::{OmegaGrid, QuadratureSpec};

/// `coeff_spectral / coeff_direct`, the Weil weight over the orthonormal one.
pub const EXPECTED_LAMBDA: f64 = 1.0 / TAU;

/// Relative size of the outermost `n`-terms above which the `n`-sum in the
/// spectral coefficient is reported as unconverged.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Normalisation of the measure on Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Convention {
    /// `(4π²)⁻¹ dx dy dθ`.
    Weil,
    /// `(2π)⁻¹ dx dy dθ`.
    Orthonormal,
}

impl Convention {
    pub fn weight(self) -> f64 {
        match self {
            Convention::Weil => 1.0 / (TAU * TAU),
            Convention::Orthonormal => 1.0 / TAU,
        }
    }
}

/// `ψ_k` at a point of Ω.
pub fn basis_eval(k: &LatticeVector, p: &CosetPoint) -> Complex64 {
    let arg = TAU * (k.k1 as f64 * p.x + k.k2 as f64 * p.y) + k.k3 as f64 * p.theta;
    Complex64::cis(arg)
}

/// Truncation `|k₁| ≤ k1_max`, `|k₂| ≤ k2_max`, `|k₃| ≤ k3_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisIndexBox {
    pub k1_max: usize,
    pub k2_max: usize,
    pub k3_max: usize,
}

impl BasisIndexBox {
    pub const fn cube(k: usize) -> Self {
        BasisIndexBox {
            k1_max: k,
            k2_max: k,
            k3_max: k,
        }
    }

    pub fn len(&self) -> usize {
        (2 * self.k1_max + 1) * (2 * self.k2_max + 1) * (2 * self.k3_max + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: &LatticeVector) -> bool {
        k.k1.unsigned_abs() as usize <= self.k1_max
            && k.k2.unsigned_abs() as usize <= self.k2_max
            && k.k3.unsigned_abs() as usize <= self.k3_max
    }

    /// Indices in the box, lexicographic, optionally restricted to
    /// `ρ(k₁,k₂) ≤ rho_max`.
    pub fn vectors(&self, rho_max: Option<f64>) -> Vec<LatticeVector> {
        let (a, b, c) = (self.k1_max as i64, self.k2_max as i64, self.k3_max as i64);
        let mut out = Vec::with_capacity(self.len());
        for k1 in -a..=a {
            for k2 in -b..=b {
                if let Some(r) = rho_max {
                    if ((k1 * k1 + k2 * k2) as f64) > r * r + 1e-9 {
                        continue;
                    }
                }
                for k3 in -c..=c {
                    out.push(LatticeVector::new(k1, k2, k3));
                }
            }
        }
        out
    }
}

/// The Dirac line through which the shell of `k` enters
/// `Q^k(p)_{mn}`: located at `p₀ = 2πρ`, supported on `k₃ = −m`, with
/// amplitude `e^{i(m−n)Φ}/(2πρ)`. Only metadata; nothing integrates
/// against it numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub k: LatticeVector,
    pub rho: f64,
    pub phi: f64,
}

impl SpectralLine {
    pub fn new(k: LatticeVector) -> Result<Self> {
        let (rho, phi) = rho_phi(k.k1, k.k2)?;
        Ok(SpectralLine { k, rho, phi })
    }

    pub fn location(&self) -> f64 {
        TAU * self.rho
    }

    pub fn kronecker(&self, m: i64) -> bool {
        self.k.k3 == -m
    }

    /// Amplitude of the line at entry `(m, n)`; zero off the Kronecker
    /// condition.
    pub fn amplitude(&self, m: i64, n: i64) -> Complex64 {
        if !self.kronecker(m) {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(1.0 / self.location(), (m - n) as f64 * self.phi)
    }

    /// Pairs the line with `f̂(p₀)`: `Σ_n e^{−i(n+k₃)Φ} f̂(p₀)_{n,−k₃}`.
    pub fn pair(&self, fhat: &FourierMatrix) -> Complex64 {
        let k3 = self.k.k3;
        let n_max = fhat.rows() as i64;
        (-n_max..=n_max)
            .map(|n| Complex64::cis(-((n + k3) as f64) * self.phi) * fhat.get(n, -k3))
            .sum()
    }
}

/// Coefficients `⟨ψ, ψ_k⟩` over an index set, in a stated convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetCoefficients {
    pub convention: Convention,
    values: BTreeMap<LatticeVector, Complex64>,
}

impl CosetCoefficients {
    pub fn new(convention: Convention) -> Self {
        CosetCoefficients {
            convention,
            values: BTreeMap::new(),
        }
    }

    pub fn from_pairs(convention: Convention, pairs: impl IntoIterator<Item = (LatticeVector, Complex64)>) -> Self {
        CosetCoefficients {
            convention,
            values: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, k: LatticeVector, v: Complex64) {
        self.values.insert(k, v);
    }

    pub fn get(&self, k: &LatticeVector) -> Option<Complex64> {
        self.values.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &Complex64)> {
        self.values.iter()
    }

    /// Same coefficients scaled by `c`, relabelled with `convention`.
    pub fn rescaled(&self, c: f64, convention: Convention) -> Self {
        CosetCoefficients {
            convention,
            values: self.values.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.values().map(|v| v.norm_sqr()).sum()
    }

    /// Rows `k1,k2,k3,re,im,abs_err`; `abs_err` is against `reference`
    /// when given, empty otherwise.
    pub fn to_csv(&self, reference: Option<&CosetCoefficients>) -> String {
        let mut out = String::from("k1,k2,k3,re,im,abs_err\n");
        for (k, v) in &self.values {
            let err = reference
                .and_then(|r| r.get(k))
                .map(|r| format_real((v - r).norm()))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                k.k1,
                k.k2,
                k.k3,
                format_real(v.re),
                format_real(v.im),
                err
            );
        }
        out
    }

    /// JSON with one `{k1,k2,k3,re,im}` object per index.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let conv = match self.convention {
            Convention::Weil => "weil",
            Convention::Orthonormal => "orthonormal",
        };
        let _ = write!(out, "{{\n  \"convention\": \"{conv}\",\n  \"coefficients\": [");
        for (i, (k, v)) in self.values.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(
                out,
                "{sep}\n    {{\"k1\": {}, \"k2\": {}, \"k3\": {}, \"re\": {}, \"im\": {}}}",
                k.k1,
                k.k2,
                k.k3,
                format_real(v.re),
                format_real(v.im)
            );
        }
        out.push_str("\n  ]\n}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            k1: i64,
            k2: i64,
            k3: i64,
            re: f64,
            im: f64,
        }
        #[derive(Deserialize)]
        struct Doc {
            convention: String,
            coefficients: Vec<Row>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let convention = match doc.convention.as_str() {
            "weil" => Convention::Weil,
            "orthonormal" => Convention::Orthonormal,
            other => return Err(Error::InvalidArgument(format!("unknown convention {other}"))),
        };
        Ok(CosetCoefficients::from_pairs(
            convention,
            doc.coefficients
                .into_iter()
                .map(|r| (LatticeVector::new(r.k1, r.k2, r.k3), Complex64::new(r.re, r.im))),
        ))
    }
}

/// Decimal with 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// `(2π)⁻¹ ∭_Ω ψ conj(ψ_k)` by quadrature, split at the function's
/// breakpoints.
pub fn coeff_direct<C>(psi: &C, k: &LatticeVector, q: &QuadratureSpec) -> Result<Complex64>
where
    C: CosetFunction + ?Sized,
{
    let grid = OmegaGrid::new(&psi.breakpoints(), q)?;
    let s = grid.integrate(|p| psi.eval(p) * basis_eval(k, p).conj());
    Ok(s * Convention::Orthonormal.weight())
}

/// [`coeff_direct`] for every index in `vectors`, sharing one sampling of
/// `ψ` and taking the three axis sums separately.
pub fn coeff_direct_table<C>(psi: &C, vectors: &[LatticeVector], q: &QuadratureSpec) -> Result<CosetCoefficients>
where
    C: CosetFunction + ?Sized,
{
    let grid = OmegaGrid::new(&psi.breakpoints(), q)?;
    let samples = grid.sample(|p| psi.eval(p));
    let k2s: Vec<i64> = distinct(vectors.iter().map(|k| k.k2));
    let k3s: Vec<i64> = distinct(vectors.iter().map(|k| k.k3));
    let (ny, nt) = (grid.y.len(), grid.theta.len());
    let rot: Vec<Vec<Complex64>> = k3s
        .iter()
        .map(|&k| grid.theta.iter().map(|&(t, w)| Complex64::cis(-(k as f64) * t) * w).collect())
        .collect();
    let ys: Vec<Vec<Complex64>> = k2s
        .iter()
        .map(|&k| grid.y.iter().map(|&(y, w)| Complex64::cis(-TAU * k as f64 * y) * w).collect())
        .collect();
    // per x node: B[k2][k3]
    let partial = par::map_indexed(grid.x.len(), |ix| {
        let slab = &samples[ix * ny * nt..(ix + 1) * ny * nt];
        let a: Vec<Vec<Complex64>> = (0..ny)
            .map(|iy| {
                let row = &slab[iy * nt..(iy + 1) * nt];
                rot.iter().map(|r| row.iter().zip(r).map(|(v, e)| v * e).sum()).collect()
            })
            .collect();
        ys.iter()
            .map(|ey| {
                (0..k3s.len())
                    .map(|j| (0..ny).map(|iy| a[iy][j] * ey[iy]).sum::<Complex64>())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    let weight = Convention::Orthonormal.weight();
    let pos = |list: &[i64], v: i64| list.binary_search(&v).expect("listed");
    let values = vectors.iter().map(|k| {
        let (i2, i3) = (pos(&k2s, k.k2), pos(&k3s, k.k3));
        let s: Complex64 = grid
            .x
            .iter()
            .enumerate()
            .map(|(ix, &(x, w))| partial[ix][i2][i3] * Complex64::cis(-TAU * k.k1 as f64 * x) * w)
            .sum();
        (*k, s * weight)
    });
    Ok(CosetCoefficients::from_pairs(Convention::Orthonormal, values))
}

fn distinct(it: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `(2π)⁻¹ ∭_Ω |ψ|²`.
pub fn plancherel_direct<C>(psi: &C, q: &QuadratureSpec) -> Result<f64>
where
    C: CosetFunction + ?Sized,
{
    let grid = OmegaGrid::new(&psi.breakpoints(), q)?;
    let s = grid.integrate(|p| Complex64::new(psi.eval(p).norm_sqr(), 0.0));
    Ok(s.re * Convention::Orthonormal.weight())
}

/// Working row band at `p` for columns `|m| ≤ cols`.
pub fn rows_for(cols: usize, p: f64, a_max: f64, band: Option<usize>) -> usize {
    band.unwrap_or_else(|| margin_band(cols, p, a_max))
}

fn check_tail(fhat: &FourierMatrix, col: i64, total: Complex64) -> Result<()> {
    let n = fhat.rows() as i64;
    let tail = fhat.get(n, col).norm().max(fhat.get(-n, col).norm());
    let tol = TAIL_TOLERANCE * total.norm().max(1.0);
    if tail > tol {
        return Err(Error::TailNotConverged {
            what: "spectral coefficient n-sum",
            magnitude: tail,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Weil-convention coefficient from the spectral data of `f`: the
/// Bessel-matrix `n`-sum at `p = 2πρ(k₁,k₂)`, or `f̂[k₃]` when
/// `(k₁,k₂) = 0`. `band` overrides the margin rule for the `n`-range.
pub fn coeff_spectral<F>(f: &F, k: &LatticeVector, band: Option<usize>, q: &QuadratureSpec) -> Result<Complex64>
where
    F: GroupFunction + ?Sized,
{
    if k.is_character() {
        return fourier::char_coeff(f, k.k3, q);
    }
    let line = SpectralLine::new(*k)?;
    let cols = k.k3.unsigned_abs() as usize;
    let sampler = SpectralSampler::new(f, cols, q)?;
    let p = line.location();
    let rows = rows_for(cols, p, sampler.a_max(), band);
    let fhat = sampler.matrix(p, rows, cols);
    let c = line.pair(&fhat);
    check_tail(&fhat, -k.k3, c)?;
    Ok(c)
}

/// `f̂` at every lattice radius `2πρ ≤ 2π·rho_max`, columns `|m| ≤ k3_max`,
/// plus the character coefficients `f̂[k]`, `|k| ≤ k3_max`.
#[derive(Debug, Clone)]
pub struct SpectralTable {
    pub k3_max: usize,
    pub shells: Vec<LatticeShell>,
    pub matrices: Vec<FourierMatrix>,
    pub chars: Vec<Complex64>,
}

impl SpectralTable {
    pub fn compute<F>(f: &F, k3_max: usize, rho_max: f64, band: Option<usize>, q: &QuadratureSpec) -> Result<Self>
    where
        F: GroupFunction + ?Sized,
    {
        let sampler = SpectralSampler::new(f, k3_max, q)?;
        let shells = enumerate_shells(rho_max);
        let matrices = shells
            .iter()
            .map(|s| {
                let p = s.frequency();
                sampler.matrix(p, rows_for(k3_max, p, sampler.a_max(), band), k3_max)
            })
            .collect();
        let b = k3_max as i64;
        let chars = (-b..=b).map(|n| sampler.char_coeff(n)).collect();
        Ok(SpectralTable {
            k3_max,
            shells,
            matrices,
            chars,
        })
    }

    pub fn from_parts(k3_max: usize, shells: Vec<LatticeShell>, matrices: Vec<FourierMatrix>, chars: Vec<Complex64>) -> Result<Self> {
        if shells.len() != matrices.len() || chars.len() != 2 * k3_max + 1 {
            return Err(Error::InvalidArgument("spectral table parts do not match".into()));
        }
        if matrices.iter().any(|m| m.cols() < k3_max) {
            return Err(Error::InvalidArgument("spectral matrices narrower than k3_max".into()));
        }
        Ok(SpectralTable {
            k3_max,
            shells,
            matrices,
            chars,
        })
    }

    /// `f̂[n]`.
    pub fn char_coeff(&self, n: i64) -> Complex64 {
        self.chars[(n + self.k3_max as i64) as usize]
    }

    fn shell_index(&self, rho_sq: u64) -> Option<usize> {
        self.shells.binary_search_by(|s| s.rho_sq.cmp(&rho_sq)).ok()
    }

    /// Weil-convention coefficient of `ψ_k`.
    pub fn coefficient(&self, k: &LatticeVector) -> Result<Complex64> {
        if k.k3.unsigned_abs() as usize > self.k3_max {
            return Err(Error::InvalidArgument(format!("k3 = {} outside table band {}", k.k3, self.k3_max)));
        }
        if k.is_character() {
            return Ok(self.char_coeff(k.k3));
        }
        let i = self
            .shell_index(k.rho_sq())
            .ok_or_else(|| Error::InvalidArgument(format!("no shell for {k} in table")))?;
        let line = SpectralLine::new(*k)?;
        let c = line.pair(&self.matrices[i]);
        check_tail(&self.matrices[i], -k.k3, c)?;
        Ok(c)
    }

    /// All coefficients of `vectors` (Weil convention).
    pub fn coefficients(&self, vectors: &[LatticeVector]) -> Result<CosetCoefficients> {
        let mut out = CosetCoefficients::new(Convention::Weil);
        for k in vectors {
            out.insert(*k, self.coefficient(k)?);
        }
        Ok(out)
    }

    /// Every index the table covers: all shell points and the character
    /// branch, `|k₃| ≤ k3_max`.
    pub fn vectors(&self) -> Vec<LatticeVector> {
        let b = self.k3_max as i64;
        let mut out: Vec<LatticeVector> = (-b..=b).map(|k3| LatticeVector::new(0, 0, k3)).collect();
        for s in &self.shells {
            for &(k1, k2) in &s.points {
                out.extend((-b..=b).map(|k3| LatticeVector::new(k1, k2, k3)));
            }
        }
        out.sort();
        out
    }

    /// Shell-grouped series
    /// `Σ_k f̂[k]e^{ikα} + Σ_ρ Σ_k Σ_n K_ρ^{k−n}(a,φ) f̂(2πρ)_{nk} e^{−ikα}`,
    /// scaled by `lambda_rec`, at the point `(a cos φ, a sin φ, α)`.
    pub fn reconstruct_shells(&self, point: &CosetPoint, lambda_rec: f64) -> Complex64 {
        let g = point.representative();
        let pol = g.to_polar();
        let b = self.k3_max as i64;
        let mut acc: Complex64 = (-b..=b)
            .map(|k| self.char_coeff(k) * Complex64::cis(k as f64 * pol.theta))
            .sum();
        for (shell, fhat) in self.shells.iter().zip(&self.matrices) {
            let rows = fhat.rows() as i64;
            // kernel values K^q for q = k − n
            let qmax = rows + b;
            let kern: Vec<Complex64> = (-qmax..=qmax)
                .map(|q| shell_kernel(shell, q, pol.a, pol.phi))
                .collect();
            for k in -b..=b {
                let s: Complex64 = (-rows..=rows)
                    .map(|n| kern[(k - n + qmax) as usize] * fhat.get(n, k))
                    .sum();
                acc += s * Complex64::cis(-(k as f64) * pol.theta);
            }
        }
        acc * lambda_rec
    }

    /// `(Σ|f̂[k]|², Σ_ρ Σ_θ Σ_m |Σ_n e^{−inθ} f̂(2πρ)_{nm}|²)`.
    pub fn plancherel_parts(&self) -> (f64, f64) {
        let chars = self.chars.iter().map(|c| c.norm_sqr()).sum();
        let b = self.k3_max as i64;
        let shells = self
            .shells
            .iter()
            .zip(&self.matrices)
            .map(|(shell, fhat)| {
                let rows = fhat.rows() as i64;
                shell
                    .angles
                    .iter()
                    .map(|&t| {
                        (-b..=b)
                            .map(|m| {
                                (-rows..=rows)
                                    .map(|n| Complex64::cis(-(n as f64) * t) * fhat.get(n, m))
                                    .sum::<Complex64>()
                                    .norm_sqr()
                            })
                            .sum::<f64>()
                    })
                    .sum::<f64>()
            })
            .sum();
        (chars, shells)
    }
}

/// `Σ_k lambda_rec · c(k) ψ_k(point)` over the table.
pub fn reconstruct(coeffs: &CosetCoefficients, point: &CosetPoint, lambda_rec: f64) -> Complex64 {
    coeffs.iter().map(|(k, c)| c * basis_eval(k, point)).sum::<Complex64>() * lambda_rec
}

/// Character and shell contributions to the spectral Plancherel sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelParts {
    pub character: f64,
    pub shells: f64,
}

impl PlancherelParts {
    pub fn total(&self) -> f64 {
        self.character + self.shells
    }
}

/// Truncated spectral Plancherel sum (Weil convention).
pub fn plancherel_spectral<F>(f: &F, rho_max: f64, band: Option<usize>, k3_max: usize, q: &QuadratureSpec) -> Result<PlancherelParts>
where
    F: GroupFunction + ?Sized,
{
    let (character, shells) = SpectralTable::compute(f, k3_max, rho_max, band, q)?.plancherel_parts();
    Ok(PlancherelParts { character, shells })
}

/// Ratio audit between spectral and direct coefficient tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationAudit {
    /// Mean of the real ratios.
    pub lambda: f64,
    /// `max |ratio − λ| / |λ|`.
    pub max_relative_deviation: f64,
    /// Standard deviation of the ratios relative to `|λ|`.
    pub relative_std: f64,
    /// Indices with `|direct| > threshold` that entered the audit.
    pub count: usize,
}

impl NormalizationAudit {
    pub const THRESHOLD: f64 = 1e-6;

    pub fn run(spectral: &CosetCoefficients, direct: &CosetCoefficients) -> Result<Self> {
        let ratios: Vec<Complex64> = direct
            .iter()
            .filter(|(_, d)| d.norm() > Self::THRESHOLD)
            .filter_map(|(k, d)| spectral.get(k).map(|s| s / d))
            .collect();
        if ratios.is_empty() {
            return Err(Error::InvalidArgument("no coefficients above the audit threshold".into()));
        }
        let n = ratios.len() as f64;
        let lambda = ratios.iter().map(|r| r.re).sum::<f64>() / n;
        let dev = |r: &Complex64| (r - lambda).norm() / lambda.abs();
        let max_relative_deviation = ratios.iter().map(dev).fold(0.0, f64::max);
        let relative_std = (ratios.iter().map(|r| dev(r).powi(2)).sum::<f64>() / n).sqrt();
        Ok(NormalizationAudit {
            lambda,
            max_relative_deviation,
            relative_std,
            count: ratios.len(),
        })
    }

    pub fn lambda_rec(&self) -> f64 {
        1.0 / self.lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn basis_values() {
        let p = CosetPoint::new(0.25, 0.5, PI);
        let v = basis_eval(&LatticeVector::new(1, 2, -1), &p);
        assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert_eq!(basis_eval(&LatticeVector::new(0, 0, 0), &p), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn box_enumeration() {
        let b = BasisIndexBox::cube(2);
        assert_eq!(b.vectors(None).len(), 125);
        let v = b.vectors(Some(1.0));
        assert_eq!(v.len(), 5 * 5);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn line_amplitude() {
        let l = SpectralLine::new(LatticeVector::new(3, 4, 2)).unwrap();
        assert_eq!(l.amplitude(1, 0), Complex64::new(0.0, 0.0));
        assert!((l.amplitude(-2, 5).norm() - 1.0 / (TAU * 5.0)).abs() < 1e-15);
        assert!(SpectralLine::new(LatticeVector::new(0, 0, 1)).is_err());
    }

    #[test]
    fn format_is_fixed_width_mantissa() {
        assert_eq!(format_real(1.0), "1.0000000000000000e0");
        assert_eq!(format_real(-0.5), "-5.0000000000000000e-1");
    }

    #[test]
    fn json_round_trip() {
        let mut c = CosetCoefficients::new(Convention::Weil);
        c.insert(LatticeVector::new(1, -2, 0), Complex64::new(0.1, -1.0 / 3.0));
        c.insert(LatticeVector::new(0, 0, 3), Complex64::new(1e-300, 2.5));
        let back = CosetCoefficients::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
