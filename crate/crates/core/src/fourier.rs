//! The operator-valued Fourier transform on SE(2).
//!
//! `f̂(p) = ∫ f(g) U_p(g⁻¹) dg`, stored through its entries
//! `f̂(p)_{nm} = ⟨f̂(p) e_n, e_m⟩ = ∫ f(g) conj(u_mn(g,p)) dg` with row `n`
//! and column `m`. In this layout the operator is the transpose, see
//! [`FourierMatrix::operator`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel;
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::GroupElement;
use crate::irreps::{IrrepMatrix, RadialFrequency};
use crate::par;
use crate::quadrature::{gauss_legendre_on, QuadratureSpec, SupportBox};

/// A truncated block of `f̂(p)`: rows `n ∈ [−rows, rows]`, columns
/// `m ∈ [−cols, cols]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierMatrix {
    pub p: f64,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl FourierMatrix {
    pub fn zeros(p: f64, rows: usize, cols: usize) -> Self {
        FourierMatrix {
            p,
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); (2 * rows + 1) * (2 * cols + 1)],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn idx(&self, n: i64, m: i64) -> usize {
        let width = 2 * self.cols + 1;
        (n + self.rows as i64) as usize * width + (m + self.cols as i64) as usize
    }

    /// `f̂(p)_{nm}`; zero outside the stored block.
    pub fn get(&self, n: i64, m: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.rows || m.unsigned_abs() as usize > self.cols {
            return Complex64::new(0.0, 0.0);
        }
        self.data[self.idx(n, m)]
    }

    pub fn set(&mut self, n: i64, m: i64, v: Complex64) {
        let i = self.idx(n, m);
        self.data[i] = v;
    }

    /// Sub-block with the given half-widths.
    pub fn restrict(&self, rows: usize, cols: usize) -> FourierMatrix {
        assert!(rows <= self.rows && cols <= self.cols);
        let mut out = FourierMatrix::zeros(self.p, rows, cols);
        for n in -(rows as i64)..=rows as i64 {
            for m in -(cols as i64)..=cols as i64 {
                out.set(n, m, self.get(n, m));
            }
        }
        out
    }

    /// Conjugate transpose, as a matrix in the same layout.
    pub fn adjoint(&self) -> FourierMatrix {
        let mut out = FourierMatrix::zeros(self.p, self.cols, self.rows);
        for n in -(self.rows as i64)..=self.rows as i64 {
            for m in -(self.cols as i64)..=self.cols as i64 {
                out.set(m, n, self.get(n, m).conj());
            }
        }
        out
    }

    /// The operator matrix `A` with `A_{mn} = ⟨f̂(p)e_n, e_m⟩`, i.e. the
    /// transpose of the stored layout. Operator products compose here.
    pub fn operator(&self) -> FourierMatrix {
        let mut out = FourierMatrix::zeros(self.p, self.cols, self.rows);
        for n in -(self.rows as i64)..=self.rows as i64 {
            for m in -(self.cols as i64)..=self.cols as i64 {
                out.set(m, n, self.get(n, m));
            }
        }
        out
    }

    /// Matrix product in the stored layout; `self.cols` must equal
    /// `other.rows`.
    pub fn product(&self, other: &FourierMatrix) -> FourierMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = FourierMatrix::zeros(self.p, self.rows, other.cols);
        let inner = self.cols as i64;
        for n in -(self.rows as i64)..=self.rows as i64 {
            for k in -(other.cols as i64)..=other.cols as i64 {
                let s: Complex64 = (-inner..=inner)
                    .map(|m| self.get(n, m) * other.get(m, k))
                    .sum();
                out.set(n, k, s);
            }
        }
        out
    }

    pub fn scaled(&self, c: Complex64) -> FourierMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn add(&self, other: &FourierMatrix) -> FourierMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        out.data
            .iter_mut()
            .zip(&other.data)
            .for_each(|(a, b)| *a += *b);
        out
    }

    /// Largest entrywise difference over `|n| ≤ rows`, `|m| ≤ cols`.
    pub fn max_abs_diff_within(&self, other: &FourierMatrix, rows: usize, cols: usize) -> f64 {
        let mut worst = 0.0f64;
        for n in -(rows as i64)..=rows as i64 {
            for m in -(cols as i64)..=cols as i64 {
                worst = worst.max((self.get(n, m) - other.get(n, m)).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `tr[f̂(p) U_p(g)] = Σ_{n,m} f̂_{nm} u_mn(g,p)`, truncated to the
    /// stored block.
    pub fn trace_with(&self, u: &IrrepMatrix) -> Complex64 {
        let rb = self.rows.min(u.band()) as i64;
        let cb = self.cols.min(u.band()) as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -rb..=rb {
            for m in -cb..=cb {
                acc += self.get(n, m) * u.element(m, n);
            }
        }
        acc
    }
}

struct SamplerColumn {
    a: f64,
    phi: f64,
    /// `G_m = Σ_θ w f e^{imθ}` for `m ∈ [−m_max, m_max]`.
    g: Vec<Complex64>,
}

/// Precomputed rotation transforms of a function, from which blocks of
/// `f̂(p)` are assembled at any `p` in one pass over the translation nodes.
pub struct SpectralSampler {
    columns: Vec<SamplerColumn>,
    m_max: usize,
    a_max: f64,
}

impl SpectralSampler {
    pub fn new<F>(f: &F, m_max: usize, q: &QuadratureSpec) -> Result<Self>
    where
        F: GroupFunction + ?Sized,
    {
        let rule = f.cubature(q)?;
        let mb = m_max as i64;
        let columns = par::map_slice(&rule.columns, |c| {
            let vals: Vec<(f64, Complex64)> = c
                .nodes
                .iter()
                .map(|&(t, w)| (t, f.eval(&GroupElement::new(c.x1, c.x2, t)) * w))
                .collect();
            let g = (-mb..=mb)
                .map(|m| {
                    vals.iter()
                        .map(|&(t, v)| v * Complex64::cis(m as f64 * t))
                        .sum()
                })
                .collect();
            let pol = GroupElement::new(c.x1, c.x2, 0.0).to_polar();
            SamplerColumn {
                a: pol.a,
                phi: pol.phi,
                g,
            }
        });
        let a_max = columns.iter().map(|c| c.a).fold(0.0, f64::max);
        Ok(SpectralSampler {
            columns,
            m_max,
            a_max,
        })
    }

    /// Largest translation length among the nodes.
    pub fn a_max(&self) -> f64 {
        self.a_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// `f̂[n] = ∫ f conj(χ_n) dg`, from the stored rotation transforms.
    pub fn char_coeff(&self, n: i64) -> Complex64 {
        assert!(n.unsigned_abs() as usize <= self.m_max);
        let i = (-n + self.m_max as i64) as usize;
        self.columns.iter().map(|c| c.g[i]).sum()
    }

    /// Block of `f̂(p)` with `|n| ≤ rows`, `|m| ≤ cols`.
    pub fn matrix(&self, p: f64, rows: usize, cols: usize) -> FourierMatrix {
        assert!(cols <= self.m_max, "column band {cols} exceeds sampler band {}", self.m_max);
        let off = self.m_max - cols;
        accumulate(p, rows, cols, self.columns.len(), |i, g| {
            let col = &self.columns[i];
            g.copy_from_slice(&col.g[off..off + 2 * cols + 1]);
            (col.a, col.phi)
        })
    }
}

/// Sums `Σ_col G_m(col) · i^{n−m} e^{i(n−m)φ} J_{m−n}(pa)` over `count`
/// translation columns. `column(i, g)` fills `g[m + cols]` and returns the
/// column's polar translation `(a, φ)`. Partial sums are formed over fixed
/// chunks and added in order, so the result does not depend on scheduling.
pub(crate) fn accumulate<C>(p: f64, rows: usize, cols: usize, count: usize, column: C) -> FourierMatrix
where
    C: Fn(usize, &mut [Complex64]) -> (f64, f64) + Sync + Send,
{
    const CHUNK: usize = 32;
    let qmax = rows + cols;
    let chunks = count.div_ceil(CHUNK);
    let partials = par::map_indexed(chunks, |ci| {
        let mut block = FourierMatrix::zeros(p, rows, cols);
        let mut bess = vec![0.0; qmax + 1];
        let mut coef = vec![Complex64::new(0.0, 0.0); 2 * qmax + 1];
        let mut g = vec![Complex64::new(0.0, 0.0); 2 * cols + 1];
        let width = 2 * cols + 1;
        for i in ci * CHUNK..((ci + 1) * CHUNK).min(count) {
            let (a, phi) = column(i, &mut g);
            if g.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
                continue;
            }
            bessel::orders_into(qmax, p * a, &mut bess);
            // c_q = i^q e^{iqφ} J_{−q}(pa) for q = n − m
            let step = Complex64::cis(phi) * Complex64::new(0.0, 1.0);
            let mut up = Complex64::new(1.0, 0.0);
            let mut down = Complex64::new(1.0, 0.0);
            coef[qmax] = Complex64::new(bess[0], 0.0);
            for q in 1..=qmax {
                up *= step;
                down *= step.conj();
                let j = bess[q];
                let odd = q % 2 == 1;
                coef[qmax + q] = up * if odd { -j } else { j };
                coef[qmax - q] = down * j;
            }
            for (mi, gm) in g.iter().enumerate() {
                if *gm == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // n − m + qmax for n = −rows, with m = mi − cols
                let base = qmax + cols - mi - rows;
                for ni in 0..=2 * rows {
                    block.data[ni * width + mi] += gm * coef[base + ni];
                }
            }
        }
        block
    });
    let mut out = FourierMatrix::zeros(p, rows, cols);
    for part in partials {
        out.data
            .iter_mut()
            .zip(&part.data)
            .for_each(|(a, b)| *a += *b);
    }
    out
}

/// Block of `(f₁ ⋆ f₂)^(p)` from the product cubature of `f₁` and `f₂`,
/// pushing each node pair forward through `(g, u) ↦ g ∘ u`. No values of the
/// convolution itself are needed.
pub fn convolution_matrix<F1, F2>(
    f1: &F1,
    f2: &F2,
    p: f64,
    rows: usize,
    cols: usize,
    q: &QuadratureSpec,
) -> Result<FourierMatrix>
where
    F1: GroupFunction + ?Sized,
    F2: GroupFunction + ?Sized,
{
    let nodes1: Vec<(GroupElement, Complex64)> = f1
        .cubature(q)?
        .columns
        .iter()
        .flat_map(|c| {
            c.nodes.iter().map(move |&(t, w)| {
                let g = GroupElement::new(c.x1, c.x2, t);
                (g, f1.eval(&g) * w)
            })
        })
        .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
        .collect();
    let right = SpectralSampler::new(f2, cols, q)?;
    let right_xy: Vec<(f64, f64)> = right
        .columns
        .iter()
        .map(|c| {
            let t = GroupElement::from_polar(&crate::group::PolarElement::new(c.a, c.phi, 0.0));
            (t.x1, t.x2)
        })
        .collect();
    let n2 = right.columns.len();
    Ok(accumulate(p, rows, cols, nodes1.len() * n2, |i, g| {
        let (left, v) = nodes1[i / n2];
        let j = i % n2;
        let (ux, uy) = right_xy[j];
        let h = left.compose(&GroupElement::translation(ux, uy));
        // G_m = v e^{imθ_g} H_m(u)
        let step = Complex64::cis(left.theta);
        let mut ph = Complex64::cis(-(cols as f64) * left.theta) * v;
        for (k, gm) in g.iter_mut().enumerate() {
            *gm = ph * right.columns[j].g[k];
            ph *= step;
        }
        let pol = h.to_polar();
        (pol.a, pol.phi)
    }))
}

/// `f̂(p)` truncated to band `N`.
pub fn fourier_matrix<F>(f: &F, p: RadialFrequency, band: usize, q: &QuadratureSpec) -> Result<FourierMatrix>
where
    F: GroupFunction + ?Sized,
{
    Ok(SpectralSampler::new(f, band, q)?.matrix(p.get(), band, band))
}

/// Character coefficient `f̂[n] = ∫ f(g) e^{−inθ} dg`.
pub fn char_coeff<F>(f: &F, n: i64, q: &QuadratureSpec) -> Result<Complex64>
where
    F: GroupFunction + ?Sized,
{
    let rule = f.cubature(q)?;
    Ok(rule.integrate(|g| f.eval(g) * Complex64::cis(-(n as f64) * g.theta)))
}

/// Radial discretisation of the inversion integral `∫₀^∞ tr[f̂(p)U_p(g)] p dp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionConfig {
    pub p_max: f64,
    pub radial_nodes: usize,
    pub band: usize,
    /// Bound on `p·|tr[f̂(p)U_p(g)]|` at the outermost radial node.
    pub tail_tolerance: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            p_max: 40.0,
            radial_nodes: 200,
            band: 24,
            tail_tolerance: 1e-2,
        }
    }
}

/// `f̂` sampled at Gauss–Legendre radial nodes on `[0, p_max]`.
pub struct RadialSamples {
    pub config: InversionConfig,
    /// `(p_j, w_j, f̂(p_j))`.
    pub samples: Vec<(f64, f64, FourierMatrix)>,
    /// Translation `c` such that the samples belong to `g ↦ f(t_c ∘ g)`.
    pub centre: (f64, f64),
}

/// `g ↦ f(t_c ∘ g)`.
struct Shifted<'a, F: ?Sized> {
    f: &'a F,
    c: (f64, f64),
}

impl<F: GroupFunction + ?Sized> GroupFunction for Shifted<'_, F> {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        self.f.eval(&GroupElement::new(g.x1 + self.c.0, g.x2 + self.c.1, g.theta))
    }

    fn support(&self) -> SupportBox {
        let b = self.f.support();
        SupportBox {
            x: b.x.shift(-self.c.0),
            y: b.y.shift(-self.c.1),
            theta: b.theta,
        }
    }
}

impl RadialSamples {
    pub fn compute<F>(f: &F, config: InversionConfig, q: &QuadratureSpec) -> Result<Self>
    where
        F: GroupFunction + ?Sized,
    {
        if !(config.p_max > 0.0) || config.radial_nodes < 2 {
            return Err(Error::InvalidArgument("inversion needs p_max > 0 and at least 2 radial nodes".into()));
        }
        let sampler = SpectralSampler::new(f, config.band, q)?;
        let nodes = gauss_legendre_on(0.0, config.p_max, config.radial_nodes);
        let samples = nodes
            .into_iter()
            .map(|(p, w)| (p, w, sampler.matrix(p, config.band, config.band)))
            .collect();
        Ok(RadialSamples {
            config,
            samples,
            centre: (0.0, 0.0),
        })
    }

    /// Samples of `f` translated so its support box is centred at the
    /// origin. Entries of `f̂` then stay within a band of about
    /// `p·max_radius` of the shrunken box, so a fixed band reaches larger
    /// `p` before truncating.
    pub fn compute_centred<F>(f: &F, config: InversionConfig, q: &QuadratureSpec) -> Result<Self>
    where
        F: GroupFunction + ?Sized,
    {
        let b = f.support();
        if !b.is_bounded() {
            return Err(Error::InvalidArgument("centring needs a bounded support".into()));
        }
        let c = (0.5 * (b.x.lo + b.x.hi), 0.5 * (b.y.lo + b.y.hi));
        let mut s = RadialSamples::compute(&Shifted { f, c }, config, q)?;
        s.centre = c;
        Ok(s)
    }

    /// `∫₀^{p_max} ‖f̂(p)‖²_HS p dp` by the same radial rule.
    pub fn plancherel(&self) -> f64 {
        self.samples
            .iter()
            .map(|(p, w, m)| w * p * m.hs_norm_sq())
            .sum()
    }
}

/// Truncated inversion `f(g) ≈ ∫₀^{p_max} tr[f̂(p)U_p(g)] p dp`.
pub fn inverse_transform(samples: &RadialSamples, g: &GroupElement) -> Result<Complex64> {
    let band = samples.config.band;
    let (c1, c2) = samples.centre;
    let g = &GroupElement::new(g.x1 - c1, g.x2 - c2, g.theta);
    let terms: Vec<(f64, Complex64)> = par::map_slice(&samples.samples, |(p, w, m)| {
        if *p <= 0.0 {
            return (0.0, Complex64::new(0.0, 0.0));
        }
        let u = IrrepMatrix::new(g, RadialFrequency::new(*p).expect("positive node"), band);
        (*p, m.trace_with(&u) * (w * p))
    });
    let total: Complex64 = terms.iter().map(|t| t.1).sum();
    if let Some((p, _, m)) = samples.samples.last() {
        let u = IrrepMatrix::new(g, RadialFrequency::new(*p).expect("positive node"), band);
        let tail = m.trace_with(&u).norm() * p;
        if tail > samples.config.tail_tolerance {
            return Err(Error::TailNotConverged {
                what: "radial inversion",
                magnitude: tail,
                tolerance: samples.config.tail_tolerance,
            });
        }
    }
    Ok(total)
}

/// `(f₁ ⋆ f₂)(h) = ∫ f₁(g) f₂(g⁻¹ ∘ h) dg`.
pub fn convolve_direct<F1, F2>(f1: &F1, f2: &F2, h: &GroupElement, q: &QuadratureSpec) -> Result<Complex64>
where
    F1: GroupFunction + ?Sized,
    F2: GroupFunction + ?Sized,
{
    let rule = f1.cubature(q)?;
    Ok(rule.integrate(|g| {
        let v = f1.eval(g);
        if v == Complex64::new(0.0, 0.0) {
            return v;
        }
        v * f2.eval(&g.inverse().compose(h))
    }))
}

/// `f₁ ⋆ f₂` as a group function, each value computed by quadrature.
pub struct Convolution<F1, F2> {
    pub f1: F1,
    pub f2: F2,
    pub inner: QuadratureSpec,
    support: SupportBox,
}

impl<F1: GroupFunction, F2: GroupFunction> Convolution<F1, F2> {
    pub fn new(f1: F1, f2: F2, inner: QuadratureSpec) -> Result<Self> {
        inner.validate()?;
        let b1 = f1.support();
        let b2 = f2.support();
        let r2 = b2.max_radius();
        let support = SupportBox {
            x: b1.x.widen(r2),
            y: b1.y.widen(r2),
            theta: b1.theta.sum(&b2.theta),
        };
        Ok(Convolution { f1, f2, inner, support })
    }
}

impl<F1: GroupFunction, F2: GroupFunction> GroupFunction for Convolution<F1, F2> {
    fn eval(&self, h: &GroupElement) -> Complex64 {
        if !self.support.contains(h) {
            return Complex64::new(0.0, 0.0);
        }
        convolve_direct(&self.f1, &self.f2, h, &self.inner).expect("validated quadrature")
    }

    fn support(&self) -> SupportBox {
        self.support
    }
}

/// Haar measure of a box, `(4π²)⁻¹ |X||Y||Θ|`.
pub fn box_measure(b: &SupportBox) -> f64 {
    b.x.width() * b.y.width() * b.theta.width() / (TAU * TAU)
}

/// `∫ |f|² dg`.
pub fn l2_norm_sq<F>(f: &F, q: &QuadratureSpec) -> Result<f64>
where
    F: GroupFunction + ?Sized,
{
    let rule = f.cubature(q)?;
    Ok(rule.integrate(|g| Complex64::new(f.eval(g).norm_sqr(), 0.0)).re)
}

/// `∫ |f| dg`.
pub fn l1_norm<F>(f: &F, q: &QuadratureSpec) -> Result<f64>
where
    F: GroupFunction + ?Sized,
{
    let rule = f.cubature(q)?;
    Ok(rule.integrate(|g| Complex64::new(f.eval(g).norm(), 0.0)).re)
}
