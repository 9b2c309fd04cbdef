//! The module action of `L¹(SE(2))` on coset functions,
//! `(ψ ⊘ f)(Γg) = ∫ ψ(Γh) f(h⁻¹ ∘ g) dh`, and its spectral series.

use num_complex::Complex64;

use crate::error::Result;
use crate::fourier::{convolution_matrix, FourierMatrix, SpectralSampler};
use crate::function::{CosetFunction, GroupFunction, Periodized};
use crate::group::{coset_project, CosetPoint, GroupElement};
use crate::lattice::enumerate_shells;
use crate::quadrature::{HaarCubature, Interval, QuadratureSpec, SupportBox};
use crate::series::{rows_for, SpectralTable};

/// `f*(g) = conj(f(g⁻¹))`.
#[derive(Debug, Clone, Copy)]
pub struct Involution<F> {
    pub inner: F,
}

/// `f ↦ f*`.
pub fn involution<F: GroupFunction>(f: F) -> Involution<F> {
    Involution { inner: f }
}

impl<F: GroupFunction> GroupFunction for Involution<F> {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        self.inner.eval(&g.inverse()).conj()
    }

    fn support(&self) -> SupportBox {
        let b = self.inner.support();
        let r = b.max_radius();
        SupportBox {
            x: Interval { lo: -r, hi: r },
            y: Interval { lo: -r, hi: r },
            theta: b.theta.negated(),
        }
    }

    fn cubature(&self, q: &QuadratureSpec) -> Result<HaarCubature> {
        Ok(self.inner.cubature(q)?.inverted())
    }
}

/// `(ψ ⊘ f)(Γg)`, integrating `ψ(Γ g∘u⁻¹) f(u)` over the cubature of `f`.
pub fn oslash<C, F>(psi: &C, f: &F, point: &CosetPoint, q: &QuadratureSpec) -> Result<Complex64>
where
    C: CosetFunction + ?Sized,
    F: GroupFunction + ?Sized,
{
    let g = point.representative();
    let rule = f.cubature(q)?;
    Ok(rule.integrate(|u| {
        let v = f.eval(u);
        if v == Complex64::new(0.0, 0.0) {
            return v;
        }
        psi.eval(&coset_project(&g.compose(&u.inverse()))) * v
    }))
}

/// Spectral data of `f̃₁ ⊘ f₂` at the lattice radii.
pub struct ConvolutionSeries {
    /// Products `f̂₁(2πρ) f̂₂(2πρ)` in the stored `(n, m)` layout.
    pub table: SpectralTable,
}

impl ConvolutionSeries {
    /// Forms `f̂₁ f̂₂` shell by shell. The inner index runs over the band
    /// `k3_max + ⌈p·a₂⌉ + 20` that `f̂₂` needs; rows cover the convolution's
    /// translation reach.
    pub fn compute<F1, F2>(f1: &F1, f2: &F2, k3_max: usize, rho_max: f64, q: &QuadratureSpec) -> Result<Self>
    where
        F1: GroupFunction + ?Sized,
        F2: GroupFunction + ?Sized,
    {
        let shells = enumerate_shells(rho_max);
        let s2 = SpectralSampler::new(f2, k3_max, q)?;
        let a2 = s2.a_max();
        let inner_max = shells
            .iter()
            .map(|s| rows_for(k3_max, s.frequency(), a2, None))
            .max()
            .unwrap_or(k3_max);
        let s1 = SpectralSampler::new(f1, inner_max, q)?;
        let a1 = s1.a_max();
        let matrices: Vec<FourierMatrix> = shells
            .iter()
            .map(|s| {
                let p = s.frequency();
                let inner = rows_for(k3_max, p, a2, None);
                let rows = rows_for(k3_max, p, a1 + a2, None);
                let m1 = s1.matrix(p, rows, inner);
                let m2 = s2.matrix(p, inner, k3_max);
                m1.product(&m2)
            })
            .collect();
        let b = k3_max as i64;
        let chars = (-b..=b).map(|n| s1.char_coeff(n) * s2.char_coeff(n)).collect();
        Ok(ConvolutionSeries {
            table: SpectralTable::from_parts(k3_max, shells, matrices, chars)?,
        })
    }

    /// The same table with `(f₁ ⋆ f₂)^` computed directly from the product
    /// cubature, for comparison with [`ConvolutionSeries::compute`].
    pub fn compute_direct<F1, F2>(f1: &F1, f2: &F2, k3_max: usize, rho_max: f64, q: &QuadratureSpec) -> Result<Self>
    where
        F1: GroupFunction + ?Sized,
        F2: GroupFunction + ?Sized,
    {
        let shells = enumerate_shells(rho_max);
        let a = f1.support().max_radius() + f2.support().max_radius();
        let matrices = shells
            .iter()
            .map(|s| {
                let p = s.frequency();
                convolution_matrix(f1, f2, p, rows_for(k3_max, p, a, None), k3_max, q)
            })
            .collect::<Result<Vec<_>>>()?;
        let s1 = SpectralSampler::new(f1, k3_max, q)?;
        let s2 = SpectralSampler::new(f2, k3_max, q)?;
        let b = k3_max as i64;
        let chars = (-b..=b).map(|n| s1.char_coeff(n) * s2.char_coeff(n)).collect();
        Ok(ConvolutionSeries {
            table: SpectralTable::from_parts(k3_max, shells, matrices, chars)?,
        })
    }

    pub fn eval(&self, point: &CosetPoint, lambda_rec: f64) -> Complex64 {
        self.table.reconstruct_shells(point, lambda_rec)
    }
}

/// Truncated series for `(f̃₁ ⊘ f₂)(point)`.
#[allow(clippy::too_many_arguments)]
pub fn oslash_series<F1, F2>(
    f1: &F1,
    f2: &F2,
    point: &CosetPoint,
    rho_max: f64,
    k3_max: usize,
    lambda_rec: f64,
    q: &QuadratureSpec,
) -> Result<Complex64>
where
    F1: GroupFunction + ?Sized,
    F2: GroupFunction + ?Sized,
{
    Ok(ConvolutionSeries::compute(f1, f2, k3_max, rho_max, q)?.eval(point, lambda_rec))
}

/// `(f̃ ⊘ f*)(Γe)`, the squared norm of `f̃` in the Weil convention.
pub fn norm_via_convolution<F>(f: &F, q: &QuadratureSpec) -> Result<f64>
where
    F: GroupFunction + Clone,
{
    let psi = Periodized::new(f.clone())?;
    let star = involution(f.clone());
    Ok(oslash(&psi, &star, &CosetPoint::new(0.0, 0.0, 0.0), q)?.re)
}
