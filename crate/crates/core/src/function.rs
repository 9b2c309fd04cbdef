//! Function abstractions: compactly supported functions on SE(2) and
//! functions on the coset space, plus the periodisation map between them.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{CosetPoint, GroupElement};
use crate::quadrature::{Breakpoints, HaarCubature, QuadratureSpec, SupportBox, ThetaRange};

/// A continuous function on SE(2) vanishing outside a declared box.
pub trait GroupFunction: Sync + Send {
    fn eval(&self, g: &GroupElement) -> Complex64;

    fn support(&self) -> SupportBox;

    /// Cubature rule covering the support. Wrappers whose support is the
    /// image of another box override this to keep nodes aligned with kinks.
    fn cubature(&self, q: &QuadratureSpec) -> Result<HaarCubature> {
        HaarCubature::on_box(&self.support(), q)
    }
}

/// Smoothness of a coset function on Ω.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum Smoothness {
    #[default]
    Smooth,
    /// Smooth between the listed breakpoints.
    Piecewise(Breakpoints),
}

/// A function on `Z²\SE(2)`, evaluated through its Ω representative.
pub trait CosetFunction: Sync + Send {
    fn eval(&self, p: &CosetPoint) -> Complex64;

    fn smoothness(&self) -> Smoothness {
        Smoothness::Smooth
    }

    /// Orthonormal-convention coefficient against `ψ_k`, when known in
    /// closed form.
    fn known_coefficient(&self, _k: &crate::lattice::LatticeVector) -> Option<Complex64> {
        None
    }

    fn breakpoints(&self) -> Breakpoints {
        match self.smoothness() {
            Smoothness::Smooth => Breakpoints::default(),
            Smoothness::Piecewise(b) => b,
        }
    }
}

macro_rules! forward_group_fn {
    ($($ty:ty),*) => {$(
        impl<T: GroupFunction + ?Sized> GroupFunction for $ty {
            fn eval(&self, g: &GroupElement) -> Complex64 {
                (**self).eval(g)
            }
            fn support(&self) -> SupportBox {
                (**self).support()
            }
            fn cubature(&self, q: &QuadratureSpec) -> Result<HaarCubature> {
                (**self).cubature(q)
            }
        }
    )*};
}

forward_group_fn!(&T, Box<T>, Arc<T>);

macro_rules! forward_coset_fn {
    ($($ty:ty),*) => {$(
        impl<T: CosetFunction + ?Sized> CosetFunction for $ty {
            fn eval(&self, p: &CosetPoint) -> Complex64 {
                (**self).eval(p)
            }
            fn smoothness(&self) -> Smoothness {
                (**self).smoothness()
            }
            fn known_coefficient(&self, k: &crate::lattice::LatticeVector) -> Option<Complex64> {
                (**self).known_coefficient(k)
            }
        }
    )*};
}

forward_coset_fn!(&T, Box<T>, Arc<T>);

/// Closure-backed group function.
#[derive(Clone)]
pub struct FnGroupFunction<F> {
    support: SupportBox,
    f: F,
}

impl<F> FnGroupFunction<F>
where
    F: Fn(&GroupElement) -> Complex64 + Sync + Send,
{
    pub fn new(support: SupportBox, f: F) -> Self {
        FnGroupFunction { support, f }
    }
}

impl<F> GroupFunction for FnGroupFunction<F>
where
    F: Fn(&GroupElement) -> Complex64 + Sync + Send,
{
    fn eval(&self, g: &GroupElement) -> Complex64 {
        if self.support.contains(g) {
            (self.f)(g)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn support(&self) -> SupportBox {
        self.support
    }
}

/// Closure-backed coset function.
#[derive(Clone)]
pub struct FnCosetFunction<F> {
    f: F,
    smoothness: Smoothness,
}

impl<F> FnCosetFunction<F>
where
    F: Fn(&CosetPoint) -> Complex64 + Sync + Send,
{
    pub fn new(f: F) -> Self {
        FnCosetFunction {
            f,
            smoothness: Smoothness::Smooth,
        }
    }

    pub fn with_smoothness(mut self, s: Smoothness) -> Self {
        self.smoothness = s;
        self
    }
}

impl<F> CosetFunction for FnCosetFunction<F>
where
    F: Fn(&CosetPoint) -> Complex64 + Sync + Send,
{
    fn eval(&self, p: &CosetPoint) -> Complex64 {
        (self.f)(p)
    }

    fn smoothness(&self) -> Smoothness {
        self.smoothness.clone()
    }
}

/// The zero function with a nominal support box.
#[derive(Debug, Clone, Copy)]
pub struct Zero(pub SupportBox);

impl GroupFunction for Zero {
    fn eval(&self, _g: &GroupElement) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn support(&self) -> SupportBox {
        self.0
    }
}

/// Pointwise modulus `|f|`.
#[derive(Debug, Clone, Copy)]
pub struct Modulus<F>(pub F);

impl<F: GroupFunction> GroupFunction for Modulus<F> {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        Complex64::new(self.0.eval(g).norm(), 0.0)
    }

    fn support(&self) -> SupportBox {
        self.0.support()
    }

    fn cubature(&self, q: &QuadratureSpec) -> Result<HaarCubature> {
        self.0.cubature(q)
    }
}

/// `c · f`.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<F> {
    pub inner: F,
    pub factor: Complex64,
}

impl<F: GroupFunction> GroupFunction for Scaled<F> {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        self.inner.eval(g) * self.factor
    }

    fn support(&self) -> SupportBox {
        self.inner.support()
    }

    fn cubature(&self, q: &QuadratureSpec) -> Result<HaarCubature> {
        self.inner.cubature(q)
    }
}

/// Integer translations `γ` for which `γ ∘ g` can land in the box.
fn lattice_range(lo: f64, hi: f64, at: f64) -> std::ops::RangeInclusive<i64> {
    let a = (lo - at).ceil() as i64;
    let b = (hi - at).floor() as i64;
    a..=b
}

/// `f̃(Γg) = Σ_γ f(γ ∘ g)`, summed exactly over the finitely many lattice
/// vectors that move `g` into the support box.
pub fn periodize<F>(f: &F, g: &GroupElement) -> Result<Complex64>
where
    F: GroupFunction + ?Sized,
{
    let b = f.support();
    if !b.is_bounded() {
        return Err(Error::UnboundedSupport("translation"));
    }
    Ok(periodize_in(f, &b, g))
}

fn periodize_in<F>(f: &F, b: &SupportBox, g: &GroupElement) -> Complex64
where
    F: GroupFunction + ?Sized,
{
    let mut acc = Complex64::new(0.0, 0.0);
    if !b.theta.contains(g.theta) {
        return acc;
    }
    for i in lattice_range(b.x.lo, b.x.hi, g.x1) {
        for j in lattice_range(b.y.lo, b.y.hi, g.x2) {
            acc += f.eval(&g.translate_by((i, j)));
        }
    }
    acc
}

/// The periodised function `f̃` as a coset function.
pub struct Periodized<F> {
    f: F,
    support: SupportBox,
}

impl<F: GroupFunction> Periodized<F> {
    pub fn new(f: F) -> Result<Self> {
        let support = f.support();
        if !support.is_bounded() {
            return Err(Error::UnboundedSupport("translation"));
        }
        Ok(Periodized { f, support })
    }

    pub fn inner(&self) -> &F {
        &self.f
    }
}

impl<F: GroupFunction> CosetFunction for Periodized<F> {
    fn eval(&self, p: &CosetPoint) -> Complex64 {
        periodize_in(&self.f, &self.support, &p.representative())
    }

    fn smoothness(&self) -> Smoothness {
        let b = &self.support;
        let theta = match b.theta {
            ThetaRange::Full => vec![],
            ThetaRange::Window { start, width } => vec![start, start + width],
        };
        Smoothness::Piecewise(Breakpoints {
            x: vec![b.x.lo, b.x.hi],
            y: vec![b.y.lo, b.y.hi],
            theta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box() -> SupportBox {
        SupportBox::new((-0.5, 1.5), (-0.5, 1.5), ThetaRange::Full).unwrap()
    }

    #[test]
    fn single_term_inside_omega() {
        let b = SupportBox::new((0.1, 0.9), (0.1, 0.9), ThetaRange::Full).unwrap();
        let f = FnGroupFunction::new(b, |g| Complex64::new(g.x1 + 2.0 * g.x2, g.theta));
        let g = GroupElement::new(0.3, 0.4, 1.0);
        assert_eq!(periodize(&f, &g).unwrap(), f.eval(&g));
    }

    #[test]
    fn overlapping_support_sums_translates() {
        let f = FnGroupFunction::new(unit_box(), |g| Complex64::new(1.0 + g.x1 * g.x1 + g.x2, 0.0));
        let g = GroupElement::new(0.25, 0.75, 2.0);
        // brute force over γ ∈ {-1,0,1}²
        let mut want = Complex64::new(0.0, 0.0);
        for i in -1..=1 {
            for j in -1..=1 {
                want += f.eval(&g.translate_by((i, j)));
            }
        }
        let got = periodize(&f, &g).unwrap();
        assert!((got - want).norm() < 1e-15);
        // x: 0.25 and 1.25 both inside; y: 0.75 and -0.25 inside
        assert!(want.re > 0.0);
    }

    #[test]
    fn periodized_is_constant_on_orbits() {
        let f = FnGroupFunction::new(unit_box(), |g| Complex64::new(g.x1.cos() * g.x2, g.theta.sin()));
        let psi = Periodized::new(f).unwrap();
        let g = GroupElement::new(0.6, 0.2, 4.0);
        let base = psi.eval(&crate::group::coset_project(&g));
        for i in -3..=3 {
            for j in -3..=3 {
                let p = crate::group::coset_project(&g.translate_by((i, j)));
                assert!((psi.eval(&p) - base).norm() < 1e-12);
            }
        }
    }
}
