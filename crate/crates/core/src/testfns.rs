//! Closed-form test functions with compact support and known integrals.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::function::{CosetFunction, GroupFunction, Smoothness};
use crate::group::{CosetPoint, GroupElement};
use crate::lattice::LatticeVector;
use crate::quadrature::{Breakpoints, SupportBox, ThetaRange};

/// `∫_{−1}^{1} cos⁴(πt/2) dt`.
pub const BUMP_MASS: f64 = 0.75;

/// Window `cos⁴(πt/2)` on `[−1, 1]`, zero outside; C³.
#[inline]
pub fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        return 0.0;
    }
    let c = (0.5 * PI * t).cos();
    let c2 = c * c;
    c2 * c2
}

/// Window of half-width `r` centred at `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center: f64,
    pub radius: f64,
}

impl Window {
    pub const fn new(center: f64, radius: f64) -> Self {
        Window { center, radius }
    }

    pub fn eval(&self, x: f64) -> f64 {
        bump((x - self.center) / self.radius)
    }

    pub fn mass(&self) -> f64 {
        self.radius * BUMP_MASS
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }
}

/// Rotation profile of a separable bump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleProfile {
    /// Window on an arc, written with `center ± radius`, `radius < π`.
    Window(Window),
    /// `e^{ik₀θ}` on the full circle.
    Mode(i64),
}

/// `w_x(x) w_y(y) v(θ)` with [`bump`] windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableBump {
    pub x: Window,
    pub y: Window,
    pub theta: AngleProfile,
}

impl SeparableBump {
    /// Builtin (a): support `[0.2,0.8]² × [0.5,5.5]`.
    pub fn standard() -> Self {
        SeparableBump {
            x: Window::new(0.5, 0.3),
            y: Window::new(0.5, 0.3),
            theta: AngleProfile::Window(Window::new(3.0, 2.5)),
        }
    }

    /// Builtin (b): same translation profile, rotation mode `e^{ik₀θ}`.
    pub fn mode(k0: i64) -> Self {
        SeparableBump {
            theta: AngleProfile::Mode(k0),
            ..SeparableBump::standard()
        }
    }

    fn angle(&self, theta: f64) -> Complex64 {
        match self.theta {
            AngleProfile::Mode(k) => Complex64::cis(k as f64 * theta),
            AngleProfile::Window(w) => {
                // nearest copy of θ to the window centre
                let d = (theta - w.center + PI).rem_euclid(TAU) - PI;
                Complex64::new(bump(d / w.radius), 0.0)
            }
        }
    }

    /// `∫ f dg`.
    pub fn integral(&self) -> Complex64 {
        let t = match self.theta {
            AngleProfile::Mode(0) => TAU,
            AngleProfile::Mode(_) => 0.0,
            AngleProfile::Window(w) => w.mass(),
        };
        Complex64::new(self.x.mass() * self.y.mass() * t / (TAU * TAU), 0.0)
    }

    /// Closed form of `f̂[n]` when the rotation profile is a mode.
    pub fn mode_char_coeff(&self, n: i64) -> Option<Complex64> {
        match self.theta {
            AngleProfile::Mode(k) => Some(Complex64::new(
                if n == k { self.x.mass() * self.y.mass() / TAU } else { 0.0 },
                0.0,
            )),
            AngleProfile::Window(_) => None,
        }
    }
}

impl GroupFunction for SeparableBump {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        let r = self.x.eval(g.x1) * self.y.eval(g.x2);
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.angle(g.theta) * r
    }

    fn support(&self) -> SupportBox {
        let theta = match self.theta {
            AngleProfile::Mode(_) => ThetaRange::Full,
            AngleProfile::Window(w) => ThetaRange::window(w.lo(), w.hi()).expect("valid window"),
        };
        SupportBox::new((self.x.lo(), self.x.hi()), (self.y.lo(), self.y.hi()), theta)
            .expect("valid box")
    }
}

/// Builtin (c): `cos²(πx/2) cos²(πy/2) v(θ)` on `[−1,1]²`, with
/// `v(θ) = 1 + ½cos θ + ¼sin 2θ`. The translation factor is a partition of
/// unity under Z², so the periodisation is `v(θ)` alone.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CharacterBump;

impl CharacterBump {
    pub fn profile(theta: f64) -> f64 {
        1.0 + 0.5 * theta.cos() + 0.25 * (2.0 * theta).sin()
    }

    /// Fourier coefficients of `v`, `(2π)⁻¹∫ v e^{−ikθ} dθ`.
    pub fn profile_coeff(k: i64) -> Complex64 {
        match k {
            0 => Complex64::new(1.0, 0.0),
            1 | -1 => Complex64::new(0.25, 0.0),
            2 => Complex64::new(0.0, -0.125),
            -2 => Complex64::new(0.0, 0.125),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// `(2π)⁻¹∫|v|² dθ`.
    pub fn profile_norm_sq() -> f64 {
        1.0 + 2.0 * 0.25 * 0.25 + 2.0 * 0.125 * 0.125
    }
}

impl GroupFunction for CharacterBump {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        if g.x1.abs() > 1.0 || g.x2.abs() > 1.0 {
            return Complex64::new(0.0, 0.0);
        }
        let c = (0.5 * PI * g.x1).cos().powi(2) * (0.5 * PI * g.x2).cos().powi(2);
        Complex64::new(c * CharacterBump::profile(g.theta), 0.0)
    }

    fn support(&self) -> SupportBox {
        SupportBox::new((-1.0, 1.0), (-1.0, 1.0), ThetaRange::Full).expect("valid box")
    }
}

/// The periodisation of [`CharacterBump`], evaluated in closed form.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CharacterProfile;

impl CosetFunction for CharacterProfile {
    fn eval(&self, p: &CosetPoint) -> Complex64 {
        Complex64::new(CharacterBump::profile(p.theta), 0.0)
    }

    fn known_coefficient(&self, k: &LatticeVector) -> Option<Complex64> {
        Some(if k.is_character() {
            CharacterBump::profile_coeff(k.k3)
        } else {
            Complex64::new(0.0, 0.0)
        })
    }
}

/// Builtin (d): a narrow pair whose convolution stays inside Ω. The
/// translation reach of `f₁ ⋆ f₂` is `[0.25 − 0.17√2, 0.75 + 0.17√2]²`.
pub fn convolution_pair() -> (SeparableBump, SeparableBump) {
    let f1 = SeparableBump {
        x: Window::new(0.5, 0.25),
        y: Window::new(0.5, 0.25),
        theta: AngleProfile::Window(Window::new(PI, 1.5)),
    };
    let f2 = SeparableBump {
        x: Window::new(0.0, 0.17),
        y: Window::new(0.0, 0.17),
        theta: AngleProfile::Window(Window::new(0.0, 1.2)),
    };
    (f1, f2)
}

/// A single basis function `ψ_k` as a coset function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisMode(pub LatticeVector);

impl CosetFunction for BasisMode {
    fn eval(&self, p: &CosetPoint) -> Complex64 {
        crate::series::basis_eval(&self.0, p)
    }

    fn known_coefficient(&self, k: &LatticeVector) -> Option<Complex64> {
        Some(Complex64::new(if *k == self.0 { 1.0 } else { 0.0 }, 0.0))
    }
}

/// Breakpoints of a periodised separable bump in Ω coordinates.
pub fn bump_breakpoints(f: &SeparableBump) -> Smoothness {
    let theta = match f.theta {
        AngleProfile::Mode(_) => vec![],
        AngleProfile::Window(w) => vec![w.lo(), w.hi()],
    };
    Smoothness::Piecewise(Breakpoints {
        x: vec![f.x.lo(), f.x.hi()],
        y: vec![f.y.lo(), f.y.hi()],
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_haar, QuadratureSpec};

    #[test]
    fn zero_on_box_boundary() {
        let a = SeparableBump::standard();
        let b = a.support();
        for &(x, y, t) in &[
            (b.x.lo, 0.5, 3.0),
            (b.x.hi, 0.5, 3.0),
            (0.5, b.y.lo, 3.0),
            (0.5, b.y.hi, 3.0),
            (0.5, 0.5, 0.5),
            (0.5, 0.5, 5.5),
        ] {
            assert_eq!(a.eval(&GroupElement::new(x, y, t)).norm(), 0.0);
        }
        let c = CharacterBump;
        assert!(c.eval(&GroupElement::new(1.0, 0.2, 1.0)).norm() < 1e-30);
    }

    #[test]
    fn standard_bump_integral() {
        let a = SeparableBump::standard();
        let got = integrate_haar(&a, &QuadratureSpec::uniform(16)).unwrap();
        assert!((got - a.integral()).norm() < 1e-14);
    }

    #[test]
    fn window_wraps_across_zero() {
        let (_, f2) = convolution_pair();
        let v1 = f2.eval(&GroupElement::new(0.0, 0.0, 0.1));
        let v2 = f2.eval(&GroupElement::new(0.0, 0.0, TAU - 0.1));
        assert!((v1 - v2).norm() < 1e-14);
        assert!(v1.re > 0.0);
    }
}
