//! Arithmetic on SE(2) and the right coset space Z²\SE(2).
//!
//! Elements are stored as `(x1, x2, theta)` with the translation in lattice
//! units and the rotation angle canonicalised to `[0, 2π)`. The group law is
//! `(x, R)(x', R') = (x + R x', R R')`.

use std::f64::consts::TAU;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// Reduces an angle into `[0, 2π)`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t - TAU * (t / TAU).floor();
    // floor can leave r == TAU after rounding for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// Reduces a coordinate into `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// A rigid motion `g(x1, x2, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub x1: f64,
    pub x2: f64,
    pub theta: f64,
}

/// A rigid motion in polar translation coordinates `g(a, φ, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarElement {
    pub a: f64,
    pub phi: f64,
    pub theta: f64,
}

/// A point of the fundamental domain `Ω = [0,1)² × [0,2π)`, standing for
/// the coset `Z² g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosetPoint {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        x1: 0.0,
        x2: 0.0,
        theta: 0.0,
    };

    pub fn new(x1: f64, x2: f64, theta: f64) -> Self {
        GroupElement {
            x1,
            x2,
            theta: wrap_angle(theta),
        }
    }

    /// Pure translation by `(x1, x2)`.
    pub fn translation(x1: f64, x2: f64) -> Self {
        GroupElement::new(x1, x2, 0.0)
    }

    /// Pure translation by an integer lattice vector.
    pub fn lattice(gamma: (i64, i64)) -> Self {
        GroupElement::translation(gamma.0 as f64, gamma.1 as f64)
    }

    pub fn rotation(theta: f64) -> Self {
        GroupElement::new(0.0, 0.0, theta)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let (s, c) = self.theta.sin_cos();
        GroupElement::new(
            self.x1 + c * other.x1 - s * other.x2,
            self.x2 + s * other.x1 + c * other.x2,
            self.theta + other.theta,
        )
    }

    pub fn inverse(&self) -> GroupElement {
        let (s, c) = self.theta.sin_cos();
        GroupElement::new(
            -(c * self.x1 + s * self.x2),
            -(-s * self.x1 + c * self.x2),
            -self.theta,
        )
    }

    /// Left translation by an integer lattice vector, `γ ∘ g`.
    pub fn translate_by(&self, gamma: (i64, i64)) -> GroupElement {
        GroupElement {
            x1: self.x1 + gamma.0 as f64,
            x2: self.x2 + gamma.1 as f64,
            theta: self.theta,
        }
    }

    pub fn to_polar(&self) -> PolarElement {
        let a = self.x1.hypot(self.x2);
        let phi = if a == 0.0 {
            0.0
        } else {
            wrap_angle(self.x2.atan2(self.x1))
        };
        PolarElement {
            a,
            phi,
            theta: self.theta,
        }
    }

    pub fn from_polar(p: &PolarElement) -> GroupElement {
        let (s, c) = p.phi.sin_cos();
        GroupElement::new(p.a * c, p.a * s, p.theta)
    }

    /// Componentwise comparison, with circular distance on the angle.
    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        (self.x1 - other.x1).abs() <= tol
            && (self.x2 - other.x2).abs() <= tol
            && circular_distance(self.theta, other.theta) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.theta.is_finite()
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        GroupElement::IDENTITY
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.compose(&rhs)
    }
}

impl PolarElement {
    pub fn new(a: f64, phi: f64, theta: f64) -> Self {
        assert!(a >= 0.0, "polar radius must be non-negative");
        PolarElement {
            a,
            phi: wrap_angle(phi),
            theta: wrap_angle(theta),
        }
    }

    pub fn to_cartesian(&self) -> GroupElement {
        GroupElement::from_polar(self)
    }
}

impl From<GroupElement> for PolarElement {
    fn from(g: GroupElement) -> Self {
        g.to_polar()
    }
}

impl From<PolarElement> for GroupElement {
    fn from(p: PolarElement) -> Self {
        GroupElement::from_polar(&p)
    }
}

impl CosetPoint {
    /// Builds the canonical representative, reducing every component.
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        CosetPoint {
            x: wrap_unit(x),
            y: wrap_unit(y),
            theta: wrap_angle(theta),
        }
    }

    /// The representative of this coset lying in Ω, as a group element.
    pub fn representative(&self) -> GroupElement {
        GroupElement {
            x1: self.x,
            x2: self.y,
            theta: self.theta,
        }
    }

    pub fn approx_eq(&self, other: &CosetPoint, tol: f64) -> bool {
        let dx = (self.x - other.x).abs();
        let dy = (self.y - other.y).abs();
        dx.min(1.0 - dx) <= tol
            && dy.min(1.0 - dy) <= tol
            && circular_distance(self.theta, other.theta) <= tol
    }
}

pub fn compose(g: &GroupElement, h: &GroupElement) -> GroupElement {
    g.compose(h)
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    g.inverse()
}

pub fn to_polar(g: &GroupElement) -> PolarElement {
    g.to_polar()
}

pub fn from_polar(p: &PolarElement) -> GroupElement {
    GroupElement::from_polar(p)
}

/// Projects `g` onto its coset representative in Ω.
pub fn coset_project(g: &GroupElement) -> CosetPoint {
    CosetPoint::new(g.x1, g.x2, g.theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn wrap_angle_is_half_open() {
        assert_eq!(wrap_angle(TAU), 0.0);
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(-FRAC_PI_2) - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert!(wrap_angle(-1e-300) < TAU);
        assert!((wrap_angle(7.0 * PI) - PI).abs() < 1e-12);
    }

    #[test]
    fn compose_quarter_turn_then_shift() {
        let g = GroupElement::new(1.0, 0.0, FRAC_PI_2);
        let h = GroupElement::new(1.0, 0.0, 0.0);
        let gh = g * h;
        assert!(gh.approx_eq(&GroupElement::new(1.0, 1.0, FRAC_PI_2), 1e-15));
    }

    #[test]
    fn inverse_of_quarter_turn() {
        let g = GroupElement::new(1.0, 0.0, FRAC_PI_2);
        assert!(g
            .inverse()
            .approx_eq(&GroupElement::new(0.0, 1.0, 3.0 * FRAC_PI_2), 1e-15));
        assert_eq!(GroupElement::IDENTITY.inverse(), GroupElement::IDENTITY);
    }

    #[test]
    fn polar_axis_points() {
        let p = GroupElement::new(0.0, 2.0, 1.0).to_polar();
        assert_eq!(p.a, 2.0);
        assert!((p.phi - FRAC_PI_2).abs() < 1e-15);
        let p = GroupElement::new(3.0, 4.0, 0.0).to_polar();
        assert_eq!(p.a, 5.0);
        assert!((p.phi - 0.927_295_218_001_612_2).abs() < 1e-12);
        let p = GroupElement::IDENTITY.to_polar();
        assert_eq!((p.a, p.phi), (0.0, 0.0));
    }

    #[test]
    fn coset_projection_examples() {
        let c = coset_project(&GroupElement::new(1.25, -0.5, 0.3));
        assert!(c.approx_eq(&CosetPoint::new(0.25, 0.5, 0.3), 1e-15));
        assert_eq!((c.x, c.y), (0.25, 0.5));

        let inside = GroupElement::new(0.1, 0.9, 6.0);
        let c = coset_project(&inside);
        assert_eq!((c.x, c.y, c.theta), (0.1, 0.9, 6.0));

        let c = coset_project(&GroupElement {
            x1: 0.0,
            x2: 0.0,
            theta: TAU,
        });
        assert_eq!(c.theta, 0.0);
    }

    #[test]
    fn wrap_unit_never_returns_one() {
        assert_eq!(wrap_unit(-1e-18), 0.0);
        assert_eq!(wrap_unit(3.0), 0.0);
        assert!((wrap_unit(-0.25) - 0.75).abs() < 1e-15);
    }
}
