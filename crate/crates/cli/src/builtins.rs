//! Named test functions.

use num_complex::Complex64;
use se2_coset::quadrature::{HaarCubature, QuadratureSpec, SupportBox};
use se2_coset::testfns::{convolution_pair, CharacterBump, SeparableBump};
use se2_coset::{GroupElement, GroupFunction};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Separable(SeparableBump),
    Character,
}

/// A builtin function on SE(2) with a name and, where available, closed-form
/// facts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub name: &'static str,
    kind: Kind,
}

impl TestFunction {
    /// Closed-form `f̂[n]`, when known.
    pub fn known_char_coeff(&self, n: i64) -> Option<Complex64> {
        match self.kind {
            Kind::Separable(s) => s.mode_char_coeff(n),
            Kind::Character => Some(CharacterBump::profile_coeff(n) / std::f64::consts::TAU),
        }
    }

    /// `∫ f dg` in closed form.
    pub fn integral(&self) -> Complex64 {
        match self.kind {
            Kind::Separable(s) => s.integral(),
            Kind::Character => Complex64::new(1.0 / std::f64::consts::TAU, 0.0),
        }
    }
}

impl GroupFunction for TestFunction {
    fn eval(&self, g: &GroupElement) -> Complex64 {
        match &self.kind {
            Kind::Separable(s) => s.eval(g),
            Kind::Character => CharacterBump.eval(g),
        }
    }

    fn support(&self) -> SupportBox {
        match &self.kind {
            Kind::Separable(s) => s.support(),
            Kind::Character => CharacterBump.support(),
        }
    }

    fn cubature(&self, q: &QuadratureSpec) -> se2_coset::Result<HaarCubature> {
        HaarCubature::on_box(&self.support(), q)
    }
}

/// A single function or a convolution pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Selection {
    Single(TestFunction),
    Pair(TestFunction, TestFunction),
}

/// (a) bump, (b) windowed mode `e^{ik₀θ}`, (c) character-only profile,
/// (d) narrow pair for convolution.
pub fn builtin_functions(mode_k0: i64) -> Vec<(&'static str, Selection)> {
    let (f1, f2) = convolution_pair();
    vec![
        ("bump", Selection::Single(bump())),
        (
            "mode",
            Selection::Single(TestFunction {
                name: "mode",
                kind: Kind::Separable(SeparableBump::mode(mode_k0)),
            }),
        ),
        (
            "character",
            Selection::Single(TestFunction {
                name: "character",
                kind: Kind::Character,
            }),
        ),
        (
            "pair",
            Selection::Pair(
                TestFunction { name: "pair1", kind: Kind::Separable(f1) },
                TestFunction { name: "pair2", kind: Kind::Separable(f2) },
            ),
        ),
    ]
}

pub fn bump() -> TestFunction {
    TestFunction {
        name: "bump",
        kind: Kind::Separable(SeparableBump::standard()),
    }
}

pub fn lookup(name: &str, mode_k0: i64) -> Result<Selection> {
    builtin_functions(mode_k0)
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| CliError::UnknownFunction(name.to_string()))
}

/// A single named function; pairs are rejected.
pub fn single(name: &str, mode_k0: i64) -> Result<TestFunction> {
    match lookup(name, mode_k0)? {
        Selection::Single(f) => Ok(f),
        Selection::Pair(..) => Err(CliError::Usage(format!("`{name}` is a convolution pair; use the convolve subcommand"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use se2_coset::{char_coeff, integrate_haar};

    fn all(k0: i64) -> Vec<TestFunction> {
        builtin_functions(k0)
            .into_iter()
            .flat_map(|(_, s)| match s {
                Selection::Single(f) => vec![f],
                Selection::Pair(a, b) => vec![a, b],
            })
            .collect()
    }

    #[test]
    fn zero_on_box_boundary() {
        for f in all(2) {
            let b = f.support();
            let (tx, ty) = ((b.x.lo + b.x.hi) / 2.0, (b.y.lo + b.y.hi) / 2.0);
            for t in [0.0, 1.0, 3.0, 5.0] {
                for g in [
                    GroupElement::new(b.x.lo, ty, t),
                    GroupElement::new(b.x.hi, ty, t),
                    GroupElement::new(tx, b.y.lo, t),
                    GroupElement::new(tx, b.y.hi, t),
                ] {
                    assert!(f.eval(&g).norm() < 1e-15, "{} at {g:?}", f.name);
                }
            }
        }
    }

    #[test]
    fn mode_has_one_character() {
        let f = single("mode", 2).unwrap();
        let q = QuadratureSpec::default();
        for n in -4..=4 {
            let c = char_coeff(&f, n, &q).unwrap();
            if n == 2 {
                assert!(c.norm() > 1e-3);
            } else {
                assert!(c.norm() < 1e-15);
            }
            assert!((c - f.known_char_coeff(n).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn integrals_match_closed_forms() {
        let q = QuadratureSpec::default();
        for f in all(1) {
            let got = integrate_haar(&f, &q).unwrap();
            assert!((got - f.integral()).norm() < 1e-13, "{}", f.name);
        }
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(lookup("nope", 2), Err(CliError::UnknownFunction(_))));
        assert!(matches!(single("pair", 2), Err(CliError::Usage(_))));
    }
}
