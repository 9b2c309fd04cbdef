use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use se2_coset::action::ConvolutionSeries;
use se2_coset::fourier::{l1_norm, l2_norm_sq, Convolution};
use se2_coset::function::{FnGroupFunction, Periodized, Scaled};
use se2_coset::quadrature::OmegaGrid;
use se2_coset::testfns::{convolution_pair, BasisMode, SeparableBump};
use se2_coset::*;

const WEIL: f64 = 1.0 / (4.0 * PI * PI);

/// Complex-valued bump straddling the cell boundary at `x = 1`.
fn straddling() -> impl GroupFunction + Clone {
    let b = SupportBox::new((0.6, 1.3), (0.1, 0.6), ThetaRange::window(1.0, 3.0).unwrap()).unwrap();
    FnGroupFunction::new(b, |g| {
        let s = SeparableBump {
            x: testfns::Window::new(0.95, 0.35),
            y: testfns::Window::new(0.35, 0.25),
            theta: testfns::AngleProfile::Window(testfns::Window::new(2.0, 1.0)),
        };
        s.eval(g) * Complex64::new(1.0, 0.4 * g.x2)
    })
}

fn element() -> impl Strategy<Value = GroupElement> {
    (-2.0f64..2.0, -2.0f64..2.0, 0.0f64..TAU).prop_map(|(x, y, t)| GroupElement::new(x, y, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_is_an_involution(g in element()) {
        let f = straddling();
        let twice = involution(involution(f.clone()));
        prop_assert!((twice.eval(&g) - f.eval(&g)).norm() < 1e-12);
        let c = Complex64::new(0.3, -2.0);
        let scaled = involution(Scaled { inner: f.clone(), factor: c });
        prop_assert!((scaled.eval(&g) - involution(f.clone()).eval(&g) * c.conj()).norm() < 1e-12);
        // support of f* contains every point where f* is nonzero
        let star = involution(f);
        if star.eval(&g).norm() > 0.0 {
            prop_assert!(star.support().contains(&g));
        }
    }

    #[test]
    fn action_is_well_defined_on_cosets(x in 0.0f64..1.0, y in 0.0f64..1.0, t in 0.0f64..TAU, i in -2i64..=2, j in -2i64..=2) {
        let psi = Periodized::new(straddling()).unwrap();
        let (f, _) = convolution_pair();
        let q = QuadratureSpec::uniform(10);
        let g = GroupElement::new(x, y, t);
        let moved = GroupElement::lattice((i, j)).compose(&g);
        let rule = f.cubature(&q).unwrap();
        let at = |h: GroupElement| rule.integrate(|u| psi.eval(&coset_project(&h.compose(&u.inverse()))) * f.eval(u));
        prop_assert!((at(g) - at(moved)).norm() <= 1e-10);
        let via_api = oslash(&psi, &f, &coset_project(&moved), &q).unwrap();
        prop_assert!((via_api - at(g)).norm() <= 1e-10);
    }
}

#[test]
fn involution_preserves_norms() {
    let f = straddling();
    let q = QuadratureSpec::default();
    let star = involution(f.clone());
    assert!((l1_norm(&star, &q).unwrap() - l1_norm(&f, &q).unwrap()).abs() < 1e-12);
    assert!((l2_norm_sq(&star, &q).unwrap() - l2_norm_sq(&f, &q).unwrap()).abs() < 1e-12);
    assert!((integrate_haar(&star, &q).unwrap() - integrate_haar(&f, &q).unwrap().conj()).norm() < 1e-12);
}

#[test]
fn periodizing_a_convolution() {
    // (f₁ ⋆ f₂)~ = f̃₁ ⊘ f₂
    let f1 = straddling();
    let (_, f2) = convolution_pair();
    // unit mass, so values are on the scale of f₁
    let f2 = Scaled { inner: f2, factor: f2.integral().inv() };
    let q = QuadratureSpec::uniform(48);
    let conv = Convolution::new(f1.clone(), f2, q).unwrap();
    let psi = Periodized::new(f1).unwrap();
    for p in [CosetPoint::new(0.05, 0.35, 2.1), CosetPoint::new(0.9, 0.3, 1.8), CosetPoint::new(0.0, 0.4, 2.3)] {
        let lhs = periodize(&conv, &p.representative()).unwrap();
        let rhs = oslash(&psi, &f2, &p, &q).unwrap();
        assert!((lhs - rhs).norm() <= 1e-6, "{lhs} vs {rhs}");
        assert!(lhs.norm() > 0.1);
    }
}

fn omega_norm_sq<C: CosetFunction>(c: &C, breaks: &quadrature::Breakpoints, q: &QuadratureSpec) -> f64 {
    let grid = OmegaGrid::new(breaks, q).unwrap();
    grid.integrate(|p| Complex64::new(c.eval(p).norm_sqr(), 0.0)).re * WEIL
}

#[test]
fn action_is_bounded() {
    let q = QuadratureSpec::uniform(12);
    let (_, f) = convolution_pair();
    let l1 = l1_norm(&f, &q).unwrap();
    let psi = Periodized::new(straddling()).unwrap();
    let sup = OmegaGrid::new(&quadrature::Breakpoints::default(), &QuadratureSpec::uniform(16))
        .unwrap()
        .sample(|p| psi.eval(p))
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let out = OmegaGrid::new(&quadrature::Breakpoints::default(), &QuadratureSpec::uniform(8)).unwrap();
    let values = out.sample(|p| oslash(&psi, &f, p, &q).unwrap());
    // sup-norm bound, with the sampled sup of ψ inflated for the grid
    let max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(max <= 1.05 * sup * l1, "{max} > {sup}·{l1}");
    // L² bound on Ω
    let lhs = out.integrate(|p| Complex64::new(oslash(&psi, &f, p, &q).unwrap().norm_sqr(), 0.0)).re * WEIL;
    let rhs = omega_norm_sq(&psi, &psi.breakpoints(), &QuadratureSpec::default());
    assert!(lhs.sqrt() <= rhs.sqrt() * l1 * (1.0 + 1e-8), "{} > {}", lhs.sqrt(), rhs.sqrt() * l1);
}

#[test]
fn periodized_kernel_identity() {
    // (ψ ⊘ f)(Γg) = ∫_Ω ψ(Γh) Σ_γ f(h⁻¹ γ g) dμ
    let psi = BasisMode(LatticeVector::new(1, -1, 1));
    let f = SeparableBump::mode(1);
    let q = QuadratureSpec::uniform(32);
    let g = GroupElement::new(0.3, 0.8, 1.2);
    let lhs = oslash(&psi, &f, &coset_project(&g), &q).unwrap();
    let grid = OmegaGrid::new(&quadrature::Breakpoints::default(), &QuadratureSpec::uniform(64)).unwrap();
    let rhs = grid.integrate(|p| {
        let h = p.representative();
        let mut k = Complex64::new(0.0, 0.0);
        for i in -3..=3 {
            for j in -3..=3 {
                k += f.eval(&h.inverse().compose(&GroupElement::lattice((i, j))).compose(&g));
            }
        }
        psi.eval(p) * k
    }) * WEIL;
    assert!((lhs - rhs).norm() <= 1e-8, "{lhs} vs {rhs}");
}

#[test]
fn norm_from_the_action() {
    let f = straddling();
    let q = QuadratureSpec::default();
    let psi = Periodized::new(f.clone()).unwrap();
    let weil = omega_norm_sq(&psi, &psi.breakpoints(), &q);
    let got = norm_via_convolution(&f, &q).unwrap();
    assert!((got - weil).abs() <= 1e-3 * weil, "{got} vs {weil}");
    let doubled = Scaled { inner: f, factor: Complex64::new(2.0, 0.0) };
    let got2 = norm_via_convolution(&doubled, &q).unwrap();
    assert!((got2 - 4.0 * got).abs() <= 1e-12 * got2);
}

#[test]
fn series_from_products_matches_direct_transform() {
    let (f1, f2) = convolution_pair();
    let q = QuadratureSpec::uniform(12);
    let a = ConvolutionSeries::compute(&f1, &f2, 2, 2.0, &q).unwrap();
    let b = ConvolutionSeries::compute_direct(&f1, &f2, 2, 2.0, &q).unwrap();
    let va = a.table.coefficients(&a.table.vectors()).unwrap();
    let vb = b.table.coefficients(&b.table.vectors()).unwrap();
    let scale = va.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    for (k, c) in va.iter() {
        assert!((c - vb.get(k).unwrap()).norm() <= 1e-8 * scale.max(1.0), "{k}");
    }
    let p = CosetPoint::new(0.5, 0.5, PI);
    assert!((a.eval(&p, TAU) - b.eval(&p, TAU)).norm() <= 1e-8);
}
