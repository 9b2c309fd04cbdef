use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use se2_coset::function::{FnGroupFunction, Periodized};
use se2_coset::group::circular_distance;
use se2_coset::quadrature::{gauss_legendre_on, integrate_haar_on, Interval, OmegaGrid};
use se2_coset::testfns::{bump, SeparableBump, Window, AngleProfile};
use se2_coset::*;

/// 3×3 homogeneous matrix of `g`.
fn homogeneous(g: &GroupElement) -> [[f64; 3]; 3] {
    let (s, c) = g.theta.sin_cos();
    [[c, -s, g.x1], [s, c, g.x2], [0.0, 0.0, 1.0]]
}

fn matmul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn from_homogeneous(m: &[[f64; 3]; 3]) -> GroupElement {
    GroupElement::new(m[0][2], m[1][2], m[1][0].atan2(m[0][0]))
}

fn close(g: &GroupElement, h: &GroupElement, tol: f64) -> bool {
    (g.x1 - h.x1).abs() <= tol && (g.x2 - h.x2).abs() <= tol && circular_distance(g.theta, h.theta) <= tol
}

fn element() -> impl Strategy<Value = GroupElement> {
    (-5.0f64..5.0, -5.0f64..5.0, 0.0f64..TAU).prop_map(|(x, y, t)| GroupElement::new(x, y, t))
}

#[test]
fn compose_examples() {
    let g = GroupElement::new(1.0, 0.0, FRAC_PI_2);
    let h = GroupElement::new(1.0, 0.0, 0.0);
    let want = from_homogeneous(&matmul(&homogeneous(&g), &homogeneous(&h)));
    let got = compose(&g, &h);
    assert!(close(&got, &GroupElement::new(1.0, 1.0, FRAC_PI_2), 1e-15));
    assert!(close(&got, &want, 1e-15));
    assert_eq!(compose(&g, &GroupElement::IDENTITY), g);
}

#[test]
fn inverse_examples() {
    assert_eq!(inverse(&GroupElement::IDENTITY), GroupElement::IDENTITY);
    let g = GroupElement::new(1.0, 0.0, FRAC_PI_2);
    let got = inverse(&g);
    assert!(close(&got, &GroupElement::new(0.0, 1.0, 3.0 * FRAC_PI_2), 1e-15));
    // homogeneous inverse: [Rᵀ, −Rᵀx]
    let m = homogeneous(&g);
    let inv = [
        [m[0][0], m[1][0], -(m[0][0] * m[0][2] + m[1][0] * m[1][2])],
        [m[0][1], m[1][1], -(m[0][1] * m[0][2] + m[1][1] * m[1][2])],
        [0.0, 0.0, 1.0],
    ];
    assert!(close(&got, &from_homogeneous(&inv), 1e-15));
}

#[test]
fn polar_examples() {
    let p = to_polar(&GroupElement::new(0.0, 2.0, 1.0));
    assert_eq!((p.a, p.phi), (2.0, FRAC_PI_2));
    let p = to_polar(&GroupElement::new(3.0, 4.0, 0.3));
    assert_eq!(p.a, 5.0);
    assert!((p.phi - 4.0f64.atan2(3.0)).abs() < 1e-15);
    assert!((p.phi - 0.927295).abs() < 1e-6);
    assert_eq!(to_polar(&GroupElement::new(0.0, 0.0, 2.0)).phi, 0.0);
}

#[test]
fn projection_examples() {
    let c = coset_project(&GroupElement::new(1.25, -0.5, 1.0));
    assert!((c.x - 0.25).abs() < 1e-15 && (c.y - 0.5).abs() < 1e-15 && c.theta == 1.0);
    let inside = coset_project(&GroupElement::new(0.3, 0.7, 2.0));
    assert_eq!((inside.x, inside.y, inside.theta), (0.3, 0.7, 2.0));
    assert_eq!(coset_project(&GroupElement { x1: 0.1, x2: 0.2, theta: TAU }).theta, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn associativity(g in element(), h in element(), k in element()) {
        let a = compose(&compose(&g, &h), &k);
        let b = compose(&g, &compose(&h, &k));
        prop_assert!(close(&a, &b, 1e-12), "{a:?} vs {b:?}");
    }

    #[test]
    fn identity_and_inverse_laws(g in element()) {
        prop_assert!(close(&compose(&g, &GroupElement::IDENTITY), &g, 1e-12));
        prop_assert!(close(&compose(&GroupElement::IDENTITY, &g), &g, 1e-12));
        prop_assert!(close(&compose(&g, &inverse(&g)), &GroupElement::IDENTITY, 1e-12));
        prop_assert!(close(&compose(&inverse(&g), &g), &GroupElement::IDENTITY, 1e-12));
        prop_assert!(close(&inverse(&inverse(&g)), &g, 1e-12));
    }

    #[test]
    fn compose_matches_homogeneous_product(g in element(), h in element()) {
        let want = from_homogeneous(&matmul(&homogeneous(&g), &homogeneous(&h)));
        prop_assert!(close(&compose(&g, &h), &want, 1e-12));
    }

    #[test]
    fn polar_round_trip(g in element()) {
        prop_assert!(close(&from_polar(&to_polar(&g)), &g, 1e-12));
    }

    #[test]
    fn projection_constant_on_orbits(g in element(), i in -3i64..=3, j in -3i64..=3) {
        let a = coset_project(&compose(&GroupElement::lattice((i, j)), &g));
        let b = coset_project(&g);
        prop_assert!(a.approx_eq(&b, 1e-12), "{a:?} vs {b:?}");
    }
}

#[test]
fn haar_integral_examples() {
    let q = QuadratureSpec::default();
    let one = integrate_haar_on(&SupportBox::omega(), &q, |_| Complex64::new(1.0, 0.0)).unwrap();
    assert!((one.re - 1.0 / TAU).abs() < 1e-15);
    let zero = integrate_haar_on(&SupportBox::omega(), &q, |_| Complex64::new(0.0, 0.0)).unwrap();
    assert_eq!(zero, Complex64::new(0.0, 0.0));
    let bad = QuadratureSpec { n_x: 1, ..q };
    assert!(integrate_haar_on(&SupportBox::omega(), &bad, |_| Complex64::new(1.0, 0.0)).is_err());
}

#[test]
fn separable_bump_matches_refined_grid() {
    let f = SeparableBump::standard();
    let got = integrate_haar(&f, &QuadratureSpec::default()).unwrap();
    // ten times finer, taken axis by axis
    let axis = |w: &Window| -> f64 {
        gauss_legendre_on(w.lo(), w.hi(), 640).iter().map(|&(x, wt)| wt * w.eval(x)).sum()
    };
    let theta = match f.theta {
        AngleProfile::Window(w) => axis(&w),
        AngleProfile::Mode(_) => unreachable!(),
    };
    let oracle = axis(&f.x) * axis(&f.y) * theta / (TAU * TAU);
    assert!((got.re - oracle).abs() < 1e-10);
    assert!((got - f.integral()).norm() < 1e-14);
}

/// A bump whose support straddles cell boundaries, so `f̃` sums several
/// translates.
fn straddling() -> impl GroupFunction + Clone {
    let b = SupportBox::new((-0.3, 0.9), (0.4, 1.6), ThetaRange::window(1.0, 4.0).unwrap()).unwrap();
    FnGroupFunction::new(b, |g| {
        let v = bump((g.x1 - 0.3) / 0.6) * bump((g.x2 - 1.0) / 0.6) * bump((g.theta - 2.5) / 1.5);
        Complex64::new(v, 0.5 * v * g.x1)
    })
}

#[test]
fn periodize_overlap_oracle() {
    let b = SupportBox::new((-0.5, 1.5), (-0.5, 1.5), ThetaRange::window(0.5, 2.5).unwrap()).unwrap();
    let f = FnGroupFunction::new(b, |g| Complex64::new(1.0 + g.x1 - 0.3 * g.x2, g.theta));
    let g = GroupElement::new(0.2, 0.9, 1.0);
    let mut want = Complex64::new(0.0, 0.0);
    let mut terms = 0;
    for i in -1..=1 {
        for j in -1..=1 {
            let h = g.translate_by((i, j));
            if b.contains(&h) {
                want += f.eval(&h);
                terms += 1;
            }
        }
    }
    assert_eq!(terms, 4);
    assert!((periodize(&f, &g).unwrap() - want).norm() < 1e-15);

    let inside = SeparableBump::standard();
    let g = GroupElement::new(0.4, 0.6, 3.0);
    assert_eq!(periodize(&inside, &g).unwrap(), inside.eval(&g));

    let unbounded = SupportBox {
        x: Interval { lo: f64::NEG_INFINITY, hi: 1.0 },
        ..SupportBox::omega()
    };
    let f = FnGroupFunction::new(unbounded, |_| Complex64::new(1.0, 0.0));
    assert!(matches!(periodize(&f, &g), Err(Error::UnboundedSupport(_))));
}

#[test]
fn weil_identity() {
    let q = QuadratureSpec::default();
    let f = straddling();
    let psi = Periodized::new(f.clone()).unwrap();
    let grid = OmegaGrid::new(&psi.breakpoints(), &q).unwrap();
    let lhs = grid.integrate(|p| psi.eval(p)) / (4.0 * PI * PI);
    let rhs = integrate_haar(&f, &q).unwrap();
    assert!((lhs - rhs).norm() <= 1e-8, "{lhs} vs {rhs}");
}

#[test]
fn l2_norm_bounded_by_periodized_modulus() {
    let q = QuadratureSpec::default();
    let weil = 1.0 / (4.0 * PI * PI);
    for overlap in [true, false] {
        let (norm_sq, tilde_sq) = if overlap {
            let f = straddling();
            let n = fourier::l2_norm_sq(&f, &q).unwrap();
            let m = Periodized::new(function::Modulus(f)).unwrap();
            let grid = OmegaGrid::new(&m.breakpoints(), &q).unwrap();
            (n, grid.integrate(|p| Complex64::new(m.eval(p).norm_sqr(), 0.0)).re * weil)
        } else {
            let f = SeparableBump::standard();
            let n = fourier::l2_norm_sq(&f, &q).unwrap();
            let m = Periodized::new(function::Modulus(f)).unwrap();
            let grid = OmegaGrid::new(&m.breakpoints(), &q).unwrap();
            (n, grid.integrate(|p| Complex64::new(m.eval(p).norm_sqr(), 0.0)).re * weil)
        };
        assert!(norm_sq.sqrt() <= tilde_sq.sqrt() + 1e-8);
        if !overlap {
            // a single translate: equality
            assert!((norm_sq.sqrt() - tilde_sq.sqrt()).abs() < 1e-8);
        }
    }
}
