use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use se2_coset::irreps::{margin_band, IrrepMatrix};
use se2_coset::*;
use std::f64::consts::{FRAC_PI_2, TAU};

fn freq(p: f64) -> RadialFrequency {
    RadialFrequency::new(p).unwrap()
}

#[test]
fn rejects_bad_frequency() {
    for p in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(RadialFrequency::new(p).is_err());
    }
}

#[test]
fn examples() {
    let e = PolarElement::new(0.0, 0.0, 0.0);
    assert_eq!(matrix_element(2, 2, &e, freq(5.0)), Complex64::new(1.0, 0.0));
    assert_eq!(matrix_element(2, 3, &e, freq(5.0)), Complex64::new(0.0, 0.0));
    // pure rotation: diagonal e^{−imθ}
    let r = PolarElement::new(0.0, 0.0, FRAC_PI_2);
    assert!((matrix_element(1, 1, &r, freq(1.0)) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    // J₀(2.404825557695773) is a zero
    let g = PolarElement::new(1.0, 0.4, 0.0);
    assert!(matrix_element(3, 3, &g, freq(2.404_825_557_695_773)).norm() < 1e-14);
}

#[test]
fn closed_form_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let g = PolarElement::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let p = freq(rng.gen_range(0.1..8.0));
        let m = rng.gen_range(-6i64..=6);
        let n = rng.gen_range(-6i64..=6);
        let got = matrix_element(m, n, &g, p);
        let want = matrix_element_oracle(m, n, &g, p, 256).unwrap();
        assert!((got - want).norm() <= 1e-8, "m={m} n={n} {got} vs {want}");
    }
    assert!(matrix_element_oracle(0, 0, &PolarElement::new(0.0, 0.0, 0.0), freq(1.0), 10).is_err());
}

#[test]
fn truncated_unitarity() {
    let band = 40usize;
    for &(a, p) in &[(0.5, 3.0), (1.5, 4.0), (2.0, 6.0)] {
        let g = GroupElement::from_polar(&PolarElement::new(a, 0.7, 2.1));
        let u = IrrepMatrix::new(&g, freq(p), band);
        let interior = band as i64 - (p * a).ceil() as i64 - 20;
        assert!(interior >= 0);
        let b = band as i64;
        for n in -interior..=interior {
            for n2 in -interior..=interior {
                // Σ_m u_mn conj(u_mn')
                let s: Complex64 = (-b..=b).map(|m| u.element(m, n) * u.element(m, n2).conj()).sum();
                let want = if n == n2 { 1.0 } else { 0.0 };
                assert!((s - want).norm() < 1e-10, "a={a} p={p} n={n} n'={n2}: {s}");
            }
        }
    }
}

#[test]
fn margin_band_formula() {
    assert_eq!(margin_band(10, 2.0, 1.2), 10 + 3 + 20);
    assert_eq!(margin_band(0, 1.0, 0.0), 20);
}

fn element() -> impl Strategy<Value = GroupElement> {
    (-1.0f64..1.0, -1.0f64..1.0, 0.0f64..TAU).prop_map(|(x, y, t)| GroupElement::new(x, y, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_symmetry(g in element(), p in 0.1f64..8.0, m in -8i64..=8, n in -8i64..=8) {
        let u = matrix_element(m, n, &g.inverse().to_polar(), freq(p));
        let v = matrix_element(n, m, &g.to_polar(), freq(p)).conj();
        prop_assert!((u - v).norm() <= 1e-10);
    }

    #[test]
    fn homomorphism(g in element(), h in element(), p in 0.5f64..2.0, k in -10i64..=10) {
        let band = 40;
        let v = CircleVector::basis(band, k);
        let lhs = apply_irrep(&g, freq(p), &apply_irrep(&h, freq(p), &v));
        let rhs = apply_irrep(&g.compose(&h), freq(p), &v);
        prop_assert!(lhs.max_abs_diff(&rhs, 10) <= 1e-8);
    }

    #[test]
    fn character_is_multiplicative(g in element(), h in element(), n in -20i64..=20) {
        let lhs = character(n, &g.compose(&h));
        let rhs = character(n, &g) * character(n, &h);
        prop_assert!((lhs - rhs).norm() <= 1e-12);
    }
}
