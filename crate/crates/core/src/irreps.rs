//! Unitary irreducible representations of SE(2).
//!
//! `U_p` acts on `L²(S¹)` by `[U_p(g)φ](u) = e^{ip⟨u,t⟩} φ(R_θᵀ u)`. In the
//! basis `e_k(u_α) = e^{ikα}` its matrix elements are
//! `u_mn(g(a,φ,θ), p) = i^{m−n} e^{−i(mθ+(n−m)φ)} J_{m−n}(pa)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel;
use crate::error::{Error, Result};
use crate::group::{GroupElement, PolarElement};

/// Radial frequency `p > 0` labelling `U_p`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct RadialFrequency(f64);

impl RadialFrequency {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "radial frequency must be positive and finite, got {p}"
            )));
        }
        Ok(RadialFrequency(p))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `i^k` without rounding.
#[inline]
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Band-limited vector of `L²(S¹)`: coefficients `c_k`, `|k| ≤ band`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleVector {
    band: usize,
    coeffs: Vec<Complex64>,
}

impl CircleVector {
    pub fn zeros(band: usize) -> Self {
        CircleVector {
            band,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * band + 1],
        }
    }

    /// The basis vector `e_k`.
    pub fn basis(band: usize, k: i64) -> Self {
        let mut v = CircleVector::zeros(band);
        v.set(k, Complex64::new(1.0, 0.0));
        v
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidArgument(
                "circle vector needs an odd number of coefficients".into(),
            ));
        }
        Ok(CircleVector {
            band: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.band {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(k + self.band as i64) as usize]
    }

    pub fn set(&mut self, k: i64, v: Complex64) {
        let b = self.band as i64;
        assert!(k.abs() <= b, "index {k} outside band {b}");
        self.coeffs[(k + b) as usize] = v;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `⟨self, e_n⟩`.
    pub fn inner_basis(&self, n: i64) -> Complex64 {
        self.get(n)
    }

    pub fn max_abs_diff(&self, other: &CircleVector, band: usize) -> f64 {
        let b = band as i64;
        (-b..=b)
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// Closed-form `u_mn(g, p)`.
pub fn matrix_element(m: i64, n: i64, g: &PolarElement, p: RadialFrequency) -> Complex64 {
    let q = m - n;
    let j = if g.a == 0.0 {
        if q == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        bessel::bessel_j(q, p.get() * g.a).expect("Bessel argument in range")
    };
    let phase = -(m as f64 * g.theta + (n - m) as f64 * g.phi);
    i_pow(q) * Complex64::from_polar(j, phase)
}

/// `u_mn(g, p)` by trapezoidal quadrature of the defining action over S¹.
pub fn matrix_element_oracle(
    m: i64,
    n: i64,
    g: &PolarElement,
    p: RadialFrequency,
    nodes: usize,
) -> Result<Complex64> {
    if nodes < 64 {
        return Err(Error::InvalidArgument(format!(
            "oracle needs at least 64 nodes, got {nodes}"
        )));
    }
    let t = GroupElement::from_polar(g);
    let h = TAU / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let alpha = h * j as f64;
        let (s, c) = alpha.sin_cos();
        // [U_p(g) e_m](u_α) = e^{ip⟨u_α, t⟩} e^{im(α−θ)}
        let plane = p.get() * (c * t.x1 + s * t.x2);
        let action = Complex64::cis(plane + m as f64 * (alpha - g.theta));
        acc += action * Complex64::cis(-(n as f64) * alpha);
    }
    Ok(acc / nodes as f64)
}

/// One-dimensional character `χ_n(g) = e^{inθ}`.
pub fn character(n: i64, g: &GroupElement) -> Complex64 {
    Complex64::cis(n as f64 * g.theta)
}

/// Working band for accuracy at `|n| ≤ n_eff` when translations reach
/// `a_max` at frequency `p`: `n_eff + ⌈p·a_max⌉ + 20`.
pub fn margin_band(n_eff: usize, p: f64, a_max: f64) -> usize {
    n_eff + (p * a_max).ceil() as usize + 20
}

/// The truncated matrix `[u_mn(g,p)]` stored row `n`, column `m`, so that
/// `(U v)_n = Σ_m u_mn v_m` is an ordinary matrix–vector product.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepMatrix {
    band: usize,
    data: Vec<Complex64>,
}

impl IrrepMatrix {
    pub fn new(g: &GroupElement, p: RadialFrequency, band: usize) -> Self {
        let pg = g.to_polar();
        let b = band as i64;
        let dim = 2 * band + 1;
        let bessels = bessel::bessel_j_band(2 * band, p.get() * pg.a).expect("Bessel argument in range");
        let jq = |q: i64| bessels[(q + 2 * b) as usize];
        let mut data = Vec::with_capacity(dim * dim);
        for n in -b..=b {
            for m in -b..=b {
                let q = m - n;
                let phase = -(m as f64 * pg.theta + (n - m) as f64 * pg.phi);
                data.push(i_pow(q) * Complex64::from_polar(jq(q), phase));
            }
        }
        IrrepMatrix { band, data }
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// `u_mn`.
    pub fn element(&self, m: i64, n: i64) -> Complex64 {
        let b = self.band as i64;
        let dim = 2 * self.band + 1;
        self.data[(n + b) as usize * dim + (m + b) as usize]
    }

    pub fn apply(&self, v: &CircleVector) -> CircleVector {
        let b = self.band as i64;
        let mut out = CircleVector::zeros(self.band);
        for n in -b..=b {
            let s: Complex64 = (-b..=b).map(|m| self.element(m, n) * v.get(m)).sum();
            out.set(n, s);
        }
        out
    }
}

/// `U_p(g) v` truncated to the band of `v`.
pub fn apply_irrep(g: &GroupElement, p: RadialFrequency, v: &CircleVector) -> CircleVector {
    IrrepMatrix::new(g, p, v.band()).apply(v)
}
