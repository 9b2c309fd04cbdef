//! Lattice spectrum of Z²: radii `ρ(k₁,k₂)`, polar angles `Φ(k₁,k₂)`,
//! shells `(ρ, Θ_ρ)` and the shell kernel `K_ρ^q`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::wrap_angle;

/// Index `k = (k₁, k₂, k₃) ∈ Z³` of a basis function. Ordered
/// lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub k1: i64,
    pub k2: i64,
    pub k3: i64,
}

impl LatticeVector {
    pub const fn new(k1: i64, k2: i64, k3: i64) -> Self {
        LatticeVector { k1, k2, k3 }
    }

    /// True when the translation part vanishes (character branch).
    pub fn is_character(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector::new(-self.k1, -self.k2, -self.k3)
    }

    pub fn rho_sq(&self) -> u64 {
        (self.k1 * self.k1 + self.k2 * self.k2) as u64
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k1, self.k2, self.k3)
    }
}

/// `(ρ, Φ)` with `k₁ = ρ cos Φ`, `k₂ = ρ sin Φ`, `Φ ∈ [0, 2π)`.
pub fn rho_phi(k1: i64, k2: i64) -> Result<(f64, f64)> {
    if k1 == 0 && k2 == 0 {
        return Err(Error::ZeroLatticeVector);
    }
    let (x, y) = (k1 as f64, k2 as f64);
    Ok((x.hypot(y), wrap_angle(y.atan2(x))))
}

/// Lattice points of Z² at one radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeShell {
    pub rho_sq: u64,
    pub rho: f64,
    /// Ascending polar angles of the points.
    pub angles: Vec<f64>,
    /// The integer points, in the same order as `angles`.
    #[serde(skip)]
    pub points: Vec<(i64, i64)>,
}

impl LatticeShell {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Frequency `p = 2πρ` selected by the shell.
    pub fn frequency(&self) -> f64 {
        TAU * self.rho
    }
}

/// All shells with `0 < ρ ≤ rho_max`, sorted by `ρ`, from an exhaustive
/// scan of integer pairs.
pub fn enumerate_shells(rho_max: f64) -> Vec<LatticeShell> {
    if !(rho_max > 0.0) {
        return Vec::new();
    }
    let r = rho_max.floor() as i64;
    let lim = rho_max * rho_max;
    let mut by_norm: BTreeMap<u64, Vec<(f64, (i64, i64))>> = BTreeMap::new();
    for k1 in -r..=r {
        for k2 in -r..=r {
            let n = k1 * k1 + k2 * k2;
            if n == 0 || n as f64 > lim + 1e-9 {
                continue;
            }
            let (_, phi) = rho_phi(k1, k2).expect("nonzero");
            by_norm.entry(n as u64).or_default().push((phi, (k1, k2)));
        }
    }
    by_norm
        .into_iter()
        .map(|(rho_sq, mut pts)| {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            LatticeShell {
                rho_sq,
                rho: (rho_sq as f64).sqrt(),
                angles: pts.iter().map(|p| p.0).collect(),
                points: pts.iter().map(|p| p.1).collect(),
            }
        })
        .collect()
}

/// `K_ρ^q(a, φ) = Σ_{θ ∈ Θ_ρ} e^{2πi aρ cos(φ−θ)} e^{iqθ}`.
pub fn shell_kernel(shell: &LatticeShell, q: i64, a: f64, phi: f64) -> Complex64 {
    shell
        .angles
        .iter()
        .map(|&t| Complex64::cis(TAU * a * shell.rho * (phi - t).cos() + q as f64 * t))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn axis_angles() {
        assert_eq!(rho_phi(0, 1).unwrap(), (1.0, FRAC_PI_2));
        assert_eq!(rho_phi(-1, 0).unwrap(), (1.0, PI));
        let (r, p) = rho_phi(3, 4).unwrap();
        assert_eq!(r, 5.0);
        assert!((p - 0.927_295_218_001_612_2).abs() < 1e-15);
        assert_eq!(rho_phi(0, 0), Err(Error::ZeroLatticeVector));
    }

    #[test]
    fn first_shells() {
        let s = enumerate_shells(2.0);
        let sq: Vec<u64> = s.iter().map(|s| s.rho_sq).collect();
        assert_eq!(sq, vec![1, 2, 4]);
        assert!(s.iter().all(|s| s.len() == 4));
        assert!(enumerate_shells(10.0).iter().all(|s| s.rho_sq != 3));
    }

    #[test]
    fn kernel_small_cases() {
        let s = enumerate_shells(1.0);
        assert!((shell_kernel(&s[0], 0, 0.0, 0.3) - Complex64::new(4.0, 0.0)).norm() < 1e-15);
        assert!(shell_kernel(&s[0], 1, 0.0, 0.3).norm() < 1e-15);
    }
}
