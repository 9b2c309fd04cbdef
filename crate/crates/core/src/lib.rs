//! Noncommutative Fourier analysis on the coset space `Z²\SE(2)`.
//!
//! The crate covers the group layer (composition, Haar cubature, the
//! operator-valued Fourier transform built from Bessel matrix elements) and
//! the coset layer: the exponential basis `ψ_k`, coefficients computed
//! either by quadrature on the fundamental domain or from `f̂` sampled at
//! the lattice radii `p = 2πρ`, reconstruction, Plancherel sums and the
//! module action `⊘`.

pub mod action;
pub mod bessel;
pub mod error;
pub mod fourier;
pub mod function;
pub mod group;
pub mod irreps;
pub mod lattice;
pub mod par;
pub mod quadrature;
pub mod series;
pub mod testfns;

pub use error::{Error, Result};
pub use fourier::{char_coeff, convolve_direct, fourier_matrix, inverse_transform, FourierMatrix};
pub use function::{periodize, CosetFunction, GroupFunction, Periodized};
pub use group::{coset_project, compose, from_polar, inverse, to_polar, CosetPoint, GroupElement, PolarElement};
pub use irreps::{apply_irrep, character, matrix_element, matrix_element_oracle, CircleVector, RadialFrequency};
pub use lattice::{enumerate_shells, rho_phi, shell_kernel, LatticeShell, LatticeVector};
pub use quadrature::{integrate_haar, QuadratureSpec, SupportBox, ThetaRange};
pub use series::{
    basis_eval, coeff_direct, coeff_spectral, plancherel_direct, plancherel_spectral, reconstruct, BasisIndexBox,
    CosetCoefficients, Convention, SpectralTable, EXPECTED_LAMBDA,
};
pub use action::{involution, norm_via_convolution, oslash, oslash_series};
