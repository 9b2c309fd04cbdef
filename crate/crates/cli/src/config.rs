//! Run configuration, stored as TOML (`key = value` lines under
//! `[section]` headers).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use se2_coset::fourier::InversionConfig;
use se2_coset::QuadratureSpec;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub quadrature: QuadratureSection,
    pub series: SeriesSection,
    pub inversion: InversionSection,
    pub sampling: SamplingSection,
    pub acceptance: AcceptanceSection,
    pub tolerances: Tolerances,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    /// Nodes per axis.
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSection {
    pub k_max: usize,
    pub rho_max: f64,
    /// Row band for the spectral n-sums; 0 selects the margin rule.
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InversionSection {
    pub p_max: f64,
    pub radial_nodes: usize,
    pub band: usize,
    pub tail_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSection {
    pub seed: u64,
    /// Rotation mode of the `mode` builtin.
    pub mode_k0: i64,
    pub matrix_element_samples: usize,
    pub round_trip_points: usize,
    pub reconstruction_points: usize,
    pub convolution_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcceptanceSection {
    /// Criterion groups to run, by number.
    pub criteria: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub matrix_element: f64,
    pub round_trip: f64,
    pub lambda_spread: f64,
    pub reconstruction: f64,
    pub plancherel: f64,
    pub shell_fraction: f64,
    pub convolution: f64,
    pub product_law: f64,
    pub zero_frequency: f64,
    pub group_axioms: f64,
    pub bessel_recurrence: f64,
    pub bessel_normalization: f64,
    pub weil: f64,
    pub parseval: f64,
    pub coset_action: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub report: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quadrature: QuadratureSection { grid: 64 },
            series: SeriesSection { k_max: 4, rho_max: 6.0, band: 0 },
            inversion: InversionSection {
                p_max: 40.0,
                radial_nodes: 200,
                band: 24,
                tail_tolerance: 1e-2,
            },
            sampling: SamplingSection {
                seed: 20_240_601,
                mode_k0: 2,
                matrix_element_samples: 500,
                round_trip_points: 20,
                reconstruction_points: 50,
                convolution_points: 5,
            },
            acceptance: AcceptanceSection {
                criteria: (1..=9).collect(),
            },
            tolerances: Tolerances {
                matrix_element: 1e-8,
                round_trip: 1e-3,
                lambda_spread: 1e-4,
                reconstruction: 1e-2,
                plancherel: 1e-2,
                shell_fraction: 1e-6,
                convolution: 1e-2,
                product_law: 1e-6,
                zero_frequency: 1e-3,
                group_axioms: 1e-12,
                bessel_recurrence: 1e-10,
                bessel_normalization: 1e-10,
                weil: 1e-8,
                parseval: 1e-6,
                coset_action: 1e-10,
            },
            output: OutputSection {
                dir: PathBuf::from("out"),
                report: "acceptance.json".into(),
            },
        }
    }
}

impl RunConfig {
    /// Parses a full configuration. Every key must be present.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        RunConfig::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn print(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("quadrature.grid", self.quadrature.grid),
            ("inversion.radial_nodes", self.inversion.radial_nodes),
            ("inversion.band", self.inversion.band),
            ("sampling.matrix_element_samples", self.sampling.matrix_element_samples),
            ("sampling.round_trip_points", self.sampling.round_trip_points),
            ("sampling.reconstruction_points", self.sampling.reconstruction_points),
            ("sampling.convolution_points", self.sampling.convolution_points),
        ];
        for (key, v) in sizes {
            if v == 0 {
                return Err(CliError::Config(format!("{key} must be positive")));
            }
        }
        if self.quadrature.grid < 2 {
            return Err(CliError::Config("quadrature.grid must be at least 2".into()));
        }
        for (key, v) in [("series.rho_max", self.series.rho_max), ("inversion.p_max", self.inversion.p_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{key} must be positive and finite")));
            }
        }
        for (key, v) in self.tolerances.entries() {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("tolerances.{key} must be finite and non-negative")));
            }
        }
        if !(self.inversion.tail_tolerance > 0.0) {
            return Err(CliError::Config("inversion.tail_tolerance must be positive".into()));
        }
        if let Some(c) = self.acceptance.criteria.iter().find(|c| !(1..=9).contains(*c)) {
            return Err(CliError::Config(format!("acceptance.criteria: no criterion {c}")));
        }
        Ok(())
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec::uniform(self.quadrature.grid)
    }

    pub fn series_band(&self) -> Option<usize> {
        (self.series.band > 0).then_some(self.series.band)
    }

    pub fn inversion(&self) -> InversionConfig {
        InversionConfig {
            p_max: self.inversion.p_max,
            radial_nodes: self.inversion.radial_nodes,
            band: self.inversion.band,
            tail_tolerance: self.inversion.tail_tolerance,
        }
    }
}

impl Tolerances {
    pub fn entries(&self) -> [(&'static str, f64); 15] {
        [
            ("matrix_element", self.matrix_element),
            ("round_trip", self.round_trip),
            ("lambda_spread", self.lambda_spread),
            ("reconstruction", self.reconstruction),
            ("plancherel", self.plancherel),
            ("shell_fraction", self.shell_fraction),
            ("convolution", self.convolution),
            ("product_law", self.product_law),
            ("zero_frequency", self.zero_frequency),
            ("group_axioms", self.group_axioms),
            ("bessel_recurrence", self.bessel_recurrence),
            ("bessel_normalization", self.bessel_normalization),
            ("weil", self.weil),
            ("parseval", self.parseval),
            ("coset_action", self.coset_action),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::parse(&c.print()).unwrap(), c);
    }

    #[test]
    fn missing_key_is_named() {
        let text = RunConfig::default().print().replace("k_max = 4\n", "");
        let err = RunConfig::parse(&text).unwrap_err().to_string();
        assert!(err.contains("k_max"), "{err}");
    }

    #[test]
    fn syntax_error_has_line() {
        let mut text = RunConfig::default().print();
        text.push_str("oops ==\n");
        let err = RunConfig::parse(&text).unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn rejects_negative_tolerance() {
        let mut c = RunConfig::default();
        c.tolerances.weil = -1.0;
        assert!(RunConfig::parse(&c.print()).is_err());
        c.tolerances.weil = 0.0;
        assert!(RunConfig::parse(&c.print()).is_ok());
    }
}
