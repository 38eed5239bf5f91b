//! JSON configuration schema for evolution runs. Unknown fields are
//! rejected and missing fields are reported by name.

use std::path::Path;

use serde::{Deserialize, Serialize};

use dirac_coulomb_core::boundary::ChargeConfig;
use dirac_coulomb_core::evolution::{
    Component, EvolutionConfig, RadialField, RadialGrid, Scheme,
};
use dirac_coulomb_core::harmonics::AngularMode;
use dirac_coulomb_core::C64;

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveSpec {
    pub z: f64,
    pub kappa: i32,
    /// Half-integer written as a decimal (e.g. 0.5).
    pub mu: f64,
    pub grid: GridSpec,
    pub dt: f64,
    pub t_final: f64,
    pub scheme: SchemeSpec,
    pub data: DataSpec,
    pub detectors: Vec<f64>,
    pub output: OutputSpec,
    pub fit_window: (f64, f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub r_max: f64,
    pub dr: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeSpec {
    CrankNicolson,
    Leapfrog,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSpec {
    /// `gaussian` or `bump`.
    pub profile: String,
    /// `plus`, `minus`, or `both`.
    pub component: String,
    pub center: f64,
    /// Gaussian sigma, or bump halfwidth.
    pub width: f64,
    /// Truncation radius in widths (gaussian only; ignored for bump).
    #[serde(default = "default_cut")]
    pub cut_widths: f64,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
}

fn default_cut() -> f64 {
    8.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub ds: f64,
    pub extrapolation_order: usize,
    /// Full field snapshot cadence in steps (0 disables snapshots).
    pub snapshot_every: usize,
}

impl EvolveSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let body = std::fs::read_to_string(path)?;
        serde_json::from_str(&body)
            .map_err(|e| CliError::Usage(format!("config schema error in {}: {e}", path.display())))
    }

    pub fn scheme(&self) -> Scheme {
        match self.scheme {
            SchemeSpec::CrankNicolson => Scheme::CrankNicolson,
            SchemeSpec::Leapfrog => Scheme::Leapfrog,
        }
    }

    pub fn mode(&self) -> Result<AngularMode, CliError> {
        let two_mu = (2.0 * self.mu).round();
        if (2.0 * self.mu - two_mu).abs() > 1e-9 {
            return Err(CliError::Usage(format!(
                "mu = {} is not a half-integer",
                self.mu
            )));
        }
        AngularMode::new(self.kappa, two_mu as i32)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn build(&self) -> Result<(EvolutionConfig, RadialField), CliError> {
        let charge = ChargeConfig::new(self.z)?;
        let mode = self.mode()?;
        let grid = RadialGrid::staggered(self.grid.r_max, self.grid.dr)?;
        let component = match self.data.component.as_str() {
            "plus" => Component::Plus,
            "minus" => Component::Minus,
            "both" => Component::Both,
            other => {
                return Err(CliError::Usage(format!(
                    "data.component must be plus|minus|both, got `{other}`"
                )))
            }
        };
        let amplitude = C64::new(self.data.amplitude_re, self.data.amplitude_im);
        let data = match self.data.profile.as_str() {
            "gaussian" => RadialField::gaussian(
                grid,
                mode,
                component,
                self.data.center,
                self.data.width,
                self.data.cut_widths,
                amplitude,
            )?,
            "bump" => RadialField::bump(
                grid,
                mode,
                component,
                self.data.center,
                self.data.width,
                amplitude,
            )?,
            other => {
                return Err(CliError::Usage(format!(
                    "data.profile must be gaussian|bump, got `{other}`"
                )))
            }
        };
        let config = EvolutionConfig {
            charge,
            mode,
            dt: self.dt,
            t_final: self.t_final,
            scheme: self.scheme(),
            snapshot_every: self.output.snapshot_every,
        };
        Ok((config, data))
    }
}
