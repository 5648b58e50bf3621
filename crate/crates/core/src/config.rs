//! Run configuration shared by the library pipelines and the CLI.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Tolerances, caps and output knobs. Defaults are the documented ones;
/// a plain-text `key=value` file can override them, and CLI flags override
/// the file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Relative residual tolerance for the root finder.
    pub root_tol: f64,
    /// Pairwise root distance treated as a multiple root.
    pub multiplicity_threshold: f64,
    /// Minimum allowed root separation while tracking a loop.
    pub collision_threshold: f64,
    /// Radius at which radial excursions stop short of a puncture.
    pub excursion_radius: f64,
    /// Rotation of the x-plane before reading off real-part crossings.
    pub rotation_theta: f64,
    /// Hurwitz orbit enumeration cap.
    pub orbit_cap: usize,
    /// Strand cap for exhaustive identity checks.
    pub identity_strand_cap: usize,
    /// Output directory for CSV/SVG artifacts.
    pub out_dir: String,
    /// Seed for randomized checks.
    pub seed: u64,
}

impl Default for RunConfig {
    // the default rotation is a configured value, not an attempt at 1/pi
    #[allow(clippy::approx_constant)]
    fn default() -> Self {
        RunConfig {
            root_tol: 1e-9,
            multiplicity_threshold: 1e-7,
            collision_threshold: 1e-4,
            excursion_radius: 0.05,
            rotation_theta: 0.3183,
            orbit_cap: 1_000_000,
            identity_strand_cap: 12,
            out_dir: ".".to_string(),
            seed: 1,
        }
    }
}

impl RunConfig {
    /// Applies `key=value` overrides from a plain-text file; `#` comments and
    /// blank lines are ignored.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::InvalidSpec {
                what: "config line",
                text: format!("{}:{}: {}", path.display(), lineno + 1, line),
            })?;
            self.apply_entry(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_entry(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidSpec {
            what: "config entry",
            text: format!("{key}={value}"),
        };
        match key {
            "root_tol" => self.root_tol = value.parse().map_err(|_| bad())?,
            "multiplicity_threshold" => {
                self.multiplicity_threshold = value.parse().map_err(|_| bad())?
            }
            "collision_threshold" => self.collision_threshold = value.parse().map_err(|_| bad())?,
            "excursion_radius" => self.excursion_radius = value.parse().map_err(|_| bad())?,
            "rotation_theta" => self.rotation_theta = value.parse().map_err(|_| bad())?,
            "orbit_cap" => self.orbit_cap = value.parse().map_err(|_| bad())?,
            "identity_strand_cap" => {
                self.identity_strand_cap = value.parse().map_err(|_| bad())?
            }
            "out_dir" => self.out_dir = value.to_string(),
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("root_tol", self.root_tol),
            ("multiplicity_threshold", self.multiplicity_threshold),
            ("collision_threshold", self.collision_threshold),
            ("excursion_radius", self.excursion_radius),
        ];
        for (name, v) in positive {
            if v <= 0.0 || v.is_nan() {
                return Err(Error::InvalidSpec {
                    what: "config entry",
                    text: format!("{name} must be positive, got {v}"),
                });
            }
        }
        if self.orbit_cap < 1 || self.identity_strand_cap < 1 {
            return Err(Error::InvalidSpec {
                what: "config entry",
                text: "caps must be at least 1".to_string(),
            });
        }
        Ok(())
    }
}
