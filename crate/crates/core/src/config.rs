//! Frozen numerical constants, read from `constants.toml`.

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monopole::Grid;
use crate::scalar::{parse_rational, HalfInt};

/// Environment variable naming an override constants file.
pub const CONSTANTS_ENV: &str = "DKFORMS_CONSTANTS";

const DEFAULT: &str = include_str!("../constants.toml");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub haar_volume: f64,
    pub constraint_sign: i32,
    pub grid: String,
    pub mass: f64,
    pub k_wave: f64,
    pub radial_sectors: Vec<String>,
    pub k_values: Vec<String>,
    pub fd_tolerance: f64,
    pub quadrature_tolerance: f64,
    pub norm_tolerance: f64,
    pub seed: u64,
    pub spinor_samples: usize,
    pub form_samples: usize,
    pub max_degree: u32,
}

impl Default for Constants {
    fn default() -> Self {
        Constants::parse(DEFAULT).expect("bundled constants are valid")
    }
}

impl Constants {
    pub fn parse(text: &str) -> Result<Self> {
        let c: Constants = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Constants::parse(&text)
    }

    /// The bundled constants, or the file named by `DKFORMS_CONSTANTS`.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(p) if !p.is_empty() => Constants::from_file(Path::new(&p)),
            _ => Ok(Constants::default()),
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("haar_volume", self.haar_volume),
            ("mass", self.mass),
            ("k_wave", self.k_wave),
            ("fd_tolerance", self.fd_tolerance),
            ("quadrature_tolerance", self.quadrature_tolerance),
            ("norm_tolerance", self.norm_tolerance),
        ];
        for (name, x) in positive {
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {x}")));
            }
        }
        if self.constraint_sign.abs() != 1 {
            return Err(Error::Config(format!(
                "constraint_sign must be 1 or -1, got {}",
                self.constraint_sign
            )));
        }
        self.grid()?;
        self.k_values()?;
        self.radial_sectors()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        self.grid.parse()
    }

    pub fn k_values(&self) -> Result<Vec<BigRational>> {
        self.k_values
            .iter()
            .map(|s| match parse_rational(s) {
                Ok(k) if k > BigRational::from_integer(0.into()) => Ok(k),
                _ => Err(Error::Config(format!(
                    "k value `{s}` is not a positive rational"
                ))),
            })
            .collect()
    }

    /// `(l, n)` pairs written as `"l,n"`.
    pub fn radial_sectors(&self) -> Result<Vec<(HalfInt, HalfInt)>> {
        self.radial_sectors
            .iter()
            .map(|s| {
                let bad = || Error::Config(format!("radial sector `{s}` is not of the form `l,n`"));
                let (l, n) = s.split_once(',').ok_or_else(bad)?;
                Ok((
                    l.trim().parse().map_err(|_| bad())?,
                    n.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_constants() {
        let c = Constants::default();
        assert!((c.haar_volume - 8.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert_eq!(c.grid().unwrap().len(), 9501);
        assert_eq!(
            c.radial_sectors().unwrap()[1],
            (HalfInt::ONE, HalfInt::HALF)
        );
    }

    #[test]
    fn rejects_bad_values() {
        let text = DEFAULT.replace("fd_tolerance = 1e-6", "fd_tolerance = -1");
        assert!(matches!(Constants::parse(&text), Err(Error::Config(_))));
        let text = DEFAULT.replace("grid = \"0.5:10:0.001\"", "grid = \"3:1:0.1\"");
        assert!(Constants::parse(&text).is_err());
        assert!(Constants::parse("haar_volume = 1").is_err());
    }
}
