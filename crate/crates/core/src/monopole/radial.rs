use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::scalar::HalfInt;

/// A radial sector `(l, n)` with mass and wave number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialCase {
    pub l: HalfInt,
    pub n: HalfInt,
    pub mass: f64,
    pub k_wave: f64,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

impl RadialCase {
    pub fn new(l: HalfInt, n: HalfInt, mass: f64, k_wave: f64) -> Result<Self> {
        if l.twice() < 0 {
            return Err(Error::InvalidParameter(format!(
                "l must be non-negative, got {l}"
            )));
        }
        positive("mass", mass)?;
        positive("k_wave", k_wave)?;
        Ok(RadialCase { l, n, mass, k_wave })
    }

    /// Builds the case from an energy; `E ≤ 0` has no Bessel solution.
    pub fn from_energy(l: HalfInt, n: HalfInt, mass: f64, energy: f64) -> Result<Self> {
        positive("mass", mass)?;
        if !(energy.is_finite() && energy > 0.0) {
            return Err(Error::NoSolution(energy));
        }
        RadialCase::new(l, n, mass, (2.0 * mass * energy).sqrt())
    }

    /// `μ = √((l+½)² − n²)`.
    pub fn mu(&self) -> Result<f64> {
        let bound = self.l + HalfInt::HALF;
        if self.n.abs() > bound {
            return Err(Error::UnsupportedSector {
                n: self.n.abs().to_string(),
                bound: bound.to_string(),
            });
        }
        let (b, n) = (bound.to_f64(), self.n.to_f64());
        Ok((b * b - n * n).sqrt())
    }

    pub fn energy(&self) -> f64 {
        self.k_wave * self.k_wave / (2.0 * self.mass)
    }

    /// `u(r) = √r J_μ(k r)`.
    pub fn solution(&self, r: f64) -> Result<f64> {
        Ok(r.sqrt() * bessel_j(self.mu()?, self.k_wave * r)?)
    }
}

/// An equally spaced grid `start:stop:step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let ok = [start, stop, step].iter().all(|x| x.is_finite())
            && start > 0.0
            && stop > start
            && step > 0.0;
        if !ok {
            return Err(Error::InvalidGrid(format!(
                "need 0 < start < stop and step > 0, got {start}:{stop}:{step}"
            )));
        }
        if start - 2.0 * step <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "start {start} is too close to 0 for step {step}"
            )));
        }
        Ok(Grid { start, stop, step })
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.start + i as f64 * self.step)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrid(format!(
                "expected START:STOP:STEP, got `{s}`"
            )));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("bad number `{p}` in `{s}`")))
        };
        Grid::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialPoint {
    pub r: f64,
    pub u: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialReport {
    pub case: RadialCase,
    pub mu: f64,
    pub energy: f64,
    pub grid: Grid,
    /// Largest `|residual|` on the grid divided by `max |u|`.
    pub max_residual: f64,
    pub points: Vec<RadialPoint>,
}

/// Residual of `−u''/2m + (l(l+1) − n²) u / 2m r² − E u` for the Bessel
/// solution, with `u''` from the five-point stencil.
pub fn radial_residual(case: &RadialCase, grid: &Grid) -> Result<RadialReport> {
    let mu = case.mu()?;
    let energy = case.energy();
    let (l, n) = (case.l.to_f64(), case.n.to_f64());
    let centrifugal = l * (l + 1.0) - n * n;
    let h = grid.step;
    let mut raw = Vec::with_capacity(grid.len());
    let mut u_max = 0.0f64;
    for r in grid.points() {
        let u = |t: f64| case.solution(t);
        let (um2, um1, u0, up1, up2) = (
            u(r - 2.0 * h)?,
            u(r - h)?,
            u(r)?,
            u(r + h)?,
            u(r + 2.0 * h)?,
        );
        let upp = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
        let res =
            -upp / (2.0 * case.mass) + centrifugal / (2.0 * case.mass * r * r) * u0 - energy * u0;
        u_max = u_max.max(u0.abs());
        raw.push((r, u0, res));
    }
    if u_max == 0.0 {
        return Err(Error::InvalidGrid("solution vanishes on the grid".into()));
    }
    let points: Vec<RadialPoint> = raw
        .into_iter()
        .map(|(r, u, res)| RadialPoint {
            r,
            u,
            residual: res.abs() / u_max,
        })
        .collect();
    let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(RadialReport {
        case: *case,
        mu,
        energy,
        grid: *grid,
        max_residual,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_particle_index() {
        let c = RadialCase::new(HalfInt::ONE, HalfInt::ZERO, 1.0, 1.0).unwrap();
        assert_eq!(c.mu().unwrap(), 1.5);
        let c = RadialCase::new(HalfInt::ONE, HalfInt::from_twice(4), 1.0, 1.0).unwrap();
        assert!(matches!(c.mu(), Err(Error::UnsupportedSector { .. })));
    }

    #[test]
    fn grid_parsing() {
        let g: Grid = "0.5:10:0.001".parse().unwrap();
        assert_eq!(g.len(), 9501);
        assert!("1:0:0.1".parse::<Grid>().is_err());
        assert!("0.001:1:0.01".parse::<Grid>().is_err());
        assert!("a:b".parse::<Grid>().is_err());
    }

    #[test]
    fn negative_energy_has_no_solution() {
        assert!(matches!(
            RadialCase::from_energy(HalfInt::ONE, HalfInt::ZERO, 1.0, -1.0),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn bessel_solution_satisfies_radial_equation() {
        let c = RadialCase::new(HalfInt::ONE, HalfInt::HALF, 1.0, 1.0).unwrap();
        let r = radial_residual(&c, &"0.5:10:0.001".parse().unwrap()).unwrap();
        assert!(r.max_residual < 1e-6, "{}", r.max_residual);
        assert!(r.max_residual > 1e-12, "{}", r.max_residual);
    }
}
