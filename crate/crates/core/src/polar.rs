//! Force fluctuations on a neutral, polarizable particle.
//!
//! The particle couples through its static polarizability `α0`; the
//! relevant operator is `(Ë × B̈)^z`, with `p = 7`. Widths are in fm.

use crate::barrier::{check_speed, CrossoverProblem, CrossoverResult};
use crate::error::{Error, Result};
use crate::sampling::SamplingSpec;
use crate::tail::{tail_coefficients, OperatorKind};
use crate::units::CONSTANTS;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarizableParticle {
    pub name: String,
    /// MeV.
    pub mass: f64,
    /// Polarizability volume, fm³.
    pub alpha0: f64,
    /// Size scale, fm.
    pub r0: f64,
}

impl PolarizableParticle {
    /// `r0` defaults to `α0^{1/3}`.
    pub fn new(name: impl Into<String>, mass: f64, alpha0: f64, r0: Option<f64>) -> Result<Self> {
        let p = Self {
            name: name.into(),
            mass,
            alpha0,
            r0: r0.unwrap_or_else(|| alpha0.cbrt()),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("mass", self.mass), ("polarizability", self.alpha0), ("size r0", self.r0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(())
    }

    /// `m r0` in natural units.
    fn m_r0(&self) -> f64 {
        self.mass * self.r0 / CONSTANTS.hbar_c
    }

    /// `r0⁶/α0²`, equal to 1 when `r0 = α0^{1/3}`.
    fn shape_factor(&self) -> f64 {
        self.r0.powi(6) / (self.alpha0 * self.alpha0)
    }
}

/// Rayleigh cross section `α0² ω⁴/(6π)` in MeV⁻², for `ω` in MeV.
pub fn rayleigh_sigma(particle: &PolarizableParticle, omega: f64) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::Domain { what: "frequency", value: omega });
    }
    let alpha0 = particle.alpha0 / CONSTANTS.hbar_c.powi(3);
    Ok(alpha0 * alpha0 * omega.powi(4) / (6.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarHop {
    /// `3π m d⁷/(α0² v0⁶)`.
    pub x: f64,
    /// `v0 r0 / d`.
    pub s: f64,
    /// `x s⁷ = 3π m v0 r0⁷/α0²`, independent of `d`.
    pub x_s7: f64,
    /// Rounded `10 m d⁷/(r0⁶ v0⁶)`.
    pub x_rough: f64,
    /// Rounded `10 m v0 r0`.
    pub x_s7_rough: f64,
}

/// `x = K d⁷` coefficient in fm⁻⁷.
fn polar_x_coefficient(particle: &PolarizableParticle, v0: f64) -> f64 {
    3.0 * PI * particle.mass / (CONSTANTS.hbar_c * particle.alpha0 * particle.alpha0 * v0.powi(6))
}

pub fn polar_hop_variable(particle: &PolarizableParticle, d: f64, v0: f64) -> Result<PolarHop> {
    particle.validate()?;
    check_speed(v0)?;
    if !(d > 0.0) {
        return Err(Error::Domain { what: "width d", value: d });
    }
    let x = polar_x_coefficient(particle, v0) * d.powi(7);
    let s = v0 * particle.r0 / d;
    let m_r0 = particle.m_r0();
    Ok(PolarHop {
        x,
        s,
        x_s7: 3.0 * PI * m_r0 * v0 * particle.shape_factor(),
        x_rough: 10.0 * particle.mass / CONSTANTS.hbar_c * d.powi(7) / (particle.r0.powi(6) * v0.powi(6)),
        x_s7_rough: 10.0 * m_r0 * v0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarValidity {
    /// Largest `v0` with `x s⁷ <= 1`.
    pub v0_max: f64,
    /// Rounded bound `1/(10 m r0)`.
    pub v0_max_rough: f64,
}

pub fn polar_validity(particle: &PolarizableParticle) -> Result<PolarValidity> {
    particle.validate()?;
    let m_r0 = particle.m_r0();
    Ok(PolarValidity {
        v0_max: 1.0 / (3.0 * PI * m_r0 * particle.shape_factor()),
        v0_max_rough: 1.0 / (10.0 * m_r0),
    })
}

/// Crossover problem with the `R^z` tail, `x ∝ d⁷` and `G = 2 v0 m d`.
pub fn polar_problem(particle: &PolarizableParticle, alpha: f64, v0: f64) -> Result<CrossoverProblem> {
    particle.validate()?;
    check_speed(v0)?;
    let coeff = tail_coefficients(&SamplingSpec::new(alpha)?, &OperatorKind::polarizable_force())?;
    Ok(CrossoverProblem {
        coeff,
        x_coef: polar_x_coefficient(particle, v0),
        x_pow: 7.0,
        g_coef: 2.0 * v0 * particle.mass / CONSTANTS.hbar_c,
    })
}

/// Solve `F(x(d)) = G(d)` for widths `d_range` in fm.
pub fn polar_crossover(particle: &PolarizableParticle, alpha: f64, v0: f64, d_range: (f64, f64)) -> Result<CrossoverResult> {
    polar_problem(particle, alpha, v0)?.solve(d_range)
}

/// Default width range for polarizable-particle scans, fm.
pub const DEFAULT_D_RANGE_FM: (f64, f64) = (0.1, 1e4);
