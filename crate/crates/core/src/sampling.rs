//! Compactly supported sampling functions with Fourier transform
//! `f̂(ω) = exp(-|ω|^α)`, `0 < α < 1`.
//!
//! Only the frequency-domain form and the switch-on asymptotics
//! `f(t) ~ t^{-μ} exp(-w t^{-ν})` are modelled.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    pub alpha: f64,
    /// `f(0)` in τ = 1 units.
    pub f0: f64,
    pub tau: f64,
}

impl SamplingSpec {
    /// `f(0) = π/2`, `τ = 1`.
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_f0(alpha, FRAC_PI_2)
    }

    pub fn with_f0(alpha: f64, f0: f64) -> Result<Self> {
        let spec = Self { alpha, f0, tau: 1.0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Domain {
                what: "sampling alpha (0 < alpha < 1)",
                value: self.alpha,
            });
        }
        if !(self.f0 > 0.0) {
            return Err(Error::Domain {
                what: "f(0)",
                value: self.f0,
            });
        }
        if !(self.tau > 0.0) {
            return Err(Error::Domain {
                what: "tau",
                value: self.tau,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwitchOnParams {
    pub mu: f64,
    pub nu: f64,
    pub w: f64,
}

/// `exp(-|ω|^α)`, ω in units of 1/τ.
pub fn fhat(spec: &SamplingSpec, omega: f64) -> f64 {
    (-omega.abs().powf(spec.alpha)).exp()
}

/// `ln f̂(ω)`.
pub fn ln_fhat(spec: &SamplingSpec, omega: f64) -> f64 {
    -omega.abs().powf(spec.alpha)
}

pub fn switch_on_params(spec: &SamplingSpec) -> SwitchOnParams {
    let a = spec.alpha;
    SwitchOnParams {
        mu: (2.0 - a) / (2.0 * (1.0 - a)),
        nu: a / (1.0 - a),
        w: (1.0 - a) * a.powf(a / (1.0 - a)),
    }
}

/// Unnormalized `t^{-μ} exp(-w t^{-ν})` near the switch-on, `t > 0` in τ units.
pub fn switch_on_profile(spec: &SamplingSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain {
            what: "switch-on time",
            value: t,
        });
    }
    let p = switch_on_params(spec);
    Ok((-p.mu * t.ln() - p.w * t.powf(-p.nu)).exp())
}

/// Location of the interior maximum of the switch-on profile, `(νw/μ)^{1/ν}`.
pub fn switch_on_peak(spec: &SamplingSpec) -> f64 {
    let p = switch_on_params(spec);
    (p.nu * p.w / p.mu).powf(1.0 / p.nu)
}
