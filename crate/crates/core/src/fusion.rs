//! Sub-barrier fusion: the Hill–Wheeler tunneling cross section and the
//! competing fluctuation-driven cross section summed over partial waves.
//!
//! The barrier for partial wave `l` is an inverted parabola of height
//! `E_l = E0 + l(l+1)/(2μR0²)` and curvature `ω0`. Its width at energy `E`
//! grows with `l` as `d_l = d0 (1 + l(l+1)ξ)^{1/2}`, so the hop variable
//! grows as `x_l = x0 (1 + l(l+1)ξ)^{3/2}`.

use crate::barrier::check_speed;
use crate::error::{Error, Result};
use crate::numerics::{brent_root, ln_inc_gamma_upper_any, log_sum_exp, pairwise_sum, ToleranceSpec};
use crate::sampling::SamplingSpec;
use crate::tail::{tail_coefficients, OperatorKind, TailCoefficients};
use crate::units::{convert, thompson_cross_section, Unit, CONSTANTS};
use serde::Serialize;
use std::f64::consts::PI;

/// Partial waves summed by default; the sums converge after about 10³.
pub const DEFAULT_L_MAX: usize = 5000;
/// Search interval for the α fit.
pub const FIT_ALPHA_RANGE: (f64, f64) = (0.05, 0.95);
pub const DEFAULT_V0: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionSystem {
    pub name: String,
    /// Reduced mass, MeV.
    pub mu: f64,
    pub z_proj: u32,
    pub z_target: u32,
    /// Barrier height, MeV.
    pub e0: f64,
    /// Barrier radius, fm.
    pub r0: f64,
    /// Barrier curvature `ħω0`, MeV.
    pub omega0: f64,
    /// Centre-of-mass energy, MeV.
    pub e: f64,
    pub v0: f64,
    /// Measured cross section and its uncertainty, mb.
    pub sigma_exp: Option<f64>,
    pub sigma_exp_err: Option<f64>,
}

impl FusionSystem {
    /// Reduced mass from mass numbers, `A1 A2/(A1 + A2)` u.
    pub fn reduced_mass_u(a1: f64, a2: f64) -> f64 {
        a1 * a2 / (a1 + a2)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("reduced mass", self.mu),
            ("barrier height E0", self.e0),
            ("barrier radius R0", self.r0),
            ("barrier curvature omega0", self.omega0),
            ("collision energy E", self.e),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain { what, value: v });
            }
        }
        if self.z_proj == 0 {
            return Err(Error::InvalidParameter("projectile charge must be >= 1".into()));
        }
        check_speed(self.v0)?;
        if let Some(s) = self.sigma_exp {
            if !(s > 0.0) {
                return Err(Error::Domain {
                    what: "experimental cross section",
                    value: s,
                });
            }
        }
        if let Some(e) = self.sigma_exp_err {
            if !(e >= 0.0) {
                return Err(Error::Domain {
                    what: "experimental uncertainty",
                    value: e,
                });
            }
        }
        Ok(())
    }

    /// `k² = 2μE`, MeV².
    pub fn k_sq(&self) -> f64 {
        2.0 * self.mu * self.e
    }

    fn r0_nat(&self) -> f64 {
        self.r0 / CONSTANTS.hbar_c
    }

    /// `E_l = E0 + l(l+1)/(2μR0²)`.
    pub fn barrier_height(&self, l: usize) -> f64 {
        let r0 = self.r0_nat();
        let ll = (l * (l + 1)) as f64;
        self.e0 + ll / (2.0 * self.mu * r0 * r0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FusionDerived {
    /// Wavenumber `√(2μE)`, MeV.
    pub k: f64,
    /// l = 0 barrier width at energy E, fm.
    pub d0: f64,
    /// `4/(μ ω0 R0 d0)²`.
    pub xi: f64,
    /// l = 0 hop variable `μ d0³/(2 σ_T v0²)`.
    pub x0: f64,
}

pub fn derive_parameters(system: &FusionSystem) -> Result<FusionDerived> {
    system.validate()?;
    if system.e >= system.e0 {
        return Err(Error::AboveBarrier {
            energy: system.e,
            barrier_max: system.e0,
        });
    }
    let mu = system.mu;
    let d0_nat = (2.0 / system.omega0) * (2.0 * (system.e0 - system.e) / mu).sqrt();
    let r0_nat = system.r0_nat();
    let xi = 4.0 / (mu * system.omega0 * r0_nat * d0_nat).powi(2);
    let sigma_t = thompson_cross_section(system.z_proj as i32, mu)?;
    let x0 = mu * d0_nat.powi(3) / (2.0 * sigma_t * system.v0 * system.v0);
    Ok(FusionDerived {
        k: system.k_sq().sqrt(),
        d0: convert(d0_nat, Unit::InvMeV, Unit::Fm)?,
        xi,
        x0,
    })
}

/// `1/(1 + e^t)` without overflow.
fn logistic_complement(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + t.exp())
    }
}

/// Hill–Wheeler transmission `1/(1 + exp[2π(E_l - E)/ω0])` of partial wave `l`.
pub fn hill_wheeler_transmission(system: &FusionSystem, l: usize) -> f64 {
    logistic_complement(2.0 * PI * (system.barrier_height(l) - system.e) / system.omega0)
}

/// `σ = (π/k²) Σ (2l+1) T_l` in mb, stopping once the barrier lies above `E`
/// and a term drops below 1e-12 of the running sum.
pub fn hill_wheeler_sigma(system: &FusionSystem, l_max: usize) -> Result<f64> {
    system.validate()?;
    if l_max < 1 {
        return Err(Error::InvalidParameter("l_max must be >= 1".into()));
    }
    let mut terms = Vec::new();
    let mut running = 0.0;
    for l in 0..=l_max {
        let t = (2 * l + 1) as f64 * hill_wheeler_transmission(system, l);
        terms.push(t);
        running += t;
        if system.barrier_height(l) > system.e && t < 1e-12 * running {
            break;
        }
    }
    let sigma = PI / system.k_sq() * pairwise_sum(&terms);
    convert(sigma, Unit::InvMeV2, Unit::Millibarn)
}

fn flux_coefficients(alpha: f64) -> Result<TailCoefficients> {
    tail_coefficients(&SamplingSpec::new(alpha)?, &OperatorKind::momentum_flux())
}

fn check_sum_inputs(xi: f64, x0: f64) -> Result<()> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::Domain { what: "xi", value: xi });
    }
    if !(x0 >= 1.0 && x0.is_finite()) {
        return Err(Error::OutOfAsymptoticRange { x: x0 });
    }
    Ok(())
}

/// `ln P_l`, the per-wave exceedance `(c0/(ac)) y^{1+b-c} e^{-a y^c}` with
/// `y = x0 (1 + l(l+1)ξ)^{3/2}`, capped at probability 1.
fn ln_wave_probability(coeff: &TailCoefficients, xi: f64, x0: f64, l: usize) -> f64 {
    let y = x0 * (1.0 + (l * (l + 1)) as f64 * xi).powf(1.5);
    let ln_p = coeff.ln_prefactor() + coeff.exceedance_power() * y.ln() - coeff.a * y.powf(coeff.c);
    ln_p.min(0.0)
}

/// Per-wave probabilities `P_l`, l = 0..=l_max.
pub fn wave_probabilities(xi: f64, x0: f64, alpha: f64, l_max: usize) -> Result<Vec<f64>> {
    check_sum_inputs(xi, x0)?;
    let coeff = flux_coefficients(alpha)?;
    Ok((0..=l_max).map(|l| ln_wave_probability(&coeff, xi, x0, l).exp()).collect())
}

/// `ln S` with `S = Σ_{l=0}^{l_max} (2l+1) P_l`.
pub fn ln_fluctuation_sum(xi: f64, x0: f64, alpha: f64, l_max: usize) -> Result<f64> {
    check_sum_inputs(xi, x0)?;
    let coeff = flux_coefficients(alpha)?;
    let ln_terms: Vec<f64> = (0..=l_max)
        .map(|l| ((2 * l + 1) as f64).ln() + ln_wave_probability(&coeff, xi, x0, l))
        .collect();
    Ok(log_sum_exp(&ln_terms))
}

pub fn fluctuation_sum(xi: f64, x0: f64, alpha: f64, l_max: usize) -> Result<f64> {
    ln_fluctuation_sum(xi, x0, alpha, l_max).map(f64::exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluctuationCrossSection {
    /// `S = k² σ / π`.
    pub s: f64,
    pub sigma_mb: f64,
}

/// Fluctuation-driven cross section of a system at sampling parameter α.
pub fn fluctuation_s(system: &FusionSystem, alpha: f64, l_max: usize) -> Result<FluctuationCrossSection> {
    let d = derive_parameters(system)?;
    let s = fluctuation_sum(d.xi, d.x0, alpha, l_max)?;
    Ok(FluctuationCrossSection {
        s,
        sigma_mb: convert(PI * s / system.k_sq(), Unit::InvMeV2, Unit::Millibarn)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralForms {
    /// Sum over `l` replaced by an integral over `l²`.
    pub s_integral: f64,
    /// Leading asymptotic term of `s_integral`.
    pub s_asymptotic: f64,
    pub ln_s_integral: f64,
    pub ln_s_asymptotic: f64,
    /// `a x0^c`, the incomplete-gamma argument.
    pub gamma_argument: f64,
    /// `(5 + 3b - 3c)/(3c)`, the incomplete-gamma shape.
    pub gamma_shape: f64,
}

/// `S_I = (2c0/(3c²ξ x0^{2/3})) a^{-(5+3b)/(3c)} Γ((5+3b-3c)/(3c), a x0^c)` and
/// `S_IA = (2c0/(3a²c²ξ)) x0^{1+b-2c} e^{-a x0^c}`.
pub fn fluctuation_s_integral(xi: f64, x0: f64, alpha: f64) -> Result<IntegralForms> {
    check_sum_inputs(xi, x0)?;
    let TailCoefficients { c, b, a, c0 } = flux_coefficients(alpha)?;
    let z = a * x0.powf(c);
    let shape = (5.0 + 3.0 * b - 3.0 * c) / (3.0 * c);
    let ln_front = (2.0 * c0 / (3.0 * c * c * xi)).ln();
    let ln_si = ln_front - (2.0 / 3.0) * x0.ln() - ((5.0 + 3.0 * b) / (3.0 * c)) * a.ln()
        + ln_inc_gamma_upper_any(shape, z)?;
    let ln_sia = ln_front - 2.0 * a.ln() + (1.0 + b - 2.0 * c) * x0.ln() - z;
    Ok(IntegralForms {
        s_integral: ln_si.exp(),
        s_asymptotic: ln_sia.exp(),
        ln_s_integral: ln_si,
        ln_s_asymptotic: ln_sia,
        gamma_argument: z,
        gamma_shape: shape,
    })
}

/// α with `S(α) = s_target`, by Brent's method on `ln S(α) - ln s_target`
/// over [`FIT_ALPHA_RANGE`].
pub fn fit_alpha_s(xi: f64, x0: f64, s_target: f64, l_max: usize) -> Result<f64> {
    if !(s_target > 0.0 && s_target.is_finite()) {
        return Err(Error::Domain {
            what: "target S",
            value: s_target,
        });
    }
    check_sum_inputs(xi, x0)?;
    let ln_target = s_target.ln();
    let g = |alpha: f64| ln_fluctuation_sum(xi, x0, alpha, l_max).map_or(f64::NAN, |v| v - ln_target);
    let (lo, hi) = FIT_ALPHA_RANGE;
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo.is_finite() && g_hi.is_finite()) || g_lo.signum() == g_hi.signum() {
        return Err(Error::FitInfeasible {
            target: s_target,
            alpha_lo: lo,
            alpha_hi: hi,
            s_lo: (g_lo + ln_target).exp(),
            s_hi: (g_hi + ln_target).exp(),
        });
    }
    let tol = ToleranceSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        max_iter: 200,
    };
    brent_root(g, lo, hi, &tol)
}

/// Target `S = k² σ / π` for a cross section in mb.
pub fn s_for_sigma(system: &FusionSystem, sigma_mb: f64) -> Result<f64> {
    Ok(system.k_sq() * convert(sigma_mb, Unit::Millibarn, Unit::InvMeV2)? / PI)
}

pub fn fit_alpha(system: &FusionSystem, target_sigma_mb: f64, l_max: usize) -> Result<f64> {
    if !(target_sigma_mb > 0.0) {
        return Err(Error::Domain {
            what: "target cross section",
            value: target_sigma_mb,
        });
    }
    let d = derive_parameters(system)?;
    fit_alpha_s(d.xi, d.x0, s_for_sigma(system, target_sigma_mb)?, l_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaFit {
    pub alpha: f64,
    pub s_target: f64,
    /// α range for σ ± uncertainty, ascending.
    pub alpha_band: Option<(f64, f64)>,
}

/// Fit to the system's measured cross section, with the ±1σ band when an
/// uncertainty is given.
pub fn fit_alpha_measured(system: &FusionSystem, l_max: usize) -> Result<AlphaFit> {
    let sigma = system
        .sigma_exp
        .ok_or_else(|| Error::InvalidParameter(format!("system `{}` has no measured cross section", system.name)))?;
    let alpha = fit_alpha(system, sigma, l_max)?;
    let alpha_band = match system.sigma_exp_err {
        Some(err) if err > 0.0 && err < sigma => {
            let a_hi_sigma = fit_alpha(system, sigma + err, l_max)?;
            let a_lo_sigma = fit_alpha(system, sigma - err, l_max)?;
            Some((a_hi_sigma.min(a_lo_sigma), a_hi_sigma.max(a_lo_sigma)))
        }
        _ => None,
    };
    Ok(AlphaFit {
        alpha,
        s_target: s_for_sigma(system, sigma)?,
        alpha_band,
    })
}
