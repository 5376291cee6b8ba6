//! Asymptotic tail `P(x) ≈ c0 x^b exp(-a x^c)` of the probability
//! distribution of a time-averaged quadratic operator, its exceedance
//! probability `P_>(x) = exp(-F(x))`, the moments that fix it, and the
//! worldline-validity bounds.
//!
//! Everything is evaluated in log form; `F` routinely exceeds 700.

use crate::error::{Error, Result};
use crate::numerics::{ln_inc_gamma_upper_any, log_gamma, quad_semiinf_ln, ToleranceSpec};
use crate::sampling::{ln_fhat, SamplingSpec};
use num_rational::Ratio;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

/// Operator family entering the moment structure `k_n = B0 B^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorKind {
    pub name: &'static str,
    /// Frequency power in the mode-sum coefficients.
    pub p: u32,
    pub b0: f64,
    pub b: f64,
    /// `P(-x) = P(x)`; halves `c0`.
    pub symmetric: bool,
}

impl OperatorKind {
    /// Time-averaged momentum flux `S^z = ∫ (E × B)^z f dt`.
    pub fn momentum_flux() -> Self {
        Self {
            name: "Sz",
            p: 3,
            b0: 4.0,
            b: 1.0 / (6.0 * PI * PI),
            symmetric: true,
        }
    }

    /// Time-averaged `(Ë × B̈)^z`, the force operator on a polarizable particle.
    pub fn polarizable_force() -> Self {
        Self {
            name: "Rz",
            p: 7,
            ..Self::momentum_flux()
        }
    }

    /// Normal-ordered `:φ̇²:` of a massless scalar.
    pub fn scalar_phidot_sq() -> Self {
        Self {
            name: "phidot2",
            p: 3,
            b0: 1.0,
            b: 1.0 / (2.0 * PI * PI),
            symmetric: false,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sz" | "s" | "flux" => Some(Self::momentum_flux()),
            "rz" | "r" | "polar" => Some(Self::polarizable_force()),
            "phidot2" | "phidot" | "scalar" => Some(Self::scalar_phidot_sq()),
            _ => None,
        }
    }

    /// Same constants with a different frequency power.
    pub fn with_power(self, p: u32) -> Self {
        Self { p, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidParameter("operator power p must be >= 1".into()));
        }
        if !(self.b0 > 0.0 && self.b > 0.0) {
            return Err(Error::InvalidParameter("operator constants B0, B must be positive".into()));
        }
        Ok(())
    }

    /// `ln k_n = ln B0 + n ln B`.
    pub fn ln_kn(&self, n: u32) -> f64 {
        self.b0.ln() + f64::from(n) * self.b.ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailCoefficients {
    pub c: f64,
    pub b: f64,
    pub a: f64,
    pub c0: f64,
}

impl TailCoefficients {
    /// `1 + b - c`, the power of `x` in `P_>`.
    pub fn exceedance_power(&self) -> f64 {
        1.0 + self.b - self.c
    }

    /// `ln(c0 / (a c))`.
    pub fn ln_prefactor(&self) -> f64 {
        (self.c0 / (self.a * self.c)).ln()
    }

    /// Shape `(1 + b)/c` of the incomplete gamma that integrates the tail.
    pub fn gamma_shape(&self) -> f64 {
        (1.0 + self.b) / self.c
    }

    /// Lower end `((1+b-c)/(ac))^{1/c}` of the region where `F` increases,
    /// when `1 + b - c > 0`.
    pub fn turning_point(&self) -> Option<f64> {
        let e = self.exceedance_power();
        (e > 0.0).then(|| (e / (self.a * self.c)).powf(1.0 / self.c))
    }
}

pub fn tail_coefficients(spec: &SamplingSpec, kind: &OperatorKind) -> Result<TailCoefficients> {
    spec.validate()?;
    kind.validate()?;
    let alpha = spec.alpha;
    let p = f64::from(kind.p);
    let two_pi_f0 = 2.0 * PI * spec.f0;

    let c = alpha / p;
    let b = c * (2.0 / alpha - p - 1.0) - 1.0;
    let a = 2.0 * (two_pi_f0 * kind.b).powf(-alpha / p);
    let mut ln_c0 = c.ln() + (b + 1.0) / c * a.ln() + kind.b0.ln() + log_gamma(p + 1.0)?
        - (p + 2.0) * alpha.ln()
        - (2.0 / alpha) * LN_2
        - 2.0 * two_pi_f0.ln();
    if kind.symmetric {
        ln_c0 -= LN_2;
    }
    Ok(TailCoefficients {
        c,
        b,
        a,
        c0: ln_c0.exp(),
    })
}

/// Exact `(c, b, 1 + b - c)` for rational `α = num/den`.
pub fn exact_exponents(num: i64, den: i64, p: u32) -> Result<(Ratio<i64>, Ratio<i64>, Ratio<i64>)> {
    if den == 0 || num <= 0 || num >= den {
        return Err(Error::InvalidParameter(format!(
            "alpha = {num}/{den} must satisfy 0 < alpha < 1"
        )));
    }
    let alpha = Ratio::new(num, den);
    let p = Ratio::from_integer(i64::from(p));
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let c = alpha / p;
    let b = (two - alpha) / p - (alpha + one);
    Ok((c, b, one + b - c))
}

fn check_tail_x(x: f64) -> Result<()> {
    if !(x >= 1.0) {
        return Err(Error::OutOfAsymptoticRange { x });
    }
    Ok(())
}

/// `ln P(x) = ln c0 + b ln x - a x^c` for `x >= 1`.
///
/// The tail is asymptotic (`x ≫ 1`); values near `x = 1` are the formula
/// continued, not the true density. Symmetric kinds use `|x|`.
pub fn ln_tail_density(coeff: &TailCoefficients, x: f64) -> Result<f64> {
    check_tail_x(x)?;
    Ok(coeff.c0.ln() + coeff.b * x.ln() - coeff.a * x.powf(coeff.c))
}

pub fn tail_density(coeff: &TailCoefficients, x: f64) -> Result<f64> {
    ln_tail_density(coeff, x).map(f64::exp)
}

/// `F(x) = a x^c - (1+b-c) ln x - ln(c0/(ac))`, so that `P_> ≈ e^{-F}`.
pub fn exceedance_exponent(coeff: &TailCoefficients, x: f64) -> Result<f64> {
    check_tail_x(x)?;
    Ok(exponent_unchecked(coeff, x))
}

pub(crate) fn exponent_unchecked(coeff: &TailCoefficients, x: f64) -> f64 {
    coeff.a * x.powf(coeff.c) - coeff.exceedance_power() * x.ln() - coeff.ln_prefactor()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exceedance {
    /// `ln P_>(x)` from the exact tail integral (incomplete gamma).
    pub ln_gamma_form: f64,
    /// `ln P_>(x) = -F(x)` from the leading asymptotic term.
    pub ln_algebraic: f64,
    /// `F(x)`.
    pub exponent: f64,
}

impl Exceedance {
    pub fn probability(&self) -> f64 {
        self.ln_gamma_form.exp()
    }

    /// Relative disagreement of the two forms; a proxy for how deep in
    /// the asymptotic region `x` is.
    pub fn form_disagreement(&self) -> f64 {
        (self.ln_algebraic - self.ln_gamma_form).exp_m1().abs()
    }
}

/// `P_>(x) = ∫_x^∞ P(y) dy` in both the incomplete-gamma and algebraic forms.
///
/// The integral of `c0 y^b e^{-a y^c}` is
/// `c0 / (c a^{(1+b)/c}) · Γ((1+b)/c, a x^c)`, whose leading asymptotic term
/// is `(c0/(ac)) x^{1+b-c} e^{-a x^c} = e^{-F(x)}`.
pub fn cumulative_exceedance(coeff: &TailCoefficients, x: f64) -> Result<Exceedance> {
    check_tail_x(x)?;
    let s = coeff.gamma_shape();
    let z = coeff.a * x.powf(coeff.c);
    let ln_gamma_form = coeff.c0.ln() - coeff.c.ln() - s * coeff.a.ln() + ln_inc_gamma_upper_any(s, z)?;
    let exponent = exponent_unchecked(coeff, x);
    Ok(Exceedance {
        ln_gamma_form,
        ln_algebraic: -exponent,
        exponent,
    })
}

/// `ln M_n` of the dominant moment term in closed form:
///
/// `ln k_n + (n-2) ln(2π f0) + ln p! + ln((n-1)p)! - ln(np+1)!
///  - ln α - ((np+2)/α) ln 2 + ln Γ((np+2)/α)`.
pub fn moment_asymptotic(spec: &SamplingSpec, kind: &OperatorKind, n: u32) -> Result<f64> {
    let prefix = moment_prefix(spec, kind, n)?;
    let m = f64::from(n * kind.p + 1);
    Ok(prefix + ln_stretched_moment(spec.alpha, m)?)
}

/// `ln M_n` with the frequency integral `∫ f̂²(u) u^{np+1} du` done by quadrature.
pub fn moment_by_quadrature(
    spec: &SamplingSpec,
    kind: &OperatorKind,
    n: u32,
    tol: &ToleranceSpec,
) -> Result<f64> {
    let prefix = moment_prefix(spec, kind, n)?;
    let m = f64::from(n * kind.p + 1);
    let integral = quad_semiinf_ln(|u: f64| 2.0 * ln_fhat(spec, u) + m * u.ln(), 1.0, tol)?;
    Ok(prefix + integral)
}

fn moment_prefix(spec: &SamplingSpec, kind: &OperatorKind, n: u32) -> Result<f64> {
    spec.validate()?;
    kind.validate()?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("moment order n = {n} must be >= 2")));
    }
    let p = f64::from(kind.p);
    let nf = f64::from(n);
    Ok(kind.ln_kn(n) + (nf - 2.0) * (2.0 * PI * spec.f0).ln() + log_gamma(p + 1.0)?
        + log_gamma((nf - 1.0) * p + 1.0)?
        - log_gamma(nf * p + 2.0)?)
}

/// Closed form `ln ∫_0^∞ e^{-2u^α} u^m du = ln Γ((m+1)/α) - ln α - ((m+1)/α) ln 2`.
pub fn ln_stretched_moment(alpha: f64, m: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
        });
    }
    let k = (m + 1.0) / alpha;
    Ok(log_gamma(k)? - alpha.ln() - k * LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityBounds {
    /// Largest moment order reproduced by the worldline approximation, `2c s^{-α}`.
    pub n_max: f64,
    /// Largest `x` for which the worldline tail is trusted, `(2/a) s^{-p}`.
    pub x_max: f64,
    /// `n_max >= 2`: at least the variance is worldline-accurate.
    pub moments_valid: bool,
}

pub fn validity_bounds(spec: &SamplingSpec, kind: &OperatorKind, s: f64) -> Result<ValidityBounds> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::WorldlineInapplicable { s });
    }
    let coeff = tail_coefficients(spec, kind)?;
    let n_max = 2.0 * coeff.c * s.powf(-spec.alpha);
    Ok(ValidityBounds {
        n_max,
        x_max: (2.0 / coeff.a) * s.powf(-f64::from(kind.p)),
        moments_valid: n_max >= 2.0,
    })
}

/// Frequency `(n/(2c))^{1/α}` dominating the n-th moment.
pub fn dominant_frequency(spec: &SamplingSpec, kind: &OperatorKind, n: u32) -> f64 {
    let c = spec.alpha / f64::from(kind.p);
    (f64::from(n) / (2.0 * c)).powf(1.0 / spec.alpha)
}

/// Value `(n/(ac))^{1/c}` of `x` dominating the n-th moment integral.
pub fn dominant_x(coeff: &TailCoefficients, n: u32) -> f64 {
    (f64::from(n) / (coeff.a * coeff.c)).powf(1.0 / coeff.c)
}
