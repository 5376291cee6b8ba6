//! WKB tunneling exponents and the competition with fluctuation-driven
//! hopping over a barrier.
//!
//! A particle of speed `v0` needs its energy raised by `½ m v0²`; the
//! radiation-pressure fluctuation doing that has dimensionless size `x`
//! and probability `e^{-F(x)}`. Tunneling costs `e^{-G}`. The crossover
//! solver finds the barrier width where `F = G`.

use crate::error::{Error, Result};
use crate::numerics::{brent_root, integrate, ToleranceSpec};
use crate::sampling::SamplingSpec;
use crate::tail::{exponent_unchecked, tail_coefficients, OperatorKind, TailCoefficients};
use crate::units::CONSTANTS;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierScenario {
    /// Hop speed, fraction of c.
    pub v0: f64,
    /// WKB speed `√(2(V-E)/m)` in the barrier.
    pub v1: f64,
    /// Barrier width in reduced Compton wavelengths.
    pub d_over_lambda_c: f64,
    pub z: u32,
    pub alpha: f64,
}

impl BarrierScenario {
    /// Scenario with `v1 = v0`.
    pub fn new(v0: f64, d_over_lambda_c: f64, z: u32, alpha: f64) -> Result<Self> {
        let s = Self {
            v0,
            v1: v0,
            d_over_lambda_c,
            z,
            alpha,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_speed(self.v0)?;
        check_speed(self.v1)?;
        if !(self.d_over_lambda_c > 0.0) {
            return Err(Error::Domain {
                what: "barrier width d/lambda_C",
                value: self.d_over_lambda_c,
            });
        }
        if self.z == 0 {
            return Err(Error::InvalidParameter("charge number Z must be >= 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Domain {
                what: "sampling alpha (0 < alpha < 1)",
                value: self.alpha,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_speed(v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain {
            what: "speed (0 < v < 1)",
            value: v,
        });
    }
    Ok(())
}

fn golden_max<V: Fn(f64) -> f64>(v: &V, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (v(x1), v(x2));
    for _ in 0..200 {
        if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = v(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = v(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

const BARRIER_SCAN_POINTS: usize = 512;

/// `G = 2 ∫_{z1}^{z2} √(2m(V(z) - E0)) dz` between the turning points that
/// surround the maximum of `V` on `z_range`.
///
/// The turning points are found by Brent's method; the integral uses
/// `z = z1 + (z2-z1)(1 - cos θ)/2`, which removes the square-root endpoint
/// behaviour. All quantities are in consistent natural units.
pub fn wkb_exponent_integral<V>(potential: V, e0: f64, m: f64, z_range: (f64, f64), tol: &ToleranceSpec) -> Result<f64>
where
    V: Fn(f64) -> f64,
{
    let (lo, hi) = z_range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyRange { lo, hi });
    }
    if !(m > 0.0) {
        return Err(Error::Domain { what: "mass", value: m });
    }
    let step = (hi - lo) / BARRIER_SCAN_POINTS as f64;
    let grid: Vec<f64> = (0..=BARRIER_SCAN_POINTS).map(|i| lo + step * i as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&z| potential(z)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain {
            what: "potential value",
            value: f64::NAN,
        });
    }
    let (imax, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let (z_peak, v_peak) = golden_max(
        &potential,
        grid[imax.saturating_sub(1)],
        grid[(imax + 1).min(BARRIER_SCAN_POINTS)],
    );
    let (z_peak, v_peak) = if v_peak >= values[imax] { (z_peak, v_peak) } else { (grid[imax], values[imax]) };

    let eps = 1e-12 * v_peak.abs().max(e0.abs()).max(f64::MIN_POSITIVE);
    if v_peak < e0 - eps {
        return Err(Error::AboveBarrier {
            energy: e0,
            barrier_max: v_peak,
        });
    }
    if v_peak <= e0 + eps {
        return Ok(0.0);
    }

    let h = |z: f64| potential(z) - e0;
    let left = (0..imax).rev().find(|&i| values[i] <= e0).ok_or(Error::BarrierAbsent)?;
    let right = (imax + 1..=BARRIER_SCAN_POINTS)
        .find(|&i| values[i] <= e0)
        .ok_or(Error::BarrierAbsent)?;
    let root_tol = ToleranceSpec {
        rel_tol: 1e-15,
        abs_tol: 1e-15 * (hi - lo),
        max_iter: 200,
    };
    let z1 = brent_root(h, grid[left], z_peak, &root_tol)?;
    let z2 = brent_root(h, z_peak, grid[right], &root_tol)?;

    let half = 0.5 * (z2 - z1);
    let integrand = |theta: f64| {
        let z = z1 + half * (1.0 - theta.cos());
        (2.0 * m * h(z).max(0.0)).sqrt() * half * theta.sin()
    };
    let (value, _) = integrate(integrand, 0.0, PI, 8, tol)?;
    Ok(2.0 * value)
}

/// `G = 2 v1 (d/λ_C)`, the constant-speed form of the WKB exponent.
pub fn wkb_exponent_mean(scenario: &BarrierScenario) -> f64 {
    2.0 * scenario.v1 * scenario.d_over_lambda_c
}

/// Coefficient `K` in `x = K (d/λ_C)^3`: `3π / (e⁴ Z⁴ v0²)`.
fn charged_x_coefficient(v0: f64, z: u32) -> f64 {
    let e_sq = CONSTANTS.e_sq;
    3.0 * PI / (e_sq * e_sq * f64::from(z).powi(4) * v0 * v0)
}

/// `x = m d³ / (2 σ_T v0²)` with `σ_T` the Thomson cross section, written as
/// `3π (d/λ_C)³ / (e⁴ Z⁴ v0²)`.
pub fn hop_variable(scenario: &BarrierScenario) -> f64 {
    charged_x_coefficient(scenario.v0, scenario.z) * scenario.d_over_lambda_c.powi(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargedValidity {
    /// `x s³ = Z² e² v0 / (2√(6π))`, independent of `d`.
    pub x_s3: f64,
    /// `x s³ <= 1`.
    pub valid: bool,
    /// `s = Z² e² v0 λ_C / (√(6π) d)`, the spatial-to-temporal scale ratio.
    pub s: f64,
    pub s_inv3: f64,
    /// The rounded criterion `(Z/95)² <= 1/v0`.
    pub rounded_bound_satisfied: bool,
}

pub fn charged_validity(scenario: &BarrierScenario) -> ChargedValidity {
    let z2 = f64::from(scenario.z).powi(2);
    let root = (6.0 * PI).sqrt();
    let x_s3 = z2 * CONSTANTS.e_sq * scenario.v0 / (2.0 * root);
    let s = z2 * CONSTANTS.e_sq * scenario.v0 / (root * scenario.d_over_lambda_c);
    ChargedValidity {
        x_s3,
        valid: x_s3 <= 1.0,
        s,
        s_inv3: s.powi(-3),
        rounded_bound_satisfied: (f64::from(scenario.z) / 95.0).powi(2) <= 1.0 / scenario.v0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// `F > G` below `d*`, `F < G` above it.
    FluctuationAboveDStar,
    /// `F < G` over the whole range.
    FluctuationEverywhere,
    /// `F > G` over the whole range.
    TunnelingEverywhereInRange,
    /// Crossings exist but tunneling wins again at the top of the range.
    TunnelingAtUpperEdge,
}

impl Dominance {
    pub fn as_str(self) -> &'static str {
        match self {
            Dominance::FluctuationAboveDStar => "fluctuation_above_d_star",
            Dominance::FluctuationEverywhere => "fluctuation_everywhere",
            Dominance::TunnelingEverywhereInRange => "tunneling_everywhere_in_range",
            Dominance::TunnelingAtUpperEdge => "tunneling_at_upper_edge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverResult {
    /// Width of the last crossing from `F > G` to `F < G`.
    pub d_star: Option<f64>,
    /// `G(d*)`, equal to `F(x(d*))`.
    pub common_value: Option<f64>,
    pub x_star: Option<f64>,
    pub dominance: Dominance,
    /// Every root of `F - G` found in the range, ascending.
    pub roots: Vec<f64>,
    /// Lower edge actually scanned.
    pub d_lo: f64,
    pub d_hi: f64,
    /// The lower edge was raised to the width where `x = 1`.
    pub lower_edge_raised: bool,
    /// `|F - G| / G` at `d*`.
    pub residual: Option<f64>,
    /// `F < G` at `2 d*`.
    pub beyond_checked: Option<bool>,
}

/// `F(x(d)) = G(d)` with `x = k d^q` and `G = g d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverProblem {
    pub coeff: TailCoefficients,
    pub x_coef: f64,
    pub x_pow: f64,
    pub g_coef: f64,
}

// Geometric scan factor 2^{1/8}.
const SCAN_STEPS_PER_OCTAVE: f64 = 8.0;

impl CrossoverProblem {
    pub fn x(&self, d: f64) -> f64 {
        self.x_coef * d.powf(self.x_pow)
    }

    pub fn g(&self, d: f64) -> f64 {
        self.g_coef * d
    }

    /// `F(x(d))`; only meaningful where `x >= 1`.
    pub fn f(&self, d: f64) -> f64 {
        exponent_unchecked(&self.coeff, self.x(d))
    }

    pub fn h(&self, d: f64) -> f64 {
        self.f(d) - self.g(d)
    }

    /// Width at which `x = 1`.
    pub fn d_at_unit_x(&self) -> f64 {
        self.x_coef.powf(-1.0 / self.x_pow)
    }

    fn scan_grid(&self, d_lo: f64, d_hi: f64) -> Result<(Vec<f64>, bool)> {
        if !(d_lo > 0.0 && d_lo < d_hi && d_hi.is_finite()) {
            return Err(Error::EmptyRange { lo: d_lo, hi: d_hi });
        }
        let d_unit = self.d_at_unit_x();
        let raised = d_lo < d_unit;
        let lo = d_lo.max(d_unit);
        if lo >= d_hi {
            return Err(Error::EmptyRange { lo, hi: d_hi });
        }
        let n = ((d_hi / lo).log2() * SCAN_STEPS_PER_OCTAVE).ceil().max(1.0) as usize;
        let ratio = (d_hi / lo).powf(1.0 / n as f64);
        let mut grid: Vec<f64> = (0..n).map(|i| lo * ratio.powi(i as i32)).collect();
        grid.push(d_hi);
        Ok((grid, raised))
    }

    /// `(d, F, G)` samples on the scan grid.
    pub fn curve(&self, d_range: (f64, f64)) -> Result<Vec<(f64, f64, f64)>> {
        let (grid, _) = self.scan_grid(d_range.0, d_range.1)?;
        Ok(grid.into_iter().map(|d| (d, self.f(d), self.g(d))).collect())
    }

    pub fn solve(&self, d_range: (f64, f64)) -> Result<CrossoverResult> {
        let (grid, raised) = self.scan_grid(d_range.0, d_range.1)?;
        let hs: Vec<f64> = grid.iter().map(|&d| self.h(d)).collect();
        if let Some(bad) = hs.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain {
                what: "F - G on the scan grid",
                value: *bad,
            });
        }
        let tol = ToleranceSpec {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_iter: 300,
        };
        let mut roots = Vec::new();
        let mut last_down = None;
        for i in 0..grid.len() - 1 {
            let (h0, h1) = (hs[i], hs[i + 1]);
            if h0 == 0.0 {
                roots.push(grid[i]);
                if h1 < 0.0 {
                    last_down = Some(grid[i]);
                }
                continue;
            }
            if h0.signum() != h1.signum() && h1 != 0.0 {
                let r = brent_root(|d| self.h(d), grid[i], grid[i + 1], &tol)?;
                roots.push(r);
                if h0 > 0.0 {
                    last_down = Some(r);
                }
            }
        }
        if *hs.last().unwrap() == 0.0 {
            roots.push(*grid.last().unwrap());
        }

        let upper_negative = *hs.last().unwrap() < 0.0;
        let dominance = match (roots.is_empty(), upper_negative) {
            (true, true) => Dominance::FluctuationEverywhere,
            (true, false) => Dominance::TunnelingEverywhereInRange,
            (false, true) => Dominance::FluctuationAboveDStar,
            (false, false) => Dominance::TunnelingAtUpperEdge,
        };
        let d_star = if dominance == Dominance::FluctuationAboveDStar { last_down } else { None };
        let common_value = d_star.map(|d| self.g(d));
        Ok(CrossoverResult {
            d_star,
            common_value,
            x_star: d_star.map(|d| self.x(d)),
            dominance,
            roots,
            d_lo: grid[0],
            d_hi: *grid.last().unwrap(),
            lower_edge_raised: raised,
            residual: d_star.map(|d| (self.h(d) / self.g(d)).abs()),
            beyond_checked: d_star.map(|d| self.h(2.0 * d) < 0.0),
        })
    }
}

/// Charged-particle problem: `S^z` tail, `x ∝ d³`, `G = 2 v0 d`, widths in λ_C.
pub fn charged_problem(alpha: f64, v0: f64, z: u32) -> Result<CrossoverProblem> {
    check_speed(v0)?;
    if z == 0 {
        return Err(Error::InvalidParameter("charge number Z must be >= 1".into()));
    }
    let coeff = tail_coefficients(&SamplingSpec::new(alpha)?, &OperatorKind::momentum_flux())?;
    Ok(CrossoverProblem {
        coeff,
        x_coef: charged_x_coefficient(v0, z),
        x_pow: 3.0,
        g_coef: 2.0 * v0,
    })
}

/// Solve `F(x(d)) = G(d)` for a charged particle; `d_range` in λ_C.
pub fn crossover(alpha: f64, v0: f64, z: u32, d_range: (f64, f64)) -> Result<CrossoverResult> {
    charged_problem(alpha, v0, z)?.solve(d_range)
}

/// Default width range for charged-particle scans, in λ_C.
pub const DEFAULT_D_RANGE: (f64, f64) = (1e-3, 1e9);
