//! Natural units (ħ = c = 1) with Lorentz–Heaviside electromagnetism.
//!
//! Internally every dimensionful quantity is a power of MeV: lengths are
//! MeV⁻¹, areas MeV⁻², masses and energies MeV. [`convert`] moves values
//! between those and the laboratory units fm, mb and u.

use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħc in MeV·fm.
    pub hbar_c: f64,
    /// Atomic mass unit in MeV.
    pub amu: f64,
    /// Fine-structure constant.
    pub alpha_fs: f64,
    /// Elementary charge squared in Lorentz–Heaviside units, `4π α`.
    pub e_sq: f64,
}

const ALPHA_FS: f64 = 1.0 / 137.035_999;

/// The pinned constants every table is computed with.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar_c: 197.326_978_8,
    amu: 931.494_102_4,
    alpha_fs: ALPHA_FS,
    e_sq: 4.0 * PI * ALPHA_FS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Dimensionless,
    MeV,
    /// Atomic mass unit (as a mass/energy).
    AtomicMass,
    InvMeV,
    Fm,
    InvMeV2,
    Fm2,
    Millibarn,
    InvMeV3,
    Fm3,
    InvFm,
}

impl Unit {
    /// `(power of MeV, size of one unit in MeV^power)`.
    fn natural(self) -> (i32, f64) {
        let hc = CONSTANTS.hbar_c;
        match self {
            Unit::Dimensionless => (0, 1.0),
            Unit::MeV => (1, 1.0),
            Unit::AtomicMass => (1, CONSTANTS.amu),
            Unit::InvFm => (1, hc),
            Unit::InvMeV => (-1, 1.0),
            Unit::Fm => (-1, 1.0 / hc),
            Unit::InvMeV2 => (-2, 1.0),
            Unit::Fm2 => (-2, 1.0 / (hc * hc)),
            // 1 mb = 0.1 fm²
            Unit::Millibarn => (-2, 0.1 / (hc * hc)),
            Unit::InvMeV3 => (-3, 1.0),
            Unit::Fm3 => (-3, 1.0 / (hc * hc * hc)),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Dimensionless => "1",
            Unit::MeV => "MeV",
            Unit::AtomicMass => "u",
            Unit::InvMeV => "MeV^-1",
            Unit::Fm => "fm",
            Unit::InvMeV2 => "MeV^-2",
            Unit::Fm2 => "fm^2",
            Unit::Millibarn => "mb",
            Unit::InvMeV3 => "MeV^-3",
            Unit::Fm3 => "fm^3",
            Unit::InvFm => "fm^-1",
        }
    }
}

pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    let (p_from, s_from) = from.natural();
    let (p_to, s_to) = to.natural();
    if p_from != p_to {
        return Err(Error::Unit {
            from: from.symbol(),
            to: to.symbol(),
        });
    }
    Ok(value * (s_from / s_to))
}

/// Thomson cross section `(Z² e²)² / (6π m²)` in MeV⁻², for mass `m` in MeV.
pub fn thompson_cross_section(z: i32, mass: f64) -> Result<f64> {
    if z == 0 {
        return Err(Error::InvalidParameter("charge number must be non-zero".into()));
    }
    if !(mass > 0.0) {
        return Err(Error::Domain {
            what: "mass",
            value: mass,
        });
    }
    let q_sq = f64::from(z * z) * CONSTANTS.e_sq;
    Ok(q_sq * q_sq / (6.0 * PI * mass * mass))
}
