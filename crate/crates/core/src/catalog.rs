//! JSON catalog of fusion systems and polarizable particles.
//!
//! A document is either `{"systems": [...], "particles": [...]}` (both
//! optional) or a single bare system object. Schema errors carry the path
//! of the offending field.

use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, DEFAULT_V0};
use crate::polar::PolarizableParticle;
use crate::units::CONSTANTS;
use serde::Deserialize;
use std::path::Path;

const BUILTIN: &str = include_str!("../../../data/catalog.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Nucleus {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "Z")]
    z: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemRecord {
    name: String,
    projectile: Nucleus,
    target: Nucleus,
    mu_u: Option<f64>,
    #[serde(rename = "E0_MeV")]
    e0_mev: f64,
    #[serde(rename = "R0_fm")]
    r0_fm: f64,
    #[serde(rename = "omega0_MeV")]
    omega0_mev: f64,
    #[serde(rename = "E_MeV")]
    e_mev: f64,
    v0: Option<f64>,
    sigma_exp_mb: Option<f64>,
    sigma_exp_err_mb: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParticleRecord {
    name: String,
    #[serde(rename = "mass_MeV")]
    mass_mev: f64,
    alpha0_fm3: f64,
    r0_fm: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    systems: Vec<SystemRecord>,
    #[serde(default)]
    particles: Vec<ParticleRecord>,
}

impl SystemRecord {
    fn into_system(self) -> Result<FusionSystem> {
        let mu_u = self
            .mu_u
            .unwrap_or_else(|| FusionSystem::reduced_mass_u(self.projectile.a, self.target.a));
        let system = FusionSystem {
            name: self.name,
            mu: mu_u * CONSTANTS.amu,
            z_proj: self.projectile.z,
            z_target: self.target.z,
            e0: self.e0_mev,
            r0: self.r0_fm,
            omega0: self.omega0_mev,
            e: self.e_mev,
            v0: self.v0.unwrap_or(DEFAULT_V0),
            sigma_exp: self.sigma_exp_mb,
            sigma_exp_err: self.sigma_exp_err_mb,
        };
        system.validate()?;
        Ok(system)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    pub systems: Vec<FusionSystem>,
    pub particles: Vec<PolarizableParticle>,
}

fn ingestion(origin: &str, path: String, message: impl ToString) -> Error {
    Error::Ingestion {
        path: if path.is_empty() || path == "." {
            origin.to_string()
        } else {
            format!("{origin}:{path}")
        },
        message: message.to_string(),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(value: serde_json::Value, origin: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        ingestion(origin, path, e.into_inner())
    })
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json_str(BUILTIN, "builtin").expect("built-in catalog is valid")
    }

    /// `origin` labels error paths, e.g. a file name.
    pub fn from_json_str(text: &str, origin: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ingestion(origin, String::new(), e))?;
        let is_document = value
            .as_object()
            .is_some_and(|o| o.contains_key("systems") || o.contains_key("particles"));
        let doc = if is_document {
            parse::<Document>(value, origin)?
        } else {
            Document {
                systems: vec![parse::<SystemRecord>(value, origin)?],
                particles: Vec::new(),
            }
        };
        let systems = doc
            .systems
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.into_system()
                    .map_err(|e| ingestion(origin, if is_document { format!("systems[{i}]") } else { String::new() }, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let particles = doc
            .particles
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                PolarizableParticle::new(r.name, r.mass_mev, r.alpha0_fm3, r.r0_fm)
                    .map_err(|e| ingestion(origin, format!("particles[{i}]"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { systems, particles })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    pub fn system(&self, name: &str) -> Result<&FusionSystem> {
        self.systems
            .iter()
            .find(|s| s.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::NotFound {
                kind: "system",
                name: name.to_string(),
            })
    }

    pub fn particle(&self, name: &str) -> Result<&PolarizableParticle> {
        self.particles
            .iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::NotFound {
                kind: "particle",
                name: name.to_string(),
            })
    }
}
