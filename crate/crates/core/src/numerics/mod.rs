//! Numerical kernels shared by every physics module.
//!
//! Everything here is pure. Functions that can overflow for the parameter
//! ranges used by the tail and moment code come in a log-domain form.

mod gamma;
mod quad;
mod roots;
mod sum;

pub use gamma::{
    inc_gamma_lower, inc_gamma_upper, ln_inc_gamma_lower, ln_inc_gamma_upper,
    ln_inc_gamma_upper_any, log_gamma, regularized_gamma_p, regularized_gamma_q,
};
pub use quad::{integrate, quad_semiinf, quad_semiinf_ln};
pub use roots::brent_root;
pub use sum::{log_sum_exp, pairwise_sum};

use crate::error::{Error, Result};

/// Convergence controls for iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_iter: 200,
        }
    }
}

impl ToleranceSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_iter: usize) -> Result<Self> {
        let tol = Self {
            rel_tol,
            abs_tol,
            max_iter,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain {
                what: "rel_tol",
                value: self.rel_tol,
            });
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Domain {
                what: "abs_tol",
                value: self.abs_tol,
            });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Absolute tolerance scaled to the magnitude of `value`.
    pub fn scaled(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
