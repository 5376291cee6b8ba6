use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{method} did not converge in {iterations} iterations")]
    Convergence { method: &'static str, iterations: usize },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("cannot convert {from} to {to}: incompatible dimensions")]
    Unit { from: &'static str, to: &'static str },

    #[error("x = {x} is below the asymptotic tail region (x >= 1 required)")]
    OutOfAsymptoticRange { x: f64 },

    #[error("worldline approximation inapplicable for s = {s} (s < 1 required)")]
    WorldlineInapplicable { s: f64 },

    #[error("no classical turning points: barrier absent in range")]
    BarrierAbsent,

    #[error("energy {energy} lies above the barrier maximum {barrier_max}")]
    AboveBarrier { energy: f64, barrier_max: f64 },

    #[error("empty range [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("target S = {target:e} not bracketed by S(alpha) on [{alpha_lo}, {alpha_hi}] (S = {s_lo:e} .. {s_hi:e})")]
    FitInfeasible {
        target: f64,
        alpha_lo: f64,
        alpha_hi: f64,
        s_lo: f64,
        s_hi: f64,
    },

    #[error("ingestion error at `{path}`: {message}")]
    Ingestion { path: String, message: String },

    #[error("unknown {kind} `{name}`")]
    NotFound { kind: &'static str, name: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
