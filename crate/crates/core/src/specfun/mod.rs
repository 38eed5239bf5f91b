//! Special functions: complex gamma and the Gauss hypergeometric function.

use core::fmt;

use crate::C64;

mod gamma;
mod hyp2f1;

pub use gamma::{gamma_c, ln_gamma_right, nearest_pole, recip_gamma_c, GammaError};
pub use hyp2f1::{hyp2f1, hyp2f1_deriv, hyp2f1_detailed, Hyp2f1Eval, HypergeomParams};

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// `c` is a nonpositive integer; the principal-branch series is undefined.
    InvalidC { c: C64 },
    /// Argument outside the supported interval `(0, 1)`.
    ArgumentRange { x: f64 },
    /// Series did not converge within the term budget.
    NotConverged { achieved: f64, terms: usize },
    /// Cancellation destroyed too many digits; `achieved` is the error bound.
    AccuracyLoss { achieved: f64 },
    /// A gamma factor was evaluated at a pole.
    GammaPole { n: i64 },
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::InvalidC { c } => write!(f, "parameter c = {c} is a nonpositive integer"),
            SpecFunError::ArgumentRange { x } => write!(f, "argument x = {x} outside (0, 1)"),
            SpecFunError::NotConverged { achieved, terms } => {
                write!(f, "series not converged after {terms} terms (bound {achieved:.3e})")
            }
            SpecFunError::AccuracyLoss { achieved } => {
                write!(f, "accuracy loss: achieved error bound {achieved:.3e}")
            }
            SpecFunError::GammaPole { n } => write!(f, "gamma pole at {n}"),
        }
    }
}

impl From<GammaError> for SpecFunError {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::Pole { n } => SpecFunError::GammaPole { n },
        }
    }
}
