//! Hardy's function `Z(t) = zeta(1/2 + it) e^{i theta(t)}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{zeta, ComplexValue, EvalConfig};
use crate::theta::theta_exact;

/// Largest tolerated `|Im(zeta(1/2 + it) e^{i theta})|`.
pub const IMAG_RESIDUAL_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZEvaluation {
    pub t: f64,
    pub z_value: f64,
    pub imag_residual: f64,
    pub zeta_modulus: f64,
}

impl ZEvaluation {
    /// `-1`, `0` or `+1`.
    pub fn sign(&self) -> i8 {
        if self.z_value > 0.0 {
            1
        } else if self.z_value < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// Evaluates `Z(t)` by rotating `zeta(1/2 + it)` through the phase
/// `theta(t)`. The rotated value must come out real; a visible imaginary part
/// means zeta and theta disagree and is reported as an accuracy failure.
pub fn hardy_z(t: f64, cfg: &EvalConfig) -> Result<ZEvaluation> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("Z(t) needs finite t, got {t}")));
    }
    let zeta_value = zeta(ComplexValue::new(0.5, t), cfg)?;
    let rotated = zeta_value * ComplexValue::from_polar(1.0, theta_exact(t));
    let imag_residual = rotated.im.abs();
    if imag_residual > IMAG_RESIDUAL_LIMIT {
        return Err(Error::Accuracy {
            re: 0.5,
            im: t,
            bound: imag_residual,
            target: IMAG_RESIDUAL_LIMIT,
        });
    }
    Ok(ZEvaluation {
        t,
        z_value: rotated.re,
        imag_residual,
        zeta_modulus: zeta_value.norm(),
    })
}

/// Shorthand for `hardy_z(t, cfg)?.z_value`.
pub fn z_value(t: f64, cfg: &EvalConfig) -> Result<f64> {
    hardy_z(t, cfg).map(|e| e.z_value)
}
