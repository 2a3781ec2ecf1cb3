//! Builtin vector fields and time-dependent forcing terms.

use super::param::h_eval;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Scalar forcing g(t), added to every state component. Amplitudes are in
/// state units per time unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ForcingSpec {
    None,
    Sinusoid { amplitude: f64, frequency: f64 },
    HEmbedded(Box<ForcingSpec>),
}

impl ForcingSpec {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ForcingSpec::None => 0.0,
            ForcingSpec::Sinusoid {
                amplitude,
                frequency,
            } => amplitude * (frequency * t).sin(),
            ForcingSpec::HEmbedded(base) => base.eval(h_eval(t)),
        }
    }

    pub fn is_h_embedded(&self) -> bool {
        matches!(self, ForcingSpec::HEmbedded(_))
    }

    pub fn is_autonomous(&self) -> bool {
        match self {
            ForcingSpec::None => true,
            ForcingSpec::Sinusoid { amplitude, .. } => *amplitude == 0.0,
            ForcingSpec::HEmbedded(base) => base.is_autonomous(),
        }
    }
}

/// Reparametrize a forcing by the time embedding: the result evaluates the
/// base at h(t). Double embedding is rejected.
pub fn f_dot_h(forcing: &ForcingSpec) -> Result<ForcingSpec> {
    if forcing.is_h_embedded() {
        return Err(Error::Precondition(
            "forcing is already composed with the time embedding".into(),
        ));
    }
    Ok(ForcingSpec::HEmbedded(Box::new(forcing.clone())))
}

/// Builtin right-hand sides. All are polynomial, hence locally Lipschitz on
/// any bounded grid box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BuiltinField {
    /// x' = x, y' = -y
    Saddle2d,
    /// x' = x(1 - x)
    Logistic1d,
    /// x' = -(x - r0)(x - r1)(x - r2)
    TwoWell1d { roots: [f64; 3] },
    /// Two-mode spectral truncation of u_t = u_xx + mu*u - u^3 on [0, pi]:
    /// a' = (mu - 1)a - (3/4)a^3 - (3/2)ab^2,
    /// b' = (mu - 4)b - (3/4)b^3 - (3/2)a^2 b.
    Spectral2m { mu: f64 },
    /// x' = sum_i coeffs\[i\] * x^i
    Custom1d { coeffs: Vec<f64> },
}

impl BuiltinField {
    pub fn dim(&self) -> usize {
        match self {
            BuiltinField::Saddle2d | BuiltinField::Spectral2m { .. } => 2,
            _ => 1,
        }
    }
}

/// A vector field together with its forcing term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorFieldSpec {
    pub field: BuiltinField,
    pub forcing: ForcingSpec,
}

impl VectorFieldSpec {
    pub fn new(field: BuiltinField, forcing: ForcingSpec) -> Self {
        VectorFieldSpec { field, forcing }
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn is_autonomous(&self) -> bool {
        self.forcing.is_autonomous()
    }

    /// Writes dx/dt at (t, x) into `out`.
    pub fn eval(&self, t: f64, x: &[f64], out: &mut [f64]) {
        match &self.field {
            BuiltinField::Saddle2d => {
                out[0] = x[0];
                out[1] = -x[1];
            }
            BuiltinField::Logistic1d => {
                out[0] = x[0] * (1.0 - x[0]);
            }
            BuiltinField::TwoWell1d { roots } => {
                out[0] = -(x[0] - roots[0]) * (x[0] - roots[1]) * (x[0] - roots[2]);
            }
            BuiltinField::Spectral2m { mu } => {
                let (a, b) = (x[0], x[1]);
                out[0] = (mu - 1.0) * a - 0.75 * a * a * a - 1.5 * a * b * b;
                out[1] = (mu - 4.0) * b - 0.75 * b * b * b - 1.5 * a * a * b;
            }
            BuiltinField::Custom1d { coeffs } => {
                let mut acc = 0.0;
                let mut pow = 1.0;
                for &c in coeffs {
                    acc += c * pow;
                    pow *= x[0];
                }
                out[0] = acc;
            }
        }
        let g = self.forcing.eval(t);
        if g != 0.0 {
            for v in out.iter_mut() {
                *v += g;
            }
        }
    }
}
