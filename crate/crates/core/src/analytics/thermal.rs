//! Invariant thermal states of H = S_A² + S_B² on spin-1/2 chains.

use std::fmt;
use std::str::FromStr;

use crate::bigmath::ln_big;
use crate::error::{Error, Result};
use crate::rep::{GroupModel, IrrepDistribution};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature {
    Finite(f64),
    Infinite,
}

impl FromStr for Temperature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Temperature::Infinite),
            other => {
                let t: f64 = other.parse().map_err(|_| Error::InvalidArgument(format!("bad temperature {s}")))?;
                if t.is_infinite() && t > 0.0 {
                    Ok(Temperature::Infinite)
                } else {
                    Ok(Temperature::Finite(t))
                }
            }
        }
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Temperature::Finite(t) => write!(f, "{t}"),
            Temperature::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalSpec {
    pub temperature: Temperature,
    pub n_a: u64,
    pub n_b: u64,
}

impl ThermalSpec {
    pub fn new(temperature: Temperature, n_a: u64, n_b: u64) -> Result<Self> {
        if let Temperature::Finite(t) = temperature {
            if t <= 0.0 || !t.is_finite() {
                return Err(Error::InvalidArgument(format!("temperature must be positive, got {t}")));
            }
        }
        Ok(Self { temperature, n_a, n_b })
    }
}

/// Entanglement of formation of the invariant thermal state: the MMIS average of
/// log d_J reweighted by e^{−2j(j+1)/T}.
pub fn finite_t_entanglement(spec: &ThermalSpec) -> Result<f64> {
    let spec = ThermalSpec::new(spec.temperature, spec.n_a, spec.n_b)?;
    let g = GroupModel::su2();
    let n = spec.n_a + spec.n_b;
    let t = match spec.temperature {
        Temperature::Infinite => return super::entanglement_of_formation(&g, n, spec.n_a),
        Temperature::Finite(t) => t,
    };
    let dist = IrrepDistribution::new(&g, spec.n_a, spec.n_b)?;
    let log_weights: Vec<(f64, f64)> = dist
        .entries()
        .iter()
        .map(|e| {
            let two_j = e.irrep.two_j().expect("SU2 irreps carry spins") as f64;
            let casimir = two_j * (two_j + 2.0) / 4.0;
            let lw = ln_big(&e.mult_a) + ln_big(&e.mult_b) - 2.0 * casimir / t;
            (lw, (e.irrep.dim as f64).ln())
        })
        .collect();
    let max = log_weights.iter().map(|(lw, _)| *lw).fold(f64::NEG_INFINITY, f64::max);
    let mut z = 0.0;
    let mut acc = 0.0;
    for (lw, ln_d) in log_weights {
        let w = (lw - max).exp();
        z += w;
        acc += w * ln_d;
    }
    Ok(acc / z)
}
