//! Running a model to its steady state while logging convergence diagnostics,
//! plus a seeded pure-state trajectory sampler.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::channel::{apply_timestep, Boundary, ChannelProgram};
use super::density::{DensityMatrix, StateVector};
use super::measures::{convergence_metric, half_chain_log_negativity, sector_leakage, trace_distance};
use super::programs::{Model, UnitaryParams};
use super::projectors::{build_projector, mmis_state};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    /// Stop once f(t) drops below this.
    pub tol: f64,
    pub max_steps: usize,
    /// Threshold defining the reported "convergence step".
    pub step_threshold: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_steps: 200, step_threshold: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunRow {
    pub t: usize,
    pub f_t: f64,
    pub logneg_halfchain: f64,
    pub trace_dist_to_mmis: f64,
    pub sector_leakage: f64,
}

#[derive(Clone, Debug)]
pub struct RunLog {
    pub model: Model,
    pub n_sites: usize,
    pub boundary: Boundary,
    pub rows: Vec<RunRow>,
    /// Whether f(t) reached `tol` within the step cap.
    pub converged: bool,
    /// First t with f(t) below `step_threshold`.
    pub convergence_step: Option<usize>,
    pub final_state: DensityMatrix,
}

impl RunLog {
    pub fn last(&self) -> &RunRow {
        self.rows.last().expect("a run has at least one row")
    }

    /// CSV with header `t,f_t,logneg_halfchain,trace_dist_to_mmis,sector_leakage`;
    /// floats carry 12 significant digits.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "f_t", "logneg_halfchain", "trace_dist_to_mmis", "sector_leakage"])
            .map_err(csv_err)?;
        for r in &self.rows {
            out.write_record([
                r.t.to_string(),
                fmt_sig(r.f_t),
                fmt_sig(r.logneg_halfchain),
                fmt_sig(r.trace_dist_to_mmis),
                fmt_sig(r.sector_leakage),
            ])
            .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Rounds to 12 significant digits, then prints the shortest decimal that
/// reads back as the rounded value. Very small or large magnitudes use
/// exponent notation.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let mag = rounded.abs();
    if mag != 0.0 && mag.is_finite() && !(1e-4..1e16).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// Evolves the model's initial state until f(t) < `opts.tol` or the step cap.
/// Row t = 0 describes the initial state (f is reported as NaN there).
pub fn run_model(model: Model, n: usize, boundary: Boundary, params: UnitaryParams, opts: RunOptions) -> Result<RunLog> {
    let program = model.program(n, boundary, params)?;
    let mut rho = model.initial_state(n)?;
    let proj = build_projector(&model.group(), &model.sector(), n)?;
    let target = mmis_state(&proj)?;
    let measure = |rho: &DensityMatrix, t: usize, f_t: f64| -> Result<RunRow> {
        Ok(RunRow {
            t,
            f_t,
            logneg_halfchain: half_chain_log_negativity(rho)?,
            trace_dist_to_mmis: trace_distance(rho, &target)?,
            sector_leakage: sector_leakage(rho, &proj)?,
        })
    };
    let mut rows = vec![measure(&rho, 0, f64::NAN)?];
    let mut converged = false;
    let mut convergence_step = None;
    for t in 1..=opts.max_steps {
        let prev = rho.clone();
        apply_timestep(&mut rho, &program, t - 1)?;
        let f_t = convergence_metric(&rho, &prev)?;
        rows.push(measure(&rho, t, f_t)?);
        if convergence_step.is_none() && f_t < opts.step_threshold {
            convergence_step = Some(t);
        }
        if f_t < opts.tol {
            converged = true;
            break;
        }
    }
    rho.validate()?;
    Ok(RunLog { model, n_sites: n, boundary, rows, converged, convergence_step, final_state: rho })
}

/// Samples one quantum trajectory: every gate picks Kraus outcome a with
/// probability ‖K_a ψ‖² and renormalizes. Returns the half-chain entanglement
/// entropy after each timestep.
pub fn run_trajectory(program: &ChannelProgram, initial: &StateVector, steps: usize, seed: u64) -> Result<Vec<f64>> {
    if initial.n_sites != program.n_sites() || initial.local_dim != program.local_dim() {
        return Err(Error::DimensionMismatch("initial state and program act on different spaces".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = initial.clone();
    psi.normalize();
    let mut entropies = Vec::with_capacity(steps);
    for t in 0..steps {
        for layer in program.timestep_layers(t) {
            for gate in layer {
                let r: f64 = rng.gen();
                let mut acc = 0.0;
                let mut chosen = None;
                for k in gate.kraus() {
                    let mut cand = psi.clone();
                    cand.apply_local(k, gate.support())?;
                    let p = cand.norm_sqr();
                    acc += p;
                    if p > 0.0 {
                        chosen = Some(cand);
                    }
                    if r < acc {
                        break;
                    }
                }
                psi = chosen.ok_or_else(|| Error::Numerical("every Kraus outcome has zero probability".into()))?;
                psi.normalize();
            }
        }
        entropies.push(psi.half_entropy(program.n_sites() / 2)?);
    }
    Ok(entropies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::programs::singlet_triplet_program;

    #[test]
    fn su2_small_run_converges_to_mmis() {
        let log = run_model(Model::Su2SingletTriplet, 4, Boundary::Periodic, UnitaryParams::default(), RunOptions::default())
            .unwrap();
        assert!(log.converged);
        let last = log.last();
        assert!(last.trace_dist_to_mmis < 1e-6, "{last:?}");
        assert!((last.logneg_halfchain - 2f64.ln()).abs() < 1e-6);
        assert!(log.rows.iter().all(|r| r.sector_leakage < 1e-9));
    }

    #[test]
    fn csv_shape() {
        let log = run_model(Model::Su2SingletTriplet, 4, Boundary::Periodic, UnitaryParams::default(), RunOptions::default())
            .unwrap();
        let mut buf = Vec::new();
        log.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,f_t,logneg_halfchain,trace_dist_to_mmis,sector_leakage\n0,nan,"));
        assert_eq!(text.lines().count(), log.rows.len() + 1);
    }

    #[test]
    fn trajectories_are_seeded() {
        let p = singlet_triplet_program(4, Boundary::Periodic).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let pair = StateVector {
            n_sites: 2,
            local_dim: 2,
            amps: vec![0.0, h, -h, 0.0].into_iter().map(|a| num_complex::Complex64::new(a, 0.0)).collect(),
        };
        let psi = StateVector::product(&[pair.clone(), pair]);
        let a = run_trajectory(&p, &psi, 5, 7).unwrap();
        assert_eq!(a, run_trajectory(&p, &psi, 5, 7).unwrap());
        assert!(a.iter().all(|s| *s >= -1e-12 && *s <= 2.0 * 2f64.ln() + 1e-12));
    }

    #[test]
    fn fmt_sig_digits() {
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(fmt_sig(1.0 / 3.0e9), "3.33333333333e-10");
        assert_eq!(fmt_sig(-2.5e20), "-2.5e20");
        assert_eq!(fmt_sig(0.001), "0.001");
        for x in [1.0 / 7.0, 1e-300, 123456.789012345, -4.2e-7] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }
}
