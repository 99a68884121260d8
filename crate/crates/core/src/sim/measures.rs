//! Numeric entanglement measures, distances, and expectation values.

use num_complex::Complex64 as c64;

use super::density::DensityMatrix;
use super::layout::SiteLayout;
use super::linalg::{hermitian_eigenvalues, trace_norm, LocalOp};
use super::projectors::SectorProjector;
use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };

/// log ‖ρ^{T_A}‖₁ from the Hermitian spectrum of the partial transpose.
pub fn log_negativity_numeric(rho: &DensityMatrix, a_sites: &[usize]) -> Result<f64> {
    let err = rho.hermiticity_error();
    if err > super::density::HERMITIAN_TOL {
        return Err(Error::Numerical(format!("negativity needs a Hermitian input (anti-Hermitian norm {err:.3e})")));
    }
    let pt = rho.partial_transpose(a_sites)?;
    Ok(trace_norm(pt.dim(), pt.data())?.ln())
}

/// Half-chain cut: sites 0..N/2 against the rest.
pub fn half_chain_log_negativity(rho: &DensityMatrix) -> Result<f64> {
    let a: Vec<usize> = (0..rho.n_sites() / 2).collect();
    log_negativity_numeric(rho, &a)
}

pub fn trace_norm_of(rho: &DensityMatrix) -> Result<f64> {
    trace_norm(rho.dim(), rho.data())
}

/// ‖ρ − σ‖₁ / 2.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(trace_norm_of(&rho.sub(sigma)?)? / 2.0)
}

/// f = ‖ρ_t − ρ_{t−1}‖₁ / √(‖ρ_t‖₁ ‖ρ_{t−1}‖₁).
pub fn convergence_metric(rho_t: &DensityMatrix, rho_prev: &DensityMatrix) -> Result<f64> {
    let diff = trace_norm_of(&rho_t.sub(rho_prev)?)?;
    if diff == 0.0 {
        return Ok(0.0);
    }
    Ok(diff / (trace_norm_of(rho_t)? * trace_norm_of(rho_prev)?).sqrt())
}

fn layout_for(rho: &DensityMatrix, op: &LocalOp, sites: &[usize]) -> Result<SiteLayout> {
    let layout = SiteLayout::new(rho.n_sites(), rho.local_dim(), sites)?;
    if layout.local_size() != op.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {} on {} sites of dimension {}",
            op.dim(),
            sites.len(),
            rho.local_dim()
        )));
    }
    Ok(layout)
}

/// Tr[ρ O] with O supported on `sites`, by contraction over the support.
pub fn expectation(rho: &DensityMatrix, op: &LocalOp, sites: &[usize]) -> Result<c64> {
    let layout = layout_for(rho, op, sites)?;
    let dim = rho.dim();
    let data = rho.data();
    let mut acc = ZERO;
    for &b in &layout.bases {
        for &(y, x, o) in op.nonzeros() {
            acc += o * data[(b + layout.offsets[x]) * dim + b + layout.offsets[y]];
        }
    }
    Ok(acc)
}

/// ρ·O with O supported on `sites`, as a dense row-major matrix.
fn right_multiply(rho: &DensityMatrix, op: &LocalOp, layout: &SiteLayout) -> Vec<c64> {
    let dim = rho.dim();
    let data = rho.data();
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim {
        let row = &data[i * dim..(i + 1) * dim];
        let orow = &mut out[i * dim..(i + 1) * dim];
        for &b in &layout.bases {
            for &(x, y, o) in op.nonzeros() {
                orow[b + layout.offsets[y]] += row[b + layout.offsets[x]] * o;
            }
        }
    }
    out
}

/// Tr[(ρ O)²] / Tr[ρ²].
pub fn quadratic_correlator(rho: &DensityMatrix, op: &LocalOp, sites: &[usize]) -> Result<f64> {
    let layout = layout_for(rho, op, sites)?;
    let dim = rho.dim();
    let m = right_multiply(rho, op, &layout);
    let data = rho.data();
    let mut num = ZERO;
    let mut purity = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            num += m[i * dim + j] * m[j * dim + i];
            purity += data[i * dim + j].norm_sqr();
        }
    }
    Ok(num.re / purity)
}

/// Von Neumann entropy (natural log) of the reduced state on `keep`.
pub fn reduced_entropy(rho: &DensityMatrix, keep: &[usize]) -> Result<f64> {
    let red = rho.partial_trace_keep(keep)?;
    let ev = hermitian_eigenvalues(red.dim(), red.data())?;
    Ok(ev.iter().filter(|&&l| l > 1e-15).map(|&l| -l * l.ln()).sum())
}

/// Frobenius norm of ρ − PρP: zero iff ρ is supported on the sector.
pub fn sector_leakage(rho: &DensityMatrix, proj: &SectorProjector) -> Result<f64> {
    if rho.n_sites() != proj.n_sites() || rho.local_dim() != proj.local_dim() {
        return Err(Error::DimensionMismatch("projector and state act on different spaces".into()));
    }
    let inside = proj.expand(&proj.compress(rho.data()));
    Ok(rho.data().iter().zip(&inside).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
}
