//! Fixed points of one timestep of a channel, restricted to the operators
//! supported on a symmetry sector.

use faer::Mat;
use num_complex::Complex64 as c64;
use serde::Serialize;

use super::channel::{apply_timestep_general, ChannelProgram};
use super::density::DensityMatrix;
use super::measures::trace_distance;
use super::projectors::{mmis_state, SectorProjector};
use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
/// Eigenvalues this close to 1 count as fixed points.
pub const FIXED_POINT_TOL: f64 = 1e-9;
/// Largest operator space (rank²) whose superoperator is diagonalized densely.
pub const MAX_OPERATOR_DIM: usize = 4096;

#[derive(Clone, Debug)]
pub struct SteadyStateReport {
    pub sector: String,
    pub n_sites: usize,
    /// Dimension of the operator space P·B·P (rank²).
    pub operator_dim: usize,
    pub fixed_point_count: usize,
    /// Fixed point closest to eigenvalue 1, Hermitian and of unit trace.
    pub fixed_point: DensityMatrix,
    /// 1 − |λ| for the largest non-fixed eigenvalue (1 when there is none).
    pub gap: f64,
    /// Trace distance from the fixed point to P/rank.
    pub dist_to_projected_identity: f64,
    /// Largest entry-wise deviation from P/rank.
    pub max_dev_from_projected_identity: f64,
    /// Frobenius norm of the part of the channel image leaving the sector.
    pub leakage: f64,
}

#[derive(Serialize)]
struct SteadyJson<'a> {
    sector: &'a str,
    n_sites: usize,
    operator_dim: usize,
    fixed_point_count: usize,
    gap: f64,
    dist_to_projected_identity: f64,
    max_dev_from_projected_identity: f64,
    leakage: f64,
}

impl SteadyStateReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SteadyJson {
            sector: &self.sector,
            n_sites: self.n_sites,
            operator_dim: self.operator_dim,
            fixed_point_count: self.fixed_point_count,
            gap: self.gap,
            dist_to_projected_identity: self.dist_to_projected_identity,
            max_dev_from_projected_identity: self.max_dev_from_projected_identity,
            leakage: self.leakage,
        })
        .expect("plain fields serialize")
    }
}

/// Builds the one-timestep superoperator on span{V|a⟩⟨b|V†} and diagonalizes it.
pub fn steady_state_analysis(program: &ChannelProgram, proj: &SectorProjector) -> Result<SteadyStateReport> {
    let n = program.n_sites();
    if n > super::MAX_SUPEROP_SITES {
        return Err(Error::Budget(format!(
            "superoperator analysis limited to {} sites, got {n}",
            super::MAX_SUPEROP_SITES
        )));
    }
    if proj.n_sites() != n || proj.local_dim() != program.local_dim() {
        return Err(Error::DimensionMismatch("projector and program act on different spaces".into()));
    }
    let r = proj.rank();
    if r == 0 {
        return Err(Error::EmptySector { sites: n });
    }
    let dim = proj.dim();
    let rr = r * r;
    if rr > MAX_OPERATOR_DIM {
        return Err(Error::Budget(format!("operator space of dimension {rr} exceeds {MAX_OPERATOR_DIM}")));
    }
    let mut superop = Mat::<c64>::zeros(rr, rr);
    let mut leakage: f64 = 0.0;
    let mut unit = vec![ZERO; rr];
    for ab in 0..rr {
        unit.iter_mut().for_each(|v| *v = ZERO);
        unit[ab] = c64::new(1.0, 0.0);
        let mut op = proj.expand(&unit);
        // One timestep is the same for every t when the schedule has one period.
        apply_timestep_general(&mut op, program, 0)?;
        let image = proj.compress(&op);
        let back = proj.expand(&image);
        let out: f64 = op.iter().zip(&back).map(|(a, b)| (a - b).norm_sqr()).sum();
        leakage = leakage.max(out.sqrt());
        for (k, v) in image.into_iter().enumerate() {
            superop[(k, ab)] = v;
        }
    }
    let eig = superop.eigen().map_err(|e| Error::Numerical(format!("superoperator eigensolver failed: {e:?}")))?;
    let values: Vec<c64> = (0..rr).map(|k| eig.S().column_vector()[k]).collect();
    let dist_one = |z: &c64| (z - c64::new(1.0, 0.0)).norm();
    let fixed_point_count = values.iter().filter(|z| dist_one(z) < FIXED_POINT_TOL).count();
    let gap = 1.0
        - values
            .iter()
            .filter(|z| dist_one(z) >= FIXED_POINT_TOL)
            .map(|z| z.norm())
            .fold(0.0, f64::max);
    let u = eig.U();
    let trace_of = |col: usize| -> c64 { (0..r).map(|a| u[(a * r + a, col)]).sum() };
    // With several fixed points, take the eigenvector with the largest trace so
    // the normalization is well conditioned.
    let best = if fixed_point_count > 1 {
        (0..rr)
            .filter(|&k| dist_one(&values[k]) < FIXED_POINT_TOL)
            .max_by(|&a, &b| trace_of(a).norm().total_cmp(&trace_of(b).norm()))
    } else {
        (0..rr).min_by(|&a, &b| dist_one(&values[a]).total_cmp(&dist_one(&values[b])))
    }
    .expect("rank > 0");
    let mut y: Vec<c64> = (0..rr).map(|k| u[(k, best)]).collect();
    let tr = trace_of(best);
    if tr.norm() < 1e-12 {
        return Err(Error::Numerical("fixed point is traceless and cannot be normalized".into()));
    }
    y.iter_mut().for_each(|v| *v /= tr);
    // Symmetrize away eigensolver noise in the anti-Hermitian part.
    let mut herm = vec![ZERO; rr];
    for a in 0..r {
        for b in 0..r {
            herm[a * r + b] = (y[a * r + b] + y[b * r + a].conj()) * 0.5;
        }
    }
    let fixed_point = DensityMatrix::from_raw(n, program.local_dim(), proj.expand(&herm))?;
    let target = mmis_state(proj)?;
    debug_assert_eq!(target.dim(), dim);
    Ok(SteadyStateReport {
        sector: proj.sector().to_string(),
        n_sites: n,
        operator_dim: rr,
        fixed_point_count,
        dist_to_projected_identity: trace_distance(&fixed_point, &target)?,
        max_dev_from_projected_identity: fixed_point.max_abs_diff(&target)?,
        fixed_point,
        gap,
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::channel::Boundary;
    use crate::sim::programs::{s3_measurement_program, s3_two_body_program, singlet_triplet_program};
    use crate::sim::projectors::{build_s3_projector, build_su2_projector, SectorProjector};

    #[test]
    fn su2_singlet_sector_has_unique_fixed_point() {
        let p = singlet_triplet_program(4, Boundary::Periodic).unwrap();
        let proj = build_su2_projector(4, 0).unwrap();
        let rep = steady_state_analysis(&p, &proj).unwrap();
        assert_eq!(rep.fixed_point_count, 1);
        assert!(rep.dist_to_projected_identity < 1e-10, "{}", rep.dist_to_projected_identity);
        assert!(rep.gap > 0.0);
        assert!(rep.leakage < 1e-12);
    }

    #[test]
    fn s3_measurement_vs_two_body_only() {
        let proj = build_s3_projector(4, "inv").unwrap();
        let full = steady_state_analysis(&s3_measurement_program(4, Boundary::Open).unwrap(), &proj).unwrap();
        assert_eq!(full.fixed_point_count, 1);
        assert!(full.dist_to_projected_identity < 1e-10);
        // Pair measurements alone also conserve Π_j Z_j, which splits the
        // invariant sector of six sites into two blocks.
        let proj6 = build_s3_projector(6, "inv").unwrap();
        let m6 = steady_state_analysis(&s3_measurement_program(6, Boundary::Open).unwrap(), &proj6).unwrap();
        assert_eq!(m6.fixed_point_count, 1);
        let two = steady_state_analysis(&s3_two_body_program(6, Boundary::Open).unwrap(), &proj6).unwrap();
        assert_eq!(two.fixed_point_count, 2);
    }

    #[test]
    fn whole_space_counts_commutant() {
        // Σ_J d_J² over the sectors present at four sites: 1 + 1 + 4.
        let all = SectorProjector::full(4).unwrap();
        let m = steady_state_analysis(&s3_measurement_program(4, Boundary::Open).unwrap(), &all).unwrap();
        assert_eq!(m.fixed_point_count, 6);
        let two = steady_state_analysis(&s3_two_body_program(4, Boundary::Open).unwrap(), &all).unwrap();
        assert!(two.fixed_point_count > 6, "{}", two.fixed_point_count);
        let su2 = steady_state_analysis(&singlet_triplet_program(4, Boundary::Periodic).unwrap(), &all).unwrap();
        // j = 0, 1, 2 at four sites: 1 + 9 + 25.
        assert_eq!(su2.fixed_point_count, 35);
    }

    #[test]
    fn jm_slice_has_unique_fixed_point() {
        let p = singlet_triplet_program(4, Boundary::Periodic).unwrap();
        let proj = crate::sim::projectors::build_su2_jm_projector(4, 2, 0).unwrap();
        let rep = steady_state_analysis(&p, &proj).unwrap();
        assert_eq!(rep.fixed_point_count, 1);
        assert!(rep.dist_to_projected_identity < 1e-10);
    }

    #[test]
    fn budget() {
        let p = singlet_triplet_program(8, Boundary::Periodic).unwrap();
        let proj = build_su2_projector(8, 0).unwrap();
        assert!(matches!(steady_state_analysis(&p, &proj), Err(Error::Budget(_))));
    }
}
