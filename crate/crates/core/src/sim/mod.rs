//! Dense density-matrix simulation of symmetric channels on qudit chains.
//!
//! States are full `d^N × d^N` matrices; gates are applied by contracting their
//! Kraus operators over the support indices only, so a gate on `k` sites costs
//! `O(d^{2N} d^{2k})` rather than a full-space matrix product.

mod channel;
mod density;
mod layout;
mod linalg;
mod measures;
mod programs;
mod projectors;
mod run;
mod steady;

/// Largest number of qubits (or qubit-equivalent) for dense density matrices.
pub const MAX_DENSE_SITES: usize = 12;
/// Largest chain for which the one-step superoperator is built explicitly.
pub const MAX_SUPEROP_SITES: usize = 6;

pub use channel::{apply_gate, apply_timestep, Boundary, ChannelProgram, KrausGate, Layer};
pub use density::{DensityMatrix, StateVector, HERMITIAN_TOL, POSITIVITY_TOL, TRACE_TOL};
pub use layout::SiteLayout;
pub use linalg::{hermitian_eigen, hermitian_eigenvalues, trace_norm, LocalOp};
pub use measures::{
    convergence_metric, expectation, half_chain_log_negativity, log_negativity_numeric, quadratic_correlator,
    reduced_entropy, sector_leakage, trace_distance, trace_norm_of,
};
pub use programs::{
    abs_spin_spin, dimer_state, pauli_string, pauli_x, pauli_y, pauli_z, s3_measurement_program, s3_pair_state,
    s3_random_unitary_program, s3_three_body_kraus, s3_two_body_kraus, s3_two_body_program, singlet_projector,
    singlet_triplet_program, spin_spin, Model, UnitaryParams, DEFAULT_PHI1, DEFAULT_PHI2, DEFAULT_Q,
};
pub use projectors::{
    build_projector, build_s3_projector, build_su2_jm_projector, build_su2_projector, mmis_state, SectorProjector,
    CASIMIR_TOL,
};
pub use run::{fmt_sig, run_model, run_trajectory, RunLog, RunOptions, RunRow};
pub use steady::{steady_state_analysis, SteadyStateReport, FIXED_POINT_TOL};
