//! Exact entanglement structure of maximally mixed invariant states (MMIS) and a
//! dense density-matrix simulator for the strongly symmetric channels that
//! prepare them.
//!
//! * [`rep`] holds groups, irreps and exact tensor-power multiplicities.
//! * [`analytics`] evaluates closed-form entanglement and correlation measures.
//! * [`sim`] evolves density matrices under local Kraus circuits and provides the
//!   numerical cross-checks.

pub mod analytics;
pub mod bigmath;
mod error;
pub mod rep;
pub mod sim;

pub use analytics::{EntanglementReport, LogBase};
pub use error::{Error, Result};
pub use rep::{GroupModel, Irrep, IrrepDistribution, IrrepLabel};
pub use sim::{ChannelProgram, DensityMatrix, KrausGate, SectorProjector};
