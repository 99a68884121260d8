//! Closed-form entanglement and correlation measures of the MMIS, evaluated from
//! exact irrep distributions.
//!
//! Everything is computed in nats; [`LogBase`] converts once at the edge.

pub mod cg;
pub mod correlators;
pub mod fit;
pub mod reduced;
pub mod thermal;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use cg::{clebsch_gordan, jm_sector_entanglement, SignedSqrt};
pub use correlators::{
    fidelity_correlator_su2, fidelity_correlator_su2_exact, two_point_correlator, two_point_correlator_exact, CorrelatorKind,
};
pub use fit::{fit_log_slope, LogFit};
pub use reduced::{reduced_spectrum, ReducedBlock, ReducedSpectrum};
pub use thermal::{finite_t_entanglement, Temperature, ThermalSpec};

use crate::bigmath::{ln_big, ratio_to_f64, CompensatedSum};
use crate::error::{Error, Result};
use crate::rep::{Family, GroupModel, Irrep, IrrepDistribution};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    /// Converts a value measured in nats.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "E" | "ln" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            other => Err(Error::InvalidArgument(format!("log base must be e or 2, got {other}"))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// All bipartite measures of the MMIS for one cut, in nats.
#[derive(Clone, Debug, Serialize)]
pub struct EntanglementReport {
    pub group: String,
    pub n: u64,
    pub n_a: u64,
    pub n_b: u64,
    pub entanglement: f64,
    pub entropy_a: f64,
    pub log_negativity: f64,
    pub operator_entanglement: f64,
    /// Shannon entropy of p(J); equals the classical part of the operator entanglement.
    pub shannon: f64,
}

impl EntanglementReport {
    pub fn from_distribution(dist: &IrrepDistribution) -> Self {
        let ln_c_inv = ln_big(dist.invariant_multiplicity());
        let mut e = CompensatedSum::new();
        let mut s_a = CompensatedSum::new();
        let mut neg = CompensatedSum::new();
        let mut h = CompensatedSum::new();
        for entry in dist.entries() {
            let p = entry.prob_f64();
            let ln_d = (entry.irrep.dim as f64).ln();
            e.add(p * ln_d);
            s_a.add(p * (ln_c_inv + ln_d - ln_big(&entry.mult_b)));
            neg.add(p * entry.irrep.dim as f64);
            h.add(p * (ln_c_inv - ln_big(&entry.mult_a) - ln_big(&entry.mult_b)));
        }
        let entanglement = e.value();
        let shannon = h.value();
        Self {
            group: dist.group().name(),
            n: dist.n(),
            n_a: dist.n_a(),
            n_b: dist.n_b(),
            entanglement,
            entropy_a: s_a.value(),
            log_negativity: neg.value().ln(),
            operator_entanglement: 2.0 * entanglement + shannon,
            shannon,
        }
    }

    pub fn compute(group: &GroupModel, n: u64, n_a: u64) -> Result<Self> {
        Ok(Self::from_distribution(&distribution(group, n, n_a)?))
    }

    /// Returns a copy with every entropic field expressed in `base`.
    pub fn in_base(&self, base: LogBase) -> Self {
        Self {
            entanglement: base.convert(self.entanglement),
            entropy_a: base.convert(self.entropy_a),
            log_negativity: base.convert(self.log_negativity),
            operator_entanglement: base.convert(self.operator_entanglement),
            shannon: base.convert(self.shannon),
            ..self.clone()
        }
    }
}

fn distribution(group: &GroupModel, n: u64, n_a: u64) -> Result<IrrepDistribution> {
    if n_a > n {
        return Err(Error::InvalidArgument(format!("cut {n_a} exceeds system size {n}")));
    }
    IrrepDistribution::new(group, n_a, n - n_a)
}

/// Entanglement of formation (equal to the distillable entanglement): Σ p(J) log d_J.
pub fn entanglement_of_formation(group: &GroupModel, n: u64, n_a: u64) -> Result<f64> {
    let dist = distribution(group, n, n_a)?;
    Ok(dist.entries().iter().map(|e| e.prob_f64() * (e.irrep.dim as f64).ln()).collect::<CompensatedSum>().value())
}

/// log Σ p(J) d_J.
pub fn log_negativity_analytic(group: &GroupModel, n: u64, n_a: u64) -> Result<f64> {
    let dist = distribution(group, n, n_a)?;
    let mean_dim: BigRational = dist
        .entries()
        .iter()
        .map(|e| &e.prob * BigRational::from_integer(e.irrep.dim.into()))
        .fold(BigRational::zero(), |a, b| a + b);
    Ok(ratio_to_f64(&mean_dim).ln())
}

pub fn entanglement_entropy_a(group: &GroupModel, n: u64, n_a: u64) -> Result<f64> {
    Ok(EntanglementReport::compute(group, n, n_a)?.entropy_a)
}

pub fn operator_entanglement(group: &GroupModel, n: u64, n_a: u64) -> Result<f64> {
    Ok(EntanglementReport::compute(group, n, n_a)?.operator_entanglement)
}

/// Bond dimension and purification-rank bounds of a minimal MPDO across the cut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MpdoBounds {
    pub bond_dimension: f64,
    pub purification_lower: f64,
    pub purification_upper: f64,
}

pub fn mpdo_bounds(group: &GroupModel, n: u64, n_a: u64) -> Result<MpdoBounds> {
    let d = operator_entanglement(group, n, n_a)?.exp();
    Ok(MpdoBounds { bond_dimension: d, purification_lower: d.sqrt(), purification_upper: d + 1.0 })
}

/// Large-N limit of p(J) for a cut whose `A` block has `n_a` sites, from the
/// coefficients f_J = d_J |Z| / |G|. Only irreps whose central character is
/// compatible with `n_a` sites contribute, so for groups with a nontrivial
/// center the answer depends on `n_a` modulo the exponent of the center.
pub fn asymptotic_distribution_at(group: &GroupModel, n_a: u64) -> Result<Vec<(Irrep, BigRational)>> {
    let Family::Finite(_) = group.family() else {
        return Err(Error::Unsupported(format!("{} is not a finite group", group.name())));
    };
    let f_inv = group.asymptotic_multiplicity_coefficient(&group.invariant())?;
    let mut out = Vec::new();
    for j in group.candidate_irreps(0) {
        if !group.central_character_matches(&j, n_a)? {
            continue;
        }
        let f = group.asymptotic_multiplicity_coefficient(&j)?;
        let f_conj = group.asymptotic_multiplicity_coefficient(&group.conjugate(&j)?)?;
        out.push((j, f * f_conj / &f_inv));
    }
    Ok(out)
}

/// [`asymptotic_distribution_at`] for block sizes on which the center acts trivially.
pub fn asymptotic_distribution(group: &GroupModel) -> Result<Vec<(Irrep, BigRational)>> {
    let center = match group.family() {
        Family::Finite(t) => t.center_order(),
        _ => 1,
    };
    asymptotic_distribution_at(group, center)
}

fn mean_log_dim(dist: &[(Irrep, BigRational)]) -> f64 {
    dist.iter().map(|(j, p)| ratio_to_f64(p) * (j.dim as f64).ln()).collect::<CompensatedSum>().value()
}

fn log_mean_dim(dist: &[(Irrep, BigRational)]) -> f64 {
    let mean: BigRational =
        dist.iter().map(|(j, p)| p * BigRational::from_integer(j.dim.into())).fold(BigRational::zero(), |a, b| a + b);
    ratio_to_f64(&mean).ln()
}

/// Thermodynamic-limit half-chain entanglement Σ_J p_∞(J) log d_J.
pub fn asymptotic_entanglement_finite_group(group: &GroupModel) -> Result<f64> {
    Ok(mean_log_dim(&asymptotic_distribution(group)?))
}

pub fn asymptotic_entanglement_finite_group_at(group: &GroupModel, n_a: u64) -> Result<f64> {
    Ok(mean_log_dim(&asymptotic_distribution_at(group, n_a)?))
}

/// Thermodynamic-limit half-chain log-negativity log Σ_J p_∞(J) d_J.
pub fn asymptotic_log_negativity_finite_group(group: &GroupModel) -> Result<f64> {
    Ok(log_mean_dim(&asymptotic_distribution(group)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn two_qubit_singlet() {
        let r = EntanglementReport::compute(&GroupModel::su2(), 2, 1).unwrap();
        assert!(close(r.entanglement, LN2, 1e-15));
        assert!(close(r.entropy_a, LN2, 1e-15));
        assert!(close(r.log_negativity, LN2, 1e-15));
        assert!(close(r.operator_entanglement, 2.0 * LN2, 1e-15));
        assert!(close(r.shannon, 0.0, 1e-15));
    }

    #[test]
    fn four_qubits_half_cut() {
        let g = GroupModel::su2();
        let r = EntanglementReport::compute(&g, 4, 2).unwrap();
        // p = {1/2, 1/2} over d ∈ {1, 3}.
        let ln3 = 3f64.ln();
        assert!(close(r.entanglement, 0.5 * ln3, 1e-14));
        assert!(close(r.log_negativity, LN2, 1e-14));
        assert!(close(r.entropy_a, LN2 + 0.5 * ln3, 1e-14));
        assert!(close(r.operator_entanglement, 6f64.ln(), 1e-14));
        assert!(close(entanglement_of_formation(&g, 4, 2).unwrap(), 0.5 * ln3, 1e-14));
        assert!(close(log_negativity_analytic(&g, 4, 2).unwrap(), LN2, 1e-14));
    }

    #[test]
    fn s3_limit_values() {
        let g = GroupModel::by_name("s3").unwrap();
        assert!(close(asymptotic_entanglement_finite_group(&g).unwrap(), 2.0 * LN2 / 3.0, 1e-15));
        assert!(close(asymptotic_log_negativity_finite_group(&g).unwrap(), (5.0f64 / 3.0).ln(), 1e-15));
        // Corrections are O(2^{-N/2}): about 2.8e-5 for 15+15 sites, 8.8e-7 for 20+20.
        let e30 = entanglement_of_formation(&g, 30, 15).unwrap();
        assert!(close(e30, 2.0 * LN2 / 3.0, 3e-5));
        let e40 = entanglement_of_formation(&g, 40, 20).unwrap();
        assert!(close(e40, 2.0 * LN2 / 3.0, 1e-6));
        let o = operator_entanglement(&g, 40, 20).unwrap();
        let h = -(2.0 * (1.0f64 / 6.0) * (1.0f64 / 6.0).ln() + (2.0f64 / 3.0) * (2.0f64 / 3.0).ln());
        assert!(close(o, 4.0 * LN2 / 3.0 + h, 1e-5));
    }

    #[test]
    fn abelian_groups_are_separable() {
        for name in ["z2", "z3"] {
            let g = GroupModel::by_name(name).unwrap();
            assert_eq!(asymptotic_entanglement_finite_group(&g).unwrap(), 0.0);
            for n in 1..12u64 {
                for n_a in 0..=n {
                    match EntanglementReport::compute(&g, n, n_a) {
                        Ok(r) => {
                            assert_eq!(r.entanglement, 0.0);
                            assert_eq!(r.log_negativity, 0.0);
                        }
                        Err(Error::EmptySector { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn centered_groups_respect_block_parity() {
        // D4 on its 2d irrep: the center acts as −1 on odd blocks, forcing J = E there.
        let g = GroupModel::by_name("d4").unwrap();
        assert!(close(asymptotic_entanglement_finite_group_at(&g, 21).unwrap(), LN2, 1e-15));
        assert_eq!(asymptotic_entanglement_finite_group_at(&g, 20).unwrap(), 0.0);
        assert!(close(entanglement_of_formation(&g, 42, 21).unwrap(), LN2, 1e-9));
        assert!(close(entanglement_of_formation(&g, 40, 20).unwrap(), 0.0, 1e-9));
        for n_a in [20u64, 21] {
            let total: BigRational = asymptotic_distribution_at(&g, n_a).unwrap().into_iter().map(|(_, p)| p).sum();
            assert_eq!(total, BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn mpdo_for_bell_pair() {
        let b = mpdo_bounds(&GroupModel::su2(), 2, 1).unwrap();
        assert!(close(b.bond_dimension, 4.0, 1e-12));
        assert!(close(b.purification_lower, 2.0, 1e-12));
        assert!(close(b.purification_upper, 5.0, 1e-12));
    }

    #[test]
    fn base_two_divides_by_ln2() {
        let r = EntanglementReport::compute(&GroupModel::su2(), 2, 1).unwrap();
        let r2 = r.in_base(LogBase::Two);
        assert!(close(r2.entanglement, 1.0, 1e-15));
        assert_eq!(r2.n, 2);
        assert_eq!("2".parse::<LogBase>().unwrap(), LogBase::Two);
        assert!("10".parse::<LogBase>().is_err());
    }

    #[test]
    fn cut_beyond_system_is_rejected() {
        assert!(matches!(entanglement_of_formation(&GroupModel::su2(), 4, 5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn non_lie_asymptotics_are_rejected_for_lie_groups() {
        assert!(matches!(asymptotic_entanglement_finite_group(&GroupModel::su2()), Err(Error::Unsupported(_))));
    }
}
