use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GroupModel, Irrep};
use crate::bigmath::{big_ratio, ratio_to_f64};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DistributionEntry {
    /// The irrep carried by the `A` block; the `B` block carries its conjugate.
    pub irrep: Irrep,
    pub mult_a: BigUint,
    pub mult_b: BigUint,
    pub prob: BigRational,
}

impl DistributionEntry {
    pub fn prob_f64(&self) -> f64 {
        ratio_to_f64(&self.prob)
    }
}

/// Weights p(J) with which each irrep pairing J ⊗ J* appears in the invariant
/// sector of `N = N_A + N_B` sites.
#[derive(Clone, Debug)]
pub struct IrrepDistribution {
    group: GroupModel,
    n_a: u64,
    n_b: u64,
    c_inv: BigUint,
    entries: Vec<DistributionEntry>,
}

impl IrrepDistribution {
    pub fn new(group: &GroupModel, n_a: u64, n_b: u64) -> Result<Self> {
        let n = n_a + n_b;
        let c_inv = group.multiplicity(&group.invariant(), n)?;
        if c_inv.is_zero() {
            return Err(Error::EmptySector { sites: n as usize });
        }
        let mut entries = Vec::new();
        let mut total = BigUint::zero();
        for irrep in group.candidate_irreps(n_a) {
            let mult_a = group.multiplicity(&irrep, n_a)?;
            if mult_a.is_zero() {
                continue;
            }
            let mult_b = group.multiplicity(&group.conjugate(&irrep)?, n_b)?;
            if mult_b.is_zero() {
                continue;
            }
            let weight = &mult_a * &mult_b;
            total += &weight;
            entries.push(DistributionEntry { prob: big_ratio(&weight, &c_inv), irrep, mult_a, mult_b });
        }
        if total != c_inv {
            return Err(Error::Assertion(format!(
                "multiplicity factorization failed for {} on {n_a}+{n_b} sites: sum {total} != {c_inv}",
                group.name()
            )));
        }
        Ok(Self { group: group.clone(), n_a, n_b, c_inv, entries })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn n(&self) -> u64 {
        self.n_a + self.n_b
    }

    pub fn n_a(&self) -> u64 {
        self.n_a
    }

    pub fn n_b(&self) -> u64 {
        self.n_b
    }

    /// C_inv^N, the number of invariant copies on the whole system.
    pub fn invariant_multiplicity(&self) -> &BigUint {
        &self.c_inv
    }

    pub fn entries(&self) -> &[DistributionEntry] {
        &self.entries
    }

    pub fn prob_of(&self, irrep: &Irrep) -> BigRational {
        self.entries.iter().find(|e| &e.irrep == irrep).map(|e| e.prob.clone()).unwrap_or_else(BigRational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_qubits() {
        let g = GroupModel::su2();
        let dist = IrrepDistribution::new(&g, 1, 1).unwrap();
        assert_eq!(dist.entries().len(), 1);
        assert_eq!(dist.entries()[0].irrep, Irrep::spin(1));
        assert_eq!(dist.entries()[0].prob, BigRational::one());
    }

    #[test]
    fn four_qubits() {
        let g = GroupModel::su2();
        let dist = IrrepDistribution::new(&g, 2, 2).unwrap();
        assert_eq!(dist.prob_of(&Irrep::spin(0)), q(1, 2));
        assert_eq!(dist.prob_of(&Irrep::spin(2)), q(1, 2));
        assert_eq!(dist.prob_of(&Irrep::spin(4)), q(0, 1));
    }

    #[test]
    fn odd_chain_is_empty() {
        let err = IrrepDistribution::new(&GroupModel::su2(), 2, 3).unwrap_err();
        assert!(matches!(err, Error::EmptySector { sites: 5 }));
    }

    #[test]
    fn s3_large_split_approaches_asymptotic_weights() {
        let g = GroupModel::by_name("s3").unwrap();
        let dist = IrrepDistribution::new(&g, 20, 20).unwrap();
        let p = |l: &str| ratio_to_f64(&dist.prob_of(&g.parse_irrep(l).unwrap()));
        assert!((p("inv") - 1.0 / 6.0).abs() < 1e-5);
        assert!((p("sgn") - 1.0 / 6.0).abs() < 1e-5);
        assert!((p("2d") - 2.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn complex_irreps_pair_with_their_conjugates() {
        // The Z3 charge-ω irrep on A must pair with charge-ω̄ on B.
        let g = GroupModel::by_name("z3").unwrap();
        let dist = IrrepDistribution::new(&g, 1, 2).unwrap();
        assert_eq!(dist.entries().len(), 1);
        let e = &dist.entries()[0];
        assert_eq!(e.irrep, *g.onsite());
        assert_ne!(g.conjugate(&e.irrep).unwrap(), e.irrep);
    }
}
