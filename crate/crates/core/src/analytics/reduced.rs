//! Exact spectrum of the k-site reduced density matrix of the MMIS.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bigmath::{big_ratio, ratio_to_f64};
use crate::error::{Error, Result};
use crate::rep::{GroupModel, Irrep};

#[derive(Clone, Debug)]
pub struct ReducedBlock {
    pub irrep: Irrep,
    pub label: String,
    /// C_{J*}^{N−k} / (C_inv^N d_J); zero when J cannot be completed to an invariant.
    pub eigenvalue: BigRational,
    /// d_J · C_J^k.
    pub degeneracy: BigUint,
}

#[derive(Clone, Debug)]
pub struct ReducedSpectrum {
    pub n: u64,
    pub k: u64,
    pub local_dim: u64,
    pub blocks: Vec<ReducedBlock>,
}

pub fn reduced_spectrum(group: &GroupModel, n: u64, k: u64) -> Result<ReducedSpectrum> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= N-1, got k={k}, N={n}")));
    }
    let c_inv = group.multiplicity(&group.invariant(), n)?;
    if c_inv.is_zero() {
        return Err(Error::EmptySector { sites: n as usize });
    }
    let mut blocks = Vec::new();
    for irrep in group.candidate_irreps(k) {
        let c_k = group.multiplicity(&irrep, k)?;
        if c_k.is_zero() {
            continue;
        }
        let c_rest = group.multiplicity(&group.conjugate(&irrep)?, n - k)?;
        let eigenvalue = big_ratio(&c_rest, &(&c_inv * irrep.dim));
        blocks.push(ReducedBlock {
            label: group.irrep_name(&irrep),
            degeneracy: c_k * irrep.dim,
            eigenvalue,
            irrep,
        });
    }
    let spec = ReducedSpectrum { n, k, local_dim: group.onsite_dim(), blocks };
    if spec.total_weight() != BigRational::from_integer(1.into()) {
        return Err(Error::Assertion(format!("reduced spectrum of {} on {n} sites does not sum to one", group.name())));
    }
    Ok(spec)
}

impl ReducedSpectrum {
    /// Σ eigenvalue · degeneracy, exactly.
    pub fn total_weight(&self) -> BigRational {
        self.blocks
            .iter()
            .map(|b| &b.eigenvalue * BigRational::from_integer(BigInt::from(b.degeneracy.clone())))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// ½ Σ_J deg_J |λ_J − d_V^{−k}|, exactly.
    pub fn trace_distance_to_identity_exact(&self) -> BigRational {
        let uniform = BigRational::new(1.into(), BigInt::from(self.local_dim).pow(self.k as u32));
        let total = self
            .blocks
            .iter()
            .map(|b| (&b.eigenvalue - &uniform).abs() * BigRational::from_integer(BigInt::from(b.degeneracy.clone())))
            .fold(BigRational::zero(), |a, b| a + b);
        total / BigRational::from_integer(2.into())
    }

    pub fn trace_distance_to_identity(&self) -> f64 {
        ratio_to_f64(&self.trace_distance_to_identity_exact())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Block<'a> {
            irrep: &'a str,
            eigenvalue_num: String,
            eigenvalue_den: String,
            degeneracy: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            k: u64,
            blocks: Vec<Block<'a>>,
        }
        let doc = Doc {
            k: self.k,
            blocks: self
                .blocks
                .iter()
                .map(|b| Block {
                    irrep: &b.label,
                    eigenvalue_num: b.eigenvalue.numer().to_string(),
                    eigenvalue_den: b.eigenvalue.denom().to_string(),
                    degeneracy: b.degeneracy.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}
