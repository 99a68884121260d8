//! Index bookkeeping for operators supported on a subset of sites.
//!
//! A basis index of the full space is the base-`d` number whose most significant
//! digit is site 0. For a support `[s_0, …, s_{k−1}]`, the local index puts `s_0`
//! in the most significant position. Every full index splits uniquely as
//! `base + offset[x]`, where `base` has zero digits on the support.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SiteLayout {
    pub n_sites: usize,
    pub local_dim: usize,
    pub support: Vec<usize>,
    /// Full-space offset of each local basis index.
    pub offsets: Vec<usize>,
    /// Full-space indices with zero digits on the support, ascending.
    pub bases: Vec<usize>,
}

impl SiteLayout {
    pub fn new(n_sites: usize, local_dim: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidArgument("operator support is empty".into()));
        }
        let mut seen = vec![false; n_sites];
        for &s in support {
            if s >= n_sites {
                return Err(Error::DimensionMismatch(format!("site {s} outside a chain of {n_sites} sites")));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument(format!("site {s} repeated in support {support:?}")));
            }
        }
        let weight = |s: usize| local_dim.pow((n_sites - 1 - s) as u32);
        let k = support.len();
        let local = local_dim.pow(k as u32);
        let offsets = (0..local)
            .map(|x| {
                let mut rest = x;
                let mut off = 0;
                for i in (0..k).rev() {
                    off += (rest % local_dim) * weight(support[i]);
                    rest /= local_dim;
                }
                off
            })
            .collect();
        let complement: Vec<usize> = (0..n_sites).filter(|s| !seen[*s]).collect();
        let mut bases = vec![0usize];
        for &s in &complement {
            let w = weight(s);
            bases = bases.iter().flat_map(|&b| (0..local_dim).map(move |v| b + v * w)).collect();
        }
        bases.sort_unstable();
        Ok(Self { n_sites, local_dim, support: support.to_vec(), offsets, bases })
    }

    pub fn local_size(&self) -> usize {
        self.offsets.len()
    }

    pub fn full_size(&self) -> usize {
        self.local_dim.pow(self.n_sites as u32)
    }

    /// Digit of `site` in full index `idx`.
    pub fn digit(&self, idx: usize, site: usize) -> usize {
        (idx / self.local_dim.pow((self.n_sites - 1 - site) as u32)) % self.local_dim
    }
}
