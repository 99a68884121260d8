use std::io::{Read, Write};

use num_complex::Complex64 as c64;

use super::layout::SiteLayout;
use super::linalg::{antihermitian_norm, hermitian_eigenvalues, LocalOp};
use super::MAX_DENSE_SITES;
use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };

/// Tolerances for [`DensityMatrix::validate`].
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-9;

fn check_budget(n_sites: usize, local_dim: usize) -> Result<usize> {
    let bits = (n_sites as f64) * (local_dim as f64).log2();
    if bits > MAX_DENSE_SITES as f64 + 1e-9 {
        return Err(Error::Budget(format!(
            "{n_sites} sites of dimension {local_dim} exceed the dense budget of {MAX_DENSE_SITES} qubits"
        )));
    }
    Ok(local_dim.pow(n_sites as u32))
}

/// Dense operator on (C^d)^{⊗N}, row-major. Site 0 is the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_sites: usize,
    local_dim: usize,
    data: Vec<c64>,
}

impl DensityMatrix {
    /// Wraps raw data without checking the density-matrix invariants.
    pub fn from_raw(n_sites: usize, local_dim: usize, data: Vec<c64>) -> Result<Self> {
        let dim = check_budget(n_sites, local_dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!("{} entries for a {dim}x{dim} matrix", data.len())));
        }
        Ok(Self { n_sites, local_dim, data })
    }

    pub fn zeros(n_sites: usize, local_dim: usize) -> Result<Self> {
        let dim = check_budget(n_sites, local_dim)?;
        Ok(Self { n_sites, local_dim, data: vec![ZERO; dim * dim] })
    }

    pub fn maximally_mixed(n_sites: usize, local_dim: usize) -> Result<Self> {
        let mut rho = Self::zeros(n_sites, local_dim)?;
        let dim = rho.dim();
        for i in 0..dim {
            rho.data[i * dim + i] = c64::new(1.0 / dim as f64, 0.0);
        }
        Ok(rho)
    }

    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let dim = check_budget(psi.n_sites, psi.local_dim)?;
        let norm = psi.norm_sqr();
        let mut data = vec![ZERO; dim * dim];
        for (i, a) in psi.amps.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in psi.amps.iter().enumerate() {
                data[i * dim + j] = a * b.conj() / norm;
            }
        }
        Ok(Self { n_sites: psi.n_sites, local_dim: psi.local_dim, data })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.n_sites as u32)
    }

    pub fn data(&self) -> &[c64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [c64] {
        &mut self.data
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.data[i * self.dim() + j]
    }

    pub fn trace(&self) -> c64 {
        let dim = self.dim();
        (0..dim).map(|i| self.data[i * dim + i]).sum()
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n_sites != other.n_sites || self.local_dim != other.local_dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{} sites",
                self.n_sites, self.local_dim, other.n_sites, other.local_dim
            )));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { n_sites: self.n_sites, local_dim: self.local_dim, data })
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    /// Largest entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn hermiticity_error(&self) -> f64 {
        antihermitian_norm(self.dim(), &self.data)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.hermiticity_error() > HERMITIAN_TOL {
            return Err(Error::Numerical(format!("matrix is not Hermitian (error {:.3e})", self.hermiticity_error())));
        }
        hermitian_eigenvalues(self.dim(), &self.data)
    }

    /// Checks Hermiticity, unit trace and positivity at the module tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::Assertion(format!("density matrix not Hermitian: {herm:.3e}")));
        }
        let tr = self.trace();
        if (tr - c64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::Assertion(format!("density matrix trace is {tr}")));
        }
        let min = self.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -POSITIVITY_TOL {
            return Err(Error::Assertion(format!("density matrix has eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    /// Relabels sites: site `s` of `self` becomes site `perm[s]` of the result.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_sites;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of {n} sites")));
        }
        let d = self.local_dim;
        let dim = self.dim();
        let map: Vec<usize> = (0..dim)
            .map(|idx| {
                let mut out = 0;
                for s in 0..n {
                    let digit = (idx / d.pow((n - 1 - s) as u32)) % d;
                    out += digit * d.pow((n - 1 - perm[s]) as u32);
                }
                out
            })
            .collect();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[map[i] * dim + map[j]] = self.data[i * dim + j];
            }
        }
        Ok(Self { n_sites: n, local_dim: d, data })
    }

    /// Partial transpose on the sites in `a_sites`.
    pub fn partial_transpose(&self, a_sites: &[usize]) -> Result<Self> {
        let dim = self.dim();
        let (a_part, b_part) = self.split_index(a_sites)?;
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let v = self.data[r * dim + c];
                if v != ZERO {
                    data[(a_part[c] + b_part[r]) * dim + a_part[r] + b_part[c]] = v;
                }
            }
        }
        Ok(Self { n_sites: self.n_sites, local_dim: self.local_dim, data })
    }

    fn split_index(&self, a_sites: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.n_sites;
        let mut in_a = vec![false; n];
        for &s in a_sites {
            if s >= n {
                return Err(Error::DimensionMismatch(format!("site {s} outside {n} sites")));
            }
            in_a[s] = true;
        }
        let d = self.local_dim;
        let dim = self.dim();
        let mut a_part = vec![0; dim];
        let mut b_part = vec![0; dim];
        for idx in 0..dim {
            for s in 0..n {
                let w = d.pow((n - 1 - s) as u32);
                let digit = (idx / w) % d;
                if in_a[s] {
                    a_part[idx] += digit * w;
                } else {
                    b_part[idx] += digit * w;
                }
            }
        }
        Ok((a_part, b_part))
    }

    /// Reduced density matrix on `keep` (in the given site order).
    pub fn partial_trace_keep(&self, keep: &[usize]) -> Result<LocalOp> {
        let layout = SiteLayout::new(self.n_sites, self.local_dim, keep)?;
        let dim = self.dim();
        let m = layout.local_size();
        let mut out = vec![ZERO; m * m];
        for &b in &layout.bases {
            for x in 0..m {
                let row = (b + layout.offsets[x]) * dim + b;
                for y in 0..m {
                    out[x * m + y] += self.data[row + layout.offsets[y]];
                }
            }
        }
        Ok(LocalOp::from_rows(m, out))
    }

    /// Writes an 8-byte little-endian header (n_sites: u32, local_dim: u32) followed
    /// by the row-major entries as (re, im) little-endian f64 pairs.
    pub fn write_binary(&self, mut w: impl Write) -> Result<()> {
        w.write_all(&(self.n_sites as u32).to_le_bytes())?;
        w.write_all(&(self.local_dim as u32).to_le_bytes())?;
        for v in &self.data {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(mut r: impl Read) -> Result<Self> {
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        let n_sites = u32::from_le_bytes(word) as usize;
        r.read_exact(&mut word)?;
        let local_dim = u32::from_le_bytes(word) as usize;
        let dim = check_budget(n_sites, local_dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        let mut buf = [0u8; 16];
        for _ in 0..dim * dim {
            r.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(buf[8..].try_into().expect("8 bytes"));
            data.push(c64::new(re, im));
        }
        Ok(Self { n_sites, local_dim, data })
    }
}

/// Pure state on (C^d)^{⊗N}.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub n_sites: usize,
    pub local_dim: usize,
    pub amps: Vec<c64>,
}

impl StateVector {
    pub fn basis(n_sites: usize, local_dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; local_dim.pow(n_sites as u32)];
        amps[index] = c64::new(1.0, 0.0);
        Self { n_sites, local_dim, amps }
    }

    /// Tensor product of states on consecutive blocks of sites.
    pub fn product(parts: &[StateVector]) -> Self {
        let local_dim = parts.first().map(|p| p.local_dim).unwrap_or(2);
        let mut amps = vec![c64::new(1.0, 0.0)];
        let mut n_sites = 0;
        for p in parts {
            assert_eq!(p.local_dim, local_dim, "mixed local dimensions");
            amps = amps.iter().flat_map(|a| p.amps.iter().map(move |b| a * b)).collect();
            n_sites += p.n_sites;
        }
        Self { n_sites, local_dim, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a /= n;
        }
    }

    /// ψ ← (op on `support`) ψ.
    pub fn apply_local(&mut self, op: &LocalOp, support: &[usize]) -> Result<()> {
        let layout = SiteLayout::new(self.n_sites, self.local_dim, support)?;
        if op.dim() != layout.local_size() {
            return Err(Error::DimensionMismatch(format!("{}-dim operator on {} sites", op.dim(), support.len())));
        }
        let m = layout.local_size();
        let mut local = vec![ZERO; m];
        for &b in &layout.bases {
            for x in 0..m {
                local[x] = self.amps[b + layout.offsets[x]];
            }
            for x in 0..m {
                self.amps[b + layout.offsets[x]] = ZERO;
            }
            for &(x, y, v) in op.nonzeros() {
                self.amps[b + layout.offsets[x]] += v * local[y];
            }
        }
        Ok(())
    }

    /// Von Neumann entropy (nats) of the reduced state on the first `n_a` sites.
    pub fn half_entropy(&self, n_a: usize) -> Result<f64> {
        let dim_a = self.local_dim.pow(n_a as u32);
        let dim_b = self.amps.len() / dim_a;
        let mut rho = vec![ZERO; dim_a * dim_a];
        for i in 0..dim_a {
            for j in i..dim_a {
                let v: c64 = (0..dim_b).map(|k| self.amps[i * dim_b + k] * self.amps[j * dim_b + k].conj()).sum();
                rho[i * dim_a + j] = v;
                rho[j * dim_a + i] = v.conj();
            }
        }
        let norm = self.norm_sqr();
        Ok(hermitian_eigenvalues(dim_a, &rho)?
            .into_iter()
            .map(|l| l / norm)
            .filter(|&l| l > 1e-15)
            .map(|l| -l * l.ln())
            .sum())
    }
}
