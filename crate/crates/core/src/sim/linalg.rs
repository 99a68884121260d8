//! Small dense operators and Hermitian spectra that exploit block structure.

use faer::{Mat, Side};
use num_complex::Complex64 as c64;

use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
const ONE: c64 = c64 { re: 1.0, im: 0.0 };

/// A dense square matrix on a handful of sites, row-major, with its nonzero
/// pattern cached for cheap application inside block loops.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOp {
    dim: usize,
    data: Vec<c64>,
    nonzeros: Vec<(usize, usize, c64)>,
}

impl LocalOp {
    pub fn from_rows(dim: usize, data: Vec<c64>) -> Self {
        assert_eq!(data.len(), dim * dim, "operator data has wrong length");
        let nonzeros = data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != ZERO)
            .map(|(k, v)| (k / dim, k % dim, *v))
            .collect();
        Self { dim, data, nonzeros }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> c64) -> Self {
        Self::from_rows(dim, (0..dim * dim).map(|k| f(k / dim, k % dim)).collect())
    }

    pub fn real(dim: usize, rows: &[f64]) -> Self {
        Self::from_rows(dim, rows.iter().map(|&r| c64::new(r, 0.0)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_rows(dim, vec![ZERO; dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[c64] {
        &self.data
    }

    pub(crate) fn nonzeros(&self) -> &[(usize, usize, c64)] {
        &self.nonzeros
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for &(i, k, a) in &self.nonzeros {
            for j in 0..d {
                out[i * d + j] += a * other.data[k * d + j];
            }
        }
        Self::from_rows(d, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_rows(self.dim, self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: c64) -> Self {
        Self::from_rows(self.dim, self.data.iter().map(|a| a * s).collect())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |i, j| self.get(i / b, j / b) * other.get(i % b, j % b))
    }

    /// Largest entry-wise deviation from `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.nonzeros.is_empty()
    }

    pub fn trace(&self) -> c64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Union-find over matrix indices; two indices are linked when the entry between
/// them is nonzero. Returns the index groups in ascending order of their minima.
pub(crate) fn connected_blocks(dim: usize, data: &[c64], threshold: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..dim {
        let row = &data[i * dim..(i + 1) * dim];
        for (j, v) in row.iter().enumerate().skip(i + 1) {
            if v.norm_sqr() > threshold * threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; dim];
    for i in 0..dim {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn submatrix(dim: usize, data: &[c64], idx: &[usize]) -> Mat<c64> {
    Mat::from_fn(idx.len(), idx.len(), |a, b| data[idx[a] * dim + idx[b]])
}

/// Eigenvalues of a Hermitian matrix (row-major), computed block by block over
/// the connected components of its exact nonzero pattern. Sorted ascending.
pub fn hermitian_eigenvalues(dim: usize, data: &[c64]) -> Result<Vec<f64>> {
    if data.len() != dim * dim {
        return Err(Error::DimensionMismatch(format!("expected {dim}x{dim} matrix, got {} entries", data.len())));
    }
    let mut out = Vec::with_capacity(dim);
    for block in connected_blocks(dim, data, 0.0) {
        if block.len() == 1 {
            out.push(data[block[0] * dim + block[0]].re);
            continue;
        }
        let m = submatrix(dim, data, &block);
        let ev = m
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Numerical(format!("Hermitian eigensolver failed: {e:?}")))?;
        out.extend(ev);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Eigenpairs of a Hermitian matrix; eigenvectors are returned as dense columns
/// of length `dim`, grouped by block and ascending within each block.
pub fn hermitian_eigen(dim: usize, data: &[c64]) -> Result<Vec<(f64, Vec<c64>)>> {
    let mut out = Vec::with_capacity(dim);
    for block in connected_blocks(dim, data, 0.0) {
        let m = submatrix(dim, data, &block);
        let evd = m
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Numerical(format!("Hermitian eigensolver failed: {e:?}")))?;
        let s = evd.S().column_vector();
        let u = evd.U();
        for k in 0..block.len() {
            let mut v = vec![ZERO; dim];
            for (a, &i) in block.iter().enumerate() {
                v[i] = u[(a, k)];
            }
            out.push((s[k].re, v));
        }
    }
    Ok(out)
}

/// Σ |λ| for a Hermitian matrix.
pub fn trace_norm(dim: usize, data: &[c64]) -> Result<f64> {
    Ok(hermitian_eigenvalues(dim, data)?.iter().map(|l| l.abs()).sum())
}

/// Operator norm of the anti-Hermitian part, (A − A†)/2, bounded by its Frobenius norm.
pub fn antihermitian_norm(dim: usize, data: &[c64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            acc += 2.0 * ((data[i * dim + j] - data[j * dim + i].conj()) * 0.5).norm_sqr();
        }
        acc += data[i * dim + i].im.powi(2);
    }
    acc.sqrt()
}
