//! Projectors onto symmetry sectors of qubit chains, stored through an
//! orthonormal basis of their image.

use num_bigint::BigUint;
use num_complex::Complex64 as c64;
use num_traits::ToPrimitive;

use super::density::DensityMatrix;
use super::linalg::hermitian_eigen;
use crate::error::{Error, Result};
use crate::rep::{su2_multiplicity, Family, GroupModel, Irrep};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
/// Eigenvalues of S² within this distance of j(j+1) belong to the sector.
pub const CASIMIR_TOL: f64 = 1e-7;
const BASIS_CUTOFF: f64 = 1e-13;

/// Orthogonal projector P = Σ_k |v_k⟩⟨v_k| onto one irrep sector of `n_sites` qubits.
#[derive(Clone, Debug)]
pub struct SectorProjector {
    n_sites: usize,
    group: String,
    sector: String,
    /// Orthonormal image basis; each vector stored by its nonzero entries.
    columns: Vec<Vec<(usize, c64)>>,
}

impl SectorProjector {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn local_dim(&self) -> usize {
        2
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn sector(&self) -> &str {
        &self.sector
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, c64)>] {
        &self.columns
    }

    /// Dense column `k` of the image basis.
    pub fn column_dense(&self, k: usize) -> Vec<c64> {
        let mut v = vec![ZERO; self.dim()];
        for &(i, a) in &self.columns[k] {
            v[i] = a;
        }
        v
    }

    /// Dense row-major matrix of P.
    pub fn matrix(&self) -> Vec<c64> {
        let dim = self.dim();
        let mut p = vec![ZERO; dim * dim];
        for col in &self.columns {
            for &(i, a) in col {
                for &(j, b) in col {
                    p[i * dim + j] += a * b.conj();
                }
            }
        }
        p
    }

    /// V†·X·V for a dense row-major X, as a rank×rank row-major matrix.
    pub fn compress(&self, x: &[c64]) -> Vec<c64> {
        let dim = self.dim();
        let r = self.rank();
        // X·v_b for each column.
        let xv: Vec<Vec<c64>> = self
            .columns
            .iter()
            .map(|col| {
                (0..dim)
                    .map(|i| col.iter().map(|&(j, b)| x[i * dim + j] * b).sum())
                    .collect()
            })
            .collect();
        let mut out = vec![ZERO; r * r];
        for (a, cola) in self.columns.iter().enumerate() {
            for b in 0..r {
                out[a * r + b] = cola.iter().map(|&(i, v)| v.conj() * xv[b][i]).sum();
            }
        }
        out
    }

    /// V·Y·V† for a rank×rank row-major Y, as a dense matrix.
    pub fn expand(&self, y: &[c64]) -> Vec<c64> {
        let dim = self.dim();
        let r = self.rank();
        let mut out = vec![ZERO; dim * dim];
        for (a, cola) in self.columns.iter().enumerate() {
            for (b, colb) in self.columns.iter().enumerate() {
                let yab = y[a * r + b];
                if yab == ZERO {
                    continue;
                }
                for &(i, va) in cola {
                    let s = va * yab;
                    for &(j, vb) in colb {
                        out[i * dim + j] += s * vb.conj();
                    }
                }
            }
        }
        out
    }

    /// The identity on all of (C²)^⊗N, as a "sector" covering every irrep.
    pub fn full(n: usize) -> Result<Self> {
        dense_budget(n)?;
        let columns = (0..1usize << n).map(|i| vec![(i, c64::new(1.0, 0.0))]).collect();
        Ok(Self { n_sites: n, group: "any".into(), sector: "all".into(), columns })
    }

    /// Deviation from P² = P and P† = P, computed on the dense matrix.
    pub fn idempotency_error(&self) -> f64 {
        let dim = self.dim();
        let p = self.matrix();
        let mut err: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let pp: c64 = (0..dim).map(|k| p[i * dim + k] * p[k * dim + j]).sum();
                err = err.max((pp - p[i * dim + j]).norm()).max((p[i * dim + j] - p[j * dim + i].conj()).norm());
            }
        }
        err
    }
}

fn check_rank(found: usize, mult: &BigUint, dim: u64, what: &str) -> Result<()> {
    let expected = mult.to_u64().map(|m| m * dim);
    if expected != Some(found as u64) {
        return Err(Error::Assertion(format!("{what}: projector rank {found}, representation theory says {mult}·{dim}")));
    }
    Ok(())
}

fn dense_budget(n: usize) -> Result<()> {
    if n == 0 || n > super::MAX_DENSE_SITES {
        return Err(Error::Budget(format!("{n} sites outside the dense budget 1..={}", super::MAX_DENSE_SITES)));
    }
    Ok(())
}

/// Projector onto total spin `two_j/2` of `n` spin-1/2 sites, from the spectrum
/// of S² restricted to each fixed-magnetization block.
pub fn build_su2_projector(n: usize, two_j: u32) -> Result<SectorProjector> {
    su2_projector(n, two_j, None)
}

/// The fixed-magnetization slice of the spin-`two_j/2` sector; its rank is the
/// bare multiplicity C_j^N.
pub fn build_su2_jm_projector(n: usize, two_j: u32, two_m: i32) -> Result<SectorProjector> {
    if two_m.unsigned_abs() > two_j || (two_j as i32 - two_m) % 2 != 0 {
        return Err(Error::InvalidArgument(format!("m = {two_m}/2 is not a weight of spin {two_j}/2")));
    }
    su2_projector(n, two_j, Some(two_m))
}

fn su2_projector(n: usize, two_j: u32, only_m: Option<i32>) -> Result<SectorProjector> {
    dense_budget(n)?;
    if two_j as usize > n {
        return Err(Error::InvalidIrrep(format!("spin {two_j}/2 exceeds the maximum {n}/2 for {n} sites")));
    }
    let target = two_j as f64 / 2.0 * (two_j as f64 / 2.0 + 1.0);
    let nf = n as f64;
    let shift = 0.75 * nf - nf * (nf - 1.0) / 4.0;
    let mut columns = Vec::new();
    for up in 0..=n {
        // |2m| ≤ 2j is necessary for the block to contain the sector.
        let two_m = nf - 2.0 * up as f64;
        if two_m.abs() > two_j as f64 || only_m.is_some_and(|m| m as f64 != two_m) {
            continue;
        }
        let states: Vec<usize> = (0..1usize << n).filter(|x| x.count_ones() as usize == up).collect();
        let size = states.len();
        let index = |x: usize| states.binary_search(&x).expect("swap preserves popcount");
        let mut s2 = vec![ZERO; size * size];
        for (a, &x) in states.iter().enumerate() {
            s2[a * size + a] += c64::new(shift, 0.0);
            for i in 0..n {
                for j in (i + 1)..n {
                    let (bi, bj) = ((x >> (n - 1 - i)) & 1, (x >> (n - 1 - j)) & 1);
                    let y = if bi == bj { x } else { x ^ (1 << (n - 1 - i)) ^ (1 << (n - 1 - j)) };
                    s2[a * size + index(y)] += c64::new(1.0, 0.0);
                }
            }
        }
        for (lambda, v) in hermitian_eigen(size, &s2)? {
            if (lambda - target).abs() < CASIMIR_TOL {
                columns.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, a)| a.norm() > BASIS_CUTOFF)
                        .map(|(a, amp)| (states[a], *amp))
                        .collect(),
                );
            }
        }
    }
    let copies = if only_m.is_some() { 1 } else { two_j as u64 + 1 };
    check_rank(columns.len(), &su2_multiplicity(two_j, n as u64), copies, "SU(2)")?;
    let mut sector = GroupModel::su2().irrep_name(&Irrep::spin(two_j));
    if let Some(m) = only_m {
        sector += &if m % 2 == 0 { format!(",m={}", m / 2) } else { format!(",m={m}/2") };
    }
    Ok(SectorProjector { n_sites: n, group: "SU2".into(), sector, columns })
}

/// S3 sectors of qubits carrying the 2d irrep: the 3-cycle acts as
/// Π exp(2πi Z_j/3) and the transposition as Π X_j.
pub fn build_s3_projector(n: usize, sector: &str) -> Result<SectorProjector> {
    dense_budget(n)?;
    let group = GroupModel::by_name("s3")?;
    let irrep = group.parse_irrep(sector)?;
    let name = group.irrep_name(&irrep);
    let full = (1usize << n) - 1;
    // Z eigenvalue +1 on |0⟩ and −1 on |1⟩.
    let charge = |x: usize| (n as i64 - 2 * x.count_ones() as i64).rem_euclid(3);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut columns: Vec<Vec<(usize, c64)>> = Vec::new();
    for x in 0..=full {
        let xbar = x ^ full;
        match name.as_str() {
            "inv" | "sgn" if charge(x) == 0 && x < xbar => {
                let sign = if name == "inv" { h } else { -h };
                columns.push(vec![(x, c64::new(h, 0.0)), (xbar, c64::new(sign, 0.0))]);
            }
            "2d" if charge(x) != 0 => columns.push(vec![(x, c64::new(1.0, 0.0))]),
            _ => {}
        }
    }
    check_rank(columns.len(), &group.multiplicity(&irrep, n as u64)?, irrep.dim, "S3")?;
    Ok(SectorProjector { n_sites: n, group: "S3".into(), sector: name, columns })
}

/// Dispatches on the group family; supports SU(2) and S3.
pub fn build_projector(group: &GroupModel, irrep: &Irrep, n: usize) -> Result<SectorProjector> {
    match group.family() {
        Family::Su2 => build_su2_projector(n, irrep.two_j().expect("SU(2) irreps carry spins")),
        Family::Finite(t) if t.name() == "S3" => build_s3_projector(n, &group.irrep_name(irrep)),
        _ => Err(Error::Unsupported(format!("no dense projector for {}", group.name()))),
    }
}

/// The maximally mixed state on the projector's image, P / rank.
pub fn mmis_state(proj: &SectorProjector) -> Result<DensityMatrix> {
    if proj.rank() == 0 {
        return Err(Error::EmptySector { sites: proj.n_sites() });
    }
    let mut p = proj.matrix();
    let inv = 1.0 / proj.rank() as f64;
    p.iter_mut().for_each(|v| *v *= inv);
    DensityMatrix::from_raw(proj.n_sites(), 2, p)
}
