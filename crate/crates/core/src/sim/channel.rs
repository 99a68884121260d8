//! Local Kraus gates, brickwork programs, and their application to density
//! matrices by contraction over the gate support.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as c64;

use super::density::DensityMatrix;
use super::layout::SiteLayout;
use super::linalg::LocalOp;
use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
const KRAUS_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct KrausGate {
    support: Vec<usize>,
    kraus: Vec<LocalOp>,
    unital: bool,
}

impl KrausGate {
    /// Validates trace preservation, Σ K†K = I, and records unitality.
    pub fn new(support: Vec<usize>, kraus: Vec<LocalOp>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(Error::InvalidArgument("a gate needs at least one Kraus operator".into()));
        };
        let dim = first.dim();
        if kraus.iter().any(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch("Kraus operators of different sizes".into()));
        }
        if support.is_empty() || !(2..=dim).any(|d| d.pow(support.len() as u32) == dim) {
            return Err(Error::DimensionMismatch(format!("{dim}-dim Kraus operators on {} sites", support.len())));
        }
        let id = LocalOp::identity(dim);
        let sum_kdk = kraus.iter().fold(LocalOp::zeros(dim), |acc, k| acc.add(&k.dagger().matmul(k)));
        if sum_kdk.max_diff(&id) > KRAUS_TOL {
            return Err(Error::Assertion(format!(
                "Kraus set on {support:?} is not trace preserving (deviation {:.3e})",
                sum_kdk.max_diff(&id)
            )));
        }
        let sum_kkd = kraus.iter().fold(LocalOp::zeros(dim), |acc, k| acc.add(&k.matmul(&k.dagger())));
        let unital = sum_kkd.max_diff(&id) <= KRAUS_TOL;
        Ok(Self { support, kraus, unital })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn kraus(&self) -> &[LocalOp] {
        &self.kraus
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn local_dim(&self) -> usize {
        let dim = self.kraus[0].dim();
        (2..=dim).find(|c| c.pow(self.support.len() as u32) == dim).expect("validated in new")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Periodic,
    Open,
}

impl FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" | "pbc" => Ok(Boundary::Periodic),
            "open" | "obc" => Ok(Boundary::Open),
            other => Err(Error::InvalidArgument(format!("unknown boundary {other}"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        })
    }
}

pub type Layer = Vec<KrausGate>;

/// Layers of gates with disjoint supports. Timestep `t` applies layers
/// `t·L … t·L + L − 1` (modulo the schedule length), with `L = layers_per_timestep`.
#[derive(Clone, Debug)]
pub struct ChannelProgram {
    n_sites: usize,
    local_dim: usize,
    layers: Vec<Layer>,
    boundary: Boundary,
    layers_per_timestep: usize,
}

impl ChannelProgram {
    pub fn new(
        n_sites: usize,
        local_dim: usize,
        layers: Vec<Layer>,
        boundary: Boundary,
        layers_per_timestep: usize,
    ) -> Result<Self> {
        if layers.is_empty() || layers_per_timestep == 0 {
            return Err(Error::InvalidArgument("a program needs at least one layer per timestep".into()));
        }
        for (l, layer) in layers.iter().enumerate() {
            let mut used = vec![false; n_sites];
            for gate in layer {
                if gate.local_dim() != local_dim {
                    return Err(Error::DimensionMismatch(format!("layer {l}: gate acts on qudits of another dimension")));
                }
                for &s in gate.support() {
                    if s >= n_sites {
                        return Err(Error::DimensionMismatch(format!("layer {l}: site {s} outside {n_sites} sites")));
                    }
                    if std::mem::replace(&mut used[s], true) {
                        return Err(Error::InvalidArgument(format!("layer {l}: gates overlap on site {s}")));
                    }
                }
            }
        }
        Ok(Self { n_sites, local_dim, layers, boundary, layers_per_timestep })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn layers_per_timestep(&self) -> usize {
        self.layers_per_timestep
    }

    pub fn is_unital(&self) -> bool {
        self.layers.iter().flatten().all(KrausGate::is_unital)
    }

    /// Layers applied during timestep `t`.
    pub fn timestep_layers(&self, t: usize) -> impl Iterator<Item = &Layer> {
        let len = self.layers.len();
        (0..self.layers_per_timestep).map(move |k| &self.layers[(t * self.layers_per_timestep + k) % len])
    }
}

/// ρ ← Σ_a K_a ρ K_a† for one gate. `hermitian` lets the kernel fill the lower
/// block triangle from the upper one; it must only be set for Hermitian input.
pub(crate) fn apply_gate_raw(
    data: &mut [c64],
    n_sites: usize,
    local_dim: usize,
    gate: &KrausGate,
    hermitian: bool,
) -> Result<()> {
    let layout = SiteLayout::new(n_sites, local_dim, gate.support())?;
    let dim = layout.full_size();
    if data.len() != dim * dim {
        return Err(Error::DimensionMismatch(format!("state has {} entries, gate expects {dim}x{dim}", data.len())));
    }
    let m = layout.local_size();
    let offs = &layout.offsets;
    let bases = &layout.bases;
    let mut block = vec![ZERO; m * m];
    let mut half = vec![ZERO; m * m];
    let mut out = vec![ZERO; m * m];
    for (bi, &rb) in bases.iter().enumerate() {
        let start = if hermitian { bi } else { 0 };
        for &cb in &bases[start..] {
            let mut nonzero = false;
            for x in 0..m {
                let row = (rb + offs[x]) * dim + cb;
                for y in 0..m {
                    let v = data[row + offs[y]];
                    nonzero |= v != ZERO;
                    block[x * m + y] = v;
                }
            }
            if !nonzero {
                continue;
            }
            out.iter_mut().for_each(|v| *v = ZERO);
            for k in gate.kraus() {
                // half = K · block
                half.iter_mut().for_each(|v| *v = ZERO);
                for &(x, z, kv) in k.nonzeros() {
                    let src = &block[z * m..(z + 1) * m];
                    let dst = &mut half[x * m..(x + 1) * m];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += kv * s;
                    }
                }
                // out += half · K†, i.e. out[x][y] += Σ_z half[x][z] conj(K[y][z])
                for &(y, z, kv) in k.nonzeros() {
                    let kc = kv.conj();
                    for x in 0..m {
                        out[x * m + y] += half[x * m + z] * kc;
                    }
                }
            }
            for x in 0..m {
                let row = (rb + offs[x]) * dim + cb;
                for y in 0..m {
                    data[row + offs[y]] = out[x * m + y];
                }
            }
            if hermitian && cb != rb {
                for x in 0..m {
                    for y in 0..m {
                        data[(cb + offs[y]) * dim + rb + offs[x]] = out[x * m + y].conj();
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_program(rho: &DensityMatrix, program: &ChannelProgram) -> Result<()> {
    if rho.n_sites() != program.n_sites() || rho.local_dim() != program.local_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state on {} sites of dimension {}, program on {} of dimension {}",
            rho.n_sites(),
            rho.local_dim(),
            program.n_sites(),
            program.local_dim()
        )));
    }
    Ok(())
}

pub fn apply_gate(rho: &mut DensityMatrix, gate: &KrausGate) -> Result<()> {
    let (n, d) = (rho.n_sites(), rho.local_dim());
    apply_gate_raw(rho.data_mut(), n, d, gate, true)
}

/// One timestep of `program`, layer by layer, gate by gate.
pub fn apply_timestep(rho: &mut DensityMatrix, program: &ChannelProgram, t: usize) -> Result<()> {
    check_program(rho, program)?;
    let (n, d) = (rho.n_sites(), rho.local_dim());
    for layer in program.timestep_layers(t) {
        for gate in layer {
            apply_gate_raw(rho.data_mut(), n, d, gate, true)?;
        }
    }
    Ok(())
}

/// Same as [`apply_timestep`] for an arbitrary (not necessarily Hermitian) operator.
pub(crate) fn apply_timestep_general(data: &mut [c64], program: &ChannelProgram, t: usize) -> Result<()> {
    for layer in program.timestep_layers(t) {
        for gate in layer {
            apply_gate_raw(data, program.n_sites(), program.local_dim(), gate, false)?;
        }
    }
    Ok(())
}
