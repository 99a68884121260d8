//! Concrete measurement and random-unitary programs on qubit chains, together
//! with the initial states they start from.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as c64;

use super::channel::{Boundary, ChannelProgram, KrausGate, Layer};
use super::density::{DensityMatrix, StateVector};
use super::linalg::LocalOp;
use super::projectors::build_s3_projector;
use crate::error::{Error, Result};
use crate::rep::{GroupModel, Irrep};

pub fn pauli_x() -> LocalOp {
    LocalOp::real(2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> LocalOp {
    LocalOp::from_rows(2, vec![c64::new(0.0, 0.0), c64::new(0.0, -1.0), c64::new(0.0, 1.0), c64::new(0.0, 0.0)])
}

pub fn pauli_z() -> LocalOp {
    LocalOp::real(2, &[1.0, 0.0, 0.0, -1.0])
}

/// Projector onto the two-qubit singlet (|01⟩ − |10⟩)/√2.
pub fn singlet_projector() -> LocalOp {
    LocalOp::real(4, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.5, -0.5, 0.0, 0.0, -0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0])
}

/// S_i·S_j on two spin-1/2 sites, equal to swap/2 − 1/4.
pub fn spin_spin() -> LocalOp {
    let x = pauli_x();
    let y = pauli_y();
    let z = pauli_z();
    x.kron(&x).add(&y.kron(&y)).add(&z.kron(&z)).scale(c64::new(0.25, 0.0))
}

/// |S_i·S_j| = (3/4)·P_s + (1/4)·(I − P_s).
pub fn abs_spin_spin() -> LocalOp {
    let ps = singlet_projector();
    let pt = LocalOp::identity(4).add(&ps.scale(c64::new(-1.0, 0.0)));
    ps.scale(c64::new(0.75, 0.0)).add(&pt.scale(c64::new(0.25, 0.0)))
}

/// Tensor product of single-qubit Paulis, e.g. `"ZZ"` or `"XIY"`.
pub fn pauli_string(spec: &str) -> Result<LocalOp> {
    let mut op: Option<LocalOp> = None;
    for ch in spec.chars() {
        let p = match ch.to_ascii_uppercase() {
            'I' => LocalOp::identity(2),
            'X' => pauli_x(),
            'Y' => pauli_y(),
            'Z' => pauli_z(),
            other => return Err(Error::InvalidArgument(format!("unknown Pauli {other:?} in {spec:?}"))),
        };
        op = Some(match op {
            None => p,
            Some(acc) => acc.kron(&p),
        });
    }
    op.ok_or_else(|| Error::InvalidArgument("empty Pauli string".into()))
}

/// Two-qubit S3 sector projectors (inv, sgn, 2d).
pub fn s3_two_body_kraus() -> [LocalOp; 3] {
    let id = LocalOp::identity(4);
    let zz = pauli_string("ZZ").expect("valid");
    let xx = pauli_string("XX").expect("valid");
    let half = c64::new(0.5, 0.0);
    let minus_zz = id.add(&zz.scale(c64::new(-1.0, 0.0))).scale(half);
    let plus_zz = id.add(&zz).scale(half);
    let plus_xx = id.add(&xx).scale(half);
    let minus_xx = id.add(&xx.scale(c64::new(-1.0, 0.0))).scale(half);
    [minus_zz.matmul(&plus_xx), minus_zz.matmul(&minus_xx), plus_zz]
}

/// Three-qubit S3 sector projectors (inv, sgn, 2d).
pub fn s3_three_body_kraus() -> Result<[LocalOp; 3]> {
    let build = |s: &str| -> Result<LocalOp> { Ok(LocalOp::from_rows(8, build_s3_projector(3, s)?.matrix())) };
    Ok([build("inv")?, build("sgn")?, build("2d")?])
}

/// `K_inv + e^{iφ1} K_sgn + e^{iφ2} K_2d`.
fn phased_unitary(k: &[LocalOp; 3], phi1: f64, phi2: f64) -> LocalOp {
    k[0].add(&k[1].scale(c64::from_polar(1.0, phi1))).add(&k[2].scale(c64::from_polar(1.0, phi2)))
}

fn mixture(support: Vec<usize>, u: &LocalOp, q: f64) -> Result<KrausGate> {
    let id = LocalOp::identity(u.dim());
    KrausGate::new(support, vec![id.scale(c64::new((1.0 - q).sqrt(), 0.0)), u.scale(c64::new(q.sqrt(), 0.0))])
}

/// Nearest-neighbour bonds split into even and odd layers; under periodic
/// boundaries the closing bond (N−1, 0) joins the odd layer for even N and gets
/// a layer of its own for odd N.
fn brickwork_bonds(n: usize, boundary: Boundary) -> Vec<Vec<(usize, usize)>> {
    let even: Vec<_> = (0..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1)).collect();
    let mut odd: Vec<_> = (1..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1)).collect();
    let mut layers = vec![even];
    let closing = boundary == Boundary::Periodic && n > 2;
    if closing && n.is_multiple_of(2) {
        odd.push((n - 1, 0));
    }
    layers.push(odd);
    if closing && n % 2 == 1 {
        layers.push(vec![(n - 1, 0)]);
    }
    layers.retain(|l| !l.is_empty());
    layers
}

fn two_body_layers(n: usize, boundary: Boundary, gate: impl Fn(usize, usize) -> Result<KrausGate>) -> Result<Vec<Layer>> {
    brickwork_bonds(n, boundary)
        .into_iter()
        .map(|bonds| bonds.into_iter().map(|(a, b)| gate(a, b)).collect())
        .collect()
}

fn three_body_layer(n: usize, gate: impl Fn(usize) -> Result<KrausGate>) -> Result<Layer> {
    (0..n / 3).map(|t| gate(3 * t)).collect()
}

fn require_sites(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("{what} needs at least {min} sites, got {n}")));
    }
    if n > super::MAX_DENSE_SITES {
        return Err(Error::Budget(format!("{n} sites exceed the dense budget of {}", super::MAX_DENSE_SITES)));
    }
    Ok(())
}

/// Singlet/triplet measurement on every bond, even bonds then odd bonds.
pub fn singlet_triplet_program(n: usize, boundary: Boundary) -> Result<ChannelProgram> {
    require_sites(n, 2, "the singlet-triplet program")?;
    let ps = singlet_projector();
    let pt = LocalOp::identity(4).add(&ps.scale(c64::new(-1.0, 0.0)));
    let layers = two_body_layers(n, boundary, |a, b| KrausGate::new(vec![a, b], vec![ps.clone(), pt.clone()]))?;
    let per_step = layers.len();
    ChannelProgram::new(n, 2, layers, boundary, per_step)
}

/// Irrep measurements of neighbouring pairs only (even then odd bonds).
pub fn s3_two_body_program(n: usize, boundary: Boundary) -> Result<ChannelProgram> {
    require_sites(n, 2, "the S3 two-body program")?;
    let k = s3_two_body_kraus();
    let layers = two_body_layers(n, boundary, |a, b| KrausGate::new(vec![a, b], k.to_vec()))?;
    let per_step = layers.len();
    ChannelProgram::new(n, 2, layers, boundary, per_step)
}

/// Pair measurements on even and odd bonds followed by a layer of triple
/// measurements on (0,1,2), (3,4,5), …; one timestep is all three layers.
pub fn s3_measurement_program(n: usize, boundary: Boundary) -> Result<ChannelProgram> {
    require_sites(n, 3, "the S3 measurement program")?;
    let k2 = s3_two_body_kraus();
    let k3 = s3_three_body_kraus()?;
    let mut layers = two_body_layers(n, boundary, |a, b| KrausGate::new(vec![a, b], k2.to_vec()))?;
    layers.push(three_body_layer(n, |s| KrausGate::new(vec![s, s + 1, s + 2], k3.to_vec()))?);
    let per_step = layers.len();
    ChannelProgram::new(n, 2, layers, boundary, per_step)
}

pub const DEFAULT_Q: f64 = 0.5;
pub const DEFAULT_PHI1: f64 = PI;
pub const DEFAULT_PHI2: f64 = PI / 2.0;

/// The measurement program with every measurement replaced by
/// ρ ↦ (1−q)ρ + q·UρU†, U the sector-phased unitary.
pub fn s3_random_unitary_program(n: usize, boundary: Boundary, q: f64, phi1: f64, phi2: f64) -> Result<ChannelProgram> {
    require_sites(n, 3, "the S3 random-unitary program")?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!("mixing probability q = {q} outside [0, 1]")));
    }
    let u2 = phased_unitary(&s3_two_body_kraus(), phi1, phi2);
    let u3 = phased_unitary(&s3_three_body_kraus()?, phi1, phi2);
    let mut layers = two_body_layers(n, boundary, |a, b| mixture(vec![a, b], &u2, q))?;
    layers.push(three_body_layer(n, |s| mixture(vec![s, s + 1, s + 2], &u3, q))?);
    let per_step = layers.len();
    ChannelProgram::new(n, 2, layers, boundary, per_step)
}

fn pair_vector(n: usize, pair: [f64; 4]) -> Result<StateVector> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidArgument(format!("a product of pairs needs an even number of sites, got {n}")));
    }
    let p = StateVector { n_sites: 2, local_dim: 2, amps: pair.iter().map(|&a| c64::new(a, 0.0)).collect() };
    Ok(StateVector::product(&vec![p; n / 2]))
}

fn pair_product(n: usize, pair: [f64; 4]) -> Result<DensityMatrix> {
    DensityMatrix::from_pure(&pair_vector(n, pair)?)
}

const SINGLET_PAIR: [f64; 4] = [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0];
const S3_PAIR: [f64; 4] = [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];

/// Nearest-neighbour singlets on (0,1), (2,3), ….
pub fn dimer_state(n: usize) -> Result<DensityMatrix> {
    pair_product(n, SINGLET_PAIR)
}

/// S3-invariant pairs (|01⟩ + |10⟩)/√2 on (0,1), (2,3), ….
pub fn s3_pair_state(n: usize) -> Result<DensityMatrix> {
    pair_product(n, S3_PAIR)
}

/// Parameters of the random-unitary variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryParams {
    pub q: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl Default for UnitaryParams {
    fn default() -> Self {
        Self { q: DEFAULT_Q, phi1: DEFAULT_PHI1, phi2: DEFAULT_PHI2 }
    }
}

/// Named simulation recipes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Su2SingletTriplet,
    S3Measure,
    S3Unitary,
    S3TwoBody,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Su2SingletTriplet, Model::S3Measure, Model::S3Unitary, Model::S3TwoBody];

    pub fn name(self) -> &'static str {
        match self {
            Model::Su2SingletTriplet => "su2-singlet-triplet",
            Model::S3Measure => "s3-measure",
            Model::S3Unitary => "s3-unitary",
            Model::S3TwoBody => "s3-two-body",
        }
    }

    pub fn default_boundary(self) -> Boundary {
        match self {
            Model::Su2SingletTriplet => Boundary::Periodic,
            _ => Boundary::Open,
        }
    }

    pub fn group(self) -> GroupModel {
        match self {
            Model::Su2SingletTriplet => GroupModel::su2(),
            _ => GroupModel::by_name("s3").expect("S3 table ships with the crate"),
        }
    }

    /// The sector the initial state lives in (and the dynamics preserves).
    pub fn sector(self) -> Irrep {
        self.group().invariant()
    }

    pub fn program(self, n: usize, boundary: Boundary, params: UnitaryParams) -> Result<ChannelProgram> {
        match self {
            Model::Su2SingletTriplet => singlet_triplet_program(n, boundary),
            Model::S3Measure => s3_measurement_program(n, boundary),
            Model::S3Unitary => s3_random_unitary_program(n, boundary, params.q, params.phi1, params.phi2),
            Model::S3TwoBody => s3_two_body_program(n, boundary),
        }
    }

    pub fn initial_state(self, n: usize) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(&self.initial_pure_state(n)?)
    }

    /// The initial state as a vector, for trajectory sampling.
    pub fn initial_pure_state(self, n: usize) -> Result<StateVector> {
        match self {
            Model::Su2SingletTriplet => pair_vector(n, SINGLET_PAIR),
            _ => pair_vector(n, S3_PAIR),
        }
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model {s}")))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator_norm(a: &LocalOp, b: &LocalOp) -> f64 {
        a.matmul(b).max_diff(&b.matmul(a))
    }

    #[test]
    fn singlet_triplet_layout() {
        let p = singlet_triplet_program(4, Boundary::Periodic).unwrap();
        let supports: Vec<Vec<Vec<usize>>> =
            p.layers().iter().map(|l| l.iter().map(|g| g.support().to_vec()).collect()).collect();
        assert_eq!(supports, vec![vec![vec![0, 1], vec![2, 3]], vec![vec![1, 2], vec![3, 0]]]);
        assert!(p.is_unital());
        let open = singlet_triplet_program(5, Boundary::Open).unwrap();
        assert_eq!(open.layers().len(), 2);
        assert_eq!(singlet_triplet_program(5, Boundary::Periodic).unwrap().layers().len(), 3);
    }

    #[test]
    fn singlet_gates_commute_with_su2() {
        let ps = singlet_projector();
        let id = LocalOp::identity(2);
        for s in [pauli_x(), pauli_y(), pauli_z()] {
            let total = s.kron(&id).add(&id.kron(&s));
            assert!(commutator_norm(&ps, &total) < 1e-12);
        }
    }

    #[test]
    fn s3_kraus_are_complete_projectors() {
        let k = s3_two_body_kraus();
        let sum = k.iter().fold(LocalOp::zeros(4), |a, b| a.add(b));
        assert!(sum.max_diff(&LocalOp::identity(4)) < 1e-15);
        for p in &k {
            assert!(p.matmul(p).max_diff(p) < 1e-15);
        }
        // Inv is spanned by (|01⟩ + |10⟩)/√2.
        assert!((k[0].get(1, 2).re - 0.5).abs() < 1e-15);
        let k3 = s3_three_body_kraus().unwrap();
        let sum3 = k3.iter().fold(LocalOp::zeros(8), |a, b| a.add(b));
        assert!(sum3.max_diff(&LocalOp::identity(8)) < 1e-12);
    }

    #[test]
    fn s3_gates_commute_with_generators() {
        let w = c64::from_polar(1.0, 2.0 * PI / 3.0);
        let r1 = LocalOp::from_rows(2, vec![w, c64::new(0.0, 0.0), c64::new(0.0, 0.0), w.conj()]);
        let r2 = r1.kron(&r1);
        let x2 = pauli_string("XX").unwrap();
        for k in s3_two_body_kraus() {
            assert!(commutator_norm(&k, &r2) < 1e-12);
            assert!(commutator_norm(&k, &x2) < 1e-12);
        }
        let u = phased_unitary(&s3_two_body_kraus(), PI, PI / 2.0);
        assert!(u.matmul(&u.dagger()).max_diff(&LocalOp::identity(4)) < 1e-12);
    }

    #[test]
    fn measurement_program_shape() {
        let p = s3_measurement_program(6, Boundary::Open).unwrap();
        assert_eq!(p.layers_per_timestep(), 3);
        assert_eq!(p.layers()[2].len(), 2);
        assert!(p.is_unital());
        assert!(s3_random_unitary_program(6, Boundary::Open, 1.5, 0.0, 0.0).is_err());
        assert!(s3_random_unitary_program(6, Boundary::Open, 0.5, PI, PI / 2.0).unwrap().is_unital());
    }

    #[test]
    fn initial_states() {
        let rho = dimer_state(4).unwrap();
        rho.validate().unwrap();
        assert!(dimer_state(3).is_err());
        assert_eq!("s3-measure".parse::<Model>().unwrap(), Model::S3Measure);
    }
}
