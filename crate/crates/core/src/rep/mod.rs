//! Symmetry groups, their irreps, and exact multiplicities of irreps in tensor
//! powers of the on-site representation.

pub mod cyclotomic;
pub mod distribution;
pub mod table;
pub mod young;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

pub use distribution::{DistributionEntry, IrrepDistribution};
pub use table::CharacterTable;
pub use young::YoungDiagram;

use crate::bigmath::binomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    /// Row index into a finite group's character table.
    Finite(usize),
    /// Spin `two_j / 2`.
    Spin(u32),
    /// SU(d) row-difference weight `(p_1, …, p_{d−1})`.
    Weight(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub dim: u64,
}

impl Irrep {
    pub fn spin(two_j: u32) -> Self {
        Self { label: IrrepLabel::Spin(two_j), dim: two_j as u64 + 1 }
    }

    pub fn two_j(&self) -> Option<u32> {
        match self.label {
            IrrepLabel::Spin(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    Finite(Arc<CharacterTable>),
    Su2,
    Sud(u32),
}

/// A symmetry group together with the irrep carried by each site.
#[derive(Clone, Debug)]
pub struct GroupModel {
    family: Family,
    onsite: Irrep,
}

impl GroupModel {
    pub fn su2() -> Self {
        Self { family: Family::Su2, onsite: Irrep::spin(1) }
    }

    /// SU(d) with the defining representation on each site.
    pub fn sud(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("SU(d) needs d >= 2, got {d}")));
        }
        let mut p = vec![0u32; (d - 1) as usize];
        p[(d - 2) as usize] = 1;
        Ok(Self { family: Family::Sud(d), onsite: Irrep { label: IrrepLabel::Weight(p), dim: d as u64 } })
    }

    pub fn finite(table: CharacterTable, onsite_label: Option<&str>) -> Result<Self> {
        let onsite = match onsite_label {
            Some(label) => table
                .irrep_index(label)
                .ok_or_else(|| Error::InvalidIrrep(format!("{label} is not an irrep of {}", table.name())))?,
            None => table
                .default_onsite()
                .ok_or_else(|| Error::InvalidArgument(format!("{} has no default onsite irrep", table.name())))?,
        };
        let dim = table.irrep_dim(onsite);
        Ok(Self { family: Family::Finite(Arc::new(table)), onsite: Irrep { label: IrrepLabel::Finite(onsite), dim } })
    }

    /// `su2`, `su<d>`, or the name of a bundled finite group (`z2`, `z3`, `s3`, `d4`).
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        if lower == "su2" {
            return Ok(Self::su2());
        }
        if let Some(d) = lower.strip_prefix("su") {
            let d: u32 = d.parse().map_err(|_| Error::InvalidArgument(format!("unknown group {name}")))?;
            return Self::sud(d);
        }
        match table::shipped_table(&lower) {
            Some(t) => Self::finite(t, None),
            None => Err(Error::InvalidArgument(format!("unknown group {name}"))),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> String {
        match &self.family {
            Family::Finite(t) => t.name().to_string(),
            Family::Su2 => "SU2".into(),
            Family::Sud(d) => format!("SU{d}"),
        }
    }

    pub fn onsite(&self) -> &Irrep {
        &self.onsite
    }

    pub fn onsite_dim(&self) -> u64 {
        self.onsite.dim
    }

    /// `(dim g, dim h)` for Lie families.
    pub fn lie_meta(&self) -> Option<(u32, u32)> {
        match self.family {
            Family::Finite(_) => None,
            Family::Su2 => Some((3, 1)),
            Family::Sud(d) => Some((d * d - 1, d - 1)),
        }
    }

    pub fn is_lie(&self) -> bool {
        self.lie_meta().is_some()
    }

    pub fn invariant(&self) -> Irrep {
        match &self.family {
            Family::Finite(t) => Irrep { label: IrrepLabel::Finite(t.invariant()), dim: 1 },
            Family::Su2 => Irrep::spin(0),
            Family::Sud(d) => Irrep { label: IrrepLabel::Weight(vec![0; (*d - 1) as usize]), dim: 1 },
        }
    }

    fn check(&self, irrep: &Irrep) -> Result<()> {
        let ok = match (&self.family, &irrep.label) {
            (Family::Finite(t), IrrepLabel::Finite(j)) => *j < t.num_irreps(),
            (Family::Su2, IrrepLabel::Spin(_)) => true,
            (Family::Sud(d), IrrepLabel::Weight(p)) => p.len() == (*d - 1) as usize,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIrrep(format!("{} is not an irrep of {}", self.irrep_name(irrep), self.name())))
        }
    }

    /// Builds an irrep from its label, filling in the dimension.
    pub fn irrep(&self, label: IrrepLabel) -> Result<Irrep> {
        let probe = Irrep { label, dim: 0 };
        self.check(&probe)?;
        let dim = self.irrep_dimension_of(&probe.label)?;
        Ok(Irrep { label: probe.label, dim })
    }

    fn irrep_dimension_of(&self, label: &IrrepLabel) -> Result<u64> {
        match (&self.family, label) {
            (Family::Finite(t), IrrepLabel::Finite(j)) => Ok(t.irrep_dim(*j)),
            (Family::Su2, IrrepLabel::Spin(two_j)) => Ok(*two_j as u64 + 1),
            (Family::Sud(_), IrrepLabel::Weight(p)) => young::sud_dimension_u64(p)
                .ok_or_else(|| Error::InvalidIrrep(format!("dimension of weight {p:?} overflows u64"))),
            _ => Err(Error::InvalidIrrep(format!("label {label:?} does not belong to {}", self.name()))),
        }
    }

    pub fn irrep_dimension(&self, irrep: &Irrep) -> Result<u64> {
        self.check(irrep)?;
        self.irrep_dimension_of(&irrep.label)
    }

    pub fn conjugate(&self, irrep: &Irrep) -> Result<Irrep> {
        self.check(irrep)?;
        let label = match (&self.family, &irrep.label) {
            (Family::Finite(t), IrrepLabel::Finite(j)) => IrrepLabel::Finite(t.conjugate(*j)),
            (Family::Su2, l @ IrrepLabel::Spin(_)) => l.clone(),
            (Family::Sud(_), IrrepLabel::Weight(p)) => IrrepLabel::Weight(p.iter().rev().copied().collect()),
            _ => unreachable!("checked above"),
        };
        Ok(Irrep { label, dim: irrep.dim })
    }

    /// Exact multiplicity of `irrep` in the `n`-fold tensor power of the on-site irrep.
    pub fn multiplicity(&self, irrep: &Irrep, n: u64) -> Result<BigUint> {
        self.check(irrep)?;
        match (&self.family, &irrep.label) {
            (Family::Finite(t), IrrepLabel::Finite(j)) => {
                let IrrepLabel::Finite(onsite) = self.onsite.label else { unreachable!() };
                t.tensor_power_multiplicity(*j, onsite, n)
            }
            (Family::Su2, IrrepLabel::Spin(two_j)) => Ok(su2_multiplicity(*two_j, n)),
            (Family::Sud(d), IrrepLabel::Weight(p)) => {
                Ok(YoungDiagram::new(*d, p, n).map(|y| y.sn_dimension()).unwrap_or_else(BigUint::zero))
            }
            _ => unreachable!("checked above"),
        }
    }

    /// Every irrep that can occur on `n` sites, in a deterministic order.
    /// Finite groups list the whole table; zero multiplicities are possible there.
    pub fn candidate_irreps(&self, n: u64) -> Vec<Irrep> {
        match &self.family {
            Family::Finite(t) => (0..t.num_irreps())
                .map(|j| Irrep { label: IrrepLabel::Finite(j), dim: t.irrep_dim(j) })
                .collect(),
            Family::Su2 => (0..=n as u32).filter(|t| (n as u32 - t).is_multiple_of(2)).map(Irrep::spin).collect(),
            Family::Sud(d) => young::enumerate_weights(*d, n)
                .into_iter()
                .map(|p| {
                    let dim = young::sud_dimension_u64(&p).expect("SU(d) dimension fits in u64");
                    Irrep { label: IrrepLabel::Weight(p), dim }
                })
                .collect(),
        }
    }

    /// Irreps with nonzero multiplicity on `n` sites, with their multiplicities.
    pub fn decomposition(&self, n: u64) -> Result<Vec<(Irrep, BigUint)>> {
        let mut out = Vec::new();
        for irrep in self.candidate_irreps(n) {
            let m = self.multiplicity(&irrep, n)?;
            if !m.is_zero() {
                out.push((irrep, m));
            }
        }
        Ok(out)
    }

    /// Quadratic Casimir j(j+1) of an SU(2) irrep.
    pub fn casimir_eigenvalue(&self, irrep: &Irrep) -> Result<BigRational> {
        self.check(irrep)?;
        match (&self.family, &irrep.label) {
            (Family::Su2, IrrepLabel::Spin(two_j)) => {
                let t = *two_j as i64;
                Ok(BigRational::new((t * (t + 2)).into(), 4.into()))
            }
            _ => Err(Error::Unsupported(format!("Casimir eigenvalues are only provided for SU2, not {}", self.name()))),
        }
    }

    /// Coefficient of log N in the half-chain entanglement, (dim g − dim h)/4.
    pub fn predicted_log_slope(&self) -> Result<BigRational> {
        let (g, h) = self
            .lie_meta()
            .ok_or_else(|| Error::Unsupported(format!("{} is not a Lie group", self.name())))?;
        Ok(BigRational::new(((g - h) as i64).into(), 4.into()))
    }

    /// f_J = d_J |Z(G)| / |G|, the leading coefficient of C_J^N / d_V^N.
    pub fn asymptotic_multiplicity_coefficient(&self, irrep: &Irrep) -> Result<BigRational> {
        self.check(irrep)?;
        match &self.family {
            Family::Finite(t) => {
                let IrrepLabel::Finite(onsite) = self.onsite.label else { unreachable!() };
                if !t.is_faithful(onsite) {
                    return Err(Error::Unsupported(format!(
                        "onsite irrep {} of {} is not faithful",
                        t.irrep_label(onsite),
                        t.name()
                    )));
                }
                Ok(BigRational::new(
                    ((irrep.dim * t.center_order()) as i64).into(),
                    (t.order() as i64).into(),
                ))
            }
            _ => Err(Error::Unsupported(format!("{} is not a finite group", self.name()))),
        }
    }

    /// Whether the center of a finite group acts on `irrep` exactly as it acts on
    /// `n` copies of the on-site irrep. Only such irreps can occur on `n` sites.
    /// Always true for Lie families.
    pub fn central_character_matches(&self, irrep: &Irrep, n: u64) -> Result<bool> {
        self.check(irrep)?;
        let (Family::Finite(t), IrrepLabel::Finite(j), IrrepLabel::Finite(v)) =
            (&self.family, &irrep.label, &self.onsite.label)
        else {
            return Ok(true);
        };
        for c in t.central_classes() {
            let chi_j = t.character(*j, c);
            let chi_v = t.character(*v, c);
            let m = num_integer::lcm(chi_j.order(), chi_v.order());
            let lhs = chi_j.lift(m).scale(&BigRational::from_integer(num_bigint::BigInt::from(self.onsite.dim).pow(n as u32)));
            let rhs = chi_v.lift(m).pow(n).scale(&BigRational::from_integer(irrep.dim.into()));
            if !lhs.exact_eq(&rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn irrep_name(&self, irrep: &Irrep) -> String {
        match (&self.family, &irrep.label) {
            (Family::Finite(t), IrrepLabel::Finite(j)) if *j < t.num_irreps() => t.irrep_label(*j).to_string(),
            (_, IrrepLabel::Finite(j)) => format!("#{j}"),
            (_, IrrepLabel::Spin(two_j)) => {
                if two_j % 2 == 0 {
                    format!("j={}", two_j / 2)
                } else {
                    format!("j={two_j}/2")
                }
            }
            (_, IrrepLabel::Weight(p)) => {
                let parts: Vec<String> = p.iter().map(u32::to_string).collect();
                format!("p={}", parts.join(","))
            }
        }
    }

    /// Parses `j=1/2`, `p=1,0`, a table label such as `inv`, or `#2`.
    pub fn parse_irrep(&self, text: &str) -> Result<Irrep> {
        let bad = || Error::InvalidIrrep(format!("cannot parse irrep {text:?} for {}", self.name()));
        let text = text.trim();
        let label = match &self.family {
            Family::Su2 => {
                let v = text.strip_prefix("j=").unwrap_or(text);
                let two_j = match v.split_once('/') {
                    Some((n, "2")) => n.parse::<u32>().map_err(|_| bad())?,
                    Some(_) => return Err(bad()),
                    None => 2 * v.parse::<u32>().map_err(|_| bad())?,
                };
                IrrepLabel::Spin(two_j)
            }
            Family::Sud(_) => {
                let v = text.strip_prefix("p=").unwrap_or(text);
                let p = v.split(',').map(|s| s.trim().parse::<u32>()).collect::<std::result::Result<Vec<_>, _>>();
                IrrepLabel::Weight(p.map_err(|_| bad())?)
            }
            Family::Finite(t) => {
                if let Some(j) = t.irrep_index(text) {
                    IrrepLabel::Finite(j)
                } else if let Some(idx) = text.strip_prefix('#') {
                    IrrepLabel::Finite(idx.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        self.irrep(label)
    }
}

impl FromStr for GroupModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::by_name(s)
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// C_j^n for spin-1/2 sites: binom(n, n/2 + j)·(2j+1)/(n/2 + j + 1), zero when parity forbids.
pub fn su2_multiplicity(two_j: u32, n: u64) -> BigUint {
    let two_j = two_j as u64;
    if two_j > n || !(n - two_j).is_multiple_of(2) {
        return BigUint::zero();
    }
    let k = (n + two_j) / 2;
    binomial(n, k) * (two_j + 1) / (k + 1)
}
