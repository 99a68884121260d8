//! Two-point and fidelity correlators of the MMIS.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigmath::ratio_to_f64;
use crate::error::{Error, Result};
use crate::rep::{Family, GroupModel, IrrepDistribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelatorKind {
    /// ⟨S_i · S_j⟩ for spin-1/2 SU(2) chains.
    Su2SpinSpin,
    /// ⟨Z_i Z_j⟩ of the S3 state on qubits.
    S3Zz,
    /// ⟨X_i X_j + Y_i Y_j⟩ of the S3 state.
    S3XxYy,
    /// Tr[(ρ Z_i Z_j)²] / Tr ρ².
    S3ZzQuadratic,
    /// Tr[(ρ (X_i X_j + Y_i Y_j))²] / Tr ρ².
    S3XxYyQuadratic,
}

impl CorrelatorKind {
    pub const ALL: [CorrelatorKind; 5] = [
        CorrelatorKind::Su2SpinSpin,
        CorrelatorKind::S3Zz,
        CorrelatorKind::S3XxYy,
        CorrelatorKind::S3ZzQuadratic,
        CorrelatorKind::S3XxYyQuadratic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorrelatorKind::Su2SpinSpin => "spin-spin",
            CorrelatorKind::S3Zz => "zz",
            CorrelatorKind::S3XxYy => "xxyy",
            CorrelatorKind::S3ZzQuadratic => "zz-quadratic",
            CorrelatorKind::S3XxYyQuadratic => "xxyy-quadratic",
        }
    }

    fn expected_group(self) -> &'static str {
        match self {
            CorrelatorKind::Su2SpinSpin => "SU2",
            _ => "S3",
        }
    }
}

impl FromStr for CorrelatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        let s = s.strip_prefix("su2-").or_else(|| s.strip_prefix("s3-")).unwrap_or(&s);
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown correlator kind {s}")))
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn alternating(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check(group: &GroupModel, n: u64, kind: CorrelatorKind) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument("two-point correlators need at least two sites".into()));
    }
    let ok = match (group.family(), kind) {
        (Family::Su2, CorrelatorKind::Su2SpinSpin) => true,
        (Family::Finite(t), k) if k != CorrelatorKind::Su2SpinSpin => t.name() == "S3",
        _ => false,
    };
    if !ok {
        return Err(Error::Unsupported(format!(
            "correlator {} is defined for {}, not {}",
            kind.name(),
            kind.expected_group(),
            group.name()
        )));
    }
    if group.multiplicity(&group.invariant(), n)?.is_zero() {
        return Err(Error::EmptySector { sites: n as usize });
    }
    Ok(())
}

/// Correlator in the large-N form: exact for SU(2) and for the quadratic ZZ ratio,
/// leading order in 2^{−N} for the remaining S3 kinds.
pub fn two_point_correlator(group: &GroupModel, n: u64, kind: CorrelatorKind) -> Result<BigRational> {
    check(group, n, kind)?;
    let sign = alternating(n + 1);
    let pow = BigInt::one() << n;
    Ok(match kind {
        CorrelatorKind::Su2SpinSpin => q(-3, 4 * (n as i64 - 1)),
        CorrelatorKind::S3Zz => BigRational::new(BigInt::from(6 * sign), pow),
        CorrelatorKind::S3XxYy => BigRational::zero(),
        CorrelatorKind::S3ZzQuadratic => BigRational::one(),
        CorrelatorKind::S3XxYyQuadratic => q(2, 1) - BigRational::new(BigInt::from(12 * sign), pow),
    })
}

/// Exact finite-N value, obtained by replacing the 2^N/6 approximation of C_inv^N
/// with the exact multiplicity.
pub fn two_point_correlator_exact(group: &GroupModel, n: u64, kind: CorrelatorKind) -> Result<BigRational> {
    check(group, n, kind)?;
    let c_inv = BigRational::from_integer(group.multiplicity(&group.invariant(), n)?.into());
    let sign = BigRational::from_integer(alternating(n + 1).into());
    Ok(match kind {
        CorrelatorKind::Su2SpinSpin => q(-3, 4 * (n as i64 - 1)),
        CorrelatorKind::S3Zz => sign / c_inv,
        CorrelatorKind::S3XxYy if n == 2 => q(2, 1),
        CorrelatorKind::S3XxYy => BigRational::zero(),
        CorrelatorKind::S3ZzQuadratic => BigRational::one(),
        CorrelatorKind::S3XxYyQuadratic if n == 2 => q(4, 1),
        CorrelatorKind::S3XxYyQuadratic => q(2, 1) - q(2, 1) * sign / c_inv,
    })
}

/// Fidelity correlator of the spin-1/2 SU(2) MMIS for any pair of sites, exact.
///
/// On two sites |S_i·S_j| = ¾ P_0 + ¼ P_1, so the correlator is a weighted sum
/// over the two-site irrep distribution.
pub fn fidelity_correlator_su2_exact(n: u64) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("fidelity correlator needs N >= 3, got {n}")));
    }
    let g = GroupModel::su2();
    let dist = IrrepDistribution::new(&g, 2, n - 2)?;
    let two_c_v = q(3, 2);
    let mut total = BigRational::zero();
    for e in dist.entries() {
        let c_j = g.casimir_eigenvalue(&e.irrep)?;
        total += (c_j - &two_c_v).abs() / q(2, 1) * &e.prob;
    }
    Ok(total)
}

pub fn fidelity_correlator_su2(n: u64) -> Result<f64> {
    Ok(ratio_to_f64(&fidelity_correlator_su2_exact(n)?))
}
