//! Clebsch-Gordan coefficients (Condon-Shortley phases) via the Racah sum, and
//! the entanglement of maximally mixed (j, m) sectors of spin-1/2 chains.
//!
//! Angular momenta are passed doubled (`two_j = 2j`) so half-integers stay exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bigmath::{big_ratio, factorial, ratio_to_f64, CompensatedSum};
use crate::error::{Error, Result};
use crate::rep::{GroupModel, Irrep};

/// `sign · √square` with an exact rational `square`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        Self { sign: 0, square: BigRational::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * ratio_to_f64(&self.square).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

fn check_projection(two_j: u32, two_m: i32) -> Result<()> {
    if two_m.unsigned_abs() > two_j || (two_j as i64 - two_m as i64) % 2 != 0 {
        return Err(Error::InvalidArgument(format!("m = {two_m}/2 is not a projection of j = {two_j}/2")));
    }
    Ok(())
}

fn fact(x: i64) -> BigInt {
    BigInt::from(factorial(x as u64))
}

/// ⟨j1 m1; j2 m2 | j m⟩. Zero (not an error) when the triangle rule or m = m1 + m2 fails.
pub fn clebsch_gordan(two_j1: u32, two_m1: i32, two_j2: u32, two_m2: i32, two_j: u32, two_m: i32) -> Result<SignedSqrt> {
    check_projection(two_j1, two_m1)?;
    check_projection(two_j2, two_m2)?;
    check_projection(two_j, two_m)?;
    let (j1, j2, j) = (two_j1 as i64, two_j2 as i64, two_j as i64);
    let (m1, m2, m) = (two_m1 as i64, two_m2 as i64, two_m as i64);
    if m1 + m2 != m || j > j1 + j2 || j < (j1 - j2).abs() || (j1 + j2 + j) % 2 != 0 {
        return Ok(SignedSqrt::zero());
    }
    // Everything below is an ordinary (undoubled) integer.
    let a = (j1 + j2 - j) / 2;
    let b = (j1 - j2 + j) / 2;
    let c = (-j1 + j2 + j) / 2;
    let s = (j1 + j2 + j) / 2 + 1;
    let jm_plus = (j + m) / 2;
    let jm_minus = (j - m) / 2;
    let j1m_minus = (j1 - m1) / 2;
    let j1m_plus = (j1 + m1) / 2;
    let j2m_minus = (j2 - m2) / 2;
    let j2m_plus = (j2 + m2) / 2;

    let prefactor = BigRational::new(
        BigInt::from(j + 1)
            * fact(a)
            * fact(b)
            * fact(c)
            * fact(jm_plus)
            * fact(jm_minus)
            * fact(j1m_minus)
            * fact(j1m_plus)
            * fact(j2m_minus)
            * fact(j2m_plus),
        fact(s),
    );

    let d1 = (j - j2 + m1) / 2;
    let d2 = (j - j1 - m2) / 2;
    let k_min = 0.max(-d1).max(-d2);
    let k_max = a.min(j1m_minus).min(j2m_plus);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = fact(k) * fact(a - k) * fact(j1m_minus - k) * fact(j2m_plus - k) * fact(d1 + k) * fact(d2 + k);
        let term = BigRational::new(if k % 2 == 0 { 1.into() } else { (-1).into() }, den);
        sum += term;
    }
    if sum.is_zero() {
        return Ok(SignedSqrt::zero());
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    Ok(SignedSqrt { sign, square: prefactor * &sum * &sum })
}

/// Entanglement entropy of |j_a j_b; j m⟩ across the j_a : j_b split, from its
/// Schmidt coefficients |⟨j_a m_a; j_b m−m_a | j m⟩|².
pub fn coupled_state_entropy(two_ja: u32, two_jb: u32, two_j: u32, two_m: i32) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    let mut two_ma = -(two_ja as i32);
    while two_ma <= two_ja as i32 {
        let two_mb = two_m - two_ma;
        if two_mb.unsigned_abs() <= two_jb {
            let cg = clebsch_gordan(two_ja, two_ma, two_jb, two_mb, two_j, two_m)?;
            if !cg.is_zero() {
                let w = ratio_to_f64(&cg.square);
                acc.add(-w * w.ln());
            }
        }
        two_ma += 2;
    }
    Ok(acc.value())
}

/// Entanglement of the maximally mixed state on the (j, m) sector of `n` spin-1/2
/// sites, cut after `n_a` sites.
pub fn jm_sector_entanglement(n: u64, two_j: u32, two_m: i32, n_a: u64) -> Result<f64> {
    check_projection(two_j, two_m)?;
    if n_a > n {
        return Err(Error::InvalidArgument(format!("cut {n_a} exceeds system size {n}")));
    }
    let g = GroupModel::su2();
    let c_j = g.multiplicity(&Irrep::spin(two_j), n)?;
    if c_j.is_zero() {
        return Err(Error::EmptySector { sites: n as usize });
    }
    let n_b = n - n_a;
    let mut total = num_bigint::BigUint::zero();
    let mut acc = CompensatedSum::new();
    for (ja, ca) in g.decomposition(n_a)? {
        for (jb, cb) in g.decomposition(n_b)? {
            let (ta, tb) = (ja.two_j().unwrap(), jb.two_j().unwrap());
            if two_j > ta + tb || two_j < ta.abs_diff(tb) {
                continue;
            }
            let weight = &ca * &cb;
            total += &weight;
            let p = ratio_to_f64(&big_ratio(&weight, &c_j));
            acc.add(p * coupled_state_entropy(ta, tb, two_j, two_m)?);
        }
    }
    if total != c_j {
        return Err(Error::Assertion(format!(
            "sector (2j={two_j}) on {n_a}+{n_b} sites: coupled multiplicities sum to {total}, expected {c_j}"
        )));
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn singlet_coefficients() {
        let up_down = clebsch_gordan(1, 1, 1, -1, 0, 0).unwrap();
        assert_eq!(up_down, SignedSqrt { sign: 1, square: q(1, 2) });
        let down_up = clebsch_gordan(1, -1, 1, 1, 0, 0).unwrap();
        assert_eq!(down_up, SignedSqrt { sign: -1, square: q(1, 2) });
        assert!((up_down.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn textbook_values() {
        // ⟨1 1; ½ −½ | 3/2 ½⟩ = √(1/3), ⟨1 0; ½ ½ | ½ ½⟩ = −√(1/3).
        assert_eq!(clebsch_gordan(2, 2, 1, -1, 3, 1).unwrap(), SignedSqrt { sign: 1, square: q(1, 3) });
        assert_eq!(clebsch_gordan(2, 0, 1, 1, 1, 1).unwrap(), SignedSqrt { sign: -1, square: q(1, 3) });
        // ⟨1 0; 1 0 | 1 0⟩ vanishes.
        assert!(clebsch_gordan(2, 0, 2, 0, 2, 0).unwrap().is_zero());
        // Triangle violation is a zero, bad projection an error.
        assert!(clebsch_gordan(1, 1, 1, 1, 6, 2).unwrap().is_zero());
        assert!(clebsch_gordan(1, 3, 1, 1, 2, 4).is_err());
    }

    #[test]
    fn sector_entanglement_examples() {
        for (n, n_a) in [(4, 2), (6, 3), (8, 2), (12, 6)] {
            let mmis = super::super::entanglement_of_formation(&GroupModel::su2(), n, n_a).unwrap();
            assert!((jm_sector_entanglement(n, 0, 0, n_a).unwrap() - mmis).abs() < 1e-13);
        }
        // (j, m) = (1, 1) on 2+2 qubits: only the 1⊗1 block is entangled, with entropy log 2.
        let e = jm_sector_entanglement(4, 2, 2, 2).unwrap();
        assert!((e - 2f64.ln() / 3.0).abs() < 1e-14);
        assert!(matches!(jm_sector_entanglement(5, 0, 0, 2), Err(Error::EmptySector { .. })));
    }

    proptest! {
        #[test]
        fn orthonormal_columns(two_j1 in 0u32..7, two_j2 in 0u32..7, pick in 0usize..64) {
            // Σ_{m1} |⟨j1 m1; j2 m−m1 | j m⟩|² = 1 for every allowed (j, m).
            let allowed: Vec<u32> = (two_j1.abs_diff(two_j2)..=two_j1 + two_j2).step_by(2).collect();
            let two_j = allowed[pick % allowed.len()];
            for two_m in (-(two_j as i32)..=two_j as i32).step_by(2) {
                let mut total = BigRational::zero();
                for two_m1 in (-(two_j1 as i32)..=two_j1 as i32).step_by(2) {
                    let two_m2 = two_m - two_m1;
                    if two_m2.unsigned_abs() > two_j2 {
                        continue;
                    }
                    total += clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_j, two_m).unwrap().square;
                }
                prop_assert_eq!(total, q(1, 1));
            }
        }

        #[test]
        fn exchange_symmetry(two_j1 in 0u32..6, two_j2 in 0u32..6, a in 0u32..8, b in 0u32..8, c in 0u32..8) {
            // ⟨j2 m2; j1 m1 | j m⟩ = (−1)^{j1+j2−j} ⟨j1 m1; j2 m2 | j m⟩.
            let allowed: Vec<u32> = (two_j1.abs_diff(two_j2)..=two_j1 + two_j2).step_by(2).collect();
            let two_j = allowed[c as usize % allowed.len()];
            let two_m1 = -(two_j1 as i32) + 2 * (a % (two_j1 + 1)) as i32;
            let two_m2 = -(two_j2 as i32) + 2 * (b % (two_j2 + 1)) as i32;
            let two_m = two_m1 + two_m2;
            prop_assume!(two_m.unsigned_abs() <= two_j);
            let x = clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_j, two_m).unwrap();
            let y = clebsch_gordan(two_j2, two_m2, two_j1, two_m1, two_j, two_m).unwrap();
            let phase = if ((two_j1 + two_j2 - two_j) / 2).is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(x.square, y.square);
            prop_assert_eq!(x.sign, phase * y.sign);
        }
    }
}
