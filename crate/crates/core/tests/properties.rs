//! Property-based invariants of the representation data, the closed forms and
//! the channel simulator.

use num_bigint::BigUint;
use num_complex::Complex64 as c64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use mmis_core::analytics::{reduced_spectrum, EntanglementReport};
use mmis_core::sim::{apply_timestep, Boundary, ChannelProgram, DensityMatrix, KrausGate, LocalOp, StateVector};
use mmis_core::{GroupModel, IrrepDistribution};

fn group_and_size() -> impl Strategy<Value = (GroupModel, u64)> {
    prop_oneof![
        (2u64..=30).prop_map(|n| (GroupModel::su2(), n)),
        (2u64..=30).prop_map(|n| (GroupModel::by_name("s3").unwrap(), n)),
        (2u64..=24).prop_map(|n| (GroupModel::by_name("d4").unwrap(), n)),
        (2u64..=18).prop_map(|n| (GroupModel::sud(3).unwrap(), n)),
        (2u64..=12).prop_map(|n| (GroupModel::sud(4).unwrap(), n)),
        (2u64..=30).prop_map(|n| (GroupModel::by_name("z3").unwrap(), n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimensions_add_up((g, n) in group_and_size()) {
        let total: BigUint = g.decomposition(n).unwrap().iter().map(|(irrep, c)| c * irrep.dim).sum();
        prop_assert_eq!(total, BigUint::from(g.onsite_dim()).pow(n as u32));
    }

    #[test]
    fn probabilities_sum_to_one((g, n) in group_and_size(), frac in 0.0f64..=1.0) {
        let n_a = (frac * n as f64).round() as u64;
        if let Ok(dist) = IrrepDistribution::new(&g, n_a, n - n_a) {
            let total: BigRational = dist.entries().iter().map(|e| e.prob.clone()).sum();
            prop_assert!(total.is_one());
            prop_assert!(dist.entries().iter().all(|e| !e.mult_a.is_zero() && !e.mult_b.is_zero()));
        }
    }

    #[test]
    fn swap_symmetry_and_hierarchy((g, n) in group_and_size(), frac in 0.0f64..=1.0) {
        let n_a = (frac * n as f64).round() as u64;
        let (Ok(ab), Ok(ba)) = (IrrepDistribution::new(&g, n_a, n - n_a), IrrepDistribution::new(&g, n - n_a, n_a)) else {
            return Ok(());
        };
        let r = EntanglementReport::from_distribution(&ab);
        let s = EntanglementReport::from_distribution(&ba);
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-10 * (1.0 + x.abs());
        prop_assert!(close(r.entanglement, s.entanglement));
        prop_assert!(close(r.log_negativity, s.log_negativity));
        prop_assert!(close(r.operator_entanglement, s.operator_entanglement));
        prop_assert!(close(r.shannon, s.shannon));
        prop_assert!(r.entanglement <= r.log_negativity + 1e-12);
        prop_assert!(r.entanglement <= r.entropy_a + 1e-12);
        prop_assert!(r.operator_entanglement + 1e-12 >= 2.0 * r.entanglement);
    }

    #[test]
    fn reduced_spectra_are_normalized((g, n) in group_and_size(), k_frac in 0.0f64..1.0) {
        let k = 1 + (k_frac * (n - 1) as f64) as u64;
        if k < n {
            if let Ok(spec) = reduced_spectrum(&g, n, k) {
                prop_assert!(spec.total_weight().is_one());
                prop_assert!(spec.blocks.iter().all(|b| b.eigenvalue >= BigRational::zero()));
            }
        }
    }
}

/// A random two-site unitary from a Hermitian generator, by a truncated
/// exponential followed by Gram-Schmidt.
fn random_unitary(seed: &[f64]) -> LocalOp {
    let d = 4;
    let h = LocalOp::from_fn(d, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        let re = seed[(a * d + b) % seed.len()];
        let im = if i == j { 0.0 } else { seed[(b * d + a + 7) % seed.len()] * if i < j { 1.0 } else { -1.0 } };
        c64::new(re, im)
    });
    let mut u = LocalOp::identity(d);
    let mut term = LocalOp::identity(d);
    for k in 1..20 {
        term = term.matmul(&h).scale(c64::new(0.0, 1.0 / k as f64));
        u = u.add(&term);
    }
    let mut cols: Vec<Vec<c64>> = (0..d).map(|j| (0..d).map(|i| u.get(i, j)).collect()).collect();
    for j in 0..d {
        for k in 0..j {
            let dot: c64 = (0..d).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            let ck = cols[k].clone();
            cols[j].iter_mut().zip(ck).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|a| *a /= norm);
    }
    LocalOp::from_fn(d, |i, j| cols[j][i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channels_preserve_density_matrix_invariants(
        seed in prop::collection::vec(-1.0f64..1.0, 16),
        q in 0.0f64..=1.0,
        a in 0usize..5,
        b in 0usize..5,
        basis in 0usize..32,
    ) {
        prop_assume!(a != b);
        let u = random_unitary(&seed);
        let kraus = vec![
            LocalOp::identity(4).scale(c64::new((1.0 - q).sqrt(), 0.0)),
            u.scale(c64::new(q.sqrt(), 0.0)),
        ];
        let gate = KrausGate::new(vec![a, b], kraus).unwrap();
        let program = ChannelProgram::new(5, 2, vec![vec![gate]], Boundary::Open, 1).unwrap();
        let mut psi = StateVector::basis(5, 2, basis);
        psi.apply_local(&u, &[(a + 1) % 5, (a + 2) % 5]).unwrap();
        let mut rho = DensityMatrix::from_pure(&psi).unwrap();
        for t in 0..3 {
            apply_timestep(&mut rho, &program, t).unwrap();
        }
        prop_assert!(rho.validate().is_ok());
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
    }
}
