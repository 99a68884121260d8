//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Runs without the libtest harness so the report is always printed.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use mmis_core::analytics::{
    entanglement_of_formation, fidelity_correlator_su2, fidelity_correlator_su2_exact, finite_t_entanglement,
    fit_log_slope, jm_sector_entanglement, log_negativity_analytic, reduced_spectrum, two_point_correlator,
    two_point_correlator_exact, CorrelatorKind, Temperature, ThermalSpec,
};
use mmis_core::bigmath::ratio_to_f64;
use mmis_core::sim::{
    abs_spin_spin, build_s3_projector, build_su2_jm_projector, build_su2_projector, expectation, mmis_state,
    pauli_string, run_model, s3_measurement_program, singlet_triplet_program, spin_spin, steady_state_analysis,
    Boundary, Model, RunOptions, UnitaryParams,
};
use mmis_core::{EntanglementReport, GroupModel, IrrepDistribution};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn() -> Outcome;

fn completeness() -> Outcome {
    let cases = [(GroupModel::su2(), 30u64), (GroupModel::by_name("s3").unwrap(), 30), (GroupModel::sud(3).unwrap(), 20)];
    let mut checked = 0usize;
    for (g, n_max) in &cases {
        let d = BigUint::from(g.onsite_dim());
        let mut inv = Vec::new();
        for n in 0..=*n_max {
            let dec = g.decomposition(n).unwrap();
            let total: BigUint = dec.iter().map(|(irrep, c)| c * irrep.dim).sum();
            if total != d.pow(n as u32) {
                return outcome(false, format!("{g}: Σ C_J d_J != d^N at N={n}"));
            }
            inv.push(g.multiplicity(&g.invariant(), n).unwrap());
        }
        for n in 1..=*n_max {
            for n_a in 0..=n {
                let n_b = n - n_a;
                let mut sum = BigUint::zero();
                for irrep in g.candidate_irreps(n_a) {
                    let ca = g.multiplicity(&irrep, n_a).unwrap();
                    if ca.is_zero() {
                        continue;
                    }
                    sum += ca * g.multiplicity(&g.conjugate(&irrep).unwrap(), n_b).unwrap();
                }
                if sum != inv[n as usize] {
                    return outcome(false, format!("{g}: factorization fails at {n_a}+{n_b}"));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} cuts, exact big-integer equality"))
}

fn fig2_reproduction() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [4usize, 6, 8, 10] {
        let log = run_model(Model::Su2SingletTriplet, n, Boundary::Periodic, UnitaryParams::default(), RunOptions::default())
            .unwrap();
        let analytic = log_negativity_analytic(&GroupModel::su2(), n as u64, n as u64 / 2).unwrap();
        let dev = (log.last().logneg_halfchain - analytic).abs();
        let ok = log.converged && dev < 1e-6;
        pass &= ok;
        parts.push(format!("N={n}: {} steps, |ΔE_N|={dev:.1e}", log.rows.len() - 1));
    }
    let g = GroupModel::su2();
    let data: Vec<(f64, f64)> =
        (40..=400).step_by(10).map(|n| (n as f64, entanglement_of_formation(&g, n, n / 2).unwrap())).collect();
    let fit = fit_log_slope(&data).unwrap();
    pass &= (0.45..=0.55).contains(&fit.slope);
    parts.push(format!("slope {:.4}", fit.slope));
    outcome(pass, parts.join("; "))
}

fn s3_limits() -> Outcome {
    let g = GroupModel::by_name("s3").unwrap();
    let e = entanglement_of_formation(&g, 40, 20).unwrap();
    let en = log_negativity_analytic(&g, 40, 20).unwrap();
    let de = (e - 2.0 / 3.0 * 2f64.ln()).abs();
    let dn = (en - (5.0f64 / 3.0).ln()).abs();
    outcome(de < 1e-6 && dn < 1e-6, format!("E={e:.9} (Δ={de:.1e}), E_N={en:.9} (Δ={dn:.1e})"))
}

fn s3_simulation() -> Outcome {
    let measure = run_model(Model::S3Measure, 6, Boundary::Open, UnitaryParams::default(), RunOptions::default()).unwrap();
    let dist = measure.last().trace_dist_to_mmis;
    let mut pass = measure.converged && dist < 1e-6;
    let mut steps = Vec::new();
    for n in [6usize, 8, 10] {
        let log = run_model(Model::S3Unitary, n, Boundary::Open, UnitaryParams::default(), RunOptions::default()).unwrap();
        steps.push(log.convergence_step);
    }
    let counts: Vec<usize> = steps.iter().map(|s| s.unwrap_or(usize::MAX)).collect();
    pass &= steps.iter().all(Option::is_some) && counts.windows(2).all(|w| w[1] <= w[0]);
    outcome(pass, format!("s3-measure N=6 trace distance {dist:.1e}; s3-unitary steps to f<1e-6 at N=6,8,10: {steps:?}"))
}

fn correlators() -> Outcome {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let ss = spin_spin();
    for n in [4usize, 6, 8] {
        let rho = mmis_state(&build_su2_projector(n, 0).unwrap()).unwrap();
        let target = -3.0 / (4.0 * (n as f64 - 1.0));
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((expectation(&rho, &ss, &[i, j]).unwrap().re - target).abs());
            }
        }
    }
    pass &= worst < 1e-9;
    let mut detail = format!("SU(2) max dev {worst:.1e}");
    let g = GroupModel::by_name("s3").unwrap();
    let zz = pauli_string("ZZ").unwrap();
    for n in [4usize, 6] {
        let rho = mmis_state(&build_s3_projector(n, "inv").unwrap()).unwrap();
        let stated = ratio_to_f64(&two_point_correlator(&g, n as u64, CorrelatorKind::S3Zz).unwrap());
        let exact = ratio_to_f64(&two_point_correlator_exact(&g, n as u64, CorrelatorKind::S3Zz).unwrap());
        let numeric = expectation(&rho, &zz, &[0, n - 1]).unwrap().re;
        let dev = (numeric - stated).abs();
        pass &= dev < 1e-9;
        detail += &format!(
            "; S3 N={n}: numeric {numeric:.9}, 6(-1)^(N+1)/2^N = {stated:.9} (dev {dev:.1e}), exact (-1)^(N+1)/C_inv = {exact:.9}"
        );
    }
    if !pass {
        detail += "; the 6(-1)^(N+1)/2^N form is the large-N limit of (-1)^(N+1)/C_inv and cannot hold to 1e-9 at N=4,6";
    }
    outcome(pass, detail)
}

fn fidelity() -> Outcome {
    let f40 = fidelity_correlator_su2(40).unwrap();
    let closed = ratio_to_f64(&fidelity_correlator_su2_exact(6).unwrap());
    let rho = mmis_state(&build_su2_projector(6, 0).unwrap()).unwrap();
    let op = abs_spin_spin();
    let mut worst: f64 = 0.0;
    for i in 0..6 {
        for j in (i + 1)..6 {
            worst = worst.max((expectation(&rho, &op, &[i, j]).unwrap().re - closed).abs());
        }
    }
    let pass = (f40 - 0.375).abs() < 0.02 && worst < 1e-8;
    outcome(pass, format!("F(40)={f40:.6}; N=6 closed form {closed:.9}, numeric max dev {worst:.1e}"))
}

fn steady_states() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let su2 = singlet_triplet_program(4, Boundary::Periodic).unwrap();
    let s3 = s3_measurement_program(4, Boundary::Open).unwrap();
    let sectors = vec![
        (&su2, build_su2_projector(4, 0).unwrap()),
        (&su2, build_su2_jm_projector(4, 2, 0).unwrap()),
        (&su2, build_su2_jm_projector(4, 4, 0).unwrap()),
        (&s3, build_s3_projector(4, "inv").unwrap()),
        (&s3, build_s3_projector(4, "sgn").unwrap()),
    ];
    for (program, proj) in sectors {
        let r = steady_state_analysis(program, &proj).unwrap();
        let ok = r.fixed_point_count == 1 && r.max_dev_from_projected_identity < 1e-10;
        pass &= ok;
        parts.push(format!(
            "{}[{}]: {} fixed point(s), dev {:.1e}, gap {:.3}",
            proj.group(),
            proj.sector(),
            r.fixed_point_count,
            r.max_dev_from_projected_identity,
            r.gap
        ));
    }
    outcome(pass, parts.join("; "))
}

fn local_indistinguishability() -> Outcome {
    let su2 = GroupModel::su2();
    let scaled: Vec<f64> =
        [8u64, 16, 32].iter().map(|&n| reduced_spectrum(&su2, n, 2).unwrap().trace_distance_to_identity() * n as f64).collect();
    let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    let su2_ok = (hi - lo) / hi <= 0.2;
    let s3 = GroupModel::by_name("s3").unwrap();
    let pts: Vec<(f64, f64)> =
        (8u64..=24).map(|n| (n as f64, reduced_spectrum(&s3, n, 2).unwrap().trace_distance_to_identity().ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let rel = (slope + 2f64.ln()).abs() / 2f64.ln();
    outcome(
        su2_ok && rel <= 0.1,
        format!("SU(2) N·D at N=8,16,32: {scaled:.5?}; S3 slope of ln D vs N {slope:.5} ({:.2}% from -ln 2)", rel * 100.0),
    )
}

fn finite_temperature() -> Outcome {
    let at_inf = finite_t_entanglement(&ThermalSpec::new(Temperature::Infinite, 6, 6).unwrap()).unwrap();
    let mmis = entanglement_of_formation(&GroupModel::su2(), 12, 6).unwrap();
    let t4 = |n: u64| finite_t_entanglement(&ThermalSpec::new(Temperature::Finite(4.0), n, n).unwrap()).unwrap();
    let sweep: Vec<f64> = [8u64, 16, 32, 64].iter().map(|&n| t4(n)).collect();
    let last_doubling = sweep[3] - sweep[2];
    let data: Vec<(f64, f64)> = (8u64..=64)
        .step_by(4)
        .map(|n| {
            let spec = ThermalSpec::new(Temperature::Finite(2.0 * n as f64), n, n).unwrap();
            (2.0 * n as f64, finite_t_entanglement(&spec).unwrap())
        })
        .collect();
    let slope = fit_log_slope(&data).unwrap().slope;
    outcome(
        at_inf == mmis && last_doubling < 0.05 && slope > 0.0,
        format!("T=inf equal: {}; T=4 sweep {sweep:.5?} (last doubling +{last_doubling:.2e}); T=N slope {slope:.4}", at_inf == mmis),
    )
}

fn consistency() -> Outcome {
    let mut checks = 0usize;
    let mut worst_identity: f64 = 0.0;
    for (name, n_max) in [("su2", 24u64), ("s3", 24), ("su3", 15), ("d4", 16)] {
        let g = GroupModel::by_name(name).unwrap();
        for n in 2..=n_max {
            for n_a in 1..n {
                let Ok(dist) = IrrepDistribution::new(&g, n_a, n - n_a) else { continue };
                let r = EntanglementReport::from_distribution(&dist);
                if r.entanglement > r.log_negativity + 1e-12 || r.entanglement > r.entropy_a + 1e-12 {
                    return outcome(false, format!("{name} {n_a}+{}: hierarchy violated", n - n_a));
                }
                // Independent evaluation of 2E + Σ p log(C_inv / (C_A C_B)).
                let c_inv = dist.invariant_multiplicity().to_f64().unwrap();
                let extra: f64 = dist
                    .entries()
                    .iter()
                    .map(|e| e.prob_f64() * (c_inv / (e.mult_a.to_f64().unwrap() * e.mult_b.to_f64().unwrap())).ln())
                    .sum();
                worst_identity = worst_identity.max((r.operator_entanglement - 2.0 * r.entanglement - extra).abs());
                checks += 1;
            }
        }
    }
    for name in ["z2", "z3"] {
        let g = GroupModel::by_name(name).unwrap();
        for n in 1..=20u64 {
            for n_a in 0..=n {
                if let Ok(dist) = IrrepDistribution::new(&g, n_a, n - n_a) {
                    if EntanglementReport::from_distribution(&dist).entanglement != 0.0 {
                        return outcome(false, format!("{name}: nonzero E at {n_a}+{}", n - n_a));
                    }
                    checks += 1;
                }
            }
        }
    }
    let su2 = GroupModel::su2();
    let mut worst_jm: f64 = 0.0;
    for n in (2..=16u64).step_by(2) {
        for n_a in 1..n {
            let jm = jm_sector_entanglement(n, 0, 0, n_a).unwrap();
            worst_jm = worst_jm.max((jm - entanglement_of_formation(&su2, n, n_a).unwrap()).abs());
            checks += 1;
        }
    }
    outcome(
        worst_identity < 1e-10 && worst_jm < 1e-10,
        format!("{checks} checks; O identity max dev {worst_identity:.1e}; j=0 sector max dev {worst_jm:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("completeness identities", completeness),
        ("singlet-triplet convergence and log slope", fig2_reproduction),
        ("S3 asymptotic limits", s3_limits),
        ("S3 simulation", s3_simulation),
        ("two-point correlators", correlators),
        ("fidelity correlator", fidelity),
        ("steady-state uniqueness", steady_states),
        ("local indistinguishability", local_indistinguishability),
        ("finite temperature", finite_temperature),
        ("consistency suite", consistency),
    ];
    let only: Vec<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect())
        .unwrap_or_default();
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let out = check();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {id:>2} {verdict} [{name}] ({:.1}s) {}", start.elapsed().as_secs_f64(), out.detail);
        if !out.pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("acceptance criteria failing: {failed:?}");
        std::process::exit(1);
    }
}
