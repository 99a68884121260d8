//! One function per subcommand. Sweeps are evaluated on the rayon pool and
//! written in ascending key order, so output never depends on scheduling.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};

use rayon::prelude::*;
use serde_json::{json, Value};

use mmis_core::analytics::{
    fidelity_correlator_su2_exact, finite_t_entanglement, fit_log_slope, log_negativity_analytic, mpdo_bounds as bounds,
    MpdoBounds,
    reduced_spectrum, two_point_correlator, two_point_correlator_exact, CorrelatorKind, Temperature, ThermalSpec,
};
use mmis_core::bigmath::ratio_to_f64;
use mmis_core::rep::Family;
use mmis_core::sim::{
    build_projector, build_su2_jm_projector, expectation, fmt_sig, mmis_state, pauli_string,
    quadratic_correlator, run_model, run_trajectory, spin_spin, steady_state_analysis, Boundary, LocalOp, Model,
    RunLog, RunOptions, UnitaryParams, MAX_DENSE_SITES,
};
use mmis_core::{EntanglementReport, Error, GroupModel, LogBase, SectorProjector};

use crate::config::{parse_num, parse_range, Config};
use crate::error::CliError;
use crate::{
    CorrelatorArgs, EntArgs, FidelityArgs, FiniteTArgs, MpdoArgs, MultArgs, ReducedArgs, SimulateArgs, SlopeFitArgs,
    SteadyArgs,
};

type Out<'a> = &'a mut dyn Write;

/// Agreement demanded between a converged simulation and the closed forms.
const SIM_TOL: f64 = 1e-6;
/// Agreement demanded between dense correlators and their exact values.
const CORRELATOR_TOL: f64 = 1e-9;
/// A unique fixed point must equal the projected identity this closely.
const FIXED_POINT_DEV: f64 = 1e-10;

/// Sizes the global rayon pool from `MMIS_WORKERS` (unset or 0 means one per core).
pub fn init_workers() -> Result<(), CliError> {
    let workers = match std::env::var("MMIS_WORKERS") {
        Ok(v) => parse_num::<usize>(&v, "MMIS_WORKERS")?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}

fn group(cfg: &Config, flag: &Option<String>) -> Result<GroupModel, CliError> {
    Ok(GroupModel::by_name(&cfg.require(flag, "group")?)?)
}

fn base(cfg: &Config, flag: &Option<String>) -> Result<LogBase, CliError> {
    Ok(cfg.pick(flag, "base")?.map(|b| b.parse()).transpose()?.unwrap_or_default())
}

fn sites(cfg: &Config, flag: &Option<String>) -> Result<Vec<u64>, CliError> {
    parse_range(&cfg.require(flag, "sites")?)
}

fn single_site_count(cfg: &Config, flag: &Option<String>) -> Result<u64, CliError> {
    let text = cfg.require(flag, "sites")?;
    parse_num(&text, "a single site count for --sites")
}

fn dense_sites(n: u64) -> Result<usize, CliError> {
    if n as usize > MAX_DENSE_SITES {
        return Err(Error::Budget(format!("dense simulation supports at most {MAX_DENSE_SITES} sites, got {n}")).into());
    }
    Ok(n as usize)
}

fn opt_num<T: std::str::FromStr>(cfg: &Config, flag: &Option<String>, key: &str, default: T) -> Result<T, CliError> {
    cfg.pick(flag, key)?.map(|v| parse_num(&v, key)).transpose().map(|v| v.unwrap_or(default))
}

fn csv_out(out: Out<'_>) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

/// Evaluates `f` for every key in parallel and returns results in key order.
fn sweep<K: Sync, T: Send>(keys: &[K], f: impl Fn(&K) -> Result<T, CliError> + Sync + Send) -> Result<Vec<T>, CliError> {
    keys.par_iter().map(f).collect()
}

/// In a sweep, sizes without invariant states become rows of NaN so that every
/// requested N still appears; a single size reports the error.
fn allow_empty<T>(r: Result<T, CliError>, is_sweep: bool) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(CliError::Core(Error::EmptySector { .. })) if is_sweep => Ok(None),
        Err(e) => Err(e),
    }
}

fn or_nan(x: Option<f64>) -> String {
    fmt_sig(x.unwrap_or(f64::NAN))
}

fn mismatch(problems: Vec<String>) -> Result<(), CliError> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(problems.join("; ")))
    }
}

pub fn mult(cfg: &Config, a: &MultArgs, out: Out<'_>) -> Result<(), CliError> {
    let g = group(cfg, &a.group)?;
    let label = cfg.require(&a.irrep, "irrep")?;
    let irrep = g.parse_irrep(&label)?;
    let text = cfg.require(&a.sites, "sites")?;
    let ns = parse_range(&text)?;
    let values = sweep(&ns, |&n| Ok(g.multiplicity(&irrep, n)?))?;
    if text.trim().parse::<u64>().is_ok() {
        writeln!(out, "{}", values[0])?;
        return Ok(());
    }
    let name = g.irrep_name(&irrep);
    let mut w = csv_out(out);
    w.write_record(["group", "irrep", "N", "multiplicity"])?;
    for (n, c) in ns.iter().zip(values) {
        w.write_record([g.name(), name.clone(), n.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn ent(cfg: &Config, a: &EntArgs, out: Out<'_>) -> Result<(), CliError> {
    let g = group(cfg, &a.group)?;
    let ns = sites(cfg, &a.sites)?;
    let cut: Option<u64> = cfg.pick(&a.cut, "cut")?.map(|c| parse_num(&c, "cut")).transpose()?;
    let base = base(cfg, &a.base)?;
    let is_sweep = ns.len() > 1;
    let reports = sweep(&ns, |&n| {
        let n_a = cut.unwrap_or(n / 2);
        let r = EntanglementReport::compute(&g, n, n_a).map(|r| r.in_base(base));
        Ok((n, n_a, allow_empty(r.map_err(CliError::from), is_sweep)?))
    })?;
    let mut w = csv_out(out);
    w.write_record(["group", "N", "N_A", "E", "S_A", "E_neg", "O_op", "H_p", "base"])?;
    for (n, n_a, r) in reports {
        let field = |f: fn(&EntanglementReport) -> f64| or_nan(r.as_ref().map(f));
        w.write_record([
            g.name(),
            n.to_string(),
            n_a.to_string(),
            field(|r| r.entanglement),
            field(|r| r.entropy_a),
            field(|r| r.log_negativity),
            field(|r| r.operator_entanglement),
            field(|r| r.shannon),
            base.label().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn slope_fit(cfg: &Config, a: &SlopeFitArgs, out: Out<'_>) -> Result<(), CliError> {
    let input = cfg.require(&a.input, "input")?;
    let column = cfg.pick(&a.column, "column")?.unwrap_or_else(|| "E".into());
    let mut text = String::new();
    if input == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(&input)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| CliError::Config(format!("cannot read {input}: {e}")))?;
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
    let n_col = find("N").ok_or_else(|| CliError::Config("input has no N column".into()))?;
    let v_col = find(&column).ok_or_else(|| CliError::Config(format!("input has no {column} column")))?;
    let mut data = Vec::new();
    let mut skipped = 0usize;
    for record in reader.records() {
        let record = record?;
        let n: f64 = parse_num(&record[n_col], "N")?;
        let v: f64 = parse_num(&record[v_col], &column)?;
        if v.is_finite() {
            data.push((n, v));
        } else {
            skipped += 1;
        }
    }
    let fit = fit_log_slope(&data)?;
    let mut doc = json!({
        "column": column,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "points": fit.points,
        "input_rows": data.len() + skipped,
        "skipped_rows": skipped,
    });
    let mut problems = Vec::new();
    if let Some(name) = cfg.pick(&a.group, "group")? {
        let g = GroupModel::by_name(&name)?;
        // A finite group's entanglement saturates, so the predicted log slope is zero.
        let predicted = match g.family() {
            Family::Finite(_) => 0.0,
            _ => ratio_to_f64(&g.predicted_log_slope()?),
        };
        doc["group"] = json!(g.name());
        doc["predicted_slope"] = json!(predicted);
        doc["deviation"] = json!(fit.slope - predicted);
        if let Some(tol) = cfg.pick(&a.tolerance, "tolerance")? {
            let tol: f64 = parse_num(&tol, "tolerance")?;
            doc["tolerance"] = json!(tol);
            if (fit.slope - predicted).abs() > tol {
                problems.push(format!("slope {} is more than {tol} from {predicted}", fit.slope));
            }
        }
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    mismatch(problems)
}

struct RunSummary {
    log: RunLog,
    steps: usize,
    analytic_logneg: f64,
}

impl RunSummary {
    fn to_json(&self) -> Value {
        let last = self.log.last();
        json!({
            "model": self.log.model.name(),
            "N": self.log.n_sites,
            "boundary": self.log.boundary.to_string(),
            "steps": self.steps,
            "converged": self.log.converged,
            "convergence_step": self.log.convergence_step,
            "final_f_t": last.f_t,
            "logneg_halfchain": last.logneg_halfchain,
            "logneg_analytic": self.analytic_logneg,
            "trace_dist_to_mmis": last.trace_dist_to_mmis,
            "sector_leakage": last.sector_leakage,
        })
    }

    /// Oracle checks on the final state. The two-body S3 channel keeps extra
    /// conserved quantities, so it is not expected to reach the MMIS.
    fn problems(&self) -> Vec<String> {
        let mut p = Vec::new();
        let last = self.log.last();
        let tag = format!("{} N={}", self.log.model, self.log.n_sites);
        if !self.log.converged {
            p.push(format!("{tag}: f(t) did not reach the tolerance within {} steps", self.steps));
        }
        if self.log.model != Model::S3TwoBody {
            let dn = (last.logneg_halfchain - self.analytic_logneg).abs();
            if dn > SIM_TOL {
                p.push(format!("{tag}: log-negativity off the analytic value by {dn:.3e}"));
            }
            if last.trace_dist_to_mmis > SIM_TOL {
                p.push(format!("{tag}: trace distance to the MMIS is {:.3e}", last.trace_dist_to_mmis));
            }
        }
        p
    }
}

pub fn simulate(cfg: &Config, a: &SimulateArgs, out: Out<'_>) -> Result<(), CliError> {
    let model: Model = cfg.require(&a.model, "model")?.parse()?;
    let text = cfg.require(&a.sites, "sites")?;
    let ns = parse_range(&text)?;
    let boundary: Boundary = match cfg.pick(&a.boundary, "boundary")? {
        Some(b) => b.parse()?,
        None => model.default_boundary(),
    };
    let defaults = RunOptions::default();
    let opts = RunOptions {
        tol: opt_num(cfg, &a.tol, "tol", defaults.tol)?,
        max_steps: opt_num(cfg, &a.steps, "steps", defaults.max_steps)?,
        ..defaults
    };
    let dp = UnitaryParams::default();
    let params = UnitaryParams {
        q: opt_num(cfg, &a.q, "q", dp.q)?,
        phi1: opt_num(cfg, &a.phi1, "phi1", dp.phi1)?,
        phi2: opt_num(cfg, &a.phi2, "phi2", dp.phi2)?,
    };
    let single = text.trim().parse::<u64>().is_ok();
    let dump = match &a.dump {
        Some(p) => Some(p.clone()),
        None => cfg.pick(&None, "dump")?.map(Into::into),
    };
    if dump.is_some() && !single {
        return Err(CliError::Config("--dump needs a single site count".into()));
    }

    if cfg.flag(a.trajectory, "trajectory")? {
        if !single {
            return Err(CliError::Config("--trajectory needs a single site count".into()));
        }
        let n = dense_sites(ns[0])?;
        let seed: u64 = opt_num(cfg, &a.seed, "seed", 0)?;
        let program = model.program(n, boundary, params)?;
        let entropies = run_trajectory(&program, &model.initial_pure_state(n)?, opts.max_steps, seed)?;
        let mut w = csv_out(out);
        w.write_record(["t", "half_chain_entropy"])?;
        for (t, s) in entropies.iter().enumerate() {
            w.write_record([(t + 1).to_string(), fmt_sig(*s)])?;
        }
        w.flush()?;
        return Ok(());
    }

    let runs = sweep(&ns, |&n| {
        let n = dense_sites(n)?;
        let log = run_model(model, n, boundary, params, opts)?;
        let analytic_logneg = log_negativity_analytic(&model.group(), n as u64, (n / 2) as u64)?;
        Ok(RunSummary { steps: log.rows.len() - 1, log, analytic_logneg })
    })?;

    let mut problems: Vec<String> = runs.iter().flat_map(RunSummary::problems).collect();
    if single {
        let run = &runs[0];
        run.log.write_csv(&mut *out)?;
        if let Some(path) = dump {
            let mut f = BufWriter::new(File::create(path)?);
            run.log.final_state.write_binary(&mut f)?;
            f.flush()?;
        }
        eprintln!("{}", run.to_json());
    } else {
        let mut w = csv_out(out);
        w.write_record([
            "model",
            "N",
            "boundary",
            "steps",
            "converged",
            "convergence_step",
            "final_f_t",
            "logneg_halfchain",
            "logneg_analytic",
            "trace_dist_to_mmis",
            "sector_leakage",
        ])?;
        for r in &runs {
            let last = r.log.last();
            w.write_record([
                model.name().to_string(),
                r.log.n_sites.to_string(),
                boundary.to_string(),
                r.steps.to_string(),
                r.log.converged.to_string(),
                r.log.convergence_step.map(|s| s.to_string()).unwrap_or_default(),
                fmt_sig(last.f_t),
                fmt_sig(last.logneg_halfchain),
                fmt_sig(r.analytic_logneg),
                fmt_sig(last.trace_dist_to_mmis),
                fmt_sig(last.sector_leakage),
            ])?;
        }
        w.flush()?;
        // The random-unitary channel relaxes in a size-independent number of steps.
        if model == Model::S3Unitary {
            for pair in runs.windows(2) {
                if let (Some(s0), Some(s1)) = (pair[0].log.convergence_step, pair[1].log.convergence_step) {
                    if s1 > s0 {
                        problems.push(format!(
                            "convergence step grew from {s0} at N={} to {s1} at N={}",
                            pair[0].log.n_sites, pair[1].log.n_sites
                        ));
                    }
                }
            }
        }
    }
    mismatch(problems)
}

/// `0`, `-1`, `1/2` or `-3/2` as twice the magnetization.
fn parse_two_m(text: &str) -> Result<i32, CliError> {
    let t = text.trim();
    match t.split_once('/') {
        Some((num, "2")) => parse_num(num, "m"),
        Some(_) => Err(CliError::Config(format!("cannot parse m from {t:?}"))),
        None => parse_num::<i32>(t, "m").map(|m| 2 * m),
    }
}

pub fn steady_check(cfg: &Config, a: &SteadyArgs, out: Out<'_>) -> Result<(), CliError> {
    let model: Model = cfg.require(&a.model, "model")?.parse()?;
    let n = dense_sites(single_site_count(cfg, &a.sites)?)?;
    let boundary: Boundary = match cfg.pick(&a.boundary, "boundary")? {
        Some(b) => b.parse()?,
        None => model.default_boundary(),
    };
    let g = model.group();
    let sector = cfg.pick(&a.sector, "sector")?.unwrap_or_else(|| g.irrep_name(&model.sector()));
    let m = cfg.pick(&a.m, "m")?;
    let (proj, expected): (SectorProjector, Option<usize>) = if sector.eq_ignore_ascii_case("all") {
        (SectorProjector::full(n)?, None)
    } else {
        let irrep = g.parse_irrep(&sector)?;
        match &m {
            Some(m) => {
                let two_j = irrep
                    .two_j()
                    .ok_or_else(|| CliError::Config("--m applies to SU(2) sectors only".into()))?;
                (build_su2_jm_projector(n, two_j, parse_two_m(m)?)?, Some(1))
            }
            None => {
                let d = irrep.dim as usize;
                (build_projector(&g, &irrep, n)?, Some(d * d))
            }
        }
    };
    // Extra conserved quantities of the two-body channel split the sector further.
    let expected = if model == Model::S3TwoBody { None } else { expected };
    let program = model.program(n, boundary, UnitaryParams::default())?;
    let report = steady_state_analysis(&program, &proj)?;
    let mut doc = report.to_json();
    doc["model"] = json!(model.name());
    doc["boundary"] = json!(boundary.to_string());
    doc["rank"] = json!(proj.rank());
    doc["expected_fixed_point_count"] = json!(expected);
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;

    let mut problems = Vec::new();
    if let Some(e) = expected {
        if report.fixed_point_count != e {
            problems.push(format!("found {} fixed points, expected {e}", report.fixed_point_count));
        } else if e == 1 && report.max_dev_from_projected_identity > FIXED_POINT_DEV {
            problems.push(format!(
                "unique fixed point deviates from the projected identity by {:.3e}",
                report.max_dev_from_projected_identity
            ));
        }
    }
    mismatch(problems)
}

fn correlator_op(kind: CorrelatorKind) -> Result<LocalOp, CliError> {
    Ok(match kind {
        CorrelatorKind::Su2SpinSpin => spin_spin(),
        CorrelatorKind::S3Zz | CorrelatorKind::S3ZzQuadratic => pauli_string("ZZ")?,
        CorrelatorKind::S3XxYy | CorrelatorKind::S3XxYyQuadratic => pauli_string("XX")?.add(&pauli_string("YY")?),
    })
}

fn numeric_correlator(g: &GroupModel, n: u64, kind: CorrelatorKind) -> Result<f64, CliError> {
    let n = dense_sites(n)?;
    let rho = mmis_state(&build_projector(g, &g.invariant(), n)?)?;
    let op = correlator_op(kind)?;
    // The MMIS is permutation invariant, so the first pair stands for all of them.
    Ok(match kind {
        CorrelatorKind::S3ZzQuadratic | CorrelatorKind::S3XxYyQuadratic => quadratic_correlator(&rho, &op, &[0, 1])?,
        _ => expectation(&rho, &op, &[0, 1])?.re,
    })
}

pub fn correlator(cfg: &Config, a: &CorrelatorArgs, out: Out<'_>) -> Result<(), CliError> {
    let g = group(cfg, &a.group)?;
    let ns = sites(cfg, &a.sites)?;
    let kind: CorrelatorKind = cfg.require(&a.kind, "kind")?.parse()?;
    let numeric = cfg.flag(a.numeric, "numeric")?;
    let is_sweep = ns.len() > 1;
    let rows = sweep(&ns, |&n| {
        let eval = || -> Result<(f64, f64, Option<f64>), CliError> {
            let value = ratio_to_f64(&two_point_correlator(&g, n, kind)?);
            let exact = ratio_to_f64(&two_point_correlator_exact(&g, n, kind)?);
            let num = if numeric { Some(numeric_correlator(&g, n, kind)?) } else { None };
            Ok((value, exact, num))
        };
        let r = allow_empty(eval(), is_sweep)?;
        Ok((n, r.map_or(f64::NAN, |r| r.0), r.map_or(f64::NAN, |r| r.1), r.map_or(numeric.then_some(f64::NAN), |r| r.2)))
    })?;
    let mut w = csv_out(out);
    let mut header = vec!["group", "N", "kind", "value", "exact_value"];
    if numeric {
        header.push("numeric");
    }
    w.write_record(&header)?;
    let mut problems = Vec::new();
    for (n, value, exact, num) in rows {
        let mut rec = vec![g.name(), n.to_string(), kind.name().to_string(), fmt_sig(value), fmt_sig(exact)];
        if let Some(x) = num {
            rec.push(fmt_sig(x));
            if exact.is_finite() && (x - exact).abs() > CORRELATOR_TOL {
                problems.push(format!("N={n}: dense value {x} differs from exact {exact}"));
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    mismatch(problems)
}

pub fn finite_t(cfg: &Config, a: &FiniteTArgs, out: Out<'_>) -> Result<(), CliError> {
    let nas = parse_range(&cfg.require(&a.na, "na")?)?;
    let nb: Option<u64> = cfg.pick(&a.nb, "nb")?.map(|v| parse_num(&v, "nb")).transpose()?;
    let temp_text = cfg.require(&a.temperature, "temperature")?;
    let base = base(cfg, &a.base)?;
    let temperature = |n: u64| -> Result<Temperature, CliError> {
        if temp_text.trim().eq_ignore_ascii_case("n") {
            Ok(Temperature::Finite(n as f64))
        } else {
            Ok(temp_text.parse()?)
        }
    };
    let is_sweep = nas.len() > 1;
    let rows = sweep(&nas, |&na| {
        let nb = nb.unwrap_or(na);
        let t = temperature(na + nb)?;
        let e = finite_t_entanglement(&ThermalSpec::new(t, na, nb)?).map_err(CliError::from);
        Ok((na, nb, t, allow_empty(e, is_sweep)?.map(|e| base.convert(e))))
    })?;
    let mut w = csv_out(out);
    w.write_record(["N_A", "N_B", "T", "E", "base"])?;
    for (na, nb, t, e) in rows {
        w.write_record([na.to_string(), nb.to_string(), t.to_string(), or_nan(e), base.label().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn reduced(cfg: &Config, a: &ReducedArgs, out: Out<'_>) -> Result<(), CliError> {
    let g = group(cfg, &a.group)?;
    let n = single_site_count(cfg, &a.sites)?;
    let k: u64 = parse_num(&cfg.require(&a.k, "k")?, "k")?;
    let spec = reduced_spectrum(&g, n, k)?;
    let mut doc = spec.to_json();
    doc["group"] = json!(g.name());
    doc["N"] = json!(n);
    doc["trace_distance_to_identity"] = json!(spec.trace_distance_to_identity());
    doc["trace_distance_to_identity_exact"] = json!(spec.trace_distance_to_identity_exact().to_string());
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    Ok(())
}

pub fn fidelity(cfg: &Config, a: &FidelityArgs, out: Out<'_>) -> Result<(), CliError> {
    let ns = sites(cfg, &a.sites)?;
    let is_sweep = ns.len() > 1;
    let rows = sweep(&ns, |&n| allow_empty(fidelity_correlator_su2_exact(n).map_err(CliError::from), is_sweep))?;
    let mut w = csv_out(out);
    w.write_record(["N", "value", "exact"])?;
    for (n, r) in ns.iter().zip(rows) {
        let exact = r.as_ref().map_or_else(|| "nan".to_string(), ToString::to_string);
        w.write_record([n.to_string(), or_nan(r.as_ref().map(ratio_to_f64)), exact])?;
    }
    w.flush()?;
    Ok(())
}

pub fn mpdo_bounds(cfg: &Config, a: &MpdoArgs, out: Out<'_>) -> Result<(), CliError> {
    let g = group(cfg, &a.group)?;
    let ns = sites(cfg, &a.sites)?;
    let cut: Option<u64> = cfg.pick(&a.cut, "cut")?.map(|c| parse_num(&c, "cut")).transpose()?;
    let is_sweep = ns.len() > 1;
    let rows = sweep(&ns, |&n| {
        let n_a = cut.unwrap_or(n / 2);
        let eval = || -> Result<(f64, MpdoBounds), CliError> {
            Ok((EntanglementReport::compute(&g, n, n_a)?.operator_entanglement, bounds(&g, n, n_a)?))
        };
        Ok((n, n_a, allow_empty(eval(), is_sweep)?))
    })?;
    let mut w = csv_out(out);
    w.write_record(["group", "N", "N_A", "O_op", "bond_dimension", "purification_lower", "purification_upper"])?;
    for (n, n_a, r) in rows {
        w.write_record([
            g.name(),
            n.to_string(),
            n_a.to_string(),
            or_nan(r.map(|r| r.0)),
            or_nan(r.map(|r| r.1.bond_dimension)),
            or_nan(r.map(|r| r.1.purification_lower)),
            or_nan(r.map(|r| r.1.purification_upper)),
        ])?;
    }
    w.flush()?;
    Ok(())
}
