use std::fs;
use std::path::Path;

use beamforge_core::bimodal::{bstar_pairs, enumerate_general_bimodal_on, BimodalInvariants};
use beamforge_core::convert::{dimensionless_params, Diagnostics, PhysicalParams};
use beamforge_core::ee::EEFamily;
use beamforge_core::inventory::{enumerate_all, sweep, sweep_grid, verify_solutions, Counts, SweepRow, Verification};
use beamforge_core::mode_sets::{ee_pairs, ee_triples, effective_modes, ModeSetPartition};
use beamforge_core::oracle::{galerkin_solve, OracleResult};
use beamforge_core::single_beam::{enumerate_foundation, enumerate_plain, single_residual, Model, SingleBeamSolutionSet};
use beamforge_core::solution::{FamilyKind, ModalSolution, Sign, SolutionRecord};
use beamforge_core::unimodal::{u_amplitudes, unimodal_solutions, UAmplitudeSet};
use beamforge_core::{Generator, Params, Spectrum};
use serde::Serialize;

use crate::output::{fmt_f64, write_csv, write_json};
use crate::{Cli, CliError, Command, ConvertArgs, EnumerateArgs, Global, SweepArgs, UnimodalArgs};

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    if g.csv && !matches!(cli.command, Command::Sweep(_) | Command::Unimodal(_)) {
        return Err(CliError::Validation("CSV output is only available for sweep and unimodal".into()));
    }
    match &cli.command {
        Command::Sets => sets(g),
        Command::Unimodal(a) => unimodal(g, a),
        Command::Enumerate(a) => enumerate(g, a),
        Command::Single { model } => single(g, *model),
        Command::Oracle { modes, starts } => oracle(g, *modes, *starts),
        Command::Sweep(a) => sweep_cmd(g, a),
        Command::Convert(a) => convert(g, a),
    }
}

fn spectrum(g: &Global) -> Result<Spectrum, CliError> {
    if let Some(path) = g.spectrum.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read spectrum file {path:?}: {e}")))?;
        let parsed = Spectrum::parse_explicit(&text)?;
        return Ok(Spectrum::new(parsed.generator().clone(), g.nmax)?);
    }
    let generator: Generator = g.spectrum.parse()?;
    Ok(Spectrum::new(generator, g.nmax)?)
}

fn required(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("--{name} is required")))
}

fn params(g: &Global) -> Result<Params, CliError> {
    Ok(Params::new(required("beta", g.beta)?, g.varrho, required("k", g.k)?)?)
}

fn records(sols: &[ModalSolution], p: &Params, spec: &Spectrum) -> Result<Vec<SolutionRecord>, CliError> {
    Ok(sols.iter().map(|s| s.to_record(p, spec)).collect::<Result<_, _>>()?)
}

fn check(v: &Verification) -> Result<(), CliError> {
    if v.passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "max relative residual {:e} (tolerance {:e}), max cubic defect {:e}",
            v.max_relative_residual, v.tol_res, v.max_cubic_relative
        )))
    }
}

#[derive(Serialize)]
struct SetsReport<'a> {
    params: Params,
    spectrum: &'a Spectrum,
    partition: ModeSetPartition,
    b1: Vec<(usize, usize)>,
    b2: Vec<(usize, usize)>,
    t: Vec<(usize, usize, usize)>,
    bstar: Vec<BimodalInvariants>,
}

fn sets(g: &Global) -> Result<(), CliError> {
    let p = params(g)?;
    let spec = spectrum(g)?;
    let pairs = ee_pairs(&p, &spec, g.tol_cond);
    let of = |kind| pairs.iter().filter(|(_, k)| *k == kind).map(|(pair, _)| *pair).collect();
    let report = SetsReport {
        params: p,
        spectrum: &spec,
        partition: effective_modes(&p, &spec),
        b1: of(FamilyKind::B1),
        b2: of(FamilyKind::B2),
        t: ee_triples(&p, &spec, g.tol_cond),
        bstar: bstar_pairs(&p, &spec),
    };
    write_json(&report, g.out.as_deref())
}

#[derive(Serialize)]
struct UnimodalReport<'a> {
    params: Params,
    spectrum: &'a Spectrum,
    amplitudes: Vec<UAmplitudeSet>,
    solutions: Vec<SolutionRecord>,
    verification: Verification,
}

const AMPLITUDE_COLUMNS: [&str; 9] = [
    "neg_beta", "alpha_1_plus", "alpha_1_minus", "alpha_2_plus", "alpha_2_minus", "alpha_3_plus", "alpha_3_minus",
    "alpha_4_plus", "alpha_4_minus",
];

fn unimodal(g: &Global, a: &UnimodalArgs) -> Result<(), CliError> {
    let spec = spectrum(g)?;
    if g.csv {
        let n = a.mode.ok_or_else(|| CliError::Validation("--csv needs --mode".into()))?;
        let to = a.to.ok_or_else(|| CliError::Validation("--csv needs --to".into()))?;
        let k = required("k", g.k)?;
        let mut rows = Vec::new();
        for beta in sweep_grid(a.from, to, a.steps, &spec, k, &[n])? {
            let set = u_amplitudes(&Params::new(beta, g.varrho, k)?, &spec, n)?;
            let mut row = vec![fmt_f64(-beta)];
            for i in 1..=4 {
                for sign in [Sign::Plus, Sign::Minus] {
                    row.push(set.get(i, sign).map(fmt_f64).unwrap_or_default());
                }
            }
            rows.push(row);
        }
        return write_csv(&AMPLITUDE_COLUMNS, &rows, g.out.as_deref());
    }
    let p = params(g)?;
    let modes = match a.mode {
        Some(n) => vec![n],
        None => effective_modes(&p, &spec).e,
    };
    let mut amplitudes = Vec::new();
    let mut sols = Vec::new();
    for &n in &modes {
        amplitudes.push(u_amplitudes(&p, &spec, n)?);
        sols.extend(unimodal_solutions(&p, &spec, n)?);
    }
    let verification = verify_solutions(&sols, &p, &spec, g.tol_res)?;
    let report = UnimodalReport { params: p, spectrum: &spec, amplitudes, solutions: records(&sols, &p, &spec)?, verification };
    write_json(&report, g.out.as_deref())?;
    check(&verification)
}

#[derive(Serialize)]
struct FamilyOut {
    #[serde(flatten)]
    family: EEFamily,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    samples: Vec<SolutionRecord>,
}

#[derive(Serialize)]
struct EnumerateReport<'a> {
    params: Params,
    spectrum: &'a Spectrum,
    partition: ModeSetPartition,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    counts: Counts,
    unimodal: Vec<SolutionRecord>,
    ee_families: Vec<FamilyOut>,
    general_bimodal: Vec<SolutionRecord>,
    verification: Verification,
}

fn enumerate(g: &Global, a: &EnumerateArgs) -> Result<(), CliError> {
    let p = params(g)?;
    let spec = spectrum(g)?;
    let mut inv = enumerate_all(&p, &spec, g.tol_cond);
    if !a.pairs.is_empty() {
        inv.general_bimodal = enumerate_general_bimodal_on(&p, &spec, &a.pairs)?;
    }
    let mut checked = inv.isolated();
    let mut families = Vec::new();
    for fam in &inv.families {
        let samples = fam.sample(a.samples, g.seed)?;
        checked.extend(samples.iter().cloned());
        families.push(FamilyOut { family: fam.clone(), samples: records(&samples, &p, &spec)? });
    }
    let verification = verify_solutions(&checked, &p, &spec, g.tol_res)?;
    if let Some(path) = &a.profile {
        write_profile(&inv.isolated(), a.points, path)?;
    }
    let report = EnumerateReport {
        params: p,
        spectrum: &spec,
        note: inv.partition.e.is_empty().then_some("E empty: only the trivial solution exists"),
        partition: inv.partition.clone(),
        counts: inv.counts(),
        unimodal: records(&inv.unimodal, &p, &spec)?,
        ee_families: families,
        general_bimodal: records(&inv.general_bimodal, &p, &spec)?,
        verification,
    };
    write_json(&report, g.out.as_deref())?;
    check(&verification)
}

/// Long format: one row per (solution, x) with `eₙ(x) = √2 sin(nπx)`.
fn write_profile(sols: &[ModalSolution], points: usize, path: &Path) -> Result<(), CliError> {
    if points < 2 {
        return Err(CliError::Validation("--points must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for (i, s) in sols.iter().enumerate() {
        for j in 0..points {
            let x = j as f64 / (points - 1) as f64;
            let (u, v) = s.profile_at(x);
            rows.push(vec![i.to_string(), s.tag.to_string(), fmt_f64(x), fmt_f64(u), fmt_f64(v)]);
        }
    }
    write_csv(&["solution", "tag", "x", "u", "v"], &rows, Some(path))
}

#[derive(Serialize)]
struct SingleReport<'a> {
    params: Params,
    spectrum: &'a Spectrum,
    #[serde(flatten)]
    set: SingleBeamSolutionSet,
    max_relative_residual: f64,
    tol_res: f64,
}

fn single(g: &Global, model: Model) -> Result<(), CliError> {
    let spec = spectrum(g)?;
    let p = match model {
        // k plays no role in the plain model
        Model::Plain => Params::new(required("beta", g.beta)?, g.varrho, g.k.unwrap_or(1.0))?,
        Model::Foundation => params(g)?,
    };
    let set = match model {
        Model::Plain => enumerate_plain(&p, &spec),
        Model::Foundation => enumerate_foundation(&p, &spec, g.tol_cond),
    };
    let worst = set
        .unimodal
        .iter()
        .map(|s| single_residual(&p, &spec, model, &[(s.n, s.amplitude)]))
        .fold(0.0, f64::max);
    let report = SingleReport { params: p, spectrum: &spec, set, max_relative_residual: worst, tol_res: g.tol_res };
    write_json(&report, g.out.as_deref())?;
    if worst >= g.tol_res {
        return Err(CliError::Verification(format!("max relative residual {worst:e}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleReport<'a> {
    params: Params,
    spectrum: &'a Spectrum,
    seed: u64,
    #[serde(flatten)]
    result: OracleResult,
}

fn oracle(g: &Global, modes: usize, starts: usize) -> Result<(), CliError> {
    let p = params(g)?;
    let spec = spectrum(g)?;
    if starts == 0 {
        return Err(CliError::Validation("--starts must be positive".into()));
    }
    let result = galerkin_solve(&p, &spec, modes, starts, g.seed, g.tol_cond)?;
    let unmatched = result.report.unmatched.len();
    write_json(&OracleReport { params: p, spectrum: &spec, seed: g.seed, result }, g.out.as_deref())?;
    if unmatched > 0 {
        return Err(CliError::Verification(format!("{unmatched} oracle roots outside the closed-form classification")));
    }
    Ok(())
}

const SWEEP_COLUMNS: [&str; 11] = [
    "beta",
    "branch_id",
    "modes",
    "alpha1",
    "gamma1",
    "alpha2",
    "gamma2",
    "n_effective",
    "n_unimodal",
    "n_ee_families",
    "n_general_bimodal",
];

fn sweep_row(r: &SweepRow) -> Vec<String> {
    vec![
        fmt_f64(r.beta),
        r.branch_id.clone(),
        r.modes.clone(),
        fmt_f64(r.alpha1),
        fmt_f64(r.gamma1),
        fmt_f64(r.alpha2),
        fmt_f64(r.gamma2),
        r.n_effective.to_string(),
        r.n_unimodal.to_string(),
        r.n_ee_families.to_string(),
        r.n_general_bimodal.to_string(),
    ]
}

fn sweep_cmd(g: &Global, a: &SweepArgs) -> Result<(), CliError> {
    let spec = spectrum(g)?;
    let k = required("k", g.k)?;
    let base = Params::new(0.0, g.varrho, k)?;
    if a.plot.is_some() && g.out.is_none() {
        return Err(CliError::Validation("--plot needs --out for the CSV it reads".into()));
    }
    let betas = sweep_grid(a.from, a.to, a.steps, &spec, k, &a.modes)?;
    let rows = sweep(&base, &spec, &betas, &a.modes, &a.pairs, g.tol_cond)?;
    if g.json {
        write_json(&rows, g.out.as_deref())?;
    } else {
        let cells: Vec<Vec<String>> = rows.iter().map(sweep_row).collect();
        write_csv(&SWEEP_COLUMNS, &cells, g.out.as_deref())?;
    }
    if let (Some(plot), Some(csv)) = (&a.plot, &g.out) {
        let mut branches: Vec<&str> = rows.iter().map(|r| r.branch_id.as_str()).filter(|b| *b != "trivial").collect();
        branches.sort_unstable();
        branches.dedup();
        fs::write(plot, gnuplot_script(csv, &branches))?;
    }
    Ok(())
}

fn gnuplot_script(csv: &Path, branches: &[&str]) -> String {
    let data = csv.display().to_string().replace('\'', "''");
    let mut s = String::from("set datafile separator ','\nset key outside right\nset xlabel '-beta'\nset ylabel 'alpha_1'\n");
    if branches.is_empty() {
        s.push_str(&format!("plot '{data}' using (-$1):4 every ::1 with points title 'trivial'\n"));
        return s;
    }
    s.push_str(&format!("branches = \"{}\"\n", branches.join(" ")));
    s.push_str(&format!(
        "plot for [b in branches] '{data}' using (-$1):(strcol(2) eq b ? $4 : NaN) every ::1 with points pt 7 ps 0.4 title b\n"
    ));
    s
}

#[derive(Serialize)]
struct ConvertReport {
    params: Params,
    diagnostics: Diagnostics,
}

fn convert(g: &Global, a: &ConvertArgs) -> Result<(), CliError> {
    let phys = PhysicalParams {
        ell: a.ell,
        h: a.h,
        e_mod: a.e_mod,
        nu_poisson: a.nu,
        d_axial: a.d_axial,
        kappa_core: a.kappa,
        omega_area: a.area,
        rho_density: a.rho,
    };
    let (params, diagnostics) = dimensionless_params(&phys)?;
    for w in &diagnostics.warnings {
        eprintln!("warning: {w}");
    }
    write_json(&ConvertReport { params, diagnostics }, g.out.as_deref())
}
