//! The four subcommands: grid, measures, verify, report.

use std::path::{Path, PathBuf};

use serde::Serialize;

use phasespace_core::engine::{auto_grid, husimi_q, order_smooth, wigner_w};
use phasespace_core::inequality::{min_slack_summary, run_battery, InequalityVerdict};
use phasespace_core::measures::{build_measure_report, MeasureConfig, MeasureReport};
use phasespace_core::{DensityMatrix, Ext, FockCutoff, PhaseGrid, StateKind};

use crate::config::{Extent, Format, RunConfig};
use crate::export;
use crate::CliError;

/// Fully materialised configuration echoed into every JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub states: Vec<String>,
    pub cutoff: usize,
    pub grid_half_extent: Option<f64>,
    pub grid_points: usize,
    pub q_lattice: Vec<Ext>,
    pub r_lattice: Vec<Ext>,
    pub formats: Vec<Format>,
    pub out_dir: String,
}

fn resolved(config: &RunConfig, states: &[StateKind]) -> ResolvedConfig {
    ResolvedConfig {
        states: states.iter().map(|k| k.tag()).collect(),
        cutoff: config.cutoff,
        grid_half_extent: config.grid.r.fixed(),
        grid_points: config.grid.n,
        q_lattice: config.q_lattice.clone(),
        r_lattice: config.r_lattice.clone(),
        formats: config.output.formats.clone(),
        out_dir: config.output.dir.clone(),
    }
}

fn out_dir(config: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(&config.output.dir);
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::config(format!("cannot create output dir {}: {e}", dir.display())))?;
    Ok(dir)
}

fn wants(config: &RunConfig, f: Format) -> bool {
    config.output.formats.contains(&f)
}

fn resolve_grid(config: &RunConfig, rho: &DensityMatrix) -> Result<PhaseGrid, CliError> {
    match config.grid.r {
        Extent::Fixed(r) => PhaseGrid::new(r, config.grid.n).map_err(CliError::from_core),
        Extent::Auto(_) => auto_grid(rho, config.grid.n).map_err(CliError::from_core),
    }
}

#[derive(Debug, Serialize)]
struct GridOutput {
    resolved_config: ResolvedConfig,
    state: String,
    order: f64,
    grid_half_extent: f64,
    grid_points: usize,
    normalisation: f64,
    norm_error_estimate: f64,
    max_imag: f64,
    clipped_samples: usize,
    files: Vec<String>,
}

pub fn cmd_grid(config: &RunConfig, state: Option<&str>, order: f64) -> Result<(), CliError> {
    if !(-1.0..=0.0).contains(&order) {
        return Err(CliError::config("order must lie in [-1, 0]".into()));
    }
    let descriptor = match state {
        Some(d) => d.to_string(),
        None => {
            let states = config
                .states
                .clone()
                .ok_or_else(|| CliError::config("grid needs --state or a single-state config".into()))?;
            match states.as_slice() {
                [single] => single.clone(),
                _ => {
                    return Err(CliError::config(
                        "grid needs --state or a single-state config".into(),
                    ))
                }
            }
        }
    };
    let kind = StateKind::parse(&descriptor).map_err(CliError::from_core)?;
    let rho = DensityMatrix::build(&kind, FockCutoff::new(config.cutoff)).map_err(CliError::from_core)?;
    let grid = resolve_grid(config, &rho)?;

    let field = if order == -1.0 {
        husimi_q(&rho, &grid)
    } else if order == 0.0 {
        wigner_w(&rho, &grid)
    } else {
        order_smooth(&wigner_w(&rho, &grid).map_err(CliError::from_core)?, order)
    }
    .map_err(CliError::from_core)?;

    let (_, norm_err) = field.pnorm(Ext::Finite(1.0)).map_err(CliError::from_core)?;
    let integral = field.integral();
    println!(
        "{} at s = {order}: normalisation {integral:.12} (quadrature error ~ {norm_err:.3e})",
        rho.tag()
    );

    let dir = out_dir(config)?;
    let base = format!("{}_s{}", rho.tag(), order.to_string().replace('-', "m"));
    let mut files = Vec::new();
    if wants(config, Format::Csv) {
        let path = dir.join(format!("{base}.csv"));
        export::write_csv(&field, &path)?;
        files.push(path.display().to_string());
    }
    if wants(config, Format::Bin) {
        let path = dir.join(format!("{base}.bin"));
        export::write_bin(&field, &path)?;
        files.push(path.display().to_string());
    }
    if wants(config, Format::Json) {
        let path = dir.join(format!("{base}.json"));
        let out = GridOutput {
            resolved_config: resolved(config, std::slice::from_ref(&kind)),
            state: rho.tag().to_string(),
            order,
            grid_half_extent: field.grid.half_extent,
            grid_points: field.grid.points_per_axis,
            normalisation: integral,
            norm_error_estimate: norm_err,
            max_imag: field.max_imag,
            clipped_samples: field.clipped,
            files: files.clone(),
        };
        export::write_json(&out, &path)?;
        files.push(path.display().to_string());
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct MeasuresOutput {
    resolved_config: ResolvedConfig,
    reports: Vec<MeasureReport>,
}

fn measures_table(reports: &[MeasureReport]) -> String {
    let mut t = format!(
        "{:<28} {:>10} {:>10} {:>10} {:>10}\n",
        "state", "wehrl", "S_delta", "C_rho", "purity"
    );
    for r in reports {
        t.push_str(&format!(
            "{:<28} {:>10.6} {:>10.6} {:>10.6} {:>10.6}\n",
            r.state_tag, r.wehrl, r.suessmann_entropy, r.nonclassicality, r.purity
        ));
    }
    t
}

fn compute_measures(config: &RunConfig, states: &[StateKind]) -> Result<Vec<MeasureReport>, CliError> {
    let mconfig = MeasureConfig {
        grid_points: config.grid.n,
        grid_half_extent: config.grid.r.fixed(),
        q_lattice: config.q_lattice.clone(),
        ..MeasureConfig::default()
    };
    let mut reports = Vec::new();
    for kind in states {
        let rho = DensityMatrix::build(kind, FockCutoff::new(config.cutoff))
            .map_err(CliError::from_core)?;
        reports.push(build_measure_report(&rho, &mconfig).map_err(CliError::from_core)?);
    }
    Ok(reports)
}

fn write_measures(
    config: &RunConfig,
    states: &[StateKind],
    reports: &[MeasureReport],
    dir: &Path,
) -> Result<(), CliError> {
    if wants(config, Format::Json) {
        let out = MeasuresOutput {
            resolved_config: resolved(config, states),
            reports: reports.to_vec(),
        };
        export::write_json(&out, &dir.join("measures.json"))?;
    }
    let table = measures_table(reports);
    print!("{table}");
    if wants(config, Format::Table) {
        std::fs::write(dir.join("measures.txt"), table)
            .map_err(|e| CliError::numeric(format!("table write: {e}")))?;
    }
    Ok(())
}

pub fn cmd_measures(config: &RunConfig) -> Result<(), CliError> {
    let states = config.resolve_states()?;
    let dir = out_dir(config)?;
    let reports = compute_measures(config, &states)?;
    write_measures(config, &states, &reports, &dir)
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    resolved_config: ResolvedConfig,
    verdicts: Vec<InequalityVerdict>,
    min_slack: Vec<(String, f64)>,
}

fn verdict_table(verdicts: &[InequalityVerdict]) -> String {
    let mut t = format!(
        "{:<28} {:<26} {:>12} {:>12} {:>6}\n",
        "state", "relation", "slack", "tolerance", "ok"
    );
    for v in verdicts {
        t.push_str(&format!(
            "{:<28} {:<26} {:>12.3e} {:>12.3e} {:>6}\n",
            v.state_tag,
            v.relation.label(),
            v.slack,
            v.tolerance,
            if v.passed { "pass" } else { "FAIL" }
        ));
    }
    t
}

fn compute_verify(config: &RunConfig, states: &[StateKind]) -> Result<Vec<InequalityVerdict>, CliError> {
    let relations = config.resolve_relations()?;
    Ok(run_battery(
        states,
        &relations,
        FockCutoff::new(config.cutoff),
        &config.suite_config(),
    ))
}

fn write_verify(
    config: &RunConfig,
    states: &[StateKind],
    verdicts: &[InequalityVerdict],
    dir: &Path,
) -> Result<(), CliError> {
    if wants(config, Format::Json) {
        let out = VerifyOutput {
            resolved_config: resolved(config, states),
            verdicts: verdicts.to_vec(),
            min_slack: min_slack_summary(verdicts),
        };
        export::write_json(&out, &dir.join("verdicts.json"))?;
    }
    let table = verdict_table(verdicts);
    print!("{table}");
    if wants(config, Format::Table) {
        std::fs::write(dir.join("verdicts.txt"), table)
            .map_err(|e| CliError::numeric(format!("table write: {e}")))?;
    }
    Ok(())
}

fn verification_status(verdicts: &[InequalityVerdict]) -> Result<(), CliError> {
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    if failed > 0 {
        Err(CliError::verification(format!("{failed} verdict(s) failed")))
    } else {
        Ok(())
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<(), CliError> {
    let states = config.resolve_states()?;
    let dir = out_dir(config)?;
    let verdicts = compute_verify(config, &states)?;
    write_verify(config, &states, &verdicts, &dir)?;
    verification_status(&verdicts)
}

#[derive(Debug, Serialize)]
struct ReportOutput {
    resolved_config: ResolvedConfig,
    reports: Vec<MeasureReport>,
    verdicts: Vec<InequalityVerdict>,
    min_slack: Vec<(String, f64)>,
}

pub fn cmd_report(config: &RunConfig) -> Result<(), CliError> {
    let states = config.resolve_states()?;
    let dir = out_dir(config)?;
    let reports = compute_measures(config, &states)?;
    write_measures(config, &states, &reports, &dir)?;
    let verdicts = compute_verify(config, &states)?;
    write_verify(config, &states, &verdicts, &dir)?;
    if wants(config, Format::Json) {
        let min_slack = min_slack_summary(&verdicts);
        let out = ReportOutput {
            resolved_config: resolved(config, &states),
            reports,
            verdicts: verdicts.clone(),
            min_slack,
        };
        export::write_json(&out, &dir.join("report.json"))?;
    }
    verification_status(&verdicts)
}
