//! Turning a parsed command into a pipeline run and its files.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use thinfree_core::pipelines::{
    default_grid, run_bounded_positivity, run_compact_contact, run_named_example, run_prop_subsets, run_thm_approx,
    verify, ApproxParams, PipelineError, SubsetParams, NAMED_EXAMPLES,
};
use thinfree_core::setgeom::export::write_set_csv;
use thinfree_core::vi_solver::io::{write_checkpoint, write_grid_csv, write_plane_csv};
use thinfree_core::vi_solver::SweepOrder;
use thinfree_core::{parse_poly, GridParams, PipelineOutcome, PipelineReport, Polynomial};

use crate::config::Settings;
use crate::render::{render_raster, RasterStyle};
use crate::{Command, Mode};

/// Default output root when neither `--out` nor `THINFREE_OUT` is set.
const DEFAULT_ROOT: &str = "thinfree_runs";

#[derive(Clone, Debug)]
pub enum Job {
    Example(String),
    Solve { poly: Polynomial, mode: Mode },
    Approx { points: Vec<[f64; 2]>, eps: f64 },
    Subsets { poly: Polynomial, delta: f64 },
    Verify { oracle: Option<usize>, comparison: Option<usize> },
}

impl Job {
    /// Validate the command's own inputs; failures are usage errors.
    pub fn from_command(cmd: &Command, s: &Settings) -> Result<Job> {
        Ok(match cmd {
            Command::Example { name } => {
                if !NAMED_EXAMPLES.contains(&name.as_str()) {
                    bail!("unknown example '{name}' (known: {})", NAMED_EXAMPLES.join(", "));
                }
                Job::Example(name.clone())
            }
            Command::Solve { poly, mode, .. } => {
                let n = s.n.unwrap_or(2);
                Job::Solve { poly: parse_poly(poly, n).context("parsing --poly")?, mode: *mode }
            }
            Command::Approx { points, .. } => {
                let eps = s.eps.context("approx needs --eps (or eps in the config file)")?;
                Job::Approx { points: read_points(points)?, eps }
            }
            Command::Subsets { poly, .. } => {
                let delta = s.delta.context("subsets needs --delta (or delta in the config file)")?;
                Job::Subsets { poly: parse_poly(poly, 2).context("parsing --poly")?, delta }
            }
            Command::Verify { oracle, comparison } => Job::Verify { oracle: *oracle, comparison: *comparison },
        })
    }

    pub fn name(&self) -> String {
        match self {
            Job::Example(n) => n.clone(),
            Job::Solve { mode: Mode::Compact, .. } => "solve_compact".into(),
            Job::Solve { mode: Mode::Positivity, .. } => "solve_positivity".into(),
            Job::Approx { .. } => "approx".into(),
            Job::Subsets { .. } => "subsets".into(),
            Job::Verify { .. } => "verify".into(),
        }
    }
}

/// `x,y` per line; blank lines, `#` comments and a non-numeric header are skipped.
pub fn read_points(path: &Path) -> Result<Vec<[f64; 2]>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading points {}", path.display()))?;
    let mut out = Vec::new();
    let mut header_seen = false;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = parts.iter().map(|p| p.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 2 => out.push([v[0], v[1]]),
            None if out.is_empty() && !header_seen => header_seen = true,
            _ => bail!("{}:{}: expected 'x,y', got '{line}'", path.display(), no + 1),
        }
    }
    if out.is_empty() {
        bail!("{} holds no points", path.display());
    }
    Ok(out)
}

fn grid(base: GridParams, s: &Settings) -> GridParams {
    let mut g = base;
    if let Some(l) = s.half_width {
        g.half_width = l;
    }
    if let Some(h) = s.spacing {
        g.spacing = h;
    }
    if s.omega.is_some() {
        g.omega = s.omega;
    }
    if let Some(t) = s.tol {
        g.tol = t;
    }
    if s.tau_c.is_some() {
        g.tau_c = s.tau_c;
    }
    if let Some(w) = s.workers {
        g.order = SweepOrder::RedBlack { workers: w };
    }
    g
}

enum Produced {
    Full(Box<PipelineOutcome>),
    ReportOnly(PipelineReport),
}

fn produce(job: &Job, s: &Settings) -> Result<Produced, PipelineError> {
    let full = |o: PipelineOutcome| Produced::Full(Box::new(o));
    Ok(match job {
        Job::Example(name) => full(run_named_example(name, Some(&grid(default_grid(name), s)))?),
        Job::Solve { poly, mode: Mode::Compact } => full(run_compact_contact(poly, &grid(GridParams::pinned(), s))?),
        Job::Solve { poly, mode: Mode::Positivity } => {
            full(run_bounded_positivity(poly, &grid(GridParams::positivity(), s))?)
        }
        Job::Approx { points, eps } => {
            let mut p = ApproxParams::default();
            p.subsets.grid = grid(p.subsets.grid, s);
            if let Some(l) = &s.ladder {
                p.subsets.ladder = l.clone();
            }
            full(run_thm_approx(points, *eps, &p)?)
        }
        Job::Subsets { poly, delta } => {
            let mut p = SubsetParams { grid: grid(GridParams::pinned(), s), ..SubsetParams::default() };
            if let Some(l) = &s.ladder {
                p.ladder = l.clone();
            }
            full(run_prop_subsets(poly, *delta, &p)?)
        }
        Job::Verify { oracle, comparison } => {
            let mut counts = verify::VerifyCounts::default();
            counts.oracle = oracle.unwrap_or(counts.oracle);
            counts.comparison = comparison.unwrap_or(counts.comparison);
            Produced::ReportOnly(verify::run_verify(s.seed.unwrap_or(0), counts)?)
        }
    })
}

pub fn output_dir(name: &str, s: &Settings) -> PathBuf {
    match &s.out {
        Some(p) => p.clone(),
        None => {
            let root = std::env::var_os("THINFREE_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_ROOT));
            root.join(name)
        }
    }
}

fn create(dir: &Path, file: &str) -> Result<BufWriter<File>> {
    let path = dir.join(file);
    Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
}

fn write_artifacts(out: &PipelineOutcome, dir: &Path, dump_grid: bool) -> Result<Vec<String>> {
    let mut names = Vec::new();
    let overlay = out.overlay.as_ref();
    for (file, set, style) in [
        ("contact.pgm", &out.sets.contact, RasterStyle::Contact),
        ("positivity.pgm", &out.sets.positivity, RasterStyle::Positivity),
        ("overlay.pgm", &out.sets.contact, RasterStyle::Overlay),
    ] {
        let mut w = create(dir, file)?;
        render_raster(set, style, overlay, &mut w)?;
        w.flush()?;
        names.push(file.to_string());
    }
    let mut w = create(dir, "contact.csv")?;
    write_set_csv(&out.sets.contact, &mut w)?;
    w.flush()?;
    names.push("contact.csv".into());
    let mut w = create(dir, "plane.csv")?;
    write_plane_csv(&out.field, &out.spec, &mut w)?;
    w.flush()?;
    names.push("plane.csv".into());
    if dump_grid {
        let mut w = create(dir, "grid.csv")?;
        write_grid_csv(&out.field, &mut w)?;
        w.flush()?;
        let mut w = create(dir, "checkpoint.bin")?;
        write_checkpoint(&out.field, &mut w)?;
        w.flush()?;
        names.push("grid.csv".into());
        names.push("checkpoint.bin".into());
    }
    Ok(names)
}

fn params_hash(report: &PipelineReport) -> String {
    let inputs = serde_json::to_string(&report.inputs).expect("inputs serialise");
    let digest = Sha256::digest(format!("{}\n{inputs}", report.name).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn append_manifest(root: &Path, report: &PipelineReport, seconds: f64) -> Result<()> {
    let path = root.join("runs.csv");
    let fresh = !path.exists();
    let mut f = OpenOptions::new().create(true).append(true).open(&path).with_context(|| format!("opening {}", path.display()))?;
    if fresh {
        writeln!(f, "name,params_hash,pass,wall_time_s")?;
    }
    writeln!(f, "{},{},{},{seconds:.3}", report.name, params_hash(report), report.pass)?;
    Ok(())
}

/// Run the job, write everything, and return the report's pass flag.
pub fn execute(job: &Job, s: &Settings) -> Result<bool> {
    let start = Instant::now();
    let name = job.name();
    let dir = output_dir(&name, s);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut report = match produce(job, s) {
        Ok(Produced::Full(out)) => {
            let names = write_artifacts(&out, &dir, s.dump_grid)?;
            let mut r = out.report;
            r.artifacts = names;
            r
        }
        Ok(Produced::ReportOnly(r)) => r,
        Err(e) => {
            let mut r = PipelineReport::new(&name);
            r.note(format!("pipeline error: {e}"));
            r.check_true("pipeline completed", "pipeline preconditions", false);
            r
        }
    };
    report.refresh();
    let mut w = create(&dir, "report.json")?;
    w.write_all(report.to_json().as_bytes())?;
    w.flush()?;
    let root = dir.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    append_manifest(root, &report, start.elapsed().as_secs_f64())?;
    let failed = report.failed_checks();
    println!("{}: {} ({} checks, {} failed) -> {}", name, if report.pass { "PASS" } else { "FAIL" }, report.checks.len(), failed.len(), dir.display());
    for c in failed {
        println!("  failed: {} (predicted {}, measured {})", c.description, c.predicted, c.measured);
    }
    Ok(report.pass)
}
