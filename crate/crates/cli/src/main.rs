//! `conekit`: property checks, metric induction, and fixed point solving
//! for cone metric spaces, driven by JSON descriptions.
//!
//! Exit codes: 0 when every check passes (or the solver converges),
//! 1 when a property check fails (or the solver does not converge),
//! 2 on input errors (unreadable files, malformed JSON, bad parameters).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use conekit::{
    check_condition_c, check_condition_c1, check_remark23, condition_c1_cases, condition_c_cases,
    parse_spec, picard_solve, theorem21_implication, transfer_psi, validate_cone_kind,
    verify_scalar_contraction, verify_vector_contraction, ConeMetricSpace, ConeSpec,
    InducedMetric, MapSpec, PhiSpec, Point, PropertyCheck, PropertyReport, Scalarizer, SpaceSpec,
};

#[derive(Parser)]
#[command(name = "conekit", version, about = "Cone metric spaces, scalarization, and fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the cone axioms (and the designated direction, if any).
    CheckCone {
        cone: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the scalarization lemma suites over a cone.
    CheckLemmas {
        cone: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Induce the real metric d_p from a cone metric space.
    Induce {
        space: PathBuf,
        /// Also write the induced distance data to this file.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check vector and scalar contraction plus their implication.
    Verify {
        space: PathBuf,
        map: PathBuf,
        phi: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run Picard iteration to a fixed point.
    Solve {
        space: PathBuf,
        map: PathBuf,
        /// Start point: a label for finite spaces, a number for lines.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Check conditions (C) and (C1) and the case-preserving transfer.
    CheckC {
        space: PathBuf,
        f: PathBuf,
        g: PathBuf,
        phi: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_spec<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_space(path: &Path) -> Result<ConeMetricSpace> {
    let spec: SpaceSpec = read_spec(path)?;
    spec.build()
        .with_context(|| format!("building the space from {}", path.display()))
}

fn emit(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn summarize(name: &str, report: &PropertyReport) {
    for line in report.summary().lines() {
        eprintln!("{name}: {line}");
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::CheckCone { cone, samples, seed } => check_cone(&cone, samples, seed),
        Command::CheckLemmas { cone, samples, seed } => check_lemmas(&cone, samples, seed),
        Command::Induce {
            space,
            pairs,
            samples,
            seed,
        } => induce(&space, pairs.as_deref(), samples, seed),
        Command::Verify {
            space,
            map,
            phi,
            samples,
            seed,
        } => verify(&space, &map, &phi, samples, seed),
        Command::Solve {
            space,
            map,
            x0,
            tol,
            max_iter,
        } => solve(&space, &map, &x0, tol, max_iter),
        Command::CheckC {
            space,
            f,
            g,
            phi,
            samples,
            seed,
        } => check_c(&space, &f, &g, &phi, samples, seed),
    }
}

fn check_cone(path: &Path, samples: usize, seed: u64) -> Result<bool> {
    let spec: ConeSpec = read_spec(path)?;
    let kind = spec.build_kind()?;
    let mut report = validate_cone_kind(&kind, samples, seed)?;

    // The designated direction is part of the cone's contract: an
    // unusable one is a failed property, not a malformed input.
    let direction = match spec.build() {
        Ok(_) => PropertyCheck {
            item: "designated_direction_interior".into(),
            trials: 1,
            failures: 0,
            worst_violation: 0.0,
            witness: None,
        },
        Err(e) => PropertyCheck {
            item: "designated_direction_interior".into(),
            trials: 1,
            failures: 1,
            worst_violation: 1.0,
            witness: Some(json!(e.to_string())),
        },
    };
    report.push(direction);

    summarize("check-cone", &report);
    let passed = report.passed();
    emit(&json!({ "kind": kind.name(), "report": report }))?;
    eprintln!("check-cone: {}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn check_lemmas(path: &Path, samples: usize, seed: u64) -> Result<bool> {
    let spec: ConeSpec = read_spec(path)?;
    let cone = spec.build()?;
    let s = Scalarizer::new(cone);
    let lemma1 = s.check_lemma1(samples, seed);
    let lemma2 = s.check_lemma2(samples, seed.wrapping_add(1));
    summarize("lemma1", &lemma1);
    summarize("lemma2", &lemma2);
    let passed = lemma1.passed() && lemma2.passed();
    emit(&json!({ "lemma1": lemma1, "lemma2": lemma2 }))?;
    eprintln!("check-lemmas: {}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn induce(path: &Path, pairs_out: Option<&Path>, samples: usize, seed: u64) -> Result<bool> {
    let space = load_space(path)?;
    let induced = InducedMetric::from_space(space.clone());
    let space_report = space.verify_axioms(samples, seed);
    let induced_report = induced.verify_axioms(samples, seed);

    let data = match space.points() {
        Some(points) => {
            let mut table = Vec::with_capacity(points.len());
            for x in &points {
                let mut row = Vec::with_capacity(points.len());
                for y in &points {
                    row.push(induced.distance(x, y)?);
                }
                table.push(row);
            }
            json!({ "points": points, "d": table })
        }
        None => {
            // d_p(x, y) = scale * |x - y| on the line.
            let w = space.line_weight().expect("line space");
            json!({ "scale": induced.scalarizer().xi(w)? })
        }
    };

    if let Some(out) = pairs_out {
        fs::write(out, serde_json::to_string_pretty(&data)?)
            .with_context(|| format!("writing {}", out.display()))?;
    }

    summarize("cone-metric axioms", &space_report);
    summarize("induced-metric axioms", &induced_report);
    let passed = space_report.passed() && induced_report.passed();
    emit(&json!({
        "induced": data,
        "cone_metric_axioms": space_report,
        "induced_metric_axioms": induced_report,
    }))?;
    eprintln!("induce: {}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn verify(
    space_path: &Path,
    map_path: &Path,
    phi_path: &Path,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let space = load_space(space_path)?;
    let map_spec: MapSpec = read_spec(map_path)?;
    let f = map_spec.build(space.clone())?;
    let phi_spec: PhiSpec = read_spec(phi_path)?;
    let vc = phi_spec.build(space.cone().clone())?;

    let s = Scalarizer::new(space.cone().clone());
    let psi = transfer_psi(&vc, &s)?;
    let m = InducedMetric::new(space, s.clone())?;

    let vector = verify_vector_contraction(&f, &vc, samples, seed)?;
    let scalar = verify_scalar_contraction(&f, &psi, &m, samples, seed)?;
    let implication = theorem21_implication(&f, &vc, &s, samples, seed)?;

    summarize("vector-contraction", &vector);
    summarize("scalar-contraction", &scalar);
    summarize("implication", &implication);
    let passed = vector.passed() && scalar.passed() && implication.passed();
    emit(&json!({
        "vector_contraction": vector,
        "scalar_contraction": scalar,
        "implication": implication,
    }))?;
    eprintln!("verify: {}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn parse_start(space: &ConeMetricSpace, x0: &str) -> Result<Point> {
    if space.is_finite() {
        Ok(Point::label(x0))
    } else {
        let v: f64 = x0
            .parse()
            .with_context(|| format!("x0 must be a number on a line space, got {x0:?}"))?;
        Ok(Point::Real(v))
    }
}

fn solve(space_path: &Path, map_path: &Path, x0: &str, tol: f64, max_iter: usize) -> Result<bool> {
    let space = load_space(space_path)?;
    let map_spec: MapSpec = read_spec(map_path)?;
    let f = map_spec.build(space.clone())?;
    let m = InducedMetric::from_space(space.clone());
    let start = parse_start(&space, x0)?;

    let run = picard_solve(&f, &m, &start, tol, max_iter)?;
    if run.converged {
        let limit = run.fixed_point.as_ref().expect("converged run has a limit");
        eprintln!(
            "solve: converged to {limit} in {} iterations (tol {tol:e})",
            run.iterations
        );
    } else {
        eprintln!(
            "solve: no convergence within {} iterations (tol {tol:e})",
            run.iterations
        );
    }
    let converged = run.converged;
    emit(&serde_json::to_value(&run)?)?;
    Ok(converged)
}

fn check_c(
    space_path: &Path,
    f_path: &Path,
    g_path: &Path,
    phi_path: &Path,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let space = load_space(space_path)?;
    let f = read_spec::<MapSpec>(f_path)?.build(space.clone())?;
    let g = read_spec::<MapSpec>(g_path)?.build(space.clone())?;
    let vc = read_spec::<PhiSpec>(phi_path)?.build(space.cone().clone())?;

    let s = Scalarizer::new(space.cone().clone());
    let psi = transfer_psi(&vc, &s)?;
    let m = InducedMetric::new(space, s.clone())?;
    let pairs = f.sample_pairs(samples, seed);

    let c = check_condition_c(&f, &g, &vc, &pairs)?;
    let c1 = check_condition_c1(&f, &g, &psi, &m, &pairs)?;
    let remark = check_remark23(&f, &g, &vc, &s, &pairs)?;

    // Per-pair witness cases, truncated to keep the document readable.
    const CASE_LIMIT: usize = 200;
    let vector_cases = condition_c_cases(&f, &g, &vc, &pairs)?;
    let scalar_cases = condition_c1_cases(&f, &g, &psi, &m, &pairs)?;
    let cases: Vec<serde_json::Value> = pairs
        .iter()
        .zip(vector_cases.iter().zip(&scalar_cases))
        .take(CASE_LIMIT)
        .map(|((x, y), (vm, sm))| json!({ "x": x, "y": y, "c": vm, "c1": sm }))
        .collect();

    summarize("condition-c", &c);
    summarize("condition-c1", &c1);
    summarize("remark-2.3", &remark);
    let passed = c.passed() && c1.passed() && remark.passed();
    emit(&json!({
        "condition_c": c,
        "condition_c1": c1,
        "remark23": remark,
        "cases": cases,
        "cases_truncated": pairs.len() > CASE_LIMIT,
    }))?;
    eprintln!("check-c: {}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}
