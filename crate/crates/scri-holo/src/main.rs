//! Thin command-line frontend: runs configured experiments end to end and
//! persists CSV/JSON reports.
//!
//! Exit codes: 0 all checks passed, 1 a verification criterion failed,
//! 2 configuration or input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use scri_holo::config::ExperimentConfig;
use scri_holo::entropy::{
    anec, deformation_scan, entropy, modular_flow, modular_form, superadditivity_residual,
};
use scri_holo::error::Error;
use scri_holo::geometry::{
    from_null, retarded_time_along_ray, to_compact, to_null, CartesianEvent,
};
use scri_holo::holography::{radiation_field, Quadrature};
use scri_holo::one_particle::{boundary_inner, boundary_norm_sq, momentum_norm_sq};
use scri_holo::stress::assemble_stress_field;
use scri_holo::suite;

#[derive(Parser)]
#[command(
    name = "scri-holo",
    version,
    about = "boundary radiation data and cone entropies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the experiment configuration (JSON, schema scri-holo/1).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for reports.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Override the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Rayon worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary radiation profile of the configured source.
    Transform,
    /// Entropy scan along the configured deformation with QNEC verdict.
    Qnec,
    /// Run the verification battery.
    Suite {
        /// Run a single criterion by name (see `suite` module).
        #[arg(long)]
        criterion: Option<String>,
    },
    /// Superadditivity saturation residuals over random cut pairs.
    Superadd,
    /// Averaged null energy, u-space and spectral routes.
    Anec,
    /// Modular flow checks: group law, support, form-versus-quadrature.
    Flow,
    /// Stress-tensor route to the entropy at finite advanced time.
    Stress,
    /// Coordinate atlas round trips and the boundary limit curve.
    Coords,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
    let mut cfg = ExperimentConfig::from_path(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(&path, text + "\n")?;
    Ok(path)
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Transform => cmd_transform(cli),
        Command::Qnec => cmd_qnec(cli),
        Command::Suite { criterion } => cmd_suite(cli, criterion.as_deref()),
        Command::Superadd => cmd_superadd(cli),
        Command::Anec => cmd_anec(cli),
        Command::Flow => cmd_flow(cli),
        Command::Stress => cmd_stress(cli),
        Command::Coords => cmd_coords(cli),
    }
}

fn cmd_transform(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let (sphere, ugrid) = cfg.grid.resolve(&cfg.source)?;
    let field = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    std::fs::create_dir_all(&cli.out)?;
    field.write_csv(&cli.out.join("transform_field.csv"))?;
    write_json(&cli.out, "transform_field.json", &field.to_descriptor())?;

    let norm = boundary_norm_sq(&field)?;
    let (lo, hi) = cfg.source.support_box();
    let mut summary = BTreeMap::new();
    summary.insert("peak".to_string(), json!(field.peak()));
    summary.insert("norm_sq".to_string(), json!(norm));
    summary.insert("support_box_lo".to_string(), json!(lo));
    summary.insert("support_box_hi".to_string(), json!(hi));
    let mut pass = true;
    if cfg.conformal.is_flat() && cfg.source.all_gaussian() && !cfg.source.terms.is_empty() {
        let momentum = momentum_norm_sq(&cfg.source)?;
        let rel = (norm - momentum).abs() / momentum;
        let ok = rel <= suite::tolerance::NORM_IDENTITY_REL;
        summary.insert("momentum_norm_sq".to_string(), json!(momentum));
        summary.insert("norm_identity_rel".to_string(), json!(rel));
        summary.insert(
            "norm_identity".to_string(),
            json!(if ok { "pass" } else { "fail" }),
        );
        pass &= ok;
    }
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": summary,
    });
    let path = write_json(&cli.out, "transform_summary.json", &out)?;
    println!("transform: wrote {}", path.display());
    Ok(pass)
}

fn cmd_qnec(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let deform_spec = cfg
        .deformation
        .clone()
        .ok_or_else(|| Error::Config("qnec needs a deformation section".into()))?;
    let (sphere, ugrid) = cfg.grid.resolve(&cfg.source)?;
    let field = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    let cut = cfg
        .cut
        .clone()
        .ok_or_else(|| Error::Config("qnec needs a cut section".into()))?
        .build();
    let deform = deform_spec.profile.build();
    let scan = deformation_scan(
        &field,
        &cut,
        &deform,
        deform_spec.t_min,
        deform_spec.t_max,
        deform_spec.steps,
    )?;

    std::fs::create_dir_all(&cli.out)?;
    std::fs::write(cli.out.join("qnec_scan.csv"), scan.to_csv())?;

    let min_s2 = scan.s_second.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_s1 = scan
        .s_prime
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = min_s2 >= 0.0 && max_s1 <= suite::tolerance::SIGN_SLACK;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": {
            "qnec": if pass { "pass" } else { "fail" },
            "min_s_second": min_s2,
            "max_s_prime": max_s1,
        },
    });
    let path = write_json(&cli.out, "qnec_summary.json", &out)?;
    println!(
        "qnec: {} (min S'' = {min_s2:.3e}), wrote {}",
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(pass)
}

fn cmd_suite(cli: &Cli, criterion: Option<&str>) -> Result<bool, Error> {
    let seed = match (&cli.config, cli.seed) {
        (Some(_), _) => load_config(cli)?.seed,
        (None, Some(s)) => s,
        (None, None) => 7,
    };
    if let Some(name) = criterion {
        if !suite::CRITERIA.contains(&name) {
            return Err(Error::Config(format!(
                "unknown criterion '{name}'; known: {}",
                suite::CRITERIA.join(", ")
            )));
        }
    }
    let reports = suite::run_all(seed, criterion);
    let mut all_pass = true;
    for r in &reports {
        println!("{} {}", r.name, if r.pass { "pass" } else { "FAIL" });
        if !r.pass {
            println!("    {}", r.details);
            all_pass = false;
        }
    }
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "seed": seed,
        "criteria": reports,
        "all_pass": all_pass,
    });
    let path = write_json(&cli.out, "suite_report.json", &out)?;
    println!("suite: wrote {}", path.display());
    Ok(all_pass)
}

fn cmd_superadd(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let (sphere, ugrid) = cfg.grid.resolve(&cfg.source)?;
    let field = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5add);
    let mut residuals = Vec::new();
    for _ in 0..10 {
        let mk =
            |rng: &mut rand_chacha::ChaCha8Rng| scri_holo::geometry::CutFunction::HarmonicSum {
                coeffs: (0..9).map(|_| rng.random_range(-0.5..0.5)).collect(),
            };
        let c1 = mk(&mut rng);
        let c2 = mk(&mut rng);
        residuals.push(superadditivity_residual(&field, &c1, &c2)?);
    }
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    let pass = worst <= suite::tolerance::SUPERADD_REL;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": {
            "superadditivity": if pass { "pass" } else { "fail" },
            "residuals": residuals,
            "max_residual": worst,
        },
    });
    let path = write_json(&cli.out, "superadd_report.json", &out)?;
    println!(
        "superadd: {} (max residual {worst:.3e}), wrote {}",
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(pass)
}

fn cmd_anec(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let (sphere, ugrid) = cfg.grid.resolve(&cfg.source)?;
    let field = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    let weight = cfg
        .deformation
        .as_ref()
        .map(|d| d.profile.build())
        .unwrap_or(scri_holo::geometry::CutFunction::Constant(1.0));
    let a = anec(&field, &weight)?;
    let rel = (a.u_route - a.e_route).abs() / a.u_route.abs().max(1e-300);
    let pass = a.u_route >= 0.0 && rel <= 1e-6;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": {
            "anec": if pass { "pass" } else { "fail" },
            "u_route": a.u_route,
            "e_route": a.e_route,
            "route_agreement_rel": rel,
        },
    });
    let path = write_json(&cli.out, "anec_report.json", &out)?;
    println!(
        "anec: {} (value {:.6e}), wrote {}",
        if pass { "pass" } else { "fail" },
        a.value(),
        path.display()
    );
    Ok(pass)
}

fn cmd_flow(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let (sphere, ugrid) = cfg.grid.resolve(&cfg.source)?;
    let field = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    let cut = cfg
        .cut
        .clone()
        .ok_or_else(|| Error::Config("flow needs a cut section".into()))?
        .build();
    let s = cfg.flow.s;
    let peak = field.peak();

    let s_quad = entropy(&field, &cut)?.total;
    let s_form = modular_form(&field, &cut)?;
    let form_rel = (s_form - s_quad).abs() / s_quad.abs().max(1e-300);

    let f1 = modular_flow(&field, &cut, s)?;
    let f2 = modular_flow(&f1, &cut, -s)?;
    let undo_rel = f2
        .samples()
        .iter()
        .zip(field.samples())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / peak;
    let ip0 = boundary_inner(&field, &field)?;
    let ip1 = boundary_inner(&f1, &f1)?;
    let inner_rel = (ip0 - ip1).norm() / ip0.norm();

    let pass = form_rel <= suite::tolerance::MODULAR_FORM_REL
        && undo_rel <= 2.0 * suite::tolerance::INTERP_REL
        && inner_rel <= suite::tolerance::FLOW_INNER_REL;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": {
            "flow": if pass { "pass" } else { "fail" },
            "entropy": s_quad,
            "modular_form": s_form,
            "form_rel": form_rel,
            "flow_undo_rel": undo_rel,
            "inner_invariance_rel": inner_rel,
        },
    });
    let path = write_json(&cli.out, "flow_report.json", &out)?;
    println!(
        "flow: {} (form rel {form_rel:.3e}), wrote {}",
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(pass)
}

fn cmd_stress(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let cut = cfg
        .cut
        .clone()
        .ok_or_else(|| Error::Config("stress needs a cut section".into()))?
        .build();
    let sphere = scri_holo::SphereGrid::new(cfg.stress.n_theta, cfg.stress.n_phi)?;
    let (lo, hi) = cfg.source.u_support();
    let ugrid = scri_holo::UGrid::new(lo - 0.5, hi + 0.5, cfg.stress.n_u)?;
    let quad = Quadrature {
        nodes_per_axis: cfg.stress.nodes_per_axis,
        box_override: None,
    };
    let boundary = radiation_field(
        &cfg.source,
        &cfg.conformal,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )?;
    let report = entropy(&boundary, &cut)?;
    std::fs::create_dir_all(&cli.out)?;
    std::fs::write(cli.out.join("entropy_report.csv"), report.to_csv())?;
    let stress_field = assemble_stress_field(
        &cfg.source,
        &cfg.conformal,
        cfg.stress.v,
        &sphere,
        ugrid,
        &quad,
    )?;
    let value = stress_field.entropy(&cut)?;
    let rel = (value - report.total).abs() / report.total.abs().max(1e-300);
    let density = stress_field.density_identity_residual();
    let pass =
        rel <= suite::tolerance::STRESS_REL && density <= suite::tolerance::DENSITY_IDENTITY_REL;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "entropy_report": report,
        "stress_tensor": {
            "v": cfg.stress.v,
            "value": value,
            "boundary_value": report.total,
            "rel_difference": rel,
            "density_identity_rel": density,
            "verdict": if pass { "pass" } else { "fail" },
        },
    });
    let path = write_json(&cli.out, "stress_report.json", &out)?;
    println!(
        "stress: {} (rel diff {rel:.3e}), wrote {}",
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(pass)
}

fn cmd_coords(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0);
    let mut worst_rt = 0.0f64;
    for _ in 0..10_000 {
        let r = 10f64.powf(rng.random_range(-6.0..6.0));
        let nvec = loop {
            let v = [
                rng.random_range(-1.0..1.0f64),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                break [v[0] / n, v[1] / n, v[2] / n];
            }
        };
        let t = rng.random_range(-1e3..1e3);
        let e = CartesianEvent::new(t, [r * nvec[0], r * nvec[1], r * nvec[2]]);
        let nc = to_null(e).map_err(|e| Error::Config(format!("{e}")))?;
        let back = from_null(nc);
        let scale = 1.0 + t.abs() + r;
        worst_rt = worst_rt.max((back.t - e.t).abs() / scale);
        let cc = to_compact(nc);
        worst_rt = worst_rt.max((cc.big_u.tan() - nc.u).abs() / (1.0 + nc.u.abs()));
    }
    let x = CartesianEvent::new(1.0, [1.0, 0.0, 0.0]);
    let lim = retarded_time_along_ray(x, [0.0, 0.0, 1.0], 1e6);
    let pass = worst_rt <= suite::tolerance::ROUNDTRIP_REL && (lim - 1.0).abs() < 1e-5;
    let out = json!({
        "schema": "scri-holo/1",
        "generated_unix_ms": now_ms(),
        "config": cfg,
        "summary": {
            "coords": if pass { "pass" } else { "fail" },
            "roundtrip_rel": worst_rt,
            "limit_curve_residual": (lim - 1.0).abs(),
        },
    });
    let path = write_json(&cli.out, "coords_report.json", &out)?;
    println!(
        "coords: {} (roundtrip {worst_rt:.3e}), wrote {}",
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(pass)
}

fn now_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}
