use serde::Serialize;
use serde_json::json;
use wiretap_core::kkt::validate_with;
use wiretap_core::{KktReport, SymmetricInput};

use crate::args::KktArgs;
use crate::config;
use crate::format::read_columns;
use crate::{ensure_dir, write_json, CliError, Outcome};

/// Mirror pairs may differ by this much in location and probability.
pub const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Serialize)]
struct KktFile<'a> {
    sigma1: f64,
    sigma2: f64,
    amplitude: f64,
    epsilon: f64,
    grid_step: f64,
    support_size: usize,
    report: &'a KktReport,
}

pub fn load_pmf(path: &std::path::Path) -> Result<SymmetricInput, CliError> {
    let cols = read_columns(path, &["x", "probability"])?;
    let pairs: Vec<(f64, f64)> = cols[0]
        .iter()
        .copied()
        .zip(cols[1].iter().copied())
        .collect();
    SymmetricInput::from_full_support(&pairs, SYMMETRY_TOL)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn run(args: &KktArgs) -> Result<Outcome, CliError> {
    let ch = args.channel.channel()?;
    let flags = [
        ("epsilon", args.epsilon.map(|e| json!(e))),
        ("grid_step", args.grid_step.map(|h| json!(h))),
    ];
    let resolved = config::resolve(args.config.as_deref(), &flags)?;
    let input = load_pmf(&args.pmf)?;
    let cfg = &resolved.config;
    let grid_step = cfg.grid_step_for(&ch, input.amplitude());

    let report = validate_with(&input, &ch, cfg.epsilon, grid_step, &cfg.quadrature)?;
    log::info!(
        "{}: {} (profile excess {:.3e}, {} support violations)",
        args.pmf.display(),
        if report.valid { "valid" } else { "invalid" },
        report.max_profile_violation,
        report.support_violations.len()
    );

    let out = ensure_dir(&args.out)?;
    let file = KktFile {
        sigma1: ch.sigma1(),
        sigma2: ch.sigma2(),
        amplitude: input.amplitude(),
        epsilon: cfg.epsilon,
        grid_step,
        support_size: input.full_support_size(),
        report: &report,
    };
    write_json(&out.join("kkt.json"), &file)?;
    Ok(if report.valid {
        Outcome::Success
    } else {
        Outcome::KktInvalid
    })
}
