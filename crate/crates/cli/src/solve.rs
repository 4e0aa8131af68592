use std::path::Path;

use wiretap_core::{output_mixture, ChannelPair, SolveReport, SymmetricInput};

use crate::args::SolveArgs;
use crate::config;
use crate::format::{num, write_csv};
use crate::manifest::RunManifest;
use crate::{ensure_dir, write_json, CliError, Outcome};

/// Number of `y` samples in `output_pdf.csv`.
pub const PDF_POINTS: usize = 1201;

pub fn run(args: &SolveArgs) -> Result<Outcome, CliError> {
    let ch = args.channel.channel()?;
    if !(args.amplitude > 0.0) || !args.amplitude.is_finite() {
        return Err(CliError::Usage(format!(
            "amplitude must be positive and finite, got {}",
            args.amplitude
        )));
    }
    let resolved = config::resolve(args.tuning.config.as_deref(), &args.tuning.flags())?;
    let out = ensure_dir(&args.out)?;

    let report = wiretap_core::solve(&ch, args.amplitude, &resolved.config, None)?;
    for w in &report.warnings {
        log::warn!("{w}");
    }
    log::info!(
        "A = {}: capacity {:.9} nats, {} mass points, converged = {}",
        args.amplitude,
        report.capacity,
        report.full_support_size,
        report.converged
    );

    write_solution(&out, &report)?;
    write_xi_profile(&out.join("xi_profile.csv"), &report.kkt.profile)?;
    write_pmf(&out.join("input_pmf.csv"), &report.input)?;
    write_output_pdf(
        &out.join("output_pdf.csv"),
        &report.input,
        &ch,
        report.input_variance,
    )?;
    let manifest = RunManifest::new(
        "solve",
        &ch,
        vec![args.amplitude],
        resolved.overrides,
        resolved.config,
    );
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(if report.converged {
        Outcome::Success
    } else {
        Outcome::NotConverged
    })
}

/// `solution.json`: the full report without the Ξ scan, which goes to
/// `xi_profile.csv`.
fn write_solution(dir: &Path, report: &SolveReport) -> Result<(), CliError> {
    let mut slim = report.clone();
    slim.kkt.profile.clear();
    write_json(&dir.join("solution.json"), &slim)
}

pub fn write_xi_profile(path: &Path, profile: &[(f64, f64)]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = profile.iter().map(|&(x, v)| vec![num(x), num(v)]).collect();
    write_csv(path, &["x", "xi_nats"], &rows)
}

pub fn write_pmf(path: &Path, input: &SymmetricInput) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = input
        .full_support()
        .into_iter()
        .map(|(x, p)| vec![num(x), num(p)])
        .collect();
    write_csv(path, &["x", "probability"], &rows)
}

/// Both receivers' output densities on `[-(A + 6σ₂), A + 6σ₂]`, plus the
/// eavesdropper density under a Gaussian input of equal variance.
pub fn write_output_pdf(
    path: &Path,
    input: &SymmetricInput,
    ch: &ChannelPair,
    input_variance: f64,
) -> Result<(), CliError> {
    let legit = output_mixture(input, ch.sigma1())?;
    let eve = output_mixture(input, ch.sigma2())?;
    let var = input_variance + ch.sigma2().powi(2);
    let gauss = |y: f64| (-0.5 * y * y / var).exp() / (2.0 * std::f64::consts::PI * var).sqrt();
    let half = input.amplitude() + 6.0 * ch.sigma2();
    let last = (PDF_POINTS - 1) as f64;
    let rows: Vec<Vec<String>> = (0..PDF_POINTS)
        .map(|k| {
            let y = half * (2.0 * k as f64 - last) / last;
            vec![num(y), num(legit.pdf(y)), num(eve.pdf(y)), num(gauss(y))]
        })
        .collect();
    write_csv(
        path,
        &[
            "y",
            "pdf_legitimate",
            "pdf_eavesdropper",
            "pdf_gaussian_match",
        ],
        &rows,
    )
}
