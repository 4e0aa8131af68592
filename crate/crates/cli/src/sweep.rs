use wiretap_core::SolveReport;

use crate::args::SweepArgs;
use crate::config;
use crate::format::{num, write_csv};
use crate::manifest::RunManifest;
use crate::{ensure_dir, write_json, CliError, Outcome};

pub const SWEEP_HEADER: [&str; 9] = [
    "A",
    "capacity_nats",
    "mi_legit",
    "mi_eve",
    "gaussian_mi_eve",
    "support_size",
    "card_lower_bound",
    "converged",
    "near_transition",
];

/// `from, from + step, …` up to `to` inclusive. Values are rounded to ten
/// decimals so that grids read back from CSV match exactly.
pub fn amplitude_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if ![from, to, step].iter().all(|v| v.is_finite()) {
        return Err(CliError::Usage("sweep bounds must be finite".into()));
    }
    if !(from > 0.0) || !(step > 0.0) || to < from {
        return Err(CliError::Usage(format!(
            "need 0 < a-from <= a-to and a-step > 0, got {from}, {to}, {step}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::Usage(format!(
            "sweep of {count} amplitudes is too long"
        )));
    }
    Ok((0..count)
        .map(|k| {
            let a = from + k as f64 * step;
            format!("{a:.10}").parse().unwrap_or(a)
        })
        .collect())
}

pub fn run(args: &SweepArgs) -> Result<Outcome, CliError> {
    let ch = args.channel.channel()?;
    let grid = amplitude_grid(args.a_from, args.a_to, args.a_step)?;
    let resolved = config::resolve(args.tuning.config.as_deref(), &args.tuning.flags())?;
    let out = ensure_dir(&args.out)?;

    let results = wiretap_core::sweep(&ch, &grid, &resolved.config)?;

    let mut rows = Vec::with_capacity(grid.len());
    let mut support = Vec::new();
    let mut gaps = Vec::new();
    let mut failed = 0;
    let mut not_converged = 0;
    for (&a, result) in grid.iter().zip(&results) {
        match result {
            Ok(rep) => {
                log::info!(
                    "A = {a}: capacity {:.9}, {} points{}",
                    rep.capacity,
                    rep.full_support_size,
                    if rep.converged {
                        ""
                    } else {
                        " (not converged)"
                    }
                );
                if !rep.converged {
                    not_converged += 1;
                }
                rows.push(sweep_row(a, rep));
                for (x, w) in rep.input.points().iter().zip(rep.input.weights()) {
                    support.push(vec![num(a), num(*x), num(*w)]);
                }
                for (k, g) in rep.gaps.iter().enumerate() {
                    gaps.push(vec![num(a), (k + 1).to_string(), num(*g)]);
                }
            }
            Err(e) => {
                log::error!("A = {a}: {e}");
                failed += 1;
                let mut row = vec![num(a)];
                row.extend(std::iter::repeat_n("nan".to_string(), 6));
                row.extend(["false".to_string(), "false".to_string()]);
                rows.push(row);
            }
        }
    }
    write_csv(&out.join("sweep.csv"), &SWEEP_HEADER, &rows)?;
    write_csv(
        &out.join("support.csv"),
        &["A", "half_point", "weight"],
        &support,
    )?;
    write_csv(
        &out.join("gaps.csv"),
        &["A", "gap_rank", "gap_value"],
        &gaps,
    )?;
    let manifest = RunManifest::new("sweep", &ch, grid, resolved.overrides, resolved.config);
    write_json(&out.join("manifest.json"), &manifest)?;

    if failed > 0 {
        return Err(CliError::Data(format!(
            "{failed} of {} solves failed; see the log above",
            results.len()
        )));
    }
    Ok(if not_converged > 0 {
        Outcome::NotConverged
    } else {
        Outcome::Success
    })
}

fn sweep_row(a: f64, rep: &SolveReport) -> Vec<String> {
    vec![
        num(a),
        num(rep.capacity),
        num(rep.mi_legit),
        num(rep.mi_eve),
        num(rep.gaussian_mi_eve),
        rep.full_support_size.to_string(),
        num(rep.card_lower_bound),
        rep.converged.to_string(),
        rep.near_transition.to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive_and_clean() {
        let g = amplitude_grid(0.25, 1.0, 0.05).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g[3], 0.4);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(amplitude_grid(1.0, 1.0, 0.5).unwrap(), vec![1.0]);
    }

    #[test]
    fn bad_grids_are_usage_errors() {
        for (f, t, s) in [
            (0.0, 1.0, 0.1),
            (1.0, 0.5, 0.1),
            (0.5, 1.0, 0.0),
            (0.5, f64::NAN, 0.1),
        ] {
            assert!(matches!(amplitude_grid(f, t, s), Err(CliError::Usage(_))));
        }
    }
}
