use std::collections::BTreeMap;
use std::path::Path;

use crate::args::PlotArgs;
use crate::format::read_columns;
use crate::svg::{Chart, Series, Style};
use crate::{ensure_dir, CliError, Outcome};

/// Gap ranks drawn in `gaps.svg`.
const MAX_GAP_RANKS: usize = 6;

pub fn run(args: &PlotArgs) -> Result<Outcome, CliError> {
    let sweep = args.input.join("sweep.csv");
    let pdf = args.input.join("output_pdf.csv");
    if !sweep.exists() && !pdf.exists() {
        return Err(CliError::Usage(format!(
            "missing input file {} (or {})",
            sweep.display(),
            pdf.display()
        )));
    }
    let mut charts = Vec::new();
    if sweep.exists() {
        charts.extend(sweep_charts(&args.input)?);
    }
    if pdf.exists() {
        charts.push(("output_pdf.svg", pdf_chart(&args.input)?));
    }
    let out = ensure_dir(&args.out)?;
    for (name, chart) in charts {
        let path = out.join(name);
        std::fs::write(&path, chart.render()).map_err(|e| CliError::io(&path, e))?;
        log::info!("wrote {}", path.display());
    }
    Ok(Outcome::Success)
}

fn zip(xs: &[f64], ys: &[f64]) -> Vec<(f64, f64)> {
    xs.iter().copied().zip(ys.iter().copied()).collect()
}

pub fn sweep_charts(dir: &Path) -> Result<Vec<(&'static str, Chart)>, CliError> {
    let sweep_path = dir.join("sweep.csv");
    let s = read_columns(
        &sweep_path,
        &[
            "A",
            "capacity_nats",
            "mi_legit",
            "mi_eve",
            "gaussian_mi_eve",
            "support_size",
            "card_lower_bound",
        ],
    )?;
    if s[0].is_empty() {
        return Err(CliError::Usage(format!(
            "{} has no data rows",
            sweep_path.display()
        )));
    }
    let sup = read_columns(&dir.join("support.csv"), &["A", "half_point", "weight"])?;
    let gaps = read_columns(&dir.join("gaps.csv"), &["A", "gap_rank", "gap_value"])?;
    let a = &s[0];

    let support = Chart::new("Support of the optimal input", "A", "half-point x")
        .with(Series::new("x", zip(&sup[0], &sup[1]), Style::Markers));

    let normalized: Vec<(f64, f64)> = sup[0]
        .iter()
        .zip(&sup[1])
        .map(|(&a, &x)| (a, x / a))
        .collect();
    let mut norm_chart = Chart::new("Normalized support", "A", "x / A").with(Series::new(
        "x / A",
        normalized,
        Style::Markers,
    ));
    norm_chart.y_range = Some((0.0, 1.05));

    let size = Chart::new("Support size", "A", "mass points")
        .with(Series::new("support size", zip(a, &s[5]), Style::Steps))
        .with(Series::new("lower bound", zip(a, &s[6]), Style::Dashed));

    let mut by_rank: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for ((&a, &rank), &g) in gaps[0].iter().zip(&gaps[1]).zip(&gaps[2]) {
        let rank = rank as usize;
        if (1..=MAX_GAP_RANKS).contains(&rank) {
            by_rank.entry(rank).or_default().push((a, g));
        }
    }
    let mut gap_chart = Chart::new("Gaps between adjacent support points", "A", "gap");
    for (rank, pts) in by_rank {
        gap_chart = gap_chart.with(Series::new(format!("gap {rank}"), pts, Style::Markers));
    }

    let capacity = Chart::new("Secrecy capacity", "A", "nats").with(Series::new(
        "capacity",
        zip(a, &s[1]),
        Style::Line,
    ));

    let mi = Chart::new("Mutual information", "A", "nats")
        .with(Series::new("I(X;Y1)", zip(a, &s[2]), Style::Line))
        .with(Series::new("I(X;Y2)", zip(a, &s[3]), Style::Line))
        .with(Series::new(
            "Gaussian I(X;Y2)",
            zip(a, &s[4]),
            Style::Dashed,
        ));

    let span = (a[0], a[a.len() - 1]);
    let mut charts = vec![
        ("support_vs_amplitude.svg", support),
        ("normalized_support.svg", norm_chart),
        ("support_size.svg", size),
        ("gaps.svg", gap_chart),
        ("capacity.svg", capacity),
        ("mutual_information.svg", mi),
    ];
    if span.1 > span.0 {
        for (_, c) in &mut charts {
            c.x_range = Some(span);
        }
    }
    Ok(charts)
}

/// Output densities with the input pmf as stems, on
/// `[-(A + 3σ₂), A + 3σ₂]`.
pub fn pdf_chart(dir: &Path) -> Result<Chart, CliError> {
    let pdf = read_columns(
        &dir.join("output_pdf.csv"),
        &[
            "y",
            "pdf_legitimate",
            "pdf_eavesdropper",
            "pdf_gaussian_match",
        ],
    )?;
    let pmf = read_columns(&dir.join("input_pmf.csv"), &["x", "probability"])?;
    let sol_path = dir.join("solution.json");
    let text = std::fs::read_to_string(&sol_path)
        .map_err(|_| CliError::Usage(format!("missing input file {}", sol_path.display())))?;
    let sol: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::io(&sol_path, e))?;
    let field = |k: &str| {
        sol[k].as_f64().ok_or_else(|| {
            CliError::Data(format!("{}: missing numeric field {k}", sol_path.display()))
        })
    };
    let half = field("amplitude")? + 3.0 * field("sigma2")?;

    let mut chart = Chart::new(
        "Output densities and input pmf",
        "y",
        "density / probability",
    )
    .with(Series::new(
        "legitimate",
        zip(&pdf[0], &pdf[1]),
        Style::Line,
    ))
    .with(Series::new(
        "eavesdropper",
        zip(&pdf[0], &pdf[2]),
        Style::Line,
    ))
    .with(Series::new(
        "Gaussian match",
        zip(&pdf[0], &pdf[3]),
        Style::Dashed,
    ))
    .with(Series::new(
        "input pmf",
        zip(&pmf[0], &pmf[1]),
        Style::Stems,
    ));
    chart.x_range = Some((-half, half));
    Ok(chart)
}
