//! Solver configuration from a flat JSON file plus command-line overrides.
//!
//! The file is one JSON object whose keys are the leaf field names of
//! `SolverConfig` (`epsilon`, `n_ba`, `min_dist`, `panels`, ...). Flags given
//! on the command line replace the file's values.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use wiretap_core::solver::GradientCheck;
use wiretap_core::SolverConfig;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overrides {
    epsilon: Option<f64>,
    n_ba: Option<usize>,
    n_ga: Option<usize>,
    backtrack_alpha: Option<f64>,
    backtrack_beta: Option<f64>,
    initial_step: Option<f64>,
    fd_check_tol: Option<f64>,
    precondition: Option<bool>,
    step_growth: Option<f64>,
    min_dist: Option<f64>,
    delta: Option<f64>,
    inner_loops: Option<usize>,
    outer_max: Option<usize>,
    grid_step: Option<f64>,
    panels: Option<usize>,
    order: Option<usize>,
    early_exit: Option<bool>,
    gradient_check: Option<GradientCheck>,
    prune_weight: Option<f64>,
    reduce_weight: Option<f64>,
}

impl Overrides {
    fn apply(self, c: &mut SolverConfig) {
        macro_rules! set {
            ($($field:ident => $($path:ident).+;)*) => {
                $(if let Some(v) = self.$field { c.$($path).+ = v; })*
            };
        }
        set! {
            epsilon => epsilon;
            n_ba => ascent.n_ba;
            n_ga => ascent.n_ga;
            backtrack_alpha => ascent.backtrack_alpha;
            backtrack_beta => ascent.backtrack_beta;
            fd_check_tol => ascent.fd_check_tol;
            precondition => ascent.precondition;
            step_growth => ascent.step_growth;
            min_dist => policy.min_dist;
            delta => policy.delta;
            inner_loops => inner_loops;
            outer_max => outer_max;
            panels => quadrature.panels;
            order => quadrature.order;
            early_exit => early_exit;
            gradient_check => gradient_check;
            prune_weight => prune_weight;
            reduce_weight => reduce_weight;
        }
        if let Some(v) = self.initial_step {
            c.ascent.initial_step = Some(v);
        }
        if let Some(v) = self.grid_step {
            c.grid_step = Some(v);
        }
    }
}

/// Effective configuration and the key-value overrides that produced it.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: SolverConfig,
    pub overrides: BTreeMap<String, Value>,
}

/// Merges the optional config file with command-line values (`None`
/// entries are skipped) and validates the result.
pub fn resolve(file: Option<&Path>, flags: &[(&str, Option<Value>)]) -> Result<Resolved, CliError> {
    let mut overrides = BTreeMap::new();
    if let Some(path) = file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        let Value::Object(map) = value else {
            return Err(CliError::Usage(format!(
                "config {} must be a JSON object",
                path.display()
            )));
        };
        overrides.extend(map);
    }
    for (key, value) in flags {
        if let Some(v) = value {
            overrides.insert((*key).to_string(), v.clone());
        }
    }
    let parsed: Overrides =
        serde_json::from_value(Value::Object(overrides.clone().into_iter().collect()))
            .map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))?;
    let mut config = SolverConfig::default();
    parsed.apply(&mut config);
    config
        .validate()
        .map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))?;
    Ok(Resolved { config, overrides })
}
