use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use wiretap_core::{ChannelPair, SolverConfig};

/// Record of one invocation, written next to its results.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub sigma1: f64,
    pub sigma2: f64,
    pub amplitudes: Vec<f64>,
    /// Settings taken from the config file and command line.
    pub overrides: BTreeMap<String, Value>,
    /// The configuration actually used.
    pub config: SolverConfig,
    /// Results depend only on the fields above; no randomness is involved.
    pub seed_free: bool,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(
        command: &'static str,
        ch: &ChannelPair,
        amplitudes: Vec<f64>,
        overrides: BTreeMap<String, Value>,
        config: SolverConfig,
    ) -> Self {
        RunManifest {
            command,
            sigma1: ch.sigma1(),
            sigma2: ch.sigma2(),
            amplitudes,
            overrides,
            config,
            seed_free: true,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}
