//! Method dispatch, run reports and cross-method comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::factor::{factor_with, FactorOptions};
use crate::network::Network;
use crate::oracles::{enum_exact, enumerate_minpaths, inclusion_exclusion_over, monte_carlo};

/// Disagreement with the enumeration value tolerated by [`compare`].
pub const COMPARE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Factor,
    Enum,
    Ie,
    Mc,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Factor, Method::Enum, Method::Ie, Method::Mc];

    pub fn name(self) -> &'static str {
        match self {
            Method::Factor => "factor",
            Method::Enum => "enum",
            Method::Ie => "ie",
            Method::Mc => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected factor, enum, ie or mc)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub factor: FactorOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            samples: 1_000_000,
            factor: FactorOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub method: Method,
    pub reliability: f64,
    pub statistics: BTreeMap<String, f64>,
    pub wall_time_ms: f64,
    /// SHA-256 of the network file bytes, hex encoded.
    pub input_digest: String,
}

pub fn input_digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Runs one method; guard refusals surface as errors.
pub fn run_method(net: &Network, method: Method, config: &RunConfig, digest: &str) -> Result<RunReport> {
    let start = Instant::now();
    let mut statistics = BTreeMap::new();
    let reliability = match method {
        Method::Factor => {
            let out = factor_with(net, &config.factor);
            statistics.insert("recursion_nodes".into(), out.recursion_nodes as f64);
            statistics.insert("leaves_one".into(), out.leaves_one as f64);
            statistics.insert("leaves_zero".into(), out.leaves_zero as f64);
            statistics.insert("reductions_applied".into(), out.reductions_applied as f64);
            out.reliability
        }
        Method::Enum => {
            statistics.insert("states".into(), (net.link_count() as f64).exp2());
            enum_exact(net)?
        }
        Method::Ie => {
            let minpaths = enumerate_minpaths(net);
            statistics.insert("minpaths".into(), minpaths.len() as f64);
            inclusion_exclusion_over(net, &minpaths)?
        }
        Method::Mc => {
            let est = monte_carlo(net, config.samples, config.seed);
            statistics.insert("standard_error".into(), est.standard_error);
            statistics.insert("samples".into(), est.samples as f64);
            statistics.insert("seed".into(), est.seed as f64);
            est.estimate
        }
    };
    Ok(RunReport {
        method,
        reliability,
        statistics,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        input_digest: digest.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    /// Method name, or `report:<method>` for a saved report.
    pub label: String,
    pub value: f64,
    /// `|value - enum|`, when the enumeration value is available.
    pub delta: Option<f64>,
    pub wall_time_ms: f64,
    /// Whether this row takes part in the agreement gate.
    pub gated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub gate_passed: bool,
}

/// Runs `methods` and adds `saved` reports, then checks every non-Monte-Carlo
/// row against enumeration. Without an enumeration value there is no gate.
pub fn compare(
    net: &Network,
    methods: &[Method],
    saved: &[RunReport],
    config: &RunConfig,
    digest: &str,
) -> Result<Comparison> {
    let mut runs = Vec::new();
    for &m in methods {
        runs.push((m.name().to_string(), run_method(net, m, config, digest)?));
    }
    for r in saved {
        runs.push((format!("report:{}", r.method), r.clone()));
    }
    let reference = runs
        .iter()
        .find(|(_, r)| r.method == Method::Enum)
        .map(|(_, r)| r.reliability);

    let mut gate_passed = true;
    let rows = runs
        .into_iter()
        .map(|(label, r)| {
            let delta = reference.map(|e| (r.reliability - e).abs());
            let gated = r.method != Method::Mc && delta.is_some();
            // NaN deltas fail the gate
            if gated && !delta.is_some_and(|d| d <= COMPARE_TOLERANCE) {
                gate_passed = false;
            }
            ComparisonRow {
                label,
                value: r.reliability,
                delta,
                wall_time_ms: r.wall_time_ms,
                gated,
            }
        })
        .collect();
    Ok(Comparison { rows, gate_passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, series};

    #[test]
    fn digest_is_stable() {
        assert_eq!(input_digest(b"abc"), input_digest(b"abc"));
        assert_eq!(
            input_digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn methods_parse() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("sdp".parse::<Method>().is_err());
    }

    #[test]
    fn figure1_all_methods_agree() {
        let cmp = compare(
            &figure1(0.5, 6),
            &Method::ALL,
            &[],
            &RunConfig {
                samples: 20_000,
                ..Default::default()
            },
            "x",
        )
        .unwrap();
        assert!(cmp.gate_passed);
        assert_eq!(cmp.rows.len(), 4);
        assert!(!cmp.rows[3].gated);
    }

    #[test]
    fn corrupted_report_fails_gate() {
        let net = figure1(0.5, 6);
        let mut bad = run_method(&net, Method::Factor, &RunConfig::default(), "x").unwrap();
        bad.reliability += 1e-6;
        let cmp = compare(&net, &[Method::Enum], &[bad], &RunConfig::default(), "x").unwrap();
        assert!(!cmp.gate_passed);
    }

    #[test]
    fn no_enum_no_gate() {
        let net = series(&[0.9; 30], 30);
        let cmp = compare(
            &net,
            &[Method::Factor, Method::Mc],
            &[],
            &RunConfig {
                samples: 1000,
                ..Default::default()
            },
            "x",
        )
        .unwrap();
        assert!(cmp.gate_passed);
        assert!(cmp.rows.iter().all(|r| r.delta.is_none()));
        assert!(run_method(&net, Method::Enum, &RunConfig::default(), "x")
            .unwrap_err()
            .is_guard_refusal());
    }
}
