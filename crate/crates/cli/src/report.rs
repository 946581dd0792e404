//! Machine-readable run reports: one JSON document or CSV table per run.
//!
//! Reports are deterministic for a fixed seed and configuration; the
//! optional timestamp is off by default so repeated runs serialize
//! byte-identically. The JSON layout is pinned by
//! `schema/run_report.schema.json` at the repository root.

use serde::Serialize;

use ctxlab_core::measurement_sim::{EstimateReport, GammaEstimate};
use ctxlab_core::pm_square::{Line, PeresMerminSquare};
use ctxlab_core::states::RNG_ALGORITHM;

use crate::config::RunConfig;

/// Version of the report layout; bump on breaking changes.
pub const SCHEMA_VERSION: u32 = 1;

/// One verified quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub deviation: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        deviation: f64,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            expected: expected.into(),
            observed: observed.into(),
            deviation,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

/// Sign conventions spelled out so external consumers can audit results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conventions {
    pub basis: &'static str,
    pub pauli_x: &'static str,
    pub pauli_y: &'static str,
    pub pauli_z: &'static str,
    /// Cell layout, rows top to bottom; "(x)" is the tensor product.
    pub square: [[String; 3]; 3],
    /// Operator sign of each line product.
    pub line_signs: Vec<LineSign>,
    pub rng: &'static str,
    pub seed_derivation: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineSign {
    pub line: &'static str,
    pub sign: i8,
}

impl Conventions {
    pub fn current() -> Self {
        let square = PeresMerminSquare::canonical();
        let cell = |r: u8, c: u8| {
            square
                .cell(ctxlab_core::SquarePosition::new(r, c).expect("in range"))
                .to_string()
        };
        Self {
            basis: "|00>,|01>,|10>,|11> with qubit 1 as the left (outer) tensor factor",
            pauli_x: "[[0,1],[1,0]]",
            pauli_y: "[[0,-i],[i,0]]",
            pauli_z: "[[1,0],[0,-1]]",
            square: [
                [cell(1, 1), cell(1, 2), cell(1, 3)],
                [cell(2, 1), cell(2, 2), cell(2, 3)],
                [cell(3, 1), cell(3, 2), cell(3, 3)],
            ],
            line_signs: Line::ALL
                .iter()
                .map(|&l| LineSign {
                    line: l.name(),
                    sign: l.expected_sign(),
                })
                .collect(),
            rng: RNG_ALGORITHM,
            seed_derivation: "stream i of base seed s uses splitmix64(s XOR i)",
        }
    }
}

/// Per-setup estimates plus the combined gamma witness, attached to
/// `simulate` reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResults {
    pub r3: EstimateReport,
    pub c3: EstimateReport,
    pub gamma: f64,
    pub sigma: f64,
    /// (gamma - 1) / sigma; absent when sigma is exactly zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub significance: Option<f64>,
    pub violation: bool,
}

impl SimulationResults {
    pub fn from_estimates(
        r3: EstimateReport,
        c3: EstimateReport,
        gamma: GammaEstimate,
        threshold_sigma: f64,
    ) -> Self {
        let significance = if gamma.sigma > 0.0 {
            Some((gamma.gamma - 1.0) / gamma.sigma)
        } else {
            None
        };
        let violation = gamma.gamma - 1.0 > threshold_sigma * gamma.sigma;
        Self {
            r3,
            c3,
            gamma: gamma.gamma,
            sigma: gamma.sigma,
            significance,
            violation,
        }
    }
}

/// Gamma evaluated from externally supplied data, attached to
/// `report-from-data` reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataEvaluation {
    pub gamma: f64,
    pub sigma: f64,
    pub ncr_bound: f64,
    pub qm_prediction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub significance: Option<f64>,
    pub violation: bool,
}

/// The whole run: config echo, conventions, checks, and overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub config: RunConfig,
    pub conventions: Conventions,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationResults>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data_evaluation: Option<DataEvaluation>,
    /// Unix epoch seconds; present only when timestamps were requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix_s: Option<u64>,
}

impl RunReport {
    pub fn new(config: RunConfig, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        let timestamp_unix_s = config.timestamps.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Self {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo {
                name: "ctxlab",
                version: env!("CARGO_PKG_VERSION"),
            },
            command: config.command.name(),
            config,
            conventions: Conventions::current(),
            checks,
            passed,
            simulation: None,
            data_evaluation: None,
            timestamp_unix_s,
        }
    }

    pub fn with_simulation(mut self, results: SimulationResults) -> Self {
        self.simulation = Some(results);
        self
    }

    pub fn with_data_evaluation(mut self, evaluation: DataEvaluation) -> Self {
        self.data_evaluation = Some(evaluation);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Fixed columns: name, expected, observed, deviation, pass; one check
    /// per line, RFC 4180 quoting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,expected,observed,deviation,pass\n");
        for check in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&check.name),
                csv_field(&check.expected),
                csv_field(&check.observed),
                check.deviation,
                check.pass
            ));
        }
        out
    }

    pub fn render(&self) -> String {
        match self.config.output_format {
            crate::config::OutputFormat::Json => self.to_json(),
            crate::config::OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
