//! Resolved run configuration, shared by every subcommand.

use serde::Serialize;

/// Which subcommand is running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Verify,
    Scan,
    Simulate,
    ReportFromData,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Verify => "verify",
            CommandKind::Scan => "scan",
            CommandKind::Simulate => "simulate",
            CommandKind::ReportFromData => "report-from-data",
        }
    }
}

/// Ensemble selection for `scan`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleChoice {
    HaarPure,
    GinibreMixed,
    Both,
}

impl EnsembleChoice {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleChoice::HaarPure => "haar_pure",
            EnsembleChoice::GinibreMixed => "ginibre_mixed",
            EnsembleChoice::Both => "both",
        }
    }
}

/// Initial state for `simulate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    Singlet,
    Random,
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Externally measured inputs for `report-from-data`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DataInputs {
    pub r3_mean: f64,
    pub r3_err: f64,
    pub c3_mean: f64,
    pub c3_err: f64,
}

/// A fully resolved configuration; defaults match a no-argument run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seed: u64,
    pub shots: u64,
    pub flip_probability: f64,
    pub num_states: u64,
    pub ensemble: EnsembleChoice,
    pub initial_state: InitialState,
    /// Optional override of the command's default check tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Significance threshold (in sigma) for flagging an NCR violation.
    pub threshold_sigma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<DataInputs>,
    pub output_format: OutputFormat,
    /// Include a wall-clock timestamp in the report. Off by default so
    /// identical runs produce byte-identical reports.
    pub timestamps: bool,
}

impl RunConfig {
    pub fn defaults(command: CommandKind) -> Self {
        Self {
            command,
            seed: 42,
            shots: 100_000,
            flip_probability: 0.0,
            num_states: 1000,
            ensemble: EnsembleChoice::Both,
            initial_state: InitialState::Singlet,
            tolerance: None,
            threshold_sigma: 5.0,
            data: None,
            output_format: OutputFormat::Json,
            timestamps: false,
        }
    }

    /// Usage-level validation; failures map to exit code 2.
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=0.5).contains(&self.flip_probability) || self.flip_probability.is_nan() {
            return Err(format!(
                "--flip-prob must lie in [0, 0.5], got {}",
                self.flip_probability
            ));
        }
        match self.command {
            CommandKind::Simulate => {
                if self.shots == 0 {
                    return Err("--shots must be at least 1".into());
                }
            }
            CommandKind::Scan => {
                if self.num_states == 0 {
                    return Err("--num-states must be at least 1".into());
                }
            }
            CommandKind::ReportFromData => {
                let data = self
                    .data
                    .ok_or("report-from-data requires --r3/--c3 inputs")?;
                for (name, value) in [("--r3", data.r3_mean), ("--c3", data.c3_mean)] {
                    if !(-1.0..=1.0).contains(&value) || value.is_nan() {
                        return Err(format!("{name} must lie in [-1, 1], got {value}"));
                    }
                }
                for (name, value) in [("--r3-err", data.r3_err), ("--c3-err", data.c3_err)] {
                    if value < 0.0 || value.is_nan() {
                        return Err(format!("{name} must be nonnegative, got {value}"));
                    }
                }
            }
            CommandKind::Verify => {}
        }
        if let Some(tol) = self.tolerance {
            if tol <= 0.0 || tol.is_nan() {
                return Err(format!("--tol must be positive, got {tol}"));
            }
        }
        if self.threshold_sigma < 0.0 || self.threshold_sigma.is_nan() {
            return Err(format!(
                "--threshold-sigma must be nonnegative, got {}",
                self.threshold_sigma
            ));
        }
        Ok(())
    }
}
