use std::process::ExitCode;

use parity_core::io::write_instance;
use parity_core::{Instance, SolverPath};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Feasible,
    Infeasible,
    Pass,
    Fail,
}

impl Decision {
    pub fn from_feasible(feasible: bool) -> Self {
        if feasible {
            Decision::Feasible
        } else {
            Decision::Infeasible
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Decision::Feasible | Decision::Pass => ExitCode::SUCCESS,
            Decision::Infeasible | Decision::Fail => ExitCode::from(1),
        }
    }
}

/// One line of machine-readable output per run.
#[derive(Debug, Serialize)]
pub struct RunReport {
    /// SHA-256 of the canonical instance JSON.
    pub digest: String,
    pub mode: String,
    pub decision: Decision,
    pub happy_set_size: Option<usize>,
    pub wall_ns: u64,
    pub solver_path: Option<SolverPath>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(write_instance(inst).as_bytes()))
}
