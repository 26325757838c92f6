//! The JSON document every command emits: a provenance header and a payload.
//! Other formats are rendered from a document parsed back out of that JSON.

use serde::{Deserialize, Serialize};
use whcalc_core::ahss::ChartDocument;
use whcalc_core::steenrod::GradedDims;
use whcalc_core::torsion::TorsionProfile;
use whcalc_core::whcohomology::{CohomologyReport, Piece};

use crate::error::CliError;

pub const TOOL: &str = "whcalc";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    /// Canonical form of the command that produced the payload.
    pub command: String,
    pub p: u64,
    pub assumptions: Vec<String>,
}

impl Header {
    pub fn new(command: String, p: u64, assumptions: Vec<String>) -> Self {
        Header {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            p,
            assumptions,
        }
    }
}

/// A subset of the cohomology pieces and the sum of their dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSelection {
    pub p: u64,
    pub max_degree: i64,
    pub piece: String,
    pub pieces: Vec<Piece>,
    pub dims: GradedDims,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    TorsionProfile(TorsionProfile),
    AhssChart(ChartDocument),
    Cohomology(CohomologyReport),
    CohomologyPieces(PieceSelection),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub header: Header,
    pub payload: Payload,
}

impl Document {
    /// Pretty JSON with a trailing newline. Field order is fixed by the
    /// types and maps are ordered, so the output is byte-stable.
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(s)?)
    }
}
