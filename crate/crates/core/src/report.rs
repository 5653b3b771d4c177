//! Line-delimited JSON reports that embed the job that produced them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "rq-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to rerun a CLI invocation. Computations are deterministic, so
/// rerunning a config reproduces its report byte for byte.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub subcommand: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec_v: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agile: Option<String>,
}

/// One report line: schema tag, artifact version, the job, and one result object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub schema: String,
    pub version: String,
    pub config: JobConfig,
    pub result: Value,
}

impl ReportLine {
    pub fn new(config: &JobConfig, result: Value) -> ReportLine {
        ReportLine { schema: SCHEMA.into(), version: VERSION.into(), config: config.clone(), result }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report values serialise")
    }
}

/// Parses line-delimited report text.
pub fn parse_report(text: &str) -> Result<Vec<ReportLine>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let line: ReportLine = serde_json::from_str(l).map_err(|e| Error::Parse(format!("report line: {e}")))?;
            if line.schema != SCHEMA {
                return Err(Error::Parse(format!("unknown schema {:?}", line.schema)));
            }
            Ok(line)
        })
        .collect()
}
