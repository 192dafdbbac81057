use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = concat!("tcl ", env!("CARGO_PKG_VERSION"));

/// The document every subcommand emits.
///
/// `parameters` echoes every resolved input, seed included, so a run can be
/// repeated from the report alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub outputs: Value,
    pub tool_version: String,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, outputs: Value) -> Self {
        RunReport {
            command: command.to_owned(),
            parameters,
            outputs,
            tool_version: TOOL_VERSION.to_owned(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports are plain data");
        text.push('\n');
        text
    }
}
