//! JSONL instance ingestion.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::Error;
use crate::harness::HarnessError;
use crate::instance::Instance;

/// Reads one instance per non-blank line, validating every structural
/// invariant. Parse failures carry the 1-based line number; schema failures
/// also name the offending field.
pub fn read_instances<R: BufRead>(reader: R) -> Result<Vec<Instance>, HarnessError> {
    let mut instances = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let instance: Instance =
            serde_json::from_str(&line).map_err(|e| HarnessError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        instance.validate().map_err(|e| match e {
            Error::InvalidField { field, detail } => HarnessError::Schema {
                line: line_no,
                field: field.to_string(),
                message: detail,
            },
            other => HarnessError::Parse {
                line: line_no,
                message: other.to_string(),
            },
        })?;
        instances.push(instance);
    }
    Ok(instances)
}

/// Loads instances from a JSONL file.
pub fn load_instances(path: &Path) -> Result<Vec<Instance>, HarnessError> {
    let file = File::open(path)?;
    read_instances(BufReader::new(file))
}
