//! JSON file formats.
//!
//! Scheme configs are tagged by `"scheme"`; omitted optional fields take the
//! library defaults. Words and downloads use canonical integer symbols.
//! Every file written carries `"format": 1`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{HarnessError, FORMAT_VERSION};

fn format_version() -> u32 {
    FORMAT_VERSION
}

/// Trace-scheme configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TsConfigFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<u64>>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<u64>>,
}

/// Folded RS configuration. `alpha` is an exact fraction such as `"3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrsConfigFile {
    #[serde(default = "format_version")]
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<u64>,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub alpha: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum SchemeConfigFile {
    Ts(TsConfigFile),
    Frs(FrsConfigFile),
}

impl SchemeConfigFile {
    pub fn scheme_name(&self) -> &'static str {
        match self {
            SchemeConfigFile::Ts(_) => "ts",
            SchemeConfigFile::Frs(_) => "frs",
        }
    }
}

/// Field description: `{"q": 13, "l": 4, "modulus": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescription {
    pub q: u64,
    #[serde(default = "one")]
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

/// Stored array codeword (or a punctured word of prefixes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub scheme: String,
    pub columns: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DownloadFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub scheme: String,
    pub per_column: Vec<Vec<u64>>,
    pub downloaded: usize,
    pub accessed: usize,
}

/// Message symbols as canonical integers: coefficients `a_0 .. a_{k-1}` of
/// `h` over `GF(q^l)` for the trace scheme, `a_0 .. a_{kl-1}` over `GF(p)`
/// for folded RS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub scheme: String,
    pub message: Vec<u64>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, HarnessError> {
    let text = fs::read_to_string(path)
        .map_err(|e| HarnessError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_json(&text, &path.display().to_string())
}

pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, HarnessError> {
    serde_json::from_str(text).map_err(|e| HarnessError::Json { path: origin.to_string(), message: e.to_string() })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    write_text(path, &to_json(value))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|e| HarnessError::Io { path: path.display().to_string(), message: e.to_string() })
}
