//! Algebra JSON ingestion.

use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::algebra::{validate_algebra, FiniteAlgebra, RawAlgebra};
use crate::error::{Error, Result};

/// Deserializes any JSON document, reporting the error position.
pub fn parse_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses and validates one algebra document.
pub fn parse_algebra_str(text: &str) -> Result<FiniteAlgebra> {
    validate_algebra(parse_json_str::<RawAlgebra>(text)?)
}

pub fn parse_algebra_reader(mut reader: impl Read) -> Result<FiniteAlgebra> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_algebra_str(&text)
}

pub fn parse_algebra_file(path: &Path) -> Result<FiniteAlgebra> {
    parse_algebra_str(&std::fs::read_to_string(path)?)
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(a).expect("algebra serializes")
}
