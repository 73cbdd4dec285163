//! On-disk function formats: a JSON object `{"weights": [...], "values":
//! [...]}` and a flat little-endian binary array of f64 values (weights
//! implied uniform).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure_space::{MeasureSpace, SampledFunction};

/// JSON form of a function paired with its space. `weights` may be omitted,
/// in which case they are implied uniform.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub values: Vec<f64>,
}

impl FunctionFile {
    pub fn into_parts(self) -> Result<(SampledFunction, Option<MeasureSpace>)> {
        let f = SampledFunction::new(self.values)?;
        let space = match self.weights {
            Some(w) => Some(MeasureSpace::new(w)?),
            None => None,
        };
        if let Some(space) = &space {
            if space.len() != f.len() {
                return Err(Error::Alignment {
                    function_len: f.len(),
                    space_len: space.len(),
                });
            }
        }
        Ok((f, space))
    }
}

/// Parses either the `{"weights", "values"}` object or a bare JSON array.
pub fn function_from_json(text: &str) -> Result<(SampledFunction, Option<MeasureSpace>)> {
    let parse_err = |e: serde_json::Error| Error::Domain(format!("JSON parse failure: {e}"));
    if text.trim_start().starts_with('[') {
        let values: Vec<f64> = serde_json::from_str(text).map_err(parse_err)?;
        return Ok((SampledFunction::new(values)?, None));
    }
    let file: FunctionFile = serde_json::from_str(text).map_err(parse_err)?;
    file.into_parts()
}

/// Flat little-endian f64 values; weights implied uniform.
pub fn function_from_binary(bytes: &[u8]) -> Result<SampledFunction> {
    if bytes.len() % 8 != 0 {
        return Err(Error::Domain(format!(
            "binary function length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    SampledFunction::new(values)
}

pub fn function_to_binary(f: &SampledFunction) -> Vec<u8> {
    f.values().iter().flat_map(|v| v.to_le_bytes()).collect()
}
