use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fparith::TripleParams;
use crate::numfield::CoeffMatrix;

/// The only seed-data schema version this crate reads.
pub const SCHEMA_VERSION: u32 = 1;

/// Exporter output: fundamental `S`-unit systems of `Q(ζ_p)` and `K` for
/// `S` = primes above `ℓ₀`, with Galois and inclusion matrices modulo `p`.
///
/// Matrices are row-major; row `i` lists the exponents of the image of basis
/// element `i` in the target basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedData {
    pub schema_version: u32,
    pub params: TripleParams,
    pub basis_small: Vec<CoeffMatrix>,
    pub basis_big: Vec<CoeffMatrix>,
    pub sigma_matrix: Vec<Vec<u64>>,
    pub delta_matrix: Vec<Vec<u64>>,
    pub inclusion_matrix: Vec<Vec<u64>>,
    pub class_number_coprimality_flag: bool,
}

impl SeedData {
    pub fn from_json(text: &str) -> Result<SeedData> {
        let data: SeedData =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if data.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                data.schema_version
            )));
        }
        Ok(data)
    }

    pub fn load(path: &Path) -> Result<SeedData> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        SeedData::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_fields_and_versions() {
        let ok = r#"{"schema_version":1,"params":{"p":5,"ell0":11,"ell1":23},
            "basis_small":[],"basis_big":[],"sigma_matrix":[],"delta_matrix":[],
            "inclusion_matrix":[],"class_number_coprimality_flag":true}"#;
        assert!(SeedData::from_json(ok).is_ok());
        let extra = ok.replace("\"class_number", "\"junk\":1,\"class_number");
        assert!(matches!(SeedData::from_json(&extra), Err(Error::Schema(_))));
        let v2 = ok.replace("\"schema_version\":1", "\"schema_version\":2");
        assert!(matches!(SeedData::from_json(&v2), Err(Error::Schema(_))));
        let missing = ok.replace("\"schema_version\":1,", "");
        assert!(SeedData::from_json(&missing).is_err());
    }
}
