//! The batch run manifest: a TOML file naming the instance, its parameters,
//! the operation to run, and where the report goes. Manifests round-trip
//! losslessly through the config format.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    /// rational | numberfield | lamplighter
    pub instance: String,
    /// Reduction coefficients of the monic minimal polynomial (numberfield).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<i64>>,
    /// Lamp value modulus (lamplighter).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    /// audit | audit-sp | audit-su | audit-pn | audit-pnh | conditions |
    /// duality | hecke | repr
    pub operation: String,
    #[serde(default)]
    pub seed: u64,
    /// Report path; stdout when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunManifest {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serialization cannot fail")
    }
}
