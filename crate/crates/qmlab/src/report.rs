//! Machine-readable check reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::grid::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One verification record: a stable check id, the property it certifies,
/// a status, the numbers behind the verdict, and an optional witness.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub property: String,
    pub status: Status,
    pub values: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDump>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, property: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            property: property.into(),
            status: Status::Pass,
            values: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn passing(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn value(mut self, key: impl Into<String>, value: impl Into<serde_json::Value>) -> Self {
        self.values.insert(key.into(), value.into());
        self
    }

    pub fn witness(mut self, witness: WitnessDump) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Serialized images attached to a failing or exemplifying check.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessDump {
    pub masks: BTreeMap<String, String>,
}

impl WitnessDump {
    pub fn new() -> Self {
        WitnessDump {
            masks: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: impl Into<String>, image: &Image) -> Self {
        self.masks.insert(name.into(), image.to_mask());
        self
    }
}

impl Default for WitnessDump {
    fn default() -> Self {
        WitnessDump::new()
    }
}
