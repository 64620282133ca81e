//! Machine-readable result records (`loopcard-report/1`).

use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::rational::ExactRational;

pub const REPORT_SCHEMA: &str = "loopcard-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    EnCardinality,
    MoravaEuler,
    HomotopyCardinality,
    LoopSpace,
}

/// A number in a report: a JSON integer when integral, else `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportValue(pub ExactRational);

impl Serialize for ReportValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
            n.serialize(serializer)
        } else {
            serializer.collect_str(&self.0)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub quantity: Quantity,
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub value: ReportValue,
    pub method: String,
    #[serde(rename = "within_paper_hypothesis")]
    pub p_space_hypothesis: bool,
    /// For `loop_space` records, the looped space itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub looped: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub results: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(results: Vec<Record>) -> Report {
        Report {
            schema: REPORT_SCHEMA,
            results,
            elapsed_ms: None,
        }
    }
}
