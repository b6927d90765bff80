//! Published reference values bundled with the crate (`data/reference_values.json`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Deserialize;

const RAW: &str = include_str!("../data/reference_values.json");

#[derive(Clone, Debug, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub orbits: OrbitRef,
    pub q9: Q9Ref,
    pub q27: Vec<Q27Ref>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OrbitRef {
    pub q9: Vec<String>,
    pub q27: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Q9Ref {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "A0", with = "crate::bigjson::string")]
    pub a0: BigInt,
    pub alpha: String,
    pub t: String,
    pub beta: String,
    #[serde(rename = "B0", with = "crate::bigjson::string")]
    pub b0: BigInt,
    #[serde(rename = "B1", with = "crate::bigjson::string")]
    pub b1: BigInt,
    #[serde(with = "crate::bigjson::string")]
    pub b_step: BigInt,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Q27Ref {
    pub case: String,
    #[serde(rename = "G")]
    pub g: String,
    pub t: String,
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub beta: Option<String>,
    #[serde(rename = "B0", with = "crate::bigjson::string")]
    pub b0: BigInt,
    #[serde(rename = "B1", with = "crate::bigjson::string")]
    pub b1: BigInt,
    #[serde(with = "crate::bigjson::string")]
    pub alpha_at_one: BigInt,
}

pub fn reference_data() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(RAW).expect("bundled reference data is valid JSON"))
}

impl ReferenceData {
    pub fn q27_case(&self, label: &str) -> Option<&Q27Ref> {
        self.q27.iter().find(|c| c.case == label)
    }
}
