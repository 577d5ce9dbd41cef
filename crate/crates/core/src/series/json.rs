use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GradedSeries, VariableTable};
use crate::error::{Error, Result};
use crate::exact::{serde_rational, Rational};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VarJson {
    pub name: String,
    pub weight: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub d: usize,
    pub e: Vec<u32>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Serialized form of a [`GradedSeries`]; terms sorted by `(d, e)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub trunc_degree: usize,
    pub trunc_weight: u32,
    pub vars: Vec<VarJson>,
    pub terms: Vec<TermJson>,
}

impl GradedSeries {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            trunc_degree: self.trunc_degree,
            trunc_weight: self.trunc_weight,
            vars: self
                .vars
                .names()
                .iter()
                .zip(self.vars.weights())
                .map(|(n, &w)| VarJson {
                    name: n.clone(),
                    weight: w,
                })
                .collect(),
            terms: self
                .terms()
                .map(|(d, e, v)| TermJson {
                    d,
                    e: e.clone(),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("series JSON is always serializable")
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let vars = VariableTable::new(json.vars.iter().map(|v| (v.name.clone(), v.weight)))?;
        let vars = Arc::new(vars);
        for t in &json.terms {
            if t.d > json.trunc_degree || vars.weight_of(&t.e) > json.trunc_weight as u64 {
                return Err(Error::Malformed(format!(
                    "term at d={} lies outside the truncation",
                    t.d
                )));
            }
        }
        Self::from_terms(
            vars,
            json.trunc_degree,
            json.trunc_weight,
            json.terms
                .iter()
                .map(|t| (t.d, t.e.clone(), t.value.clone())),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: SeriesJson = serde_json::from_str(text)?;
        Self::from_json(&json)
    }
}
