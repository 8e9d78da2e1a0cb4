//! JSON interchange. Integers travel as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::data::{AlgebraData, AlgebraParts, Element, Parity, Provenance};
use crate::error::{Error, Result};
use crate::linalg::BaseRing;

pub const PATH_CONVENTION: &str =
    "functional order: q*p means p then q; a_{k,j} is the arrow from vertex j to vertex k";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub base: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub parities: Vec<u8>,
    pub unit: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("'{s}' is not a decimal integer")))
}

pub fn parse_vec(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter().map(|s| parse_int(s)).collect()
}

pub fn format_vec(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn element_from_strings(v: &[String]) -> Result<Element> {
    parse_vec(v).map(Element::new)
}

impl AlgebraData {
    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            base: self.base().to_string(),
            rank: self.rank(),
            labels: self.labels().to_vec(),
            degrees: self.degrees().to_vec(),
            parities: self.parities().iter().map(|p| p.bit()).collect(),
            unit: format_vec(&self.unit()),
            structure_constants: self
                .structure_constants()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
            top_degree: Some(self.top_degree()),
            convention: self.provenance().map(|_| PATH_CONVENTION.to_string()),
            provenance: self.provenance(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self> {
        if doc.labels.len() != doc.rank {
            return Err(Error::Dimension(format!(
                "rank {} but {} labels",
                doc.rank,
                doc.labels.len()
            )));
        }
        if let Some(&bad) = doc.parities.iter().find(|&&b| b > 1) {
            return Err(Error::Parse(format!("parity {bad} is not 0 or 1")));
        }
        let base: BaseRing = doc.base.parse()?;
        let structure_constants = doc
            .structure_constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_int(c)?)))
            .collect::<Result<Vec<_>>>()?;
        AlgebraData::new(AlgebraParts {
            base,
            labels: doc.labels.clone(),
            degrees: doc.degrees.clone(),
            parities: doc.parities.iter().map(|&b| Parity::from_bit(b)).collect(),
            unit: parse_vec(&doc.unit)?,
            structure_constants,
            top_degree: doc.top_degree,
            provenance: doc.provenance,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_documents_name_the_problem() {
        let bad = r#"{"base":"Z","rank":1,"labels":["e"],"degrees":[0],"parities":[2],"unit":["1"],"structure_constants":[[0,0,0,"1"]]}"#;
        assert!(matches!(AlgebraData::from_json(bad), Err(Error::Parse(_))));
        let no_unit = r#"{"base":"Z","rank":1,"labels":["e"],"degrees":[0],"parities":[0],"unit":["2"],"structure_constants":[[0,0,0,"1"]]}"#;
        assert_eq!(AlgebraData::from_json(no_unit), Err(Error::UnitLaw(0)));
    }
}
