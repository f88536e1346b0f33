use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::matchings::{bipartite_matching_vector, matching_vector, MatchingVector};

/// Serde adapter writing big integers as decimal strings.
pub(crate) mod decimal {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        BigUint::from_str(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| BigUint::from_str(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// A member of the universe, kept so that every claimed minimum can be
/// recomputed from the report alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Graph(Graph),
    Bipartite(BipartiteGraph),
}

impl Instance {
    pub fn matching_vector(&self) -> Result<MatchingVector> {
        match self {
            Instance::Graph(g) => matching_vector(g),
            Instance::Bipartite(b) => bipartite_matching_vector(b),
        }
    }
}

/// Which quantity a row describes: `m_k` or the total `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    K(usize),
    Total,
}

impl Quantity {
    pub fn of(&self, mv: &MatchingVector) -> BigUint {
        match *self {
            Quantity::K(k) => mv.get(k),
            Quantity::Total => mv.total(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Quantity::K(k) => k.to_string(),
            Quantity::Total => "total".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub quantity: Quantity,
    #[serde(with = "decimal")]
    pub true_min: BigUint,
    #[serde(with = "decimal")]
    pub lex_value: BigUint,
    /// Absent for bipartite universes.
    #[serde(with = "decimal::option")]
    pub colex_value: Option<BigUint>,
    /// Enumeration index of the first minimizer.
    pub witness_id: u64,
    /// How many instances attain the minimum.
    pub minimizers: u64,
}

impl ReportRow {
    pub fn bound(&self) -> BigUint {
        match &self.colex_value {
            Some(c) => c.min(&self.lex_value).clone(),
            None => self.lex_value.clone(),
        }
    }

    pub fn is_counterexample(&self) -> bool {
        self.true_min < self.bound()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub quantity: Quantity,
    #[serde(with = "decimal")]
    pub value: BigUint,
    #[serde(with = "decimal")]
    pub bound: BigUint,
    pub witness: Instance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub id: u64,
    pub instance: Instance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub universe: String,
    pub instances: u64,
    pub rows: Vec<ReportRow>,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Counterexample>,
    /// Bipartite sweeps: whether any `m_k` with `k` above the left part size
    /// was ever nonzero.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nonzero_above_left: Option<bool>,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Rows recomputed from the serialized witnesses agree with the claims.
    pub fn recheck(&self) -> Result<bool> {
        for row in &self.rows {
            let Some(w) = self.witnesses.iter().find(|w| w.id == row.witness_id) else {
                return Ok(false);
            };
            if row.quantity.of(&w.instance.matching_vector()?) != row.true_min {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One line per quantity: `k,true_min,lex_value,colex_value,witness_id`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["k", "true_min", "lex_value", "colex_value", "witness_id"])
            .map_err(io)?;
        for row in &self.rows {
            w.write_record([
                row.quantity.label(),
                row.true_min.to_string(),
                row.lex_value.to_string(),
                row.colex_value
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
                row.witness_id.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
