//! Space definitions: the versioned JSON format accepted by `--space`.

use std::sync::Arc;

use roundsleek::constructions::{
    bounded_transform, euclidean_product, monotone_transform, product_metric_d, truncate_transform, ProductWeights,
};
use roundsleek::gallery::gallery_space;
use roundsleek::number::BoundedReal;
use roundsleek::space::{subspace, Discrete, Euclidean};
use roundsleek::{IntervalUnion, MetricSpace, Point, Rational, Region};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum DefinitionError {
    #[error("at {path}: {message}")]
    Malformed { path: String, message: String },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(String),
    #[error(transparent)]
    Build(#[from] roundsleek::Error),
}

impl DefinitionError {
    fn at(path: &str, message: impl Into<String>) -> Self {
        let path = if path.is_empty() { ".".to_string() } else { path.to_string() };
        DefinitionError::Malformed { path, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformName {
    Bounded,
    Truncate,
    Monotone,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailDefinition {
    pub space: Box<SpaceDefinition>,
    pub base: Point,
}

/// A metric space built from a tree of constructions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SpaceDefinition {
    #[serde(rename = "interval_union")]
    IntervalUnion { intervals: IntervalUnion },
    #[serde(rename = "region2d")]
    Region2d { region: Region },
    #[serde(rename = "euclidean")]
    Euclidean { dim: usize },
    /// The 0/1 metric on the given labels, or on the reals when none are given.
    #[serde(rename = "discrete")]
    Discrete {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    #[serde(rename = "product_euclid")]
    ProductEuclid { factors: Vec<SpaceDefinition> },
    /// Weights default to the factor diameters (1 when unbounded).
    #[serde(rename = "product_D")]
    ProductD {
        factors: Vec<SpaceDefinition>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail: Option<TailDefinition>,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "roundsleek::serde_util::option_vec")]
        weights: Option<Vec<Rational>>,
        truncation: usize,
    },
    #[serde(rename = "transform")]
    Transform {
        name: TransformName,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "roundsleek::serde_util::option")]
        r: Option<Rational>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi: Option<String>,
        inner: Box<SpaceDefinition>,
    },
    #[serde(rename = "gallery")]
    Gallery { name: String },
}

/// The top-level file: a definition plus `"schema": 1`.
#[derive(Serialize)]
struct Document<'a> {
    schema: u64,
    #[serde(flatten)]
    space: &'a SpaceDefinition,
}

impl SpaceDefinition {
    pub fn gallery(name: &str) -> Self {
        SpaceDefinition::Gallery { name: name.to_string() }
    }

    /// Parses a whole document, checking the schema version.
    pub fn parse(text: &str) -> Result<Self, DefinitionError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DefinitionError::at("", e.to_string()))?;
        Self::from_document(&v, "")
    }

    pub fn from_document(v: &Value, path: &str) -> Result<Self, DefinitionError> {
        match v.get("schema") {
            Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(DefinitionError::Schema(other.to_string())),
            None => return Err(DefinitionError::at(&join(path, "schema"), "missing schema version")),
        }
        let mut obj = v.as_object().cloned().unwrap_or_default();
        obj.remove("schema");
        Self::from_value(&Value::Object(obj), path)
    }

    /// Parses one node; errors name the JSON path of the offending value.
    pub fn from_value(v: &Value, path: &str) -> Result<Self, DefinitionError> {
        let obj = v.as_object().ok_or_else(|| DefinitionError::at(path, "expected an object"))?;
        let ty = match obj.get("type") {
            Some(Value::String(s)) => s.as_str(),
            Some(_) => return Err(DefinitionError::at(&join(path, "type"), "expected a string")),
            None => return Err(DefinitionError::at(&join(path, "type"), "missing space type")),
        };
        let mut body = obj.clone();
        body.remove("type");
        Ok(match ty {
            "interval_union" => {
                let b: IntervalBody = body_of(body, path)?;
                SpaceDefinition::IntervalUnion { intervals: b.intervals }
            }
            "region2d" => {
                let b: RegionBody = body_of(body, path)?;
                SpaceDefinition::Region2d { region: b.region }
            }
            "euclidean" => {
                let b: DimBody = body_of(body, path)?;
                SpaceDefinition::Euclidean { dim: b.dim }
            }
            "discrete" => {
                let b: LabelsBody = body_of(body, path)?;
                SpaceDefinition::Discrete { labels: b.labels }
            }
            "gallery" => {
                let b: NameBody = body_of(body, path)?;
                SpaceDefinition::Gallery { name: b.name }
            }
            "product_euclid" => {
                let b: FactorsBody = body_of(body, path)?;
                SpaceDefinition::ProductEuclid { factors: factor_list(&b.factors, &join(path, "factors"))? }
            }
            "product_D" => {
                let b: ProductDBody = body_of(body, path)?;
                let tail = match b.tail {
                    None => None,
                    Some(t) => {
                        let tp = join(path, "tail");
                        let space = Self::from_value(&t.space, &join(&tp, "space"))?;
                        Some(TailDefinition { space: Box::new(space), base: t.base })
                    }
                };
                SpaceDefinition::ProductD {
                    factors: factor_list(&b.factors, &join(path, "factors"))?,
                    tail,
                    weights: b.weights,
                    truncation: b.truncation,
                }
            }
            "transform" => {
                let b: TransformBody = body_of(body, path)?;
                let inner = Self::from_value(&b.inner, &join(path, "inner"))?;
                SpaceDefinition::Transform { name: b.name, r: b.r, phi: b.phi, inner: Box::new(inner) }
            }
            other => return Err(DefinitionError::at(&join(path, "type"), format!("unknown space type {other:?}"))),
        })
    }

    /// Serializes as a top-level document.
    pub fn to_document(&self) -> Value {
        serde_json::to_value(Document { schema: SCHEMA_VERSION, space: self }).expect("definitions serialize")
    }

    pub fn build(&self) -> Result<MetricSpace, DefinitionError> {
        Ok(match self {
            SpaceDefinition::IntervalUnion { intervals } => {
                Arc::new(subspace(Euclidean::new(1), Region::intervals(intervals.clone()))?)
            }
            SpaceDefinition::Region2d { region } => Arc::new(subspace(Euclidean::new(2), region.clone())?),
            SpaceDefinition::Euclidean { dim } => {
                if *dim == 0 {
                    return Err(roundsleek::Error::InvalidParameter("dimension must be positive".into()).into());
                }
                Euclidean::new(*dim)
            }
            SpaceDefinition::Discrete { labels: None } => Discrete::reals(),
            SpaceDefinition::Discrete { labels: Some(l) } => Discrete::labels(l.iter().cloned()),
            SpaceDefinition::ProductEuclid { factors } => {
                euclidean_product(factors.iter().map(|f| f.build()).collect::<Result<_, _>>()?)?
            }
            SpaceDefinition::ProductD { factors, tail, weights, truncation } => {
                let built: Vec<MetricSpace> = factors.iter().map(|f| f.build()).collect::<Result<_, _>>()?;
                let tail = match tail {
                    Some(t) => Some((t.space.build()?, t.base.clone())),
                    None => None,
                };
                let w = match weights {
                    Some(l) => ProductWeights {
                        lambdas: l.iter().cloned().map(BoundedReal::exact).collect(),
                        truncation_k: *truncation,
                    },
                    None => ProductWeights::from_diameters(&built, tail.as_ref().map(|(s, _)| s), *truncation),
                };
                product_metric_d(built, tail, w)?
            }
            SpaceDefinition::Transform { name, r, phi, inner } => {
                let inner = inner.build()?;
                match name {
                    TransformName::Bounded => bounded_transform(inner),
                    TransformName::Truncate => {
                        let r = r.clone().ok_or_else(|| invalid("truncate needs a radius r"))?;
                        truncate_transform(inner, r)?
                    }
                    TransformName::Monotone => {
                        let phi = phi.as_deref().ok_or_else(|| invalid("monotone needs phi"))?;
                        monotone_transform(inner, phi)?
                    }
                }
            }
            SpaceDefinition::Gallery { name } => gallery_space(name)?.space,
        })
    }
}

fn invalid(msg: &str) -> DefinitionError {
    roundsleek::Error::InvalidParameter(msg.into()).into()
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn body_of<T: DeserializeOwned>(body: Map<String, Value>, path: &str) -> Result<T, DefinitionError> {
    serde_path_to_error::deserialize(Value::Object(body)).map_err(|e| {
        let inner = e.path().to_string();
        let full = if inner == "." { path.to_string() } else { join(path, &inner) };
        DefinitionError::at(&full, e.inner().to_string())
    })
}

fn factor_list(values: &[Value], path: &str) -> Result<Vec<SpaceDefinition>, DefinitionError> {
    if values.is_empty() {
        return Err(DefinitionError::at(path, "at least one factor is required"));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| SpaceDefinition::from_value(v, &format!("{path}[{i}]")))
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalBody {
    intervals: IntervalUnion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionBody {
    region: Region,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimBody {
    dim: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelsBody {
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NameBody {
    name: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorsBody {
    factors: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TailBody {
    space: Value,
    base: Point,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDBody {
    factors: Vec<Value>,
    #[serde(default)]
    tail: Option<TailBody>,
    #[serde(default, with = "roundsleek::serde_util::option_vec")]
    weights: Option<Vec<Rational>>,
    truncation: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformBody {
    name: TransformName,
    #[serde(default, with = "roundsleek::serde_util::option")]
    r: Option<Rational>,
    #[serde(default)]
    phi: Option<String>,
    inner: Value,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_endpoint_names_its_path() {
        let text = r#"{"schema":1,"type":"transform","name":"bounded",
            "inner":{"type":"product_euclid","factors":[{"type":"euclidean","dim":1},
            {"type":"interval_union","intervals":[{"lo":"0","hi":"x/2","lo_closed":true,"hi_closed":false}]}]}}"#;
        let err = SpaceDefinition::parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("inner.factors[1].intervals[0]"), "{msg}");
    }

    #[test]
    fn schema_version_is_enforced() {
        assert!(matches!(
            SpaceDefinition::parse(r#"{"schema":2,"type":"euclidean","dim":1}"#),
            Err(DefinitionError::Schema(_))
        ));
        assert!(SpaceDefinition::parse(r#"{"type":"euclidean","dim":1}"#).is_err());
    }

    #[test]
    fn documents_round_trip() {
        let text = r#"{"schema":1,"type":"product_D","truncation":8,
            "factors":[{"type":"interval_union","intervals":[{"lo":"0","hi":"1","lo_closed":true,"hi_closed":true}]}],
            "tail":{"space":{"type":"transform","name":"bounded","inner":{"type":"euclidean","dim":1}},"base":{"scalar":"0"}}}"#;
        let def = SpaceDefinition::parse(text).unwrap();
        let again = SpaceDefinition::parse(&def.to_document().to_string()).unwrap();
        assert_eq!(def, again);
        def.build().unwrap();
    }
}
