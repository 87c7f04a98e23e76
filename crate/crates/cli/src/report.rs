//! Report documents: one check on one space, with everything needed to replay it.

use std::fmt;
use std::str::FromStr;

use roundsleek::checkers::{
    check_convexity, check_round, check_sleek, check_strict_convexity, check_union_sleekness, replay_witness,
    CheckVerdict, ConvexityKind, Verdict, WitnessRecord,
};
use roundsleek::number::{format_rational, parse_rational};
use roundsleek::space::{AxiomViolation, Euclidean};
use roundsleek::topology::Effort;
use roundsleek::{verify_metric_axioms, Region, ToleranceConfig};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::definition::{DefinitionError, SpaceDefinition};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Definition(#[from] DefinitionError),
    #[error(transparent)]
    Check(#[from] roundsleek::Error),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("malformed report at {path}: {message}")]
    Malformed { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckName {
    Round,
    Sleek,
    Convexity(ConvexityKind),
    StrictConvexity,
    Axioms,
    UnionSleek,
}

impl FromStr for CheckName {
    type Err = ReportError;

    /// `round`, `sleek`, `convexity:<metric|external|lambda=p/q|strong-external=p/q>`,
    /// `strict-convexity`, `axioms` or `union-sleek`.
    fn from_str(s: &str) -> Result<Self, ReportError> {
        let unknown = || ReportError::UnknownCheck(s.to_string());
        Ok(match s {
            "round" => CheckName::Round,
            "sleek" => CheckName::Sleek,
            "strict-convexity" => CheckName::StrictConvexity,
            "axioms" => CheckName::Axioms,
            "union-sleek" => CheckName::UnionSleek,
            _ => {
                let kind = s.strip_prefix("convexity:").ok_or_else(unknown)?;
                let kind = match kind.split_once('=') {
                    None if kind == "metric" => ConvexityKind::Metric,
                    None if kind == "external" => ConvexityKind::External,
                    Some(("lambda", v)) => ConvexityKind::Lambda { lambda: parse_rational(v)? },
                    Some(("strong-external", v)) => ConvexityKind::StrongExternal { s: parse_rational(v)? },
                    _ => return Err(unknown()),
                };
                kind.validate()?;
                CheckName::Convexity(kind)
            }
        })
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckName::Round => f.write_str("round"),
            CheckName::Sleek => f.write_str("sleek"),
            CheckName::StrictConvexity => f.write_str("strict-convexity"),
            CheckName::Axioms => f.write_str("axioms"),
            CheckName::UnionSleek => f.write_str("union-sleek"),
            CheckName::Convexity(ConvexityKind::Metric) => f.write_str("convexity:metric"),
            CheckName::Convexity(ConvexityKind::External) => f.write_str("convexity:external"),
            CheckName::Convexity(ConvexityKind::Lambda { lambda }) => {
                write!(f, "convexity:lambda={}", format_rational(lambda))
            }
            CheckName::Convexity(ConvexityKind::StrongExternal { s }) => {
                write!(f, "convexity:strong-external={}", format_rational(s))
            }
        }
    }
}

impl Serialize for CheckName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CheckName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What a violation was certified with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ReportWitness {
    Check(WitnessRecord),
    Axiom(AxiomViolation),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub members: [usize; 2],
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionSummary {
    pub pairwise: Vec<PairVerdict>,
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub space: Value,
    pub check: CheckName,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReportWitness>,
    pub effort: Effort,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub union: Option<UnionSummary>,
    pub seed: u64,
    pub config: ToleranceConfig,
    pub toolkit_version: String,
}

impl ReportDocument {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::HoldsExact | Verdict::HoldsAtBudget => 0,
            Verdict::Violated => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| ReportError::Malformed {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn definition(&self) -> Result<SpaceDefinition, ReportError> {
        Ok(SpaceDefinition::from_document(&self.space, "space")?)
    }

    pub fn check_witness(&self) -> Option<&WitnessRecord> {
        match &self.witness {
            Some(ReportWitness::Check(w)) => Some(w),
            _ => None,
        }
    }
}

/// Runs `check` on the space described by `def`.
pub fn run_check(def: &SpaceDefinition, check: &CheckName, cfg: &ToleranceConfig) -> Result<ReportDocument, ReportError> {
    cfg.validate()?;
    let space = def.build()?;
    let mut union = None;
    let (verdict, witness, effort) = match check {
        CheckName::Round => from_verdict(check_round(&*space, cfg)),
        CheckName::Sleek => from_verdict(check_sleek(&*space, cfg)),
        CheckName::Convexity(kind) => from_verdict(check_convexity(&*space, kind, cfg)?),
        CheckName::StrictConvexity => from_verdict(check_strict_convexity(&*space, cfg)?),
        CheckName::Axioms => {
            let r = verify_metric_axioms(&*space, cfg);
            let verdict = if r.violation.is_some() {
                Verdict::Violated
            } else if r.triples == 0 || 2 * r.unknown > r.triples {
                Verdict::Inconclusive
            } else {
                Verdict::HoldsAtBudget
            };
            let effort = Effort { samples: r.triples, refinements: cfg.precision_cap };
            (verdict, r.violation.map(ReportWitness::Axiom), effort)
        }
        CheckName::UnionSleek => {
            let (regions, dim) = union_members(def)?;
            let report = check_union_sleekness(&regions, &Euclidean::new(dim), cfg)?;
            union = Some(UnionSummary {
                pairwise: report
                    .pairwise
                    .iter()
                    .map(|((i, j), v)| PairVerdict { members: [*i, *j], verdict: v.verdict })
                    .collect(),
                contradiction: report.contradiction,
            });
            let mut effort = report.full.effort;
            for (_, v) in &report.pairwise {
                effort.absorb(v.effort);
            }
            let (verdict, witness, _) = from_verdict(report.full);
            (verdict, witness, effort)
        }
    };
    Ok(ReportDocument {
        space: def.to_document(),
        check: check.clone(),
        verdict,
        witness,
        effort,
        union,
        seed: cfg.seed,
        config: cfg.clone(),
        toolkit_version: TOOLKIT_VERSION.to_string(),
    })
}

fn from_verdict(v: CheckVerdict) -> (Verdict, Option<ReportWitness>, Effort) {
    (v.verdict, v.witness.map(ReportWitness::Check), v.effort)
}

/// The pieces of a union: components of an interval union, or members of a planar union.
fn union_members(def: &SpaceDefinition) -> Result<(Vec<Region>, usize), ReportError> {
    let not_union = || roundsleek::Error::InvalidParameter("union-sleek needs an interval union or a planar union".into());
    match def {
        SpaceDefinition::IntervalUnion { intervals } => Ok((
            intervals
                .components()
                .iter()
                .map(|i| Region::intervals(roundsleek::IntervalUnion::new([i.clone()])))
                .collect(),
            1,
        )),
        SpaceDefinition::Region2d { region: Region::Union { members } } => Ok((members.clone(), 2)),
        _ => Err(not_union().into()),
    }
}

/// Outcome of re-running a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayOutcome {
    /// The regenerated document matches byte for byte, apart from the toolkit version.
    pub identical: bool,
    /// The recorded witness re-certifies on its own (true when there is none to check).
    pub witness_certified: bool,
}

impl ReplayOutcome {
    pub fn passed(&self) -> bool {
        self.identical && self.witness_certified
    }
}

pub fn replay(doc: &ReportDocument) -> Result<ReplayOutcome, ReportError> {
    let def = doc.definition()?;
    let mut again = run_check(&def, &doc.check, &doc.config)?;
    again.toolkit_version = doc.toolkit_version.clone();
    let identical = again.to_json() == doc.to_json();
    let witness_certified = match &doc.witness {
        Some(ReportWitness::Check(w)) => {
            let space = def.build()?;
            replay_witness(&*space, w, &doc.config)
        }
        // an axiom violation is certified by re-running the sampler
        Some(ReportWitness::Axiom(_)) => identical,
        None => true,
    };
    Ok(ReplayOutcome { identical, witness_certified })
}
