//! Instance-file JSON schema. Rationals ride as `"p/q"` or integer
//! strings (plain JSON integers are accepted on input); matrices are
//! row-major arrays.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use coregame::domain::DomainSpec;
use coregame::error::{Error, Result};
use coregame::exact::{format_rational, parse_rational, RatMatrix, RatVector, Rational};
use coregame::game::{Coalition, GameInstance, GameSense};
use coregame::objective::ObjectiveSpec;

/// A rational scalar in transit: string `"p/q"` on output, string or
/// integer on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatScalar(pub Rational);

impl Serialize for RatScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        let r = match &v {
            serde_json::Value::String(s) => parse_rational(s).map_err(D::Error::custom)?,
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| D::Error::custom("rationals must be integers or \"p/q\" strings"))?;
                coregame::exact::rat_int(i)
            }
            _ => return Err(D::Error::custom("expected a rational string or integer")),
        };
        Ok(RatScalar(r))
    }
}

fn wrap_vec(v: &[Rational]) -> Vec<RatScalar> {
    v.iter().cloned().map(RatScalar).collect()
}

fn unwrap_vec(v: &[RatScalar]) -> RatVector {
    v.iter().map(|r| r.0.clone()).collect()
}

fn wrap_matrix(m: &RatMatrix) -> Vec<Vec<RatScalar>> {
    (0..m.rows()).map(|i| wrap_vec(m.row(i))).collect()
}

fn unwrap_matrix(rows: &[Vec<RatScalar>]) -> Result<RatMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        data.extend(unwrap_vec(row));
    }
    Ok(RatMatrix::new(r, c, data))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainJson {
    Boolean { m: usize },
    Cardinality { m: usize, k: usize },
    Knapsack {
        m: usize,
        constraint: Vec<Vec<RatScalar>>,
        limits: Vec<RatScalar>,
    },
    Explicit { points: Vec<Vec<RatScalar>> },
}

impl DomainJson {
    pub fn to_domain(&self) -> Result<DomainSpec> {
        Ok(match self {
            DomainJson::Boolean { m } => DomainSpec::Boolean { m: *m },
            DomainJson::Cardinality { m, k } => DomainSpec::BooleanCardinality { m: *m, k: *k },
            DomainJson::Knapsack { m, constraint, limits } => DomainSpec::BooleanKnapsack {
                m: *m,
                constraint: unwrap_matrix(constraint)?,
                limits: unwrap_vec(limits),
            },
            DomainJson::Explicit { points } => DomainSpec::ExplicitFinite {
                points: points.iter().map(|p| unwrap_vec(p)).collect(),
            },
        })
    }

    pub fn from_domain(d: &DomainSpec) -> Result<DomainJson> {
        Ok(match d {
            DomainSpec::Boolean { m } => DomainJson::Boolean { m: *m },
            DomainSpec::BooleanCardinality { m, k } => DomainJson::Cardinality { m: *m, k: *k },
            DomainSpec::BooleanKnapsack { m, constraint, limits } => DomainJson::Knapsack {
                m: *m,
                constraint: wrap_matrix(constraint),
                limits: wrap_vec(limits),
            },
            DomainSpec::ExplicitFinite { points } => DomainJson::Explicit {
                points: points.iter().map(|p| wrap_vec(p)).collect(),
            },
            DomainSpec::GeneratorCone { .. } | DomainSpec::CoalitionIndexed { .. } => {
                return Err(Error::Parse(
                    "generator and family domains serialize through the instance-level keys"
                        .into(),
                ))
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub x: Vec<RatScalar>,
    pub value: RatScalar,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoalitionEntryJson {
    pub x: Vec<RatScalar>,
    pub w: String,
    pub value: RatScalar,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveJson {
    Linear { c: Vec<RatScalar> },
    Quadratic { b: Vec<RatScalar>, q: Vec<Vec<RatScalar>> },
    Ratio { c: Vec<RatScalar>, d: Vec<RatScalar>, d0: RatScalar },
    Table { entries: Vec<TableEntryJson> },
    Scaled { factor: RatScalar, inner: Box<ObjectiveJson> },
    Sum { terms: Vec<ObjectiveJson> },
    Max { left: Box<ObjectiveJson>, right: Box<ObjectiveJson> },
    Precomposed { matrix: Vec<Vec<RatScalar>>, inner: Box<ObjectiveJson> },
    CoalitionDependent { entries: Vec<CoalitionEntryJson> },
}

impl ObjectiveJson {
    pub fn to_objective(&self) -> Result<ObjectiveSpec> {
        Ok(match self {
            ObjectiveJson::Linear { c } => ObjectiveSpec::Linear { c: unwrap_vec(c) },
            ObjectiveJson::Quadratic { b, q } => ObjectiveSpec::Quadratic {
                b: unwrap_vec(b),
                q: unwrap_matrix(q)?,
            },
            ObjectiveJson::Ratio { c, d, d0 } => ObjectiveSpec::Ratio {
                c: unwrap_vec(c),
                d: unwrap_vec(d),
                d0: d0.0.clone(),
            },
            ObjectiveJson::Table { entries } => ObjectiveSpec::Table {
                values: entries
                    .iter()
                    .map(|e| (unwrap_vec(&e.x), e.value.0.clone()))
                    .collect(),
            },
            ObjectiveJson::Scaled { factor, inner } => ObjectiveSpec::Scaled {
                factor: factor.0.clone(),
                inner: Box::new(inner.to_objective()?),
            },
            ObjectiveJson::Sum { terms } => ObjectiveSpec::Sum {
                terms: terms.iter().map(|t| t.to_objective()).collect::<Result<_>>()?,
            },
            ObjectiveJson::Max { left, right } => ObjectiveSpec::Max {
                left: Box::new(left.to_objective()?),
                right: Box::new(right.to_objective()?),
            },
            ObjectiveJson::Precomposed { matrix, inner } => ObjectiveSpec::Precomposed {
                matrix: unwrap_matrix(matrix)?,
                inner: Box::new(inner.to_objective()?),
            },
            ObjectiveJson::CoalitionDependent { entries } => {
                let mut values = BTreeMap::new();
                for e in entries {
                    values.insert(
                        (unwrap_vec(&e.x), Coalition::parse(&e.w)?),
                        e.value.0.clone(),
                    );
                }
                ObjectiveSpec::CoalitionDependent { values }
            }
        })
    }

    pub fn from_objective(f: &ObjectiveSpec) -> ObjectiveJson {
        match f {
            ObjectiveSpec::Linear { c } => ObjectiveJson::Linear { c: wrap_vec(c) },
            ObjectiveSpec::Quadratic { b, q } => ObjectiveJson::Quadratic {
                b: wrap_vec(b),
                q: wrap_matrix(q),
            },
            ObjectiveSpec::Ratio { c, d, d0 } => ObjectiveJson::Ratio {
                c: wrap_vec(c),
                d: wrap_vec(d),
                d0: RatScalar(d0.clone()),
            },
            ObjectiveSpec::Table { values } => ObjectiveJson::Table {
                entries: values
                    .iter()
                    .map(|(x, v)| TableEntryJson { x: wrap_vec(x), value: RatScalar(v.clone()) })
                    .collect(),
            },
            ObjectiveSpec::Scaled { factor, inner } => ObjectiveJson::Scaled {
                factor: RatScalar(factor.clone()),
                inner: Box::new(ObjectiveJson::from_objective(inner)),
            },
            ObjectiveSpec::Sum { terms } => ObjectiveJson::Sum {
                terms: terms.iter().map(ObjectiveJson::from_objective).collect(),
            },
            ObjectiveSpec::Max { left, right } => ObjectiveJson::Max {
                left: Box::new(ObjectiveJson::from_objective(left)),
                right: Box::new(ObjectiveJson::from_objective(right)),
            },
            ObjectiveSpec::Precomposed { matrix, inner } => ObjectiveJson::Precomposed {
                matrix: wrap_matrix(matrix),
                inner: Box::new(ObjectiveJson::from_objective(inner)),
            },
            ObjectiveSpec::CoalitionDependent { values } => ObjectiveJson::CoalitionDependent {
                entries: values
                    .iter()
                    .map(|((x, w), v)| CoalitionEntryJson {
                        x: wrap_vec(x),
                        w: w.to_string(),
                        value: RatScalar(v.clone()),
                    })
                    .collect(),
            },
        }
    }
}

/// The on-disk instance document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<RatScalar>>,
    pub sense: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_scale: Option<RatScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainJson>,
    pub objective: ObjectiveJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<RatScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_family: Option<BTreeMap<String, DomainJson>>,
}

impl InstanceFile {
    pub fn to_game(&self) -> Result<GameInstance> {
        let sense = match self.sense.as_str() {
            "packing" => GameSense::Packing,
            "covering" => GameSense::Covering,
            "partition" => GameSense::Partition,
            other => return Err(Error::Parse(format!("unknown sense {other:?}"))),
        };
        let constraint = unwrap_matrix(&self.a)?;
        if constraint.rows() != self.n || constraint.cols() != self.m {
            return Err(Error::Parse(format!(
                "matrix A is {}x{} but the header says {}x{}",
                constraint.rows(),
                constraint.cols(),
                self.n,
                self.m
            )));
        }

        let domain = if let Some(family) = &self.domain_family {
            let mut map = BTreeMap::new();
            for (key, value) in family {
                map.insert(Coalition::parse(key)?, value.to_domain()?);
            }
            DomainSpec::CoalitionIndexed { m: self.m, family: map }
        } else {
            let base = self
                .domain
                .as_ref()
                .ok_or_else(|| Error::Parse("missing domain".into()))?
                .to_domain()?;
            if let Some(generators) = &self.generators {
                DomainSpec::GeneratorCone {
                    base: Box::new(base),
                    generators: unwrap_matrix(generators)?,
                }
            } else {
                base
            }
        };

        let objective = self.objective.to_objective()?;
        let rhs_scale = self
            .rhs_scale
            .as_ref()
            .map(|r| r.0.clone())
            .unwrap_or_else(|| coregame::exact::rat_int(1));
        let mut game = GameInstance::with_scale(constraint, sense, domain, objective, rhs_scale)?;
        if let Ok(cap) = std::env::var("COREGAME_ENUM_CAP") {
            let cap: u64 = cap
                .parse()
                .map_err(|_| Error::Parse("COREGAME_ENUM_CAP must be an integer".into()))?;
            game.enum_cap = cap;
        }
        Ok(game)
    }

    pub fn from_game(g: &GameInstance) -> Result<InstanceFile> {
        let (domain, generators, domain_family) = match &g.domain {
            DomainSpec::GeneratorCone { base, generators } => (
                Some(DomainJson::from_domain(base)?),
                Some(wrap_matrix(generators)),
                None,
            ),
            DomainSpec::CoalitionIndexed { family, .. } => {
                let mut map = BTreeMap::new();
                for (w, d) in family {
                    map.insert(w.to_string(), DomainJson::from_domain(d)?);
                }
                (None, None, Some(map))
            }
            other => (Some(DomainJson::from_domain(other)?), None, None),
        };
        Ok(InstanceFile {
            n: g.players(),
            m: g.items(),
            a: wrap_matrix(&g.constraint),
            sense: g.sense.name().to_string(),
            rhs_scale: Some(RatScalar(g.rhs_scale.clone())),
            domain,
            objective: ObjectiveJson::from_objective(&g.objective),
            generators,
            domain_family,
        })
    }
}

/// Allocation vectors accepted by `member --check`: either a bare array
/// or `{"y": [...]}`.
pub fn parse_allocation(text: &str) -> Result<RatVector> {
    #[derive(Deserialize)]
    struct Wrapped {
        y: Vec<RatScalar>,
    }
    if let Ok(w) = serde_json::from_str::<Wrapped>(text) {
        return Ok(unwrap_vec(&w.y));
    }
    let bare: Vec<RatScalar> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("allocation: {e}")))?;
    Ok(unwrap_vec(&bare))
}

pub fn load_instance(path: &std::path::Path) -> Result<GameInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_game()
}
