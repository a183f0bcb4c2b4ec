//! Problem documents: parsing, validation against the library, and the
//! normalized form embedded in every report.

use idexp::algebra::{format_rational, parse_rational, Field, VarSplit};
use idexp::fixtures::Fixture;
use idexp::pairs::{BlowupChart, LsbStep, Pair, PairSystem};
use idexp::polyhedra::NuWeights;
use idexp::{Error, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    fn field(&self) -> Result<Field> {
        match self {
            FieldSpec::Q => Ok(Field::Rationals),
            FieldSpec::Fp(p) => Field::prime(*p),
        }
    }

    fn of(field: Field) -> FieldSpec {
        match field {
            Field::Rationals => FieldSpec::Q,
            Field::Prime(p) => FieldSpec::Fp(p.into()),
        }
    }
}

/// A rational given either as a JSON number or as a `"num/den"` string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn value(&self) -> Result<BigRational> {
        match self {
            RationalText::Int(n) => Ok(BigRational::from_integer((*n).into())),
            RationalText::Text(s) => parse_rational(s),
        }
    }

    fn normalized(q: &BigRational) -> RationalText {
        RationalText::Text(format_rational(q))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Variables {
    #[serde(default)]
    pub u: Vec<String>,
    #[serde(default)]
    pub y: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub generators: Vec<String>,
    pub b: RationalText,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Weights {
    pub alpha: Vec<RationalText>,
    pub beta: Vec<RationalText>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged, deny_unknown_fields)]
pub enum StepSpec {
    Adjoin { adjoin: String },
    Blowup { center: Vec<String>, chart: String },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_depth: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: FieldSpec,
    pub variables: Variables,
    pub pairs: Vec<PairSpec>,
    /// Second system over the same variables, for `probe-equiv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<Vec<PairSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Weights>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<Vec<StepSpec>>,
    #[serde(default)]
    pub options: Options,
}

/// A parsed document together with the library values it describes.
pub struct Problem {
    pub normalized: Document,
    pub system: PairSystem,
    pub other: Option<PairSystem>,
    pub weights: Option<NuWeights>,
    pub script: Option<Vec<LsbStep>>,
}

fn system_of(field: Field, split: &VarSplit, specs: &[PairSpec]) -> Result<PairSystem> {
    if specs.is_empty() {
        return Err(Error::Input("a system needs at least one pair".into()));
    }
    let comps = specs
        .iter()
        .map(|p| Pair::new(field, split.clone(), parse_generators(field, split, &p.generators)?, p.b.value()?))
        .collect::<Result<Vec<_>>>()?;
    PairSystem::new(comps)
}

fn parse_generators(field: Field, split: &VarSplit, gens: &[String]) -> Result<Vec<idexp::algebra::Poly>> {
    gens.iter().map(|g| idexp::algebra::parse_poly(g, split, field)).collect()
}

fn specs_of(s: &PairSystem) -> Vec<PairSpec> {
    let names = s.split().names();
    s.components()
        .iter()
        .map(|c| PairSpec {
            generators: c.generators().iter().map(|g| g.format(&names)).collect(),
            b: RationalText::normalized(c.weight()),
        })
        .collect()
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed document: {e}")))
    }

    pub fn from_fixture(f: &Fixture, other: Option<&Fixture>) -> Document {
        let specs = |f: &Fixture| {
            f.pairs
                .iter()
                .map(|(g, b)| PairSpec { generators: g.clone(), b: RationalText::Text(b.clone()) })
                .collect()
        };
        Document {
            field: FieldSpec::of(f.field),
            variables: Variables { u: f.u.clone(), y: f.y.clone() },
            pairs: specs(f),
            other: other.map(specs),
            weights: None,
            script: None,
            options: Options::default(),
        }
    }

    /// Parses every part against the library and rebuilds a canonical copy:
    /// generators in the library's display form, weights as `"num/den"`.
    pub fn resolve(&self) -> Result<Problem> {
        let field = self.field.field()?;
        let split = VarSplit::new(&self.variables.u, &self.variables.y)?;
        let system = system_of(field, &split, &self.pairs)?;
        let other = self.other.as_ref().map(|o| system_of(field, &split, o)).transpose()?;
        let weights = match &self.weights {
            None => None,
            Some(w) => {
                let parse = |v: &[RationalText]| v.iter().map(RationalText::value).collect::<Result<Vec<_>>>();
                let (alpha, beta) = (parse(&w.alpha)?, parse(&w.beta)?);
                if alpha.len() != split.u_side().len() || beta.len() != split.y_side().len() {
                    return Err(Error::Input("weights need one entry per u- and per y-variable".into()));
                }
                Some(NuWeights::new(alpha, beta)?)
            }
        };
        let script = self.script.as_ref().map(|steps| {
            steps
                .iter()
                .map(|s| match s {
                    StepSpec::Adjoin { adjoin } => LsbStep::Adjoin(adjoin.clone()),
                    StepSpec::Blowup { center, chart } => LsbStep::Blowup(BlowupChart::new(center, chart)),
                })
                .collect::<Vec<_>>()
        });
        let normalized = Document {
            field: FieldSpec::of(field),
            variables: self.variables.clone(),
            pairs: specs_of(&system),
            other: other.as_ref().map(specs_of),
            weights: weights.as_ref().map(|w| Weights {
                alpha: w.alpha().iter().map(RationalText::normalized).collect(),
                beta: w.beta().iter().map(RationalText::normalized).collect(),
            }),
            script: self.script.clone(),
            options: self.options.clone(),
        };
        Ok(Problem { normalized, system, other, weights, script })
    }
}
