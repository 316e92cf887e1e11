//! JSON documents for schemes, one-copy states, reports and graphs.
//!
//! Rationals travel as reduced `"num/den"` strings. Everything is emitted
//! through [`serde_json::Value`], whose maps keep keys sorted, so equal inputs
//! give byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::discrimination::{BlockKind, CanonicalBlock, DiscriminationGraph, SingleCopyState};
use crate::error::{Error, Result};
use crate::oracle::{Amplitude, Composition, Overlap};
use crate::rational::{format_rational, parse_rational};
use crate::schemes::{ProductScheme, Scheme, SchemeReport, WeightProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BlockDoc {
    Pair {
        i: usize,
        j: usize,
    },
    Quad {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    Star {
        i: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub composition: Vec<u32>,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SchemeDoc {
    Product {
        n: usize,
        blocks: Vec<BlockDoc>,
    },
    Entangled {
        n: usize,
        t: usize,
        weights: Vec<WeightDoc>,
    },
}

/// One amplitude of a state file: exact `(-1)^neg sqrt(sq)` or a float pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmplitudeDoc {
    Exact {
        sq: String,
        #[serde(default)]
        neg: bool,
    },
    Float {
        re: f64,
        im: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub n: usize,
    pub amplitudes: Vec<AmplitudeDoc>,
}

impl From<&CanonicalBlock> for BlockDoc {
    fn from(b: &CanonicalBlock) -> Self {
        match b.kind() {
            BlockKind::Pair { i, j } => Self::Pair { i, j },
            BlockKind::Quad {
                indices: [a, b, c, d],
            } => Self::Quad { a, b, c, d },
            BlockKind::Star { center } => Self::Star { i: center },
        }
    }
}

impl BlockDoc {
    pub fn to_block(&self, n: usize) -> Result<CanonicalBlock> {
        match *self {
            Self::Pair { i, j } => CanonicalBlock::pair(n, i, j),
            Self::Quad { a, b, c, d } => CanonicalBlock::quad(n, [a, b, c, d]),
            Self::Star { i } => CanonicalBlock::star(n, i),
        }
    }
}

impl SchemeDoc {
    pub fn from_scheme(s: &Scheme) -> Result<Self> {
        match s {
            Scheme::Product(p) => {
                let blocks = p.blocks().ok_or_else(|| {
                    Error::InvalidBlock("only canonical-block factors can be serialized".into())
                })?;
                Ok(Self::Product {
                    n: p.n(),
                    blocks: blocks.iter().map(BlockDoc::from).collect(),
                })
            }
            Scheme::Entangled(w) => Ok(Self::Entangled {
                n: w.n(),
                t: w.t(),
                weights: w
                    .weights()
                    .map(|(c, q)| WeightDoc {
                        composition: c.counts().to_vec(),
                        q: format_rational(q),
                    })
                    .collect(),
            }),
        }
    }

    pub fn to_scheme(&self) -> Result<Scheme> {
        match self {
            Self::Product { n, blocks } => {
                let blocks = blocks
                    .iter()
                    .map(|b| b.to_block(*n))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ProductScheme::from_blocks(*n, blocks)?.into())
            }
            Self::Entangled { n, t, weights } => {
                let weights = weights
                    .iter()
                    .map(|w| {
                        if w.composition.len() != *n {
                            return Err(Error::InvalidProfile(format!(
                                "composition {:?} has {} parts, expected {n}",
                                w.composition,
                                w.composition.len()
                            )));
                        }
                        Ok((
                            Composition::new(w.composition.clone())?,
                            parse_rational(&w.q)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(WeightProfile::new(*n, *t, weights)?.into())
            }
        }
    }
}

fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize infallibly")
}

pub fn scheme_to_json(s: &Scheme) -> Result<Value> {
    Ok(to_value(&SchemeDoc::from_scheme(s)?))
}

pub fn scheme_from_json(text: &str) -> Result<Scheme> {
    let doc: SchemeDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_scheme()
}

pub fn state_from_json(text: &str) -> Result<SingleCopyState> {
    let doc: StateDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.amplitudes.len() != doc.n {
        return Err(Error::DimensionMismatch {
            expected: doc.n,
            found: doc.amplitudes.len(),
        });
    }
    let amps = doc
        .amplitudes
        .iter()
        .map(|a| match a {
            AmplitudeDoc::Exact { sq, neg } => Amplitude::exact(*neg, parse_rational(sq)?),
            AmplitudeDoc::Float { re, im } => Ok(Amplitude::float(*re, *im)),
        })
        .collect::<Result<Vec<_>>>()?;
    SingleCopyState::new(amps)
}

pub fn state_to_json(s: &SingleCopyState) -> Value {
    let amplitudes: Vec<AmplitudeDoc> = s
        .amplitudes()
        .iter()
        .map(|a| match a {
            Amplitude::Exact { negative, square } => AmplitudeDoc::Exact {
                sq: format_rational(square),
                neg: *negative,
            },
            Amplitude::Float(z) => AmplitudeDoc::Float { re: z.re, im: z.im },
        })
        .collect();
    to_value(&StateDoc {
        n: s.n(),
        amplitudes,
    })
}

pub fn overlap_to_json(o: &Overlap) -> Value {
    match o {
        Overlap::Exact(q) => Value::String(format_rational(q)),
        Overlap::Float(z) => json!({ "re": z.re, "im": z.im }),
    }
}

pub fn report_to_json(r: &SchemeReport) -> Value {
    json!({
        "valid": r.valid,
        "failing_pairs": r.failing_pairs.iter().map(|p| [p.i, p.j]).collect::<Vec<_>>(),
        "defects": r.failing_pairs.iter().map(|p| overlap_to_json(&p.defect)).collect::<Vec<_>>(),
        "method": r.method.as_str(),
    })
}

pub fn graph_to_json(g: &DiscriminationGraph) -> Value {
    json!({
        "n": g.n(),
        "edge_count": g.len(),
        "edges": g.edges().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
    })
}

/// Parses `"pair i j"`, `"quad a b c d"` or `"star i"`.
pub fn parse_block_spec(spec: &str, n: usize) -> Result<CanonicalBlock> {
    let mut words = spec.split_whitespace();
    let kind = words
        .next()
        .ok_or_else(|| Error::Parse("empty block spec".into()))?;
    let indices = words
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {w:?} in block spec")))
        })
        .collect::<Result<Vec<_>>>()?;
    let arity = |k: usize| {
        if indices.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "{kind} takes {k} indices, got {}",
                indices.len()
            )))
        }
    };
    match kind.to_ascii_lowercase().as_str() {
        "pair" => {
            arity(2)?;
            CanonicalBlock::pair(n, indices[0], indices[1])
        }
        "quad" | "k4" => {
            arity(4)?;
            CanonicalBlock::quad(n, [indices[0], indices[1], indices[2], indices[3]])
        }
        "star" | "e" => {
            arity(1)?;
            CanonicalBlock::star(n, indices[0])
        }
        other => Err(Error::Parse(format!("unknown block kind {other:?}"))),
    }
}

/// Compact single-line rendering with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize infallibly");
    s.push('\n');
    s
}
