//! JSON group documents: ball automorphisms as flat maps of leaf words.

use std::collections::BTreeMap;
use std::fmt;

use localaut_core::ball::VertexWord;
use localaut_core::{BallAut, BallGroup};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const ENCODING: &str = "flat-word-map";

/// Leaf word to image word; keys are kept sorted.
pub type WordMap = BTreeMap<String, String>;

/// Fields are declared in alphabetical order so the serialized keys are sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<WordMap>>,
    pub encoding: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<WordMap>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentError {
    Json(String),
    Encoding(String),
    Empty,
    Element { field: &'static str, index: usize, message: String },
    Group(String),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Json(s) => write!(f, "malformed JSON: {s}"),
            DocumentError::Encoding(s) => write!(f, "unsupported encoding {s:?}, expected {ENCODING:?}"),
            DocumentError::Empty => write!(f, "group document lists no elements or generators"),
            DocumentError::Element { field, index, message } => write!(f, "{field}[{index}]: {message}"),
            DocumentError::Group(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for DocumentError {}

pub fn word_map(a: &BallAut) -> WordMap {
    a.word_map().into_iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()
}

pub fn parse_word_map(d: usize, k: usize, m: &WordMap) -> Result<BallAut, String> {
    let pairs = m
        .iter()
        .map(|(x, y)| Ok((VertexWord::parse(d, x)?, VertexWord::parse(d, y)?)))
        .collect::<localaut_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    BallAut::from_word_map(d, k, &pairs).map_err(|e| e.to_string())
}

/// Generators of `g`; the trivial group is listed by its identity so that the
/// document is never empty.
fn generator_maps(g: &BallGroup) -> Vec<WordMap> {
    let gens = g.generators();
    if gens.is_empty() {
        return vec![word_map(&g.element(g.identity_index()))];
    }
    gens.iter().map(word_map).collect()
}

impl GroupDocument {
    /// A document listing generators, and all elements when `with_elements`.
    pub fn from_group(g: &BallGroup, with_elements: bool, metadata: BTreeMap<String, Value>) -> Self {
        GroupDocument {
            degree: g.degree(),
            elements: with_elements.then(|| g.elements().map(|a| word_map(&a)).collect()),
            encoding: ENCODING.into(),
            generators: Some(generator_maps(g)),
            metadata,
            radius: g.radius(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: GroupDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        if doc.encoding != ENCODING {
            return Err(DocumentError::Encoding(doc.encoding));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    fn parse_list(&self, field: &'static str, maps: &[WordMap]) -> Result<Vec<BallAut>, DocumentError> {
        maps.iter()
            .enumerate()
            .map(|(index, m)| {
                parse_word_map(self.degree, self.radius, m).map_err(|message| DocumentError::Element { field, index, message })
            })
            .collect()
    }

    /// The group: the listed elements if present, else the span of the
    /// generators.
    pub fn to_group(&self) -> Result<BallGroup, DocumentError> {
        let elements = self.elements.as_deref().unwrap_or_default();
        let generators = self.generators.as_deref().unwrap_or_default();
        if elements.is_empty() && generators.is_empty() {
            return Err(DocumentError::Empty);
        }
        let g = if !elements.is_empty() {
            let els = self.parse_list("elements", elements)?;
            BallGroup::from_elements(self.degree, self.radius, els)
        } else {
            let gens = self.parse_list("generators", generators)?;
            BallGroup::generate(self.degree, self.radius, &gens)
        };
        g.map_err(|e| DocumentError::Group(e.to_string()))
    }
}
