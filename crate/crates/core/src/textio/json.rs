//! JSON encodings, versioned by a top-level `"format": 1`.
//!
//! Documents mirror the text format:
//!
//! ```json
//! {"format": 1, "branes": ["*"],
//!  "objects": [{"name": "c", "entries": ["O", {"I": ["*", "*"]}], "sigma": [[2]]}],
//!  "cobordisms": [{"name": "T", "source": "c", "target": "c", "components": [
//!     {"genus": 1, "boundary": [{"in": 1}, {"out": 1}, {"window": "*"},
//!        {"mixed": [{"in": {"index": 2, "rev": false}}, {"arc": "*"}]}]}]}]}
//! ```
//!
//! `rev` has the same meaning as in the text format: traversal against the default for
//! the interval's side. `sigma` lists every cycle, fixed points included.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::brane::Brane;
use crate::object::{Entry, GeneralObject};
use crate::surface::{BoundaryCircle, Component, IntervalRef, MixedEntry, Side};

use super::{parse, Diagnostic, Document};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDocument {
    pub format: u32,
    pub branes: Vec<String>,
    pub objects: Vec<JsonObject>,
    pub cobordisms: Vec<JsonCobordism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonObject {
    pub name: String,
    pub entries: Vec<JsonEntry>,
    pub sigma: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JsonEntry {
    #[serde(rename = "O")]
    Circle,
    #[serde(rename = "I")]
    Interval(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCobordism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub components: Vec<JsonComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonComponent {
    pub genus: u32,
    pub boundary: Vec<JsonCircle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonCircle {
    In(usize),
    Out(usize),
    Window(String),
    Mixed(Vec<JsonMixed>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonMixed {
    In { index: usize, rev: bool },
    Out { index: usize, rev: bool },
    Arc(String),
}

fn object_json(name: &str, obj: &GeneralObject) -> JsonObject {
    JsonObject {
        name: name.to_owned(),
        entries: obj
            .entries()
            .iter()
            .map(|e| match e {
                Entry::Circle => JsonEntry::Circle,
                Entry::Interval { left, right } => {
                    JsonEntry::Interval(left.id().to_owned(), right.id().to_owned())
                }
            })
            .collect(),
        sigma: obj.sigma().cycles(),
    }
}

pub fn component_json(comp: &Component) -> JsonComponent {
    let mixed = |e: &MixedEntry| match e {
        MixedEntry::Interval(r) => {
            let rev = !r.has_default_orientation();
            match r.side {
                Side::Incoming => JsonMixed::In {
                    index: r.index,
                    rev,
                },
                Side::Outgoing => JsonMixed::Out {
                    index: r.index,
                    rev,
                },
            }
        }
        MixedEntry::Arc(b) => JsonMixed::Arc(b.id().to_owned()),
    };
    JsonComponent {
        genus: comp.genus,
        boundary: comp
            .boundary
            .iter()
            .map(|c| match c {
                BoundaryCircle::InClosed(i) => JsonCircle::In(*i),
                BoundaryCircle::OutClosed(i) => JsonCircle::Out(*i),
                BoundaryCircle::Window(b) => JsonCircle::Window(b.id().to_owned()),
                BoundaryCircle::Mixed(cycle) => {
                    JsonCircle::Mixed(cycle.iter().map(mixed).collect())
                }
            })
            .collect(),
    }
}

pub fn component_from_json(comp: &JsonComponent) -> Component {
    let mixed = |e: &JsonMixed| match e {
        JsonMixed::In { index, rev } => {
            let r = IntervalRef::incoming(*index);
            MixedEntry::Interval(if *rev { r.flipped() } else { r })
        }
        JsonMixed::Out { index, rev } => {
            let r = IntervalRef::outgoing(*index);
            MixedEntry::Interval(if *rev { r.flipped() } else { r })
        }
        JsonMixed::Arc(b) => MixedEntry::Arc(Brane::new(b.as_str())),
    };
    Component::new(
        comp.genus,
        comp.boundary
            .iter()
            .map(|c| match c {
                JsonCircle::In(i) => BoundaryCircle::InClosed(*i),
                JsonCircle::Out(i) => BoundaryCircle::OutClosed(*i),
                JsonCircle::Window(b) => BoundaryCircle::Window(Brane::new(b.as_str())),
                JsonCircle::Mixed(cycle) => {
                    BoundaryCircle::Mixed(cycle.iter().map(mixed).collect())
                }
            })
            .collect(),
    )
}

/// JSON form of a document, cobordisms in canonical form.
pub fn document_json(doc: &Document) -> JsonDocument {
    let doc = doc.canonicalize();
    JsonDocument {
        format: FORMAT,
        branes: doc.branes.iter().map(|b| b.id().to_owned()).collect(),
        objects: doc.objects.iter().map(|(n, o)| object_json(n, o)).collect(),
        cobordisms: doc
            .cobordisms
            .iter()
            .map(|c| JsonCobordism {
                name: c.name.clone(),
                source: c.source.clone(),
                target: c.target.clone(),
                components: c.cobordism.components.iter().map(component_json).collect(),
            })
            .collect(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("unsupported format {0}, expected {FORMAT}")]
    Format(u32),
    #[error("empty brane set")]
    NoBranes,
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

/// Text form of a JSON document, written without any checking.
fn to_text(doc: &JsonDocument) -> String {
    let mut out = format!("branes {};\n", doc.branes.join(", "));
    for o in &doc.objects {
        let entries: Vec<String> = o
            .entries
            .iter()
            .map(|e| match e {
                JsonEntry::Circle => "O".to_owned(),
                JsonEntry::Interval(l, r) => format!("I({l},{r})"),
            })
            .collect();
        let _ = write!(out, "object {} = [{}]", o.name, entries.join(", "));
        if !o.sigma.is_empty() {
            out.push_str(" sigma ");
            for c in &o.sigma {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                let _ = write!(out, "({})", inner.join(" "));
            }
        }
        out.push_str(";\n");
    }
    for c in &doc.cobordisms {
        let _ = writeln!(
            out,
            "cobordism {} : {} -> {} {{",
            c.name, c.source, c.target
        );
        for comp in &c.components {
            let _ = write!(out, "  component {{ genus {};", comp.genus);
            for circle in &comp.boundary {
                match circle {
                    JsonCircle::In(i) => {
                        let _ = write!(out, " in {i};");
                    }
                    JsonCircle::Out(i) => {
                        let _ = write!(out, " out {i};");
                    }
                    JsonCircle::Window(b) => {
                        let _ = write!(out, " window {b};");
                    }
                    JsonCircle::Mixed(cycle) => {
                        let items: Vec<String> = cycle
                            .iter()
                            .map(|e| match e {
                                JsonMixed::In { index, rev } => {
                                    format!("in {index}{}", if *rev { " rev" } else { "" })
                                }
                                JsonMixed::Out { index, rev } => {
                                    format!("out {index}{}", if *rev { " rev" } else { "" })
                                }
                                JsonMixed::Arc(b) => format!("arc {b}"),
                            })
                            .collect();
                        let _ = write!(out, " mixed [{}];", items.join(", "));
                    }
                }
            }
            out.push_str(" }\n");
        }
        out.push_str("}\n");
    }
    out
}

/// Rebuilds a document, running it through the same resolution and validation as the
/// text parser.
pub fn document_from_json(doc: &JsonDocument) -> Result<Document, JsonError> {
    if doc.format != FORMAT {
        return Err(JsonError::Format(doc.format));
    }
    if doc.branes.is_empty() {
        return Err(JsonError::NoBranes);
    }
    parse(&to_text(doc)).map_err(JsonError::Invalid)
}
