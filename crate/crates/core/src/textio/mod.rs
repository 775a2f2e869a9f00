//! Text and JSON encodings of objects and cobordisms, and the command-line front end.
//!
//! The text format:
//!
//! ```text
//! branes a, b;                      # optional; defaults to the single brane `*`
//! object n = [O, I(a,b), I(b,a)] sigma (2 3);
//! cobordism P : n -> n {
//!   component { genus 0; in 1; out 1; }
//!   component { genus 1; window a; mixed [in 2, arc b, in 3, arc a]; mixed [out 2, arc b, out 3, arc a]; }
//! }
//! ```
//!
//! Interval references in `mixed` lists take their default traversal for their side;
//! `rev` selects the other one.

pub mod cli;
pub mod json;
mod parse;
mod serialize;

use std::fmt;

use crate::brane::BraneSet;
use crate::classify::canonicalize;
use crate::object::GeneralObject;
use crate::surface::Cobordism;

pub use parse::{parse, parse_cycles};
pub use serialize::{format_cycles, serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCobordism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub cobordism: Cobordism,
}

/// A brane declaration, named objects, and named cobordisms between them. Every
/// cobordism's `source`/`target` names an object of the document whose value equals the
/// cobordism's interface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub branes: BraneSet,
    pub objects: Vec<(String, GeneralObject)>,
    pub cobordisms: Vec<NamedCobordism>,
}

impl Document {
    pub fn new(branes: BraneSet) -> Self {
        Document {
            branes,
            objects: Vec::new(),
            cobordisms: Vec::new(),
        }
    }

    pub fn object(&self, name: &str) -> Option<&GeneralObject> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn cobordism(&self, name: &str) -> Option<&NamedCobordism> {
        self.cobordisms.iter().find(|c| c.name == name)
    }

    /// Adds an object unless one with that name exists already.
    pub fn add_object(&mut self, name: &str, obj: GeneralObject) {
        if self.object(name).is_none() {
            self.objects.push((name.to_owned(), obj));
        }
    }

    /// Same document with every cobordism in canonical form.
    pub fn canonicalize(&self) -> Document {
        let mut out = self.clone();
        for c in &mut out.cobordisms {
            c.cobordism = canonicalize(&c.cobordism).into_cobordism();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Resolve,
    Validate,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Resolve => "resolve error",
            DiagnosticKind::Validate => "invalid",
        })
    }
}

/// A problem in the input, at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

/// Exit status for a failed parse: 1 when the text is well formed but describes an
/// invalid cobordism, 2 otherwise.
pub fn exit_code(diagnostics: &[Diagnostic]) -> i32 {
    if diagnostics
        .iter()
        .all(|d| d.kind == DiagnosticKind::Validate)
    {
        1
    } else {
        2
    }
}
