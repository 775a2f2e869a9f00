use std::fmt::Write;

use crate::brane::Brane;
use crate::object::{Entry, GeneralObject};
use crate::permutation::Permutation;
use crate::surface::{BoundaryCircle, MixedEntry, Side};

use super::{Document, NamedCobordism};

/// `(2 3)(4)`, or `id` for the empty permutation. Fixed points are listed.
pub fn format_cycles(p: &Permutation) -> String {
    p.to_string()
}

struct Writer {
    single: bool,
}

impl Writer {
    fn label(&self, out: &mut String, b: &Brane) {
        if !self.single {
            out.push(' ');
            out.push_str(b.id());
        }
    }

    fn object(&self, out: &mut String, name: &str, obj: &GeneralObject) {
        write!(out, "object {name} = [").unwrap();
        for (i, e) in obj.entries().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            match e {
                Entry::Circle => out.push('O'),
                Entry::Interval { left, right } => write!(out, "I({left},{right})").unwrap(),
            }
        }
        out.push(']');
        if !obj.sigma().is_identity() {
            write!(out, " sigma {}", format_cycles(obj.sigma())).unwrap();
        }
        out.push_str(";\n");
    }

    fn cobordism(&self, out: &mut String, c: &NamedCobordism) {
        writeln!(
            out,
            "cobordism {} : {} -> {} {{",
            c.name, c.source, c.target
        )
        .unwrap();
        for comp in &c.cobordism.components {
            out.push_str("  component {\n");
            writeln!(out, "    genus {};", comp.genus).unwrap();
            for circle in &comp.boundary {
                out.push_str("    ");
                match circle {
                    BoundaryCircle::InClosed(i) => write!(out, "in {i}").unwrap(),
                    BoundaryCircle::OutClosed(i) => write!(out, "out {i}").unwrap(),
                    BoundaryCircle::Window(b) => {
                        out.push_str("window");
                        self.label(out, b);
                    }
                    BoundaryCircle::Mixed(cycle) => {
                        out.push_str("mixed [");
                        for (k, e) in cycle.iter().enumerate() {
                            if k > 0 {
                                out.push_str(", ");
                            }
                            match e {
                                MixedEntry::Interval(r) => {
                                    let side = match r.side {
                                        Side::Incoming => "in",
                                        Side::Outgoing => "out",
                                    };
                                    write!(out, "{side} {}", r.index).unwrap();
                                    if !r.has_default_orientation() {
                                        out.push_str(" rev");
                                    }
                                }
                                MixedEntry::Arc(b) => {
                                    out.push_str("arc");
                                    self.label(out, b);
                                }
                            }
                        }
                        out.push(']');
                    }
                }
                out.push_str(";\n");
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
}

/// Canonical text of a document: cobordisms are put in canonical form first, blocks are
/// separated by one blank line, and labels are omitted in single-brane mode.
pub fn serialize(doc: &Document) -> String {
    let doc = doc.canonicalize();
    let w = Writer {
        single: doc.branes.is_single_star(),
    };
    let mut blocks: Vec<String> = Vec::new();
    if !w.single {
        let names: Vec<&str> = doc.branes.iter().map(Brane::id).collect();
        blocks.push(format!("branes {};\n", names.join(", ")));
    }
    if !doc.objects.is_empty() {
        let mut s = String::new();
        for (name, obj) in &doc.objects {
            w.object(&mut s, name, obj);
        }
        blocks.push(s);
    }
    for c in &doc.cobordisms {
        let mut s = String::new();
        w.cobordism(&mut s, c);
        blocks.push(s);
    }
    blocks.join("\n")
}
