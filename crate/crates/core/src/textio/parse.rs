use std::collections::HashSet;

use crate::brane::{Brane, BraneSet};
use crate::object::{Entry, GeneralObject};
use crate::surface::{BoundaryCircle, Cobordism, Component, IntervalRef, MixedEntry, Side};

use super::{Diagnostic, DiagnosticKind, Document, NamedCobordism};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: [&str; 11] = ["->", ";", ",", "[", "]", "(", ")", "{", "}", ":", "="];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '*'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '*' || c == '\''
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line,
        column,
        kind: DiagnosticKind::Syntax,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let tok =
            if c.is_ascii_digit() {
                let begin = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[begin..i].iter().collect();
                col += i - begin;
                Tok::Int(s.parse().map_err(|_| {
                    syntax(start_line, start_col, format!("integer {s} is too large"))
                })?)
            } else if is_ident_start(c) {
                let begin = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                col += i - begin;
                Tok::Ident(chars[begin..i].iter().collect())
            } else if let Some(sym) = SYMBOLS.iter().find(|s| {
                s.chars()
                    .enumerate()
                    .all(|(k, sc)| chars.get(i + k) == Some(&sc))
            }) {
                i += sym.len();
                col += sym.len();
                Tok::Sym(sym)
            } else {
                return Err(syntax(line, col, format!("unexpected character {c:?}")));
            };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

struct RawCobordism {
    name: String,
    source: (String, usize, usize),
    target: (String, usize, usize),
    line: usize,
    column: usize,
    components: Vec<Component>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    branes: BraneSet,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn peek_is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == w)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        syntax(
            t.line,
            t.column,
            format!("expected {expected}, found {}", describe(&t.tok)),
        )
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.peek_is_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.peek_is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, usize, usize)> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, t.line, t.column))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self) -> PResult<(usize, usize, usize)> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok((n, t.line, t.column))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn brane(&mut self) -> PResult<Brane> {
        let (id, line, column) = self.ident("a brane label")?;
        let b = Brane::new(id);
        if !self.branes.contains(&b) {
            return Err(Diagnostic {
                line,
                column,
                kind: DiagnosticKind::Resolve,
                message: format!("brane {b} is not declared (declared: {})", self.branes),
            });
        }
        Ok(b)
    }

    /// A brane label, or `*` when the label is omitted in single-brane mode. `stop`
    /// lists the symbols that may follow a bare keyword.
    fn optional_brane(&mut self, stop: &[&str]) -> PResult<Brane> {
        if stop.iter().any(|s| self.peek_is_sym(s)) {
            if self.branes.is_single_star() {
                return Ok(Brane::star());
            }
            return Err(self.unexpected("a brane label"));
        }
        self.brane()
    }

    fn branes_decl(&mut self) -> PResult<BraneSet> {
        self.word("branes")?;
        let mut names = Vec::new();
        let mut seen = HashSet::new();
        loop {
            let (id, line, column) = self.ident("a brane name")?;
            if !seen.insert(id.clone()) {
                return Err(Diagnostic {
                    line,
                    column,
                    kind: DiagnosticKind::Resolve,
                    message: format!("brane {id} declared twice"),
                });
            }
            names.push(Brane::new(id));
            if self.peek_is_sym(",") {
                self.bump();
            } else {
                break;
            }
        }
        self.sym(";")?;
        Ok(BraneSet::new(names).expect("at least one name parsed"))
    }

    fn cycles(&mut self) -> PResult<Vec<Vec<usize>>> {
        if self.peek_is_word("id") {
            self.bump();
            return Ok(Vec::new());
        }
        if !self.peek_is_sym("(") {
            return Err(self.unexpected("`id` or a cycle"));
        }
        let mut out = Vec::new();
        while self.peek_is_sym("(") {
            self.bump();
            let mut cycle = vec![self.int()?.0];
            while !self.peek_is_sym(")") {
                cycle.push(self.int()?.0);
            }
            self.bump();
            out.push(cycle);
        }
        Ok(out)
    }

    fn object(&mut self) -> PResult<(String, usize, usize, GeneralObject)> {
        self.word("object")?;
        let (name, line, column) = self.ident("an object name")?;
        self.sym("=")?;
        self.sym("[")?;
        let mut entries = Vec::new();
        if !self.peek_is_sym("]") {
            loop {
                let (w, l, c) = self.ident("`O` or `I(`")?;
                match w.as_str() {
                    "O" => entries.push(Entry::Circle),
                    "I" => {
                        self.sym("(")?;
                        let left = self.brane()?;
                        self.sym(",")?;
                        let right = self.brane()?;
                        self.sym(")")?;
                        entries.push(Entry::Interval { left, right });
                    }
                    _ => return Err(syntax(l, c, format!("expected `O` or `I(`, found `{w}`"))),
                }
                if self.peek_is_sym(",") {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.sym("]")?;
        let mut cycles = Vec::new();
        let mut sigma_at = (line, column);
        if self.peek_is_word("sigma") {
            let t = self.bump();
            sigma_at = (t.line, t.column);
            cycles = self.cycles()?;
        }
        self.sym(";")?;
        let obj = GeneralObject::with_cycles(self.branes.clone(), entries, &cycles)
            .map_err(|e| syntax(sigma_at.0, sigma_at.1, format!("object {name}: {e}")))?;
        Ok((name, line, column, obj))
    }

    fn mixed_entry(&mut self) -> PResult<MixedEntry> {
        let (w, l, c) = self.ident("`in`, `out` or `arc`")?;
        let side = match w.as_str() {
            "in" => Side::Incoming,
            "out" => Side::Outgoing,
            "arc" => return Ok(MixedEntry::Arc(self.optional_brane(&[",", "]"])?)),
            _ => {
                return Err(syntax(
                    l,
                    c,
                    format!("expected `in`, `out` or `arc`, found `{w}`"),
                ))
            }
        };
        let index = self.int()?.0;
        let mut reversed = side.default_reversed();
        if self.peek_is_word("rev") {
            self.bump();
            reversed = !reversed;
        }
        Ok(MixedEntry::Interval(IntervalRef {
            side,
            index,
            reversed,
        }))
    }

    fn component(&mut self) -> PResult<Component> {
        self.word("component")?;
        self.sym("{")?;
        self.word("genus")?;
        let (genus, l, c) = self.int()?;
        let genus = u32::try_from(genus).map_err(|_| syntax(l, c, "genus is too large"))?;
        self.sym(";")?;
        let mut boundary = Vec::new();
        while !self.peek_is_sym("}") {
            let (w, l, c) = self.ident("a boundary line or `}`")?;
            let circle = match w.as_str() {
                "in" => BoundaryCircle::InClosed(self.int()?.0),
                "out" => BoundaryCircle::OutClosed(self.int()?.0),
                "window" => BoundaryCircle::Window(self.optional_brane(&[";"])?),
                "mixed" => {
                    self.sym("[")?;
                    let mut cycle = vec![self.mixed_entry()?];
                    while self.peek_is_sym(",") {
                        self.bump();
                        cycle.push(self.mixed_entry()?);
                    }
                    self.sym("]")?;
                    BoundaryCircle::Mixed(cycle)
                }
                _ => {
                    return Err(syntax(
                        l,
                        c,
                        format!("expected `in`, `out`, `window` or `mixed`, found `{w}`"),
                    ))
                }
            };
            self.sym(";")?;
            boundary.push(circle);
        }
        self.sym("}")?;
        Ok(Component::new(genus, boundary))
    }

    fn cobordism(&mut self) -> PResult<RawCobordism> {
        self.word("cobordism")?;
        let (name, line, column) = self.ident("a cobordism name")?;
        self.sym(":")?;
        let source = self.ident("a source object name")?;
        self.sym("->")?;
        let target = self.ident("a target object name")?;
        self.sym("{")?;
        let mut components = Vec::new();
        while !self.peek_is_sym("}") {
            components.push(self.component()?);
        }
        self.sym("}")?;
        Ok(RawCobordism {
            name,
            source,
            target,
            line,
            column,
            components,
        })
    }
}

/// Parses a document. Syntax errors stop at the first problem; resolution and validation
/// problems are all reported.
pub fn parse(text: &str) -> Result<Document, Vec<Diagnostic>> {
    let toks = lex(text).map_err(|d| vec![d])?;
    let mut p = Parser {
        toks,
        pos: 0,
        branes: BraneSet::single(),
    };
    if p.peek_is_word("branes") {
        p.branes = p.branes_decl().map_err(|d| vec![d])?;
    }
    let mut doc = Document::new(p.branes.clone());
    let mut names = HashSet::new();
    let mut raw = Vec::new();
    let mut diags = Vec::new();
    let mut claim = |name: &str, line: usize, column: usize, diags: &mut Vec<Diagnostic>| {
        if !names.insert(name.to_owned()) {
            diags.push(Diagnostic {
                line,
                column,
                kind: DiagnosticKind::Resolve,
                message: format!("name {name} is defined twice"),
            });
        }
    };
    loop {
        if p.peek_is_word("object") {
            let (name, line, column, obj) = p.object().map_err(|d| vec![d])?;
            claim(&name, line, column, &mut diags);
            doc.objects.push((name, obj));
        } else if p.peek_is_word("cobordism") {
            let c = p.cobordism().map_err(|d| vec![d])?;
            claim(&c.name, c.line, c.column, &mut diags);
            raw.push(c);
        } else if p.peek().tok == Tok::Eof {
            break;
        } else {
            return Err(vec![p.unexpected("`object`, `cobordism` or end of input")]);
        }
    }

    for c in raw {
        let mut ends = Vec::new();
        for (name, line, column) in [&c.source, &c.target] {
            match doc.object(name) {
                Some(o) => ends.push(o.clone()),
                None => diags.push(Diagnostic {
                    line: *line,
                    column: *column,
                    kind: DiagnosticKind::Resolve,
                    message: format!("object {name} is not defined"),
                }),
            }
        }
        let [source, target]: [GeneralObject; 2] = match ends.try_into() {
            Ok(pair) => pair,
            Err(_) => continue,
        };
        let cobordism = Cobordism::new(source, target, c.components);
        for v in cobordism.validate() {
            diags.push(Diagnostic {
                line: c.line,
                column: c.column,
                kind: DiagnosticKind::Validate,
                message: format!("cobordism {}: {v}", c.name),
            });
        }
        doc.cobordisms.push(NamedCobordism {
            name: c.name,
            source: c.source.0,
            target: c.target.0,
            cobordism,
        });
    }
    if diags.is_empty() {
        Ok(doc)
    } else {
        Err(diags)
    }
}

/// Parses `id` or a product of cycles such as `(1 2)(3)`.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, Diagnostic> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        branes: BraneSet::single(),
    };
    let cycles = p.cycles()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(cycles)
}
