//! The line-based `.ump` document format.
//!
//! One record per line, `#` starts a comment, blank lines are ignored.
//! Tokens are separated by spaces or tabs.
//!
//! ```text
//! category <name>
//! object <name>
//! arrow <name> : <obj> -> <obj>
//! compose <h> = <g> . <f>            # h is g after f
//! set <name>
//! element <name>
//! relation <name> on <carrier>
//! preorder <name> on <carrier>
//! pair <a> <b>
//! predicate <name> on <carrier>
//! holds <a>
//! ```
//!
//! `<carrier>` is a set name or `objects-of <category>`. `object`, `arrow`
//! and `compose` attach to the most recent `category`; `element` to the most
//! recent `set`; `pair` to the most recent `relation` or `preorder`; `holds`
//! to the most recent `predicate`. Names must be declared before use, and
//! top-level names share one namespace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::model::{
    is_identifier, validate_category, CategoryBuilder, FiniteCategory, Limits, ModelError,
};
use crate::order::{validate_preorder, BinaryRelation, Carrier, OrderError, Preorder};
use crate::universality::Predicate;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CarrierRef {
    Set(String),
    ObjectsOf(String),
}

impl fmt::Display for CarrierRef {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierRef::Set(name) => write!(out, "{name}"),
            CarrierRef::ObjectsOf(name) => write!(out, "objects-of {name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub carrier: CarrierRef,
    pub relation: BinaryRelation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreorderDecl {
    pub carrier: CarrierRef,
    pub preorder: Preorder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateDecl {
    pub carrier: CarrierRef,
    pub predicate: Predicate,
}

/// Errors from programmatic bundle assembly and name lookup.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("invalid identifier `{0}`")]
    InvalidName(String),
    #[error("unknown {kind} {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("carrier of {0} does not match its declared carrier")]
    CarrierMismatch(String),
}

/// Everything declared in one document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle {
    pub categories: BTreeMap<String, FiniteCategory>,
    pub sets: BTreeMap<String, Carrier>,
    pub relations: BTreeMap<String, RelationDecl>,
    pub preorders: BTreeMap<String, PreorderDecl>,
    pub predicates: BTreeMap<String, PredicateDecl>,
}

fn unknown(kind: &'static str, name: &str) -> BundleError {
    BundleError::Unknown {
        kind,
        name: name.to_string(),
    }
}

impl Bundle {
    pub fn has_name(&self, name: &str) -> bool {
        self.categories.contains_key(name)
            || self.sets.contains_key(name)
            || self.relations.contains_key(name)
            || self.preorders.contains_key(name)
            || self.predicates.contains_key(name)
    }

    fn claim(&self, name: &str) -> Result<(), BundleError> {
        if !is_identifier(name) {
            return Err(BundleError::InvalidName(name.to_string()));
        }
        if self.has_name(name) {
            return Err(BundleError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn category(&self, name: &str) -> Result<&FiniteCategory, BundleError> {
        self.categories
            .get(name)
            .ok_or_else(|| unknown("category", name))
    }

    pub fn set(&self, name: &str) -> Result<&Carrier, BundleError> {
        self.sets.get(name).ok_or_else(|| unknown("set", name))
    }

    pub fn relation(&self, name: &str) -> Result<&BinaryRelation, BundleError> {
        self.relations
            .get(name)
            .map(|d| &d.relation)
            .ok_or_else(|| unknown("relation", name))
    }

    pub fn preorder(&self, name: &str) -> Result<&Preorder, BundleError> {
        self.preorders
            .get(name)
            .map(|d| &d.preorder)
            .ok_or_else(|| unknown("preorder", name))
    }

    pub fn predicate(&self, name: &str) -> Result<&Predicate, BundleError> {
        self.predicates
            .get(name)
            .map(|d| &d.predicate)
            .ok_or_else(|| unknown("predicate", name))
    }

    /// Looks a relation up among relations first, then preorders.
    pub fn any_relation(&self, name: &str) -> Result<&BinaryRelation, BundleError> {
        self.relation(name)
            .or_else(|_| self.preorder(name).map(Preorder::relation))
            .map_err(|_| unknown("relation", name))
    }

    pub fn resolve_carrier(&self, carrier: &CarrierRef) -> Result<Carrier, BundleError> {
        match carrier {
            CarrierRef::Set(name) => self.set(name).cloned(),
            CarrierRef::ObjectsOf(name) => {
                let c = self.category(name)?;
                Ok(Carrier::new(c.object_names().iter().cloned())
                    .expect("object names are distinct identifiers"))
            }
        }
    }

    pub fn add_category(&mut self, name: &str, c: FiniteCategory) -> Result<(), BundleError> {
        self.claim(name)?;
        self.categories.insert(name.to_string(), c);
        Ok(())
    }

    pub fn add_set(&mut self, name: &str, carrier: Carrier) -> Result<(), BundleError> {
        self.claim(name)?;
        self.sets.insert(name.to_string(), carrier);
        Ok(())
    }

    fn check_carrier(
        &self,
        name: &str,
        decl: &CarrierRef,
        actual: &Carrier,
    ) -> Result<(), BundleError> {
        if self.resolve_carrier(decl)? != *actual {
            return Err(BundleError::CarrierMismatch(name.to_string()));
        }
        Ok(())
    }

    pub fn add_relation(
        &mut self,
        name: &str,
        carrier: CarrierRef,
        relation: BinaryRelation,
    ) -> Result<(), BundleError> {
        self.claim(name)?;
        self.check_carrier(name, &carrier, relation.carrier())?;
        self.relations
            .insert(name.to_string(), RelationDecl { carrier, relation });
        Ok(())
    }

    pub fn add_preorder(
        &mut self,
        name: &str,
        carrier: CarrierRef,
        preorder: Preorder,
    ) -> Result<(), BundleError> {
        self.claim(name)?;
        self.check_carrier(name, &carrier, preorder.carrier())?;
        self.preorders
            .insert(name.to_string(), PreorderDecl { carrier, preorder });
        Ok(())
    }

    pub fn add_predicate(
        &mut self,
        name: &str,
        carrier: CarrierRef,
        predicate: Predicate,
    ) -> Result<(), BundleError> {
        self.claim(name)?;
        self.check_carrier(name, &carrier, predicate.carrier())?;
        self.predicates
            .insert(name.to_string(), PredicateDecl { carrier, predicate });
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Unresolved,
    /// A declared category or preorder violates its axioms.
    Axiom,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message} (column {column})")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
    /// Every violation found, for axiom failures.
    pub violations: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    pub limits: Limits,
    /// Largest accepted `set`; relations over it are stored densely.
    pub max_elements: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            limits: Limits::default(),
            max_elements: 4096,
        }
    }
}

/// Parses and validates a document with default limits.
pub fn parse_document(text: &str) -> Result<Bundle, ParseError> {
    parse_document_with(text, ParseOptions::default())
}

pub fn parse_document_with(text: &str, options: ParseOptions) -> Result<Bundle, ParseError> {
    let mut parser = DocParser {
        bundle: Bundle::default(),
        section: Section::None,
        options,
    };
    for (i, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = tokenize(raw, i + 1)?;
        if !tokens.is_empty() {
            parser.record(&Line {
                number: i + 1,
                end_column: raw.find('#').unwrap_or(raw.len()) + 1,
                tokens,
            })?;
        }
    }
    parser.close()?;
    Ok(parser.bundle)
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax,
        message: message.into(),
        violations: Vec::new(),
    }
}

fn unresolved(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Unresolved,
        ..syntax(line, column, message)
    }
}

fn tokenize(raw: &str, line: usize) -> Result<Vec<Token<'_>>, ParseError> {
    let content = match raw.find('#') {
        Some(cut) => &raw[..cut],
        None => raw,
    };
    if let Some((at, ch)) = raw
        .char_indices()
        .find(|&(_, ch)| !(ch == ' ' || ch == '\t' || (' '..='~').contains(&ch)))
    {
        return Err(syntax(
            line,
            at + 1,
            format!("non-printable or non-ASCII character {ch:?}"),
        ));
    }
    let mut tokens = Vec::new();
    let mut start = None;
    for (at, b) in content.bytes().enumerate().chain([(content.len(), b' ')]) {
        let blank = b == b' ' || b == b'\t';
        match (start, blank) {
            (None, false) => start = Some(at),
            (Some(s), true) => {
                tokens.push(Token {
                    text: &content[s..at],
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    Ok(tokens)
}

enum Section {
    None,
    Category {
        name: String,
        line: usize,
        builder: CategoryBuilder,
    },
    Set {
        name: String,
        line: usize,
        elements: BTreeSet<String>,
    },
    Relation {
        name: String,
        line: usize,
        is_preorder: bool,
        carrier_ref: CarrierRef,
        relation: BinaryRelation,
    },
    Predicate {
        name: String,
        line: usize,
        carrier_ref: CarrierRef,
        members: BTreeSet<usize>,
        carrier: Carrier,
    },
}

struct DocParser {
    bundle: Bundle,
    section: Section,
    options: ParseOptions,
}

impl Line<'_> {
    fn end(&self) -> usize {
        self.end_column
    }

    /// Requires exactly `n` tokens.
    fn arity(&self, n: usize, shape: &str) -> Result<(), ParseError> {
        match self.tokens.len().cmp(&n) {
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => Err(syntax(
                self.number,
                self.end(),
                format!("expected `{shape}`, line ends early"),
            )),
            std::cmp::Ordering::Greater => Err(syntax(
                self.number,
                self.tokens[n].column,
                format!("expected end of line after `{shape}`"),
            )),
        }
    }

    fn ident(&self, i: usize) -> Result<&str, ParseError> {
        let tok = self.tokens[i];
        if is_identifier(tok.text) {
            Ok(tok.text)
        } else {
            Err(syntax(
                self.number,
                tok.column,
                format!("expected identifier, found `{}`", tok.text),
            ))
        }
    }

    fn punct(&self, i: usize, expected: &str) -> Result<(), ParseError> {
        let tok = self.tokens[i];
        if tok.text == expected {
            Ok(())
        } else {
            Err(syntax(
                self.number,
                tok.column,
                format!("expected `{expected}`, found `{}`", tok.text),
            ))
        }
    }

    fn column(&self, i: usize) -> usize {
        self.tokens[i].column
    }

    /// Matches tokens after the keyword against `slots` (`None` = identifier,
    /// `Some(p)` = literal punctuation) and returns the identifiers.
    fn shape(&self, slots: &[Option<&str>], shape: &str) -> Result<Vec<&str>, ParseError> {
        let mut idents = Vec::new();
        for (k, slot) in slots.iter().enumerate() {
            let i = k + 1;
            if i >= self.tokens.len() {
                return Err(syntax(
                    self.number,
                    self.end(),
                    format!("expected `{shape}`, line ends early"),
                ));
            }
            match slot {
                None => idents.push(self.ident(i)?),
                Some(p) => self.punct(i, p)?,
            }
        }
        self.arity(slots.len() + 1, shape)?;
        Ok(idents)
    }
}

impl DocParser {
    fn record(&mut self, line: &Line<'_>) -> Result<(), ParseError> {
        let keyword = line.tokens[0].text;
        match keyword {
            "category" | "set" => {
                line.shape(&[None], &format!("{keyword} <name>"))?;
                let name = self.header_name(line)?;
                self.close()?;
                self.section = if keyword == "category" {
                    Section::Category {
                        name,
                        line: line.number,
                        builder: CategoryBuilder::new(),
                    }
                } else {
                    Section::Set {
                        name,
                        line: line.number,
                        elements: BTreeSet::new(),
                    }
                };
                Ok(())
            }
            "relation" | "preorder" | "predicate" => {
                let shape = format!("{keyword} <name> on <carrier>");
                if line.tokens.len() < 4 {
                    line.shape(&[None, Some("on"), None], &shape)?;
                }
                let name = self.header_name(line)?;
                line.punct(2, "on")?;
                self.close()?;
                let (carrier_ref, carrier) = self.carrier(line, 3, &shape)?;
                self.section = if keyword == "predicate" {
                    Section::Predicate {
                        name,
                        line: line.number,
                        carrier_ref,
                        members: BTreeSet::new(),
                        carrier,
                    }
                } else {
                    Section::Relation {
                        name,
                        line: line.number,
                        is_preorder: keyword == "preorder",
                        carrier_ref,
                        relation: BinaryRelation::empty(carrier),
                    }
                };
                Ok(())
            }
            "object" => {
                let name = line.shape(&[None], "object <name>")?[0];
                let Section::Category { builder, .. } = &mut self.section else {
                    return Err(outside(line, "object", "category"));
                };
                builder
                    .object(name)
                    .map(|_| ())
                    .map_err(|e| model_error(line, 1, e))
            }
            "arrow" => {
                let ids = line.shape(
                    &[None, Some(":"), None, Some("->"), None],
                    "arrow <name> : <obj> -> <obj>",
                )?;
                let (name, dom, cod) = (ids[0], ids[1], ids[2]);
                let Section::Category { builder, .. } = &mut self.section else {
                    return Err(outside(line, "arrow", "category"));
                };
                if !builder.has_object(dom) {
                    return Err(unresolved(
                        line.number,
                        line.column(3),
                        format!("unknown object {dom}"),
                    ));
                }
                if !builder.has_object(cod) {
                    return Err(unresolved(
                        line.number,
                        line.column(5),
                        format!("unknown object {cod}"),
                    ));
                }
                builder
                    .arrow(name, dom, cod)
                    .map(|_| ())
                    .map_err(|e| model_error(line, 1, e))
            }
            "compose" => {
                let ids = line.shape(
                    &[None, Some("="), None, Some("."), None],
                    "compose <name> = <name> . <name>",
                )?;
                let (result, second, first) = (ids[0], ids[1], ids[2]);
                let Section::Category { builder, .. } = &mut self.section else {
                    return Err(outside(line, "compose", "category"));
                };
                builder
                    .compose(first, second, result)
                    .map(|_| ())
                    .map_err(|e| {
                        let column = match &e {
                            ModelError::UnknownArrow(a) if a == result => line.column(1),
                            ModelError::UnknownArrow(a) if a == second => line.column(3),
                            ModelError::UnknownArrow(_) => line.column(5),
                            _ => line.column(1),
                        };
                        let mut err = model_error(line, 1, e);
                        err.column = column;
                        err
                    })
            }
            "element" => {
                let name = line.shape(&[None], "element <name>")?[0];
                let Section::Set { elements, .. } = &mut self.section else {
                    return Err(outside(line, "element", "set"));
                };
                if elements.len() >= self.options.max_elements {
                    return Err(syntax(
                        line.number,
                        line.column(0),
                        format!("set exceeds {} elements", self.options.max_elements),
                    ));
                }
                if !elements.insert(name.to_string()) {
                    return Err(syntax(
                        line.number,
                        line.column(1),
                        format!("duplicate element {name}"),
                    ));
                }
                Ok(())
            }
            "pair" => {
                let ids = line.shape(&[None, None], "pair <a> <b>")?;
                let (a, b) = (ids[0], ids[1]);
                let Section::Relation { relation, .. } = &mut self.section else {
                    return Err(outside(line, "pair", "relation or preorder"));
                };
                let index = |i: usize, e: &str| {
                    relation.carrier().index_of(e).map_err(|_| {
                        unresolved(line.number, line.column(i), format!("unknown element {e}"))
                    })
                };
                let (ia, ib) = (index(1, a)?, index(2, b)?);
                if relation.holds(ia, ib) {
                    return Err(syntax(
                        line.number,
                        line.column(1),
                        format!("duplicate pair {a} {b}"),
                    ));
                }
                relation.insert(ia, ib);
                Ok(())
            }
            "holds" => {
                let a = line.shape(&[None], "holds <element>")?[0];
                let Section::Predicate {
                    members, carrier, ..
                } = &mut self.section
                else {
                    return Err(outside(line, "holds", "predicate"));
                };
                let i = carrier.index_of(a).map_err(|_| {
                    unresolved(line.number, line.column(1), format!("unknown element {a}"))
                })?;
                if !members.insert(i) {
                    return Err(syntax(
                        line.number,
                        line.column(1),
                        format!("duplicate holds {a}"),
                    ));
                }
                Ok(())
            }
            other => Err(syntax(
                line.number,
                line.column(0),
                format!("expected a record keyword, found `{other}`"),
            )),
        }
    }

    fn header_name(&self, line: &Line<'_>) -> Result<String, ParseError> {
        let name = line.ident(1)?;
        let pending = match &self.section {
            Section::Category { name, .. }
            | Section::Set { name, .. }
            | Section::Relation { name, .. }
            | Section::Predicate { name, .. } => Some(name.as_str()),
            Section::None => None,
        };
        if self.bundle.has_name(name) || pending == Some(name) {
            return Err(syntax(
                line.number,
                line.column(1),
                format!("duplicate name {name}"),
            ));
        }
        Ok(name.to_string())
    }

    fn carrier(
        &self,
        line: &Line<'_>,
        at: usize,
        shape: &str,
    ) -> Result<(CarrierRef, Carrier), ParseError> {
        let carrier_ref = if line.tokens[at].text == "objects-of" {
            line.arity(at + 2, shape)?;
            let cat = line.ident(at + 1)?;
            if !self.bundle.categories.contains_key(cat) {
                return Err(unresolved(
                    line.number,
                    line.column(at + 1),
                    format!("unknown category {cat}"),
                ));
            }
            CarrierRef::ObjectsOf(cat.to_string())
        } else {
            line.arity(at + 1, shape)?;
            let set = line.ident(at)?;
            if !self.bundle.sets.contains_key(set) {
                return Err(unresolved(
                    line.number,
                    line.column(at),
                    format!("unknown set {set}"),
                ));
            }
            CarrierRef::Set(set.to_string())
        };
        let carrier = self
            .bundle
            .resolve_carrier(&carrier_ref)
            .expect("carrier checked above");
        Ok((carrier_ref, carrier))
    }

    /// Finishes the open section, validating it.
    fn close(&mut self) -> Result<(), ParseError> {
        let section = std::mem::replace(&mut self.section, Section::None);
        let insert_err = |line: usize, e: BundleError| syntax(line, 1, e.to_string());
        match section {
            Section::None => Ok(()),
            Section::Category {
                name,
                line,
                builder,
            } => {
                let c = builder
                    .build_with(self.options.limits)
                    .map_err(|e| syntax(line, 1, format!("category {name}: {e}")))?;
                let report = validate_category(&c);
                if !report.is_valid() {
                    return Err(axiom(
                        line,
                        format!("category {name}"),
                        report.violations.iter().map(ToString::to_string).collect(),
                    ));
                }
                self.bundle
                    .add_category(&name, c)
                    .map_err(|e| insert_err(line, e))
            }
            Section::Set {
                name,
                line,
                elements,
            } => {
                let carrier = Carrier::new(elements).map_err(|e| match e {
                    OrderError::EmptyCarrier => {
                        syntax(line, 1, format!("set {name} has no elements"))
                    }
                    other => syntax(line, 1, other.to_string()),
                })?;
                self.bundle
                    .add_set(&name, carrier)
                    .map_err(|e| insert_err(line, e))
            }
            Section::Relation {
                name,
                line,
                is_preorder,
                carrier_ref,
                relation,
            } => {
                if !is_preorder {
                    return self
                        .bundle
                        .add_relation(&name, carrier_ref, relation)
                        .map_err(|e| insert_err(line, e));
                }
                let report = validate_preorder(&relation);
                if !report.is_valid() {
                    return Err(axiom(
                        line,
                        format!("preorder {name}"),
                        report.violations.iter().map(ToString::to_string).collect(),
                    ));
                }
                let preorder = Preorder::new(relation).expect("validated above");
                self.bundle
                    .add_preorder(&name, carrier_ref, preorder)
                    .map_err(|e| insert_err(line, e))
            }
            Section::Predicate {
                name,
                line,
                carrier_ref,
                members,
                carrier,
            } => {
                let predicate = Predicate::from_fn(carrier, |i| members.contains(&i));
                self.bundle
                    .add_predicate(&name, carrier_ref, predicate)
                    .map_err(|e| insert_err(line, e))
            }
        }
    }
}

fn axiom(line: usize, what: String, violations: Vec<String>) -> ParseError {
    ParseError {
        line,
        column: 1,
        kind: ParseErrorKind::Axiom,
        message: format!(
            "{what} violates its axioms: {}{}",
            violations[0],
            if violations.len() > 1 {
                format!(" (and {} more)", violations.len() - 1)
            } else {
                String::new()
            }
        ),
        violations,
    }
}

fn outside(line: &Line<'_>, record: &str, section: &str) -> ParseError {
    syntax(
        line.number,
        line.column(0),
        format!("`{record}` outside of a {section} block"),
    )
}

fn model_error(line: &Line<'_>, token: usize, e: ModelError) -> ParseError {
    let kind = match e {
        ModelError::UnknownObject(_) | ModelError::UnknownArrow(_) => ParseErrorKind::Unresolved,
        _ => ParseErrorKind::Syntax,
    };
    ParseError {
        line: line.number,
        column: line.column(token),
        kind,
        message: e.to_string(),
        violations: Vec::new(),
    }
}

/// Canonical text: categories, sets, relations, preorders, predicates, each
/// sorted by name, one blank line between blocks.
pub fn serialize(bundle: &Bundle) -> String {
    let mut blocks: Vec<String> = Vec::new();
    for (name, c) in &bundle.categories {
        let mut out = format!("category {name}\n");
        for o in c.object_names() {
            let _ = writeln!(out, "object {o}");
        }
        for f in c.arrows().filter(|&f| !c.is_identity(f)) {
            let _ = writeln!(
                out,
                "arrow {} : {} -> {}",
                c.arrow_name(f),
                c.object_name(c.dom(f)),
                c.object_name(c.cod(f))
            );
        }
        for ((f, g), h) in c.composition_entries() {
            let _ = writeln!(
                out,
                "compose {} = {} . {}",
                c.arrow_name(h),
                c.arrow_name(g),
                c.arrow_name(f)
            );
        }
        blocks.push(out);
    }
    for (name, carrier) in &bundle.sets {
        let mut out = format!("set {name}\n");
        for e in carrier.elements() {
            let _ = writeln!(out, "element {e}");
        }
        blocks.push(out);
    }
    let pairs = |out: &mut String, r: &BinaryRelation| {
        for (a, b) in r.pairs() {
            let _ = writeln!(out, "pair {} {}", r.carrier().name(a), r.carrier().name(b));
        }
    };
    for (name, decl) in &bundle.relations {
        let mut out = format!("relation {name} on {}\n", decl.carrier);
        pairs(&mut out, &decl.relation);
        blocks.push(out);
    }
    for (name, decl) in &bundle.preorders {
        let mut out = format!("preorder {name} on {}\n", decl.carrier);
        pairs(&mut out, decl.preorder.relation());
        blocks.push(out);
    }
    for (name, decl) in &bundle.predicates {
        let mut out = format!("predicate {name} on {}\n", decl.carrier);
        let p = &decl.predicate;
        for i in p.members() {
            let _ = writeln!(out, "holds {}", p.carrier().name(i));
        }
        blocks.push(out);
    }
    blocks.join("\n")
}
