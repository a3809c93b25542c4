//! Finite categories with an explicit composition table.
//!
//! Objects and arrows are stored in canonical (lexicographic) order and
//! addressed by dense indices. Identity arrows are generated automatically
//! and named `id_<object>`; composites involving an identity are implied and
//! never stored in the table.
//!
//! Composition is written in diagrammatic order internally:
//! `compose(f, g)` is "f then g", defined when `cod(f) == dom(g)`, and has
//! `dom(f)` as its domain. The textual form `h = g . f` maps onto
//! `compose(f, g) = h`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Index of an object in a [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Index of an arrow in a [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

/// Prefix reserved for generated identity arrows.
pub const IDENTITY_PREFIX: &str = "id_";

/// Returns true if `name` is a valid object, arrow or element identifier.
pub fn is_identifier(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

pub fn identity_name(object: &str) -> String {
    format!("{IDENTITY_PREFIX}{object}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Size caps applied when a category is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    /// Counts identities as well as declared arrows.
    pub max_arrows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 64,
            max_arrows: 4096,
        }
    }
}

/// Structural input errors. These are distinct from axiom violations, which
/// are reported by [`validate_category`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier `{0}`")]
    InvalidName(String),
    #[error("duplicate object {0}")]
    DuplicateObject(String),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(String),
    #[error("arrow name {0} uses the reserved `id_` prefix")]
    ReservedName(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("composite {first} then {second} involves an identity and is implied")]
    IdentityComposite { first: String, second: String },
    #[error("composite {first} then {second} is declared twice")]
    DuplicateComposite { first: String, second: String },
    #[error("arrows {first} and {second} are not composable (cod({first}) != dom({second}))")]
    NotComposable { first: String, second: String },
    #[error("category has no objects")]
    Empty,
    #[error("category exceeds size limit: {what} {count} > {limit}")]
    TooLarge {
        what: &'static str,
        count: usize,
        limit: usize,
    },
}

/// Accumulates declarations in any order; [`CategoryBuilder::build`]
/// canonicalises them into a [`FiniteCategory`].
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    object_set: HashSet<String>,
    arrows: Vec<(String, String, String)>,
    arrow_ends: HashMap<String, (String, String)>,
    composites: Vec<(String, String, String)>,
    composite_keys: HashSet<(String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Result<&mut Self, ModelError> {
        if !is_identifier(name) {
            return Err(ModelError::InvalidName(name.to_string()));
        }
        if !self.object_set.insert(name.to_string()) {
            return Err(ModelError::DuplicateObject(name.to_string()));
        }
        self.objects.push(name.to_string());
        Ok(self)
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.object_set.contains(name)
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) -> Result<&mut Self, ModelError> {
        if !is_identifier(name) {
            return Err(ModelError::InvalidName(name.to_string()));
        }
        if name.starts_with(IDENTITY_PREFIX) {
            return Err(ModelError::ReservedName(name.to_string()));
        }
        if self.arrow_ends.contains_key(name) {
            return Err(ModelError::DuplicateArrow(name.to_string()));
        }
        for end in [dom, cod] {
            if !self.has_object(end) {
                return Err(ModelError::UnknownObject(end.to_string()));
            }
        }
        self.arrows
            .push((name.to_string(), dom.to_string(), cod.to_string()));
        self.arrow_ends
            .insert(name.to_string(), (dom.to_string(), cod.to_string()));
        Ok(self)
    }

    /// Declares `compose(first, second) = result`, i.e. `result = second . first`.
    pub fn compose(
        &mut self,
        first: &str,
        second: &str,
        result: &str,
    ) -> Result<&mut Self, ModelError> {
        let dom_cod = |name: &str| -> Result<(String, String), ModelError> {
            if let Some(ends) = self.arrow_ends.get(name) {
                return Ok(ends.clone());
            }
            if let Some(obj) = name.strip_prefix(IDENTITY_PREFIX) {
                if self.has_object(obj) {
                    return Ok((obj.to_string(), obj.to_string()));
                }
            }
            Err(ModelError::UnknownArrow(name.to_string()))
        };
        let (_, first_cod) = dom_cod(first)?;
        let (second_dom, _) = dom_cod(second)?;
        dom_cod(result)?;
        if first.starts_with(IDENTITY_PREFIX) || second.starts_with(IDENTITY_PREFIX) {
            return Err(ModelError::IdentityComposite {
                first: first.to_string(),
                second: second.to_string(),
            });
        }
        if first_cod != second_dom {
            return Err(ModelError::NotComposable {
                first: first.to_string(),
                second: second.to_string(),
            });
        }
        if !self
            .composite_keys
            .insert((first.to_string(), second.to_string()))
        {
            return Err(ModelError::DuplicateComposite {
                first: first.to_string(),
                second: second.to_string(),
            });
        }
        self.composites
            .push((first.to_string(), second.to_string(), result.to_string()));
        Ok(self)
    }

    pub fn build(&self) -> Result<FiniteCategory, ModelError> {
        self.build_with(Limits::default())
    }

    pub fn build_with(&self, limits: Limits) -> Result<FiniteCategory, ModelError> {
        if self.objects.is_empty() {
            return Err(ModelError::Empty);
        }
        if self.objects.len() > limits.max_objects {
            return Err(ModelError::TooLarge {
                what: "objects",
                count: self.objects.len(),
                limit: limits.max_objects,
            });
        }
        let arrow_count = self.objects.len() + self.arrows.len();
        if arrow_count > limits.max_arrows {
            return Err(ModelError::TooLarge {
                what: "arrows",
                count: arrow_count,
                limit: limits.max_arrows,
            });
        }

        let mut objects = self.objects.clone();
        objects.sort();
        let object_index: HashMap<String, ObjId> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId(i)))
            .collect();

        let mut named: Vec<(String, ObjId, ObjId)> = objects
            .iter()
            .map(|o| (identity_name(o), object_index[o], object_index[o]))
            .collect();
        for (name, dom, cod) in &self.arrows {
            named.push((name.clone(), object_index[dom], object_index[cod]));
        }
        named.sort_by(|a, b| a.0.cmp(&b.0));
        // A user arrow cannot collide with an identity because of the prefix rule.
        let arrows: Vec<Arrow> = named
            .into_iter()
            .map(|(name, dom, cod)| Arrow { name, dom, cod })
            .collect();

        let mut table = BTreeMap::new();
        let mut category = FiniteCategory::assemble(objects, arrows, BTreeMap::new());
        for (f, g, h) in &self.composites {
            let f = category.arrow_id(f)?;
            let g = category.arrow_id(g)?;
            let h = category.arrow_id(h)?;
            table.insert((f, g), h);
        }
        category.table = table;
        Ok(category)
    }
}

/// A finite category. Immutable once built; cheap to query.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    table: BTreeMap<(ArrowId, ArrowId), ArrowId>,
    object_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrowId>,
    // homs[dom * n + cod], each sorted by arrow index
    homs: Vec<Vec<ArrowId>>,
    outgoing: Vec<Vec<ArrowId>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows && self.table == other.table
    }
}

impl Eq for FiniteCategory {}

impl FiniteCategory {
    fn assemble(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        table: BTreeMap<(ArrowId, ArrowId), ArrowId>,
    ) -> Self {
        let n = objects.len();
        let object_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId(i)))
            .collect();
        let arrow_index: HashMap<String, ArrowId> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrowId(i)))
            .collect();
        let identities = objects
            .iter()
            .map(|o| arrow_index[&identity_name(o)])
            .collect();
        let mut homs = vec![Vec::new(); n * n];
        let mut outgoing = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom.0 * n + a.cod.0].push(ArrowId(i));
            outgoing[a.dom.0].push(ArrowId(i));
        }
        FiniteCategory {
            objects,
            arrows,
            identities,
            table,
            object_index,
            arrow_index,
            homs,
            outgoing,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow(&self, f: ArrowId) -> &Arrow {
        &self.arrows[f.0]
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.arrows[f.0].name
    }

    pub fn dom(&self, f: ArrowId) -> ObjId {
        self.arrows[f.0].dom
    }

    pub fn cod(&self, f: ArrowId) -> ObjId {
        self.arrows[f.0].cod
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, ModelError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownObject(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, ModelError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownArrow(name.to_string()))
    }

    pub fn identity(&self, x: ObjId) -> ArrowId {
        self.identities[x.0]
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.identities[self.dom(f).0] == f
    }

    /// Explicit (non-identity) composition entries, `((first, second), result)`,
    /// in canonical order.
    pub fn composition_entries(&self) -> impl Iterator<Item = ((ArrowId, ArrowId), ArrowId)> + '_ {
        self.table.iter().map(|(k, v)| (*k, *v))
    }

    /// `first` then `second`. `None` when the pair is not composable or the
    /// table has no entry for it.
    pub fn compose(&self, first: ArrowId, second: ArrowId) -> Option<ArrowId> {
        if self.cod(first) != self.dom(second) {
            return None;
        }
        if self.is_identity(first) {
            return Some(second);
        }
        if self.is_identity(second) {
            return Some(first);
        }
        self.table.get(&(first, second)).copied()
    }

    /// Arrows from `x` to `y`, in canonical order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrowId] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }

    /// Name-based form of [`FiniteCategory::hom`].
    pub fn hom_set(&self, x: &str, y: &str) -> Result<Vec<ArrowId>, ModelError> {
        Ok(self.hom(self.object_id(x)?, self.object_id(y)?).to_vec())
    }

    /// Returns the inverse of `f` if `f` is an isomorphism.
    pub fn inverse(&self, f: ArrowId) -> Option<ArrowId> {
        let (dom, cod) = (self.dom(f), self.cod(f));
        self.hom(cod, dom).iter().copied().find(|&g| {
            self.compose(f, g) == Some(self.identity(dom))
                && self.compose(g, f) == Some(self.identity(cod))
        })
    }

    pub fn is_isomorphism(&self, f: ArrowId) -> bool {
        self.inverse(f).is_some()
    }

    /// Same objects and arrow names, every arrow reversed, composition flipped.
    pub fn opposite(&self) -> FiniteCategory {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                dom: a.cod,
                cod: a.dom,
            })
            .collect();
        let table = self.table.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
        FiniteCategory::assemble(self.objects.clone(), arrows, table)
    }

    /// Copy of this category with the table entry for `(first, second)` set to
    /// `result`. The pair must already be composable; the copy is not validated.
    pub fn with_entry(&self, first: ArrowId, second: ArrowId, result: ArrowId) -> FiniteCategory {
        let mut copy = self.clone();
        copy.table.insert((first, second), result);
        copy
    }

    /// Copy of this category restricted to the objects for which `keep`
    /// returns true. Arrows touching a dropped object and table entries
    /// mentioning them are removed.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> FiniteCategory {
        let mut builder = CategoryBuilder::new();
        for o in self.objects.iter().filter(|o| keep(o)) {
            builder.object(o).expect("names already validated");
        }
        let kept = |f: ArrowId| {
            let a = self.arrow(f);
            keep(&self.objects[a.dom.0]) && keep(&self.objects[a.cod.0])
        };
        for f in self.arrows() {
            if kept(f) && !self.is_identity(f) {
                let a = self.arrow(f);
                builder
                    .arrow(&a.name, &self.objects[a.dom.0], &self.objects[a.cod.0])
                    .expect("arrow already validated");
            }
        }
        for ((f, g), h) in self.composition_entries() {
            if kept(f) && kept(g) && kept(h) {
                builder
                    .compose(self.arrow_name(f), self.arrow_name(g), self.arrow_name(h))
                    .expect("entry already validated");
            }
        }
        builder
            .build_with(Limits {
                max_objects: usize::MAX,
                max_arrows: usize::MAX,
            })
            .expect("restriction of a built category")
    }
}

/// One violated category axiom with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    /// `compose(first, second)` names an arrow of the wrong type.
    Typing {
        first: String,
        second: String,
        result: String,
    },
    /// A composable pair with no table entry.
    Totality { first: String, second: String },
    /// A composite involving an identity that is not the other arrow.
    IdentityLaw { arrow: String, identity: String },
    /// `(f;g);h != f;(g;h)`.
    Associativity {
        f: String,
        g: String,
        h: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::Typing {
                first,
                second,
                result,
            } => write!(
                out,
                "typing: {second} . {first} = {result} has the wrong domain or codomain"
            ),
            CategoryViolation::Totality { first, second } => {
                write!(out, "totality: no entry for {second} . {first}")
            }
            CategoryViolation::IdentityLaw { arrow, identity } => {
                write!(
                    out,
                    "identity law: {arrow} composed with {identity} is not {arrow}"
                )
            }
            CategoryViolation::Associativity {
                f,
                g,
                h,
                left,
                right,
            } => write!(
                out,
                "associativity: ({h} . {g}) . {f} = {left} but {h} . ({g} . {f}) = {right}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<CategoryViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks identity laws, typing, totality and associativity. Every violation
/// is listed, in lexicographic witness order within each axiom.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut violations = Vec::new();
    let name = |f: ArrowId| c.arrow_name(f).to_string();

    for f in c.arrows() {
        let id_dom = c.identity(c.dom(f));
        let id_cod = c.identity(c.cod(f));
        if c.compose(id_dom, f) != Some(f) {
            violations.push(CategoryViolation::IdentityLaw {
                arrow: name(f),
                identity: name(id_dom),
            });
        }
        if c.compose(f, id_cod) != Some(f) {
            violations.push(CategoryViolation::IdentityLaw {
                arrow: name(f),
                identity: name(id_cod),
            });
        }
    }

    for f in c.arrows() {
        for g in c.hom_from(c.cod(f)) {
            match c.compose(f, g) {
                None => {
                    violations.push(CategoryViolation::Totality {
                        first: name(f),
                        second: name(g),
                    });
                }
                Some(h) => {
                    if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                        violations.push(CategoryViolation::Typing {
                            first: name(f),
                            second: name(g),
                            result: name(h),
                        });
                    }
                }
            }
        }
    }

    // Triples whose inner composites are missing were already reported above.
    for f in c.arrows() {
        for g in c.hom_from(c.cod(f)) {
            let Some(fg) = c.compose(f, g) else { continue };
            for h in c.hom_from(c.cod(g)) {
                let left = c.compose(fg, h);
                let right = c.compose(g, h).and_then(|gh| c.compose(f, gh));
                if let (Some(left), Some(right)) = (left, right) {
                    if left != right {
                        violations.push(CategoryViolation::Associativity {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                            left: name(left),
                            right: name(right),
                        });
                    }
                } else if left.is_some() != right.is_some() {
                    // one side undefined because an inner composite is mistyped
                    violations.push(CategoryViolation::Associativity {
                        f: name(f),
                        g: name(g),
                        h: name(h),
                        left: left.map_or_else(|| "undefined".into(), name),
                        right: right.map_or_else(|| "undefined".into(), name),
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

impl FiniteCategory {
    /// All arrows with domain `x`, in canonical order.
    pub fn hom_from(&self, x: ObjId) -> impl Iterator<Item = ArrowId> + '_ {
        self.outgoing[x.0].iter().copied()
    }
}
