//! Finite binary relations, preorders, induced equivalence and quotient orders.
//!
//! Relations are extensional: a carrier of named elements plus an explicit
//! incidence matrix. Carriers are kept in lexicographic order so that every
//! witness and serialization is deterministic.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::is_identifier;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("invalid element name `{0}`")]
    InvalidName(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("carrier mismatch")]
    CarrierMismatch,
    #[error("not a preorder: {0}")]
    NotPreorder(PreorderViolation),
    #[error("not a partial order on blocks: {0}")]
    NotPartialOrder(PartialOrderViolation),
    #[error("blocks do not partition the carrier: {0}")]
    NotPartition(String),
}

/// A finite, non-empty, lexicographically ordered set of element names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    elements: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(elements: I) -> Result<Carrier, OrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(OrderError::EmptyCarrier);
        }
        if let Some(bad) = elements.iter().find(|e| !is_identifier(e)) {
            return Err(OrderError::InvalidName(bad.clone()));
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateElement(w[0].clone()));
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Carrier { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OrderError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

/// A binary relation on a [`Carrier`], stored as a dense incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRelation {
    carrier: Carrier,
    matrix: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(carrier: Carrier) -> Self {
        let n = carrier.len();
        BinaryRelation {
            carrier,
            matrix: vec![false; n * n],
        }
    }

    pub fn from_fn(carrier: Carrier, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let n = carrier.len();
        let mut matrix = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                matrix[a * n + b] = related(a, b);
            }
        }
        BinaryRelation { carrier, matrix }
    }

    pub fn from_pairs<'a>(
        carrier: Carrier,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, OrderError> {
        let mut r = BinaryRelation::empty(carrier);
        for (a, b) in pairs {
            let a = r.carrier.index_of(a)?;
            let b = r.carrier.index_of(b)?;
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn equality(carrier: Carrier) -> Self {
        BinaryRelation::from_fn(carrier, |a, b| a == b)
    }

    pub fn total(carrier: Carrier) -> Self {
        BinaryRelation::from_fn(carrier, |_, _| true)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.carrier.len() + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let n = self.carrier.len();
        self.matrix[a * n + b] = true;
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.carrier.len();
        (0..n * n)
            .filter(move |&k| self.matrix[k])
            .map(move |k| (k / n, k % n))
    }

    pub fn pair_count(&self) -> usize {
        self.matrix.iter().filter(|&&b| b).count()
    }

    /// Transposes every pair.
    pub fn reverse(&self) -> BinaryRelation {
        let n = self.carrier.len();
        BinaryRelation::from_fn(self.carrier.clone(), |a, b| self.matrix[b * n + a])
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> BinaryRelation {
        let n = self.carrier.len();
        let mut m = self.matrix.clone();
        for a in 0..n {
            m[a * n + a] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        BinaryRelation {
            carrier: self.carrier.clone(),
            matrix: m,
        }
    }

    fn first_irreflexive(&self) -> Option<usize> {
        (0..self.len()).find(|&a| !self.holds(a, a))
    }

    fn intransitive_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| {
            (0..n)
                .filter(move |&b| self.holds(a, b))
                .flat_map(move |b| {
                    (0..n)
                        .filter(move |&c| self.holds(b, c) && !self.holds(a, c))
                        .map(move |c| (a, b, c))
                })
        })
    }

    fn first_antisymmetry_break(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.holds(a, b) && self.holds(b, a))
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (k, (a, b)) in self.pairs().enumerate() {
            if k > 0 {
                write!(out, ", ")?;
            }
            write!(out, "({}, {})", self.carrier.name(a), self.carrier.name(b))?;
        }
        write!(out, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreorderViolation {
    NotReflexive {
        element: String,
    },
    /// `(a, b)` and `(b, c)` present, `(a, c)` missing.
    NotTransitive {
        a: String,
        b: String,
        c: String,
    },
}

impl fmt::Display for PreorderViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreorderViolation::NotReflexive { element } => {
                write!(out, "reflexivity: ({element}, {element}) missing")
            }
            PreorderViolation::NotTransitive { a, b, c } => {
                write!(
                    out,
                    "transitivity: ({a}, {b}) and ({b}, {c}) present but ({a}, {c}) missing"
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialOrderViolation {
    Preorder(PreorderViolation),
    /// Two distinct blocks comparable both ways.
    NotAntisymmetric {
        a: String,
        b: String,
    },
}

impl fmt::Display for PartialOrderViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialOrderViolation::Preorder(v) => v.fmt(out),
            PartialOrderViolation::NotAntisymmetric { a, b } => {
                write!(
                    out,
                    "antisymmetry: {a} <= {b} and {b} <= {a} for distinct blocks"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreorderReport {
    pub violations: Vec<PreorderViolation>,
}

impl PreorderReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every missing reflexive pair, then every transitivity failure in
/// lexicographic `(a, b, c)` order.
pub fn validate_preorder(r: &BinaryRelation) -> PreorderReport {
    let name = |i: usize| r.carrier.name(i).to_string();
    let mut violations: Vec<PreorderViolation> = (0..r.len())
        .filter(|&a| !r.holds(a, a))
        .map(|a| PreorderViolation::NotReflexive { element: name(a) })
        .collect();
    violations.extend(
        r.intransitive_triples()
            .map(|(a, b, c)| PreorderViolation::NotTransitive {
                a: name(a),
                b: name(b),
                c: name(c),
            }),
    );
    PreorderReport { violations }
}

/// A validated preorder (reflexive and transitive relation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder(BinaryRelation);

impl Preorder {
    pub fn new(r: BinaryRelation) -> Result<Preorder, OrderError> {
        if let Some(a) = r.first_irreflexive() {
            return Err(OrderError::NotPreorder(PreorderViolation::NotReflexive {
                element: r.carrier.name(a).to_string(),
            }));
        }
        if let Some((a, b, c)) = r.intransitive_triples().next() {
            let name = |i: usize| r.carrier.name(i).to_string();
            return Err(OrderError::NotPreorder(PreorderViolation::NotTransitive {
                a: name(a),
                b: name(b),
                c: name(c),
            }));
        }
        Ok(Preorder(r))
    }

    pub fn equality(carrier: Carrier) -> Preorder {
        Preorder(BinaryRelation::equality(carrier))
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.0
    }

    pub fn into_relation(self) -> BinaryRelation {
        self.0
    }

    pub fn carrier(&self) -> &Carrier {
        self.0.carrier()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.0.holds(a, b)
    }

    /// `a ≈ b`: comparable both ways.
    #[inline]
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.0.holds(a, b) && self.0.holds(b, a)
    }

    /// The dual preorder.
    pub fn reverse(&self) -> Preorder {
        Preorder(self.0.reverse())
    }

    /// Partition of the carrier into classes of mutually comparable elements.
    ///
    /// Panics if the induced relation is not an equivalence, which cannot
    /// happen for a validated preorder.
    pub fn induced_equivalence(&self) -> EquivalenceClasses {
        let n = self.0.len();
        let eq = BinaryRelation::from_fn(self.carrier().clone(), |a, b| self.equivalent(a, b));
        let symmetric = (0..n).all(|a| (0..n).all(|b| eq.holds(a, b) == eq.holds(b, a)));
        assert!(
            eq.first_irreflexive().is_none()
                && symmetric
                && eq.intransitive_triples().next().is_none(),
            "induced relation of a preorder is not an equivalence"
        );

        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if block_of[a] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let block: Vec<usize> = (a..n).filter(|&b| eq.holds(a, b)).collect();
            for &b in &block {
                block_of[b] = id;
            }
            blocks.push(block);
        }
        EquivalenceClasses {
            carrier: self.carrier().clone(),
            blocks,
            block_of,
        }
    }
}

/// A partition of a carrier. Blocks are sorted internally and ordered by
/// their least element, so block `i`'s representative is its first element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    carrier: Carrier,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl EquivalenceClasses {
    /// Builds a partition from named blocks; they must be disjoint, non-empty
    /// and cover the carrier.
    pub fn new(carrier: Carrier, named_blocks: &[Vec<&str>]) -> Result<Self, OrderError> {
        let n = carrier.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(named_blocks.len());
        for named in named_blocks {
            if named.is_empty() {
                return Err(OrderError::NotPartition("empty block".into()));
            }
            let mut block = Vec::with_capacity(named.len());
            for e in named {
                let i = carrier.index_of(e)?;
                if block_of[i] != usize::MAX {
                    return Err(OrderError::NotPartition(format!("{e} appears twice")));
                }
                block_of[i] = 0;
                block.push(i);
            }
            block.sort_unstable();
            blocks.push(block);
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(OrderError::NotPartition(format!(
                "{} is in no block",
                carrier.name(i)
            )));
        }
        blocks.sort_by_key(|b| b[0]);
        for (id, block) in blocks.iter().enumerate() {
            for &e in block {
                block_of[e] = id;
            }
        }
        Ok(EquivalenceClasses {
            carrier,
            blocks,
            block_of,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, element: usize) -> usize {
        self.block_of[element]
    }

    /// Blocks as lists of element names.
    pub fn named_blocks(&self) -> Vec<Vec<&str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&e| self.carrier.name(e)).collect())
            .collect()
    }

    /// Carrier whose element `i` stands for block `i`, named after the
    /// block's least element.
    pub fn block_carrier(&self) -> Carrier {
        Carrier::new(
            self.blocks
                .iter()
                .map(|b| self.carrier.name(b[0]).to_string()),
        )
        .expect("representatives are distinct identifiers")
    }
}

/// Lifts a partial order on blocks to the preorder `a ≼ b ⟺ [a] ≤ [b]`.
///
/// `leq` must be a relation on [`EquivalenceClasses::block_carrier`] and a
/// partial order there.
pub fn preorder_from_quotient_order(
    classes: &EquivalenceClasses,
    leq: &BinaryRelation,
) -> Result<Preorder, OrderError> {
    if *leq.carrier() != classes.block_carrier() {
        return Err(OrderError::CarrierMismatch);
    }
    let name = |i: usize| leq.carrier.name(i).to_string();
    if let Some(a) = leq.first_irreflexive() {
        return Err(OrderError::NotPartialOrder(
            PartialOrderViolation::Preorder(PreorderViolation::NotReflexive { element: name(a) }),
        ));
    }
    if let Some((a, b, c)) = leq.intransitive_triples().next() {
        return Err(OrderError::NotPartialOrder(
            PartialOrderViolation::Preorder(PreorderViolation::NotTransitive {
                a: name(a),
                b: name(b),
                c: name(c),
            }),
        ));
    }
    if let Some((a, b)) = leq.first_antisymmetry_break() {
        return Err(OrderError::NotPartialOrder(
            PartialOrderViolation::NotAntisymmetric {
                a: name(a),
                b: name(b),
            },
        ));
    }
    let r = BinaryRelation::from_fn(classes.carrier.clone(), |a, b| {
        leq.holds(classes.block_of[a], classes.block_of[b])
    });
    Ok(Preorder::new(r).expect("lift of a partial order is a preorder"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carrier(names: &[&str]) -> Carrier {
        Carrier::new(names.iter().copied()).unwrap()
    }

    fn rel(names: &[&str], pairs: &[(&str, &str)]) -> BinaryRelation {
        BinaryRelation::from_pairs(carrier(names), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn carrier_invariants() {
        assert_eq!(
            Carrier::new(Vec::<String>::new()),
            Err(OrderError::EmptyCarrier)
        );
        assert!(matches!(
            Carrier::new(["a", "a"]),
            Err(OrderError::DuplicateElement(_))
        ));
        assert!(matches!(
            Carrier::new(["a b"]),
            Err(OrderError::InvalidName(_))
        ));
        assert_eq!(carrier(&["c", "a", "b"]).elements(), ["a", "b", "c"]);
    }

    #[test]
    fn singleton_reflexive_is_preorder() {
        assert!(validate_preorder(&rel(&["a"], &[("a", "a")])).is_valid());
    }

    #[test]
    fn two_element_total_is_preorder() {
        let r = rel(
            &["a", "b"],
            &[("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")],
        );
        assert!(validate_preorder(&r).is_valid());
        let classes = Preorder::new(r).unwrap().induced_equivalence();
        assert_eq!(classes.named_blocks(), vec![vec!["a", "b"]]);
    }

    #[test]
    fn missing_transitive_pair_is_reported() {
        let r = rel(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
        );
        assert_eq!(
            validate_preorder(&r).violations,
            vec![PreorderViolation::NotTransitive {
                a: "a".into(),
                b: "b".into(),
                c: "c".into()
            }]
        );
        assert!(matches!(Preorder::new(r), Err(OrderError::NotPreorder(_))));
    }

    #[test]
    fn missing_reflexive_pair_is_reported() {
        let report = validate_preorder(&rel(&["a", "b"], &[("a", "a")]));
        assert_eq!(
            report.violations,
            vec![PreorderViolation::NotReflexive {
                element: "b".into()
            }]
        );
    }

    #[test]
    fn equality_preorder_has_singleton_blocks() {
        let p = Preorder::equality(carrier(&["a", "b", "c"]));
        assert_eq!(
            p.induced_equivalence().named_blocks(),
            vec![vec!["a"], vec!["b"], vec!["c"]]
        );
    }

    fn ab_below_c() -> Preorder {
        Preorder::new(rel(
            &["a", "b", "c"],
            &[
                ("a", "a"),
                ("b", "b"),
                ("c", "c"),
                ("a", "b"),
                ("b", "a"),
                ("a", "c"),
                ("b", "c"),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn mutual_comparability_merges_blocks() {
        let classes = ab_below_c().induced_equivalence();
        assert_eq!(classes.named_blocks(), vec![vec!["a", "b"], vec!["c"]]);
    }

    #[test]
    fn quotient_round_trip() {
        let c = carrier(&["a", "b", "c"]);
        let classes = EquivalenceClasses::new(c, &[vec!["c"], vec!["b", "a"]]).unwrap();
        let blocks = classes.block_carrier();
        assert_eq!(blocks.elements(), ["a", "c"]);
        let leq = BinaryRelation::from_pairs(blocks, [("a", "a"), ("c", "c"), ("a", "c")]).unwrap();
        let p = preorder_from_quotient_order(&classes, &leq).unwrap();
        assert_eq!(p, ab_below_c());
        assert_eq!(p.induced_equivalence(), classes);
    }

    #[test]
    fn singleton_quotient_gives_equality() {
        let classes = EquivalenceClasses::new(carrier(&["a"]), &[vec!["a"]]).unwrap();
        let leq = BinaryRelation::equality(classes.block_carrier());
        let p = preorder_from_quotient_order(&classes, &leq).unwrap();
        assert_eq!(p, Preorder::equality(carrier(&["a"])));
    }

    #[test]
    fn quotient_rejects_non_antisymmetric_order() {
        let classes =
            EquivalenceClasses::new(carrier(&["a", "b"]), &[vec!["a"], vec!["b"]]).unwrap();
        let leq = BinaryRelation::total(classes.block_carrier());
        assert_eq!(
            preorder_from_quotient_order(&classes, &leq),
            Err(OrderError::NotPartialOrder(
                PartialOrderViolation::NotAntisymmetric {
                    a: "a".into(),
                    b: "b".into()
                }
            ))
        );
    }

    #[test]
    fn partition_must_cover() {
        assert!(matches!(
            EquivalenceClasses::new(carrier(&["a", "b"]), &[vec!["a"]]),
            Err(OrderError::NotPartition(_))
        ));
        assert!(matches!(
            EquivalenceClasses::new(carrier(&["a", "b"]), &[vec!["a", "b"], vec!["a"]]),
            Err(OrderError::NotPartition(_))
        ));
    }

    #[test]
    fn reverse_cases() {
        let eq = BinaryRelation::equality(carrier(&["a", "b"]));
        assert_eq!(eq.reverse(), eq);
        let r = rel(&["a", "b"], &[("a", "b")]);
        assert_eq!(r.reverse(), rel(&["a", "b"], &[("b", "a")]));
        assert_eq!(r.reverse().reverse(), r);

        let five = carrier(&["1", "2", "3", "4", "5"]);
        let le = BinaryRelation::from_fn(five.clone(), |a, b| a <= b);
        let ge = BinaryRelation::from_fn(five, |a, b| a >= b);
        assert_eq!(le.reverse(), ge);
        assert!(validate_preorder(&le.reverse()).is_valid());
    }

    #[test]
    fn closure_is_preorder() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let closed = r.reflexive_transitive_closure();
        assert!(validate_preorder(&closed).is_valid());
        assert!(closed.holds(0, 2));
        assert_eq!(
            closed.to_string(),
            "{(a, a), (a, b), (a, c), (b, b), (b, c), (c, c)}"
        );
    }
}
