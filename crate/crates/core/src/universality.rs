//! Decision procedures for universality of an element relative to a relation,
//! a preorder or a property, plus the unique-arrow form over a category.
//!
//! All checks share one shape. For a candidate `u`:
//!
//! * membership: `u` is eligible (only property forms restrict this) and
//!   `∀x: R(x, u)`;
//! * uniqueness: every other eligible `v` with `∀x: R(x, v)` is "the same"
//!   as `u`, where sameness is equality, induced equivalence `≈`, or the
//!   existence of exactly one arrow `v → u`.
//!
//! Witnesses are always the first offender in carrier order.

use std::fmt;

use thiserror::Error;

use crate::model::{ArrowId, FiniteCategory, ModelError, ObjId};
use crate::order::{BinaryRelation, Carrier, OrderError, Preorder};
use crate::phi::Phi;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UniversalityError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A verification that the theory guarantees has failed.
    #[error("internal consistency check failed: {0}")]
    EngineBug(String),
}

/// A subset of a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    carrier: Carrier,
    holds: Vec<bool>,
}

impl Predicate {
    pub fn new<'a>(
        carrier: Carrier,
        members: impl IntoIterator<Item = &'a str>,
    ) -> Result<Predicate, OrderError> {
        let mut holds = vec![false; carrier.len()];
        for m in members {
            holds[carrier.index_of(m)?] = true;
        }
        Ok(Predicate { carrier, holds })
    }

    pub fn from_fn(carrier: Carrier, f: impl Fn(usize) -> bool) -> Predicate {
        let holds = (0..carrier.len()).map(f).collect();
        Predicate { carrier, holds }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    #[inline]
    pub fn holds(&self, i: usize) -> bool {
        self.holds[i]
    }

    /// Member indices in carrier order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.holds.len()).filter(|&i| self.holds[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailingClause {
    Membership,
    Uniqueness,
    None,
}

impl FailingClause {
    pub fn as_str(self) -> Option<&'static str> {
        match self {
            FailingClause::Membership => Some("membership"),
            FailingClause::Uniqueness => Some("uniqueness"),
            FailingClause::None => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalityVerdict {
    pub holds: bool,
    pub failing_clause: FailingClause,
    /// The `x` breaking membership or the `v` breaking uniqueness.
    pub counterexample: Option<String>,
    /// Other eligible elements that also satisfy `∀x: R(x, ·)`.
    pub rival_witnesses: Vec<String>,
}

impl fmt::Display for UniversalityVerdict {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(out, "holds")?;
        } else {
            write!(
                out,
                "fails ({} clause, counterexample {})",
                self.failing_clause.as_str().unwrap_or("none"),
                self.counterexample.as_deref().unwrap_or("-")
            )?;
        }
        if !self.rival_witnesses.is_empty() {
            write!(out, "; rivals: {}", self.rival_witnesses.join(", "))?;
        }
        Ok(())
    }
}

/// The five relation/property based definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definition {
    Strict,
    Preorder,
    Ump,
    Property,
    Compact,
}

impl Definition {
    pub const ALL: [Definition; 5] = [
        Definition::Strict,
        Definition::Preorder,
        Definition::Ump,
        Definition::Property,
        Definition::Compact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Definition::Strict => "strict",
            Definition::Preorder => "preorder",
            Definition::Ump => "ump",
            Definition::Property => "property",
            Definition::Compact => "compact",
        }
    }
}

/// Extra conjunct appended to `φ` in the property form: `φ ⟹ x ≼ v`
/// (`Below`) or `φ ⟹ x ≽ v` (`Above`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Consequent {
    #[default]
    None,
    Below,
    Above,
}

/// A fully specified universality question, minus the candidate.
#[derive(Clone, Copy, Debug)]
pub enum Query<'a> {
    Strict {
        relation: &'a BinaryRelation,
        exclude_self: bool,
    },
    Preorder {
        relation: &'a BinaryRelation,
        preorder: &'a Preorder,
        exclude_self: bool,
    },
    Ump {
        q: &'a BinaryRelation,
        preorder: &'a Preorder,
        dual: bool,
    },
    Property {
        predicate: &'a Predicate,
        phi: &'a Phi,
        preorder: &'a Preorder,
        consequent: Consequent,
    },
    Compact {
        predicate: &'a Predicate,
        preorder: &'a Preorder,
        dual: bool,
    },
}

enum Sameness<'a> {
    Equal,
    Equivalent(&'a Preorder),
    Unconstrained,
}

/// Per-element precomputation shared by `check` and `find`.
struct Analysis<'a> {
    carrier: &'a Carrier,
    eligible: Vec<bool>,
    // first x with ¬R(x, v), per v
    breaker: Vec<Option<usize>>,
    sameness: Sameness<'a>,
}

fn breakers(
    n: usize,
    exclude_self: bool,
    related: impl Fn(usize, usize) -> bool,
) -> Vec<Option<usize>> {
    (0..n)
        .map(|v| (0..n).find(|&x| !(exclude_self && x == v) && !related(x, v)))
        .collect()
}

fn same_carrier(a: &Carrier, b: &Carrier, what: &'static str) -> Result<(), UniversalityError> {
    if a == b {
        Ok(())
    } else {
        Err(UniversalityError::CarrierMismatch(what))
    }
}

impl<'a> Query<'a> {
    pub fn definition(&self) -> Definition {
        match self {
            Query::Strict { .. } => Definition::Strict,
            Query::Preorder { .. } => Definition::Preorder,
            Query::Ump { .. } => Definition::Ump,
            Query::Property { .. } => Definition::Property,
            Query::Compact { .. } => Definition::Compact,
        }
    }

    pub fn carrier(&self) -> &'a Carrier {
        match *self {
            Query::Strict { relation, .. } | Query::Preorder { relation, .. } => relation.carrier(),
            Query::Ump { q, .. } => q.carrier(),
            Query::Property { predicate, .. } | Query::Compact { predicate, .. } => {
                predicate.carrier()
            }
        }
    }

    fn analyze(&self) -> Result<Analysis<'a>, UniversalityError> {
        let carrier = self.carrier();
        let n = carrier.len();
        let all = vec![true; n];
        Ok(match *self {
            Query::Strict {
                relation,
                exclude_self,
            } => Analysis {
                carrier,
                eligible: all,
                breaker: breakers(n, exclude_self, |x, v| relation.holds(x, v)),
                sameness: Sameness::Equal,
            },
            Query::Preorder {
                relation,
                preorder,
                exclude_self,
            } => {
                same_carrier(carrier, preorder.carrier(), "relation and preorder")?;
                Analysis {
                    carrier,
                    eligible: all,
                    breaker: breakers(n, exclude_self, |x, v| relation.holds(x, v)),
                    sameness: Sameness::Equivalent(preorder),
                }
            }
            Query::Ump { q, preorder, dual } => {
                same_carrier(carrier, preorder.carrier(), "relation and preorder")?;
                let r = ump_relation(q, preorder, dual)?;
                Analysis {
                    carrier,
                    eligible: all,
                    breaker: breakers(n, false, |x, v| r.holds(x, v)),
                    sameness: Sameness::Equivalent(preorder),
                }
            }
            Query::Property {
                predicate,
                phi,
                preorder,
                consequent,
            } => {
                same_carrier(carrier, preorder.carrier(), "predicate and preorder")?;
                let table = phi.truth_table();
                let related = |x: usize, v: usize| {
                    let body =
                        table[(predicate.holds(x) as usize) << 1 | predicate.holds(v) as usize];
                    match consequent {
                        Consequent::None => body,
                        Consequent::Below => !body || preorder.leq(x, v),
                        Consequent::Above => !body || preorder.leq(v, x),
                    }
                };
                Analysis {
                    carrier,
                    eligible: (0..n).map(|v| predicate.holds(v)).collect(),
                    breaker: breakers(n, false, related),
                    sameness: Sameness::Equivalent(preorder),
                }
            }
            Query::Compact {
                predicate,
                preorder,
                dual,
            } => {
                same_carrier(carrier, preorder.carrier(), "predicate and preorder")?;
                let related = |x: usize, v: usize| {
                    !predicate.holds(x)
                        || if dual {
                            preorder.leq(v, x)
                        } else {
                            preorder.leq(x, v)
                        }
                };
                Analysis {
                    carrier,
                    eligible: (0..n).map(|v| predicate.holds(v)).collect(),
                    breaker: breakers(n, false, related),
                    sameness: Sameness::Unconstrained,
                }
            }
        })
    }

    /// Verdict for the named candidate.
    pub fn check(&self, candidate: &str) -> Result<UniversalityVerdict, UniversalityError> {
        let u = self.carrier().index_of(candidate)?;
        Ok(self.analyze()?.verdict(u))
    }

    /// Every element whose verdict holds, in carrier order.
    pub fn find(&self) -> Result<Vec<String>, UniversalityError> {
        let analysis = self.analyze()?;
        Ok((0..analysis.carrier.len())
            .filter(|&u| analysis.holds(u))
            .map(|u| analysis.carrier.name(u).to_string())
            .collect())
    }
}

impl Analysis<'_> {
    fn satisfies_universal(&self, v: usize) -> bool {
        self.eligible[v] && self.breaker[v].is_none()
    }

    fn same(&self, v: usize, u: usize) -> bool {
        match self.sameness {
            Sameness::Equal => v == u,
            Sameness::Equivalent(p) => p.equivalent(v, u),
            Sameness::Unconstrained => true,
        }
    }

    fn holds(&self, u: usize) -> bool {
        self.satisfies_universal(u)
            && (0..self.carrier.len()).all(|v| !self.satisfies_universal(v) || self.same(v, u))
    }

    fn verdict(&self, u: usize) -> UniversalityVerdict {
        let n = self.carrier.len();
        let name = |i: usize| self.carrier.name(i).to_string();
        let rivals: Vec<usize> = (0..n)
            .filter(|&v| v != u && self.satisfies_universal(v))
            .collect();
        let rival_witnesses = rivals.iter().map(|&v| name(v)).collect();
        let fail = |clause, witness: usize, rival_witnesses| UniversalityVerdict {
            holds: false,
            failing_clause: clause,
            counterexample: Some(name(witness)),
            rival_witnesses,
        };
        if !self.eligible[u] {
            return fail(FailingClause::Membership, u, rival_witnesses);
        }
        if let Some(x) = self.breaker[u] {
            return fail(FailingClause::Membership, x, rival_witnesses);
        }
        if let Some(&v) = rivals.iter().find(|&&v| !self.same(v, u)) {
            return fail(FailingClause::Uniqueness, v, rival_witnesses);
        }
        UniversalityVerdict {
            holds: true,
            failing_clause: FailingClause::None,
            counterexample: None,
            rival_witnesses,
        }
    }
}

/// `R(a, b) := Q(a, b) ⟹ a ≼ b`, or `⟹ a ≽ b` when `dual`.
pub fn ump_relation(
    q: &BinaryRelation,
    preorder: &Preorder,
    dual: bool,
) -> Result<BinaryRelation, UniversalityError> {
    same_carrier(q.carrier(), preorder.carrier(), "relation and preorder")?;
    Ok(BinaryRelation::from_fn(q.carrier().clone(), |a, b| {
        !q.holds(a, b)
            || if dual {
                preorder.leq(b, a)
            } else {
                preorder.leq(a, b)
            }
    }))
}

/// `R(a, b) := φ(P(a), P(b))`.
pub fn relation_from_property(predicate: &Predicate, phi: &Phi) -> BinaryRelation {
    let table = phi.truth_table();
    BinaryRelation::from_fn(predicate.carrier().clone(), |a, b| {
        table[(predicate.holds(a) as usize) << 1 | predicate.holds(b) as usize]
    })
}

/// Universality with equality as sameness. With `exclude_self`, both
/// quantifiers over `x` skip the element under test.
pub fn is_r_universal_strict(
    relation: &BinaryRelation,
    u: &str,
    exclude_self: bool,
) -> Result<UniversalityVerdict, UniversalityError> {
    Query::Strict {
        relation,
        exclude_self,
    }
    .check(u)
}

/// Universality up to the equivalence induced by `preorder`.
pub fn is_r_universal_preorder(
    relation: &BinaryRelation,
    preorder: &Preorder,
    u: &str,
    exclude_self: bool,
) -> Result<UniversalityVerdict, UniversalityError> {
    Query::Preorder {
        relation,
        preorder,
        exclude_self,
    }
    .check(u)
}

/// Preorder universality for `R(a, b) := Q(a, b) ⟹ a ≼ b` (or `≽` when dual).
pub fn is_q_ump_universal(
    q: &BinaryRelation,
    preorder: &Preorder,
    u: &str,
    dual: bool,
) -> Result<UniversalityVerdict, UniversalityError> {
    Query::Ump { q, preorder, dual }.check(u)
}

/// Property universality:
/// `P(u) ∧ ∀x: R(x, u) ∧ ∀v: P(v) ∧ [∀x: R(x, v)] ⟹ v ≈ u`
/// with `R(x, v) := φ(P(x), P(v))`, optionally followed by `⟹ x ≼ v`.
///
/// The uniqueness clause only ranges over `v` with `P(v)`.
pub fn is_p_universal(
    predicate: &Predicate,
    phi: &Phi,
    preorder: &Preorder,
    u: &str,
    consequent: Consequent,
) -> Result<UniversalityVerdict, UniversalityError> {
    Query::Property {
        predicate,
        phi,
        preorder,
        consequent,
    }
    .check(u)
}

/// `P(u) ∧ ∀x: P(x) ⟹ x ≼ u` (`≽` when dual): `u` is an optimal feasible
/// element.
pub fn is_p_universal_compact(
    predicate: &Predicate,
    preorder: &Preorder,
    u: &str,
    dual: bool,
) -> Result<UniversalityVerdict, UniversalityError> {
    Query::Compact {
        predicate,
        preorder,
        dual,
    }
    .check(u)
}

pub fn find_universal(query: &Query<'_>) -> Result<Vec<String>, UniversalityError> {
    query.find()
}

fn check_object_carrier(c: &FiniteCategory, r: &BinaryRelation) -> Result<(), UniversalityError> {
    if r.carrier().elements() != c.object_names() {
        return Err(UniversalityError::CarrierMismatch(
            "relation carrier must be the objects of the category",
        ));
    }
    Ok(())
}

fn unique_arrow_verdict(c: &FiniteCategory, r: &BinaryRelation, u: ObjId) -> UniversalityVerdict {
    let n = c.object_count();
    let satisfies = |v: usize| (0..n).all(|x| r.holds(x, v));
    let name = |i: usize| c.object_name(ObjId(i)).to_string();
    let rival_witnesses: Vec<String> = (0..n)
        .filter(|&v| v != u.0 && satisfies(v))
        .map(name)
        .collect();
    if let Some(x) = (0..n).find(|&x| !r.holds(x, u.0)) {
        return UniversalityVerdict {
            holds: false,
            failing_clause: FailingClause::Membership,
            counterexample: Some(name(x)),
            rival_witnesses,
        };
    }
    // u itself is among the v: its only endomorphism must be the identity.
    if let Some(v) = (0..n).find(|&v| satisfies(v) && c.hom(ObjId(v), u).len() != 1) {
        return UniversalityVerdict {
            holds: false,
            failing_clause: FailingClause::Uniqueness,
            counterexample: Some(name(v)),
            rival_witnesses,
        };
    }
    UniversalityVerdict {
        holds: true,
        failing_clause: FailingClause::None,
        counterexample: None,
        rival_witnesses,
    }
}

/// `∀x: R(x, u) ∧ ∀v: [∀x: R(x, v)] ⟹ ∃! m: v → u`.
pub fn is_unique_arrow_universal(
    c: &FiniteCategory,
    r: &BinaryRelation,
    u: &str,
) -> Result<UniversalityVerdict, UniversalityError> {
    check_object_carrier(c, r)?;
    let u = c.object_id(u)?;
    Ok(unique_arrow_verdict(c, r, u))
}

/// For two unique-arrow-universal objects, returns the unique `f: u1 → u2`
/// and `g: u2 → u1`, after checking `g ∘ f = 1_u1` and `f ∘ g = 1_u2`.
pub fn unique_isomorphism_witness(
    c: &FiniteCategory,
    r: &BinaryRelation,
    u1: &str,
    u2: &str,
) -> Result<(ArrowId, ArrowId), UniversalityError> {
    check_object_carrier(c, r)?;
    let a = c.object_id(u1)?;
    let b = c.object_id(u2)?;
    for (x, label) in [(a, u1), (b, u2)] {
        if !unique_arrow_verdict(c, r, x).holds {
            return Err(UniversalityError::Precondition(format!(
                "{label} is not unique-arrow universal"
            )));
        }
    }
    let only = |from: ObjId, to: ObjId| -> Result<ArrowId, UniversalityError> {
        match c.hom(from, to) {
            [m] => Ok(*m),
            ms => Err(UniversalityError::EngineBug(format!(
                "expected one arrow {} -> {}, found {}",
                c.object_name(from),
                c.object_name(to),
                ms.len()
            ))),
        }
    };
    let f = only(a, b)?;
    let g = only(b, a)?;
    for x in [a, b] {
        if only(x, x)? != c.identity(x) {
            return Err(UniversalityError::EngineBug(format!(
                "sole endomorphism of {} is not the identity",
                c.object_name(x)
            )));
        }
    }
    if c.compose(f, g) != Some(c.identity(a)) || c.compose(g, f) != Some(c.identity(b)) {
        return Err(UniversalityError::EngineBug(format!(
            "{} and {} are not mutually inverse",
            c.arrow_name(f),
            c.arrow_name(g)
        )));
    }
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CategoryBuilder;

    fn numbers(n: u32) -> Carrier {
        Carrier::new((1..=n).map(|i| i.to_string())).unwrap()
    }

    /// Relation on {1..n} given by a predicate on the numeric values.
    fn numeric(n: u32, f: impl Fn(u32, u32) -> bool) -> BinaryRelation {
        let c = numbers(n);
        let vals: Vec<u32> = c.elements().iter().map(|e| e.parse().unwrap()).collect();
        BinaryRelation::from_fn(c, |a, b| f(vals[a], vals[b]))
    }

    fn leq5() -> Preorder {
        Preorder::new(numeric(5, |a, b| a <= b)).unwrap()
    }

    fn evens5() -> Predicate {
        Predicate::new(numbers(5), ["2", "4"]).unwrap()
    }

    #[test]
    fn strict_ge_has_least_element() {
        let ge = numeric(5, |a, b| a >= b);
        assert!(is_r_universal_strict(&ge, "1", false).unwrap().holds);
        assert!(!is_r_universal_strict(&ge, "2", false).unwrap().holds);
    }

    #[test]
    fn strict_gt_needs_self_exclusion() {
        let gt = numeric(5, |a, b| a > b);
        assert!(is_r_universal_strict(&gt, "1", true).unwrap().holds);
        let literal = is_r_universal_strict(&gt, "1", false).unwrap();
        assert!(!literal.holds);
        assert_eq!(literal.failing_clause, FailingClause::Membership);
        assert_eq!(literal.counterexample.as_deref(), Some("1"));
        assert_eq!(
            find_universal(&Query::Strict {
                relation: &gt,
                exclude_self: true
            })
            .unwrap(),
            ["1"]
        );
    }

    #[test]
    fn unknown_candidate_is_an_error() {
        let gt = numeric(5, |a, b| a > b);
        assert_eq!(
            is_r_universal_strict(&gt, "9", false),
            Err(UniversalityError::Order(OrderError::UnknownElement(
                "9".into()
            )))
        );
    }

    fn abc() -> Carrier {
        Carrier::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn preorder_uniqueness_is_up_to_equivalence() {
        let r = BinaryRelation::from_fn(abc(), |_, y| y <= 1);
        let p = Preorder::new(BinaryRelation::from_fn(abc(), |x, y| x <= 1 || y == 2)).unwrap();
        let v = is_r_universal_preorder(&r, &p, "a", false).unwrap();
        assert!(v.holds);
        assert_eq!(v.rival_witnesses, ["b"]);

        let eq = Preorder::equality(abc());
        let v = is_r_universal_preorder(&r, &eq, "a", false).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failing_clause, FailingClause::Uniqueness);
        assert_eq!(v.counterexample.as_deref(), Some("b"));
    }

    #[test]
    fn preorder_checker_rejects_mismatched_carriers() {
        let r = BinaryRelation::total(abc());
        let p = leq5();
        assert!(matches!(
            is_r_universal_preorder(&r, &p, "a", false),
            Err(UniversalityError::CarrierMismatch(_))
        ));
    }

    #[test]
    fn ump_form_with_empty_q_is_total() {
        let q = BinaryRelation::empty(abc());
        let eq = Preorder::equality(abc());
        let v = is_q_ump_universal(&q, &eq, "a", false).unwrap();
        assert_eq!(v.failing_clause, FailingClause::Uniqueness);
        let everything = Preorder::new(BinaryRelation::total(abc())).unwrap();
        assert!(
            is_q_ump_universal(&q, &everything, "a", false)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn ump_form_finds_top_and_bottom() {
        let q = BinaryRelation::total(numbers(5));
        let p = leq5();
        assert!(is_q_ump_universal(&q, &p, "5", false).unwrap().holds);
        assert!(is_q_ump_universal(&q, &p, "1", true).unwrap().holds);
        assert!(!is_q_ump_universal(&q, &p, "1", false).unwrap().holds);
    }

    #[test]
    fn relation_from_property_cases() {
        let none = Predicate::new(numbers(5), []).unwrap();
        assert_eq!(
            relation_from_property(&none, &Phi::conjunction()).pair_count(),
            0
        );

        let r = relation_from_property(&evens5(), &Phi::parse("Pa & !Pb").unwrap());
        let expected = numeric(5, |a, b| a % 2 == 0 && b % 2 == 1);
        assert_eq!(r, expected);

        let all = Predicate::from_fn(numbers(5), |_| true);
        let r = relation_from_property(&all, &Phi::parse("Pa -> Pb").unwrap());
        assert_eq!(r, BinaryRelation::total(numbers(5)));
    }

    #[test]
    fn property_form_with_order_consequent() {
        let phi = Phi::conjunction();
        let p = leq5();
        let v = is_p_universal(&evens5(), &phi, &p, "4", Consequent::Below).unwrap();
        assert!(v.holds);
        assert!(v.rival_witnesses.is_empty());
        let v = is_p_universal(&evens5(), &phi, &p, "2", Consequent::Below).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.as_deref(), Some("4"));
        let v = is_p_universal(&evens5(), &phi, &p, "3", Consequent::Below).unwrap();
        assert_eq!(v.failing_clause, FailingClause::Membership);
        assert_eq!(v.counterexample.as_deref(), Some("3"));
    }

    #[test]
    fn singleton_predicate_reduces_to_compact() {
        let p = leq5();
        for u in numbers(5).elements() {
            let single = Predicate::new(numbers(5), [u.as_str()]).unwrap();
            for e in numbers(5).elements() {
                let full =
                    is_p_universal(&single, &Phi::conjunction(), &p, e, Consequent::Below).unwrap();
                let compact = is_p_universal_compact(&single, &p, e, false).unwrap();
                assert_eq!(full.holds, compact.holds);
                assert_eq!(full.holds, e == u);
            }
        }
    }

    #[test]
    fn compact_form_is_optimal_feasible() {
        let p = leq5();
        assert!(
            is_p_universal_compact(&evens5(), &p, "4", false)
                .unwrap()
                .holds
        );
        let v = is_p_universal_compact(&evens5(), &p, "2", false).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.as_deref(), Some("4"));
        assert!(
            is_p_universal_compact(&evens5(), &p, "2", true)
                .unwrap()
                .holds
        );

        let compact = |predicate| Query::Compact {
            predicate,
            preorder: &p,
            dual: false,
        };
        let evens = evens5();
        assert_eq!(compact(&evens).find().unwrap(), ["4"]);
        let none = Predicate::new(numbers(5), []).unwrap();
        assert!(compact(&none).find().unwrap().is_empty());
    }

    fn d12() -> FiniteCategory {
        let divs = [1u32, 2, 3, 4, 6, 12];
        let mut b = CategoryBuilder::new();
        for d in divs {
            b.object(&d.to_string()).unwrap();
        }
        let name = |x: u32, y: u32| format!("a_{x}_{y}");
        for &x in &divs {
            for &y in &divs {
                if x != y && y % x == 0 {
                    b.arrow(&name(x, y), &x.to_string(), &y.to_string())
                        .unwrap();
                }
            }
        }
        for &x in &divs {
            for &y in &divs {
                for &z in &divs {
                    if x != y && y != z && y % x == 0 && z % y == 0 {
                        b.compose(&name(x, y), &name(y, z), &name(x, z)).unwrap();
                    }
                }
            }
        }
        b.build().unwrap()
    }

    fn total_on(c: &FiniteCategory) -> BinaryRelation {
        BinaryRelation::total(Carrier::new(c.object_names().iter().cloned()).unwrap())
    }

    #[test]
    fn unique_arrow_universality_in_divisor_poset() {
        let c = d12();
        let r = total_on(&c);
        assert!(is_unique_arrow_universal(&c, &r, "12").unwrap().holds);
        assert!(!is_unique_arrow_universal(&c, &r, "6").unwrap().holds);

        let cut = c.restrict(|o| o != "12");
        let r = total_on(&cut);
        let v = is_unique_arrow_universal(&cut, &r, "6").unwrap();
        assert_eq!(v.failing_clause, FailingClause::Uniqueness);
        assert_eq!(v.counterexample.as_deref(), Some("4"));
    }

    #[test]
    fn unique_iso_witness_on_terminal() {
        let c = d12();
        let r = total_on(&c);
        let (f, g) = unique_isomorphism_witness(&c, &r, "12", "12").unwrap();
        assert_eq!(c.arrow_name(f), "id_12");
        assert_eq!(c.arrow_name(g), "id_12");
        assert!(matches!(
            unique_isomorphism_witness(&c, &r, "12", "6"),
            Err(UniversalityError::Precondition(_))
        ));
    }

    #[test]
    fn unique_iso_witness_on_iso_pair() {
        let mut b = CategoryBuilder::new();
        b.object("t").unwrap().object("t2").unwrap();
        b.arrow("f", "t", "t2")
            .unwrap()
            .arrow("g", "t2", "t")
            .unwrap();
        b.compose("f", "g", "id_t").unwrap();
        b.compose("g", "f", "id_t2").unwrap();
        let c = b.build().unwrap();
        let r = total_on(&c);
        let (f, g) = unique_isomorphism_witness(&c, &r, "t", "t2").unwrap();
        assert_eq!((c.arrow_name(f), c.arrow_name(g)), ("f", "g"));
    }
}
