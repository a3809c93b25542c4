//! Binary products and coproducts, terminal and initial objects.
//!
//! Products are verified rather than constructed: a candidate cone is a
//! product when every cone over the same factors has exactly one mediating
//! arrow into it. Coproducts are products in the opposite category.

use std::fmt;

use thiserror::Error;

use crate::model::{ArrowId, FiniteCategory, ModelError, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UmpError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("malformed cone: {0}")]
    MalformedCone(String),
    #[error("cones have different factors")]
    FactorMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    EngineBug(String),
}

/// An apex with one leg to each of two factors: `A <- apex -> B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    pub apex: ObjId,
    pub leg_a: ArrowId,
    pub leg_b: ArrowId,
    pub factors: (ObjId, ObjId),
}

impl Cone {
    /// Cone with the given legs; both must share a domain.
    pub fn new(c: &FiniteCategory, leg_a: ArrowId, leg_b: ArrowId) -> Result<Cone, UmpError> {
        if c.dom(leg_a) != c.dom(leg_b) {
            return Err(UmpError::MalformedCone(format!(
                "legs {} and {} have different domains",
                c.arrow_name(leg_a),
                c.arrow_name(leg_b)
            )));
        }
        Ok(Cone {
            apex: c.dom(leg_a),
            leg_a,
            leg_b,
            factors: (c.cod(leg_a), c.cod(leg_b)),
        })
    }

    /// Resolves names and checks that both legs start at `apex`.
    pub fn from_names(
        c: &FiniteCategory,
        apex: &str,
        leg_a: &str,
        leg_b: &str,
    ) -> Result<Cone, UmpError> {
        let apex_id = c.object_id(apex)?;
        let cone = Cone::new(c, c.arrow_id(leg_a)?, c.arrow_id(leg_b)?)?;
        if cone.apex != apex_id {
            return Err(UmpError::MalformedCone(format!(
                "legs start at {}, not {apex}",
                c.object_name(cone.apex)
            )));
        }
        Ok(cone)
    }

    /// Cocone `A -> apex <- B` in `c`, which is a cone in `c.opposite()`.
    pub fn cocone_from_names(
        c: &FiniteCategory,
        apex: &str,
        leg_a: &str,
        leg_b: &str,
    ) -> Result<Cone, UmpError> {
        Cone::from_names(&c.opposite(), apex, leg_a, leg_b)
    }

    pub fn display<'a>(&'a self, c: &'a FiniteCategory) -> ConeDisplay<'a> {
        ConeDisplay { cone: self, c }
    }
}

pub struct ConeDisplay<'a> {
    cone: &'a Cone,
    c: &'a FiniteCategory,
}

impl fmt::Display for ConeDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "({}, {}, {})",
            self.c.object_name(self.cone.apex),
            self.c.arrow_name(self.cone.leg_a),
            self.c.arrow_name(self.cone.leg_b)
        )
    }
}

/// Every cone over `(a, b)`, ordered by apex, then legs.
pub fn enumerate_cones(c: &FiniteCategory, a: ObjId, b: ObjId) -> Vec<Cone> {
    let mut cones = Vec::new();
    for apex in c.objects() {
        for &leg_a in c.hom(apex, a) {
            for &leg_b in c.hom(apex, b) {
                cones.push(Cone {
                    apex,
                    leg_a,
                    leg_b,
                    factors: (a, b),
                });
            }
        }
    }
    cones
}

/// Arrows `m: from.apex -> to.apex` with `to.leg_a ∘ m = from.leg_a` and
/// `to.leg_b ∘ m = from.leg_b`.
pub fn mediating_arrows(
    c: &FiniteCategory,
    from: &Cone,
    to: &Cone,
) -> Result<Vec<ArrowId>, UmpError> {
    if from.factors != to.factors {
        return Err(UmpError::FactorMismatch);
    }
    Ok(c.hom(from.apex, to.apex)
        .iter()
        .copied()
        .filter(|&m| {
            c.compose(m, to.leg_a) == Some(from.leg_a) && c.compose(m, to.leg_b) == Some(from.leg_b)
        })
        .collect())
}

/// Proof that a cone is a product: the unique mediator from every cone over
/// the same factors, the candidate itself included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCertificate {
    pub cone: Cone,
    pub mediators: Vec<(Cone, ArrowId)>,
}

impl ProductCertificate {
    pub fn mediator_from(&self, cone: &Cone) -> Option<ArrowId> {
        self.mediators
            .iter()
            .find(|(k, _)| k == cone)
            .map(|&(_, m)| m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductCheck {
    Certified(ProductCertificate),
    /// First cone (in enumeration order) without exactly one mediator.
    Refuted {
        cone: Cone,
        mediator_count: usize,
    },
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ProductCheck::Certified(_))
    }

    pub fn certificate(&self) -> Option<&ProductCertificate> {
        match self {
            ProductCheck::Certified(cert) => Some(cert),
            ProductCheck::Refuted { .. } => None,
        }
    }
}

pub fn check_product(c: &FiniteCategory, candidate: &Cone) -> Result<ProductCheck, UmpError> {
    let well_formed = c.dom(candidate.leg_a) == candidate.apex
        && c.dom(candidate.leg_b) == candidate.apex
        && c.cod(candidate.leg_a) == candidate.factors.0
        && c.cod(candidate.leg_b) == candidate.factors.1;
    if !well_formed {
        return Err(UmpError::MalformedCone(candidate.display(c).to_string()));
    }
    let (a, b) = candidate.factors;
    let mut mediators = Vec::new();
    for cone in enumerate_cones(c, a, b) {
        match mediating_arrows(c, &cone, candidate)?.as_slice() {
            [m] => mediators.push((cone, *m)),
            ms => {
                return Ok(ProductCheck::Refuted {
                    cone,
                    mediator_count: ms.len(),
                })
            }
        }
    }
    Ok(ProductCheck::Certified(ProductCertificate {
        cone: *candidate,
        mediators,
    }))
}

/// `candidate` is a cocone of `c` (a cone of `c.opposite()`); arrow ids are
/// shared between the two categories, so the result needs no relabeling.
pub fn check_coproduct(c: &FiniteCategory, candidate: &Cone) -> Result<ProductCheck, UmpError> {
    check_product(&c.opposite(), candidate)
}

/// Every cone over `(a, b)` that is a product.
pub fn find_products(c: &FiniteCategory, a: ObjId, b: ObjId) -> Vec<Cone> {
    enumerate_cones(c, a, b)
        .into_iter()
        .filter(|cone| matches!(check_product(c, cone), Ok(ProductCheck::Certified(_))))
        .collect()
}

pub fn find_coproducts(c: &FiniteCategory, a: ObjId, b: ObjId) -> Vec<Cone> {
    find_products(&c.opposite(), a, b)
}

/// Outcome of a terminal/initial check; `witness` is the first object with
/// the wrong number of arrows, and that number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TerminalCheck {
    pub holds: bool,
    pub witness: Option<(ObjId, usize)>,
}

/// Terminal: exactly one arrow into `x` from every object.
pub fn is_terminal(c: &FiniteCategory, x: ObjId) -> TerminalCheck {
    let witness = c
        .objects()
        .map(|y| (y, c.hom(y, x).len()))
        .find(|&(_, n)| n != 1);
    TerminalCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// Initial: exactly one arrow out of `x` to every object.
pub fn is_initial(c: &FiniteCategory, x: ObjId) -> TerminalCheck {
    let witness = c
        .objects()
        .map(|y| (y, c.hom(x, y).len()))
        .find(|&(_, n)| n != 1);
    TerminalCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// For two products over the same factors, the unique mediators
/// `u1: p1 -> p2` and `u2: p2 -> p1`, verified mutually inverse.
pub fn product_uniqueness_certificate(
    c: &FiniteCategory,
    p1: &Cone,
    p2: &Cone,
) -> Result<(ArrowId, ArrowId), UmpError> {
    if p1.factors != p2.factors {
        return Err(UmpError::FactorMismatch);
    }
    let certify = |p: &Cone| match check_product(c, p)? {
        ProductCheck::Certified(cert) => Ok(cert),
        ProductCheck::Refuted { .. } => Err(UmpError::Precondition(format!(
            "{} is not a product",
            p.display(c)
        ))),
    };
    let cert1 = certify(p1)?;
    let cert2 = certify(p2)?;
    let missing = || UmpError::EngineBug("certificate lacks a mediator for a cone".into());
    let u1 = cert2.mediator_from(p1).ok_or_else(missing)?;
    let u2 = cert1.mediator_from(p2).ok_or_else(missing)?;
    if c.compose(u1, u2) != Some(c.identity(p1.apex)) {
        return Err(UmpError::EngineBug(format!(
            "{} . {} is not the identity on {}",
            c.arrow_name(u2),
            c.arrow_name(u1),
            c.object_name(p1.apex)
        )));
    }
    if c.compose(u2, u1) != Some(c.identity(p2.apex)) {
        return Err(UmpError::EngineBug(format!(
            "{} . {} is not the identity on {}",
            c.arrow_name(u1),
            c.arrow_name(u2),
            c.object_name(p2.apex)
        )));
    }
    Ok((u1, u2))
}
