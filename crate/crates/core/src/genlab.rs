//! Seeded generators of small valid instances.
//!
//! Every generator is a pure function of its seed and parameters. The stream
//! is SplitMix64 (Steele, Lea and Flood; constants `0x9e3779b97f4a7c15`,
//! `0xbf58476d1ce4e5b9`, `0x94d049bb133111eb`) seeded with the raw seed as
//! its state. Values are drawn from it as follows, so fixtures can be
//! reproduced in any language:
//!
//! * `below(n)`: `next_u64() % n`
//! * `chance(p)`: `(next_u64() >> 11) as f64 * 2^-53 < p`
//! * permutations: Fisher-Yates from the top, `j = below(i + 1)` for
//!   `i = n-1 down to 1`
//!
//! Stream version: 1.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::dsl::{Bundle, CarrierRef};
use crate::model::{CategoryBuilder, FiniteCategory, Limits};
use crate::order::{
    preorder_from_quotient_order, BinaryRelation, Carrier, EquivalenceClasses, Preorder,
};
use crate::universality::Predicate;

pub const STREAM_VERSION: u32 = 1;
pub const DEFAULT_DENSITY: f64 = 0.5;

/// Deterministic draw helpers over SplitMix64.
#[derive(Clone, Debug)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            perm.swap(i, j);
        }
        perm
    }
}

/// `prefix0 .. prefix{n-1}`.
pub fn named_carrier(prefix: &str, n: usize) -> Carrier {
    Carrier::new((0..n).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
}

fn unbounded() -> Limits {
    Limits {
        max_objects: usize::MAX,
        max_arrows: usize::MAX,
    }
}

/// Thin category of a preorder: one arrow `a_x_y` for each `x ≼ y`, `x != y`.
pub fn thin_category(p: &Preorder) -> FiniteCategory {
    let carrier = p.carrier();
    let n = carrier.len();
    let name = |x: usize, y: usize| format!("a_{}_{}", carrier.name(x), carrier.name(y));
    let arrow = |x: usize, y: usize| {
        if x == y {
            format!("id_{}", carrier.name(x))
        } else {
            name(x, y)
        }
    };
    let mut b = CategoryBuilder::new();
    for e in carrier.elements() {
        b.object(e).expect("carrier names are identifiers");
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x && p.leq(x, y)) {
            b.arrow(&name(x, y), carrier.name(x), carrier.name(y))
                .expect("fresh arrow");
        }
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x && p.leq(x, y)) {
            for z in (0..n).filter(|&z| z != y && p.leq(y, z)) {
                b.compose(&name(x, y), &name(y, z), &arrow(x, z))
                    .expect("composable by transitivity");
            }
        }
    }
    b.build_with(unbounded())
        .expect("thin category of a preorder")
}

/// Random partial order on `o0 .. o{n-1}`: a random linear extension, a
/// random subset of its forward pairs at `density`, then closure.
pub fn gen_poset_order(seed: u64, n: usize, density: f64) -> Preorder {
    assert!(n >= 1);
    let mut rng = SeededRng::new(seed);
    random_partial_order(&mut rng, named_carrier("o", n), density)
}

fn random_partial_order(rng: &mut SeededRng, carrier: Carrier, density: f64) -> Preorder {
    let n = carrier.len();
    let rank = rng.permutation(n);
    let mut r = BinaryRelation::empty(carrier);
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(density) {
                r.insert(rank[i], rank[j]);
            }
        }
    }
    Preorder::new(r.reflexive_transitive_closure()).expect("closure is a preorder")
}

/// Category of a random partial order on `n` objects (`n >= 1`).
pub fn gen_poset_category(seed: u64, n: usize) -> FiniteCategory {
    thin_category(&gen_poset_order(seed, n, DEFAULT_DENSITY))
}

/// Each object `x` of a random poset category gets an isomorphic twin
/// `x_twin`; the result is the thin category of `(x, side) ≼ (y, side')`
/// iff `x ≤ y`.
pub fn gen_doubled_poset_category(seed: u64, n: usize) -> FiniteCategory {
    let base = gen_poset_order(seed, n, DEFAULT_DENSITY);
    thin_category(&double(&base))
}

/// The preorder on `x` and `x_twin` for every element `x` of `p`.
pub fn double(p: &Preorder) -> Preorder {
    let base = p.carrier();
    let carrier = Carrier::new(
        base.elements()
            .iter()
            .flat_map(|e| [e.clone(), format!("{e}_twin")]),
    )
    .expect("twin names are distinct");
    let origin: Vec<usize> = carrier
        .elements()
        .iter()
        .map(|e| {
            base.index_of(e.strip_suffix("_twin").unwrap_or(e))
                .expect("own element")
        })
        .collect();
    Preorder::new(BinaryRelation::from_fn(carrier, |a, b| {
        p.leq(origin[a], origin[b])
    }))
    .expect("pullback of a preorder")
}

/// Divisors of `n` ordered by divisibility, objects named in decimal.
pub fn divisor_category(n: u32) -> FiniteCategory {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let carrier = Carrier::new(divisors.iter().map(|d| d.to_string())).expect("decimal names");
    let value: Vec<u32> = carrier
        .elements()
        .iter()
        .map(|e| e.parse().unwrap())
        .collect();
    let p = Preorder::new(BinaryRelation::from_fn(carrier, |a, b| {
        value[b].is_multiple_of(value[a])
    }))
    .expect("divisibility is a partial order");
    thin_category(&p)
}

/// One-object category of the transformation monoid generated by
/// `generators` random self-maps of `{0 .. points-1}` (`points <= 3`).
pub fn gen_monoid_category(seed: u64, points: usize, generators: usize) -> FiniteCategory {
    assert!((1..=3).contains(&points));
    let mut rng = SeededRng::new(seed);
    let gens: Vec<Vec<usize>> = (0..generators)
        .map(|_| (0..points).map(|_| rng.below(points)).collect())
        .collect();
    let identity: Vec<usize> = (0..points).collect();
    let mut elements = vec![identity];
    let mut next = 0;
    while next < elements.len() {
        for g in &gens {
            // f then g
            let composed: Vec<usize> = elements[next].iter().map(|&x| g[x]).collect();
            if !elements.contains(&composed) {
                elements.push(composed);
            }
        }
        next += 1;
    }
    let name = |i: usize| {
        if i == 0 {
            "id_M".to_string()
        } else {
            format!("t{i}")
        }
    };
    let mut b = CategoryBuilder::new();
    b.object("M").expect("valid");
    for i in 1..elements.len() {
        b.arrow(&name(i), "M", "M").expect("fresh");
    }
    for f in 1..elements.len() {
        for g in 1..elements.len() {
            let composed: Vec<usize> = elements[f].iter().map(|&x| elements[g][x]).collect();
            let h = elements
                .iter()
                .position(|e| *e == composed)
                .expect("closed under composition");
            b.compose(&name(f), &name(g), &name(h))
                .expect("fresh entry");
        }
    }
    b.build_with(unbounded()).expect("monoid category")
}

/// Uniform relation on `e0 .. e{n-1}`: each pair included at `density`.
pub fn gen_relation(seed: u64, n: usize, density: f64) -> BinaryRelation {
    assert!(n >= 1);
    let mut rng = SeededRng::new(seed);
    let carrier = named_carrier("e", n);
    BinaryRelation::from_fn(carrier, |_, _| rng.chance(density))
}

pub fn gen_predicate(seed: u64, n: usize, density: f64) -> Predicate {
    assert!(n >= 1);
    let mut rng = SeededRng::new(seed);
    let draws: Vec<bool> = (0..n).map(|_| rng.chance(density)).collect();
    Predicate::from_fn(named_carrier("e", n), |i| draws[i])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreorderMethod {
    /// Reflexive-transitive closure of a random relation.
    Closure,
    /// Random partition lifted through a random partial order on its blocks.
    Quotient,
}

/// Random preorder on `e0 .. e{n-1}`.
pub fn gen_preorder(seed: u64, n: usize, method: PreorderMethod, density: f64) -> Preorder {
    assert!(n >= 1);
    match method {
        PreorderMethod::Closure => {
            Preorder::new(gen_relation(seed, n, density).reflexive_transitive_closure())
                .expect("closure is a preorder")
        }
        PreorderMethod::Quotient => {
            let mut rng = SeededRng::new(seed);
            let classes = gen_partition(&mut rng, named_carrier("e", n));
            let order = random_partial_order(&mut rng, classes.block_carrier(), density);
            preorder_from_quotient_order(&classes, order.relation())
                .expect("random order on blocks is a partial order")
        }
    }
}

/// Random partition: `k = 1 + below(n)` labels, each element labeled with
/// `below(k)`, empty labels dropped.
fn gen_partition(rng: &mut SeededRng, carrier: Carrier) -> EquivalenceClasses {
    let n = carrier.len();
    let k = 1 + rng.below(n);
    let labels: Vec<usize> = (0..n).map(|_| rng.below(k)).collect();
    let blocks: Vec<Vec<&str>> = (0..k)
        .map(|l| {
            (0..n)
                .filter(|&i| labels[i] == l)
                .map(|i| carrier.name(i))
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    EquivalenceClasses::new(carrier.clone(), &blocks).expect("labels partition the carrier")
}

/// A mixed bundle for round-trip testing: one category (poset, doubled
/// poset or monoid, by seed), a set, and a relation, preorder and predicate
/// over the set, plus a relation over the category's objects.
pub fn gen_bundle(seed: u64) -> Bundle {
    let mut rng = SeededRng::new(seed);
    let n = 1 + rng.below(6);
    let category = match seed % 3 {
        0 => gen_poset_category(rng.next_u64(), n),
        1 => gen_doubled_poset_category(rng.next_u64(), n.min(4)),
        _ => gen_monoid_category(rng.next_u64(), 1 + rng.below(3), 1 + rng.below(2)),
    };
    let m = 1 + rng.below(8);
    let method = if rng.chance(0.5) {
        PreorderMethod::Closure
    } else {
        PreorderMethod::Quotient
    };
    let relation = gen_relation(rng.next_u64(), m, rng.unit());
    let preorder = gen_preorder(rng.next_u64(), m, method, rng.unit());
    let predicate = gen_predicate(rng.next_u64(), m, rng.unit());
    let objects = Carrier::new(category.object_names().iter().cloned()).expect("object names");
    let density = rng.unit();
    let on_objects = BinaryRelation::from_fn(objects, |_, _| rng.chance(density));

    let mut b = Bundle::default();
    let set = CarrierRef::Set("s".into());
    b.add_category("c", category).expect("fresh");
    b.add_set("s", named_carrier("e", m)).expect("fresh");
    b.add_relation("r", set.clone(), relation)
        .expect("carrier matches");
    b.add_preorder("p", set.clone(), preorder)
        .expect("carrier matches");
    b.add_predicate("q", set, predicate)
        .expect("carrier matches");
    b.add_relation("rc", CarrierRef::ObjectsOf("c".into()), on_objects)
        .expect("carrier matches");
    b
}
