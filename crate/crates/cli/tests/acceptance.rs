//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use ump_core::dsl::{parse_document, serialize};
use ump_core::genlab::{self, PreorderMethod, SeededRng, DEFAULT_DENSITY};
use ump_core::model::{validate_category, FiniteCategory};
use ump_core::order::Preorder;
use ump_core::phi::Phi;
use ump_core::ump::{
    check_coproduct, check_product, enumerate_cones, find_products, product_uniqueness_certificate,
};
use ump_core::universality::{
    is_p_universal, is_p_universal_compact, is_q_ump_universal, is_r_universal_preorder,
    is_r_universal_strict, Consequent,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ump(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ump"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("run ump")
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn seeded_size(rng: &mut SeededRng, max: usize) -> usize {
    1 + rng.below(max)
}

fn seeded_method(rng: &mut SeededRng) -> PreorderMethod {
    if rng.chance(0.5) {
        PreorderMethod::Closure
    } else {
        PreorderMethod::Quotient
    }
}

fn c1_nat100_example() -> Outcome {
    let start = Instant::now();
    let found = |extra: &[&str]| -> Result<Vec<String>, String> {
        let mut args = vec![
            "find",
            "strict",
            "--file",
            "fixtures/nat100.ump",
            "--relation",
            "nat_gt",
        ];
        args.extend_from_slice(extra);
        let out = ump(&args);
        let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        Ok(report["universal"]
            .as_array()
            .ok_or("no `universal` field")?
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect())
    };
    let with = found(&["--exclude-self"])?;
    let without = found(&[])?;
    let took = within(Duration::from_secs(1), start)?;
    if with != ["1"] || !without.is_empty() {
        return Err(format!("with flag {with:?}, without {without:?}"));
    }
    Ok(format!("{{1}} with --exclude-self, none without, {took:?}"))
}

fn c2_property_equivalence() -> Outcome {
    let start = Instant::now();
    let phi = Phi::conjunction();
    let mut rng = SeededRng::new(0xC2);
    let mut pairs = 0;
    for tuple in 0..1000 {
        let n = seeded_size(&mut rng, 8);
        let method = seeded_method(&mut rng);
        let p = genlab::gen_preorder(rng.next_u64(), n, method, rng.unit());
        let pred = genlab::gen_predicate(rng.next_u64(), n, rng.unit());
        let (le, flags) = (oracle::order(&p), oracle::flags(&pred));
        for (u, name) in p.carrier().elements().iter().enumerate() {
            for (consequent, dual) in [(Consequent::Below, false), (Consequent::Above, true)] {
                let property =
                    is_p_universal(&pred, &phi, &p, name, consequent).map_err(|e| e.to_string())?;
                let compact =
                    is_p_universal_compact(&pred, &p, name, dual).map_err(|e| e.to_string())?;
                let expected = oracle::compact(&flags, &le, u, dual);
                if property.holds != compact.holds || compact.holds != expected {
                    return Err(format!("tuple {tuple}, candidate {name}, dual {dual}"));
                }
                pairs += 1;
            }
        }
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!(
        "1000 tuples, {pairs} (candidate, polarity) pairs agree, {took:?}"
    ))
}

fn c3_unique_isomorphism() -> Outcome {
    let start = Instant::now();
    let mut certificates = 0;
    for seed in 0..500u64 {
        let n = 1 + seed as usize % 6;
        let c = genlab::gen_doubled_poset_category(seed, n);
        for a in c.objects() {
            for b in c.objects() {
                let products = find_products(&c, a, b);
                for p1 in &products {
                    for p2 in &products {
                        let (u1, u2) = product_uniqueness_certificate(&c, p1, p2)
                            .map_err(|e| format!("seed {seed}: {e}"))?;
                        let round_trips = c.compose(u1, u2) == Some(c.identity(p1.apex))
                            && c.compose(u2, u1) == Some(c.identity(p2.apex));
                        if !round_trips {
                            return Err(format!("seed {seed}: mediators are not inverse"));
                        }
                        if p1 != p2 {
                            certificates += 1;
                        }
                    }
                }
            }
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    if certificates == 0 {
        return Err("no pair of distinct products was generated".into());
    }
    Ok(format!(
        "{certificates} certificates between distinct products, {took:?}"
    ))
}

fn c4_glb_oracle() -> Outcome {
    let mut cones = 0;
    for seed in 0..500u64 {
        let order = genlab::gen_poset_order(seed, 1 + seed as usize % 8, DEFAULT_DENSITY);
        let c = genlab::thin_category(&order);
        let le = oracle::order(&order);
        for a in c.objects() {
            for b in c.objects() {
                let glbs = oracle::glbs(&le, a.0, b.0);
                for cone in enumerate_cones(&c, a, b) {
                    let verdict = check_product(&c, &cone).map_err(|e| e.to_string())?.holds();
                    if verdict != glbs.contains(&cone.apex.0) {
                        return Err(format!("seed {seed}, cone {}", cone.display(&c)));
                    }
                    cones += 1;
                }
            }
        }
    }
    Ok(format!("{cones} cones over 500 posets match"))
}

fn c5_degeneracy() -> Outcome {
    let mut rng = SeededRng::new(0xC5);
    for pair in 0..1000 {
        let n = seeded_size(&mut rng, 8);
        let r = genlab::gen_relation(rng.next_u64(), n, rng.unit());
        let u = r.carrier().name(rng.below(n)).to_string();
        let exclude_self = rng.chance(0.5);
        let eq = Preorder::equality(r.carrier().clone());
        let strict = is_r_universal_strict(&r, &u, exclude_self).map_err(|e| e.to_string())?;
        let preorder =
            is_r_universal_preorder(&r, &eq, &u, exclude_self).map_err(|e| e.to_string())?;
        if strict != preorder {
            return Err(format!("pair {pair}: {strict} vs {preorder}"));
        }
    }
    Ok("1000 pairs, identical verdicts".into())
}

fn categories_for_duality(seed: u64) -> Vec<FiniteCategory> {
    vec![
        genlab::gen_poset_category(seed, 1 + seed as usize % 8),
        genlab::gen_doubled_poset_category(seed, 1 + seed as usize % 4),
    ]
}

fn c6_duality() -> Outcome {
    let mut cones = 0;
    for seed in 0..200u64 {
        for c in categories_for_duality(seed) {
            let op = c.opposite();
            for a in c.objects() {
                for b in c.objects() {
                    for cone in enumerate_cones(&op, a, b) {
                        let co = check_coproduct(&c, &cone).map_err(|e| e.to_string())?;
                        let pr = check_product(&op, &cone).map_err(|e| e.to_string())?;
                        if co != pr {
                            return Err(format!("seed {seed}, cocone {}", cone.display(&op)));
                        }
                        cones += 1;
                    }
                }
            }
        }
    }
    let mut rng = SeededRng::new(0xC6);
    for tuple in 0..1000 {
        let n = seeded_size(&mut rng, 8);
        let method = seeded_method(&mut rng);
        let p = genlab::gen_preorder(rng.next_u64(), n, method, DEFAULT_DENSITY);
        let q = genlab::gen_relation(rng.next_u64(), n, rng.unit());
        let rev = p.reverse();
        for u in p.carrier().elements() {
            let dual = is_q_ump_universal(&q, &p, u, true).map_err(|e| e.to_string())?;
            let plain = is_q_ump_universal(&q, &rev, u, false).map_err(|e| e.to_string())?;
            if dual != plain {
                return Err(format!("tuple {tuple}, candidate {u}"));
            }
        }
    }
    Ok(format!("{cones} cocones and 1000 ump tuples agree"))
}

fn c7_mutations() -> Outcome {
    let mut mutations = 0;
    for seed in 0..200u64 {
        let c = if seed % 2 == 0 {
            genlab::gen_poset_category(seed, 2 + seed as usize % 5)
        } else {
            genlab::gen_doubled_poset_category(seed, 1 + seed as usize % 3)
        };
        let entries: Vec<_> = c.composition_entries().collect();
        for ((f, g), h) in entries {
            for wrong in c.arrows() {
                let same_type = c.dom(wrong) == c.dom(h) && c.cod(wrong) == c.cod(h);
                if same_type {
                    continue;
                }
                if validate_category(&c.with_entry(f, g, wrong)).is_valid() {
                    return Err(format!(
                        "seed {seed}: {} . {} := {} escaped",
                        c.arrow_name(g),
                        c.arrow_name(f),
                        c.arrow_name(wrong)
                    ));
                }
                mutations += 1;
            }
        }
    }
    Ok(format!(
        "{mutations} mutations over 200 categories, all caught"
    ))
}

fn c8_round_trip() -> Outcome {
    let fixtures = root().join("fixtures");
    let mut files = 0;
    for entry in std::fs::read_dir(&fixtures).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|e| e == "ump") {
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let once = parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let twice = parse_document(&serialize(&once)).map_err(|e| e.to_string())?;
            if once != twice {
                return Err(format!("{} does not round-trip", path.display()));
            }
            files += 1;
        }
    }
    for seed in 0..1000 {
        let bundle = genlab::gen_bundle(seed);
        let text = serialize(&bundle);
        let parsed = parse_document(&text).map_err(|e| format!("bundle {seed}: {e}"))?;
        if parsed != bundle || parse_document(&serialize(&parsed)).ok() != Some(parsed) {
            return Err(format!("bundle {seed} does not round-trip"));
        }
    }
    let mut errors = 0;
    for entry in std::fs::read_dir(fixtures.join("errors")).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let out = ump(&["validate", path.to_str().unwrap()]);
        let stderr = String::from_utf8_lossy(&out.stderr);
        if out.status.code() != Some(2) || !stderr.contains(": line ") {
            return Err(format!(
                "{}: exit {:?}, stderr {stderr}",
                path.display(),
                out.status.code()
            ));
        }
        errors += 1;
    }
    if errors == 0 {
        return Err("empty error corpus".into());
    }
    Ok(format!(
        "{files} fixtures and 1000 bundles round-trip; {errors} error files exit 2 with a line"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 least element of {1..100} under >", c1_nat100_example),
        (
            "2 property form equals compact form",
            c2_property_equivalence,
        ),
        ("3 products are uniquely isomorphic", c3_unique_isomorphism),
        ("4 products match greatest lower bounds", c4_glb_oracle),
        ("5 equality preorder degenerates to strict", c5_degeneracy),
        ("6 duality", c6_duality),
        ("7 validator catches mistyped composites", c7_mutations),
        ("8 parser round trip and error corpus", c8_round_trip),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
