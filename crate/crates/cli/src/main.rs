use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ump_core::dsl::{self, Bundle, CarrierRef, ParseErrorKind, ParseOptions};
use ump_core::genlab::{self, PreorderMethod};
use ump_core::model::{FiniteCategory, Limits};
use ump_core::phi::Phi;
use ump_core::ump::{self as umpcheck, Cone, ProductCheck};
use ump_core::universality::{self, Consequent, FailingClause, Query, UniversalityVerdict};

#[derive(Parser)]
#[command(
    name = "ump",
    version,
    about = "Decide universality and universal mapping properties over finite structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and validate every category and preorder in it.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether a candidate is universal.
    Check(QueryArgs),
    /// List every universal element, object or cone.
    Find(QueryArgs),
    /// Print a seeded instance as a document.
    Gen(GenArgs),
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_objects)]
    max_objects: usize,
    #[arg(long, default_value_t = Limits::default().max_arrows)]
    max_arrows: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Strict,
    Preorder,
    Ump,
    Property,
    Compact,
    UniqueArrow,
    Product,
    Coproduct,
    Terminal,
    Initial,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Strict => "strict",
            Kind::Preorder => "preorder",
            Kind::Ump => "ump",
            Kind::Property => "property",
            Kind::Compact => "compact",
            Kind::UniqueArrow => "unique-arrow",
            Kind::Product => "product",
            Kind::Coproduct => "coproduct",
            Kind::Terminal => "terminal",
            Kind::Initial => "initial",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConsequentArg {
    None,
    Below,
    Above,
}

#[derive(Args)]
struct QueryArgs {
    definition: Kind,
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    relation: Option<String>,
    #[arg(long)]
    preorder: Option<String>,
    #[arg(long)]
    predicate: Option<String>,
    /// Formula in Pa and Pb, for `property`.
    #[arg(long)]
    phi: Option<String>,
    /// Order clause appended to phi, for `property`.
    #[arg(long, value_enum, default_value = "none")]
    consequent: ConsequentArg,
    #[arg(long)]
    candidate: Option<String>,
    /// Skip x = candidate in both quantifiers (`strict`, `preorder`).
    #[arg(long)]
    exclude_self: bool,
    /// Use the reversed preorder (`ump`, `compact`).
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    category: Option<String>,
    #[arg(long)]
    apex: Option<String>,
    #[arg(long)]
    leg_a: Option<String>,
    #[arg(long)]
    leg_b: Option<String>,
    /// Factor objects, for `find product|coproduct`.
    #[arg(long)]
    factor_a: Option<String>,
    #[arg(long)]
    factor_b: Option<String>,
    #[arg(long)]
    object: Option<String>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Poset,
    DoubledPoset,
    Monoid,
    Divisors,
    Relation,
    Preorder,
    Predicate,
    Bundle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closure,
    Quotient,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size: objects, elements, monoid points, or the number whose divisors are used.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = genlab::DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, value_enum, default_value = "closure")]
    method: MethodArg,
    /// Name of the generated declaration.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Serialize)]
struct Report {
    holds: bool,
    definition: &'static str,
    candidate: String,
    failing_clause: Option<&'static str>,
    counterexample: Option<String>,
    rivals: Vec<String>,
    elapsed_ms: u64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    product: Option<ProductExtra>,
}

#[derive(Serialize)]
struct ProductExtra {
    certificate_size: Option<usize>,
    mediator_count: Option<usize>,
}

#[derive(Serialize)]
struct FindReport {
    holds: bool,
    definition: &'static str,
    universal: Vec<String>,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct ValidateReport {
    holds: bool,
    definition: &'static str,
    violations: Vec<String>,
    elapsed_ms: u64,
}

/// A failure that ends the run with exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file, limits } => validate(&file, &limits),
        Command::Check(args) => check(&args),
        Command::Find(args) => find(&args),
        Command::Gen(args) => gen(&args),
    };
    match result {
        Ok(holds) => ExitCode::from(if holds { 0 } else { 1 }),
        Err(Usage(message)) => {
            eprintln!("ump: error: {message}");
            ExitCode::from(2)
        }
    }
}

fn options(limits: &LimitArgs) -> ParseOptions {
    ParseOptions {
        limits: Limits {
            max_objects: limits.max_objects,
            max_arrows: limits.max_arrows,
        },
        ..ParseOptions::default()
    }
}

fn read(file: &PathBuf) -> Result<String, Usage> {
    std::fs::read_to_string(file).map_err(|e| Usage(format!("{}: {e}", file.display())))
}

fn load(file: &PathBuf, limits: &LimitArgs) -> Result<Bundle, Usage> {
    let text = read(file)?;
    dsl::parse_document_with(&text, options(limits)).map_err(|e| {
        let mut message = format!("{}: {e}", file.display());
        for v in &e.violations {
            message.push_str(&format!("\n  {v}"));
        }
        Usage(message)
    })
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn emit<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string(report).expect("reports serialize")
    );
}

fn validate(file: &PathBuf, limits: &LimitArgs) -> Result<bool, Usage> {
    let start = Instant::now();
    let text = read(file)?;
    let violations = match dsl::parse_document_with(&text, options(limits)) {
        Ok(_) => Vec::new(),
        Err(e) if e.kind == ParseErrorKind::Axiom => {
            eprintln!("{}: {e}", file.display());
            e.violations
        }
        Err(e) => return Err(Usage(format!("{}: {e}", file.display()))),
    };
    let holds = violations.is_empty();
    if holds {
        eprintln!("{}: valid", file.display());
    }
    emit(&ValidateReport {
        holds,
        definition: "validate",
        violations,
        elapsed_ms: elapsed(start),
    });
    Ok(holds)
}

fn need<'a>(value: &'a Option<String>, flag: &str, kind: Kind) -> Result<&'a str, Usage> {
    value
        .as_deref()
        .ok_or_else(|| Usage(format!("`{}` requires --{flag}", kind.name())))
}

/// Owned pieces a `Query` borrows from.
struct Loaded {
    bundle: Bundle,
    phi: Option<Phi>,
}

impl Loaded {
    fn query<'a>(&'a self, args: &QueryArgs) -> Result<Query<'a>, Usage> {
        let kind = args.definition;
        let b = &self.bundle;
        let preorder =
            || -> Result<_, Usage> { Ok(b.preorder(need(&args.preorder, "preorder", kind)?)?) };
        let predicate =
            || -> Result<_, Usage> { Ok(b.predicate(need(&args.predicate, "predicate", kind)?)?) };
        let relation =
            || -> Result<_, Usage> { Ok(b.any_relation(need(&args.relation, "relation", kind)?)?) };
        Ok(match kind {
            Kind::Strict => Query::Strict {
                relation: relation()?,
                exclude_self: args.exclude_self,
            },
            Kind::Preorder => Query::Preorder {
                relation: relation()?,
                preorder: preorder()?,
                exclude_self: args.exclude_self,
            },
            Kind::Ump => Query::Ump {
                q: relation()?,
                preorder: preorder()?,
                dual: args.dual,
            },
            Kind::Property => Query::Property {
                predicate: predicate()?,
                phi: self.phi.as_ref().expect("loaded for property"),
                preorder: preorder()?,
                consequent: match args.consequent {
                    ConsequentArg::None => Consequent::None,
                    ConsequentArg::Below => Consequent::Below,
                    ConsequentArg::Above => Consequent::Above,
                },
            },
            Kind::Compact => Query::Compact {
                predicate: predicate()?,
                preorder: preorder()?,
                dual: args.dual,
            },
            _ => unreachable!("not a relational definition"),
        })
    }
}

fn load_query_inputs(args: &QueryArgs) -> Result<Loaded, Usage> {
    let bundle = load(&args.file, &args.limits)?;
    let phi = if args.definition == Kind::Property {
        let text = need(&args.phi, "phi", args.definition)?;
        Some(Phi::parse(text).map_err(|e| Usage(format!("--phi: {e}")))?)
    } else {
        None
    };
    Ok(Loaded { bundle, phi })
}

fn verdict_report(kind: Kind, candidate: &str, v: UniversalityVerdict, start: Instant) -> Report {
    Report {
        holds: v.holds,
        definition: kind.name(),
        candidate: candidate.to_string(),
        failing_clause: v.failing_clause.as_str(),
        counterexample: v.counterexample,
        rivals: v.rival_witnesses,
        elapsed_ms: elapsed(start),
        product: None,
    }
}

fn clause(count: usize) -> FailingClause {
    if count == 0 {
        FailingClause::Membership
    } else {
        FailingClause::Uniqueness
    }
}

fn check(args: &QueryArgs) -> Result<bool, Usage> {
    let start = Instant::now();
    let kind = args.definition;
    let loaded = load_query_inputs(args)?;
    let b = &loaded.bundle;
    let report = match kind {
        Kind::Strict | Kind::Preorder | Kind::Ump | Kind::Property | Kind::Compact => {
            let candidate = need(&args.candidate, "candidate", kind)?;
            let verdict = loaded.query(args)?.check(candidate)?;
            eprintln!("{}: {candidate}: {verdict}", kind.name());
            verdict_report(kind, candidate, verdict, start)
        }
        Kind::UniqueArrow => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            let r = b.any_relation(need(&args.relation, "relation", kind)?)?;
            let candidate = need(&args.candidate, "candidate", kind)?;
            let verdict = universality::is_unique_arrow_universal(c, r, candidate)?;
            eprintln!("{}: {candidate}: {verdict}", kind.name());
            verdict_report(kind, candidate, verdict, start)
        }
        Kind::Product | Kind::Coproduct => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            let apex = need(&args.apex, "apex", kind)?;
            let leg_a = need(&args.leg_a, "leg-a", kind)?;
            let leg_b = need(&args.leg_b, "leg-b", kind)?;
            // A coproduct in c is a product in its opposite.
            let ambient = if kind == Kind::Product {
                c.clone()
            } else {
                c.opposite()
            };
            let cone = Cone::from_names(&ambient, apex, leg_a, leg_b)?;
            let outcome = umpcheck::check_product(&ambient, &cone)?;
            let rivals = cones_except(&ambient, &cone);
            let candidate = cone.display(&ambient).to_string();
            let (failing_clause, counterexample, extra) = match &outcome {
                ProductCheck::Certified(cert) => (
                    FailingClause::None,
                    None,
                    ProductExtra {
                        certificate_size: Some(cert.mediators.len()),
                        mediator_count: None,
                    },
                ),
                ProductCheck::Refuted {
                    cone,
                    mediator_count,
                } => (
                    clause(*mediator_count),
                    Some(cone.display(&ambient).to_string()),
                    ProductExtra {
                        certificate_size: None,
                        mediator_count: Some(*mediator_count),
                    },
                ),
            };
            match &outcome {
                ProductCheck::Certified(cert) => eprintln!(
                    "{}: {candidate} holds; every one of {} cones has one mediator",
                    kind.name(),
                    cert.mediators.len()
                ),
                ProductCheck::Refuted { mediator_count, .. } => eprintln!(
                    "{}: {candidate} fails; cone {} has {mediator_count} mediators",
                    kind.name(),
                    counterexample.as_deref().unwrap_or("-")
                ),
            }
            Report {
                holds: outcome.holds(),
                definition: kind.name(),
                candidate,
                failing_clause: failing_clause.as_str(),
                counterexample,
                rivals,
                elapsed_ms: elapsed(start),
                product: Some(extra),
            }
        }
        Kind::Terminal | Kind::Initial => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            let object = need(&args.object, "object", kind)?;
            let x = c.object_id(object)?;
            let outcome = terminal_like(c, kind, x);
            let rivals: Vec<String> = c
                .objects()
                .filter(|&y| y != x && terminal_like(c, kind, y).holds)
                .map(|y| c.object_name(y).to_string())
                .collect();
            let (failing_clause, counterexample) = match outcome.witness {
                None => (FailingClause::None, None),
                Some((y, n)) => {
                    eprintln!(
                        "{}: {object} fails; {n} arrows between it and {}",
                        kind.name(),
                        c.object_name(y)
                    );
                    (clause(n), Some(c.object_name(y).to_string()))
                }
            };
            if outcome.holds {
                eprintln!("{}: {object} holds", kind.name());
            }
            Report {
                holds: outcome.holds,
                definition: kind.name(),
                candidate: object.to_string(),
                failing_clause: failing_clause.as_str(),
                counterexample,
                rivals,
                elapsed_ms: elapsed(start),
                product: None,
            }
        }
    };
    emit(&report);
    Ok(report.holds)
}

fn terminal_like(
    c: &FiniteCategory,
    kind: Kind,
    x: ump_core::model::ObjId,
) -> umpcheck::TerminalCheck {
    if kind == Kind::Terminal {
        umpcheck::is_terminal(c, x)
    } else {
        umpcheck::is_initial(c, x)
    }
}

/// Every product cone over the factors of `cone`, other than `cone`.
fn cones_except(c: &FiniteCategory, cone: &Cone) -> Vec<String> {
    umpcheck::find_products(c, cone.factors.0, cone.factors.1)
        .into_iter()
        .filter(|k| k != cone)
        .map(|k| k.display(c).to_string())
        .collect()
}

fn find(args: &QueryArgs) -> Result<bool, Usage> {
    let start = Instant::now();
    let kind = args.definition;
    let loaded = load_query_inputs(args)?;
    let b = &loaded.bundle;
    let universal: Vec<String> = match kind {
        Kind::Strict | Kind::Preorder | Kind::Ump | Kind::Property | Kind::Compact => {
            loaded.query(args)?.find()?
        }
        Kind::UniqueArrow => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            let r = b.any_relation(need(&args.relation, "relation", kind)?)?;
            let mut found = Vec::new();
            for name in c.object_names() {
                if universality::is_unique_arrow_universal(c, r, name)?.holds {
                    found.push(name.clone());
                }
            }
            found
        }
        Kind::Product | Kind::Coproduct => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            let a = c.object_id(need(&args.factor_a, "factor-a", kind)?)?;
            let bb = c.object_id(need(&args.factor_b, "factor-b", kind)?)?;
            let ambient = if kind == Kind::Product {
                c.clone()
            } else {
                c.opposite()
            };
            umpcheck::find_products(&ambient, a, bb)
                .iter()
                .map(|k| k.display(&ambient).to_string())
                .collect()
        }
        Kind::Terminal | Kind::Initial => {
            let c = b.category(need(&args.category, "category", kind)?)?;
            c.objects()
                .filter(|&x| terminal_like(c, kind, x).holds)
                .map(|x| c.object_name(x).to_string())
                .collect()
        }
    };
    if universal.is_empty() {
        eprintln!("{}: none", kind.name());
    } else {
        eprintln!("{}: {}", kind.name(), universal.join(", "));
    }
    let holds = !universal.is_empty();
    emit(&FindReport {
        holds,
        definition: kind.name(),
        universal,
        elapsed_ms: elapsed(start),
    });
    Ok(holds)
}

fn gen(args: &GenArgs) -> Result<bool, Usage> {
    let n = args.n;
    if n == 0 {
        return Err(Usage("--n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&args.density) {
        return Err(Usage("--density must lie in [0, 1]".into()));
    }
    let name = |default: &str| args.name.clone().unwrap_or_else(|| default.to_string());
    let limits = Limits::default();
    let mut bundle = Bundle::default();
    let set = || genlab::named_carrier("e", n);
    let on_set = CarrierRef::Set("s".into());
    match args.kind {
        GenKind::Poset | GenKind::DoubledPoset => {
            let max = if matches!(args.kind, GenKind::Poset) {
                limits.max_objects
            } else {
                limits.max_objects / 2
            };
            if n > max {
                return Err(Usage(format!("--n must be at most {max}")));
            }
            let c = if matches!(args.kind, GenKind::Poset) {
                genlab::gen_poset_category(args.seed, n)
            } else {
                genlab::gen_doubled_poset_category(args.seed, n)
            };
            bundle.add_category(&name("c"), c)?;
        }
        GenKind::Monoid => {
            if n > 3 {
                return Err(Usage("--n (points) must be at most 3".into()));
            }
            bundle.add_category(&name("m"), genlab::gen_monoid_category(args.seed, n, 2))?;
        }
        GenKind::Divisors => {
            let n = u32::try_from(n)
                .ok()
                .filter(|&n| n <= 100_000)
                .ok_or_else(|| Usage("--n is too large".into()))?;
            bundle.add_category(&name(&format!("d{n}")), genlab::divisor_category(n))?;
        }
        GenKind::Relation => {
            bundle.add_set("s", set())?;
            bundle.add_relation(
                &name("r"),
                on_set,
                genlab::gen_relation(args.seed, n, args.density),
            )?;
        }
        GenKind::Preorder => {
            let method = match args.method {
                MethodArg::Closure => PreorderMethod::Closure,
                MethodArg::Quotient => PreorderMethod::Quotient,
            };
            bundle.add_set("s", set())?;
            bundle.add_preorder(
                &name("p"),
                on_set,
                genlab::gen_preorder(args.seed, n, method, args.density),
            )?;
        }
        GenKind::Predicate => {
            bundle.add_set("s", set())?;
            bundle.add_predicate(
                &name("q"),
                on_set,
                genlab::gen_predicate(args.seed, n, args.density),
            )?;
        }
        GenKind::Bundle => bundle = genlab::gen_bundle(args.seed),
    }
    print!("{}", dsl::serialize(&bundle));
    Ok(true)
}
