//! `celab` — exact verification runs over finite group algebras: group
//! structure, centrally essential certificates, standard identities, and
//! algebraic degree over the center.
//!
//! Exit codes: 0 = verdict computed (negative verdicts included), 1 =
//! internal error, 2 = budget or configuration error. JSON reports embed the
//! full configuration and are byte-identical across reruns of the same
//! seeded command.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use celab_core::algdeg::{
    algebraic_degree, d_of_m, escape_element, DegreeMode, DegreeOutcome,
};
use celab_core::algebra::{Algebra, AlgElem};
use celab_core::central::{ce_check, ce_product, CeReport, CeStrategy};
use celab_core::error::Error;
use celab_core::fixtures::{load_group_table, load_polynomial, parse_algebra_spec};
use celab_core::group::{
    center, conjugacy_classes, derived_subgroup, enumerate_subgroups, make_heisenberg,
    min_index_commutator_product, nilpotency_class, verify_commutator_formula, FiniteGroup,
    GroupParams, VerifyMode,
};
use celab_core::pi::{
    identity_witness_search, MultilinearPolynomial, PiStrategy, SearchOutcome,
};
use celab_core::rng::SplitMix64;

#[derive(Parser)]
#[command(name = "celab", version, about = "Exact algebra runs over F_p: group algebras, central essentiality, polynomial identities, algebraic degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and analyze G(n) (or a table-group fixture)
    Group(GroupArgs),
    /// Decide the centrally essential property of an algebra
    Ce(CeArgs),
    /// Search standard-identity witnesses over a degree range
    Pi(PiArgs),
    /// Algebraic degree over the center, per element or swept
    Algdeg(AlgdegArgs),
    /// Factor-wise runs over a direct product
    Product(ProductArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Prime p of G(n)
    #[arg(long)]
    p: Option<u32>,
    /// Exponent n of G(n)
    #[arg(long)]
    n: Option<u32>,
    /// Table-group fixture file instead of (p, n)
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(value_enum)]
    action: GroupAction,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    Info,
    Verify,
    Subgroups,
    Bound,
}

#[derive(Args)]
struct CeArgs {
    /// Algebra spec: ga:p:n | q8:p | mat:p:k | file:path | prod:spec,spec
    #[arg(long)]
    algebra: String,
    #[arg(long, value_enum, default_value_t = Strategy::Exhaustive)]
    mode: Strategy,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct PiArgs {
    #[arg(long)]
    algebra: String,
    /// Inclusive degree range, e.g. 2..5
    #[arg(long, default_value = "2..4")]
    degrees: String,
    #[arg(long, value_enum, default_value_t = PiMode::Basis)]
    mode: PiMode,
    /// Polynomial fixture file to test instead of the standard identities
    #[arg(long)]
    poly: Option<PathBuf>,
    #[arg(long, default_value_t = 2000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PiMode {
    Basis,
    Randomized,
}

#[derive(Args)]
struct AlgdegArgs {
    #[arg(long)]
    algebra: String,
    /// Element spec: basis:i or vec:c0,c1,...
    #[arg(long)]
    element: Option<String>,
    /// Sweep all (or sampled) elements instead of one
    #[arg(long, value_enum)]
    sweep: Option<Strategy>,
    #[arg(long, value_enum, default_value_t = Mode::Regular)]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Regular,
    Invertible,
}

impl From<Mode> for DegreeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Regular => DegreeMode::Regular,
            Mode::Invertible => DegreeMode::Invertible,
        }
    }
}

#[derive(Args)]
struct ProductArgs {
    /// Comma-separated factor specs, e.g. ga:2:1,ga:2:2
    #[arg(long)]
    specs: String,
    #[arg(long, value_enum)]
    action: ProductAction,
    /// Instances (escape) or per-factor samples (ce) for randomized parts
    #[arg(long, default_value_t = 2000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductAction {
    Ce,
    Escape,
}

fn budgets() -> serde_json::Value {
    json!({
        "group_order": celab_core::group::GROUP_ORDER_BUDGET,
        "subgroup_enumeration_order": celab_core::group::SUBGROUP_BUDGET,
        "analysis_order": celab_core::group::ANALYSIS_BUDGET,
        "algebra_dim": celab_core::algebra::ALGEBRA_DIM_BUDGET,
        "element_sweep": celab_core::algebra::ELEMENT_SWEEP_BUDGET,
        "basis_tuples": celab_core::pi::BASIS_TUPLE_BUDGET,
        "degree_cap": celab_core::pi::MAX_DEGREE,
    })
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: serde_json::Value,
    budgets: serde_json::Value,
    result: T,
}

fn emit<T: Serialize>(command: &'static str, config: serde_json::Value, result: T) {
    let envelope = Envelope {
        tool: "celab",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
        budgets: budgets(),
        result,
    };
    println!("{}", serde_json::to_string(&envelope).expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Group(args) => cmd_group(args),
        Command::Ce(args) => cmd_ce(args),
        Command::Pi(args) => cmd_pi(args),
        Command::Algdeg(args) => cmd_algdeg(args),
        Command::Product(args) => cmd_product(args),
    }
}

fn resolve_group(args: &GroupArgs) -> Result<FiniteGroup, Error> {
    match (&args.fixture, args.p, args.n) {
        (Some(path), None, None) => load_group_table(path),
        (None, Some(p), Some(n)) => make_heisenberg(GroupParams::new(p, n)?),
        _ => Err(Error::InvalidInput(
            "pass either --p and --n, or --fixture".into(),
        )),
    }
}

fn cmd_group(args: GroupArgs) -> Result<(), Error> {
    let group = resolve_group(&args)?;
    let config = json!({
        "p": args.p, "n": args.n,
        "fixture": args.fixture.as_ref().map(|p| p.display().to_string()),
        "seed": args.seed,
    });
    match args.action {
        GroupAction::Info => {
            let z = center(&group)?;
            let d = derived_subgroup(&group)?;
            let class = nilpotency_class(&group)?;
            let classes = conjugacy_classes(&group)?;
            if args.json {
                emit("group-info", config, json!({
                    "name": group.name(),
                    "order": group.order(),
                    "center_order": z.order(),
                    "derived_order": d.order(),
                    "nilpotency_class": class,
                    "conjugacy_classes": classes.len(),
                }));
            } else {
                println!("{}", group.name());
                println!("  order               {}", group.order());
                println!("  |Z(G)|              {}", z.order());
                println!("  |G'|                {}", d.order());
                println!("  nilpotency class    {class}");
                println!("  conjugacy classes   {}", classes.len());
            }
        }
        GroupAction::Verify => {
            let mode = if group.order() <= celab_core::group::ASSOC_EXHAUSTIVE_BUDGET {
                VerifyMode::Exhaustive
            } else {
                VerifyMode::Sampled {
                    triples: celab_core::group::SAMPLED_CHECKS,
                    seed: args.seed,
                }
            };
            group.verify_axioms(mode)?;
            let formula = if group.params().is_some() {
                let check = verify_commutator_formula(&group, args.seed)?;
                if !check.holds {
                    return Err(Error::GroupAxiom(format!(
                        "commutator formula fails at pair {:?}",
                        check.counterexample
                    )));
                }
                Some(check)
            } else {
                None
            };
            if args.json {
                emit("group-verify", config, json!({
                    "name": group.name(),
                    "axioms": "ok",
                    "commutator_formula": formula.as_ref().map(|c| json!({
                        "holds": c.holds,
                        "pairs_checked": c.pairs_checked,
                        "exhaustive": c.exhaustive,
                    })),
                }));
            } else {
                println!("{}: axioms ok", group.name());
                match formula {
                    Some(c) => println!(
                        "commutator formula holds on {} pairs ({})",
                        c.pairs_checked,
                        if c.exhaustive { "exhaustive" } else { "sampled" }
                    ),
                    None => println!("commutator formula: not applicable (table group)"),
                }
            }
        }
        GroupAction::Subgroups => {
            let subgroups = enumerate_subgroups(&group)?;
            if args.json {
                let list: Vec<_> = subgroups
                    .iter()
                    .map(|s| json!({"order": s.order(), "members": s.members()}))
                    .collect();
                emit("group-subgroups", config, json!({
                    "name": group.name(),
                    "count": subgroups.len(),
                    "subgroups": list,
                }));
            } else {
                println!("{}: {} subgroups", group.name(), subgroups.len());
                for s in &subgroups {
                    println!("  order {:>3}  {:?}", s.order(), s.members());
                }
            }
        }
        GroupAction::Bound => {
            let (value, witness) = min_index_commutator_product(&group)?;
            let pn = group.params().map(|p| p.modulus());
            if args.json {
                emit("group-bound", config, json!({
                    "name": group.name(),
                    "min_index_times_derived": value,
                    "witness_order": witness.order(),
                    "witness_members": witness.members(),
                    "p_to_n": pn,
                    "bound_holds": pn.map(|b| value >= b),
                }));
            } else {
                println!(
                    "{}: min [G:H]|H'| = {value} (witness order {})",
                    group.name(),
                    witness.order()
                );
                if let Some(pn) = pn {
                    println!("bound p^n = {pn}: {}", if value >= pn { "holds" } else { "VIOLATED" });
                }
            }
        }
    }
    Ok(())
}

fn cmd_ce(args: CeArgs) -> Result<(), Error> {
    let algebra = parse_algebra_spec(&args.algebra)?;
    let strategy = match args.mode {
        Strategy::Exhaustive => CeStrategy::Exhaustive,
        Strategy::Randomized => CeStrategy::Randomized {
            samples: args.samples,
            seed: args.seed,
        },
    };
    let report = ce_check(&algebra, strategy)?;
    let config = json!({
        "algebra": args.algebra,
        "mode": match args.mode { Strategy::Exhaustive => "exhaustive", Strategy::Randomized => "randomized" },
        "samples": if args.mode == Strategy::Randomized { Some(args.samples) } else { None },
        "seed": if args.mode == Strategy::Randomized { Some(args.seed) } else { None },
    });
    print_ce(&algebra, &report, args.json, config);
    Ok(())
}

fn print_ce(algebra: &Algebra, report: &CeReport, as_json: bool, config: serde_json::Value) {
    if as_json {
        emit("ce", config, report);
    } else {
        println!("{}: {:?} ({} probed, {} certified, {} ms)",
            report.algebra,
            report.verdict,
            report.certificate_counts.probed,
            report.certificate_counts.certified,
            report.elapsed_ms,
        );
        if let Some(w) = &report.witness {
            if let Ok(elem) = algebra.elem(w.clone()) {
                println!("witness: {}", algebra.format_elem(&elem));
            }
        }
    }
}

fn parse_degree_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Error> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::InvalidInput(format!("degree range '{s}' is not of the form a..b")))?;
    let lo: usize = lo
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad degree '{lo}'")))?;
    let hi: usize = hi
        .trim_start_matches('=')
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad degree '{hi}'")))?;
    if lo < 1 || hi < lo {
        return Err(Error::InvalidInput(format!("empty degree range '{s}'")));
    }
    Ok(lo..=hi)
}

fn cmd_pi(args: PiArgs) -> Result<(), Error> {
    let algebra = parse_algebra_spec(&args.algebra)?;
    let strategy = match args.mode {
        PiMode::Basis => PiStrategy::BasisExhaustive,
        PiMode::Randomized => PiStrategy::Randomized {
            samples: args.samples,
            seed: args.seed,
        },
    };
    let config = json!({
        "algebra": args.algebra,
        "degrees": args.degrees,
        "mode": match args.mode { PiMode::Basis => "basis", PiMode::Randomized => "randomized" },
        "poly": args.poly.as_ref().map(|p| p.display().to_string()),
        "samples": args.samples,
        "seed": args.seed,
    });
    if let Some(path) = &args.poly {
        let poly = load_polynomial(path)?;
        let outcome = identity_witness_search(&algebra, &poly, strategy)?;
        let result = search_outcome_json(&outcome);
        if args.json {
            emit("pi", config, json!({"degree": poly.degree(), "outcome": result}));
        } else {
            println!(
                "degree-{} polynomial on {}: {}",
                poly.degree(),
                algebra.name(),
                describe_outcome(&outcome)
            );
        }
        return Ok(());
    }
    let range = parse_degree_range(&args.degrees)?;
    let mut rows = Vec::new();
    let mut d_min: Option<(usize, bool)> = None;
    for d in range {
        let st = MultilinearPolynomial::standard(d)?;
        let outcome = identity_witness_search(&algebra, &st, strategy)?;
        if d_min.is_none() {
            match &outcome {
                SearchOutcome::ExhaustedProof { .. } => d_min = Some((d, true)),
                SearchOutcome::ExhaustedSampled { .. } => d_min = Some((d, false)),
                SearchOutcome::Witness(_) => {}
            }
        }
        rows.push((d, outcome));
    }
    if args.json {
        let degrees: Vec<_> = rows
            .iter()
            .map(|(d, o)| json!({"degree": d, "outcome": search_outcome_json(o)}))
            .collect();
        emit("pi", config, json!({
            "algebra": algebra.name(),
            "degrees": degrees,
            "d_min": d_min.map(|(d, _)| d),
            "proof_grade": d_min.map(|(_, p)| p),
        }));
    } else {
        println!("{}:", algebra.name());
        for (d, outcome) in &rows {
            println!("  St_{d}: {}", describe_outcome(outcome));
        }
        match d_min {
            Some((d, proof)) => println!(
                "d_min = {d} ({})",
                if proof { "proof-grade" } else { "sampled evidence" }
            ),
            None => println!("d_min not reached in range (witnesses everywhere)"),
        }
    }
    Ok(())
}

fn describe_outcome(outcome: &SearchOutcome) -> String {
    match outcome {
        SearchOutcome::Witness(w) => format!("witness {:?}", w.args),
        SearchOutcome::ExhaustedProof { tuples_checked } => {
            format!("identity (proof over {tuples_checked} basis tuples)")
        }
        SearchOutcome::ExhaustedSampled { samples } => {
            format!("no witness in {samples} samples")
        }
    }
}

fn search_outcome_json(outcome: &SearchOutcome) -> serde_json::Value {
    match outcome {
        SearchOutcome::Witness(w) => json!({"witness": w}),
        SearchOutcome::ExhaustedProof { tuples_checked } => {
            json!({"exhausted": "proof", "tuples_checked": tuples_checked})
        }
        SearchOutcome::ExhaustedSampled { samples } => {
            json!({"exhausted": "sampled", "samples": samples})
        }
    }
}

fn parse_element(algebra: &Algebra, spec: &str) -> Result<AlgElem, Error> {
    if let Some(rest) = spec.strip_prefix("basis:") {
        let i: usize = rest
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad basis index '{rest}'")))?;
        if i >= algebra.dim() {
            return Err(Error::InvalidInput(format!(
                "basis index {i} out of range 0..{}",
                algebra.dim()
            )));
        }
        return Ok(algebra.basis_elem(i));
    }
    if let Some(rest) = spec.strip_prefix("vec:") {
        let coeffs = rest
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient vector '{rest}'")))?;
        return algebra.elem(coeffs);
    }
    Err(Error::InvalidInput(format!(
        "element spec '{spec}' (expected basis:i or vec:c0,c1,...)"
    )))
}

fn cmd_algdeg(args: AlgdegArgs) -> Result<(), Error> {
    let algebra = parse_algebra_spec(&args.algebra)?;
    let mode: DegreeMode = args.mode.into();
    let config = json!({
        "algebra": args.algebra,
        "element": args.element,
        "sweep": args.sweep.map(|s| match s { Strategy::Exhaustive => "exhaustive", Strategy::Randomized => "randomized" }),
        "mode": mode,
        "samples": args.samples,
        "seed": args.seed,
    });
    match (&args.element, args.sweep) {
        (Some(spec), None) => {
            let r = parse_element(&algebra, spec)?;
            match algebraic_degree(&algebra, &r, mode)? {
                DegreeOutcome::Found(rel) => {
                    let report = rel.to_report(&algebra, &r)?;
                    if args.json {
                        emit("algdeg", config, report);
                    } else {
                        println!(
                            "{}: degree {} over the center (residual hash {})",
                            algebra.name(),
                            report.degree,
                            report.residual_hash
                        );
                    }
                }
                DegreeOutcome::Inconclusive { degree_reached, reason } => {
                    if args.json {
                        emit("algdeg", config, json!({
                            "inconclusive": true,
                            "degree_reached": degree_reached,
                            "reason": reason,
                        }));
                    } else {
                        println!("inconclusive at degree {degree_reached}: {reason}");
                    }
                }
            }
        }
        (None, Some(strategy)) => {
            let report = sweep_both_modes(&algebra, strategy, args.samples, args.seed)?;
            if args.json {
                emit("algdeg", config, report);
            } else {
                println!(
                    "{}: m1 = {} ({}, {} elements, n1 = n2 on all: {})",
                    algebra.name(),
                    report.m1,
                    if report.exact { "exact" } else { "lower bound" },
                    report.checked,
                    report.n1_equals_n2
                );
            }
        }
        _ => {
            return Err(Error::InvalidInput(
                "pass exactly one of --element or --sweep".into(),
            ))
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepReport {
    algebra: String,
    strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    m1: usize,
    witness: Vec<u32>,
    exact: bool,
    checked: u64,
    n1_equals_n2: bool,
    inconclusive: u64,
}

/// Sweeps elements computing both n_1 and n_2, checking their agreement
/// element by element.
fn sweep_both_modes(
    algebra: &Algebra,
    strategy: Strategy,
    samples: u64,
    seed: u64,
) -> Result<SweepReport, Error> {
    let mut m1 = 0usize;
    let mut witness = Vec::new();
    let mut checked = 0u64;
    let mut inconclusive = 0u64;
    let mut all_equal = true;
    let mut consider = |e: &AlgElem| -> Result<(), Error> {
        checked += 1;
        let n1 = algebraic_degree(algebra, e, DegreeMode::Regular)?;
        let n2 = algebraic_degree(algebra, e, DegreeMode::Invertible)?;
        match (n1.degree(), n2.degree()) {
            (Some(d1), Some(d2)) => {
                if d1 != d2 {
                    all_equal = false;
                }
                if d1 > m1 {
                    m1 = d1;
                    witness = e.coeffs().to_vec();
                }
            }
            _ => inconclusive += 1,
        }
        Ok(())
    };
    let (name, seed_out, exact) = match strategy {
        Strategy::Exhaustive => {
            let count = algebra.element_count().ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "exhaustive sweep over {}^{} elements",
                    algebra.field().p(),
                    algebra.dim()
                ))
            })?;
            for ordinal in 0..count {
                consider(&algebra.elem_from_ordinal(ordinal))?;
            }
            ("exhaustive", None, inconclusive == 0)
        }
        Strategy::Randomized => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..samples {
                consider(&algebra.random_nonzero_elem(&mut rng))?;
            }
            ("randomized", Some(seed), false)
        }
    };
    Ok(SweepReport {
        algebra: algebra.name().to_string(),
        strategy: name.into(),
        seed: seed_out,
        m1,
        witness,
        exact,
        checked,
        n1_equals_n2: all_equal,
        inconclusive,
    })
}

fn cmd_product(args: ProductArgs) -> Result<(), Error> {
    let factor_specs: Vec<&str> = args.specs.split(',').map(|s| s.trim()).collect();
    let factors: Vec<Arc<Algebra>> = factor_specs
        .iter()
        .map(|s| parse_algebra_spec(s))
        .collect::<Result<_, _>>()?;
    let product = celab_core::algebra::product_algebra(factors.clone())?;
    let config = json!({
        "specs": args.specs,
        "action": match args.action { ProductAction::Ce => "ce", ProductAction::Escape => "escape" },
        "samples": args.samples,
        "seed": args.seed,
    });
    match args.action {
        ProductAction::Ce => {
            let mut reports = Vec::new();
            for factor in &factors {
                let strategy = if factor.element_count().is_some() {
                    CeStrategy::Exhaustive
                } else {
                    CeStrategy::Randomized {
                        samples: args.samples,
                        seed: args.seed,
                    }
                };
                reports.push(ce_check(factor, strategy)?);
            }
            let combined = ce_product(&product, &reports)?;
            if args.json {
                emit("product-ce", config, json!({
                    "factors": reports,
                    "combined": combined,
                }));
            } else {
                for r in &reports {
                    println!("factor {}: {:?}", r.algebra, r.verdict);
                }
                println!("product {}: {:?}", combined.algebra, combined.verdict);
            }
        }
        ProductAction::Escape => {
            let mut rng = SplitMix64::new(args.seed);
            let components: Vec<AlgElem> = factors
                .iter()
                .map(|f| f.random_nonzero_elem(&mut rng))
                .collect();
            let report = escape_element(&product, &components, DegreeMode::Regular)?;
            let relation = report.relation.to_report(&product, &report.element.assembled)?;
            if args.json {
                emit("product-escape", config, json!({
                    "algebra": product.name(),
                    "component_degrees": report.component_degrees,
                    "degree": report.degree,
                    "d_of_max": d_of_m(report.degree as u64),
                    "relation": relation,
                }));
            } else {
                println!(
                    "{}: component degrees {:?}, assembled degree {} (d(m) = {})",
                    product.name(),
                    report.component_degrees,
                    report.degree,
                    d_of_m(report.degree as u64)
                );
            }
        }
    }
    Ok(())
}
