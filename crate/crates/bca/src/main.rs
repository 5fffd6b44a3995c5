use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use bca::analyze::{analyze, AnalyzeOptions};
use bca::catalog::{catalog_with_env, find, CatalogEntry};
use bca::report::VerificationReport;
use bca::suites::{run_suite, SuiteId, SuiteOptions};
use bca_core::algebra::hh1_dim;
use bca_core::blocks::{block_decomposition, defect_groups, splitting_field};
use bca_core::cocycle::{cocycle_to_json, h2_classes};

/// Block cohomology analyzer: exact first Hochschild cohomology of
/// (twisted) group algebras and their blocks over finite fields, with
/// verification suites for the nonvanishing criteria it implements.
#[derive(Parser)]
#[command(name = "bca", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog inspection
    Groups {
        #[command(subcommand)]
        cmd: GroupsCmd,
    },
    /// Full analysis of one group at one prime
    Analyze(AnalyzeArgs),
    /// Block decomposition report for one group at one prime
    Blocks(BlocksArgs),
    /// Run a verification suite over the catalog
    Verify(VerifyArgs),
    /// Enumerate 2-cocycle classes of a group
    Cocycles(CocyclesArgs),
}

#[derive(Subcommand)]
enum GroupsCmd {
    /// List catalog groups with orders and tags
    List,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    /// Torsion order for cocycle values (default: p'-part of |G|)
    #[arg(long)]
    m: Option<u64>,
    /// Field order q = p^e for twisted computations (default: smallest
    /// field containing the needed roots of unity)
    #[arg(long)]
    field: Option<u64>,
    /// Write the full JSON report here
    #[arg(long)]
    json: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on materialized cohomology class representatives
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Exhaustive associativity validation regardless of dimension
    #[arg(long)]
    paranoid: bool,
}

#[derive(Args)]
struct BlocksArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    /// Field order q = p^e (default: splitting field for the group)
    #[arg(long)]
    field: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: lemma24 prop25 thm12 thm14 prop21 prop43c decomp question15
    suite: String,
    #[arg(long, default_value_t = 24)]
    max_order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated prime filter (default: all primes dividing each order)
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    /// Field override q = p^e for twisted computations
    #[arg(long)]
    field: Option<u64>,
    #[arg(long)]
    json: Option<String>,
    /// Cap on cohomology class representatives per (group, m)
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Print every case, not only failures
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct CocyclesArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    m: u64,
    /// Field characteristic for class counting (0 = characteristic zero)
    #[arg(long, default_value_t = 0)]
    prime: u64,
    #[arg(long)]
    json: Option<String>,
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

fn lookup<'a>(catalog: &'a [CatalogEntry], name: &str) -> Result<&'a CatalogEntry> {
    find(catalog, name).ok_or_else(|| anyhow!("unknown group {name}; try `bca groups list`"))
}

fn write_or_print(json: &Option<String>, content: &str) -> Result<()> {
    match json {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {path}"))?;
            eprintln!("wrote {path}");
        }
        None => println!("{content}"),
    }
    Ok(())
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let catalog = catalog_with_env()?;
    match cli.cmd {
        Cmd::Groups {
            cmd: GroupsCmd::List,
        } => {
            println!("{:<10} {:>6}  {:<8} {}", "name", "order", "source", "tags");
            for e in &catalog {
                let mut tags = Vec::new();
                if e.tags.abelian {
                    tags.push("abelian".to_string());
                }
                if let Some(p) = e.tags.p_group {
                    tags.push(format!("{p}-group"));
                }
                if e.tags.metacyclic {
                    tags.push("metacyclic".to_string());
                }
                for &(p, s) in &e.tags.p_solvable {
                    if s {
                        tags.push(format!("{p}-solvable"));
                    }
                }
                println!(
                    "{:<10} {:>6}  {:<8} {}",
                    e.name,
                    e.group.order(),
                    if e.source == "builtin" {
                        "builtin"
                    } else {
                        "file"
                    },
                    tags.join(",")
                );
            }
            Ok(0)
        }
        Cmd::Analyze(args) => {
            let entry = lookup(&catalog, &args.group)?;
            let opts = AnalyzeOptions {
                m_override: args.m,
                field_override: args.field,
                seed: args.seed,
                class_cap: args.cap,
                paranoid: args.paranoid,
            };
            let report = analyze(entry, args.prime, &opts)?;
            let text = serde_json::to_string_pretty(&report)?;
            match &args.json {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("writing {path}"))?;
                    print_analyze_summary(&report);
                    eprintln!("wrote {path}");
                }
                None => println!("{text}"),
            }
            Ok(0)
        }
        Cmd::Blocks(args) => {
            let entry = lookup(&catalog, &args.group)?;
            let g = entry.group.as_ref();
            anyhow::ensure!(
                g.order() as u64 % args.prime == 0 || args.field.is_some(),
                "prime {} does not divide |{}|",
                args.prime,
                entry.name
            );
            let field = match args.field {
                Some(q) => {
                    let factors = bca_core::numutil::factorize(q);
                    anyhow::ensure!(factors.len() == 1, "field order {q} is not a prime power");
                    anyhow::ensure!(
                        factors[0].0 == args.prime,
                        "field characteristic differs from --prime"
                    );
                    Arc::new(bca_core::field::FqField::new(factors[0].0, factors[0].1)?)
                }
                None => Arc::new(splitting_field(g, args.prime)?),
            };
            let blocks = block_decomposition(g, field.clone(), args.seed)?;
            let mut out = Vec::new();
            for (i, b) in blocks.iter().enumerate() {
                let defect = defect_groups(g, b, args.prime)?;
                out.push(serde_json::json!({
                    "index": i,
                    "dim": b.algebra.dim,
                    "is_principal": b.is_principal,
                    "augmentation": if b.is_principal {1} else {0},
                    "support": b.idempotent.iter().enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(x, _)| g.name(x as u32).to_string())
                        .collect::<Vec<_>>(),
                    "defect_order": defect.order(),
                    "defect_generators": defect.rep.members().iter()
                        .map(|&x| g.name(x).to_string()).collect::<Vec<_>>(),
                    "hh1": hh1_dim(&b.algebra),
                }));
            }
            let doc = serde_json::json!({
                "schema_version": bca::report::SCHEMA_VERSION,
                "group": entry.name,
                "prime": args.prime,
                "field_q": field.q(),
                "seed": args.seed,
                "blocks": out,
            });
            write_or_print(&args.json, &serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
        Cmd::Verify(args) => {
            let suite = SuiteId::from_str(&args.suite)?;
            let primes = match &args.primes {
                None => None,
                Some(s) => Some(
                    s.split(',')
                        .map(|t| t.trim().parse::<u64>().context("parsing --primes"))
                        .collect::<Result<Vec<u64>>>()?,
                ),
            };
            let opts = SuiteOptions {
                max_order: args.max_order,
                primes,
                m_override: args.m,
                seed: args.seed,
                field_override: args.field,
                class_cap: args.cap,
            };
            let report = run_suite(&catalog, suite, &opts)?;
            print_verify_summary(&report, args.verbose);
            if let Some(path) = &args.json {
                std::fs::write(path, report.to_json())
                    .with_context(|| format!("writing {path}"))?;
                eprintln!("wrote {path}");
            }
            Ok(report.exit_code())
        }
        Cmd::Cocycles(args) => {
            let entry = lookup(&catalog, &args.group)?;
            let g = entry.group.as_ref();
            let h2 = h2_classes(g, args.m, args.prime, Some(args.cap))?;
            println!(
                "group {} with m = {}: {} classes (invariant factors {:?}){}",
                entry.name,
                args.m,
                h2.total_classes,
                h2.invariant_factors,
                if h2.truncated { ", truncated" } else { "" }
            );
            if let Some(path) = &args.json {
                let reps: Vec<serde_json::Value> = h2
                    .representatives
                    .iter()
                    .map(|c| serde_json::from_str(&cocycle_to_json(c, &entry.name)).unwrap())
                    .collect();
                let doc = serde_json::json!({
                    "schema_version": bca::report::SCHEMA_VERSION,
                    "group": entry.name,
                    "m": args.m,
                    "prime": args.prime,
                    "invariant_factors": h2.invariant_factors,
                    "class_count": h2.total_classes.to_string(),
                    "truncated": h2.truncated,
                    "representatives": reps,
                });
                std::fs::write(path, serde_json::to_string_pretty(&doc)?)
                    .with_context(|| format!("writing {path}"))?;
                eprintln!("wrote {path}");
            }
            Ok(0)
        }
    }
}

fn print_analyze_summary(report: &serde_json::Value) {
    println!(
        "group {} of order {} at p = {} (m = {}, field q = {})",
        report["group"].as_str().unwrap_or("?"),
        report["order"],
        report["prime"],
        report["m"],
        report["field"]["q"]
    );
    println!(
        "  classes: {}, p-perfect: {}, Sylow order {} (normal: {})",
        report["conjugacy_classes"]
            .as_array()
            .map_or(0, |a| a.len()),
        report["p_perfect"],
        report["sylow"]["order"],
        report["sylow"]["normal"],
    );
    if let Some(cs) = report["classes"].as_array() {
        for c in cs {
            println!(
                "  class {}: hh1 = {} (centralizer sum {}), witness: {}",
                c["class_index"],
                c["hh1_twisted"],
                c["centralizer_sum"],
                c["witness"].as_str().unwrap_or("none")
            );
        }
    }
    if let Some(bs) = report["blocks"].as_array() {
        for b in bs {
            println!(
                "  block {}: dim {}, principal: {}, defect order {}, hh1 = {}",
                b["index"], b["dim"], b["is_principal"], b["defect_order"], b["hh1"]
            );
        }
    }
}

fn print_verify_summary(report: &VerificationReport, verbose: bool) {
    if verbose {
        print!("{}", report.tsv_summary());
    } else {
        for c in report.cases.iter().filter(|c| !c.pass || c.candidate) {
            println!(
                "{}\t{}\t{}\t{}\t{}",
                if c.pass { "candidate" } else { "FAIL" },
                c.group,
                c.prime,
                c.check,
                c.witness.clone().unwrap_or_else(|| "-".into())
            );
        }
    }
    println!(
        "suite {}: {} cases, {} passed, {} failed, {} candidates",
        report.suite,
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.candidates
    );
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
