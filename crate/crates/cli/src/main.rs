//! Command-line surface for the grouplab engine: single-group analysis,
//! factorization tables, catalog management, and verification campaigns.
//!
//! Exit codes: 0 success, 1 campaign violations, 2 configuration errors,
//! 3 I/O or group-file errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use grouplab::arith::prime_divisors;
use grouplab::classes::{node_in_class, node_p_closed, node_p_nilpotent, ClassId};
use grouplab::construct::{
    load_group, load_manifest, save_group, standard_catalog, write_manifest, CatalogEntry,
};
use grouplab::harness::{
    enumerate_factorizations, run_campaign, CampaignConfig, RECORD_CLASSES,
};
use grouplab::structure::GroupAnalysis;
use grouplab::Error;

#[derive(Parser)]
#[command(name = "grouplab", version, about = "Finite group engine and theorem verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a structural dossier for one group (file path or catalog name)
    Analyze {
        /// Group file path, or the name of a standard catalog entry
        target: String,
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        #[arg(long, default_value_t = 400)]
        lattice_cap: u64,
    },
    /// List the factorizations G = A·B with msp verdicts and class flags
    Factorize {
        target: String,
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        #[arg(long, default_value_t = 400)]
        lattice_cap: u64,
        /// Keep all conjugate factorization pairs instead of canonical reps
        #[arg(long)]
        no_dedup: bool,
    },
    /// Run the verification campaign over the catalog
    Verify {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        #[arg(long, default_value_t = 400)]
        lattice_cap: u64,
        /// Comma-separated theorem ids (l3,l4,l7,l10,l11,l12,l13,l_skiba,
        /// l_commprod,l_normalizer,th2,corollary or `all`)
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        /// Classes for the main theorem: U, wU, vU
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        /// Extra group files to include in the catalog (repeatable)
        #[arg(long)]
        group: Vec<PathBuf>,
        /// Manifest of name→file lines naming extra groups
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Directory for the report bundle
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = automatic)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        no_dedup: bool,
    },
    /// List the standard catalog
    Catalog {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
    },
    /// Export catalog groups as generator files plus a manifest
    Export {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Export only the named entry
        #[arg(long)]
        name: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            target,
            max_order,
            lattice_cap,
        } => cmd_analyze(&target, max_order, lattice_cap),
        Command::Factorize {
            target,
            max_order,
            lattice_cap,
            no_dedup,
        } => cmd_factorize(&target, max_order, lattice_cap, !no_dedup),
        Command::Verify {
            max_order,
            lattice_cap,
            theorems,
            classes,
            group,
            catalog,
            out,
            workers,
            no_dedup,
        } => cmd_verify(VerifyArgs {
            max_order,
            lattice_cap,
            theorems,
            classes,
            group,
            catalog,
            out,
            workers,
            dedup: !no_dedup,
        }),
        Command::Catalog { max_order } => cmd_catalog(max_order),
        Command::Export {
            max_order,
            out,
            name,
        } => cmd_export(max_order, &out, name.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

fn classify(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::FileFormat { .. } => 3,
        _ => 2,
    }
}

/// Resolves a target as a file path first, then as a catalog name.
fn resolve_target(target: &str, max_order: u64) -> Result<CatalogEntry, Error> {
    let path = Path::new(target);
    if path.exists() {
        return load_group(path);
    }
    standard_catalog(max_order)?
        .into_iter()
        .find(|e| e.name == target)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{target:?} is neither a file nor a catalog name (with max order {max_order})"
            ))
        })
}

fn cmd_analyze(target: &str, max_order: u64, lattice_cap: u64) -> Result<ExitCode, Error> {
    let entry = resolve_target(target, max_order)?;
    let an = GroupAnalysis::with_cap(entry.group.clone(), lattice_cap)?;
    let lat = an.lattice();
    let top = lat.top_node();
    let primes = prime_divisors(an.order());

    println!("name:              {}", entry.name);
    println!("provenance:        {}", entry.provenance);
    println!("order:             {}", an.order());
    println!("degree:            {}", entry.group.degree());
    println!(
        "primes:            {}",
        primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    );
    println!("subgroups:         {}", lat.node_count());

    let center = grouplab::structure::center(&entry.group)?;
    println!("centre order:      {}", center.order());
    let derived: Vec<String> = grouplab::structure::derived_series(&entry.group)?
        .iter()
        .map(|g| g.order().to_string())
        .collect();
    println!("derived series:    {}", derived.join(" > "));
    println!(
        "fitting order:     {}",
        an.node_order(an.fitting_node_in(top))
    );
    println!("frattini order:    {}", an.node_order(an.frattini_node()));
    let chief: Vec<String> = an
        .chief_factor_orders_of(top)
        .iter()
        .map(|f| f.to_string())
        .collect();
    println!("chief factors:     {}", chief.join(" "));
    for &p in &primes {
        let sylows = an.sylow_nodes_in(top, p);
        println!(
            "sylow {p}:           order {} ({} conjugate{})",
            an.node_order(sylows[0]),
            sylows.len(),
            if sylows.len() == 1 { "" } else { "s" }
        );
    }

    let mut classes: Vec<(String, bool)> = vec![
        ("soluble".into(), node_in_class(&an, top, ClassId::Soluble)),
        ("nilpotent".into(), node_in_class(&an, top, ClassId::Nilpotent)),
        (
            "metanilpotent".into(),
            node_in_class(&an, top, ClassId::Metanilpotent),
        ),
        ("U".into(), node_in_class(&an, top, ClassId::SupersolubleU)),
        ("wU".into(), node_in_class(&an, top, ClassId::WU)),
        ("vU".into(), node_in_class(&an, top, ClassId::VU)),
        ("D".into(), node_in_class(&an, top, ClassId::TowerD)),
    ];
    for &p in &primes {
        classes.push((format!("p-closed:{p}"), node_p_closed(&an, top, p)));
        classes.push((format!("p-nilpotent:{p}"), node_p_nilpotent(&an, top, p)));
    }
    println!("classes:");
    for (tag, holds) in classes {
        println!("  {tag:<16} {}", if holds { "yes" } else { "no" });
    }
    match an.tower_witness_nodes(top) {
        Some(chain) => {
            let orders: Vec<String> = chain
                .iter()
                .map(|&k| an.node_order(k).to_string())
                .collect();
            println!("sylow tower:       yes (normal Hall chain {})", orders.join(" < "));
        }
        None => println!("sylow tower:       no"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_factorize(
    target: &str,
    max_order: u64,
    lattice_cap: u64,
    dedup: bool,
) -> Result<ExitCode, Error> {
    let entry = resolve_target(target, max_order)?;
    let an = GroupAnalysis::with_cap(entry.group.clone(), lattice_cap)?;
    let records = enumerate_factorizations(&an, &entry.name, dedup);
    println!(
        "{} factorization{} of {} (order {}){}",
        records.len(),
        if records.len() == 1 { "" } else { "s" },
        entry.name,
        an.order(),
        if dedup { ", conjugacy-deduplicated" } else { "" }
    );
    println!("|A|\t|B|\tmsp\tA:U\tB:U\tG:U\thit\twitness");
    let idx_u = RECORD_CLASSES
        .iter()
        .position(|&c| c == ClassId::SupersolubleU)
        .unwrap();
    for r in &records {
        let hit = r.msp.holds && r.class_flags.a[idx_u] && r.class_flags.b[idx_u];
        let witness = match &r.msp.failing {
            Some(f) => format!(
                "Sylow pair (p={}, q={}), {} of order {} fails to permute",
                f.p,
                f.q,
                if f.witness_from_first { "U ≤ P" } else { "V ≤ Q" },
                an.node_order(f.witness)
            ),
            None if !r.msp.product_is_subgroup => "A·B is not a subgroup".to_string(),
            None => String::new(),
        };
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            an.node_order(r.a),
            an.node_order(r.b),
            yn(r.msp.holds),
            yn(r.class_flags.a[idx_u]),
            yn(r.class_flags.b[idx_u]),
            yn(r.class_flags.g[idx_u]),
            if hit { "*" } else { "" },
            witness
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct VerifyArgs {
    max_order: u64,
    lattice_cap: u64,
    theorems: Vec<String>,
    classes: Vec<String>,
    group: Vec<PathBuf>,
    catalog: Option<PathBuf>,
    out: Option<PathBuf>,
    workers: usize,
    dedup: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let mut classes = Vec::new();
    for tag in &args.classes {
        classes.push(tag.parse::<ClassId>()?);
    }
    if classes.is_empty() {
        classes = vec![ClassId::SupersolubleU, ClassId::WU, ClassId::VU];
    }

    // Load and validate every extra input before any scanning or output.
    let mut extra_groups = Vec::new();
    for path in &args.group {
        extra_groups.push(load_group(path)?);
    }
    if let Some(manifest) = &args.catalog {
        extra_groups.extend(load_manifest(manifest)?);
    }

    let config = CampaignConfig {
        max_order: args.max_order,
        lattice_cap: args.lattice_cap,
        theorems: args.theorems.clone(),
        classes,
        dedup_conjugate_pairs: args.dedup,
        workers: args.workers,
        extra_groups,
    };
    let started = Instant::now();
    let outcome = run_campaign(&config)?;
    let elapsed = started.elapsed();

    println!("theorem_id\tgroups\tfactorizations\thits\tviolations\tseconds");
    let per_report = elapsed.as_secs_f64() / outcome.reports.len().max(1) as f64;
    for row in outcome.summary_rows() {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{:.3}",
            row[0], row[1], row[2], row[3], row[4], per_report
        );
    }
    if !outcome.skips.is_empty() {
        println!("skipped: {} group(s)", outcome.skips.len());
        for s in &outcome.skips {
            println!("  {}: {} ({})", s.group, s.what, s.reason);
        }
    }
    let violations = outcome.total_violations();
    println!(
        "{} violation(s) across {} checks in {:.1}s",
        violations,
        outcome.reports.len(),
        elapsed.as_secs_f64()
    );
    for report in &outcome.reports {
        for v in &report.violations {
            println!("VIOLATION {} in {}: {}", v.theorem_id, v.group.name, v.detail);
        }
    }
    if let Some(dir) = &args.out {
        outcome.write_bundle(dir)?;
        println!("bundle written to {}", dir.display());
    }
    if violations > 0 {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(max_order: u64) -> Result<ExitCode, Error> {
    let catalog = standard_catalog(max_order)?;
    println!("name\torder\tdegree\tprovenance");
    for entry in &catalog {
        println!(
            "{}\t{}\t{}\t{}",
            entry.name,
            entry.group.order(),
            entry.group.degree(),
            entry.provenance
        );
    }
    println!("{} entries with order ≤ {max_order}", catalog.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(max_order: u64, out: &Path, name: Option<&str>) -> Result<ExitCode, Error> {
    let catalog = standard_catalog(max_order)?;
    let selected: Vec<&CatalogEntry> = match name {
        Some(n) => {
            let entry = catalog.iter().find(|e| e.name == n).ok_or_else(|| {
                Error::InvalidParameter(format!("no catalog entry named {n:?}"))
            })?;
            vec![entry]
        }
        None => catalog.iter().collect(),
    };
    std::fs::create_dir_all(out)?;
    let mut manifest: Vec<(String, String)> = Vec::new();
    let mut seen = BTreeMap::new();
    for entry in selected {
        let base = entry.name.replace(':', "_");
        let count = seen.entry(base.clone()).or_insert(0usize);
        let file = if *count == 0 {
            format!("{base}.group")
        } else {
            format!("{base}_{count}.group")
        };
        *count += 1;
        save_group(entry, &out.join(&file))?;
        manifest.push((entry.name.clone(), file));
    }
    write_manifest(&manifest, &out.join("manifest.txt"))?;
    println!("wrote {} group file(s) to {}", manifest.len(), out.display());
    Ok(ExitCode::SUCCESS)
}
