//! Command-line interface: character tables, monomiality classification,
//! theorem verification over the group catalog, and catalog scans.

use clap::{Parser, Subcommand};
use monochar::cache::TableCache;
use monochar::catalog::{default_catalog, large_catalog, parse_spec, CatalogEntry, Expected};
use monochar::engine::Engine;
use monochar::harness::{prepare, prepare_catalog, verify_all, PreparedGroup, TheoremId};
use monochar::monomial::classify;
use monochar::render::{format_monomiality, format_profile, format_table, format_verification};
use monochar::structure::{all_degrees_square_free, degree_pattern, profile};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "monochar",
    about = "Exact character tables, monomiality classification, and theorem checks \
             for small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the character table of a group (lifted cyclotomic values).
    Irr {
        /// Group spec, e.g. `cyclic:6`, `dihedral:12`, `abelian:2x4`,
        /// `frobenius:7:3`, `extraspecial:5:c3`, `sl2_3`, `file:path`.
        group: String,
    },
    /// Print the monomiality classification and structural profile of a group.
    Classify { group: String },
    /// Run theorem checks over the group catalog.
    Verify {
        /// A theorem id (e.g. `T1.1`) or `all`.
        #[arg(default_value = "all")]
        theorem: String,
        /// Catalog cutoff for the recipe-generated groups.
        #[arg(long, default_value_t = 100)]
        max_order: usize,
        /// Keep only odd-order groups.
        #[arg(long)]
        odd_only: bool,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also attempt the oversized optional entries (their lattices are
        /// beyond desk scale; failures to build are skipped with a warning).
        #[arg(long)]
        include_large: bool,
        /// Extra group specs to append to the catalog (repeatable).
        #[arg(long = "group")]
        groups: Vec<String>,
        /// Skip the on-disk table cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// List catalog groups matching simple predicates.
    Scan {
        #[arg(long, default_value_t = 100)]
        max_order: usize,
        /// Predicates like `mcd_size=2`, `squarefree_cd=true`, `odd=true`,
        /// `m_group=true`, `degree_pattern=true` (repeatable).
        #[arg(long = "where")]
        predicates: Vec<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> monochar::Result<ExitCode> {
    match cli.cmd {
        Cmd::Irr { group } => {
            let g = monochar::catalog::build_recipe(&parse_spec(&group)?)?;
            let eng = Engine::with_cache(Arc::clone(&g), Arc::new(TableCache::from_env()));
            let table = eng.table_of(&g)?;
            print!("{}", format_table(&table));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { group } => {
            let g = monochar::catalog::build_recipe(&parse_spec(&group)?)?;
            let eng = Engine::with_cache(Arc::clone(&g), Arc::new(TableCache::from_env()));
            let report = classify(&eng)?;
            let prof = profile(&eng, &g);
            print!("{}", format_monomiality(&report));
            print!("{}", format_profile(&prof));
            if let Some((m, p)) = degree_pattern(&report) {
                println!("degree pattern: mcd = {{1, {m}}}, cd = {{1, {m}, {p}}} with {p} prime");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            theorem,
            max_order,
            odd_only,
            json,
            include_large,
            groups,
            no_cache,
        } => {
            let ids: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
                TheoremId::ALL.to_vec()
            } else {
                vec![TheoremId::parse(&theorem).ok_or_else(|| {
                    monochar::Error::UnknownGroup(format!("unknown theorem id `{theorem}`"))
                })?]
            };
            let mut entries = default_catalog(max_order, odd_only);
            for spec in &groups {
                entries.push(CatalogEntry {
                    name: spec.clone(),
                    recipe: parse_spec(spec)?,
                    expected: Expected::default(),
                });
            }
            let cache = if no_cache {
                None
            } else {
                Some(Arc::new(TableCache::from_env()))
            };
            let mut prepared = prepare_catalog(&entries, cache.clone())?;
            if include_large {
                for entry in large_catalog() {
                    match prepare(&entry, cache.clone()) {
                        Ok(pg) => prepared.push(pg),
                        Err(e) => eprintln!("warning: skipping {}: {e}", entry.name),
                    }
                }
            }
            let reports = verify_all(&ids, &prepared);
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
            } else {
                print!("{}", format_verification(&reports));
            }
            let any_fail = reports.iter().any(|r| !r.failures().is_empty());
            Ok(if any_fail {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Scan {
            max_order,
            predicates,
        } => {
            let preds = predicates
                .iter()
                .map(|p| parse_predicate(p))
                .collect::<monochar::Result<Vec<_>>>()?;
            let entries = default_catalog(max_order, false);
            let prepared = prepare_catalog(&entries, Some(Arc::new(TableCache::from_env())))?;
            for pg in &prepared {
                if preds.iter().all(|p| p.matches(pg)) {
                    println!(
                        "{}  order={} cd={:?} mcd={:?}",
                        pg.name, pg.report.group.order, pg.report.cd, pg.report.mcd
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

enum Predicate {
    Odd(bool),
    MGroup(bool),
    SuperMGroup(bool),
    SquarefreeCd(bool),
    Metabelian(bool),
    Nilpotent(bool),
    Supersolvable(bool),
    DegreePattern(bool),
    McdSize(usize),
    CdSize(usize),
    Order(usize),
}

impl Predicate {
    fn matches(&self, pg: &PreparedGroup) -> bool {
        match *self {
            Predicate::Odd(v) => (pg.report.group.order % 2 == 1) == v,
            Predicate::MGroup(v) => pg.report.m_group == v,
            Predicate::SuperMGroup(v) => pg.report.super_m_group == v,
            Predicate::SquarefreeCd(v) => all_degrees_square_free(&pg.report.cd) == v,
            Predicate::Metabelian(v) => pg.profile.is_metabelian == v,
            Predicate::Nilpotent(v) => pg.profile.is_nilpotent == v,
            Predicate::Supersolvable(v) => pg.profile.is_supersolvable == v,
            Predicate::DegreePattern(v) => degree_pattern(&pg.report).is_some() == v,
            Predicate::McdSize(n) => pg.report.mcd.len() == n,
            Predicate::CdSize(n) => pg.report.cd.len() == n,
            Predicate::Order(n) => pg.report.group.order == n,
        }
    }
}

fn parse_predicate(s: &str) -> monochar::Result<Predicate> {
    let bad = || monochar::Error::UnknownGroup(format!("bad predicate `{s}`"));
    let (key, value) = s.split_once('=').ok_or_else(bad)?;
    let as_bool = || -> monochar::Result<bool> {
        match value {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(bad()),
        }
    };
    let as_num = || -> monochar::Result<usize> { value.parse().map_err(|_| bad()) };
    Ok(match key {
        "odd" => Predicate::Odd(as_bool()?),
        "m_group" => Predicate::MGroup(as_bool()?),
        "super_m_group" => Predicate::SuperMGroup(as_bool()?),
        "squarefree_cd" => Predicate::SquarefreeCd(as_bool()?),
        "metabelian" => Predicate::Metabelian(as_bool()?),
        "nilpotent" => Predicate::Nilpotent(as_bool()?),
        "supersolvable" => Predicate::Supersolvable(as_bool()?),
        "degree_pattern" => Predicate::DegreePattern(as_bool()?),
        "mcd_size" => Predicate::McdSize(as_num()?),
        "cd_size" => Predicate::CdSize(as_num()?),
        "order" => Predicate::Order(as_num()?),
        _ => return Err(bad()),
    })
}
