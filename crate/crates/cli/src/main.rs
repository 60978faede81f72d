use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sigmagrp::corpus::{catalog, format};
use sigmagrp::embed::PermMode;
use sigmagrp::report::{analyze, Caps};
use sigmagrp::sigma::SigmaPartition;
use sigmagrp::verify::{run_suite, Corpus, CorpusGroup, CorpusSigma, Predicate, Suite, VerifyOptions};
use sigmagrp::{Error, Group, SubgroupLattice};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "sigmagrp", version, about = "Sigma-partition predicates on finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 1000)]
    max_order: usize,
    #[arg(long, global = true, default_value_t = 20_000)]
    max_subgroups: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Strict)]
    mode: Mode,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; output order does not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Witness,
}

impl From<Mode> for PermMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => PermMode::Strict,
            Mode::Witness => PermMode::Witness,
        }
    }
}

#[derive(clap::Args)]
struct Source {
    /// Use the built-in catalog and sigma configurations.
    #[arg(long, conflicts_with = "corpus")]
    builtin: bool,
    /// Directory of `.grp` files and optional `.sigma` files.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group under one sigma-partition.
    Analyze {
        /// A `.grp` file or a catalog name.
        group: String,
        /// A `.sigma` file or a built-in configuration name.
        sigma: String,
    },
    /// Run a verification suite over a corpus.
    Verify {
        /// One of theorem-a, theorem-b, t41, t43, t46, lemmas, corollaries.
        suite: Suite,
        #[command(flatten)]
        source: Source,
    },
    /// List corpus pairs matching a predicate expression.
    Search {
        /// Predicates psigmat, pst, sigma-nilpotent, sigma-soluble joined by `and`, each optionally negated by `not`.
        expression: String,
        #[command(flatten)]
        source: Source,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List groups and sigma configurations.
    List,
    /// Print a group or sigma configuration in file format.
    Emit { name: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Inconsistent(_) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { group, sigma } => cmd_analyze(cli, group, sigma),
        Command::Verify { suite, source } => cmd_verify(cli, *suite, source),
        Command::Search { expression, source } => cmd_search(cli, expression, source),
        Command::Catalog { action } => cmd_catalog(cli, action),
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("reports serialize")));
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {}", path.display(), e)))
}

fn load_group(arg: &str, max_order: usize) -> Result<Group, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(format::parse_group_file(&read(path)?, max_order)?);
    }
    let entry = catalog::find(arg).ok_or_else(|| input_error(format!("no file or catalog group named '{}'", arg)))?;
    if entry.order > max_order {
        return Err(Error::CapExceeded {
            what: "group order",
            limit: max_order,
        }
        .into());
    }
    Ok(entry.build()?)
}

fn load_sigma(arg: &str) -> Result<SigmaPartition, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(format::parse_sigma_file(&read(path)?)?);
    }
    catalog::find_sigma(arg)
        .map(|c| c.partition())
        .ok_or_else(|| input_error(format!("no file or sigma configuration named '{}'", arg)))
}

fn cmd_analyze(cli: &Cli, group: &str, sigma: &str) -> Result<u8, Failure> {
    let g = load_group(group, cli.max_order)?;
    let sigma = load_sigma(sigma)?;
    let lat = SubgroupLattice::build(Arc::new(g), cli.max_subgroups)?;
    let caps = Caps {
        max_order: cli.max_order,
        max_subgroups: cli.max_subgroups,
    };
    let report = analyze(&lat, &sigma, cli.mode.into(), caps)?;
    if cli.json {
        print_json(&report);
    } else {
        emit(&report.to_string());
    }
    Ok(0)
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_corpus(cli: &Cli, source: &Source) -> Result<Corpus, Failure> {
    let Some(dir) = &source.corpus else {
        if source.builtin {
            return Ok(Corpus::builtin(cli.max_order)?);
        }
        return Err(input_error("choose a corpus with --builtin or --corpus DIR"));
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| input_error(format!("{}: {}", dir.display(), e)))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    paths.sort();
    let with_ext = |ext: &'static str| paths.iter().filter(move |p| p.extension().is_some_and(|e| e == ext));
    let mut groups = Vec::new();
    for path in with_ext("grp") {
        let group = match format::parse_group_file(&read(path)?, cli.max_order) {
            Ok(g) => Ok(Arc::new(g)),
            Err(e @ Error::CapExceeded { .. }) => Err(e),
            Err(e) => return Err(input_error(format!("{}: {}", path.display(), e))),
        };
        groups.push(CorpusGroup {
            name: file_stem(path),
            group,
        });
    }
    let mut sigmas = Vec::new();
    for path in with_ext("sigma") {
        let sigma = format::parse_sigma_file(&read(path)?)
            .map_err(|e| input_error(format!("{}: {}", path.display(), e)))?;
        sigmas.push(CorpusSigma {
            name: file_stem(path),
            sigma,
        });
    }
    if groups.is_empty() {
        return Err(input_error(format!("{}: no .grp files", dir.display())));
    }
    if sigmas.is_empty() {
        sigmas = catalog::sigma_configs()
            .into_iter()
            .map(|c| CorpusSigma {
                name: c.name.to_string(),
                sigma: c.partition(),
            })
            .collect();
    }
    Ok(Corpus { groups, sigmas })
}

fn cmd_verify(cli: &Cli, suite: Suite, source: &Source) -> Result<u8, Failure> {
    let corpus = load_corpus(cli, source)?;
    let opts = VerifyOptions {
        mode: cli.mode.into(),
        seed: cli.seed,
        max_subgroups: cli.max_subgroups,
        ..VerifyOptions::default()
    };
    let report = run_suite(suite, &corpus, &opts);
    if cli.json {
        print_json(&report);
    } else {
        emit(&report.to_string());
    }
    Ok(report.exit_code() as u8)
}

/// A conjunction of possibly negated atoms.
struct Expr(Vec<(bool, Predicate)>);

impl Expr {
    fn parse(text: &str) -> Result<Expr, Failure> {
        let mut terms = Vec::new();
        let mut words = text.split_whitespace().peekable();
        loop {
            let mut negated = false;
            while words.peek() == Some(&"not") {
                words.next();
                negated = !negated;
            }
            let atom: Predicate = words
                .next()
                .ok_or_else(|| input_error("expression ends where a predicate was expected"))?
                .parse()
                .map_err(input_error)?;
            terms.push((negated, atom));
            match words.next() {
                None => return Ok(Expr(terms)),
                Some("and") => {}
                Some(w) => return Err(input_error(format!("expected 'and', found '{}'", w))),
            }
        }
    }
}

#[derive(Serialize)]
struct SearchHit {
    group: String,
    sigma: String,
    order: usize,
}

#[derive(Serialize)]
struct SearchReport {
    expression: String,
    pairs: usize,
    hits: Vec<SearchHit>,
    caps_exceeded: Vec<String>,
}

fn cmd_search(cli: &Cli, expression: &str, source: &Source) -> Result<u8, Failure> {
    let expr = Expr::parse(expression)?;
    let corpus = load_corpus(cli, source)?;
    let mode: PermMode = cli.mode.into();
    let sigma0 = SigmaPartition::sigma0();
    let per_group: Vec<Result<Vec<Option<SearchHit>>, String>> = corpus
        .groups
        .par_iter()
        .map(|g| {
            let group = g.group.clone().map_err(|e| format!("{}: {}", g.name, e))?;
            let lat = SubgroupLattice::build(group, cli.max_subgroups).map_err(|e| format!("{}: {}", g.name, e))?;
            let pst = Predicate::Pst.evaluate(&lat, &sigma0, mode);
            Ok(corpus
                .sigmas
                .iter()
                .map(|s| {
                    let value = |a| match a {
                        Predicate::Pst => pst,
                        _ => a.evaluate(&lat, &s.sigma, mode),
                    };
                    expr.0.iter().all(|&(neg, a)| value(a) != neg).then(|| SearchHit {
                        group: g.name.clone(),
                        sigma: s.name.clone(),
                        order: lat.group().order(),
                    })
                })
                .collect())
        })
        .collect();
    let mut hits = Vec::new();
    let mut capped = Vec::new();
    for r in per_group {
        match r {
            Ok(h) => hits.extend(h.into_iter().flatten()),
            Err(e) => capped.push(e),
        }
    }
    let report = SearchReport {
        expression: expression.to_string(),
        pairs: corpus.len(),
        hits,
        caps_exceeded: capped,
    };
    if cli.json {
        print_json(&report);
    } else {
        let mut text = String::new();
        for h in &report.hits {
            text += &format!("{} {} (order {})\n", h.group, h.sigma, h.order);
        }
        for c in &report.caps_exceeded {
            text += &format!("cap exceeded: {}\n", c);
        }
        text += &format!("{} of {} pairs match\n", report.hits.len(), report.pairs);
        emit(&text);
    }
    Ok(if report.caps_exceeded.is_empty() { 0 } else { EXIT_CAP })
}

#[derive(Serialize)]
struct CatalogListing {
    groups: Vec<(String, usize)>,
    sigmas: Vec<(String, String)>,
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> Result<u8, Failure> {
    match action {
        CatalogAction::List => {
            let listing = CatalogListing {
                groups: catalog::catalog().iter().map(|e| (e.name.to_string(), e.order)).collect(),
                sigmas: catalog::sigma_configs()
                    .iter()
                    .map(|c| (c.name.to_string(), c.partition().to_string()))
                    .collect(),
            };
            if cli.json {
                print_json(&listing);
            } else {
                let mut out = String::new();
                for (name, order) in &listing.groups {
                    out += &format!("group {:<12} order {}\n", name, order);
                }
                for (name, text) in &listing.sigmas {
                    out += &format!("sigma {:<12} {}\n", name, text);
                }
                emit(&out);
            }
        }
        CatalogAction::Emit { name } => {
            if let Some(entry) = catalog::find(name) {
                emit(&format::emit_group_file(&entry.build()?));
            } else if let Some(c) = catalog::find_sigma(name) {
                emit(&format::emit_sigma_file(&c.partition()));
            } else {
                return Err(input_error(format!("no catalog entry named '{}'", name)));
            }
        }
    }
    Ok(0)
}
