use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semigroup_heights::constructions::{ConstructionRecipe, Operand};
use semigroup_heights::enumerate::{
    count_semigroups, enumerate_semigroups, random_transformation_subsemigroup, EnumerationConfig,
};
use semigroup_heights::green::{k_classes, to_dot};
use semigroup_heights::mtab::{parse_mtab, parse_mtab_stream, to_mtab};
use semigroup_heights::verify::{
    analyze, check_claims_with_report, sweep, ClaimResult, HeightReport, SweepOptions,
    SweepOutcome, SweepSource, SCHEMA,
};
use semigroup_heights::{FiniteSemigroup, Relation};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONSISTENCY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "green-heights",
    version,
    about = "Heights of Green's class posets of finite semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the height report of one semigroup as JSON.
    Analyze {
        /// mtab file, recipe, fixture name, or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        /// Also evaluate the claim registry.
        #[arg(long)]
        claims: bool,
    },
    /// Build a semigroup from a recipe and print it as mtab.
    Construct {
        recipe: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stream every semigroup of a given order as mtab blocks.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Emit every labelled table instead of one per isomorphism class.
        #[arg(long)]
        labelled: bool,
        /// Fold each class together with its opposite.
        #[arg(long, conflicts_with = "labelled")]
        fold_anti: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the number of tables.
        #[arg(long)]
        count: bool,
    },
    /// Evaluate the claim registry over a batch of semigroups.
    Verify {
        /// Exhaustively enumerate this order.
        #[arg(long)]
        enumerate_order: Option<usize>,
        #[arg(long)]
        labelled: bool,
        #[arg(long, conflicts_with = "labelled")]
        fold_anti: bool,
        /// Construction recipe; may be repeated.
        #[arg(long = "recipe")]
        recipes: Vec<String>,
        /// Number of random transformation semigroups to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Degree of the random transformation semigroups.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// mtab files, each holding one or more tables.
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "verify-report.json")]
        report: PathBuf,
        #[arg(long, default_value = "verify-summary.csv")]
        summary: PathBuf,
        /// Optional CSV of the (H_L, H_R, H_J) triples seen, with counts.
        #[arg(long)]
        triples: Option<PathBuf>,
        /// Worker threads for the sweep.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Write one Graphviz file per relation.
    ExportDot {
        input: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "l,r,j,h")]
        relations: Vec<RelationArg>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value = "semigroup")]
        prefix: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    L,
    R,
    J,
    H,
    D,
}

impl From<RelationArg> for Relation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::L => Relation::L,
            RelationArg::R => Relation::R,
            RelationArg::J => Relation::J,
            RelationArg::H => Relation::H,
            RelationArg::D => Relation::D,
        }
    }
}

/// Reads a semigroup from stdin, a file, a fixture name or a recipe.
fn load(input: &str) -> Result<FiniteSemigroup> {
    if input == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        return parse_mtab(&text).context("<stdin>");
    }
    let operand = if Path::new(input).is_file() {
        Operand::Path(input.into())
    } else {
        Operand::parse(input)?
    };
    Ok(operand.build()?)
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    schema: &'a str,
    order: usize,
    #[serde(flatten)]
    report: HeightReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    claims: Option<Vec<ClaimResult>>,
}

fn cmd_analyze(input: &str, with_claims: bool) -> Result<u8> {
    let s = load(input)?;
    let report = analyze(&s)?;
    let claims = with_claims
        .then(|| check_claims_with_report(&s, &report))
        .transpose()?;
    let violated = claims
        .as_ref()
        .is_some_and(|c| c.iter().any(|c| c.violated()));
    let out = AnalyzeOutput {
        schema: SCHEMA,
        order: s.order(),
        report,
        claims,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(if violated { EXIT_VIOLATIONS } else { 0 })
}

fn cmd_construct(recipe: &str, output: Option<&Path>) -> Result<u8> {
    let s = ConstructionRecipe::parse(recipe)?.build()?;
    let text = to_mtab(&s);
    match output {
        Some(path) => fs::write(path, text).with_context(|| path.display().to_string())?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn enumeration_config(order: usize, labelled: bool, fold_anti: bool) -> EnumerationConfig {
    let mut config = if labelled {
        EnumerationConfig::labelled(order)
    } else {
        EnumerationConfig::up_to_isomorphism(order)
    };
    config.include_anti_isomorphs = !fold_anti;
    config
}

fn cmd_enumerate(config: EnumerationConfig, count: bool) -> Result<u8> {
    if count {
        println!("{}", count_semigroups(&config)?);
        return Ok(0);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (i, s) in enumerate_semigroups(&config)?.enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write!(out, "{}", to_mtab(&s))?;
    }
    out.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: &'a str,
    inputs: &'a [semigroup_heights::verify::InputRecord],
    summary: &'a semigroup_heights::verify::SweepSummary,
    violations: &'a [semigroup_heights::verify::Violation],
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    provenance: &'a str,
    order: usize,
    claim_id: &'a str,
    applicable: bool,
    holds: bool,
}

#[derive(Serialize)]
struct TripleRow {
    #[serde(rename = "H_L")]
    h_l: usize,
    #[serde(rename = "H_R")]
    h_r: usize,
    #[serde(rename = "H_J")]
    h_j: usize,
    count: usize,
}

fn merge(into: &mut SweepOutcome, other: SweepOutcome) {
    into.records.extend(other.records);
    into.violations.extend(other.violations);
    into.summary.inputs += other.summary.inputs;
    into.summary.triples.extend(other.summary.triples);
    for (id, t) in other.summary.claims {
        let acc = into.summary.claims.entry(id).or_default();
        acc.evaluated += t.evaluated;
        acc.applicable += t.applicable;
        acc.held += t.held;
        acc.violated += t.violated;
    }
}

struct VerifyArgs {
    sources: Vec<SweepSource>,
    report: PathBuf,
    summary: PathBuf,
    triples: Option<PathBuf>,
    jobs: Option<usize>,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    if args.sources.is_empty() {
        anyhow::bail!(semigroup_heights::Error::Range(
            "nothing to verify: give --enumerate-order, --recipe, --random or input files".into()
        ));
    }
    let options = SweepOptions { jobs: args.jobs };
    let mut outcome: Option<SweepOutcome> = None;
    for source in &args.sources {
        let part = sweep(source, &options)?;
        match outcome.as_mut() {
            Some(acc) => merge(acc, part),
            None => outcome = Some(part),
        }
    }
    let outcome = outcome.expect("at least one source");

    let report = VerifyReport {
        schema: SCHEMA,
        inputs: &outcome.records,
        summary: &outcome.summary,
        violations: &outcome.violations,
    };
    let file = fs::File::create(&args.report).with_context(|| args.report.display().to_string())?;
    serde_json::to_writer_pretty(BufWriter::new(file), &report)?;

    let mut csv = csv::Writer::from_path(&args.summary)
        .with_context(|| args.summary.display().to_string())?;
    for record in &outcome.records {
        for c in &record.claims {
            csv.serialize(SummaryRow {
                provenance: &record.input.provenance,
                order: record.input.order,
                claim_id: &c.claim_id,
                applicable: c.applicable,
                holds: c.holds,
            })?;
        }
    }
    csv.flush()?;

    if let Some(path) = &args.triples {
        let mut counts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for record in &outcome.records {
            *counts.entry(record.report.triple()).or_default() += 1;
        }
        let mut w = csv::Writer::from_path(path).with_context(|| path.display().to_string())?;
        for ((h_l, h_r, h_j), count) in counts {
            w.serialize(TripleRow {
                h_l,
                h_r,
                h_j,
                count,
            })?;
        }
        w.flush()?;
    }

    let s = &outcome.summary;
    println!(
        "{} inputs, {} evaluations, {} violations",
        s.inputs,
        s.evaluations(),
        s.violations()
    );
    for (id, t) in &s.claims {
        println!(
            "{id:<18} applicable {:>6}  held {:>6}  violated {:>4}",
            t.applicable, t.held, t.violated
        );
    }
    for v in &outcome.violations {
        eprintln!("violation: {} on {}", v.claim_id, v.provenance);
    }
    Ok(if outcome.violations.is_empty() {
        0
    } else {
        EXIT_VIOLATIONS
    })
}

fn cmd_export_dot(
    input: &str,
    relations: &[RelationArg],
    out_dir: &Path,
    prefix: &str,
) -> Result<u8> {
    let s = load(input)?;
    fs::create_dir_all(out_dir).with_context(|| out_dir.display().to_string())?;
    for &r in relations {
        let relation = Relation::from(r);
        let tag = format!("{relation:?}");
        let path = out_dir.join(format!("{prefix}-{tag}.dot"));
        let dot = to_dot(&s, &k_classes(&s, relation), &format!("{prefix} {tag}"));
        fs::write(&path, dot).with_context(|| path.display().to_string())?;
        println!("{}", path.display());
    }
    Ok(0)
}

fn file_sources(paths: &[PathBuf]) -> Result<Vec<(String, FiniteSemigroup)>> {
    let mut out = Vec::new();
    for path in paths {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).with_context(|| name.clone())?;
        let tables = parse_mtab_stream(&text).with_context(|| name.clone())?;
        let single = tables.len() == 1;
        for (i, s) in tables.into_iter().enumerate() {
            let label = if single {
                name.clone()
            } else {
                format!("{name}#{i}")
            };
            out.push((label, s));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, claims } => cmd_analyze(&input, claims),
        Command::Construct { recipe, output } => cmd_construct(&recipe, output.as_deref()),
        Command::Enumerate {
            order,
            labelled,
            fold_anti,
            limit,
            count,
        } => {
            let mut config = enumeration_config(order, labelled, fold_anti);
            config.limit = limit;
            cmd_enumerate(config, count)
        }
        Command::Verify {
            enumerate_order,
            labelled,
            fold_anti,
            recipes,
            random,
            degree,
            seed,
            inputs,
            report,
            summary,
            triples,
            jobs,
        } => {
            let mut sources = Vec::new();
            if let Some(order) = enumerate_order {
                sources.push(SweepSource::Enumeration(enumeration_config(
                    order, labelled, fold_anti,
                )));
            }
            if !recipes.is_empty() {
                sources.push(SweepSource::Recipes(recipes));
            }
            let mut explicit = file_sources(&inputs)?;
            for i in 0..random as u64 {
                let gens = 1 + (i % 3) as usize;
                let s = random_transformation_subsemigroup(degree, gens, seed + i)?;
                explicit.push((format!("random:{degree}:{gens}:{}", seed + i), s));
            }
            if !explicit.is_empty() {
                sources.push(SweepSource::Semigroups(explicit));
            }
            cmd_verify(VerifyArgs {
                sources,
                report,
                summary,
                triples,
                jobs,
            })
        }
        Command::ExportDot {
            input,
            relations,
            out_dir,
            prefix,
        } => cmd_export_dot(&input, &relations, &out_dir, &prefix),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let inconsistent = err
                .downcast_ref::<semigroup_heights::Error>()
                .is_some_and(|e| e.is_inconsistency());
            ExitCode::from(if inconsistent {
                EXIT_INCONSISTENCY
            } else {
                EXIT_INPUT
            })
        }
    }
}
