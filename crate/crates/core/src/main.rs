use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cdlattice::catalog::{self, CATALOG_MAX_ORDER};
use cdlattice::dot::export_dot;
use cdlattice::lattice::{self, LatticeOptions};
use cdlattice::report::{self, Family, SweepFilter, SweepOutcome, VerifyOptions, VerifyReport};
use cdlattice::spec::GroupSpec;
use cdlattice::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Subgroup lattices and Chermak–Delgado lattices of small finite groups.
#[derive(Parser)]
#[command(name = "cdlattice", version)]
struct Cli {
    /// Largest group order to accept (also the upper end of a sweep).
    #[arg(long, global = true, default_value_t = CATALOG_MAX_ORDER)]
    max_order: usize,

    /// Abort lattice enumeration past this many subgroups.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_subgroups: usize,

    /// Write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Suppress the human-readable output.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print basic invariants of a group.
    Describe { spec: String },
    /// Compute CD(G) and check the equal-cyclic-measure consequences.
    Verify {
        spec: String,
        /// Skip the CD(G) structural checks.
        #[arg(long)]
        no_properties: bool,
    },
    /// Verify every catalog group in an order range.
    Sweep {
        #[arg(long, default_value_t = 1)]
        min_order: usize,
        /// abelian, nonabelian, p-group, or a name prefix. Repeatable.
        #[arg(long)]
        family: Vec<String>,
        #[arg(long)]
        no_properties: bool,
    },
    /// Write the subgroup lattice as a DOT digraph.
    Dot {
        spec: String,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Violation(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn lattice_options(cli: &Cli) -> LatticeOptions {
    LatticeOptions {
        max_order: cli.max_order,
        max_subgroups: cli.max_subgroups,
        ..LatticeOptions::default()
    }
}

fn parse_capped(cli: &Cli, text: &str) -> Result<GroupSpec, Failure> {
    let spec = GroupSpec::parse(text)?;
    if spec.order() > cli.max_order {
        return Err(Error::Capacity {
            what: "group order".into(),
            limit: cli.max_order,
            reached: spec.order(),
        }
        .into());
    }
    Ok(spec)
}

fn describe(cli: &Cli, text: &str) -> Result<(), Failure> {
    let spec = parse_capped(cli, text)?;
    let g = spec.build()?;
    let inv = catalog::invariants(&g);
    let l = lattice::all_subgroups_with(&g, &lattice_options(cli))?;
    if let Some(path) = &cli.json {
        let value = serde_json::json!({
            "group": g.label(),
            "order": inv.order,
            "abelian": inv.abelian,
            "exponent": inv.exponent,
            "center_order": inv.center_order,
            "order_histogram": inv.order_histogram,
            "square_count": inv.square_count,
            "subgroup_count": l.len(),
        });
        write_file(
            path,
            &serde_json::to_string_pretty(&value).expect("serializable"),
        )?;
    }
    if !cli.quiet {
        println!("group:          {}", g.label());
        println!("order:          {}", inv.order);
        println!("abelian:        {}", inv.abelian);
        println!("exponent:       {}", inv.exponent);
        println!("center order:   {}", inv.center_order);
        let hist: Vec<String> = inv
            .order_histogram
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        println!("element orders: {}", hist.join(" "));
        println!("subgroups:      {}", l.len());
    }
    Ok(())
}

fn verify(cli: &Cli, text: &str, no_properties: bool) -> Result<(), Failure> {
    let spec = parse_capped(cli, text)?;
    let opts = VerifyOptions {
        lattice: lattice_options(cli),
        check_properties: !no_properties,
    };
    let a = report::run_verify(&spec, &opts)?;
    let json =
        serde_json::to_string_pretty(&VerifyReport::from_analysis(&a)).expect("serializable");
    match &cli.json {
        Some(path) => write_file(path, &json)?,
        None if !cli.quiet => println!("{json}"),
        None => {}
    }
    if cli.json.is_some() && !cli.quiet {
        let t = &a.theorem;
        println!(
            "{}: order {}, {} subgroups",
            a.group().label(),
            a.group().order(),
            a.lattice.len()
        );
        println!("m* = {}, |CD(G)| = {}", a.cd.m_star, a.cd.cd_members.len());
        println!("hypothesis: {}", t.hypothesis);
        for (name, v) in &t.conclusions {
            println!("  {name}: {}", v.as_str());
        }
    }
    let violations = a.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{}: {}",
            a.group().label(),
            violations.join(", ")
        )))
    }
}

fn sweep(
    cli: &Cli,
    min_order: usize,
    family: &[String],
    no_properties: bool,
) -> Result<(), Failure> {
    let filter = SweepFilter {
        min_order,
        max_order: cli.max_order,
        families: family
            .iter()
            .map(|f| f.parse::<Family>().expect("infallible"))
            .collect(),
    };
    let opts = VerifyOptions {
        lattice: lattice_options(cli),
        check_properties: !no_properties,
    };
    let r = report::run_sweep(&filter, &opts);
    if let Some(path) = &cli.json {
        write_file(
            path,
            &serde_json::to_string_pretty(&r).expect("serializable"),
        )?;
    }
    if !cli.quiet {
        print!("{}", r.to_text());
    }
    let bad: Vec<&str> = r
        .rows
        .iter()
        .filter(|row| !row.violations.is_empty())
        .map(|row| row.group.as_str())
        .collect();
    match r.outcome() {
        SweepOutcome::Clean => Ok(()),
        SweepOutcome::Violations => Err(Failure::Violation(bad.join(", "))),
        SweepOutcome::Errors => Err(Failure::Capacity(format!(
            "{} sweep rows failed",
            r.summary.errors
        ))),
    }
}

fn dot(cli: &Cli, text: &str, output: Option<&Path>) -> Result<(), Failure> {
    let spec = parse_capped(cli, text)?;
    let g = spec.build()?;
    let l = lattice::all_subgroups_with(&g, &lattice_options(cli))?;
    let (measures, m_star, cd_members) = cdlattice::cd::measure_table(&l);
    let r = cdlattice::cd::CdReport {
        label: g.label().to_string(),
        measures,
        m_star,
        cd_members,
        properties: Vec::new(),
    };
    let text = export_dot(&l, &r)?;
    match output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Describe { spec } => describe(&cli, spec),
        Command::Verify {
            spec,
            no_properties,
        } => verify(&cli, spec, *no_properties),
        Command::Sweep {
            min_order,
            family,
            no_properties,
        } => sweep(&cli, *min_order, family, *no_properties),
        Command::Dot { spec, output } => dot(&cli, spec, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAPACITY)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("theorem violation detected: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Capacity { .. } | Error::Unsupported(_) => EXIT_CAPACITY,
                Error::InternalInconsistency(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}
