//! `cyfact`: compute cyclic factorization numbers, print family tables,
//! run the regression sweeps and dump subgroup lattices.

mod record;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyfact_core::lattice::{enumerate_subgroups, mobius, LatticeDump};
use cyfact_core::verify::{self, Scope};
use cyfact_core::{Error, Gamma2Choice, GroupConfig, GroupSpec};
use rayon::prelude::*;

use record::{Methods, OutputRecord, Quantities, CSV_HEADER};

#[derive(Parser)]
#[command(name = "cyfact", version, about = "Cyclic factorization numbers of finite groups")]
struct Cli {
    /// Worker threads for pair counting and table rows (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one group.
    Compute {
        /// Group, e.g. `dihedral:10`, `abelian:2^1,2^2`, `product:(symmetric:3)*(cyclic:5)`.
        spec: String,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// One row per parameter value of a family, over an inclusive range `a..b`.
    Table {
        family: Family,
        range: String,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Cross-check enumeration, Möbius inversion and closed forms.
    Verify {
        /// `all` or a comma-separated list of sweeps.
        #[arg(long, default_value = "all")]
        scope: String,
        /// Largest group order examined.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        /// Print passing checks as well as failures.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Write the subgroup lattice and its Möbius table as JSON.
    DumpLattice {
        spec: String,
        path: PathBuf,
        #[arg(long, default_value_t = GroupConfig::default().max_order)]
        budget: usize,
    },
}

#[derive(clap::Args)]
struct ComputeOpts {
    /// Comma-separated subset of cf2,f2,sd,csd.
    #[arg(long, short, alias = "q", default_value = "cf2")]
    quantities: String,
    /// Comma-separated subset of bruteforce,mobius,formula, or `all`.
    #[arg(long, short, alias = "m", default_value = "all")]
    methods: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order accepted.
    #[arg(long, default_value_t = GroupConfig::default().max_order)]
    budget: usize,
    /// Omit the header row in csv and text tables.
    #[arg(long)]
    no_header: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cyclic,
    Dihedral,
    Quaternion,
    Semidihedral,
    Modular2,
    Modular3,
    Modular5,
    Dicyclic,
    GendicyclicAhalf,
    GendicyclicB,
    GendicyclicAhalfb,
    Symmetric,
    Alternating,
}

impl Family {
    /// None when the parameter is outside the family's domain.
    fn spec(self, n: u64) -> Option<GroupSpec> {
        let gd = |c: Gamma2Choice| (n >= 1 && c.valid_for(n)).then_some(GroupSpec::GenDicyclic { n, choice: c });
        match self {
            Family::Cyclic => (n >= 1).then_some(GroupSpec::Cyclic(n)),
            Family::Dihedral => (n >= 3).then_some(GroupSpec::Dihedral(n)),
            Family::Quaternion => (n >= 3).then_some(GroupSpec::Quaternion(n as u32)),
            Family::Semidihedral => (n >= 4).then_some(GroupSpec::Semidihedral(n as u32)),
            Family::Modular2 => (n >= 3).then_some(GroupSpec::Modular { p: 2, n: n as u32 }),
            Family::Modular3 => (n >= 3).then_some(GroupSpec::Modular { p: 3, n: n as u32 }),
            Family::Modular5 => (n >= 3).then_some(GroupSpec::Modular { p: 5, n: n as u32 }),
            Family::Dicyclic => (n >= 1).then_some(GroupSpec::Dicyclic(n)),
            Family::GendicyclicAhalf => gd(Gamma2Choice::AHalf),
            Family::GendicyclicB => gd(Gamma2Choice::B),
            Family::GendicyclicAhalfb => gd(Gamma2Choice::AHalfB),
            Family::Symmetric => (n >= 1).then_some(GroupSpec::Symmetric(n as u32)),
            Family::Alternating => (n >= 1).then_some(GroupSpec::Alternating(n as u32)),
        }
    }
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Validation(_) | Error::Structural(_) => 2,
            Error::Capacity { .. } => 3,
            Error::Consistency(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn parse_quantities(s: &str) -> Result<Quantities, Failure> {
    let mut q = Quantities {
        cf2: false,
        f2: false,
        sd: false,
        csd: false,
    };
    for tok in s.split(',').map(str::trim) {
        match tok {
            "cf2" => q.cf2 = true,
            "f2" => q.f2 = true,
            "sd" => q.sd = true,
            "csd" => q.csd = true,
            "all" => q = Quantities { cf2: true, f2: true, sd: true, csd: true },
            other => return Err(usage(format!("unknown quantity '{other}'"))),
        }
    }
    Ok(q)
}

fn parse_methods(s: &str) -> Result<Methods, Failure> {
    let mut m = Methods {
        bruteforce: false,
        mobius: false,
        formula: false,
    };
    for tok in s.split(',').map(str::trim) {
        match tok {
            "bruteforce" => m.bruteforce = true,
            "mobius" => m.mobius = true,
            "formula" => m.formula = true,
            "all" => m = Methods { bruteforce: true, mobius: true, formula: true },
            other => return Err(usage(format!("unknown method '{other}'"))),
        }
    }
    Ok(m)
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("range '{s}' is not of the form a..b")))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| usage(format!("bad range bound '{t}'")));
    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
    if a > b {
        return Err(usage(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn config(budget: usize) -> GroupConfig {
    GroupConfig {
        max_order: budget,
        ..GroupConfig::default()
    }
}

fn emit(records: &[OutputRecord], format: Format, header: bool, single: bool) -> Result<(), Failure> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure {
                code: 4,
                message: e.to_string(),
            };
            if header {
                w.write_record(CSV_HEADER.split(',')).map_err(io)?;
            }
            for r in records {
                w.write_record(r.cells()).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| io(e.into_error().into()))?;
            out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        }
        Format::Json => {
            let json = if single {
                serde_json::to_string_pretty(&records[0])
            } else {
                serde_json::to_string_pretty(records)
            };
            out.push_str(&json.map_err(|e| usage(e.to_string()))?);
            out.push('\n');
        }
        Format::Text if single => out.push_str(&records[0].text_block()),
        Format::Text => out.push_str(&record::text_table(records, header)),
    }
    print!("{out}");
    for r in records {
        for n in &r.notes {
            eprintln!("note: {n}");
        }
    }
    Ok(())
}

fn status_code(records: &[OutputRecord]) -> u8 {
    if records.iter().all(|r| r.status == "ok") {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { spec, opts } => {
            let spec: GroupSpec = spec.parse()?;
            let q = parse_quantities(&opts.quantities)?;
            let m = parse_methods(&opts.methods)?;
            let rec = record::compute(&spec, q, m, &config(opts.budget))?;
            let recs = [rec];
            emit(&recs, opts.format, !opts.no_header, true)?;
            Ok(status_code(&recs))
        }
        Command::Table { family, range, opts } => {
            let (a, b) = parse_range(&range)?;
            let q = parse_quantities(&opts.quantities)?;
            let m = parse_methods(&opts.methods)?;
            let cfg = config(opts.budget);
            let specs: Vec<GroupSpec> = (a..=b).filter_map(|n| family.spec(n)).collect();
            let records = specs
                .par_iter()
                .map(|s| record::compute(s, q, m, &cfg))
                .collect::<Result<Vec<_>, Error>>()?;
            emit(&records, opts.format, !opts.no_header, false)?;
            Ok(status_code(&records))
        }
        Command::Verify { scope, budget, verbose } => {
            let scopes: Vec<Scope> = if scope.trim() == "all" {
                Scope::ALL.to_vec()
            } else {
                scope.split(',').map(|s| s.trim().parse()).collect::<Result<_, Error>>()?
            };
            let report = verify::run(&scopes, budget);
            print!("{}", report.render(verbose));
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::DumpLattice { spec, path, budget } => {
            let spec: GroupSpec = spec.parse()?;
            let g = spec.build(&config(budget))?;
            let lat = enumerate_subgroups(&g)?;
            let dump = LatticeDump::new(&lat, &mobius(&lat));
            let json = serde_json::to_string_pretty(&dump).map_err(|e| usage(e.to_string()))?;
            std::fs::write(&path, json + "\n").map_err(|e| Failure {
                code: 4,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
