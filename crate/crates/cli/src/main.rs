use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use hallforge::derived::{self, TiltFile, TiltTable};
use hallforge::error::Error;
use hallforge::quiver::Config;
use hallforge::suites::{self, SuiteInput, SuiteName, SuiteOptions, SuiteReport};
use hallforge::table::Table;
use hallforge_cli::expr::{parse_expr, Target};
use hallforge_cli::{cache, eval, load_config, parse_csv, parse_window, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "hallforge",
    version,
    about = "Exact Hall, Heisenberg-double and lattice algebras of quiver representations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Quiver configuration (JSON); defaults to A2 with q = 2 and bound 2,2.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the field size.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Override the dimension bound, e.g. `2,2`.
    #[arg(long, global = true)]
    bound: Option<String>,
    /// Site window `lo:hi`.
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "-2:2")]
    window: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on brute-force enumeration sizes.
    #[arg(long, global = true)]
    budget: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Build or describe the isomorphism-class table.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Evaluate an expression to normal form.
    Eval {
        #[arg(long, value_parser = parse_target)]
        algebra: Target,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Run one verification suite exhaustively.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: SuiteName,
        /// Target configuration for the tilt suite.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Tilting table for the tilt suite; discovered when absent.
        #[arg(long)]
        tilt: Option<PathBuf>,
        /// Largest total dimension of an object in the universe.
        #[arg(long)]
        max_total: Option<usize>,
    },
    /// Find or check tilting tables between two configurations.
    Tilt {
        #[command(subcommand)]
        action: TiltAction,
    },
}

#[derive(Subcommand)]
enum TableAction {
    Build,
    Info,
}

#[derive(Subcommand)]
enum TiltAction {
    Discover {
        #[arg(long)]
        target: PathBuf,
        /// Allowed shifts, e.g. `0,1`.
        #[arg(long, default_value = "0,1")]
        shifts: String,
        /// Write the first table found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Check {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        tilt: PathBuf,
        #[arg(long)]
        max_total: Option<usize>,
    },
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Checks,
    Config(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.into())
    }
}

struct Session {
    global: Global,
    config: Config,
    budget: u128,
    window: (i64, i64),
}

impl Session {
    fn new(global: Global) -> anyhow::Result<Self> {
        let bound = global
            .bound
            .as_deref()
            .map(|b| parse_csv(b, "dimensions"))
            .transpose()?;
        let config = load_config(global.config.as_deref(), global.q, bound.as_deref())?;
        let window = parse_window(&global.window)?;
        let budget = global.budget.unwrap_or(DEFAULT_BUDGET);
        Ok(Session {
            global,
            config,
            budget,
            window,
        })
    }

    fn table(&self) -> anyhow::Result<Table> {
        Ok(Table::from_config(&self.config, self.budget)?)
    }

    fn target(&self, path: &Path) -> anyhow::Result<(Config, Table)> {
        let mut cfg = load_config(Some(path), self.global.q, None)?;
        if self.global.bound.is_some() {
            cfg.bound = self.config.bound.clone();
            cfg.validate()?;
        }
        let t = Table::from_config(&cfg, self.budget)?;
        Ok((cfg, t))
    }

    fn options(&self, max_total: Option<usize>) -> SuiteOptions {
        SuiteOptions {
            window: self.window,
            budget: self.budget,
            max_total,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let s = Session::new(cli.global)?;
    match cli.command {
        Command::Table { action } => table(&s, action),
        Command::Eval { algebra, expr } => {
            let t = s.table()?;
            let e = parse_expr(&expr, algebra)?;
            let out = eval::eval_expr(&t, algebra, &e)?;
            if s.global.json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("{}", out.render);
            }
            Ok(())
        }
        Command::Verify {
            suite,
            target,
            tilt,
            max_total,
        } => verify(&s, suite, target.as_deref(), tilt.as_deref(), max_total),
        Command::Tilt {
            action:
                TiltAction::Check {
                    target,
                    tilt,
                    max_total,
                },
        } => verify(&s, SuiteName::Tilt, Some(&target), Some(&tilt), max_total),
        Command::Tilt {
            action: TiltAction::Discover { target, shifts, out },
        } => discover(&s, &target, &shifts, out.as_deref()),
    }
}

fn table(s: &Session, action: TableAction) -> Result<(), Failure> {
    let dir = std::env::var_os(cache::CACHE_ENV).map(PathBuf::from);
    let cached = match (&action, &dir) {
        (TableAction::Info, Some(d)) => cache::read(d, &s.config),
        _ => None,
    };
    let info = match cached {
        Some(info) => info,
        None => {
            let t = s.table()?;
            let info = cache::describe(&s.config, &t);
            if let Some(d) = &dir {
                let path = cache::write(d, &info)?;
                if !s.global.json {
                    eprintln!("cached {}", path.display());
                }
            }
            info
        }
    };
    if s.global.json {
        println!("{}", serde_json::to_string_pretty(&info)?);
        return Ok(());
    }
    let sm = &info.summary;
    println!(
        "quiver {} with {} arrows, q = {}, bound {:?}",
        sm.vertices.join(","),
        info.config.arrows.len(),
        sm.q,
        sm.bound
    );
    println!("{} classes, {} indecomposables", sm.classes, sm.indecomposables.len());
    if matches!(action, TableAction::Info) {
        for row in &info.classes {
            let mark = if row.indecomposable { "*" } else { " " };
            println!("{mark} {:<16} {:?}  |Aut| = {}", row.name, row.dims, row.aut);
        }
    }
    Ok(())
}

fn verify(
    s: &Session,
    suite: SuiteName,
    target: Option<&Path>,
    tilt: Option<&Path>,
    max_total: Option<usize>,
) -> Result<(), Failure> {
    let t = s.table()?;
    let tgt = match target {
        Some(p) => Some(s.target(p)?.1),
        None if suite.needs_target() => {
            return Err(anyhow::anyhow!("suite `{suite}` needs --target").into());
        }
        None => None,
    };
    let table = match (tilt, &tgt) {
        (Some(p), Some(tg)) => {
            let file = TiltFile::load(p).with_context(|| format!("reading {}", p.display()))?;
            Some(TiltTable::resolve(&t, tg, &file)?)
        }
        (Some(_), None) => return Err(anyhow::anyhow!("--tilt needs --target").into()),
        _ => None,
    };
    let input = SuiteInput {
        table: &t,
        target: tgt.as_ref(),
        tilt: table.as_ref(),
        options: s.options(max_total),
    };
    let report = match suites::run(suite, &input) {
        Ok(r) => r,
        Err(Error::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            return Err(Failure::Checks);
        }
        Err(e) => return Err(e.into()),
    };
    print_report(s, &report)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn print_report(s: &Session, r: &SuiteReport) -> anyhow::Result<()> {
    if s.global.json {
        println!("{}", serde_json::to_string_pretty(r)?);
        return Ok(());
    }
    for note in &r.notes {
        println!("note: {note}");
    }
    for f in r.failures() {
        println!(
            "FAIL {} {}: lhs = {}, rhs = {}",
            f.check,
            f.instance,
            f.lhs.as_deref().unwrap_or(""),
            f.rhs.as_deref().unwrap_or("")
        );
    }
    let sm = &r.summary;
    println!(
        "{} {}: {} checks, {} passed, {} failed, {} skipped ({} ms)",
        r.suite,
        if r.pass { "PASS" } else { "FAIL" },
        sm.total,
        sm.passed,
        sm.failed,
        sm.skipped,
        r.wall_time_ms
    );
    Ok(())
}

fn discover(s: &Session, target: &Path, shifts: &str, out: Option<&Path>) -> Result<(), Failure> {
    let t = s.table()?;
    let (_, tgt) = s.target(target)?;
    let shifts: Vec<i64> = parse_csv(shifts, "shifts")?;
    let found = derived::discover_tilt(&t, &tgt, &shifts);
    let source = s
        .global
        .config
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "A2".into());
    let files: Vec<TiltFile> = found
        .iter()
        .map(|f| f.to_file(&t, &tgt, &source, &target.display().to_string()))
        .collect();
    if let (Some(p), Some(first)) = (out, files.first()) {
        std::fs::write(p, serde_json::to_string_pretty(first)?).with_context(|| format!("writing {}", p.display()))?;
    }
    if s.global.json {
        println!("{}", serde_json::to_string_pretty(&files)?);
    } else {
        println!("{} tilting tables", files.len());
        for (i, f) in files.iter().enumerate() {
            let parts: Vec<String> = f
                .map
                .iter()
                .map(|e| format!("{} -> {}[{}]", e.from, e.to, e.shift))
                .collect();
            println!("{i}: {}", parts.join(", "));
        }
    }
    if files.is_empty() {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}
