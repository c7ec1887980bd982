//! `motivic-ext`: Ext charts and verification suites from the command line.
//!
//! Exit status: 0 when everything passed, 1 when a verification claim failed,
//! 2 for usage or configuration errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use motivic_ext::ext::{Calculator, Window};
use motivic_ext::steenrod::{AlgebraParams, Side};
use motivic_ext::store::{ChartDocument, ChartFormat, Store};
use motivic_ext::verify::{run_suite, Suite, SuiteConfig};

const CACHE_ENV: &str = "MOTIVIC_EXT_CACHE";

#[derive(Parser)]
#[command(name = "motivic-ext", version, about = "Adams E2 charts for odd-primary motivic and C2-equivariant Steenrod algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a windowed Ext chart.
    Ext(ExtArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Real,
    C2,
    Classical,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Real => Side::Real,
            SideArg::C2 => Side::C2,
            SideArg::Classical => Side::Classical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
    Json,
}

impl From<FormatArg> for ChartFormat {
    fn from(f: FormatArg) -> ChartFormat {
        match f {
            FormatArg::Ascii => ChartFormat::Ascii,
            FormatArg::Svg => ChartFormat::Svg,
            FormatArg::Json => ChartFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    LemmaCoarse,
    CobarD2,
    CobarMap,
    ExtMap,
    Uct,
    Ranges,
    Split,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::LemmaCoarse => Suite::LemmaCoarse,
            SuiteArg::CobarD2 => Suite::CobarD2,
            SuiteArg::CobarMap => Suite::CobarMap,
            SuiteArg::ExtMap => Suite::ExtMap,
            SuiteArg::Uct => Suite::Uct,
            SuiteArg::Ranges => Suite::Ranges,
            SuiteArg::Split => Suite::Split,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Cache directory; the MOTIVIC_EXT_CACHE environment variable takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long, value_enum, default_value = "real")]
    side: SideArg,
    #[arg(long, default_value_t = 3)]
    prime: u32,
    #[arg(long, default_value_t = 3)]
    max_f: u32,
    #[arg(long, default_value_t = 12)]
    max_total: i64,
    /// Defaults to −max_total.
    #[arg(long, allow_hyphen_values = true)]
    min_weight: Option<i64>,
    /// Defaults to max_total.
    #[arg(long, allow_hyphen_values = true)]
    max_weight: Option<i64>,
    #[arg(long, value_enum, default_value = "ascii")]
    format: FormatArg,
    /// Also compute the realization map to the C2 side (Real side only).
    #[arg(long)]
    compare: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Repeat to check several primes where the suite allows it.
    #[arg(long)]
    prime: Vec<u32>,
    #[arg(long)]
    max_f: Option<u32>,
    #[arg(long)]
    max_total: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    min_weight: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    max_weight: Option<i64>,
    /// Suppress the per-claim summary on stderr.
    #[arg(long)]
    quiet: bool,
    #[command(flatten)]
    common: Common,
}

fn cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or_else(|| flag.clone())
}

fn configure_pool(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    Ok(())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_ext(args: &ExtArgs) -> Result<ExitCode> {
    configure_pool(args.common.jobs)?;
    let side = Side::from(args.side);
    AlgebraParams::new(args.prime, side)?;
    if args.compare && side != Side::Real {
        bail!("--compare needs --side real");
    }
    if args.max_total < 0 {
        bail!("--max-total must be nonnegative");
    }
    let window = Window::new(
        args.max_f,
        args.max_total,
        args.min_weight.unwrap_or(-args.max_total),
        args.max_weight.unwrap_or(args.max_total),
    );
    let mut calc = Calculator::new(args.prime, args.max_total)?;
    if let Some(dir) = cache_dir(&args.common.cache) {
        log::info!("using cache at {}", dir.display());
        calc = calc.with_store(Store::new(dir));
    }
    let chart = if args.compare { calc.comparison_chart(&window)? } else { calc.chart(side, &window)? };
    let doc = ChartDocument::from_chart(&chart);
    write_output(&args.common.out, &doc.render(args.format.into()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    configure_pool(args.common.jobs)?;
    let config = SuiteConfig {
        primes: (!args.prime.is_empty()).then(|| args.prime.clone()),
        max_f: args.max_f,
        max_total: args.max_total,
        min_weight: args.min_weight,
        max_weight: args.max_weight,
        store: cache_dir(&args.common.cache).map(Store::new),
    };
    let report = run_suite(args.suite.into(), &config)?;
    write_output(&args.common.out, &report.to_json())?;
    if !args.quiet {
        eprint!("{}", report.human_summary());
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Ext(args) => cmd_ext(args),
        Command::Verify(args) => cmd_verify(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
