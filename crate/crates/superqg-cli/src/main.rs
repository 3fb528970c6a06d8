mod commands;
mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{CliError, RunConfig};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "superqg", version, about = "Exact checks for quantum Kac-Moody superalgebras and quiver Hecke superalgebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Named Cartan datum: A1, A1odd, A2, B2, B2odd, A1affine.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// JSON Cartan datum file.
    #[arg(long, global = true)]
    datum: Option<PathBuf>,
    /// Parameter preset (Uqsg, boldU, BKM) or a JSON family file; Uqsg by default, boldU for `hw casimir`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Highest weight, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<i64>>,
    /// Height cutoff.
    #[arg(long, global = true, default_value_t = 4)]
    cutoff: usize,
    #[arg(long, global = true, env = "SUPERQG_JOBS")]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Associativity fuzz cases.
    #[arg(long, global = true, default_value_t = 2000)]
    fuzz: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Dimension tables only.
    Csv,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Cartan(CartanCmd),
    #[command(subcommand)]
    Uminus(UminusCmd),
    #[command(subcommand)]
    Hw(HwCmd),
    #[command(subcommand)]
    Qhs(QhsCmd),
    #[command(subcommand)]
    Perfect(PerfectCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
pub enum CartanCmd {
    /// Validate the datum and list positive roots up to the cutoff.
    Check,
}

#[derive(Subcommand)]
pub enum UminusCmd {
    /// Weight-space dimensions of U⁻ up to the cutoff.
    Dim,
    /// Gram matrix of the form on one weight space.
    Gram {
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<i64>,
    },
    /// Serre elements against the radical of the form.
    Serre,
}

#[derive(Subcommand)]
pub enum HwCmd {
    /// Weyl-Kac character of V(Λ).
    Char,
    /// Weight dimensions of V(Λ) from Verma Gram ranks.
    Dims,
    /// Relation suite on the built module.
    Verify,
    /// Normalized Casimir operator.
    Casimir,
    /// Carry the module to another (θ, p) family.
    Gauge {
        #[arg(long, default_value = "boldU")]
        to: String,
    },
}

#[derive(Subcommand)]
pub enum QhsCmd {
    /// PBW normal form of a product such as `t1*x2*e(0,0)`.
    Straighten {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        /// JSON list of Q terms {i, j, r, s, t}.
        #[arg(long)]
        qparams: Option<PathBuf>,
    },
    /// Relation closure, associativity fuzz and b(iⁿ) checks.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        qparams: Option<PathBuf>,
    },
    /// Graded dimension of R(β) through a degree.
    Dim {
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<i64>,
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
    },
}

#[derive(Subcommand)]
pub enum PerfectCmd {
    /// Perfect and strong perfect checks on a basis of V(Λ).
    Check {
        #[arg(long, value_enum, default_value_t = Basis::Dual)]
        basis: Basis,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Words,
    Divided,
    Dual,
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Every check, instantiated on one preset.
    All,
}

/// What a command produced: a JSON document, an optional flat table, and whether its checks passed.
pub struct Output {
    pub json: Value,
    pub table: Option<Vec<(String, String)>>,
    pub ok: bool,
}

fn render(out: &Output, format: Format) -> Result<String, CliError> {
    match (format, &out.table) {
        (Format::Json, _) => Ok(serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"),
        (Format::Csv, Some(rows)) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Config(e.to_string());
            w.write_record(["beta", "value"]).map_err(io)?;
            for (k, v) in rows {
                w.write_record([k, v]).map_err(io)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Config(e.to_string()))?).expect("utf-8"))
        }
        (Format::Csv, None) => Err(CliError::Config("csv output is only available for dimension tables".into())),
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Config(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    if let Some(j) = g.jobs {
        if j == 0 {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| CliError::Config(e.to_string()))?;
    }
    let cfg = RunConfig {
        preset: g.preset.clone(),
        datum: g.datum.clone(),
        params: g.params.clone(),
        lambda: g.lambda.clone(),
        cutoff: g.cutoff,
        seed: g.seed,
        fuzz: g.fuzz,
    };
    cfg.validate()?;
    match &cli.command {
        Command::Cartan(c) => commands::cartan(&cfg, c),
        Command::Uminus(c) => commands::uminus(&cfg, c),
        Command::Hw(c) => commands::hw(&cfg, c),
        Command::Qhs(c) => commands::qhs(&cfg, c),
        Command::Perfect(c) => commands::perfect(&cfg, c),
        Command::Verify(c) => commands::verify(&cfg, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let body = json!({ "ok": false, "error": "usage", "message": e.to_string().trim() });
            println!("{}", serde_json::to_string(&body).expect("serializable"));
            return ExitCode::from(2);
        }
    };
    let (format, path) = (cli.global.format, cli.global.output.clone());
    let result = run(cli).and_then(|out| {
        emit(&render(&out, format)?, path.as_ref())?;
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let body = json!({ "ok": false, "error": e.kind(), "message": e.to_string() });
            println!("{}", serde_json::to_string(&body).expect("serializable"));
            ExitCode::from(e.code())
        }
    }
}
