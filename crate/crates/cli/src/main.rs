//! `tau-lab`: command-line front end for the exact Hurwitz / intersection
//! number engine.

mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tau_lab::hodge::{hodge_bracket, hodge_genus, hodge_series, PdeSolver};
use tau_lab::hurwitz::{
    assemble_h_onepart, assemble_h_simple, hurwitz, l_p, HurwitzCache, HurwitzKind, HurwitzQuery, Method,
};
use tau_lab::pic::{bracket_table, f_series, pic_bracket, u_in_t_variables};
use tau_lab::rat::format_rat;
use tau_lab::symmetric::{character, schur_poly};
use tau_lab::{Caps, Partition, TruncSeries};

const CACHE_ENV: &str = "TAU_LAB_CACHE";

#[derive(Parser, Debug)]
#[command(name = "tau-lab", version, about = "Exact Hurwitz numbers, psi-class brackets and hierarchy checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// JSON-lines cache for Hurwitz numbers (overridden by TAU_LAB_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    Onepart,
    Simple,
}

impl From<KindArg> for HurwitzKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Onepart => HurwitzKind::OnePart,
            KindArg::Simple => HurwitzKind::Simple,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Brute,
    Frobenius,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Frobenius => Method::Frobenius,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum HodgeRoute {
    Elsv,
    Pde,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SeriesKind {
    /// One-part series H.
    Onepart,
    /// L_p^2 applied to the one-part series.
    Lp2h,
    /// Simple series H.
    Simple,
    /// Bracket generating series F in the t variables.
    F,
    /// U = F'' in the T variables.
    U,
    /// Graded Hodge series sum (-z)^k F^(k).
    Hodge,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A single Hurwitz number.
    Hurwitz {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        genus: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Frobenius)]
        method: MethodArg,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// A bracket <tau_d1 ... tau_dn>; 0 when no genus fits.
    Bracket {
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
    },
    /// Every bracket of one genus.
    BracketTable {
        #[arg(long)]
        genus: u32,
        /// Smallest index included.
        #[arg(long, default_value_t = 2)]
        min_index: usize,
    },
    /// A Hodge integral with one lambda class.
    Hodge {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = HodgeRoute::Elsv)]
        route: HodgeRoute,
    },
    /// Schur polynomial in the power sums.
    Schur {
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<usize>,
    },
    /// Character chi_mu(lambda) of the symmetric group.
    Char {
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
    },
    /// A truncated generating series.
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Verification suites; exit 1 on FAIL.
    Verify {
        #[command(subcommand)]
        suite: verify::Suite,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct CapsArgs {
    /// Weight cap.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    weight: u64,
    /// Cap on the auxiliary exponent (beta for Hurwitz series).
    #[arg(long, default_value_t = 4)]
    aux: u32,
    /// Highest power of z for the Hodge series.
    #[arg(long, default_value_t = 1)]
    z: u32,
}

/// Everything a command needs besides its own flags.
#[derive(Debug)]
pub struct RunConfig {
    pub format: Format,
    pub cache: Option<PathBuf>,
}

type CmdResult = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from).or(cli.cache);
    let cfg = RunConfig { format: cli.format, cache };
    match run(cli.command, &cfg) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command, cfg: &RunConfig) -> CmdResult {
    match cmd {
        Command::Hurwitz { kind, genus, profile, method, json } => {
            let format = if json { Format::Json } else { cfg.format };
            cmd_hurwitz(kind.into(), genus, profile, method.into(), format, cfg)
        }
        Command::Bracket { indices } => cmd_bracket(&indices, cfg),
        Command::BracketTable { genus, min_index } => cmd_bracket_table(genus, min_index, cfg),
        Command::Hodge { genus, indices, k, route } => cmd_hodge(genus, &indices, k, route, cfg),
        Command::Schur { mu } => {
            let mu = partition(mu)?;
            let s = schur_poly(&mu, Caps::new(mu.size() as u64, 0));
            emit_series(&s, cfg.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Char { mu, lambda } => {
            let (mu, lambda) = (partition(mu)?, partition(lambda)?);
            let v = character(&mu, &lambda).map_err(|e| e.to_string())?;
            match cfg.format {
                Format::Text => println!("{v}"),
                Format::Json => println!("{}", json!({"mu": mu.parts(), "lambda": lambda.parts(), "value": v})),
                Format::Csv => println!("mu,lambda,value\n\"{mu}\",\"{lambda}\",{v}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { kind, caps } => {
            let s = build_series(kind, caps).map_err(|e| e.to_string())?;
            emit_series(&s, cfg.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => verify::run(suite, cfg),
    }
}

fn partition(parts: Vec<usize>) -> Result<Partition, String> {
    Partition::new(parts).map_err(|e| e.to_string())
}

fn cmd_hurwitz(
    kind: HurwitzKind,
    genus: u32,
    profile: Vec<usize>,
    method: Method,
    format: Format,
    cfg: &RunConfig,
) -> CmdResult {
    let q = HurwitzQuery::new(kind, genus, profile).map_err(|e| e.to_string())?;
    let value = match &cfg.cache {
        Some(path) => HurwitzCache::open(path).and_then(|mut c| c.get_or_compute(&q, method)),
        None => hurwitz(&q, method),
    }
    .map_err(|e| e.to_string())?;
    let v = format_rat(&value);
    match format {
        Format::Text => println!("{v}"),
        Format::Json => println!("{}", json!({"query": q, "method": method, "value": v})),
        Format::Csv => {
            let profile: Vec<String> = q.profile.iter().map(|b| b.to_string()).collect();
            println!("kind,genus,profile,method,value");
            println!("{},{},\"{}\",{},{v}", kind_name(q.kind), q.genus, profile.join(","), method_name(method));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn kind_name(k: HurwitzKind) -> &'static str {
    match k {
        HurwitzKind::OnePart => "onepart",
        HurwitzKind::Simple => "simple",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Frobenius => "frobenius",
        Method::Closed => "closed",
    }
}

fn joined(indices: &[usize]) -> String {
    indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_bracket(indices: &[usize], cfg: &RunConfig) -> CmdResult {
    let b = pic_bracket(indices).map_err(|e| e.to_string())?;
    match cfg.format {
        Format::Text => println!("{}", format_rat(&b.value)),
        Format::Json => println!("{}", serde_json::to_string(&b).expect("serializable")),
        Format::Csv => {
            println!("indices,genus,value");
            let g = b.genus.map(|g| g.to_string()).unwrap_or_default();
            println!("\"{}\",{g},{}", joined(&b.indices), format_rat(&b.value));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bracket_table(genus: u32, min_index: usize, cfg: &RunConfig) -> CmdResult {
    let rows = bracket_table(genus, min_index).map_err(|e| e.to_string())?;
    let mut out = std::io::stdout().lock();
    match cfg.format {
        Format::Text => {
            for b in &rows {
                let _ = writeln!(out, "{}\t{}", joined(&b.indices), format_rat(&b.value));
            }
        }
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"));
        }
        Format::Csv => {
            let _ = writeln!(out, "indices,genus,value");
            for b in &rows {
                let _ = writeln!(out, "\"{}\",{genus},{}", joined(&b.indices), format_rat(&b.value));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hodge(genus: u32, indices: &[usize], k: usize, route: HodgeRoute, cfg: &RunConfig) -> CmdResult {
    // Brackets whose dimension does not match the requested genus vanish.
    let value = if hodge_genus(indices, k) != Some(genus) {
        tau_lab::rat::rint(0)
    } else {
        match route {
            HodgeRoute::Elsv => hodge_bracket(indices, k),
            HodgeRoute::Pde => PdeSolver::solve(k as u32, genus).and_then(|s| s.bracket(indices, k)),
        }
        .map_err(|e| e.to_string())?
    };
    let v = format_rat(&value);
    match cfg.format {
        Format::Text => println!("{v}"),
        Format::Json => println!("{}", json!({"genus": genus, "indices": indices, "k": k, "value": v})),
        Format::Csv => println!("genus,indices,k,value\n{genus},\"{}\",{k},{v}", joined(indices)),
    }
    Ok(ExitCode::SUCCESS)
}

fn build_series(kind: SeriesKind, caps: CapsArgs) -> tau_lab::Result<TruncSeries> {
    let c = Caps::new(caps.weight, caps.aux as i32);
    match kind {
        SeriesKind::Onepart => assemble_h_onepart(c),
        SeriesKind::Lp2h => Ok(l_p(&l_p(&assemble_h_onepart(c)?))),
        SeriesKind::Simple => assemble_h_simple(c),
        SeriesKind::F => f_series(caps.weight),
        SeriesKind::U => u_in_t_variables(caps.weight),
        SeriesKind::Hodge => hodge_series(caps.weight, caps.z),
    }
}

fn emit_series(s: &TruncSeries, format: Format) {
    match format {
        Format::Text => println!("{s}"),
        Format::Json => println!("{}", s.to_json()),
        Format::Csv => {
            println!("aux,exponents,coeff");
            for (m, c) in s.terms() {
                let e: Vec<String> = m.exps.iter().map(|x| x.to_string()).collect();
                println!("{},\"{}\",{}", m.aux, e.join(","), format_rat(c));
            }
        }
    }
}

