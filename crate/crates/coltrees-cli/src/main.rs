//! `coltrees`: counting, classification, equation checks and OEIS lookups
//! for matrix-colored plane trees.

mod cache;
mod oeis;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coltrees::{
    count_by_root, parse_matrix, parse_matrix_json, parse_polynomial, series_from_counts,
    verify_functional_equation, ColoringMatrix, DecimalSeq, EquationVerdict, SequenceTable,
    SeriesSelector,
};
use serde::Serialize;

/// Outcome classes, mapped one-to-one onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Resource(m) => m,
        }
    }
}

type CliResult = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "coltrees", version, about = "Plane trees colored by zero-one matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count trees by root color for n = 1..=N.
    Count(CountArgs),
    /// Classify every m x m matrix and print the class counts.
    Classify(ClassifyArgs),
    /// Check that an equation P(F, x) = 0 holds for a counting series.
    Verify(VerifyArgs),
    /// Look up a counting sequence in the OEIS.
    Oeis(oeis::OeisArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Matrix as rows separated by ';' (e.g. "11;10") or a JSON array of rows.
    matrix: String,
    #[arg(long = "n", default_value_t = 10)]
    n: usize,
    /// Emit JSON with decimal-string sequences.
    #[arg(long, group = "format")]
    json: bool,
    /// Emit "n a(n)" lines for the total (or --root) sequence.
    #[arg(long, group = "format")]
    bfile: bool,
    /// Emit CSV with columns n, t, t^(1)..t^(m).
    #[arg(long, group = "format")]
    csv: bool,
    /// Root color for --bfile.
    #[arg(long)]
    root: Option<usize>,
}

#[derive(Args)]
struct ClassifyArgs {
    m: usize,
    /// Comparison depth; defaults to 16 for m <= 3 and 14 above.
    #[arg(long = "n")]
    n: Option<usize>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, env = "COLTREES_CACHE_DIR", default_value = ".coltrees-cache")]
    cache_dir: PathBuf,
    /// Skip reading and writing the cache.
    #[arg(long)]
    no_cache: bool,
    /// Also write the catalog JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit m = 5 (2^25 matrices).
    #[arg(long)]
    allow_m5: bool,
}

#[derive(Args)]
struct VerifyArgs {
    matrix: String,
    /// "total" or "color=i".
    series: String,
    /// Polynomial in F and x, e.g. "F^2 - F + x".
    equation: String,
    #[arg(long, default_value_t = 30)]
    order: usize,
}

pub fn matrix_arg(text: &str) -> Result<ColoringMatrix, Failure> {
    let parsed = if text.trim_start().starts_with('[') {
        parse_matrix_json(text)
    } else {
        parse_matrix(text)
    };
    parsed.map_err(|e| Failure::Usage(format!("bad matrix {text:?}: {e}")))
}

pub fn selector_arg(text: &str, m: usize) -> Result<SeriesSelector, Failure> {
    let t = text.trim();
    if t == "total" {
        return Ok(SeriesSelector::Total);
    }
    let i = t
        .strip_prefix("color=")
        .and_then(|c| c.parse::<usize>().ok())
        .ok_or_else(|| Failure::Usage(format!("series must be \"total\" or \"color=i\", got {text:?}")))?;
    if !(1..=m).contains(&i) {
        return Err(Failure::Usage(format!("color {i} not in 1..={m}")));
    }
    Ok(SeriesSelector::Color(i))
}

pub fn table(a: &ColoringMatrix, n: usize) -> Result<SequenceTable, Failure> {
    count_by_root(a, n).map_err(|e| Failure::Usage(e.to_string()))
}

fn joined(row: &[num_bigint::BigUint], sep: &str) -> String {
    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct CountJson {
    matrix: String,
    n: usize,
    per_color: Vec<DecimalSeq>,
    total: DecimalSeq,
}

fn cmd_count(args: CountArgs) -> CliResult {
    let a = matrix_arg(&args.matrix)?;
    let t = table(&a, args.n)?;
    if let Some(r) = args.root {
        if !args.bfile || !(1..=a.size()).contains(&r) {
            return Err(Failure::Usage(format!("--root {r} needs --bfile and a color in 1..={}", a.size())));
        }
    }
    if args.json {
        let out = CountJson {
            matrix: a.to_string(),
            n: args.n,
            per_color: t.per_color.iter().cloned().map(DecimalSeq).collect(),
            total: DecimalSeq(t.total.clone()),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else if args.bfile {
        let row = args.root.map_or(t.total(), |r| t.color(r));
        for (k, v) in row.iter().enumerate() {
            println!("{} {v}", k + 1);
        }
    } else if args.csv {
        let heads: Vec<String> = (1..=a.size()).map(|i| format!("t^({i})")).collect();
        println!("n,t,{}", heads.join(","));
        for k in 0..args.n {
            let cols: Vec<String> = t.per_color.iter().map(|r| r[k].to_string()).collect();
            println!("{},{},{}", k + 1, t.total[k], cols.join(","));
        }
    } else {
        println!("matrix {a}");
        for i in 1..=a.size() {
            println!("root {i}: {}", joined(t.color(i), " "));
        }
        println!("total: {}", joined(t.total(), " "));
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> CliResult {
    let depth = args.n.unwrap_or_else(|| coltrees::default_depth(args.m));
    let catalog = cache::load_or_classify(&cache::Request {
        m: args.m,
        depth,
        jobs: args.jobs,
        allow_m5: args.allow_m5,
        cache_dir: (!args.no_cache).then_some(args.cache_dir.as_path()),
    })?;
    if let Some(out) = &args.out {
        std::fs::write(out, catalog.to_json() + "\n")
            .map_err(|e| Failure::Resource(format!("cannot write {}: {e}", out.display())))?;
    }
    let s = &catalog.summary;
    println!("{}", catalog.summary_line());
    println!("{} split, {} triple-split", s.split_tree_classes, s.triple_split_tree_classes);
    println!(
        "max separating n: {} tree, {} strong (depth {depth})",
        s.max_separating_n_tree, s.max_separating_n_strong
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CliResult {
    let a = matrix_arg(&args.matrix)?;
    let sel = selector_arg(&args.series, a.size())?;
    let p = parse_polynomial(&args.equation)
        .map_err(|e| Failure::Usage(format!("bad equation {:?}: {e}", args.equation)))?;
    if args.order == 0 {
        return Err(Failure::Usage("--order must be positive".into()));
    }
    let t = table(&a, args.order)?;
    let s = series_from_counts(&t, sel).map_err(|e| Failure::Usage(e.to_string()))?;
    match verify_functional_equation(&p, &s) {
        EquationVerdict::Annihilated { order } => {
            println!("annihilated to order {order}");
            Ok(())
        }
        EquationVerdict::FailsAt { index, value } => {
            println!("fails at order {index}: coefficient {value}");
            Err(Failure::Verification(format!("equation fails at x^{index}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oeis(a) => oeis::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
