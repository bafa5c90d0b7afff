use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use epcode::classify::{self, ClassifyOptions, Kind, CLASSIFY_BUDGET};
use epcode::equiv::equivalent_ep;
use epcode::tables::{self, TableReport, TABLE_IDS};
use epcode::{EpCode, EpGenMatrix, Error, Prime};

mod report;

use report::AnalysisReport;

/// Exit statuses; stable across releases.
mod exit {
    pub const OK: u8 = 0;
    /// `equiv`: inequivalent. `verify-tables`: unexplained discrepancies.
    pub const NEGATIVE: u8 = 1;
    // 2 is clap's usage error
    pub const IO: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const BAD_MODULUS: u8 = 5;
    pub const RAGGED: u8 = 6;
    pub const BUDGET: u8 = 7;
    pub const MISMATCH: u8 = 8;
    pub const UNKNOWN_TABLE: u8 = 9;
    pub const OTHER: u8 = 10;
}

#[derive(Parser)]
#[command(name = "epcode", version, about = "Linear codes over the ring E_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters, duals and predicates of one code.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustive classification up to monomial equivalence.
    Classify {
        kind: Kind,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Run beyond the default length limits.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Recompute the bundled reference tables.
    VerifyTables {
        /// One table id (1-10); all tables when omitted.
        #[arg(long)]
        table: Option<u32>,
        /// Treat known discrepancies as failures too.
        #[arg(long)]
        strict: bool,
        /// Largest length recomputed by classification.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Monomial equivalence of two codes; exit 0 if equivalent, 1 if not.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The right self-dual code t F_p^n and its MDS/AMDS status.
    RightSelfDual {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Lower bound on ternary LCD classes of length n from raw LCD counts.
    LowerBound {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::EntryOutOfRange { .. } => exit::PARSE,
            Error::NotPrime(_) | Error::PrimeTooLarge(_) => exit::BAD_MODULUS,
            Error::RaggedRow { .. } => exit::RAGGED,
            Error::BudgetExceeded { .. } => exit::BUDGET,
            Error::ModulusMismatch(..) | Error::LengthMismatch { .. } => exit::MISMATCH,
            Error::UnknownTable(_) => exit::UNKNOWN_TABLE,
            _ => exit::OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: exit::IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_matrix(path: &Path) -> Result<EpGenMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    EpGenMatrix::parse(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn analyze(file: &Path, format: Format) -> Result<u8, Failure> {
    let input = read_matrix(file)?;
    let report = AnalysisReport::new(&EpCode::from_generators(&input));
    let text = match format {
        Format::Json => json(&serde_json::json!({ "input": input, "report": report })),
        Format::Text => format!("input:\n{}\n{report}", indent(&input)),
    };
    emit(None, &text)?;
    Ok(exit::OK)
}

fn indent(g: &EpGenMatrix) -> String {
    g.rows()
        .iter()
        .map(|r| format!("  {r}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[allow(clippy::too_many_arguments)]
fn run_classify(
    kind: Kind,
    p: u32,
    n: usize,
    workers: usize,
    force: bool,
    output: Option<&Path>,
    format: Format,
) -> Result<u8, Failure> {
    let p = Prime::new(p)?;
    let mut opts = ClassifyOptions::with_workers(workers);
    if force {
        if CLASSIFY_BUDGET.check("classification", p, n).is_err() {
            eprintln!(
                "warning: n={n} is beyond the default limit n<={} for p={p}; this may take very long",
                CLASSIFY_BUDGET.max_n(p)
            );
        }
        opts = opts.forced();
    }
    let c = classify::classify(kind, p, n, &opts)?;
    let text = match format {
        Format::Json => {
            let meta = serde_json::json!({
                "meta": {
                    "tool": "epcode",
                    "version": env!("CARGO_PKG_VERSION"),
                    "kind": kind,
                    "p": p,
                    "n": n,
                    "workers": workers,
                }
            });
            format!("{meta}\n{}", c.to_jsonl())
        }
        Format::Text => c.to_text(),
    };
    emit(output, &text)?;
    if output.is_some() {
        eprintln!("{} classes", c.total());
    }
    Ok(exit::OK)
}

fn verify_tables(
    table: Option<u32>,
    strict: bool,
    max_n: Option<usize>,
    workers: usize,
    format: Format,
) -> Result<u8, Failure> {
    let ids: Vec<u32> = match table {
        Some(id) if !TABLE_IDS.contains(&id) => return Err(Error::UnknownTable(id).into()),
        Some(id) => vec![id],
        None => TABLE_IDS.collect(),
    };
    let opts = ClassifyOptions::with_workers(workers);
    let mut ok = true;
    for id in ids {
        let report: TableReport = tables::verify_table(id, max_n, &opts)?;
        ok &= report.passes(strict);
        let text = match format {
            Format::Json => json(&report),
            Format::Text => format!("{report}\n\n"),
        };
        emit(None, &text)?;
    }
    Ok(if ok { exit::OK } else { exit::NEGATIVE })
}

fn equiv(first: &Path, second: &Path, format: Format) -> Result<u8, Failure> {
    let (g1, g2) = (read_matrix(first)?, read_matrix(second)?);
    if g1.modulus() != g2.modulus() {
        return Err(Error::ModulusMismatch(g1.modulus().get(), g2.modulus().get()).into());
    }
    if g1.len() != g2.len() {
        return Err(Error::LengthMismatch {
            expected: g1.len(),
            found: g2.len(),
        }
        .into());
    }
    let witness = equivalent_ep(&EpCode::from_generators(&g1), &EpCode::from_generators(&g2));
    let text = match (&witness, format) {
        (Some(m), Format::Json) => json(&serde_json::json!({
            "equivalent": true,
            "perm": m.perm(),
            "scale": m.scale().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })),
        (None, Format::Json) => json(&serde_json::json!({ "equivalent": false })),
        (Some(m), Format::Text) => {
            let images: Vec<String> = m.perm().iter().map(|j| (j + 1).to_string()).collect();
            let scales: Vec<String> = m.scale().iter().map(|e| e.to_string()).collect();
            format!(
                "equivalent\ncoordinate i goes to: {}\nscale at each image coordinate: {}\n",
                images.join(" "),
                scales.join(" ")
            )
        }
        (None, Format::Text) => "inequivalent\n".to_string(),
    };
    emit(None, &text)?;
    Ok(if witness.is_some() { exit::OK } else { exit::NEGATIVE })
}

fn right_self_dual(p: u32, n: usize, format: Format) -> Result<u8, Failure> {
    let r = classify::right_self_dual_report(Prime::new(p)?, n);
    let text = match format {
        Format::Json => json(&r),
        Format::Text => {
            let unique = match r.unique_verified {
                Some(true) => "unique (checked exhaustively)",
                Some(false) => "NOT unique",
                None => "uniqueness not checked for n > 2",
            };
            format!(
                "t F_{p}^{n}: d={} {}; {unique}\n",
                r.record.d.map_or("-".into(), |d| d.to_string()),
                r.record.mds_status
            )
        }
    };
    emit(None, &text)?;
    Ok(exit::OK)
}

fn lower_bound(n: usize, format: Format) -> Result<u8, Failure> {
    CLASSIFY_BUDGET.check("lower bound", Prime::THREE, n)?;
    let lb = classify::ternary_lcd_lower_bound(n);
    let text = match format {
        Format::Json => json(&lb),
        Format::Text => format!(
            "n={n}: LCD codes by dimension {:?}, denominator {}, bound {}\n",
            lb.phi, lb.denominator, lb.bound
        ),
    };
    emit(None, &text)?;
    Ok(exit::OK)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { file, format } => analyze(&file, format),
        Command::Classify {
            kind,
            p,
            n,
            workers,
            force,
            output,
            format,
        } => run_classify(kind, p, n, workers, force, output.as_deref(), format),
        Command::VerifyTables {
            table,
            strict,
            max_n,
            workers,
            format,
        } => verify_tables(table, strict, max_n, workers, format),
        Command::Equiv {
            first,
            second,
            format,
        } => equiv(&first, &second, format),
        Command::RightSelfDual { p, n, format } => right_self_dual(p, n, format),
        Command::LowerBound { n, format } => lower_bound(n, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
