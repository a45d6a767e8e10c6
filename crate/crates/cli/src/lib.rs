//! `cobweb` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or I/O error, 2 usage error.

pub mod crosscheck;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cobweb_core::chains::{
    brute_force_max_chains_with, greedy_disjoint_copies, ChainCountReport, Source,
    DEFAULT_ORACLE_MAX,
};
use cobweb_core::fib::{fib_signed, fibonomial_def, fibonomial_rec, RecurrenceForm};
use cobweb_core::incidence::{
    mobius, truncation_size, zeta_explicit, zeta_from_order, TriangularMatrix,
};
use cobweb_core::konvalina::{brute_sum, c_first_kind, s_second_kind, Kind, WeightVector};
use cobweb_core::paths::{fibonomial_via_gv, gv_terms, FencePoset, Zigzag};
use cobweb_core::poset::{count_copies_rooted, truncate, Vertex};
use cobweb_core::{chains::fibonomial_via_chains, Exec};

use crosscheck::CrosscheckConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest truncation accepted by `zeta` and `mobius`.
pub const MATRIX_MAX_LEVELS: u32 = 12;
/// Largest truncation accepted by `hasse`.
pub const HASSE_MAX_LEVELS: u32 = 10;
/// Environment variable overriding oracle bounds.
pub const ORACLE_ENV: &str = "COBWEB_ORACLE_MAX";

#[derive(Debug, Parser)]
#[command(
    name = "cobweb",
    version,
    about = "Cobweb poset, incidence algebra and fibonomial coefficients"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(alias = "dense")]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Def,
    #[value(name = "recA", alias = "rec-a")]
    RecA,
    #[value(name = "recB", alias = "rec-b")]
    RecB,
    Chains,
    Gv,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaSource {
    Order,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    Second,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fibonacci number F_n (negative n allowed).
    Fib {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Fibonomial coefficient (n over k)_F.
    Fibonomial {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Method::Def)]
        method: Method,
    },
    /// ζ matrix of the truncation with the given number of levels.
    Zeta {
        #[arg(long)]
        levels: u32,
        #[arg(long, value_enum, default_value_t = ZetaSource::Order)]
        source: ZetaSource,
    },
    /// Möbius matrix of the truncation.
    Mobius {
        #[arg(long)]
        levels: u32,
    },
    /// Saturated chain counts from level k to level n.
    Chains {
        k: u32,
        n: u32,
        /// Also count by depth-first search.
        #[arg(long)]
        brute: bool,
    },
    /// Copies of the height-m prototype rooted at a vertex.
    Copies {
        /// Level of the root.
        #[arg(long, default_value_t = 0)]
        level: u32,
        /// 1-based position of the root within its level.
        #[arg(long, default_value_t = 1)]
        pos: u64,
        /// Height of the prototype.
        #[arg(long)]
        height: u32,
        /// Also build a greedy family of chain-disjoint copies.
        #[arg(long)]
        greedy: bool,
    },
    /// Weighted box selections C_k (distinct) and S_k (repeatable).
    Konvalina {
        /// Comma-separated nondecreasing positive weights.
        #[arg(long)]
        weights: WeightVector,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        /// Also evaluate the literal sums.
        #[arg(long)]
        brute: bool,
    },
    /// Fibonomial (N over k)_F as a sum of path determinants.
    Gv {
        big_n: u32,
        k: u32,
        /// List every index subset with its determinant.
        #[arg(long)]
        verbose: bool,
    },
    /// Order ideals of the n-element fence.
    Fence {
        n: u32,
        #[arg(long, value_enum, default_value_t = Orientation::Up)]
        orientation: Orientation,
        /// Also count by scanning every subset.
        #[arg(long)]
        brute: bool,
    },
    /// Hasse diagram of the truncation (DOT, or JSON/CSV edge lists).
    Hasse {
        #[arg(long)]
        levels: u32,
    },
    /// Run every identity check and print a PASS/FAIL table.
    Crosscheck {
        #[arg(long, default_value_t = crosscheck::DEFAULT_MAX_N)]
        max_n: u32,
        /// Defaults to min(7, max-n), or COBWEB_ORACLE_MAX when set.
        #[arg(long)]
        oracle_max_n: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Corrupt the first comparison of the named check.
        #[arg(long, hide = true, value_name = "CHECK")]
        inject_fault: Option<String>,
    },
}

/// A command rejected its input. I/O errors are reported by [`emit`].
#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl From<cobweb_core::Error> for Failure {
    fn from(e: cobweb_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A command's rendered output and its exit code.
struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self {
            body,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let (code, message) = match execute(&cli) {
        Ok(output) => match emit(&cli, &output.body, stdout) {
            Ok(()) => (output.code, None),
            Err(e) => (EXIT_FAILURE, Some(e)),
        },
        Err(Failure::Usage(m)) => (EXIT_USAGE, Some(m)),
    };
    if let Some(m) = message {
        let _ = writeln!(stderr, "error: {m}");
    }
    code
}

fn emit(cli: &Cli, body: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Fib { n } => Ok(Output::ok(cmd_fib(*n, f))),
        Command::Fibonomial { n, k, method } => cmd_fibonomial(*n, *k, *method, f),
        Command::Zeta { levels, source } => cmd_zeta(*levels, *source, f).map(Output::ok),
        Command::Mobius { levels } => cmd_mobius(*levels, f).map(Output::ok),
        Command::Chains { k, n, brute } => cmd_chains(*k, *n, *brute, f),
        Command::Copies {
            level,
            pos,
            height,
            greedy,
        } => cmd_copies(*level, *pos, *height, *greedy, f).map(Output::ok),
        Command::Konvalina {
            weights,
            k,
            kind,
            brute,
        } => cmd_konvalina(weights, *k, *kind, *brute, f),
        Command::Gv { big_n, k, verbose } => cmd_gv(*big_n, *k, *verbose, f).map(Output::ok),
        Command::Fence {
            n,
            orientation,
            brute,
        } => cmd_fence(*n, *orientation, *brute, f),
        Command::Hasse { levels } => cmd_hasse(*levels, f).map(Output::ok),
        Command::Crosscheck {
            max_n,
            oracle_max_n,
            jobs,
            inject_fault,
        } => cmd_crosscheck(*max_n, *oracle_max_n, *jobs, inject_fault.clone(), f),
    }
}

/// Renders `(key, value)` rows as `key value` lines, a two-column CSV, or a
/// flat JSON object with a schema field. Values are already decimal strings.
fn render_pairs(format: Format, rows: &[(&str, String)]) -> String {
    match format {
        Format::Text => rows.iter().map(|(k, v)| format!("{k} {v}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("key,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},{v}");
            }
            out
        }
        Format::Json => {
            let mut map = serde_json::Map::new();
            map.insert("schema".into(), json!(1));
            for (k, v) in rows {
                map.insert((*k).into(), json!(v));
            }
            format!("{}\n", Value::Object(map))
        }
    }
}

fn oracle_bound() -> Result<Option<u32>, Failure> {
    match std::env::var(ORACLE_ENV) {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .map(Some)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "{ORACLE_ENV} must be a positive integer, got `{s}`"
                ))
            }),
        Err(_) => Ok(None),
    }
}

fn cmd_fib(n: i64, format: Format) -> String {
    let v = fib_signed(n);
    match format {
        Format::Text => format!("{v}\n"),
        _ => render_pairs(format, &[("n", n.to_string()), ("value", v.to_string())]),
    }
}

fn method_value(method: Method, n: u32, k: u32) -> Result<BigInt, Failure> {
    Ok(match method {
        Method::Def => fibonomial_def(n, k)?,
        Method::RecA => fibonomial_rec(n, k, RecurrenceForm::A),
        Method::RecB => fibonomial_rec(n, k, RecurrenceForm::B),
        Method::Chains => fibonomial_via_chains(n, k)?,
        Method::Gv => fibonomial_via_gv(n, k)?,
        Method::All => unreachable!("expanded by the caller"),
    })
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Def => "def",
        Method::RecA => "recA",
        Method::RecB => "recB",
        Method::Chains => "chains",
        Method::Gv => "gv",
        Method::All => "all",
    }
}

fn cmd_fibonomial(n: u32, k: u32, method: Method, format: Format) -> Result<Output, Failure> {
    if k > n {
        return Err(Failure::Usage(format!("k ({k}) must not exceed n ({n})")));
    }
    let methods: &[Method] = if method == Method::All {
        &[
            Method::Def,
            Method::RecA,
            Method::RecB,
            Method::Chains,
            Method::Gv,
        ]
    } else {
        std::slice::from_ref(&method)
    };
    let values = methods
        .iter()
        .map(|&m| Ok((m, method_value(m, n, k)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let body = match format {
        Format::Text => values.iter().map(|(_, v)| format!("{v}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("method,n,k,value\n");
            for (m, v) in &values {
                let _ = writeln!(out, "{},{n},{k},{v}", method_name(*m));
            }
            out
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = values
                .iter()
                .map(|(m, v)| (method_name(*m).to_string(), json!(v.to_string())))
                .collect();
            format!(
                "{}\n",
                json!({"schema": 1, "n": n, "k": k, "values": map, "agree": agree})
            )
        }
    };
    Ok(Output {
        body,
        code: if agree { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn check_levels(levels: u32, max: u32) -> Result<(), Failure> {
    if levels > max {
        Err(Failure::Usage(format!(
            "--levels {levels} exceeds the limit {max}"
        )))
    } else {
        Ok(())
    }
}

fn render_matrix(m: &TriangularMatrix, format: Format) -> String {
    match format {
        Format::Text => m.to_dense(),
        Format::Csv => m.to_csv(),
        Format::Json => format!("{}\n", m.to_json()),
    }
}

fn cmd_zeta(levels: u32, source: ZetaSource, format: Format) -> Result<String, Failure> {
    check_levels(levels, MATRIX_MAX_LEVELS)?;
    let z = match source {
        ZetaSource::Order => zeta_from_order(levels),
        ZetaSource::Explicit => zeta_explicit(truncation_size(levels)),
    };
    Ok(render_matrix(&z, format))
}

fn cmd_mobius(levels: u32, format: Format) -> Result<String, Failure> {
    check_levels(levels, MATRIX_MAX_LEVELS)?;
    Ok(render_matrix(&mobius(&zeta_from_order(levels))?, format))
}

fn cmd_chains(k: u32, n: u32, brute: bool, format: Format) -> Result<Output, Failure> {
    let report = ChainCountReport::new(k, n)?;
    let mut rows = vec![
        ("k", k.to_string()),
        ("n", n.to_string()),
        ("per_source", report.per_source.to_string()),
        ("total", report.total.to_string()),
        ("fibonomial", report.fibonomial.to_string()),
        ("copies_total", report.copies_total().to_string()),
    ];
    if k == 1 {
        rows.push(("k1_degenerate", "true".into()));
    }
    let mut code = EXIT_OK;
    if brute {
        let bound = oracle_bound()?.unwrap_or(DEFAULT_ORACLE_MAX);
        let counted = brute_force_max_chains_with(Exec::default(), k, n, Source::All, bound)?;
        if counted != report.total {
            code = EXIT_FAILURE;
        }
        rows.push(("brute_total", counted.to_string()));
    }
    Ok(Output {
        body: render_pairs(format, &rows),
        code,
    })
}

fn cmd_copies(
    level: u32,
    pos: u64,
    height: u32,
    greedy: bool,
    format: Format,
) -> Result<String, Failure> {
    let root = Vertex::new(pos, level)?;
    let mut rows = vec![
        ("root", root.to_string()),
        ("height", height.to_string()),
        ("copies", count_copies_rooted(root, height).to_string()),
        (
            "fibonomial",
            fibonomial_def(level + height, level)?.to_string(),
        ),
    ];
    if greedy {
        let family = greedy_disjoint_copies(root, height)?;
        rows.push(("greedy_disjoint", family.len().to_string()));
    }
    Ok(render_pairs(format, &rows))
}

fn cmd_konvalina(
    w: &WeightVector,
    k: usize,
    kind: KindArg,
    brute: bool,
    format: Format,
) -> Result<Output, Failure> {
    let mut rows = vec![("k", k.to_string())];
    let mut code = EXIT_OK;
    let mut add = |name: &'static str,
                   brute_name: &'static str,
                   dp: BigInt,
                   kind: Kind|
     -> Result<(), Failure> {
        if brute {
            let b = brute_sum(w, k, kind)?;
            if b != dp {
                code = EXIT_FAILURE;
            }
            rows.push((name, dp.to_string()));
            rows.push((brute_name, b.to_string()));
        } else {
            rows.push((name, dp.to_string()));
        }
        Ok(())
    };
    // C_k vanishes for k > n; `both` leaves it out rather than erroring
    let first = match kind {
        KindArg::First => true,
        KindArg::Both => k <= w.len(),
        KindArg::Second => false,
    };
    if first {
        add("first", "first_brute", c_first_kind(w, k)?, Kind::First)?;
    }
    if matches!(kind, KindArg::Second | KindArg::Both) {
        add("second", "second_brute", s_second_kind(w, k), Kind::Second)?;
    }
    Ok(Output {
        body: render_pairs(format, &rows),
        code,
    })
}

fn cmd_gv(big_n: u32, k: u32, verbose: bool, format: Format) -> Result<String, Failure> {
    let value = fibonomial_via_gv(big_n, k)?;
    if !verbose {
        return Ok(match format {
            Format::Text => format!("{value}\n"),
            _ => render_pairs(
                format,
                &[
                    ("N", big_n.to_string()),
                    ("k", k.to_string()),
                    ("value", value.to_string()),
                ],
            ),
        });
    }
    let terms = gv_terms(big_n, k)?;
    let subset = |r: &[u64]| r.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for (r, d) in &terms {
                let _ = writeln!(out, "R=[{}] N={d}", subset(r.as_slice()));
            }
            let _ = writeln!(out, "total {value}");
            out
        }
        Format::Csv => {
            let mut out = String::from("subset,determinant\n");
            for (r, d) in &terms {
                let _ = writeln!(out, "\"{}\",{d}", subset(r.as_slice()));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = terms
                .iter()
                .map(|(r, d)| json!({"subset": r.as_slice(), "determinant": d.to_string()}))
                .collect();
            format!(
                "{}\n",
                json!({"schema": 1, "N": big_n, "k": k, "value": value.to_string(), "terms": rows})
            )
        }
    })
}

fn cmd_fence(
    n: u32,
    orientation: Orientation,
    brute: bool,
    format: Format,
) -> Result<Output, Failure> {
    let zigzag = match orientation {
        Orientation::Up => Zigzag::UpFirst,
        Orientation::Down => Zigzag::DownFirst,
    };
    let fence = FencePoset::with_orientation(n, zigzag);
    let ideals = fence.ideals_transfer();
    let mut rows = vec![("n", n.to_string()), ("ideals", ideals.to_string())];
    let mut code = EXIT_OK;
    if brute {
        let counted = fence.ideals_brute(Exec::default())?;
        if BigInt::from(counted) != ideals {
            code = EXIT_FAILURE;
        }
        rows.push(("ideals_brute", counted.to_string()));
    }
    let body = match format {
        Format::Text if !brute => format!("{ideals}\n"),
        _ => render_pairs(format, &rows),
    };
    Ok(Output { body, code })
}

fn cmd_hasse(levels: u32, format: Format) -> Result<String, Failure> {
    check_levels(levels, HASSE_MAX_LEVELS)?;
    let t = truncate(levels);
    Ok(match format {
        Format::Text => t.to_dot(),
        Format::Json => format!("{}\n", t.to_json()),
        Format::Csv => {
            let mut out = String::from("from,to\n");
            for (a, b) in t.edges() {
                let _ = writeln!(out, "{a},{b}");
            }
            out
        }
    })
}

fn cmd_crosscheck(
    max_n: u32,
    oracle_max_n: Option<u32>,
    jobs: usize,
    fault: Option<String>,
    format: Format,
) -> Result<Output, Failure> {
    let oracle_max_n = match oracle_max_n {
        Some(v) => v,
        None => oracle_bound()?
            .unwrap_or(crosscheck::DEFAULT_ORACLE_MAX_N)
            .min(max_n),
    };
    let cfg = CrosscheckConfig {
        max_n,
        oracle_max_n,
        jobs,
        fault,
    };
    cfg.validate().map_err(Failure::Usage)?;
    let report = crosscheck::run(&cfg);
    let body = match format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
        Format::Json => format!("{}\n", report.to_json()),
    };
    Ok(Output {
        body,
        code: report.exit_code(),
    })
}
