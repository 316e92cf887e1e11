//! The `grover-exact` command line.
//!
//! Every command prints one JSON document on stdout and notes on stderr.
//! Exit codes: 0 success or valid, 1 a negative answer (invalid scheme,
//! infeasible request, indistinguishable dimension), 2 usage error or
//! resource cap, 3 malformed input file.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::discrimination::{block_graph, discrimination_graph};
use crate::error::Error;
use crate::identifier::Identifier;
use crate::json::{
    graph_to_json, parse_block_spec, render, report_to_json, scheme_from_json, scheme_to_json,
    state_from_json, BlockDoc,
};
use crate::optimizer::DEFAULT_MAX_COVER_N;
use crate::optimizer::{entangled_feasible_with, min_entangled_t_with, min_product_cover_with};
use crate::oracle::{GroverOracle, DEFAULT_MAX_COMPOSITIONS};
use crate::schemes::{
    builtin, construct_product_scheme, construction_size, general_lower_bound, verify,
    verify_product_with, Scheme, VerifyOptions, BUILTIN_NAMES, DEFAULT_MAX_TUPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "grover-exact",
    version,
    about = "Exact parallel discrimination of Grover oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Product,
    Entangled,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower bound and construction size for n
    Bounds {
        #[arg(long)]
        n: u64,
    },
    /// Emit a scheme as JSON
    Build {
        #[arg(long, required_unless_present = "builtin")]
        n: Option<usize>,
        /// Emit an entangled weight profile found by the LP
        #[arg(long, conflicts_with = "builtin")]
        entangled: bool,
        /// Copies for --entangled (default: the general lower bound)
        #[arg(long, requires = "entangled")]
        t: Option<usize>,
        /// One of n4-single, n5-product, n6-entangled
        #[arg(long)]
        builtin: Option<String>,
        /// Diagonal index for n6-entangled
        #[arg(long, requires = "builtin")]
        diag: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_COMPOSITIONS)]
        max_compositions: usize,
    },
    /// Check a scheme file or builtin name
    Verify {
        #[arg(long)]
        scheme: String,
        /// Also expand product schemes and check every output overlap
        #[arg(long)]
        full_tensor: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_TUPLES)]
        max_tuples: u128,
    },
    /// Exact minimum number of copies at small n
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Largest t tried in entangled mode (default: the construction size)
        #[arg(long)]
        t_max: Option<usize>,
        /// Largest n accepted in product mode (hard limit 16)
        #[arg(long, default_value_t = DEFAULT_MAX_COVER_N)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COMPOSITIONS)]
        max_compositions: usize,
    },
    /// Identify a hidden oracle index with a scheme
    Identify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hidden: usize,
        /// Scheme file or builtin name (default: the grouping construction)
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_TUPLES)]
        max_tuples: u128,
    },
    /// Discrimination graph of a canonical block or a one-copy state
    Graph {
        /// e.g. "pair 1 2", "quad 1 2 3 4", "star 1"
        #[arg(
            long,
            requires = "n",
            conflicts_with = "state",
            required_unless_present = "state"
        )]
        block: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// State file with one amplitude per index
        #[arg(long)]
        state: Option<String>,
    },
}

struct Failure {
    code: i32,
    message: String,
    payload: Option<Value>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            payload: None,
        }
    }

    fn with_payload(mut self, payload: Value) -> Self {
        self.payload = Some(payload);
        self
    }
}

/// Exit code for a library error raised outside of file loading.
fn code_for(e: &Error) -> i32 {
    match e {
        Error::Indistinguishable(_) | Error::AmbiguousClassification { .. } => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(code_for(&e), e.to_string())
    }
}

fn malformed(path: &str, e: Error) -> Failure {
    Failure::new(EXIT_MALFORMED, format!("{path}: {e}"))
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{path}: {e}")))
}

/// A path to a scheme file, or a builtin name when no such file exists.
fn load_scheme(source: &str) -> Result<Scheme, Failure> {
    if !Path::new(source).exists() && BUILTIN_NAMES.contains(&source) {
        return builtin(source, None).map_err(Failure::from);
    }
    let text = read_file(source)?;
    scheme_from_json(&text).map_err(|e| malformed(source, e))
}

fn indistinguishable(n: usize) -> Failure {
    Failure::new(EXIT_NEGATIVE, Error::Indistinguishable(n).to_string())
        .with_payload(json!({ "n": n, "indistinguishable": true }))
}

fn cmd_bounds(n: u64) -> Result<(i32, Value), Failure> {
    if n == 0 {
        return Err(Failure::new(EXIT_USAGE, "--n must be at least 1"));
    }
    if n == 2 {
        return Ok((EXIT_OK, json!({ "n": 2, "indistinguishable": true })));
    }
    let size = construction_size(n as usize)?;
    Ok((
        EXIT_OK,
        json!({
            "n": n,
            "general_lower": general_lower_bound(n),
            "construction_size": size,
        }),
    ))
}

fn cmd_build(
    n: Option<usize>,
    entangled: bool,
    t: Option<usize>,
    builtin_name: Option<String>,
    diag: Option<usize>,
    max_compositions: usize,
) -> Result<(i32, Value), Failure> {
    if let Some(name) = builtin_name {
        let s = builtin(&name, diag)?;
        if let Some(n) = n.filter(|&n| n != s.n()) {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("builtin {name} has n = {}, not {n}", s.n()),
            ));
        }
        return Ok((EXIT_OK, scheme_to_json(&s)?));
    }
    let n = n.expect("clap requires --n without --builtin");
    if n == 0 {
        return Err(Failure::new(EXIT_USAGE, "--n must be at least 1"));
    }
    if n == 2 {
        return Err(indistinguishable(2));
    }
    if !entangled {
        let s: Scheme = construct_product_scheme(n)?.into();
        return Ok((EXIT_OK, scheme_to_json(&s)?));
    }
    let t = t.unwrap_or_else(|| (general_lower_bound(n as u64) as usize).max(1));
    if t == 0 {
        return Err(Failure::new(EXIT_USAGE, "--t must be at least 1"));
    }
    let result = entangled_feasible_with(n, t, max_compositions)?;
    match result.witness {
        Some(w) => Ok((EXIT_OK, scheme_to_json(&w.into())?)),
        None => Err(Failure::new(
            EXIT_NEGATIVE,
            format!("no {t}-copy scheme separates all {n} oracles"),
        )
        .with_payload(json!({ "n": n, "t": t, "feasible": false }))),
    }
}

fn cmd_verify(source: &str, full_tensor: bool, max_tuples: u128) -> Result<(i32, Value), Failure> {
    let s = load_scheme(source)?;
    let report = match (&s, full_tensor) {
        (Scheme::Product(p), true) => verify_product_with(
            p,
            &VerifyOptions {
                full_tensor,
                max_tuples,
            },
        )?,
        _ => verify(&s),
    };
    let code = if report.valid { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, report_to_json(&report)))
}

fn cmd_search(
    n: usize,
    mode: Mode,
    t_max: Option<usize>,
    max_n: usize,
    max_compositions: usize,
) -> Result<(i32, Value), Failure> {
    if n == 0 {
        return Err(Failure::new(EXIT_USAGE, "--n must be at least 1"));
    }
    if n == 2 {
        return Err(indistinguishable(2));
    }
    match mode {
        Mode::Product => {
            let sol = min_product_cover_with(n, max_n)?;
            Ok((
                EXIT_OK,
                json!({
                    "n": n,
                    "mode": "product",
                    "min_t": sol.t,
                    "witness": sol.blocks.iter().map(BlockDoc::from).collect::<Vec<_>>(),
                    "nodes_explored": sol.nodes_explored,
                }),
            ))
        }
        Mode::Entangled if n == 1 => Ok((
            EXIT_OK,
            json!({ "n": 1, "mode": "entangled", "min_t": 0, "witness": null, "lp_stats": null }),
        )),
        Mode::Entangled => {
            let t_max = match t_max {
                Some(t) => t,
                None => construction_size(n)?.max(1),
            };
            match min_entangled_t_with(n, t_max, max_compositions)? {
                Some((t, result)) => {
                    let witness = result.witness.expect("feasible results carry a witness");
                    Ok((
                        EXIT_OK,
                        json!({
                            "n": n,
                            "mode": "entangled",
                            "min_t": t,
                            "witness": scheme_to_json(&witness.into())?,
                            "lp_stats": {
                                "variables": result.stats.variables,
                                "constraints": result.stats.constraints,
                                "pivots": result.stats.pivots,
                            },
                        }),
                    ))
                }
                None => Err(Failure::new(
                    EXIT_NEGATIVE,
                    format!("no scheme with t <= {t_max} copies"),
                )
                .with_payload(
                    json!({ "n": n, "mode": "entangled", "min_t": null, "t_max": t_max }),
                )),
            }
        }
    }
}

fn cmd_identify(
    n: usize,
    hidden: usize,
    source: Option<String>,
    max_tuples: u128,
) -> Result<(i32, Value), Failure> {
    let oracle = GroverOracle::new(n, hidden)?;
    let scheme = match &source {
        Some(src) => load_scheme(src)?,
        None => {
            if n == 2 {
                return Err(indistinguishable(2));
            }
            construct_product_scheme(n)?.into()
        }
    };
    if scheme.n() != n {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("scheme has n = {}, but --n is {n}", scheme.n()),
        ));
    }
    let report = verify(&scheme);
    if !report.valid {
        return Err(
            Failure::new(EXIT_NEGATIVE, "scheme does not separate every pair")
                .with_payload(report_to_json(&report)),
        );
    }
    let run = Identifier::with_cap(&scheme, max_tuples)?.run(&oracle)?;
    Ok((
        EXIT_OK,
        json!({
            "n": n,
            "identified": run.identified,
            "queries": run.hidden_queries_used,
        }),
    ))
}

fn cmd_graph(
    block: Option<String>,
    n: Option<usize>,
    state: Option<String>,
) -> Result<(i32, Value), Failure> {
    let g = match (block, state) {
        (Some(spec), _) => {
            let n = n.expect("clap requires --n with --block");
            block_graph(&parse_block_spec(&spec, n)?)
        }
        (None, Some(path)) => {
            let text = read_file(&path)?;
            let s = state_from_json(&text).map_err(|e| malformed(&path, e))?;
            if let Some(n) = n.filter(|&n| n != s.n()) {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("state has n = {}, but --n is {n}", s.n()),
                ));
            }
            discrimination_graph(&s)
        }
        (None, None) => unreachable!("clap requires --block or --state"),
    };
    Ok((EXIT_OK, graph_to_json(&g)))
}

fn dispatch(command: Command) -> Result<(i32, Value), Failure> {
    match command {
        Command::Bounds { n } => cmd_bounds(n),
        Command::Build {
            n,
            entangled,
            t,
            builtin,
            diag,
            max_compositions,
        } => cmd_build(n, entangled, t, builtin, diag, max_compositions),
        Command::Verify {
            scheme,
            full_tensor,
            max_tuples,
        } => cmd_verify(&scheme, full_tensor, max_tuples),
        Command::Search {
            n,
            mode,
            t_max,
            max_n,
            max_compositions,
        } => cmd_search(n, mode, t_max, max_n, max_compositions),
        Command::Identify {
            n,
            hidden,
            scheme,
            max_tuples,
        } => cmd_identify(n, hidden, scheme, max_tuples),
        Command::Graph { block, n, state } => cmd_graph(block, n, state),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return CommandResult {
                exit_code: code,
                stdout,
                stderr,
            };
        }
    };
    match dispatch(cli.command) {
        Ok((exit_code, payload)) => CommandResult {
            exit_code,
            stdout: render(&payload),
            stderr: String::new(),
        },
        Err(f) => CommandResult {
            exit_code: f.code,
            stdout: f.payload.as_ref().map(render).unwrap_or_default(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
