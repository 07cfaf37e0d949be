//! Command-line surface: distance queries, sphere tables, constraint
//! matrices, minimum-length bounds, optimal redundancy, encoder
//! construction, verification, channel simulation, and the redundancy
//! comparison table.

use std::fs;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::channel::monte_carlo;
use crate::error::{Error, Result};
use crate::fcc::{
    classical_redundancy_floor, encoder_locally_binary, encoder_weight,
    encoder_weight_distribution, redundancy_bounds_report, verify_fcc, Encoder,
};
use crate::functions::{
    build_b1_function_values, build_b1_vectors, build_b2_function_values, build_b2_vectors,
    wtb_b1_closed, wtb_b2_closed, DistanceMatrix, FunctionKind, FunctionSpec,
};
use crate::irregular::{
    default_orderings, exact_min_length, greedy_construct, gv_upper, plotkin_lower, IrregularCode,
};
use crate::limits::Limits;
use crate::metric::{b_distance, partition_stats, Word};
use crate::spheres::{sphere_size_enum, sphere_size_formula_b3};

#[derive(Parser)]
#[command(name = "fccb", about = "Function-correcting codes over the b-symbol read channel", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Abort long searches after this many seconds, reporting unknown
    #[arg(long, global = true)]
    time_limit: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuncName {
    Or,
    Wb,
    Wdist,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SphereMethod {
    Formula,
    Enum,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixVariant {
    B1,
    B2,
}

#[derive(Args)]
struct FuncArgs {
    /// Target function
    #[arg(long, value_enum)]
    func: FuncName,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: usize,
    /// Window width of the weight function (defaults to --b)
    #[arg(long)]
    fb: Option<usize>,
    /// Period of the weight-distribution step function
    #[arg(long = "T")]
    t_cap: Option<u64>,
    /// CSV file `word,value` for --func table
    #[arg(long)]
    table_file: Option<String>,
}

impl FuncArgs {
    fn build(&self, b: usize) -> Result<FunctionSpec> {
        match self.func {
            FuncName::Or => FunctionSpec::new(self.q, self.k, FunctionKind::Or),
            FuncName::Wb => FunctionSpec::new(
                self.q,
                self.k,
                FunctionKind::BWeight { b: self.fb.unwrap_or(b) },
            ),
            FuncName::Wdist => {
                let t_param = self
                    .t_cap
                    .ok_or_else(|| Error::BadParams("--T is required for --func wdist".into()))?;
                FunctionSpec::new(
                    self.q,
                    self.k,
                    FunctionKind::WeightDistribution { b: self.fb.unwrap_or(b), t_param },
                )
            }
            FuncName::Table => {
                let path = self
                    .table_file
                    .as_ref()
                    .ok_or_else(|| Error::BadParams("--table-file is required for --func table".into()))?;
                FunctionSpec::from_table_csv_str(self.q, self.k, &fs::read_to_string(path)?)
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Distance statistics between two words
    Dist {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Sphere sizes in the b-symbol metric
    Sphere {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = SphereMethod::Both)]
        method: SphereMethod,
    },
    /// Pairwise distance-requirement matrices for a function
    Matrix {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum)]
        variant: MatrixVariant,
        /// Collapse rows to one per function value
        #[arg(long)]
        values: bool,
        /// Use the weight-function closed form instead of enumeration
        #[arg(long)]
        closed: bool,
        /// Write the matrix CSV here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Minimum-length bounds for an irregular distance matrix
    Nb {
        /// Matrix CSV file
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: usize,
        /// Search exhaustively for the exact minimum up to this length
        #[arg(long)]
        r_max: Option<usize>,
        /// Write a greedy code at this length to the given file
        #[arg(long)]
        construct_at: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Optimal redundancy report for a function
    Optimal {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        /// Run the exhaustive search up to this redundancy length
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// Build an explicit encoder and write its table
    Construct {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        /// Nonzero repetition symbol for repetition-based encoders
        #[arg(long, default_value_t = 1)]
        a: u32,
        /// Force the base-code length of the weight-class encoder
        #[arg(long)]
        r_p: Option<usize>,
        /// Encoder table CSV destination
        #[arg(long)]
        out: String,
    },
    /// Check an encoder table against the distance requirement
    Verify {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        /// Encoder table CSV file
        #[arg(long)]
        encoder: String,
    },
    /// Monte Carlo decoding-failure estimate over the read channel
    Simulate {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        encoder: String,
        #[arg(long)]
        trials: u64,
        /// RNG seed (required; all randomness is explicit)
        #[arg(long)]
        seed: u64,
    },
    /// Redundancy comparison table against classical codes (b = 3)
    Table {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
}

pub struct CommandResult {
    pub body: String,
    pub exit: i32,
}

fn limits_from(time_limit: Option<u64>) -> Limits {
    let mut limits = Limits::default();
    if let Some(secs) = time_limit {
        limits.deadline = Some(Instant::now() + Duration::from_secs(secs));
    }
    limits
}

fn csv_escape(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "unknown".into(),
        other => other.to_string(),
    }
}

/// Flatten a JSON object (or array of objects) into CSV rows.
fn to_csv(value: &Value) -> String {
    let rows: Vec<&serde_json::Map<String, Value>> = match value {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(map) => vec![map],
        _ => return value.to_string(),
    };
    let Some(first) = rows.first() else {
        return String::new();
    };
    let headers: Vec<&String> = first.keys().collect();
    let mut out = headers.iter().map(|h| h.as_str()).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in &rows {
        let line: Vec<String> = headers
            .iter()
            .map(|h| row.get(*h).map_or_else(|| "unknown".into(), csv_escape))
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Csv => to_csv(value),
    }
}

fn load_matrix(path: &str) -> Result<DistanceMatrix> {
    DistanceMatrix::from_csv(&fs::read_to_string(path)?)
}

fn cmd_dist(q: u32, b: usize, x: &str, y: &str) -> Result<Value> {
    let x = Word::parse(x, q)?;
    let y = Word::parse(y, q)?;
    let d_b = b_distance(&x, &y, b)?;
    let mut out = json!({ "d_b": d_b });
    let map = out.as_object_mut().unwrap();
    match partition_stats(&x, &y, b) {
        Ok(stats) => {
            map.insert("d_h".into(), json!(stats.d_h));
            map.insert("L".into(), json!(stats.big_runs));
            map.insert("e".into(), json!(stats.small_total));
        }
        Err(Error::OutOfRegime { dh, .. }) => {
            map.insert("d_h".into(), json!(dh));
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn cmd_sphere(
    q: u32,
    b: usize,
    k: usize,
    radius: usize,
    method: SphereMethod,
    limits: &Limits,
) -> Result<Value> {
    let mut out = json!({ "q": q, "b": b, "k": k, "radius": radius });
    let map = out.as_object_mut().unwrap();
    if matches!(method, SphereMethod::Formula | SphereMethod::Both) {
        if b != 3 {
            return Err(Error::FormulaUnavailable);
        }
        map.insert(
            "formula".into(),
            json!(sphere_size_formula_b3(k, radius, q)?.to_string()),
        );
    }
    if matches!(method, SphereMethod::Enum | SphereMethod::Both) {
        map.insert("enum".into(), json!(sphere_size_enum(k, radius, q, b, limits)?.to_string()));
    }
    if method == SphereMethod::Both {
        map.insert("equal".into(), json!(map["formula"] == map["enum"]));
    }
    Ok(out)
}

fn cmd_matrix(
    func: &FuncArgs,
    b: usize,
    t: usize,
    variant: MatrixVariant,
    values: bool,
    closed: bool,
    out: Option<&str>,
    limits: &Limits,
) -> Result<Value> {
    let matrix = if closed {
        match variant {
            MatrixVariant::B1 => wtb_b1_closed(func.k, t, b)?,
            MatrixVariant::B2 => wtb_b2_closed(func.k, t, b)?,
        }
    } else {
        let f = func.build(b)?;
        if values {
            match variant {
                MatrixVariant::B1 => build_b1_function_values(&f, t, b, limits)?,
                MatrixVariant::B2 => build_b2_function_values(&f, t, b, limits)?,
            }
        } else {
            let words = all_domain_words(&f, limits)?;
            match variant {
                MatrixVariant::B1 => build_b1_vectors(&f, t, b, &words)?,
                MatrixVariant::B2 => build_b2_vectors(&f, t, b, &words)?,
            }
        }
    };
    let csv = matrix.to_csv();
    if let Some(path) = out {
        fs::write(path, &csv)?;
        return Ok(json!({ "written": path, "order": matrix.order() }));
    }
    Ok(json!({ "order": matrix.order(), "csv": csv }))
}

fn all_domain_words(f: &FunctionSpec, limits: &Limits) -> Result<Vec<Word>> {
    let total = crate::limits::checked_pow(f.q(), f.k())
        .filter(|&n| n <= limits.max_codebook)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the codebook guard".into()))?;
    (0..total)
        .map(|idx| Word::from_index(f.alphabet(), f.k(), idx))
        .collect()
}

fn cmd_nb(
    matrix_path: &str,
    q: u32,
    b: usize,
    r_max: Option<usize>,
    construct_at: Option<usize>,
    out: Option<&str>,
    limits: &Limits,
) -> Result<Value> {
    let matrix = load_matrix(matrix_path)?;
    let orderings = default_orderings(&matrix);
    let upper = gv_upper(&matrix, q, b, &orderings, limits)?;
    let lower = if matrix.order() >= 2 {
        Some(plotkin_lower(&matrix, q, b)?)
    } else {
        None
    };
    let exact = match r_max {
        Some(r_max) => exact_min_length(&matrix, q, b, r_max, limits)?,
        None => None,
    };
    let mut result = json!({
        "order": matrix.order(),
        "counting_upper": upper,
        "averaging_lower": lower.as_ref().map(|v| v.to_string()),
        "exact": exact,
    });
    if let Some(r) = construct_at {
        let path = out.ok_or_else(|| Error::BadParams("--construct-at requires --out".into()))?;
        let mut written = false;
        for ordering in &orderings {
            if let Ok(code) = greedy_construct(&matrix, q, b, r, ordering, limits) {
                fs::write(path, code.to_lines())?;
                written = true;
                break;
            }
        }
        if !written {
            return Err(Error::Infeasible);
        }
        result.as_object_mut().unwrap().insert("written".into(), json!(path));
    }
    Ok(result)
}

fn cmd_optimal(func: &FuncArgs, b: usize, t: usize, r_max: Option<usize>, limits: &Limits) -> Result<Value> {
    let f = func.build(b)?;
    let report = redundancy_bounds_report(&f, t, b, r_max, limits)?;
    let mut out = report.to_json();
    if r_max.is_some() && report.exact.is_none() {
        // search exhausted or timed out without a certificate
        out.as_object_mut().unwrap().insert("exact".into(), json!("unknown"));
    }
    Ok(out)
}

fn cmd_construct(
    func: &FuncArgs,
    b: usize,
    t: usize,
    a: u32,
    r_p: Option<usize>,
    out: &str,
    limits: &Limits,
) -> Result<Value> {
    let f = func.build(b)?;
    let enc = match func.func {
        FuncName::Wdist => {
            let FunctionKind::WeightDistribution { t_param, .. } = f.kind() else {
                unreachable!()
            };
            encoder_weight_distribution(func.k, t, b, func.q, *t_param, a, limits)?
        }
        FuncName::Wb => encoder_weight(func.k, t, b, func.q, r_p, limits)?,
        FuncName::Or | FuncName::Table => encoder_locally_binary(&f, t, b, a, limits)?,
    };
    fs::write(out, enc.to_csv()?)?;
    Ok(json!({ "written": out, "r": enc.r(), "k": enc.k(), "q": enc.q() }))
}

fn cmd_verify(func: &FuncArgs, b: usize, t: usize, encoder_path: &str, limits: &Limits) -> Result<Value> {
    let f = func.build(b)?;
    let enc = Encoder::from_csv(&fs::read_to_string(encoder_path)?, func.q, b, t)?;
    let valid = verify_fcc(&enc, &f, limits)?;
    Ok(json!({ "valid": valid, "r": enc.r(), "t": t, "b": b }))
}

fn cmd_simulate(
    func: &FuncArgs,
    b: usize,
    t: usize,
    encoder_path: &str,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<Value> {
    let f = func.build(b)?;
    let enc = Encoder::from_csv(&fs::read_to_string(encoder_path)?, func.q, b, t)?;
    Ok(monte_carlo(&enc, &f, t, trials, seed, limits)?.to_json())
}

/// Comparison rows at b = 3: redundancy of the function-correcting
/// construction for each function class next to the classical-code floor
/// floor(t/3) log_q(k + 2t - 2). Exact expressions alongside 4-decimal
/// floats; the floor applies only to t/3.
pub fn comparison_table(k: usize, t: usize, q: u32) -> Result<Value> {
    let b = 3usize;
    if q < 2 || t < 2 || k < b {
        return Err(Error::BadParams(format!("requires q >= 2, t >= 2, k >= {b}")));
    }
    let classical_expr = format!("floor({t}/3) * log_{q}({})", k + 2 * t - 2);
    let classical = classical_redundancy_floor(k, t, q);
    let s = (2 * t - b + 1) as f64;
    let denom = q as f64 * (1.0 - (s.ln() / s).sqrt()) - 1.0;
    let (wb_value, wb_expr) = if 2 * t >= 9 + b && denom > 0.0 {
        (
            json!(format!("{:.4}", q as f64 * (2 * t - b) as f64 / denom)),
            format!("{q}(2t-3) / ({q}(1 - sqrt(ln(2t-2)/(2t-2))) - 1)"),
        )
    } else {
        (Value::Null, "parameter regime too small for the asymptotic bound".into())
    };
    let rows = json!([
        {
            "function": "locally binary",
            "fcc_redundancy": 2 * t - 2,
            "fcc_expression": "2t - 2",
            "classical_floor": format!("{classical:.4}"),
            "classical_expression": classical_expr,
        },
        {
            "function": "b-symbol weight",
            "fcc_redundancy": wb_value,
            "fcc_expression": wb_expr,
            "classical_floor": format!("{classical:.4}"),
            "classical_expression": classical_expr,
        },
        {
            "function": "weight distribution",
            "fcc_redundancy": 2 * t,
            "fcc_expression": "2t",
            "classical_floor": format!("{classical:.4}"),
            "classical_expression": classical_expr,
        },
    ]);
    Ok(rows)
}

fn dispatch(cli: &Cli) -> Result<Value> {
    let limits = limits_from(cli.time_limit);
    match &cli.command {
        Command::Dist { q, b, x, y } => cmd_dist(*q, *b, x, y),
        Command::Sphere { q, b, k, radius, method } => {
            cmd_sphere(*q, *b, *k, *radius, *method, &limits)
        }
        Command::Matrix { func, b, t, variant, values, closed, out } => {
            cmd_matrix(func, *b, *t, *variant, *values, *closed, out.as_deref(), &limits)
        }
        Command::Nb { matrix, q, b, r_max, construct_at, out } => {
            cmd_nb(matrix, *q, *b, *r_max, *construct_at, out.as_deref(), &limits)
        }
        Command::Optimal { func, b, t, r_max } => cmd_optimal(func, *b, *t, *r_max, &limits),
        Command::Construct { func, b, t, a, r_p, out } => {
            cmd_construct(func, *b, *t, *a, *r_p, out, &limits)
        }
        Command::Verify { func, b, t, encoder } => cmd_verify(func, *b, *t, encoder, &limits),
        Command::Simulate { func, b, t, encoder, trials, seed } => {
            cmd_simulate(func, *b, *t, encoder, *trials, *seed, &limits)
        }
        Command::Table { q, k, t } => comparison_table(*k, *t, *q),
    }
}

/// Parse argv and run; the caller prints `body` and exits with `exit`.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return CommandResult {
                body: e.to_string(),
                exit: if e.use_stderr() { 2 } else { 0 },
            };
        }
    };
    match dispatch(&cli) {
        Ok(value) => CommandResult { body: render(&value, cli.format), exit: 0 },
        Err(e) => CommandResult {
            body: render(
                &json!({ "error": e.code(), "message": e.to_string() }),
                cli.format,
            ),
            exit: 1,
        },
    }
}

/// Round-trip helper for code files written by `nb --construct-at`.
pub fn read_code_file(path: &str, q: u32, b: usize) -> Result<IrregularCode> {
    IrregularCode::from_lines(&fs::read_to_string(path)?, q, b)
}
