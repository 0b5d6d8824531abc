use std::process::ExitCode;
use std::str::FromStr;
use std::thread;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rscount::algebra::{prime_power, FieldSpec};
use rscount::census::{
    census_count, enumeration_size, CensusError, CensusKind, CensusMethod, DEFAULT_ENUM_CAP,
};
use rscount::closedform::{rs, ClosedFormError, Family, GroupSpec, Parity};
use rscount::genfun::{
    closed_side, gf_count, group_series, product_side_with, verify_lemma_with, GenfunError, LemmaId,
    QValue, DEFAULT_VERIFY_CAP,
};
use rscount::census::CensusCache;
use rscount::oracle::{oracle_count, OracleError};
use rscount::series::TruncatedSeries;
use serde_json::{json, Map, Value};

const CAP_VAR: &str = "RSCOUNT_ENUM_CAP";

const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_BOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rscount",
    version,
    about = "Exact counts of regular semisimple conjugacy classes in finite classical groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count classes of one group by closed form, generating function or enumeration.
    Count(CountArgs),
    /// Closed-form counts for ranks 1..=n-max, optionally checked by enumeration.
    Table(TableArgs),
    /// Compare both sides of a generating-function identity coefficient by coefficient.
    Verify(VerifyArgs),
    /// Sizes of the irreducible-polynomial families.
    Census(CensusArgs),
    /// Print series coefficients, symbolic in q where possible.
    Series(SeriesArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Family: gl, sl, u, su, sp, so-odd, so+, so-
    #[arg(long, value_parser = parse_family)]
    group: Family,
    /// Rank
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    q: u64,
    #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
    method: CountMethod,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Formula,
    Genfun,
    Oracle,
    All,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    group: Family,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    q: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Add enumeration counts (left empty beyond the enumeration cap) and an agreement column.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, or "all" for every id admissible at this q
    #[arg(long)]
    lemma: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    q: u64,
    /// Number of coefficients past the constant term
    #[arg(long, default_value_t = 10)]
    terms: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("degree").required(true).args(["d", "d_max"])))]
struct CensusArgs {
    /// N, N_tilde, M_tilde, N_star or M_star
    #[arg(long, value_parser = parse_kind)]
    kind: CensusKind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    q: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: Option<u64>,
    /// Tabulate degrees 1..=d-max
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = CensusChoice::Auto)]
    method: CensusChoice,
    /// List the counted polynomials (enumeration only)
    #[arg(long)]
    witnesses: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusChoice {
    Auto,
    Enumerate,
    Formula,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["group", "lemma"])))]
#[command(group(ArgGroup::new("field").required(true).args(["q", "parity"])))]
struct SeriesArgs {
    /// Class-count series of a family, coefficient n = rank n
    #[arg(long, value_parser = parse_family)]
    group: Option<Family>,
    /// One side of an identity
    #[arg(long, value_parser = parse_lemma)]
    lemma: Option<LemmaId>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    q: Option<u64>,
    /// Keep q symbolic, with this characteristic parity
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,
    #[arg(long, default_value_t = 10)]
    terms: usize,
    #[arg(long, value_enum, default_value_t = Side::Closed)]
    side: Side,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Closed,
    Product,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_str(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<CensusKind, String> {
    CensusKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_lemma(s: &str) -> Result<LemmaId, String> {
    LemmaId::from_str(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn other(message: impl ToString) -> Failure {
        Failure { code: 1, message: message.to_string() }
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Failure {
        Failure::usage(e.to_string())
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Failure {
        let code = match e {
            CensusError::BoundExceeded { .. } => EXIT_BOUND,
            CensusError::Algebra(_) | CensusError::ZeroDegree | CensusError::Overflow { .. } => EXIT_USAGE,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::Census(c) => c.into(),
            OracleError::BoundExceeded { .. } => Failure { code: EXIT_BOUND, message: e.to_string() },
            OracleError::Algebra(_) | OracleError::ClosedForm(_) => Failure::usage(e.to_string()),
            _ => Failure::other(e),
        }
    }
}

impl From<GenfunError> for Failure {
    fn from(e: GenfunError) -> Failure {
        match e {
            GenfunError::Census(c) => c.into(),
            GenfunError::WrongCharacteristic { .. }
            | GenfunError::NotPrimePower(_)
            | GenfunError::NeedsIntegerQ(_)
            | GenfunError::ClosedForm(_) => Failure::usage(e.to_string()),
            _ => Failure::other(e),
        }
    }
}

/// Output of a successful run: text for stdout and the exit code.
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, code: 0 }
    }
}

fn enum_cap(default: u64) -> Result<u64, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CAP_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn require_prime_power(q: u64) -> Result<(), Failure> {
    match prime_power(q) {
        Some(_) => Ok(()),
        None => Err(Failure::usage(format!("q={q} is not a prime power"))),
    }
}

fn warn_if_not_prime_power(q: u64) {
    if prime_power(q).is_none() {
        eprintln!("warning: q={q} is not a prime power; the closed form is evaluated anyway");
    }
}

fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn u128_json(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn with_schema(v: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(1));
    if let Value::Object(rest) = v {
        m.extend(rest);
    }
    Value::Object(m)
}

fn cmd_count(a: &CountArgs) -> Result<Report, Failure> {
    let g = GroupSpec::new(a.group, a.n, a.q)?;
    if a.method == CountMethod::Formula {
        warn_if_not_prime_power(a.q);
    } else {
        require_prime_power(a.q)?;
    }
    let cap = enum_cap(DEFAULT_ENUM_CAP)?;
    let mut out = json!({
        "group": a.group.token(),
        "name": g.name(),
        "n": a.n,
        "q": a.q,
        "method": a.method.to_possible_value().expect("no skipped variants").get_name(),
    });
    let mut code = 0;
    match a.method {
        CountMethod::Formula => out["count"] = big_json(&rs(&g)?),
        CountMethod::Genfun => out["count"] = big_json(&gf_count(&g)?),
        CountMethod::Oracle => out["count"] = u128_json(oracle_count(&g, cap)?.count),
        CountMethod::All => {
            let formula = rs(&g)?;
            let genfun = gf_count(&g)?;
            let oracle = BigInt::from(oracle_count(&g, cap)?.count);
            let agree = formula == genfun && genfun == oracle;
            out["counts"] = json!({
                "formula": big_json(&formula),
                "genfun": big_json(&genfun),
                "oracle": big_json(&oracle),
            });
            out["agree"] = json!(agree);
            if !agree {
                code = EXIT_DISAGREE;
            }
        }
    }
    Ok(Report { text: pretty(&with_schema(out)), code })
}

struct Row {
    n: u32,
    count: BigInt,
    oracle: Option<BigInt>,
}

impl Row {
    fn agree(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| *o == self.count)
    }
}

fn cmd_table(a: &TableArgs) -> Result<Report, Failure> {
    if a.oracle {
        require_prime_power(a.q)?;
    } else {
        warn_if_not_prime_power(a.q);
    }
    let cap = enum_cap(DEFAULT_ENUM_CAP)?;
    let specs = (1..=a.n_max)
        .map(|n| GroupSpec::new(a.group, n, a.q))
        .collect::<Result<Vec<_>, _>>()?;
    let counts = specs.iter().map(rs).collect::<Result<Vec<_>, _>>()?;
    let oracles: Vec<Option<BigInt>> = if a.oracle {
        let results: Vec<Result<OracleOutcome, OracleError>> = thread::scope(|s| {
            let handles: Vec<_> = specs.iter().map(|g| s.spawn(move || oracle_cell(g, cap))).collect();
            handles.into_iter().map(|h| h.join().expect("oracle thread panicked")).collect()
        });
        results
            .into_iter()
            .map(|r| r.map(|o| o.map(BigInt::from)))
            .collect::<Result<_, _>>()?
    } else {
        vec![None; specs.len()]
    };
    let rows: Vec<Row> = (1..=a.n_max)
        .zip(counts)
        .zip(oracles)
        .map(|((n, count), oracle)| Row { n, count, oracle })
        .collect();
    let code = if rows.iter().any(|r| r.agree() == Some(false)) { EXIT_DISAGREE } else { 0 };
    let text = match a.format {
        Format::Csv => table_csv(&rows, a.oracle)?,
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v = json!({ "n": r.n, "count": big_json(&r.count) });
                    if a.oracle {
                        v["oracle"] = r.oracle.as_ref().map_or(Value::Null, big_json);
                        v["agree"] = r.agree().map_or(Value::Null, Value::Bool);
                    }
                    v
                })
                .collect();
            pretty(&json!({ "schema": 1, "group": a.group.token(), "q": a.q, "rows": rows }))
        }
    };
    Ok(Report { text, code })
}

type OracleOutcome = Option<u128>;

/// Enumeration count, or `None` when the enumeration would pass the cap.
fn oracle_cell(g: &GroupSpec, cap: u64) -> Result<OracleOutcome, OracleError> {
    match oracle_count(g, cap) {
        Ok(r) => Ok(Some(r.count)),
        Err(OracleError::BoundExceeded { .. }) | Err(OracleError::Census(CensusError::BoundExceeded { .. })) => Ok(None),
        Err(e) => Err(e),
    }
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, Failure> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    build(&mut w).map_err(Failure::other)?;
    let bytes = w.into_inner().map_err(|e| Failure::other(e.error()))?;
    String::from_utf8(bytes).map_err(Failure::other)
}

fn table_csv(rows: &[Row], oracle: bool) -> Result<String, Failure> {
    csv_string(|w| {
        if oracle {
            w.write_record(["n", "count", "oracle", "agree"])?;
        } else {
            w.write_record(["n", "count"])?;
        }
        for r in rows {
            let mut rec = vec![r.n.to_string(), r.count.to_string()];
            if oracle {
                rec.push(r.oracle.as_ref().map_or(String::new(), BigInt::to_string));
                rec.push(r.agree().map_or(String::new(), |b| b.to_string()));
            }
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

fn parity_word(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    require_prime_power(a.q)?;
    let parity = Parity::of(a.q);
    let cache = CensusCache::new(enum_cap(DEFAULT_VERIFY_CAP)?);
    if a.lemma.eq_ignore_ascii_case("all") {
        let (ids, skipped): (Vec<LemmaId>, Vec<LemmaId>) = LemmaId::ALL.iter().partition(|id| id.admits(parity));
        let results: Vec<_> = thread::scope(|s| {
            let cache = &cache;
            let handles: Vec<_> = ids
                .iter()
                .map(|&id| s.spawn(move || verify_lemma_with(cache, id, a.q, a.terms)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
        });
        let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
        let pass = reports.iter().all(|r| r.pass);
        let skipped: Vec<Value> = skipped
            .iter()
            .map(|id| {
                let need = parity_word(id.required_parity().expect("only restricted ids are skipped"));
                json!({ "lemma": id.name(), "note": format!("skipped: requires {need} characteristic") })
            })
            .collect();
        let out = json!({
            "schema": 1,
            "q": a.q,
            "T": a.terms,
            "pass": pass,
            "reports": reports,
            "skipped": skipped,
        });
        return Ok(Report { text: pretty(&out), code: if pass { 0 } else { EXIT_DISAGREE } });
    }
    let id = parse_lemma(&a.lemma).map_err(Failure::usage)?;
    if let Some(need) = id.required_parity().filter(|&p| p != parity) {
        return Err(Failure::usage(format!("{id} requires {} characteristic", parity_word(need))));
    }
    let report = verify_lemma_with(&cache, id, a.q, a.terms)?;
    let code = if report.pass { 0 } else { EXIT_DISAGREE };
    let value = serde_json::to_value(&report).map_err(Failure::other)?;
    Ok(Report { text: pretty(&with_schema(value)), code })
}

struct CensusRow {
    d: u64,
    count: u128,
    method: CensusMethod,
    witnesses: Option<Vec<String>>,
}

fn method_word(m: CensusMethod) -> &'static str {
    match m {
        CensusMethod::Enumerate => "enumerate",
        CensusMethod::Formula => "formula",
    }
}

fn census_row(a: &CensusArgs, d: usize, cap: u64, field: &FieldSpec) -> Result<CensusRow, Failure> {
    let within = enumeration_size(a.kind, a.q, d).is_some_and(|n| n <= cap as u128);
    let method = match a.method {
        CensusChoice::Enumerate => CensusMethod::Enumerate,
        CensusChoice::Formula => CensusMethod::Formula,
        CensusChoice::Auto if within => CensusMethod::Enumerate,
        CensusChoice::Auto => CensusMethod::Formula,
    };
    let c = census_count(a.kind, a.q, d, method, cap)?;
    if a.method == CensusChoice::Auto && method == CensusMethod::Enumerate {
        let formula = census_count(a.kind, a.q, d, CensusMethod::Formula, cap)?.count;
        if formula != c.count {
            return Err(Failure::other(CensusError::MethodsDisagree {
                kind: a.kind,
                q: a.q,
                d,
                enumerated: c.count,
                formula,
            }));
        }
    }
    let witnesses = match (a.witnesses, c.witnesses) {
        (true, Some(w)) => Some(w.iter().map(|p| p.to_text(field)).collect()),
        _ => None,
    };
    Ok(CensusRow { d: d as u64, count: c.count, method, witnesses })
}

fn cmd_census(a: &CensusArgs) -> Result<Report, Failure> {
    if a.witnesses && a.method == CensusChoice::Formula {
        return Err(Failure::usage("--witnesses needs enumeration; drop --method formula"));
    }
    require_prime_power(a.q)?;
    let cap = enum_cap(DEFAULT_ENUM_CAP)?;
    let order = if a.kind.over_quadratic_extension() {
        a.q.checked_mul(a.q).ok_or_else(|| Failure::usage(format!("q={} is too large", a.q)))?
    } else {
        a.q
    };
    let field = FieldSpec::cached(order).map_err(|e| Failure::usage(e.to_string()))?;
    let degrees = match (a.d, a.d_max) {
        (Some(d), _) => d..=d,
        (None, Some(m)) => 1..=m,
        (None, None) => unreachable!("clap requires one of --d, --d-max"),
    };
    let rows = degrees
        .map(|d| census_row(a, d as usize, cap, &field))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match a.format {
        Format::Csv => csv_string(|w| {
            let mut header = vec!["kind", "q", "d", "count", "method"];
            if a.witnesses {
                header.push("witnesses");
            }
            w.write_record(&header)?;
            for r in &rows {
                let mut rec = vec![
                    a.kind.name().to_string(),
                    a.q.to_string(),
                    r.d.to_string(),
                    r.count.to_string(),
                    method_word(r.method).to_string(),
                ];
                if a.witnesses {
                    rec.push(r.witnesses.as_ref().map_or(String::new(), |w| w.join(";")));
                }
                w.write_record(&rec)?;
            }
            Ok(())
        })?,
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v = json!({
                        "kind": a.kind.name(),
                        "q": a.q,
                        "d": r.d,
                        "count": u128_json(r.count),
                        "method": method_word(r.method),
                    });
                    if let Some(w) = &r.witnesses {
                        v["witnesses"] = json!(w);
                    }
                    v
                })
                .collect();
            pretty(&json!({ "schema": 1, "rows": rows }))
        }
    };
    Ok(Report::ok(text))
}

fn cmd_series(a: &SeriesArgs) -> Result<Report, Failure> {
    let qv = match (a.q, a.parity) {
        (Some(q), _) => QValue::Int(q),
        (None, Some(ParityArg::Even)) => QValue::Symbolic(Parity::Even),
        (None, Some(ParityArg::Odd)) => QValue::Symbolic(Parity::Odd),
        (None, None) => unreachable!("clap requires one of --q, --parity"),
    };
    let series: TruncatedSeries = match (a.group, a.lemma) {
        (Some(family), _) => {
            if a.side == Side::Product {
                return Err(Failure::usage("--side applies to --lemma only"));
            }
            group_series(family, qv, a.terms)?
        }
        (None, Some(id)) => {
            if let QValue::Int(q) = qv {
                if let Some(need) = id.required_parity().filter(|&p| p != Parity::of(q)) {
                    return Err(Failure::usage(format!("{id} requires {} characteristic", parity_word(need))));
                }
            }
            match a.side {
                Side::Closed => closed_side(id, qv, a.terms)?,
                Side::Product => {
                    let QValue::Int(q) = qv else {
                        return Err(Failure::usage("the product side needs --q"));
                    };
                    require_prime_power(q)?;
                    let cache = CensusCache::new(enum_cap(DEFAULT_VERIFY_CAP)?);
                    product_side_with(&cache, id, q, a.terms)?.0
                }
            }
        }
        (None, None) => unreachable!("clap requires one of --group, --lemma"),
    };
    let mut text = String::new();
    for (n, c) in series.coeffs().iter().enumerate() {
        text.push_str(&format!("{n}: {c}\n"));
    }
    Ok(Report::ok(text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Census(a) => cmd_census(a),
        Command::Series(a) => cmd_series(a),
    };
    match result {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
