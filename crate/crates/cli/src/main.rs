//! `loopcard`: exact semiadditive cardinalities of π-finite spaces.

use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopcard::invariants::PrimeSupport;
use loopcard::report::{Quantity, Record, Report, ReportValue};
use loopcard::spacexpr::{evaluate, parse_with};
use loopcard::verify::Suite;
use loopcard::{
    en_cardinality, morava_euler, ExactRational, FiniteGroupoid, InvariantError, Limits, PostnikovOrders, Prime,
    Space,
};

#[derive(Parser, Debug)]
#[command(name = "loopcard", version, about = "Exact E_n cardinalities of finite loop spaces and groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Leave out the timing field so repeated runs are byte-identical.
    #[arg(long, global = true)]
    stable_output: bool,

    /// Largest group order accepted anywhere.
    #[arg(long, global = true, env = "LOOPCARD_ORDER_CAP", default_value_t = Limits::DEFAULT_ORDER_CAP)]
    order_cap: usize,

    /// Most component runs a loop groupoid may hold.
    #[arg(long, global = true, env = "LOOPCARD_COMPONENT_BUDGET", default_value_t = Limits::DEFAULT_COMPONENT_BUDGET)]
    component_budget: usize,

    /// Most tuples the brute-force counter may visit.
    #[arg(long, global = true, env = "LOOPCARD_WORK_CAP", default_value_t = Limits::DEFAULT_WORK_CAP)]
    work_cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// |A|_{E_n}, the homotopy cardinality of the n-fold free loop space.
    Card {
        /// Height, or an inclusive range `a..b`.
        #[arg(short, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        /// The prime; inferred when the space has a single prime.
        #[arg(short)]
        p: Option<u64>,
        expr: String,
    },
    /// χ_n: the number of components of the n-fold free loop space.
    Euler {
        #[arg(short, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        expr: String,
    },
    /// Homotopy cardinality.
    Hcard { expr: String },
    /// The k-fold free loop space.
    Loop {
        #[arg(short, default_value_t = 1)]
        k: u32,
        expr: String,
    },
    /// Run the built-in identity suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteChoice,
    },
    /// Tabulate |B^d C_p|_{E_n} for d = 0..=dmax and n = 1..=nmax.
    Table {
        #[arg(long, num_args = 2, value_names = ["DMAX", "NMAX"], required = true)]
        em: Vec<u32>,
        #[arg(short)]
        p: u64,
    },
}

#[derive(Clone, Debug)]
enum SuiteChoice {
    All,
    One(Suite),
}

fn parse_suite(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        return Ok(SuiteChoice::All);
    }
    Suite::from_name(s).map(SuiteChoice::One).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite `{s}`; expected one of all, {}", names.join(", "))
    })
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

/// A failure with its exit status: 2 for bad input, 1 otherwise.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    payload: Value,
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString, payload: Value) -> Failure {
        Failure {
            code: 2,
            kind,
            message: message.to_string(),
            payload,
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Failure {
        let (code, kind, payload) = match &e {
            InvariantError::NotAPSpace { p, witness } => (2, "NotAPSpace", json!({"p": p, "witness": witness})),
            InvariantError::HeightZero => (2, "HeightZero", Value::Null),
            InvariantError::WorkCapExceeded { cap } => (2, "WorkCapExceeded", json!({"cap": cap})),
            InvariantError::ComponentBudgetExceeded { budget } => {
                (2, "ComponentBudgetExceeded", json!({"budget": budget}))
            }
            InvariantError::Groupoid(g) => (2, "Groupoid", json!({"detail": format!("{g:?}")})),
            InvariantError::IntegralityViolation { n, value } => {
                (1, "IntegralityViolation", json!({"n": n, "value": value.to_string()}))
            }
            InvariantError::BurnsideMismatch { orbits, burnside } => {
                (1, "BurnsideMismatch", json!({"orbits": orbits, "burnside": burnside}))
            }
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            payload,
        }
    }
}

struct Ctx {
    limits: Limits,
}

impl Ctx {
    fn space(&self, src: &str) -> Result<(String, Space), Failure> {
        let expr = parse_with(src, &self.limits).map_err(|e| {
            use loopcard::spacexpr::ParseError as P;
            let payload = match &e {
                P::SyntaxError {
                    position,
                    expected,
                    found,
                } => json!({"line": position.line, "column": position.column, "expected": expected, "found": found}),
                P::UnknownName { position, name } => {
                    json!({"line": position.line, "column": position.column, "name": name})
                }
                P::NonAbelianHigherB { position, d, group } => {
                    json!({"line": position.line, "column": position.column, "d": d, "group": group})
                }
                P::InvalidGroup { position, source } => {
                    json!({"line": position.line, "column": position.column, "detail": source.to_string()})
                }
            };
            let kind = match &e {
                P::SyntaxError { .. } => "SyntaxError",
                P::UnknownName { .. } => "UnknownName",
                P::NonAbelianHigherB { .. } => "NonAbelianHigherB",
                P::InvalidGroup { .. } => "InvalidGroup",
            };
            Failure::input(kind, &e, payload)
        })?;
        let value = evaluate(&expr, &self.limits).map_err(|e| {
            use loopcard::spacexpr::EvalError as E;
            let kind = match &e {
                E::MixedRepresentation(_) => "MixedRepresentation",
                E::CoercionRefused(_) => "CoercionRefused",
                E::NotALoopSpace(_) => "NotALoopSpace",
                E::Groupoid(_) => "Groupoid",
            };
            Failure::input(kind, &e, Value::Null)
        })?;
        Ok((expr.to_string(), value.space))
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(|e| Failure::input("NotPrime", e, json!({"p": p})))
}

fn infer_prime(space: &Space) -> Result<Prime, Failure> {
    match space.prime_support() {
        PrimeSupport::Single(p) => prime(p),
        PrimeSupport::Trivial => prime(2),
        PrimeSupport::Mixed => Err(Failure::input(
            "NotAPSpace",
            "homotopy groups involve several primes; pass -p to choose one",
            Value::Null,
        )),
    }
}

fn record(quantity: Quantity, space: &str, n: Option<u32>, p: Option<u64>, value: ExactRational) -> Record {
    Record {
        quantity,
        space: space.to_string(),
        n,
        p,
        value: ReportValue(value),
        method: String::new(),
        p_space_hypothesis: true,
        looped: None,
    }
}

fn method(space: &Space) -> &'static str {
    match space {
        Space::Groupoid(_) => "groupoid",
        Space::Stable(_) => "loop_space",
    }
}

fn groupoid_json(g: &FiniteGroupoid) -> Value {
    let runs: Vec<Value> = g
        .runs()
        .iter()
        .map(|r| {
            json!({
                "group": r.group.to_string(),
                "order": r.group.order(),
                "multiplicity": loopcard::rational::Natural(r.multiplicity.clone()),
            })
        })
        .collect();
    json!({"groupoid": runs})
}

fn orders_json(o: &PostnikovOrders) -> Value {
    serde_json::to_value(o).expect("orders serialize")
}

fn run(cli: &Cli) -> Result<(Vec<Record>, String), Failure> {
    let ctx = Ctx {
        limits: Limits {
            order_cap: cli.global.order_cap,
            component_budget: cli.global.component_budget,
            work_cap: cli.global.work_cap,
        },
    };
    let l = &ctx.limits;
    let mut records = Vec::new();
    let mut text = String::new();
    match &cli.command {
        Command::Card { n, p, expr } => {
            let (name, space) = ctx.space(expr)?;
            let p = match p {
                Some(p) => prime(*p)?,
                None => infer_prime(&space)?,
            };
            for k in n.clone() {
                let v = en_cardinality(&space, k, p, l)?;
                let mut r = record(Quantity::EnCardinality, &name, Some(k), Some(p.get()), v);
                r.method = method(&space).into();
                records.push(r);
            }
            text = values_text(&records, n);
        }
        Command::Euler { n, expr } => {
            let (name, space) = ctx.space(expr)?;
            let inside = space.is_p_space();
            for k in n.clone() {
                let v = morava_euler(&space, k, l)?;
                let mut r = record(Quantity::MoravaEuler, &name, Some(k), None, v.into());
                r.method = method(&space).into();
                r.p_space_hypothesis = inside;
                records.push(r);
            }
            text = values_text(&records, n);
            if !inside {
                text = text.lines().map(|line| format!("{line} (not a p-space)\n")).collect();
            }
        }
        Command::Hcard { expr } => {
            let (name, space) = ctx.space(expr)?;
            let mut r = record(Quantity::HomotopyCardinality, &name, None, None, space.homotopy_cardinality());
            r.method = method(&space).into();
            r.p_space_hypothesis = space.is_p_space();
            writeln!(text, "{}", r.value.0).unwrap();
            records.push(r);
        }
        Command::Loop { k, expr } => {
            let (name, space) = ctx.space(expr)?;
            let looped = space.iterated_loop_space(*k, l)?;
            let mut r = record(Quantity::LoopSpace, &name, Some(*k), None, looped.homotopy_cardinality());
            r.method = method(&space).into();
            r.p_space_hypothesis = space.is_p_space();
            r.looped = Some(match &looped {
                Space::Groupoid(g) => groupoid_json(g),
                Space::Stable(o) => orders_json(o),
            });
            writeln!(text, "{looped}").unwrap();
            records.push(r);
        }
        Command::Table { em, p } => {
            let (dmax, nmax) = (em[0], em[1]);
            if nmax == 0 {
                return Err(Failure::input("EmptyTable", "NMAX must be at least 1", Value::Null));
            }
            let pr = prime(*p)?;
            write!(text, "d\\n").unwrap();
            for n in 1..=nmax {
                write!(text, "\t{n}").unwrap();
            }
            text.push('\n');
            for d in 0..=dmax {
                let name = format!("B^{d}(C{p})");
                let space = Space::Stable(PostnikovOrders::em_space(d as usize, *p));
                write!(text, "{d}").unwrap();
                for n in 1..=nmax {
                    let v = en_cardinality(&space, n, pr, l)?;
                    write!(text, "\t{v}").unwrap();
                    let mut r = record(Quantity::EnCardinality, &name, Some(n), Some(*p), v);
                    r.method = "loop_space".into();
                    records.push(r);
                }
                text.push('\n');
            }
        }
        Command::Verify { .. } => unreachable!("handled separately"),
    }
    Ok((records, text))
}

fn values_text(records: &[Record], n: &RangeInclusive<u32>) -> String {
    if n.start() == n.end() {
        return format!("{}\n", records[0].value.0);
    }
    records
        .iter()
        .map(|r| format!("n={}\t{}\n", r.n.unwrap_or_default(), r.value.0))
        .collect()
}

fn verify(cli: &Cli, choice: &SuiteChoice, start: Instant) -> ExitCode {
    let suites: Vec<Suite> = match choice {
        SuiteChoice::All => Suite::ALL.to_vec(),
        SuiteChoice::One(s) => vec![*s],
    };
    let results: Vec<_> = suites.into_iter().map(Suite::run).collect();
    let ok = results.iter().all(|r| r.passed());
    match cli.global.output {
        Output::Text => {
            for r in &results {
                println!("{r}");
            }
        }
        Output::Json => {
            let suites: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "passed": r.passed(),
                        "checks": r.checks,
                        "failures": r.failures,
                        "first_counterexample": r.first_counterexample,
                    })
                })
                .collect();
            let mut doc = json!({"schema": loopcard::report::REPORT_SCHEMA, "suites": suites});
            if !cli.global.stable_output {
                doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Command::Verify { suite } = &cli.command {
        return verify(&cli, suite, start);
    }
    match run(&cli) {
        Ok((records, text)) => {
            let mut out = std::io::stdout().lock();
            match cli.global.output {
                Output::Text => {
                    let _ = out.write_all(text.as_bytes());
                }
                Output::Json => {
                    let mut report = Report::new(records);
                    if !cli.global.stable_output {
                        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match cli.global.output {
                Output::Text => eprintln!("error: {}", f.message),
                Output::Json => {
                    let doc = json!({
                        "schema": loopcard::report::REPORT_SCHEMA,
                        "error": {"kind": f.kind, "message": f.message, "details": f.payload},
                    });
                    eprintln!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            ExitCode::from(f.code)
        }
    }
}
