//! The `stoprule` command line.
//!
//! [`run`] executes a parsed command and returns its output and exit code
//! instead of printing, so the binary and the tests share one path.

pub mod args;
pub mod output;

use std::fs::File;
use std::io::BufWriter;

use serde_json::{json, Value};
use stoprule::asymptotics::{limit_cells, Acv, LimitCell};
use stoprule::exact::{argmax_one, argmax_two, evaluate, ArgmaxResult};
use stoprule::montecarlo::estimate;
use stoprule::oracle::{dp_solve, enumerate_strategies, extract_thresholds, ENUMERATION_LIMIT};
use stoprule::{Error, EvalResult, PayoffRegime, ProblemSpec, Strategy, Variant};

pub use args::{Cli, Command, Format};
use output::{csv_lines, json as render_json, number, plain, Record, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_THRESHOLD: i32 = 3;

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            code: exit_code(err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidThreshold(_)
        | Error::InvalidCombination(_)
        | Error::InvalidParameters(_)
        | Error::Domain(_)
        | Error::SizeLimit(_) => EXIT_VALIDATION,
        Error::NotThreshold(_) => EXIT_NOT_THRESHOLD,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Evaluate { spec, rule, format } => spec
            .to_spec()
            .and_then(|s| cmd_evaluate(&s, &rule.to_strategy()))
            .map(|r| r.render(*format)),
        Command::Optimize {
            spec,
            full_scan,
            format,
        } => spec
            .to_spec()
            .and_then(|s| cmd_optimize(&s, *full_scan))
            .map(|r| r.render(*format)),
        Command::Simulate {
            spec,
            rule,
            samples,
            seed,
            format,
        } => spec
            .to_spec()
            .and_then(|s| cmd_simulate(&s, &rule.to_strategy(), *samples, *seed))
            .map(|r| r.render(*format)),
        Command::Oracle {
            spec,
            export_policy,
            format,
        } => {
            return match spec.to_spec() {
                Ok(s) => cmd_oracle(&s, export_policy.as_deref(), *format),
                Err(e) => Outcome::error(&e),
            }
        }
        Command::Table { n, format } => cmd_table(*n).map(|t| t.render(*format)),
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => Outcome::error(&e),
    }
}

fn spec_record(command: &str, spec: &ProblemSpec) -> Record {
    let mut r = Record::new(command);
    r.put("variant", spec.variant.label())
        .put("payoff", spec.payoff.label());
    if let PayoffRegime::Unbalanced { worst, best } = spec.payoff {
        r.num("m", worst).num("M", best);
    }
    r.put("n", spec.n);
    r
}

fn put_value(r: &mut Record, key: &str, value: &EvalResult) {
    r.num(key, value.value);
    r.put(
        &format!("{key}_exact"),
        value.exact_string().map_or(Value::Null, Value::String),
    );
    r.put(
        "method",
        serde_json::to_value(value.method).expect("serializable"),
    );
}

pub fn cmd_evaluate(spec: &ProblemSpec, strat: &Strategy) -> stoprule::Result<Record> {
    let result = evaluate(spec, strat)?;
    let mut r = spec_record("evaluate", spec);
    r.put("strategy", strat.to_string());
    put_value(&mut r, "value", &result);
    Ok(r)
}

/// Two cutoffs for the staged rules (unbalanced, Postdoc cost), one otherwise.
pub fn optimum(spec: &ProblemSpec, full_scan: bool) -> stoprule::Result<ArgmaxResult> {
    let staged = matches!(spec.payoff, PayoffRegime::Unbalanced { .. })
        || (spec.variant == Variant::Postdoc && spec.payoff == PayoffRegime::Cost);
    if staged {
        argmax_two(spec, full_scan)
    } else {
        argmax_one(spec)
    }
}

pub fn cmd_optimize(spec: &ProblemSpec, full_scan: bool) -> stoprule::Result<Record> {
    let best = optimum(spec, full_scan)?;
    let mut r = spec_record("optimize", spec);
    r.put("strategy", best.best_strategy.to_string())
        .put("r", best.best_strategy.r())
        .put("s", best.best_strategy.s().map_or(Value::Null, Value::from));
    put_value(&mut r, "value", &best.best_value);
    r.put("scanned", best.scanned);
    Ok(r)
}

pub fn cmd_simulate(
    spec: &ProblemSpec,
    strat: &Strategy,
    samples: u64,
    seed: u64,
) -> stoprule::Result<Record> {
    let rep = estimate(spec, strat, samples, seed)?;
    let mut r = spec_record("simulate", spec);
    r.put("strategy", strat.to_string())
        .num("estimate", rep.estimate)
        .num("std_error", rep.std_error)
        .put("std_error_defined", rep.std_error_defined)
        .num("ci95_low", rep.ci95_low)
        .num("ci95_high", rep.ci95_high)
        .put("samples", rep.samples)
        .put("seed", rep.seed)
        .put("generator", rep.generator);
    Ok(r)
}

pub fn cmd_oracle(spec: &ProblemSpec, export: Option<&std::path::Path>, format: Format) -> Outcome {
    let policy = match dp_solve(spec) {
        Ok(p) => p,
        Err(e) => return Outcome::error(&e),
    };
    if let Some(path) = export {
        let written = File::create(path).and_then(|f| policy.write_csv(BufWriter::new(f)));
        if let Err(e) = written {
            return Outcome {
                code: EXIT_FAILURE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
    }
    let mut r = spec_record("oracle", spec);
    put_value(&mut r, "value", policy.root());
    match extract_thresholds(&policy) {
        Ok(strat) => {
            r.put("strategy", strat.to_string())
                .put("r", strat.r())
                .put("s", strat.s().map_or(Value::Null, Value::from))
                .put("threshold_check", "PASS");
        }
        Err(Error::NotThreshold(report)) => {
            r.put("strategy", Value::Null)
                .put("threshold_check", "FAIL")
                .put(
                    "report",
                    serde_json::to_value(&*report).expect("serializable"),
                );
            return Outcome {
                code: EXIT_NOT_THRESHOLD,
                stdout: r.render(format),
                stderr: format!("error: {}\n", Error::NotThreshold(report)),
            };
        }
        Err(e) => return Outcome::error(&e),
    }
    if spec.n <= ENUMERATION_LIMIT.min(8) {
        let strats = Strategy::all_feasible(spec);
        let best = enumerate_strategies(spec, &strats)
            .ok()
            .and_then(|vals| vals.into_iter().filter_map(|v| v.exact).max());
        if let Some(best) = best {
            let agrees = policy.root().exact.as_ref() == Some(&best);
            let best = EvalResult::from_exact(best, stoprule::Method::Enumeration);
            r.num("enumeration_max", best.value)
                .put(
                    "enumeration_max_exact",
                    best.exact_string().map_or(Value::Null, Value::String),
                )
                .put("enumeration_agrees", agrees);
        }
    }
    Outcome::ok(r.render(format))
}

/// One cell of the comparison grid, asymptotic and at finite `n`.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub cell: LimitCell,
    pub empirical: ArgmaxResult,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub n: u32,
    pub rows: Vec<TableRow>,
}

pub fn cmd_table(n: u32) -> stoprule::Result<Table> {
    let rows = limit_cells()
        .into_iter()
        .map(|cell| {
            let spec = ProblemSpec::new(cell.variant, cell.payoff, n)?;
            Ok(TableRow {
                cell,
                empirical: optimum(&spec, false)?,
            })
        })
        .collect::<stoprule::Result<_>>()?;
    Ok(Table { n, rows })
}

const ROW_LABELS: [(&str, &str); 3] = [("binary", "p_B"), ("cost", "p_C"), ("perq", "p_P")];

impl TableRow {
    fn acv(&self) -> (f64, Option<f64>) {
        match self.cell.acv {
            Acv::One(x) => (x, None),
            Acv::Two(x, y) => (x, Some(y)),
        }
    }

    fn empirical_acv(&self, n: u32) -> (f64, Option<f64>) {
        let n = n as f64;
        let s = &self.empirical.best_strategy;
        (s.r() as f64 / n, s.s().map(|s| s as f64 / n))
    }

    /// Flat fields shared by the JSON and CSV forms.
    pub fn fields(&self, n: u32) -> Vec<(&'static str, Value)> {
        let opt = |x: Option<f64>| x.map_or(Value::Null, number);
        let (x, y) = self.acv();
        let (ex, ey) = self.empirical_acv(n);
        vec![
            ("payoff", self.cell.payoff.label().into()),
            ("variant", self.cell.variant.label().into()),
            ("acv", number(x)),
            ("acv_s", opt(y)),
            ("amp", number(self.cell.amp)),
            ("acv_empirical", number(ex)),
            ("acv_s_empirical", opt(ey)),
            ("amp_empirical", number(self.empirical.best_value.value)),
            ("strategy", self.empirical.best_strategy.to_string().into()),
        ]
    }
}

impl Table {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    row.fields(self.n)
                        .into_iter()
                        .map(|(k, v)| (k.to_owned(), v))
                        .collect(),
                )
            })
            .collect();
        json!({ "schema": SCHEMA, "command": "table", "n": self.n, "rows": rows })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => render_json(&self.to_json()),
            Format::Csv => {
                let header: Vec<&str> = self.rows[0]
                    .fields(self.n)
                    .iter()
                    .map(|(k, _)| *k)
                    .collect();
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|row| row.fields(self.n).iter().map(|(_, v)| plain(v)).collect())
                    .collect();
                csv_lines(&header, &rows)
            }
            Format::Md => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let cutoff = |r: f64, s: Option<f64>| match s {
            None => format!("{}", output::sig6(r)),
            Some(s) => format!("{}, {}", output::sig6(r), output::sig6(s)),
        };
        let grid = |title: &str, cell: &dyn Fn(&TableRow) -> (String, String)| {
            let mut out = format!("{title}\n\n|  | Classic ACV | Classic AMP | Best-or-Worst ACV | Best-or-Worst AMP | Postdoc ACV | Postdoc AMP |\n|---|---|---|---|---|---|---|\n");
            for (payoff, label) in ROW_LABELS {
                out.push_str(&format!("| {label} |"));
                for variant in Variant::ALL {
                    let row = self
                        .rows
                        .iter()
                        .find(|r| r.cell.payoff.label() == payoff && r.cell.variant == variant)
                        .expect("full grid");
                    let (acv, amp) = cell(row);
                    out.push_str(&format!(" {acv} | {amp} |"));
                }
                out.push('\n');
            }
            out
        };
        let asymptotic = grid("Asymptotic", &|row| {
            let (x, y) = row.acv();
            (cutoff(x, y), format!("{}", output::sig6(row.cell.amp)))
        });
        let n = self.n;
        let empirical = grid(&format!("Empirical, n = {n}"), &|row| {
            let (x, y) = row.empirical_acv(n);
            (
                cutoff(x, y),
                format!("{}", output::sig6(row.empirical.best_value.value)),
            )
        });
        format!("{asymptotic}\n{empirical}")
    }
}
