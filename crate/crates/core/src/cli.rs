//! `collatz` command-line front end.
//!
//! Exit codes: 0 on success, 1 when the tool ran but found a verification
//! failure, 2 on usage or domain errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::lemma::{default_k_max, AuditRow, Lemma3Outcome, TheoremSweep};
use crate::sweep::{default_workers, SweepReport};
use crate::{
    case3_inequality_audit, coalesce, collatz_step, decode, double_transform, encode,
    hypothesis_check, hypothesis_sweep, lemma2_check, lemma3_check, lemma4_check,
    odd_inverse_transform, theorem1_sweep, total_stopping_steps, trajectory, CoalescenceResult,
    Nat, RSequence, TrajectoryStatus,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Exact integer tools for the 3x+1 map.
#[derive(Debug, Parser)]
#[command(name = "collatz", version)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Step budget for every orbit computation.
    #[arg(long, global = true, default_value = "100000", value_parser = parse_count)]
    pub max_steps: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for sweeps [default: available parallelism].
    #[arg(long, global = true, value_parser = parse_count)]
    pub jobs: Option<u64>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Search bound for lemma3/lemma4 [default: 64 + 3 * epsilon].
    #[arg(long, global = true, value_parser = parse_count)]
    pub k_max: Option<u64>,

    /// Include wall time in JSON and CSV sweep reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// T(N)
    Step {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// Orbit of N until it reaches 1 or the budget runs out
    Traj {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// Least k with T^k(N) = 1
    StopSteps {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// Canonical exponent sequence of N
    Encode {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// Integer represented by SEQ
    Decode { seq: String },
    /// Check SEQ against every representation invariant
    Validate { seq: String },
    /// Doubling transform of SEQ
    Double { seq: String },
    /// Odd-inverse transform of SEQ
    OddInverse { seq: String },
    /// First common value of the orbits of N and M
    Coalesce {
        #[arg(value_parser = parse_nat)]
        n: Nat,
        #[arg(value_parser = parse_nat)]
        m: Nat,
    },
    /// Coalescence of N with 3N + 2
    Hypothesis {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// Hypothesis check over [A, B]
    SweepHypothesis {
        #[arg(value_parser = parse_nat)]
        a: Nat,
        #[arg(value_parser = parse_nat)]
        b: Nat,
    },
    /// 3^(A/2 + 1) + 2 < 2^A + 1
    Lemma2 {
        #[arg(value_parser = parse_count)]
        a: u64,
    },
    /// Where the orbit of N + 1 lands for even N
    Lemma3 {
        #[arg(value_parser = parse_nat)]
        n: Nat,
    },
    /// lemma3 at N = 2^A
    Lemma4 {
        #[arg(value_parser = parse_count)]
        a: u64,
    },
    /// Encode and round-trip every integer in [A, B]
    SweepTheorem1 {
        #[arg(value_parser = parse_nat)]
        a: Nat,
        #[arg(value_parser = parse_nat)]
        b: Nat,
    },
    /// Both case-3 inequalities for a in [1, A]
    AuditCase3 {
        #[arg(value_parser = parse_count)]
        a: u64,
    },
}

fn check_decimal(s: &str) -> Result<(), String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("{s:?} has leading zeros"));
    }
    Ok(())
}

/// Unbounded decimal integer without sign or leading zeros.
pub fn parse_nat(s: &str) -> Result<Nat, String> {
    check_decimal(s)?;
    Nat::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_count(s: &str) -> Result<u64, String> {
    check_decimal(s)?;
    s.parse::<u64>().map_err(|e| e.to_string())
}

/// A command's result in every output format.
struct Rendered {
    json: String,
    text: String,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    failed: bool,
}

impl Rendered {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        let mut json = serde_json::to_string_pretty(value).expect("serializable");
        json.push('\n');
        Rendered {
            json,
            text: text + "\n",
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            failed: false,
        }
    }

    fn csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header;
        self.csv_rows = rows;
        self
    }

    fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    fn body(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => self.json.clone().into_bytes(),
            Format::Text => self.text.clone().into_bytes(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                w.into_inner().expect("in-memory write")
            }
        }
    }
}

#[derive(Serialize)]
struct StepOut {
    #[serde(with = "crate::serde_nat::one")]
    n: Nat,
    #[serde(with = "crate::serde_nat::one")]
    value: Nat,
}

#[derive(Serialize)]
struct StopStepsOut {
    #[serde(with = "crate::serde_nat::one")]
    n: Nat,
    steps: Option<u64>,
}

#[derive(Serialize)]
struct DecodeOut<'a> {
    sequence: &'a RSequence,
    #[serde(with = "crate::serde_nat::one")]
    value: Nat,
}

#[derive(Serialize)]
struct TransformOut<'a> {
    input: &'a RSequence,
    output: RSequence,
    #[serde(with = "crate::serde_nat::one")]
    value: Nat,
}

#[derive(Serialize)]
struct Lemma2Out {
    a: u64,
    holds: bool,
}

fn opt_nat(n: &Option<Nat>) -> String {
    n.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn render_coalescence(r: &CoalescenceResult) -> Rendered {
    let text = match &r.meet_value {
        Some(v) => format!(
            "met at {v} (left index {}, right index {})",
            r.index_left, r.index_right
        ),
        None if r.budget_hit => "no common value within budget".to_string(),
        None => "no common value".to_string(),
    };
    Rendered::new(r, text).csv(
        vec![
            "met",
            "meet_value",
            "index_left",
            "index_right",
            "budget_hit",
        ],
        vec![vec![
            r.met.to_string(),
            opt_nat(&r.meet_value),
            r.index_left.to_string(),
            r.index_right.to_string(),
            r.budget_hit.to_string(),
        ]],
    )
}

fn report_text(r: &SweepReport) -> String {
    let mut text = format!(
        "range [{}, {}]: checked {}, succeeded {}, failures {}\nmax orbit value {}\nmax steps {}",
        r.range_start,
        r.range_end,
        r.checked,
        r.succeeded,
        r.failures.len(),
        r.max_orbit_value,
        r.max_steps_seen
    );
    if let Some(d) = r.elapsed {
        text.push_str(&format!("\nelapsed {:.3}s", d.as_secs_f64()));
    }
    for f in &r.failures {
        text.push_str(&format!("\nfailed {f}"));
    }
    text
}

fn render_lemma3(o: &Lemma3Outcome) -> Rendered {
    let text = format!(
        "T^{}({}) = {} (epsilon {}, odd part {}, predicted k {})",
        o.k_found,
        &o.n + 1u32,
        o.target,
        o.epsilon,
        o.odd_part,
        o.k_predicted
    );
    Rendered::new(o, text)
        .csv(
            vec![
                "n",
                "epsilon",
                "odd_part",
                "target",
                "k_found",
                "k_predicted",
            ],
            vec![vec![
                o.n.to_string(),
                o.epsilon.to_string(),
                o.odd_part.to_string(),
                o.target.to_string(),
                o.k_found.to_string(),
                o.k_predicted.to_string(),
            ]],
        )
        .failed_if(!o.prediction_holds())
}

fn execute(config: &CliConfig) -> Result<Rendered, Error> {
    let max_steps = config.max_steps;
    let workers = config
        .jobs
        .map(|j| j.max(1) as usize)
        .unwrap_or_else(default_workers);
    let strip = |r: SweepReport| if config.timing { r } else { r.without_timing() };

    Ok(match &config.command {
        Command::Step { n } => {
            let value = collatz_step(n)?;
            let out = StepOut {
                n: n.clone(),
                value: value.clone(),
            };
            Rendered::new(&out, value.to_string()).csv(
                vec!["n", "value"],
                vec![vec![n.to_string(), value.to_string()]],
            )
        }
        Command::Traj { n } => {
            let t = trajectory(n, max_steps)?;
            let line: Vec<String> = t.values.iter().map(|v| v.to_string()).collect();
            let status = match t.status {
                TrajectoryStatus::ReachedOne => "reached 1",
                TrajectoryStatus::BudgetExhausted => "budget exhausted",
            };
            let text = format!("{}\n{status} after {} steps", line.join(" "), t.steps());
            let rows = line
                .into_iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), v])
                .collect();
            Rendered::new(&t, text).csv(vec!["index", "value"], rows)
        }
        Command::StopSteps { n } => {
            let steps = total_stopping_steps(n, max_steps)?;
            let text = steps.map_or_else(|| "none".to_string(), |s| s.to_string());
            let out = StopStepsOut {
                n: n.clone(),
                steps,
            };
            Rendered::new(&out, text)
                .csv(
                    vec!["n", "steps"],
                    vec![vec![
                        n.to_string(),
                        steps.map(|s| s.to_string()).unwrap_or_default(),
                    ]],
                )
                .failed_if(steps.is_none())
        }
        Command::Encode { n } => {
            let e = encode(n, max_steps)?;
            Rendered::new(&e, e.sequence.to_string()).csv(
                vec!["n", "sequence", "power_of_two_input"],
                vec![vec![
                    n.to_string(),
                    e.sequence.to_string(),
                    e.power_of_two_input.to_string(),
                ]],
            )
        }
        Command::Decode { seq } => {
            let s: RSequence = seq.parse()?;
            let value = decode(&s);
            let out = DecodeOut {
                sequence: &s,
                value: value.clone(),
            };
            Rendered::new(&out, value.to_string()).csv(
                vec!["sequence", "value"],
                vec![vec![s.to_string(), value.to_string()]],
            )
        }
        Command::Validate { seq } => {
            let s: RSequence = seq.parse()?;
            let value = decode(&s);
            let out = DecodeOut {
                sequence: &s,
                value: value.clone(),
            };
            Rendered::new(&out, format!("valid: {s} represents {value}")).csv(
                vec!["sequence", "value"],
                vec![vec![s.to_string(), value.to_string()]],
            )
        }
        Command::Double { seq } | Command::OddInverse { seq } => {
            let s: RSequence = seq.parse()?;
            let output = match &config.command {
                Command::Double { .. } => double_transform(&s),
                _ => odd_inverse_transform(&s)?,
            };
            let value = decode(&output);
            let text = output.to_string();
            let row = vec![s.to_string(), output.to_string(), value.to_string()];
            let out = TransformOut {
                input: &s,
                output,
                value,
            };
            Rendered::new(&out, text).csv(vec!["input", "output", "value"], vec![row])
        }
        Command::Coalesce { n, m } => render_coalescence(&coalesce(n, m, max_steps)?),
        Command::Hypothesis { n } => {
            let r = hypothesis_check(n, max_steps)?;
            render_coalescence(&r).failed_if(!r.met)
        }
        Command::SweepHypothesis { a, b } => {
            let report = hypothesis_sweep(a, b, max_steps, workers)?;
            let text = report_text(&report);
            let report = strip(report);
            let rows = report
                .failures
                .iter()
                .map(|f| vec![f.to_string()])
                .collect();
            Rendered::new(&report, text)
                .csv(vec!["n"], rows)
                .failed_if(!report.is_clean())
        }
        Command::Lemma2 { a } => {
            let holds = lemma2_check(*a);
            Rendered::new(&Lemma2Out { a: *a, holds }, holds.to_string())
                .csv(
                    vec!["a", "holds"],
                    vec![vec![a.to_string(), holds.to_string()]],
                )
                .failed_if(*a >= 8 && !holds)
        }
        Command::Lemma3 { n } => {
            let epsilon = crate::nu2(n)?.epsilon;
            render_lemma3(&lemma3_check(
                n,
                config.k_max.unwrap_or(default_k_max(epsilon)),
            )?)
        }
        Command::Lemma4 { a } => render_lemma3(&lemma4_check(
            *a,
            config.k_max.unwrap_or(default_k_max(*a)),
        )?),
        Command::SweepTheorem1 { a, b } => {
            let sweep = theorem1_sweep(a, b, max_steps, workers)?;
            let text = report_text(&sweep.report);
            let sweep = TheoremSweep {
                report: strip(sweep.report),
                records: sweep.records,
            };
            let rows = sweep
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.encoded.to_string(),
                        r.power_of_two.to_string(),
                        r.sequence_length.to_string(),
                    ]
                })
                .collect();
            let failed = !sweep.report.is_clean();
            Rendered::new(&sweep, text)
                .csv(
                    vec!["n", "encoded", "power_of_two", "sequence_length"],
                    rows,
                )
                .failed_if(failed)
        }
        Command::AuditCase3 { a } => {
            let rows = case3_inequality_audit(*a)?;
            let failed = rows.iter().any(|r| r.a >= 8 && !(r.lemma2 && r.floor_form));
            let text = audit_text(&rows);
            let csv_rows = rows
                .iter()
                .map(|r| {
                    vec![
                        r.a.to_string(),
                        r.lemma2.to_string(),
                        r.floor_form.to_string(),
                    ]
                })
                .collect();
            Rendered::new(&rows, text)
                .csv(vec!["a", "lemma2", "floor_form"], csv_rows)
                .failed_if(failed)
        }
    })
}

fn audit_text(rows: &[AuditRow]) -> String {
    let mut lines = vec!["a\tlemma2\tfloor_form".to_string()];
    lines.extend(
        rows.iter()
            .map(|r| format!("{}\t{}\t{}", r.a, r.lemma2, r.floor_form)),
    );
    lines.join("\n")
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExhausted { .. } | Error::NotFound { .. } => EXIT_VERIFICATION_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let rendered = match execute(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let body = rendered.body(config.format);
    let written = match &config.output {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().lock().write_all(&body),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if rendered.failed {
        EXIT_VERIFICATION_FAILED
    } else {
        EXIT_OK
    }
}
