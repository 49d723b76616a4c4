use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use cmtwist::report::{
    self, BaseCertPayload, DiscondPayload, Example41Payload, Example42Payload, FieldLiteral, FieldPayload,
    InertiaPayload, Job, JobSpec, Report, ReportError,
};
use serde_json::Value;

/// Exact computations with abelian CM fields, CM-types and character twists.
///
/// Exit status: 0 when every conclusion is reached, 2 when a hypothesis
/// fails, 1 for invalid input.
#[derive(Parser, Debug)]
#[command(name = "cmtwist", version)]
struct Cli {
    /// Emit the JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct InputArg {
    /// Job document (`{"command", "payload"}`) or a bare payload.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run any job document.
    Run {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Structure of an abelian field.
    Field {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, conflicts_with_all = ["quadratic", "real_subfield_of"])]
        cyclotomic: Option<u64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "real_subfield_of")]
        quadratic: Option<i64>,
        #[arg(long)]
        real_subfield_of: Option<u64>,
    },
    /// Validate a CM-type and compute its reflex data.
    Cmtype {
        #[command(flatten)]
        input: InputArg,
    },
    /// Cyclic character twist of a Weil-type variety.
    #[command(name = "twist-x")]
    TwistX {
        #[command(flatten)]
        input: InputArg,
    },
    /// Quadratic twist of one factor of a product.
    #[command(name = "twist-e")]
    TwistE {
        #[command(flatten)]
        input: InputArg,
    },
    /// Galois groups cut out by a character whose image meets the envelope in order d.
    Discond {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Inertia certificate at one prime p = 3 (mod 7).
    Inertia {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Two-prime certificate for the connectedness base.
    #[command(name = "base-cert")]
    BaseCert {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Replay of the cubic-twist example over Q(sqrt(-3)).
    #[command(name = "example-41")]
    Example41 {
        #[command(flatten)]
        input: InputArg,
    },
    /// Replay of the J x X0(49) example.
    #[command(name = "example-42")]
    Example42 {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = report::DEFAULT_P)]
        p: u64,
        #[arg(long, default_value_t = report::DEFAULT_Q)]
        q: u64,
        #[arg(long, default_value_t = report::DEFAULT_D, allow_hyphen_values = true)]
        d: i64,
    },
}

fn bad(msg: impl Into<String>) -> ReportError {
    ReportError::Input(msg.into())
}

fn read_document(path: &Path) -> std::result::Result<String, ReportError> {
    fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))
}

/// Reads `--input` for subcommand `command`: a full document must name the same command.
fn from_input(command: &str, path: &Path) -> std::result::Result<JobSpec, ReportError> {
    let text = read_document(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let doc = match value.get("command") {
        Some(Value::String(c)) if c == command => text,
        Some(other) => return Err(bad(format!("document is for command {other}, not `{command}`"))),
        None => serde_json::json!({ "command": command, "payload": value }).to_string(),
    };
    report::validate_input(&doc)
}

fn require<T>(v: Option<T>, flag: &str, command: &str) -> std::result::Result<T, ReportError> {
    v.ok_or_else(|| bad(format!("`{command}` needs --input or --{flag}")))
}

fn build_job(command: Command) -> std::result::Result<JobSpec, ReportError> {
    let with_input = |name: &str, input: &InputArg| input.input.as_deref().map(|p| from_input(name, p));
    let spec = |job| Ok(JobSpec::new(job));
    match command {
        Command::Run { input } => report::validate_input(&read_document(&input)?),
        Command::Field { input, cyclotomic, quadratic, real_subfield_of } => {
            if let Some(r) = with_input("field", &input) {
                return r;
            }
            let field = match (cyclotomic, quadratic, real_subfield_of) {
                (Some(m), _, _) => FieldLiteral::Cyclotomic(m),
                (_, Some(d), _) => FieldLiteral::Quadratic(d),
                (_, _, Some(m)) => FieldLiteral::RealSubfieldOf(m),
                _ => return Err(bad("`field` needs --input, --cyclotomic, --quadratic or --real-subfield-of")),
            };
            spec(Job::Field(FieldPayload { field }))
        }
        Command::Cmtype { input } => with_input("cmtype", &input).unwrap_or_else(|| Err(bad("`cmtype` needs --input"))),
        Command::TwistX { input } => with_input("twist-x", &input).unwrap_or_else(|| Err(bad("`twist-x` needs --input"))),
        Command::TwistE { input } => with_input("twist-e", &input).unwrap_or_else(|| Err(bad("`twist-e` needs --input"))),
        Command::Discond { input, n, d } => match with_input("discond", &input) {
            Some(r) => r,
            None => spec(Job::Discond(DiscondPayload { n: require(n, "n", "discond")?, d })),
        },
        Command::Inertia { input, p } => match with_input("inertia", &input) {
            Some(r) => r,
            None => spec(Job::Inertia(InertiaPayload { p: require(p, "p", "inertia")? })),
        },
        Command::BaseCert { input, p, q } => match with_input("base-cert", &input) {
            Some(r) => r,
            None => spec(Job::BaseCert(BaseCertPayload {
                p: require(p, "p", "base-cert")?,
                q: require(q, "q", "base-cert")?,
            })),
        },
        Command::Example41 { input } => match with_input("example-41", &input) {
            Some(r) => r,
            None => spec(Job::Example41(Example41Payload {})),
        },
        Command::Example42 { input, p, q, d } => match with_input("example-42", &input) {
            Some(r) => r,
            None => spec(Job::Example42(Example42Payload { p, q, d })),
        },
    }
}

fn emit(report: &Report, json: bool, output: Option<&Path>) -> Result<()> {
    let text = report.to_json();
    if let Some(path) = output {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        print!("{text}");
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let spec = match build_job(cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let output = cli.output.or_else(|| spec.output_path.as_ref().map(PathBuf::from));
    match report::run(&spec) {
        Ok(rep) => {
            if let Err(e) = emit(&rep, cli.json, output.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if !rep.complete {
                eprintln!("not every conclusion was reached; see the report");
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
