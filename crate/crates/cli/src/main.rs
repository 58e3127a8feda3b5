use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wmha::groupoid::{preset, GroupoidModel, ModelKind};
use wmha::report::{
    digest_bytes, export_algebra, export_groupoid, load_input, preset_digest, verify, InputError, Options, PathChoice,
    Report, Status, Subject,
};

#[derive(Parser)]
#[command(
    name = "wmha",
    version,
    about = "Exact verification of weak multiplier Hopf algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline and report the verdict.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the witnesses of a passing verification.
    Witnesses {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the classification flags on one line.
    Classify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a finite preset as an input document.
    Export {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "function")]
        model: ModelKind,
        #[arg(long, value_enum, default_value_t = Form::Groupoid)]
        form: Form,
        /// Give the coproduct as Δ(e_p) instead of T1–T4 (algebra form).
        #[arg(long)]
        delta: bool,
        /// Leave out supplied data (algebra form).
        #[arg(long, value_enum)]
        without: Vec<Part>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Groupoid,
    Algebra,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Part {
    Counit,
    Star,
    Antipode,
    #[value(name = "E")]
    E,
}

#[derive(Args)]
struct Source {
    /// Input document (JSON).
    input: Option<PathBuf>,
    /// Groupoid preset instead of an input file.
    #[arg(long, conflicts_with = "input")]
    preset: Option<String>,
    /// Model for `--preset`.
    #[arg(long, default_value = "function")]
    model: ModelKind,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "both")]
    path: PathChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Windows for infinite presets.
    #[arg(long, default_value_t = 3)]
    windows: usize,
}

impl RunArgs {
    fn options(&self) -> Options {
        Options {
            path: self.path,
            seed: self.seed,
            windows: self.windows,
            ..Default::default()
        }
    }
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(source: &Source) -> Result<(Subject, String), Failure> {
    match (&source.input, &source.preset) {
        (Some(path), None) => {
            let bytes = fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok((load_input(&bytes)?, digest_bytes(&bytes)))
        }
        (None, Some(name)) => Ok((
            Subject::from_preset(name, source.model)?,
            preset_digest(name, source.model.as_str()),
        )),
        _ => Err(Failure::Input("give an input file or --preset".into())),
    }
}

fn run(source: &Source, args: &RunArgs) -> Result<Report, Failure> {
    let (subject, digest) = load(source)?;
    Ok(verify(&subject, &digest, &args.options()))
}

fn first_failure(r: &Report) -> String {
    match r.failures().next() {
        Some(c) => format!("{} ({}): {}", c.id, c.anchor, c.detail),
        None => "none".into(),
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))
        }
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(e.to_string())),
    }
}

fn summary(r: &Report) -> String {
    let count = |s: Status| r.checks.iter().filter(|c| c.status == s).count();
    let mut out = format!(
        "verdict: {} ({} pass, {} fail, {} skip; paths {})\n",
        if r.passed() { "pass" } else { "fail" },
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip),
        r.paths.join("+"),
    );
    for w in &r.windows {
        let v = if w.verdict == Status::Pass { "pass" } else { "fail" };
        out.push_str(&format!("window {}: {} morphisms, {v}\n", w.k, w.morphisms));
    }
    for c in r.failures() {
        out.push_str(&format!("FAIL {} ({}): {}\n", c.id, c.anchor, c.detail));
    }
    if !r.passed() {
        out.push_str(&format!(
            "first failing check: {}\n",
            r.failures().next().map_or("", |c| c.id.as_str())
        ));
    }
    if let Some(c) = r.check("paths.agree") {
        out.push_str(&format!("paths agree: {}\n", c.status == Status::Pass));
    }
    out.push_str(&r.classification.one_line());
    out.push('\n');
    out
}

fn export(
    name: &str,
    model: ModelKind,
    form: Form,
    delta: bool,
    without: &[Part],
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let g = preset(name)
        .map_err(|e| Failure::Input(e.to_string()))?
        .finite()
        .ok_or_else(|| Failure::Input(format!("{name} is infinite and cannot be exported")))?;
    let doc = match form {
        Form::Groupoid => export_groupoid(&g, model),
        Form::Algebra => {
            let mut doc = export_algebra(&GroupoidModel::build(model, &g), delta);
            for part in without {
                match part {
                    Part::Counit => doc.counit = None,
                    Part::Star => doc.star = None,
                    Part::Antipode => doc.antipode = None,
                    Part::E => doc.e = None,
                }
            }
            doc
        }
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    write_out(output, &text)
}

fn exit_for(r: &Report) -> ExitCode {
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main_inner(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Verify {
            source,
            run: args,
            report,
        } => {
            let r = run(&source, &args)?;
            if let Some(path) = &report {
                write_out(Some(path), &r.to_json())?;
            }
            let text = summary(&r);
            if report.as_ref().is_some_and(|p| p.as_os_str() == "-") {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            Ok(exit_for(&r))
        }
        Command::Witnesses { source, run: args } => {
            let r = run(&source, &args)?;
            if !r.passed() {
                return Err(Failure::Verification(first_failure(&r)));
            }
            let mut text = serde_json::to_string_pretty(&r.witnesses).expect("witnesses serialize");
            text.push('\n');
            write_out(None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { source, run: args } => {
            let r = run(&source, &args)?;
            println!("{}", r.classification.one_line());
            Ok(exit_for(&r))
        }
        Command::Export {
            preset,
            model,
            form,
            delta,
            without,
            output,
        } => {
            export(&preset, model, form, delta, &without, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
