//! Command-line surface of the workbench.
//!
//! Construction documents can be run from a file (`jcubic run spec.txt`),
//! or single commands can be issued directly with an algebra literal and a
//! field descriptor.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jcubic::cli;
use jcubic::specdoc::{parse_spec, SpecDocument};

#[derive(Parser)]
#[command(
    name = "jcubic",
    version,
    about = "Exact-arithmetic workbench for composition algebras, cubic Jordan algebras, \
             quadratic-form invariants, homogeneity criteria, and valuation data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Field descriptor: Q | Fp:<p> | Fq:<p>:<n>:<mod> | RatFun:<g>:<var> |
    /// Laurent:<g>:<var>[:prec=<N>]
    #[arg(long, default_value = "Q")]
    field: String,
    /// Master seed for all derived sampling streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the verification suites.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Enumeration budget (vector evaluations).
    #[arg(long, default_value_t = jcubic::quadforms::DEFAULT_BUDGET)]
    budget: u64,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every command listed in a specification document.
    Run {
        /// Path to the document, or `-` for stdin.
        path: String,
        #[command(flatten)]
        common: Common,
    },
    /// Construct an algebra and report its basic data.
    Build {
        construction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full axiom suite on an algebra.
    Verify {
        construction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Invariants mod 2 of a reduced algebra.
    Invariants {
        construction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Homogeneity of a reduced algebra, plus the strict classifier.
    Homogeneity {
        construction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Valuation data of an algebra over a Laurent field.
    Valuation {
        construction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Walk the homogeneity cascade over a field.
    Cascade {
        field_descriptor: String,
        #[command(flatten)]
        common: Common,
    },
    /// Jordan algebra of a pointed quadratic module.
    Clifford {
        /// Action to perform; only `check-theorem` is defined.
        action: String,
        /// Quadratic form literal, e.g. diag(1,1) or pf(-1,-1).
        #[arg(long)]
        q: String,
        /// Base point with q(e) = 1, comma-separated.
        #[arg(long)]
        e: String,
        #[command(flatten)]
        common: Common,
    },
}

fn doc_from(common: &Common, construction: Option<String>, commands: Vec<&str>) -> SpecDocument {
    SpecDocument {
        field: common.field.clone(),
        construction,
        form: None,
        base_point: None,
        seed: common.seed,
        budget_enumeration: common.budget,
        budget_samples: common.samples,
        commands: commands.into_iter().map(String::from).collect(),
    }
}

fn emit(common: &Common, body: String, exit: i32) -> ExitCode {
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    ExitCode::from(exit.clamp(0, 255) as u8)
}

fn run_doc(doc: &SpecDocument, common: &Common) -> ExitCode {
    let (report, exit) = cli::run_document(doc);
    let body = if common.format == "json" { report.to_json() } else { report.to_text() };
    emit(common, body, exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { path, common } => {
            let text = if path == "-" {
                use std::io::Read;
                let mut buf = String::new();
                if std::io::stdin().read_to_string(&mut buf).is_err() {
                    eprintln!("cannot read stdin");
                    return ExitCode::from(2);
                }
                buf
            } else {
                match std::fs::read_to_string(&path) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("cannot read {path}: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            match parse_spec(&text) {
                Ok(mut doc) => {
                    // command-line seed applies when the document has none
                    if text.lines().all(|l| !l.trim_start().starts_with("seed")) {
                        doc.seed = common.seed;
                    }
                    run_doc(&doc, &common)
                }
                Err(e) => {
                    let (body, exit) = cli::run_text(&text, common.format == "json");
                    eprintln!("{e}");
                    emit(&common, body, exit)
                }
            }
        }
        Command::Build { construction, common } => {
            run_doc(&doc_from(&common, Some(construction), vec!["build"]), &common)
        }
        Command::Verify { construction, common } => {
            run_doc(&doc_from(&common, Some(construction), vec!["verify"]), &common)
        }
        Command::Invariants { construction, common } => {
            run_doc(&doc_from(&common, Some(construction), vec!["invariants"]), &common)
        }
        Command::Homogeneity { construction, common } => {
            run_doc(&doc_from(&common, Some(construction), vec!["homogeneity"]), &common)
        }
        Command::Valuation { construction, common } => {
            run_doc(&doc_from(&common, Some(construction), vec!["valuation"]), &common)
        }
        Command::Cascade { field_descriptor, common } => {
            let mut c = common.clone();
            c.field = field_descriptor;
            run_doc(&doc_from(&c, None, vec!["cascade"]), &c)
        }
        Command::Clifford { action, q, e, common } => {
            if action != "check-theorem" {
                eprintln!("unknown clifford action `{action}` (expected check-theorem)");
                return ExitCode::from(2);
            }
            let mut doc = doc_from(&common, None, vec!["clifford"]);
            doc.form = Some(q);
            doc.base_point = Some(e);
            run_doc(&doc, &common)
        }
    }
}
