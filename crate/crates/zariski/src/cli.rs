//! Command-line surface.
//!
//! Every subcommand is a thin adapter over one library operation: load and
//! validate inputs, call the library, render one [`ResultDocument`] on
//! standard output. No arithmetic lives here. Exit codes: 0 success,
//! 1 domain error (diagnostic on standard error), 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{
    classify_k3_rank2, determinant_question_check, elliptic_section_lattice, enumerate_k3_rank2,
    ruled_lattice, third_negative_curve_check,
};
use crate::engine::{
    d1_scan, d1_scan_parallel, divisibility_criterion, fiber_semidefinite_check,
    rank2_closed_form, zariski_decompose,
};
use crate::io::{
    determinant_check_value, divisibility_value, divisor_strings, fiber_check_value, hodge_value,
    k3_form_value, lattice_value, parse_divisor, parse_indices, parse_integers, parse_lattice,
    scan_report_value, signature_value, third_curve_value, zariski_result_value, LatticeFile,
    ResultDocument,
};
use crate::lattice::{genus_from_adjunction, DivisorQ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    /// Machine contract: deterministic JSON.
    #[default]
    Json,
    /// Best-effort aligned text.
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "zariski",
    version,
    about = "Exact Zariski decompositions on surface intersection lattices"
)]
pub struct Cli {
    /// Output rendering
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a lattice file and report signature and Hodge index data
    CheckLattice { file: PathBuf },
    /// Zariski decomposition of an effective divisor
    Decompose {
        file: PathBuf,
        /// Comma-separated coefficients, integers or p/q tokens
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Decompose every integer divisor with coefficients in [0, max]
    Scan {
        file: PathBuf,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        /// Partition the grid across threads; the report is byte-identical
        #[arg(long)]
        parallel: bool,
    },
    /// Divisibility criterion C² | C·E for each negative curve
    Divisibility { file: PathBuf },
    /// Rank-2 closed-form decomposition of m1·C1 + m2·C2
    ClosedForm {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        m1: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        m2: i64,
    },
    /// Evaluate a candidate rank-2 K3 intersection form `[[a,b],[b,-2]]`
    #[command(name = "classify-k3")]
    ClassifyK3 {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// List all valid candidate K3 forms with 0 < b <= max-b
    #[command(name = "enumerate-k3")]
    EnumerateK3 {
        #[arg(long = "max-b", value_parser = clap::value_parser!(i64).range(2..))]
        max_b: i64,
    },
    /// Lattice of a ruled surface with invariant e
    Ruled {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        e: i64,
    },
    /// Section-and-fiber lattice of an elliptic fibration with chi(O) = chi
    Elliptic {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        chi: i64,
    },
    /// Genus from adjunction: g = 1 + (c2 + kc)/2
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, allow_hyphen_values = true)]
        kc: i64,
    },
    /// Check that multiplicities present a fiber and run Zariski's lemma
    FiberCheck {
        file: PathBuf,
        /// Comma-separated positive multiplicities, one per curve
        #[arg(long)]
        mult: String,
    },
    /// Classify a candidate third curve class against two negative curves
    ThirdCurve {
        file: PathBuf,
        /// Comma-separated integer coefficients of the candidate class
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Determinant of a negative definite configuration vs (-1)^k
    DetCheck {
        file: PathBuf,
        /// Comma-separated curve indices
        #[arg(long)]
        subset: String,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn domain(err: impl std::fmt::Display) -> Self {
        CliError::Domain(err.to_string())
    }
    fn usage(err: impl std::fmt::Display) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn load(path: &Path) -> Result<LatticeFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_lattice(&text).map_err(CliError::domain)
}

fn lattice_input(f: &LatticeFile) -> serde_json::Value {
    lattice_value(&f.name, &f.lattice)
}

fn dispatch(command: &Command) -> Result<ResultDocument, CliError> {
    match command {
        Command::CheckLattice { file } => {
            let f = load(file)?;
            let hodge = f.lattice.hodge_index_check();
            let negative: Vec<&str> = f
                .lattice
                .negative_curves()
                .into_iter()
                .map(|i| f.lattice.curve_name(i))
                .collect();
            let result = json!({
                "valid": true,
                "negative_curves": negative,
                "signature": signature_value(f.lattice.signature()),
                "hodge": hodge_value(&hodge),
            });
            Ok(ResultDocument::new("check-lattice", json!({ "lattice": lattice_input(&f) }), result))
        }
        Command::Decompose { file, divisor } => {
            let f = load(file)?;
            let coeffs = parse_divisor(divisor).map_err(CliError::usage)?;
            let d = DivisorQ::new(coeffs);
            let z = zariski_decompose(&f.lattice, &d).map_err(CliError::domain)?;
            let input = json!({ "lattice": lattice_input(&f), "divisor": divisor_strings(&d) });
            Ok(ResultDocument::new("decompose", input, zariski_result_value(&f.lattice, &z)))
        }
        Command::Scan { file, max, parallel } => {
            let f = load(file)?;
            let report =
                if *parallel { d1_scan_parallel(&f.lattice, *max) } else { d1_scan(&f.lattice, *max) };
            let input = json!({ "lattice": lattice_input(&f), "max": max });
            Ok(ResultDocument::new("scan", input, scan_report_value(&report)))
        }
        Command::Divisibility { file } => {
            let f = load(file)?;
            let report = divisibility_criterion(&f.lattice);
            let input = json!({ "lattice": lattice_input(&f) });
            Ok(ResultDocument::new("divisibility", input, divisibility_value(&f.lattice, &report)))
        }
        Command::ClosedForm { file, m1, m2 } => {
            let f = load(file)?;
            let z = rank2_closed_form(&f.lattice, *m1, *m2).map_err(CliError::domain)?;
            let input = json!({ "lattice": lattice_input(&f), "m1": m1, "m2": m2 });
            Ok(ResultDocument::new("closed-form", input, zariski_result_value(&f.lattice, &z)))
        }
        Command::ClassifyK3 { a, b } => {
            let form = classify_k3_rank2(*a, *b);
            Ok(ResultDocument::new("classify-k3", json!({ "a": a, "b": b }), k3_form_value(&form)))
        }
        Command::EnumerateK3 { max_b } => {
            let forms = enumerate_k3_rank2(*max_b);
            let result = json!({
                "count": forms.len(),
                "forms": forms.iter().map(k3_form_value).collect::<Vec<_>>(),
            });
            Ok(ResultDocument::new("enumerate-k3", json!({ "max_b": max_b }), result))
        }
        Command::Ruled { e } => {
            let l = ruled_lattice(*e);
            let result = json!({ "lattice": lattice_value(&format!("ruled-e{e}"), &l) });
            Ok(ResultDocument::new("ruled", json!({ "e": e }), result))
        }
        Command::Elliptic { chi } => {
            let l = elliptic_section_lattice(*chi);
            let result = json!({ "lattice": lattice_value(&format!("elliptic-chi{chi}"), &l) });
            Ok(ResultDocument::new("elliptic", json!({ "chi": chi }), result))
        }
        Command::Genus { c2, kc } => {
            let g = genus_from_adjunction(*c2, *kc).map_err(CliError::domain)?;
            Ok(ResultDocument::new("genus", json!({ "c2": c2, "kc": kc }), json!({ "genus": g })))
        }
        Command::FiberCheck { file, mult } => {
            let f = load(file)?;
            let mult = parse_integers(mult).map_err(CliError::usage)?;
            let check = fiber_semidefinite_check(&f.lattice, &mult).map_err(CliError::domain)?;
            let input = json!({ "lattice": lattice_input(&f), "mult": mult });
            Ok(ResultDocument::new("fiber-check", input, fiber_check_value(&check)))
        }
        Command::ThirdCurve { file, curve } => {
            let f = load(file)?;
            let v3 = parse_integers(curve).map_err(CliError::usage)?;
            let outcome = third_negative_curve_check(&f.lattice, &v3).map_err(CliError::domain)?;
            let input = json!({ "lattice": lattice_input(&f), "curve": v3 });
            Ok(ResultDocument::new("third-curve", input, third_curve_value(&f.lattice, &outcome)))
        }
        Command::DetCheck { file, subset } => {
            let f = load(file)?;
            let idx = parse_indices(subset).map_err(CliError::usage)?;
            let check = determinant_question_check(&f.lattice, &idx).map_err(CliError::domain)?;
            let input = json!({ "lattice": lattice_input(&f), "subset": idx });
            Ok(ResultDocument::new("det-check", input, determinant_check_value(&check)))
        }
    }
}

/// Parses argv, runs one subcommand, prints the document, returns the exit
/// code. Usage errors detected by clap exit the process directly with code 2.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(doc) => {
            let rendered = match cli.format {
                OutputFormat::Json => doc.render_json(),
                OutputFormat::Table => doc.render_table(),
            };
            print!("{rendered}");
            0
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}
