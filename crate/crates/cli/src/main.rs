//! `cqg`: batch front end for `cqg-core`.

mod commands;

use clap::{Args, Parser, Subcommand};
use cqg_core::haar::Q_SAMPLES;
use cqg_core::CqgError;
use std::path::PathBuf;
use std::process::ExitCode;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "cqg", version, about = "Exact computations for compact quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coassociativity, counit and antipode identities on all normal monomials up to --degree.
    VerifyHopf(Common),
    /// Haar state table up to --degree, with invariance, Peter–Weyl and Gram checks.
    Haar(Common),
    /// F-matrices of the registry irreps found up to --depth.
    FMatrix(Common),
    /// Fusion table of tensor products up to --depth.
    Fuse(Common),
    /// Decompose a tensor product of fundamentals or registry irreps.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Comma-separated factors (names or labels); defaults to the first fundamental twice.
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Dual blocks, pairing, K matrices and seeded involution checks.
    Dual(Common),
    /// Multiplicative unitary of a finite quantum group: unitarity, pentagon, implementation, embeddings.
    RegrepCheck {
        #[command(flatten)]
        common: Common,
        /// Use the opposite comultiplication.
        #[arg(long)]
        opposite: bool,
    },
    /// Normal form of an expression.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
    /// `Σ_k κ(u_pk) u_kq = δ_pq` and `Σ_k u_pk κ(u_kq) = δ_pq` for every fundamental.
    AxiomsWor1(Common),
}

#[derive(Args, Debug, Clone)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["preset", "file"])))]
pub struct Common {
    /// Built-in quantum group (su_q_2, su_q_3, su_q_n:<n>, a_u_i2, c_<g>, cg_<g>).
    #[arg(long)]
    preset: Option<String>,
    /// A `.cqg` document.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Real sample points in (0, 1] for positivity checks.
    #[arg(long, value_delimiter = ',')]
    q_samples: Option<Vec<f64>>,
    /// Write JSON here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Validated settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Input,
    pub degree: usize,
    pub depth: usize,
    pub q_samples: Vec<f64>,
    pub json: Option<PathBuf>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum Input {
    Preset(String),
    File(PathBuf),
}

impl Input {
    pub fn describe(&self) -> String {
        match self {
            Input::Preset(p) => p.clone(),
            Input::File(f) => f.display().to_string(),
        }
    }
}

impl TryFrom<Common> for RunConfig {
    type Error = String;

    fn try_from(c: Common) -> Result<RunConfig, String> {
        if c.degree < 1 || c.depth < 1 {
            return Err("--degree and --depth must be at least 1".into());
        }
        let q_samples = c.q_samples.unwrap_or_else(|| Q_SAMPLES.to_vec());
        if q_samples.is_empty() || q_samples.iter().any(|&q| !(q > 0.0 && q <= 1.0)) {
            return Err("--q-samples must lie in (0, 1]".into());
        }
        let input = match (c.preset, c.file) {
            (Some(p), None) => Input::Preset(p),
            (None, Some(f)) => Input::File(f),
            _ => return Err("give exactly one of --preset and --file".into()),
        };
        Ok(RunConfig { input, degree: c.degree, depth: c.depth, q_samples, json: c.json, seed: c.seed })
    }
}

/// Exit codes by error class.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE: u8 = 2;
    pub const DEGREE: u8 = 3;
    pub const CHECK_FAILED: u8 = 4;
    pub const INTERNAL: u8 = 5;
}

pub fn error_code(e: &CqgError) -> u8 {
    match e {
        CqgError::Parse { .. } | CqgError::UnknownGenerator(_) | CqgError::UnknownPreset(_) | CqgError::Io(_) => exit::PARSE,
        CqgError::DegreeExceedsCertificate { .. } | CqgError::DegreeExceedsTable { .. } => exit::DEGREE,
        CqgError::Presentation(_)
        | CqgError::RelationNotPreserved(_)
        | CqgError::NotCorep(_)
        | CqgError::Haar(_)
        | CqgError::NotAGroup(_)
        | CqgError::InconsistentOrthogonality(_)
        | CqgError::NotPositive(_) => exit::CHECK_FAILED,
        _ => exit::INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, extra) = match cli.command {
        Command::VerifyHopf(c) => ("verify-hopf", c, commands::Extra::None),
        Command::Haar(c) => ("haar", c, commands::Extra::None),
        Command::FMatrix(c) => ("f-matrix", c, commands::Extra::None),
        Command::Fuse(c) => ("fuse", c, commands::Extra::None),
        Command::Decompose { common, tensor } => ("decompose", common, commands::Extra::Tensor(tensor)),
        Command::Dual(c) => ("dual", c, commands::Extra::None),
        Command::RegrepCheck { common, opposite } => ("regrep-check", common, commands::Extra::Opposite(opposite)),
        Command::Normalize { common, expr } => ("normalize", common, commands::Extra::Expr(expr)),
        Command::AxiomsWor1(c) => ("axioms-wor1", c, commands::Extra::None),
    };
    let cfg = match RunConfig::try_from(common) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(exit::PARSE);
        }
    };
    match commands::run(name, &cfg, extra) {
        Ok(out) => {
            print!("{}", out.human);
            if let Some(path) = &cfg.json {
                let mut doc = serde_json::Map::new();
                doc.insert("schema_version".into(), SCHEMA_VERSION.into());
                doc.insert("command".into(), name.into());
                doc.insert("input".into(), cfg.input.describe().into());
                doc.insert("passed".into(), out.passed.into());
                doc.insert("result".into(), out.json);
                let text = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("JSON values serialize") + "\n";
                let written = if path.as_os_str() == "-" {
                    print!("{}", text);
                    Ok(())
                } else {
                    std::fs::write(path, text)
                };
                if let Err(e) = written {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(exit::INTERNAL);
                }
            }
            ExitCode::from(if out.passed { exit::OK } else { exit::CHECK_FAILED })
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(error_code(&e))
        }
    }
}
