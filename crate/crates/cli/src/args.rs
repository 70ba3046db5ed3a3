use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qhimpl",
    version,
    about = "Alcove combinatorics, implosion strata and numerical quasi-Hamiltonian checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Seed for every random draw; recorded in the output.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Group {
    /// Type letter (A..G), or a full name such as E8.
    #[arg(long = "type", value_name = "LABEL")]
    pub label: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OptionalGroup {
    /// Type letter (A..G), or a full name such as E8. Omit for the default sweep.
    #[arg(long = "type", value_name = "LABEL")]
    pub label: Option<String>,
    #[arg(long, requires = "label")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Numeric {
    /// Matrix size.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Replace every default tolerance.
    #[arg(long, env = "QHAM_TOL", value_parser = positive_f64)]
    pub tol: Option<f64>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive and finite, got {s}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Faces of the fundamental alcove with their centralizer root data.
    Faces {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        common: Common,
    },
    /// Strata of the universal imploded cross-section.
    Strata {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        common: Common,
    },
    /// Extended marks; the whole table when no type is given.
    Weights {
        #[command(flatten)]
        group: OptionalGroup,
        #[command(flatten)]
        common: Common,
    },
    /// Removability verdicts per face.
    Smooth {
        #[command(flatten)]
        group: Group,
        /// Restrict to one face, e.g. w1.w2 or open.
        #[arg(long)]
        face: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The embedding of the centre into the Weyl group.
    Zeta {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        common: Common,
    },
    /// Centre and duality permutations of the faces.
    Symmetries {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        common: Common,
    },
    /// Root-level centralizer intersection over subfaces.
    CheckCentralizer {
        #[command(flatten)]
        group: OptionalGroup,
        #[command(flatten)]
        common: Common,
    },
    /// Integrality of mark ratios over triples of simple roots.
    CheckIntegrality {
        #[command(flatten)]
        group: OptionalGroup,
        #[command(flatten)]
        common: Common,
    },
    /// Residuals of the axioms for one model, or one of varpi,
    /// sphere-reduction, universal-embedding.
    VerifyNumeric {
        target: String,
        #[command(flatten)]
        num: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Gluing of two discs into the spinning sphere.
    VerifyGlue {
        #[command(flatten)]
        num: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Closed form, pullback and exponentiation of the cotangent double.
    VerifyCotangent {
        #[command(flatten)]
        num: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Sample flat SU(n) connections on a punctured surface.
    SampleRep {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[command(flatten)]
        num: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Expected dimensions for the master moduli space.
    ModuliDim {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[command(flatten)]
        group: Group,
        /// Comma separated face ids, one per puncture; all open by default.
        #[arg(long, value_delimiter = ',')]
        faces: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Stabilizer block pattern of the SU(n) embedding against face types.
    SuEmbeddingCheck {
        /// Matrix size; 2..=6 when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Faces { common, .. }
            | Command::Strata { common, .. }
            | Command::Weights { common, .. }
            | Command::Smooth { common, .. }
            | Command::Zeta { common, .. }
            | Command::Symmetries { common, .. }
            | Command::CheckCentralizer { common, .. }
            | Command::CheckIntegrality { common, .. }
            | Command::VerifyNumeric { common, .. }
            | Command::VerifyGlue { common, .. }
            | Command::VerifyCotangent { common, .. }
            | Command::SampleRep { common, .. }
            | Command::ModuliDim { common, .. }
            | Command::SuEmbeddingCheck { common, .. } => common,
        }
    }
}
