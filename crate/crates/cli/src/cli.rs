use bridge_forge::{Fraction, ReducedWord, Sign};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "bridge-forge", version, about = "Genus-one 2-bridge knot group computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    /// `+` or `-`
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Sign,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relator word, its S-sequence and cyclic S-sequence for slope q/p.
    Relator {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// The long upper meridian pair and its building blocks.
    Meridians {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        json: bool,
    },
    /// Piece queries, or the full small cancellation checks when no word is given.
    Pieces {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        word: Option<ReducedWord>,
        #[arg(long)]
        json: bool,
    },
    /// Cyclic S-sequences of sign skeletons and the numeric relation scan.
    Freeness {
        #[command(flatten)]
        knot: KnotArgs,
        /// Largest number of (x, y) factor pairs.
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        scan_syllables: Option<u32>,
        #[arg(long, default_value_t = 1e-3)]
        scan_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Parabolic representations: defining polynomial, roots and residuals.
    Reps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Dihedral images of arc meridian pairs for r = 2m/(4m²-1).
    Orbifold {
        #[arg(long)]
        m: u64,
        /// Test one arc slope U/V instead of the two standard ones.
        #[arg(long)]
        slope: Option<Fraction>,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search for an epimorphism G(K(source)) -> G(K(target)).
    Epi {
        #[arg(long, allow_hyphen_values = true)]
        source: Fraction,
        #[arg(long, allow_hyphen_values = true)]
        target: Fraction,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 3)]
        neighbors: u32,
        #[arg(long)]
        json: bool,
    },
    /// Every check over the grid 1..=m-max x 1..=n-max x {+,-}.
    VerifyAll {
        #[arg(long)]
        m_max: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        scan_syllables: Option<u32>,
        #[arg(long, default_value_t = 1e-3)]
        scan_tol: f64,
        /// Skip knots whose determinant p exceeds this.
        #[arg(long)]
        max_p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}
