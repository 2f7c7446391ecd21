use clap::{Args, Parser, Subcommand, ValueEnum};
use stoprule::{PayoffRegime, ProblemSpec, Strategy, Variant};

#[derive(Debug, Parser)]
#[command(
    name = "stoprule",
    version,
    about = "Exact payoffs, optimal cutoffs and limits for secretary-problem variants",
    after_help = "CSV output has one header row naming the same fields as the JSON output. \
                  Policy exports (oracle --export-policy) use the columns k,j,decision,value. \
                  Set STOPRULE_THREADS to cap worker threads."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected payoff of one cutoff rule
    Evaluate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Best cutoff rule by exhaustive scan
    Optimize {
        #[command(flatten)]
        spec: SpecArgs,
        /// Force the full O(n^2) grid for two-threshold scans
        #[arg(long)]
        full_scan: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte Carlo estimate of one cutoff rule
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Backward induction with a threshold-structure check
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        /// Write the decision table as CSV (k,j,decision,value)
        #[arg(long, value_name = "PATH")]
        export_policy: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Asymptotic and empirical cutoffs and payoffs for every variant
    Table {
        #[arg(long, default_value_t = 10_000)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Classic,
    Bw,
    Postdoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PayoffArg {
    Binary,
    Cost,
    Perq,
    Unbalanced,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = PayoffArg::Binary)]
    pub payoff: PayoffArg,
    /// Number of candidates
    #[arg(long)]
    pub n: u32,
    /// Payment for the overall worst (unbalanced payoff)
    #[arg(long = "m")]
    pub worst: Option<f64>,
    /// Payment for the overall best (unbalanced payoff)
    #[arg(long = "M")]
    pub best: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    /// Number of candidates rejected outright
    #[arg(long)]
    pub r: u32,
    /// Last interview of the relatively-best-only stage
    #[arg(long)]
    pub s: Option<u32>,
}

impl SpecArgs {
    pub fn to_spec(&self) -> stoprule::Result<ProblemSpec> {
        let variant = match self.variant {
            VariantArg::Classic => Variant::Classic,
            VariantArg::Bw => Variant::BestOrWorst,
            VariantArg::Postdoc => Variant::Postdoc,
        };
        let payoff = match (self.payoff, self.worst, self.best) {
            (PayoffArg::Unbalanced, Some(worst), Some(best)) => {
                PayoffRegime::Unbalanced { worst, best }
            }
            (PayoffArg::Unbalanced, _, _) => {
                return Err(stoprule::Error::InvalidParameters(
                    "--payoff unbalanced needs both --m and --M".into(),
                ))
            }
            (_, None, None) => match self.payoff {
                PayoffArg::Binary => PayoffRegime::Binary,
                PayoffArg::Cost => PayoffRegime::Cost,
                PayoffArg::Perq => PayoffRegime::Perquisite,
                PayoffArg::Unbalanced => unreachable!(),
            },
            _ => {
                return Err(stoprule::Error::InvalidCombination(
                    "--m and --M apply only to --payoff unbalanced".into(),
                ))
            }
        };
        ProblemSpec::new(variant, payoff, self.n)
    }
}

impl RuleArgs {
    pub fn to_strategy(&self) -> Strategy {
        match self.s {
            None => Strategy::OneThreshold { r: self.r },
            Some(s) => Strategy::TwoThreshold { r: self.r, s },
        }
    }
}
