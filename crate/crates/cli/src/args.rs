use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "motdisc",
    version,
    about = "Generating functions, limits and brute-force counts for configuration strata and singular hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a generating series to a truncation order.
    Series {
        kind: SeriesKind,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        common: Common,
    },
    /// Stable limit of a series' coefficients, normalized by Sym or by M = L^d.
    Limit {
        kind: LimitKind,
        #[command(flatten)]
        shape: Shape,
        /// Normalize by `sym` (Sym^{j+offset} X) or `m` (M^{j+offset}).
        #[arg(long, value_enum, default_value_t = Norm::Sym)]
        norm: Norm,
        /// Offset of the normalization; defaults to the sum of --nu.
        #[arg(long)]
        offset: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Limiting density of hypersurface sections with prescribed singular points.
    Hyper {
        /// Exactly s singular geometric points.
        #[arg(long, conflicts_with = "m")]
        s: Option<usize>,
        /// With --s: count ordered tuples of distinct singular points.
        #[arg(long, requires = "s")]
        ordered: bool,
        /// No point of multiplicity m.
        #[arg(long)]
        m: Option<u32>,
        /// Ambient dimension; defaults to the dimension of --X.
        #[arg(long)]
        d: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive enumeration over finite fields and integers.
    Oracle {
        kind: OracleKind,
        #[command(flatten)]
        params: OracleParams,
        #[command(flatten)]
        common: Common,
    },
    /// Run the identity and oracle suite; exits nonzero on any failure.
    Verify {
        /// all, identities, oracle, models or limits.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Shape {
    /// Partition of multiplicities, e.g. `2,2` or `3,2^2`; for zetainv a
    /// generalized partition such as `a,a,b`.
    #[arg(long)]
    pub nu: Option<String>,
    /// Multiplicity threshold.
    #[arg(long, default_value_t = 2)]
    pub a: u32,
    /// Number of points.
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Variety model: A^d, P1, P^n, pt, euler:CHI, hd:POLY, counts:q=Q[,N=[..]].
    #[arg(long = "X", default_value = "A1")]
    pub x: String,
    /// symbolic, motivic-L, count:q=Q, euler or hd; defaults to motivic-L,
    /// or to count:q=Q for point-count models.
    #[arg(long)]
    pub spec: Option<String>,
    /// Truncation order of series.
    #[arg(long, default_value_t = 12)]
    pub trunc: usize,
    /// Codimension cutoff of limits and densities.
    #[arg(long, default_value_t = 10)]
    pub cutoff: i64,
    /// Enumeration guard in states.
    #[arg(long, default_value_t = motdisc::oracle::DEFAULT_GUARD)]
    pub guard: u64,
    /// Allow a guard above the default (never above the hard limit).
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Output {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OracleParams {
    /// Field size.
    #[arg(long)]
    pub q: Option<u32>,
    /// Degree, or a range `A..B` (inclusive) for a sweep.
    #[arg(long)]
    pub j: Option<String>,
    /// Multiplicity pattern for `w`, e.g. `1,1`.
    #[arg(long)]
    pub nu: Option<String>,
    /// Number of multiple points.
    #[arg(long)]
    pub s: Option<usize>,
    /// Smallest exponent for `integer`.
    #[arg(long)]
    pub a: Option<u32>,
    /// Repeated exponent for `integer`.
    #[arg(long)]
    pub b: Option<u32>,
    /// Number of repeated exponents for `integer`.
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    /// Upper end of the integer range.
    #[arg(long, default_value_t = 1_000_000)]
    pub bound: u64,
    /// Point counts N_1,N_2,... for `exp`.
    #[arg(long)]
    pub counts: Option<String>,
    /// Highest symmetric power for `exp`.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// K_{(<a)nu}: points of multiplicity >= a have multiplicities exactly nu.
    K,
    /// Kbar_{1.nu}: closure strata.
    Kbar,
    /// Configurations with exactly s points of multiplicity >= 2.
    Symsing,
    /// Z_X, or Z^[s] with --s.
    Zeta,
    /// The alternating sum over Q attached to --nu or *^s.
    Zetainv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    K,
    Kbar,
    Symsing,
    /// Closed form for nu with distinct parts, all at least 2.
    Distinct,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Sym,
    M,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// Divisors with multiplicity pattern exactly --nu.
    W,
    /// Monic polynomials of degree j with exactly s multiple points.
    Symsing,
    /// Binary forms of degree j with exactly s multiple points.
    Hyper,
    /// Symmetric-power counts from point counts.
    Exp,
    /// Density of integers divisible by c^a d_1^b ... d_r^b.
    Integer,
}
