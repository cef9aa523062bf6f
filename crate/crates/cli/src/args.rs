use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "seqgroup", version, about = "Second-order linear recurrences: groups, torsion and prime divisors")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Prime window: `odd:K` (first K odd primes), `first:K` (first K primes,
    /// counting 2) or `below:B`.
    #[arg(long, global = true)]
    pub window: Option<String>,

    /// Density denominator: `pi_t` (admissible window primes) or `all_primes`.
    #[arg(long, global = true)]
    pub convention: Option<String>,

    /// Sweep prime windows on all cores. Output is identical either way.
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Include member prime lists in JSON output.
    #[arg(long, global = true)]
    pub full: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// The sequence group.
    L,
    /// The sequence group modulo powers of the companion element.
    Laxton,
}

/// Either `--t` or the pair `--T`, `--Q`.
#[derive(Args, Debug, Clone)]
pub struct Params {
    /// One-parameter trace, as `a/b` or an integer.
    #[arg(long = "t", allow_hyphen_values = true, conflicts_with_all = ["big_t", "big_q"])]
    pub t: Option<String>,

    /// Integer trace of a two-parameter pair.
    #[arg(long = "T", allow_hyphen_values = true, requires = "big_q")]
    pub big_t: Option<i64>,

    /// Integer norm of a two-parameter pair.
    #[arg(long = "Q", allow_hyphen_values = true, requires = "big_t")]
    pub big_q: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct TOnly {
    /// Parameter, as `a/b` or an integer.
    #[arg(long = "t", allow_hyphen_values = true)]
    pub t: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Terms x_n of a sequence over an index range.
    Seq {
        #[command(flatten)]
        params: Params,
        /// Initial terms `x0,x1`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Inclusive index range `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value = "0..10")]
        range: String,
    },
    /// Cyclotomic kind, associates and primitivity of t.
    Classify {
        #[command(flatten)]
        t: TOnly,
    },
    /// Torsion of the sequence group or of the Laxton group.
    Torsion {
        #[command(flatten)]
        t: TOnly,
        #[arg(long, value_enum, default_value_t = GroupKind::Laxton)]
        group: GroupKind,
    },
    /// Square roots of a class in the sequence group.
    Sqrt {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Whether two classes differ by a power of the companion element.
    LaxtonEq {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Admissible primes dividing some term of a sequence.
    Divisors {
        #[command(flatten)]
        t: TOnly,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Shorthand for `--window odd:N`.
        #[arg(long)]
        primes: Option<usize>,
    },
    /// The six disjoint divisor sets of X, CX, WX, VX; with `--cubic`, the
    /// split of the divisor set of S instead.
    Partition {
        #[command(flatten)]
        t: TOnly,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "cubic")]
        x: Option<String>,
        #[arg(long)]
        cubic: bool,
    },
    /// The six published density rows, with deviations above 0.01 flagged.
    Table3,
    /// Divisor densities of even and odd terms of an integer sequence over (T, Q).
    Independence {
        #[arg(long = "T", allow_hyphen_values = true)]
        big_t: i64,
        #[arg(long = "Q", allow_hyphen_values = true)]
        big_q: i64,
        /// Initial terms `x0,x1`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}
