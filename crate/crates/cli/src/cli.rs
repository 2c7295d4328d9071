use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "zetalab", version, about = "Zeta functions of curves, bundle masses, lattice geo-arithmetic and explicit formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for independent table rows; 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

/// `y2=x3+A*x+B` over `F_{p^n}`.
#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree of the base field.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

/// Elliptic data either from a curve or from `(q, N_1)`.
#[derive(Args, Debug, Clone)]
pub struct EllipticArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, conflicts_with = "curve")]
    pub q: Option<u64>,
    #[arg(long, requires = "q")]
    pub n1: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Artin zeta function of a curve: numerator, checks and point counts.
    Artin {
        #[command(flatten)]
        curve: CurveArgs,
        /// Field size when giving counts instead of a curve.
        #[arg(long, conflicts_with = "curve")]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        genus: Option<usize>,
        /// `N_1,...,N_g`
        #[arg(long, requires = "genus")]
        counts: Option<String>,
        /// Rows of the `N_m` table.
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// Rank-r non-abelian zeta function of an elliptic curve.
    Nazeta {
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value = "galois-descent")]
        convention: String,
        #[command(flatten)]
        data: EllipticArgs,
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// Degree-zero semistable classes by refined Brill-Noether stratum.
    Census {
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value = "galois-descent")]
        convention: String,
        #[command(flatten)]
        data: EllipticArgs,
    },
    /// Beta invariants under both conventions against the mass recursion.
    Mass {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[command(flatten)]
        data: EllipticArgs,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        dmin: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        dmax: i64,
    },
    /// Rank-2 all-bundles zeta: closed forms against enumeration.
    Allbundles {
        #[command(flatten)]
        data: EllipticArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Partial Euler product of the global non-abelian zeta of `y2=x3+A*x+B` over Q.
    Euler {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1)]
        rank: u32,
        #[arg(long, default_value = "3")]
        s: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value = "galois-descent")]
        convention: String,
    },
    /// Semistability, Harder-Narasimhan filtration and rank-2 reduction of a lattice.
    Lattice {
        #[command(flatten)]
        lat: LatticeArgs,
    },
    /// Geo-arithmetic h0, h1 and the Riemann-Roch residual of a lattice.
    Theta {
        #[command(flatten)]
        lat: LatticeArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Completed Riemann zeta function at the given points.
    Xi {
        /// Repeatable; `a+bi` syntax.
        #[arg(long = "s", default_values_t = vec!["0.5".to_string()], allow_hyphen_values = true)]
        s: Vec<String>,
        #[arg(long, default_value_t = 1e-13)]
        eps: f64,
    },
    /// Function-field explicit formula and positivity on random test functions.
    ExplicitFf {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, conflicts_with = "curve")]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        genus: Option<usize>,
        #[arg(long, requires = "genus")]
        counts: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Supports lie in `[-span, span]`.
        #[arg(long, default_value_t = 3)]
        span: i64,
    },
    /// Micro model, global pairing and Riemann-Weil residuals over Q.
    ExplicitNf {
        #[arg(long)]
        zeros: PathBuf,
        /// Truncation levels for the residual table.
        #[arg(long, default_value = "25,50,100")]
        k: String,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.05)]
        sigma: f64,
        /// Second test function for the pairing; defaults to the first.
        #[arg(long, allow_negative_numbers = true)]
        mu2: Option<f64>,
        #[arg(long)]
        sigma2: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        prime_bound: u64,
    },
    /// Weight-2 spinor numerator against the split rank-2 numerator.
    Andrianov,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct LatticeArgs {
    /// Basis rows separated by `/`.
    #[arg(long)]
    pub lattice: Option<String>,
    /// Gram matrix rows separated by `/`.
    #[arg(long)]
    pub gram: Option<String>,
}
