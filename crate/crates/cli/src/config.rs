//! Command-line grammar and validated run configuration.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use framelab_core::realline::Sequence;

use crate::emit::Format;
use crate::error::CliError;

#[derive(Debug, Clone, Parser)]
#[command(name = "framelab", version, about = "Dextrodual Fourier expansions for mixed-type measures")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Globals {
    /// Measure spec (JSON)
    #[arg(long, global = true)]
    pub measure: Option<PathBuf>,
    /// Function spec (JSON)
    #[arg(long, global = true)]
    pub function: Option<PathBuf>,
    /// Values at the atoms of a real-line measure (JSON)
    #[arg(long, global = true)]
    pub values: Option<PathBuf>,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Comma-separated, strictly increasing
    #[arg(long, global = true, value_delimiter = ',')]
    pub orders: Vec<usize>,
    /// Kernel truncation tail, `|w|^L < tol`
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Moments of the measure for n = 0..N
    Moments,
    /// Kaczmarz auxiliary triangle
    Aux,
    /// Parseval defects and residuals of the Kaczmarz expansion
    Effective {
        /// Use this many seeded random test functions instead of --function
        #[arg(long)]
        random: Option<usize>,
    },
    /// Extension dual for atoms left of a density
    Dextrodual {
        #[command(subcommand)]
        action: DualAction,
        /// Extension intervals of length equal to the atom weights
        #[arg(long, global = true)]
        parseval: bool,
        /// Left end of the density region
        #[arg(long, global = true)]
        boundary: Option<f64>,
    },
    /// Least-squares fits of an atom indicator by trigonometric polynomials
    Witness {
        #[arg(long)]
        atom: f64,
    },
    /// Dual for an atomic part separated from a density
    Examplecase {
        #[command(subcommand)]
        action: ExamplecaseAction,
        /// Order of the atomic Kaczmarz expansion (default 4 × largest order)
        #[arg(long, global = true)]
        singular_order: Option<usize>,
    },
    /// Atomic measures on the real line
    Realline {
        #[command(subcommand)]
        action: RealAction,
    },
    /// Disk extensions, Cauchy transforms and frame kernels
    Hardy {
        #[command(subcommand)]
        action: HardyAction,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum DualAction {
    Build,
    Coeffs,
    Reconstruct,
    Bounds,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum ExamplecaseAction {
    Build,
    Coeffs,
    Reconstruct,
    Check,
}

#[derive(Debug, Clone, Subcommand)]
pub enum RealAction {
    Periodize {
        #[arg(long)]
        period: f64,
    },
    Lattice {
        /// Frequency scale; defaults to √2 × the smallest atom spacing
        #[arg(long)]
        c: Option<f64>,
    },
    Double {
        #[arg(long = "N")]
        inner: usize,
        #[arg(long = "M")]
        outer: usize,
    },
    Weighted {
        /// geometric:FIRST:RATIO, reciprocal, or finite:V0:V1:...
        #[arg(long, value_parser = parse_sequence)]
        weights: Sequence,
        #[arg(long, value_parser = parse_sequence)]
        scales: Sequence,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        /// Terms in the direct sum
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum DualKind {
    #[default]
    Parseval,
    Extension,
    Examplecase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// e_0, …, e_{d−1}
    Orthonormal,
    /// e_0, then e_j/√j repeated j times
    Repeated,
}

#[derive(Debug, Clone, Subcommand)]
pub enum HardyAction {
    Cauchy,
    Vmu,
    Boundary {
        #[arg(long, value_delimiter = ',', default_values_t = [0.9, 0.99, 0.999])]
        r: Vec<f64>,
        #[arg(long, value_enum, default_value_t)]
        dual: DualKind,
    },
    Kernel {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long)]
        dim: usize,
        /// RE or RE:IM
        #[arg(long, value_parser = parse_complex)]
        w: Complex64,
        #[arg(long, value_delimiter = ',', value_parser = parse_complex, default_values = ["0", "0.5", "0:0.5"])]
        z: Vec<Complex64>,
    },
    Shift {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long)]
        dim: usize,
    },
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}

pub fn parse_sequence(s: &str) -> Result<Sequence, String> {
    let mut parts = s.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums: Vec<f64> =
        parts.map(|t| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("reciprocal", []) => Ok(Sequence::Reciprocal),
        ("geometric", [first, ratio]) => Ok(Sequence::Geometric { first: *first, ratio: *ratio }),
        ("finite", v) if !v.is_empty() => Ok(Sequence::Finite(v.to_vec())),
        _ => Err(format!("`{s}` is not geometric:FIRST:RATIO, reciprocal or finite:V0:...")),
    }
}

/// Parsed arguments that passed validation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub measure: Option<PathBuf>,
    pub function: Option<PathBuf>,
    pub values: Option<PathBuf>,
    pub orders: Vec<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Outcome of argument parsing: a configuration, or text (help, version)
/// to print before exiting successfully.
#[derive(Debug)]
pub enum Parsed {
    Run(Box<RunConfig>),
    Info(String),
}

pub fn parse_config<I, T>(args: I) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Ok(Parsed::Info(e.render().to_string())),
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    let g = cli.globals;
    let mut orders = g.orders;
    if let Some(o) = g.order {
        if !orders.is_empty() {
            return Err(CliError::Usage("give --order or --orders, not both".into()));
        }
        orders.push(o);
    }
    if let Some(w) = orders.windows(2).find(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(format!("orders must be strictly increasing ({} then {})", w[0], w[1])));
    }
    if let Some(t) = g.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Usage(format!("--tol {t} must lie in (0, 1)")));
        }
    }
    Ok(Parsed::Run(Box::new(RunConfig {
        command: cli.command,
        measure: g.measure,
        function: g.function,
        values: g.values,
        orders,
        tol: g.tol,
        seed: g.seed,
        format: g.format,
        out: g.out,
    })))
}

impl RunConfig {
    fn require<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, CliError> {
        value.as_deref().ok_or_else(|| CliError::Usage(format!("{flag} is required for this command")))
    }

    pub fn measure_path(&self) -> Result<&Path, CliError> {
        Self::require(&self.measure, "--measure")
    }

    pub fn function_path(&self) -> Result<&Path, CliError> {
        Self::require(&self.function, "--function")
    }

    pub fn values_path(&self) -> Result<&Path, CliError> {
        Self::require(&self.values, "--values")
    }

    pub fn orders(&self) -> Result<&[usize], CliError> {
        if self.orders.is_empty() {
            return Err(CliError::Usage("--order or --orders is required for this command".into()));
        }
        Ok(&self.orders)
    }

    /// The largest requested order.
    pub fn order(&self) -> Result<usize, CliError> {
        Ok(*self.orders()?.last().expect("orders are nonempty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunConfig, CliError> {
        match parse_config(std::iter::once("framelab").chain(args.iter().copied()))? {
            Parsed::Run(c) => Ok(*c),
            Parsed::Info(s) => panic!("unexpected info output {s}"),
        }
    }

    #[test]
    fn valid_arguments() {
        let c = run(&["effective", "--measure", "m.json", "--function", "f.json", "--orders", "8,16,32"]).unwrap();
        assert_eq!(c.orders, vec![8, 16, 32]);
        assert_eq!(c.seed, 0);
        assert_eq!(c.format, Format::Csv);
        assert!(matches!(c.command, Command::Effective { random: None }));
    }

    #[test]
    fn missing_measure_is_a_usage_error() {
        let c = run(&["moments", "--order", "4"]).unwrap();
        let err = c.measure_path().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn decreasing_orders_rejected() {
        let err = run(&["effective", "--orders", "64,32"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(run(&["effective", "--orders", "8,8"]).is_err());
    }

    #[test]
    fn unknown_command_is_usage_error() {
        assert_eq!(run(&["bogus"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn help_is_not_an_error() {
        assert!(matches!(parse_config(["framelab", "--help"]), Ok(Parsed::Info(_))));
    }

    #[test]
    fn subcommand_flags() {
        let c = run(&["realline", "double", "--N", "64", "--M", "256"]).unwrap();
        assert!(matches!(c.command, Command::Realline { action: RealAction::Double { inner: 64, outer: 256 } }));
        let c = run(&["dextrodual", "coeffs", "--parseval", "--order", "5"]).unwrap();
        assert!(matches!(c.command, Command::Dextrodual { parseval: true, .. }));
        let c = run(&["hardy", "kernel", "--family", "repeated", "--dim", "8", "--w", "0.25:0.1"]).unwrap();
        let Command::Hardy { action: HardyAction::Kernel { w, z, .. } } = c.command else { panic!() };
        assert_eq!(w, Complex64::new(0.25, 0.1));
        assert_eq!(z.len(), 3);
    }

    #[test]
    fn sequences_parse() {
        assert_eq!(parse_sequence("reciprocal"), Ok(Sequence::Reciprocal));
        assert_eq!(parse_sequence("geometric:1:0.5"), Ok(Sequence::Geometric { first: 1.0, ratio: 0.5 }));
        assert_eq!(parse_sequence("finite:1:2"), Ok(Sequence::Finite(vec![1.0, 2.0])));
        assert!(parse_sequence("geometric:1").is_err());
    }
}
