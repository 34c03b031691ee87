//! Command-line front end for the verification suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elliptica::multiplier::{solve_scalar, GridField};
use elliptica::suite::{error_exit_code, exit_code, list_catalog, run_suite, SuiteConfig};
use elliptica::symbol::io::resolve_operator;
use elliptica::Error;

#[derive(Parser)]
#[command(name = "elliptica", version, about = "Verification suites for homogeneous elliptic operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite.
    Run {
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// List built-in operators, systems, fields and suites.
    List,
    /// Kernel dimensions of A on homogeneous polynomials.
    HarmonicDim(Flags),
    /// Calderón–Zygmund ratio survey on the torus.
    CzSurvey(Flags),
    /// Finite-part fundamental-solution pairing checks.
    FinitePart(Flags),
    /// Exterior Dirichlet problem through the Kelvin transform.
    KelvinSolve(Flags),
    /// Solve `A u = f` on the torus for a grid file.
    Solve {
        #[arg(long)]
        op: String,
        #[arg(long = "N")]
        dim: Option<usize>,
        /// Right-hand side grid file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output grid file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Default)]
struct Flags {
    /// JSON config; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    op: Option<String>,
    #[arg(long)]
    system: Option<String>,
    #[arg(long = "N")]
    dim: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    /// R0,gamma,K
    #[arg(long)]
    ladder: Option<String>,
    /// Comma list, `inf` allowed.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Catalog field such as `power:-1`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Expected growth exponent when the field is not in the catalog.
    #[arg(long, allow_hyphen_values = true)]
    expect: Option<f64>,
    #[arg(long)]
    refinement: Option<usize>,
    /// Highest polynomial degree for harmonic-dim.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    kappa: Option<usize>,
    /// Ball solver points per axis.
    #[arg(long)]
    res: Option<usize>,
    /// Boundary data: `const:c` or `coord:j`.
    #[arg(long)]
    g: Option<String>,
    /// Source: `zero` or `power:t`.
    #[arg(long)]
    f: Option<String>,
}

impl Flags {
    fn into_config(self, suite: &str) -> Result<SuiteConfig, Error> {
        let base = match &self.config {
            Some(path) => SuiteConfig::from_json_file(path)?,
            None => SuiteConfig::default(),
        };
        let flags = SuiteConfig {
            suite: suite.to_string(),
            op: self.op,
            system: self.system,
            dim: self.dim,
            grid: self.grid,
            ladder: self.ladder,
            q: self.q,
            p: self.p,
            seed: self.seed,
            out: self.out,
            field: self.field,
            s: self.s,
            expect: self.expect,
            refinement: self.refinement,
            degree: self.degree,
            kappa: self.kappa,
            res: self.res,
            g: self.g,
            f: self.f,
        };
        Ok(base.overlay(&flags))
    }
}

fn run(suite: &str, flags: Flags) -> ExitCode {
    let result = flags.into_config(suite).and_then(|cfg| run_suite(&cfg));
    match &result {
        Ok(report) => match report.checks_csv() {
            Ok(csv) => {
                print!("{csv}");
                println!("{}", if report.passed() { "PASS" } else { "FAIL" });
            }
            Err(e) => eprintln!("error: {e}"),
        },
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}

fn solve(op: &str, dim: Option<usize>, input: &Path, out: &Path) -> Result<(), Error> {
    let f = GridField::read(input)?;
    let dim = dim.unwrap_or(f.spec.dim);
    let op = resolve_operator(op, dim)?;
    let u = solve_scalar(&op, &f)?;
    u.write(out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { suite, flags } => run(&suite, flags),
        Command::List => {
            print!("{}", list_catalog());
            ExitCode::SUCCESS
        }
        Command::HarmonicDim(flags) => run("harmonic-dim", flags),
        Command::CzSurvey(flags) => run("cz-survey", flags),
        Command::FinitePart(flags) => run("finite-part", flags),
        Command::KelvinSolve(flags) => run("kelvin", flags),
        Command::Solve { op, dim, input, out } => match solve(&op, dim, &input, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(error_exit_code(&e) as u8)
            }
        },
    }
}
