use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use wop_core::hurwitz::{build_hhat_series, connected_from_log};
use wop_core::permgroup::classify_tuple;
use wop_core::verify::{self, Bounds, Suite};
use wop_core::wop::apply_operator;
use wop_core::xmatrix::{apply_w_truncated, p_to_x_subst};
use wop_core::{CycleTuple, HurwitzTable, OperatorSpec, PPolynomial, Partition, Permutation};

mod output;

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "wop",
    version,
    about = "Exact W-operators on power sums and generalized Hurwitz numbers"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Cutjoin,
    Delta,
    Beta,
    Group,
    Wmatrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operator to a power-sum polynomial.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        /// Cycle length for delta, group and wmatrix.
        #[arg(long)]
        d: Option<u32>,
        /// Full cycle of S_d as a comma list of its points, e.g. 1,3,2.
        #[arg(long)]
        beta: Option<String>,
        /// Polynomial such as "p1^3 + 1/2*p2*p1".
        #[arg(long)]
        poly: String,
        /// Matrix truncation for wmatrix.
        #[arg(long = "N", default_value_t = 3)]
        big_n: usize,
    },
    /// Tabulate h and ĥ for every α ⊢ n.
    Hurwitz {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Print the coefficients of Ĥ (or H with --connected).
    Series {
        #[arg(long)]
        d: u32,
        #[arg(long = "w-max")]
        w_max: u32,
        #[arg(long = "k-max")]
        k_max: u32,
        #[arg(long)]
        connected: bool,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        #[arg(long = "d-max")]
        d_max: Option<u32>,
        #[arg(long = "w-max")]
        w_max: Option<u32>,
        #[arg(long = "k-max")]
        k_max: Option<u32>,
        #[arg(long = "N")]
        big_n: Option<usize>,
    },
    /// Classify a marked tuple [j_d,...,j_1] relative to α.
    Classify {
        #[arg(long)]
        n: usize,
        /// Permutation in cycle notation, e.g. "(1 2)(3 4)".
        #[arg(long)]
        alpha: String,
        /// Marked points as a comma list.
        #[arg(long)]
        tuple: String,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<wop_core::Error> for Failure {
    fn from(e: wop_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad list `{text}`")))
        })
        .collect()
}

fn operator(op: Op, d: Option<u32>, beta: Option<&str>) -> Result<OperatorSpec, Failure> {
    let need_d = || d.ok_or_else(|| Failure::Usage("--d is required for this operator".into()));
    Ok(match op {
        Op::Cutjoin => OperatorSpec::CutAndJoinClosedForm,
        Op::Delta | Op::Wmatrix => OperatorSpec::delta(need_d()?)?,
        Op::Group => OperatorSpec::group(need_d()?)?,
        Op::Beta => {
            let text =
                beta.ok_or_else(|| Failure::Usage("--beta is required for --op beta".into()))?;
            let points = parse_list(text)?;
            let beta = Permutation::from_cycles(points.len(), &[points])?;
            if d.is_some_and(|d| d as usize != beta.degree()) {
                return Err(Failure::Usage(
                    "--beta must be a cycle of length --d".into(),
                ));
            }
            OperatorSpec::delta_beta(beta)?
        }
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Apply {
            op,
            d,
            beta,
            poly,
            big_n,
        } => {
            let f: PPolynomial = poly.parse()?;
            let op_spec = operator(op, d, beta.as_deref())?;
            if op == Op::Wmatrix {
                if big_n == 0 {
                    return Err(Failure::Usage("--N must be positive".into()));
                }
                let image = apply_w_truncated(d.unwrap_or(1) as usize, &p_to_x_subst(&f, big_n));
                return Ok(output::xpolynomial(&image, format));
            }
            Ok(output::polynomial(&apply_operator(&op_spec, &f)?, format))
        }
        Command::Hurwitz { d, n, k } => {
            if d < 2 || d > n {
                return Err(Failure::Usage(format!(
                    "need 2 <= d <= n, got d={d}, n={n}"
                )));
            }
            Ok(output::hurwitz(&HurwitzTable::compute(n, d, k), format))
        }
        Command::Series {
            d,
            w_max,
            k_max,
            connected,
        } => {
            let mut s = build_hhat_series(d, w_max, k_max)?;
            if connected {
                s = connected_from_log(&s)?;
            }
            Ok(output::series(&s, format))
        }
        Command::Verify {
            suite,
            n_max,
            d_max,
            w_max,
            k_max,
            big_n,
        } => {
            let suite: Suite = suite.parse()?;
            let bounds = Bounds {
                n_max,
                d_max,
                w_max,
                k_max,
                big_n,
            };
            let reports = verify::run(suite, &bounds);
            let text = output::reports(&reports, format);
            if reports.iter().all(|r| r.passed()) {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verification)
            }
        }
        Command::Classify { n, alpha, tuple } => {
            let alpha = Permutation::parse(n, &alpha)?;
            let tuple = CycleTuple::new(n, parse_list(&tuple)?)?;
            let class = classify_tuple(&alpha, &tuple)?;
            let image: Partition = tuple.to_cycle().compose(&alpha)?.cycle_type();
            Ok(output::classification(&tuple, &class, &image, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
    }
}
