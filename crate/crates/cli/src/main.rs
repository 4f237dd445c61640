use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Rendered;

#[derive(Parser)]
#[command(
    name = "rconf",
    version,
    about = "Exact cohomology tables for the derived conformal algebra of A^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Index {
    Theorem,
    Bundle,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run brute-force cross-checks.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bott's algorithm for O_F(a); the weight defaults to that of S^d(G)(b).
    Bott {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<i64>,
        /// Explicit weight, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology of S^d(G)(b) on P(M), or of S^d(G)(1) restricted to Q.
    Sheaf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        b: i64,
        /// Restrict to the quadric instead.
        #[arg(long)]
        quadric: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Cech cohomology of punctured A^n in the box [-box, box]^n.
    Cech {
        #[arg(long)]
        n: usize,
        #[arg(long = "box", default_value_t = 1)]
        bound: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel and cokernel of the vertical Young multiplication y_(d,q).
    Ydq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Conformal Killing fields by degree and the so(n+2) check.
    Killing {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Graded H^0 and H^1 table.
    Reconf {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        #[arg(long, value_enum, default_value = "theorem")]
        index: Index,
        #[command(flatten)]
        common: Common,
    },
    /// Graded dimensions across n.
    Continuity {
        /// Values of n, comma separated, within 2..=6.
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5, 6])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suite.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn configure_threads() {
    if let Some(k) = std::env::var("LIOUVILLE_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
    {
        // a second initialization only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    let (common, result) = match &cli.command {
        Command::Bott {
            n,
            d,
            b,
            weight,
            common,
        } => (common, commands::bott(*n, *d, *b, weight.as_deref())),
        Command::Sheaf {
            n,
            d,
            b,
            quadric,
            common,
        } => (common, commands::sheaf(*n, *d, *b, *quadric)),
        Command::Cech { n, bound, common } => (common, commands::cech(*n, *bound, common.oracle)),
        Command::Ydq { n, d, common } => {
            (common, commands::ydq(*n, *d, common.oracle, common.seed))
        }
        Command::Killing { n, dmax, common } => {
            (common, commands::killing(*n, *dmax, common.oracle))
        }
        Command::Reconf {
            n,
            dmax,
            index,
            common,
        } => (common, commands::reconf(*n, *dmax, *index)),
        Command::Continuity { n, dmax, common } => (common, commands::continuity(n, *dmax)),
        Command::Selftest { common } => (common, commands::selftest(common.seed)),
    };
    match result {
        Ok(out) => {
            print!("{}", out.render(common.format));
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_integrity() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

impl Rendered {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.tsv.clone(),
            Format::Pretty => self.pretty.clone(),
        }
    }
}
