use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use syzchain::cli::{error_json, execute, hint, Command, Format, RunConfig, Suite, DEFAULT_PRIME};
use syzchain::resolver::{Mode, VPolicy};

#[derive(Parser)]
#[command(
    name = "syzchain",
    version,
    about = "Evaluation-kernel resolutions of ideal sheaves on P^2 and P^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Characteristic of the coefficient field.
    #[arg(long, global = true, env = "SYZCHAIN_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    /// Timing on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the chain of kernels for a subscheme and check its identities.
    Resolve(ResolveArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: SuiteCmd,
    },
    /// Invariants of Butler's kernel bundle M_E on a curve.
    Butler {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
    },
}

#[derive(Args)]
struct ResolveArgs {
    /// One of three-points, one-point, empty, collinear-points, line-p3, twisted-cubic.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Subscheme input file.
    #[arg(long)]
    input: Option<String>,
    /// Ambient dimension (for `empty`, or to check an input file).
    #[arg(long)]
    n: Option<usize>,
    /// Polarization H = d·L.
    #[arg(long)]
    d: Option<u32>,
    /// Stage-0 twist; the smallest admissible one by default.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value = "numeric")]
    mode: String,
    /// curve | full | explicit:K
    #[arg(long, default_value = "curve")]
    policy: String,
    /// Run the Hoppe stability check on surface kernels.
    #[arg(long)]
    hoppe: bool,
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Chern class and character identities on random data.
    Whitney {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Generation by random subspaces of sections of O(1)^r on P^n.
    Genericity {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Integral combination of c2 classes giving H^2.
    Bezout {
        #[arg(long, allow_negative_numbers = true)]
        m1: i64,
        #[arg(long, allow_negative_numbers = true)]
        m2: i64,
    },
    /// Invariants of M_(p,m) over sampled points of P^2.
    Uniformity {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

fn config(cli: Cli) -> syzchain::Result<RunConfig> {
    let command = match cli.command {
        Cmd::Resolve(a) => Command::Resolve {
            builtin: a.builtin,
            input: a.input,
            n: a.n,
            d: a.d,
            m: a.m,
            mode: a.mode.parse::<Mode>()?,
            policy: a.policy.parse::<VPolicy>()?,
            hoppe: a.hoppe,
        },
        Cmd::Verify { suite } => Command::Verify(match suite {
            SuiteCmd::Whitney { trials } => Suite::Whitney { trials },
            SuiteCmd::Genericity { r, n, v, trials } => Suite::Genericity { r, n, v, trials },
            SuiteCmd::Bezout { m1, m2 } => Suite::Bezout { m1, m2 },
            SuiteCmd::Uniformity { d, m, trials } => Suite::Uniformity { d, m, points: trials },
        }),
        Cmd::Butler { g, r, deg } => Command::Butler { g, r, deg },
    };
    Ok(RunConfig {
        command,
        prime: cli.prime,
        seed: cli.seed,
        format: match cli.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        verbosity: cli.verbose,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    let start = Instant::now();
    let verbose = cli.verbose;
    let result = config(cli).and_then(|cfg| execute(&cfg));
    if verbose > 0 {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            print!("{}", out.render(format));
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            if let Some(h) = hint(&e) {
                eprintln!("hint: {h}");
            }
            if let Format::Json = format {
                println!("{}", serde_json::to_string_pretty(&error_json(&e)).unwrap());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
