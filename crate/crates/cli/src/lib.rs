//! Command-line front end for the verification library.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod ledger;
pub mod report;
pub mod suite;

pub use report::{write_reports, Check, Format, Report};

#[derive(Parser, Debug)]
#[command(name = "weilcheck", version, about = "Exact checks for Weil representations, Witt classes over Z/4 and symplectic coinvariants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quadratic Gauss sum G(u, v), closed formula against brute force.
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        u: i64,
        #[arg(long)]
        v: u64,
    },
    /// Jacobi symbol (p/q) for odd positive q.
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Order of the central element in the level-p quantum representation.
    CenterOrder {
        #[arg(long)]
        p: u64,
    },
    /// Is the matrix in Sp(2g, Z/nZ)?
    SpCheck {
        /// Matrix as "a,b;c,d" or @file.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Reduce modulo n (omit for an integer check).
        #[arg(long)]
        n: Option<u64>,
    },
    /// Is the integer symplectic matrix in the theta group?
    ThetaCheck {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Order of the group generated by the Humphries transvections mod n.
    GroupOrder {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = weilcheck::symplectic::DEFAULT_BFS_CAP)]
        cap: u64,
    },
    /// The chain-relation defect μ at even level k.
    ChainDefect {
        #[arg(long)]
        k: u64,
    },
    /// Braid and commutation relations among the normalized lifts.
    BraidCheck {
        #[arg(long)]
        k: u64,
    },
    /// Trace of S² on functions on (Z/kZ)^g.
    S2Trace {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: u64,
    },
    /// Cocycle η with ρ(w1)ρ(w2) = η·ρ(w12).
    Cocycle {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        /// A word for the product; by default a seeded random rewrite of w1·w2.
        #[arg(long, allow_hyphen_values = true)]
        w12: Option<String>,
    },
    /// Multiplier system ζ_γ by the genus-1 case formulas and by Gauss sums.
    Multiplier {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Dimension of the coinvariants of sp_2g(p) or its exterior square.
    Coinv {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        deg: u8,
    },
    /// Whether n11 ^ n22 survives in the F_2 coinvariants.
    ClassN11n22 {
        #[arg(long)]
        g: usize,
    },
    /// Dimensions of invariant (and alternating invariant) forms on M_n(F_p).
    InvariantBilinear {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Bilinear forms over Z/4Z.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Run a group of acceptance checks.
    Suite {
        #[arg(value_enum)]
        name: suite::SuiteName,
    },
}

#[derive(Subcommand, Debug)]
enum WittCommand {
    /// Witt class, split test, discriminant and decomposition.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    /// Split test.
    Split {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    /// Orthogonal sum of two forms.
    Sum {
        /// Given twice, once per summand.
        #[arg(long, allow_hyphen_values = true, required = true)]
        gram: Vec<String>,
    },
    /// Class of the triple (L; q0, q1).
    Vclass {
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
    },
}

fn dispatch(cmd: Command, seed: u64) -> weilcheck::Result<Vec<Report>> {
    use commands as c;
    let one = |r: weilcheck::Result<Report>| r.map(|r| vec![r]);
    match cmd {
        Command::Gauss { u, v } => one(c::gauss(u, v, seed)),
        Command::Jacobi { p, q } => one(c::jacobi(p, q, seed)),
        Command::CenterOrder { p } => one(c::center_order(p, seed)),
        Command::SpCheck { matrix, n } => one(c::sp_check(&matrix, n, seed)),
        Command::ThetaCheck { matrix } => one(c::theta_check(&matrix, seed)),
        Command::GroupOrder { g, n, cap } => one(c::group_order(g, n, cap, seed)),
        Command::ChainDefect { k } => one(c::chain_defect(k, seed)),
        Command::BraidCheck { k } => one(c::braid_check(k, seed)),
        Command::S2Trace { g, k } => one(c::s2_trace(g, k, seed)),
        Command::Cocycle { g, k, w1, w2, w12 } => one(c::cocycle(g, k, &w1, &w2, w12.as_deref(), seed)),
        Command::Multiplier { matrix } => one(c::multiplier(&matrix, seed)),
        Command::Coinv { g, p, deg } => one(c::coinv(g, p, deg, seed)),
        Command::ClassN11n22 { g } => one(c::class_n11n22(g, seed)),
        Command::InvariantBilinear { n, p } => one(c::invariant_bilinear(n, p, seed)),
        Command::Witt(w) => one(match w {
            WittCommand::Classify { gram } => c::witt_classify(&gram, seed),
            WittCommand::Split { gram } => c::witt_split(&gram, seed),
            WittCommand::Sum { gram } => match gram.as_slice() {
                [a, b] => c::witt_sum(a, b, seed),
                _ => Err(weilcheck::Error::InvalidArgument("witt sum takes exactly two --gram values".into())),
            },
            WittCommand::Vclass { q0, q1 } => c::witt_vclass(&q0, &q1, seed),
        }),
        Command::Suite { name } => suite::run(name, seed),
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the reports to `out`. Returns the exit code: 0 if every check passes, 1 if
/// any fails, 2 on usage or input errors.
pub fn run<I, T, O, E>(argv: I, out: &mut O, err: &mut E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let start = Instant::now();
    let is_suite = matches!(cli.command, Command::Suite { .. });
    let reports = match dispatch(cli.command, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let reports: Vec<Report> = if is_suite {
        reports
    } else {
        let ms = start.elapsed().as_millis() as u64;
        reports.into_iter().map(|r| Report { runtime_ms: ms, ..r }).collect()
    };
    for r in &reports {
        for c in &r.checks {
            assert!(ledger::describe(&c.name).is_some(), "check {} missing from the ledger", c.name);
        }
    }
    if let Err(e) = write_reports(out, &reports, cli.format).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error writing report: {e}");
        return 2;
    }
    if reports.iter().all(Report::passed) {
        0
    } else {
        1
    }
}
