use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ntl_core::enumerate::EnumerationBudget;
use ntl_core::io::{serialize_report, Report, ReportStats};

mod run;

#[derive(Debug, Parser)]
#[command(name = "ntl", version, about = "Non-abelian tensor products of small groups and the homotopy groups they compute")]
struct Cli {
    /// Print one JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Coset limit for every enumeration.
    #[arg(long, global = true, env = "NTL_MAX_COSETS", value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: Option<u64>,

    /// Wall-clock limit for every enumeration, in milliseconds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_ms: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

/// A group given by catalog name, by name in the `--action` file, or by a
/// path to a file holding a `group` block.
#[derive(Debug, Clone, Args)]
struct GroupArg {
    #[arg(long)]
    group: String,
}

#[derive(Debug, Clone, Args)]
struct PairArgs {
    #[arg(long)]
    group: String,

    /// Second factor; defaults to `--group`.
    #[arg(long)]
    other: Option<String>,

    /// File with the two `action` blocks (and optionally the groups).
    #[arg(long, conflicts_with_all = ["trivial_actions", "conjugation"])]
    action: Option<PathBuf>,

    #[arg(long, conflicts_with = "conjugation")]
    trivial_actions: bool,

    /// Both actions by conjugation; needs the two groups to coincide.
    #[arg(long)]
    conjugation: bool,
}

#[derive(Debug, Clone, Args)]
struct PushoutArgs {
    #[arg(long)]
    group: String,

    /// Generators of M as comma-separated words.
    #[arg(long)]
    m: String,

    /// Generators of N as comma-separated words.
    #[arg(long)]
    n: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    J2,
    Delta,
    DeltaTilde,
    Schur,
    StablePi2,
    Pi4S2,
}

#[derive(Debug, Clone, Subcommand)]
enum Bound {
    /// |pi_n(X)| <= a*b*c*t
    Thma { a: u64, b: u64, c: u64, t: u64 },
    /// |pi_3(SX)| <= a*t
    Thmb { a: u64, t: u64 },
    /// |pi_3(X)| <= n_a*n_b*t for a homotopy pushout
    Pushout { na: u64, nb: u64, t: u64 },
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// The tensor product G (x) H, realized as [G,H^phi].
    Tensor(PairArgs),
    /// The group nu(G).
    Nu(GroupArg),
    /// The group eta(G,H).
    Eta(PairArgs),
    /// The set of tensors [a,b^phi] and its size m.
    Tensors(PairArgs),
    /// J2, Delta, Delta~, H2 or J2/Delta~ of G.
    Invariant {
        #[arg(value_enum)]
        which: Invariant,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Triad group pi_{p+q+1}(X;A,B) from the relative groups and actions.
    Triad {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
    },
    /// pi_3(K(A,2) v K(B,2)) for abelian A and B.
    Wedge {
        #[arg(long)]
        group: String,
        #[arg(long)]
        other: String,
    },
    /// pi_2 and pi_3 of the pushout of K(G/M,1) <- K(G,1) -> K(G/N,1).
    Pushout(PushoutArgs),
    /// Whether that pushout is 3-connected.
    ThreeConnected(PushoutArgs),
    /// The seven equivalent finiteness properties.
    Thmc(GroupArg),
    /// Finiteness status, G^ab, |G'|, m, |[G,G^phi]| and Delta(G).
    Finiteness(GroupArg),
    /// Order bounds assembled from exact sequences.
    Bound {
        #[command(subcommand)]
        which: Bound,
    },
    /// Exponent of [G,G^phi] against the bounded-exponent cases 2, 3, 4, 6.
    ExponentCheck(GroupArg),
    /// Runs the self-checks over the catalog corpus or the given groups.
    Verify {
        /// Restrict to these groups.
        #[arg(long)]
        group: Vec<String>,
        /// Restrict to the groups in this file.
        #[arg(long, conflicts_with = "group")]
        file: Option<PathBuf>,
        #[arg(long, hide = true)]
        skip_eta_relators: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut budget = EnumerationBudget::default();
    if let Some(n) = cli.max_cosets {
        budget.max_cosets = usize::try_from(n).unwrap_or(usize::MAX);
    }
    budget.max_time_ms = cli.budget_ms;

    let start = Instant::now();
    match run::dispatch(&cli.command, budget) {
        Ok(out) => {
            let elapsed_ms = start.elapsed().as_millis() as u64;
            if cli.json {
                match out.body {
                    run::Body::Report {
                        result,
                        chain,
                        details,
                    } => {
                        let report = Report {
                            query: out.query,
                            result,
                            chain,
                            details,
                            stats: ReportStats {
                                cosets_defined: out.cosets_defined as u64,
                                elapsed_ms,
                            },
                        };
                        println!("{}", serialize_report(&report));
                    }
                    run::Body::Raw(mut v) => {
                        v["query"] = out.query;
                        println!("{}", serde_json::to_string(&v).expect("value is serializable"));
                    }
                }
            } else {
                for line in &out.text {
                    println!("{line}");
                }
                println!("({} cosets defined, {elapsed_ms} ms)", out.cosets_defined);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let usage = matches!(e, ntl_core::Error::Usage(_));
            if cli.json {
                let v = serde_json::json!({"error": {"code": e.code(), "message": e.to_string()}});
                println!("{}", serde_json::to_string(&v).expect("value is serializable"));
            }
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
