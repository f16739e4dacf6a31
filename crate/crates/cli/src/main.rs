use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use puresplit::filtration::{
    analyze, north_fork_degrees, predict_quotient_betti, truncate, AnalysisOptions, Verdict,
};
use puresplit::monotonicity::{
    check_monotonicity, interpolating_chain, strand_ratio, sweep_verify,
};
use puresplit::semigroup::{
    diagram_to_triplet, enumerate_members, generators, is_in_bmod, triplet_to_diagram,
};
use puresplit::sparse::{find_obstructed_ray, sparse_ray};
use puresplit::{
    bs_decompose_in, pure_diagram, smallest_integral_point, BettiDiagram, DegreeSequence, Error,
    Triplet, Units,
};
use serde_json::json;

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_IN_CONE: u8 = 2;
const EXIT_OBSTRUCTION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

/// Exact Boij-Söderberg computations on Betti diagrams.
///
/// Diagrams are read from FILE, or standard input when FILE is omitted or
/// `-`, in the text layout (rows j - i, `-` for zero) or as JSON.
#[derive(Parser)]
#[command(name = "puresplit", version)]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct DiagramInput {
    /// Diagram file; standard input if omitted or `-`.
    file: Option<PathBuf>,

    /// Number of variables; defaults to the number of columns minus one.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(clap::Args)]
struct Hypotheses {
    /// Skip the n >= 2 and finite-length checks.
    #[arg(long)]
    no_hypotheses: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The pure diagram pi_d.
    Pure { sequence: DegreeSequence },
    /// The smallest integral point pi~_d on the ray of pi_d.
    IntegralPoint { sequence: DegreeSequence },
    /// Boij-Söderberg decomposition along the top strand.
    Decompose {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value = "pitilde")]
        units: Units,
    },
    /// Separation, splitting and integrality analysis of the decomposition.
    CheckSplit {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        hypotheses: Hypotheses,
    },
    /// North-fork cutoffs and the truncated diagram.
    NorthFork {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Predicted diagram of the cokernel of the North fork's first map.
    QuotientPredict {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        hypotheses: Hypotheses,
        /// Use the longest prefix sharing d_1 instead of the first step.
        #[arg(long)]
        extended_hypotheses: bool,
    },
    /// Strand-ratio monotonicity: check a pair, or sweep a window.
    Monotonicity {
        /// Sweep all pairs with entries in [0, MAX_DEGREE] and n variables.
        #[arg(long, num_args = 2, value_names = ["MAX_DEGREE", "N"], conflicts_with_all = ["d", "e"])]
        sweep: Option<Vec<i64>>,
        /// Strand index i.
        #[arg(long)]
        index: Option<usize>,
        /// Print an interpolating chain from d to e.
        #[arg(long)]
        chain: bool,
        #[arg(requires = "e")]
        d: Option<DegreeSequence>,
        e: Option<DegreeSequence>,
    },
    /// The semigroup of module diagrams on the (0,1,2,4) < (0,1,3,4) < (0,2,3,4) simplex.
    Semigroup {
        #[command(subcommand)]
        command: SemigroupCommand,
    },
    /// A certified sparse ray for a prime p.
    SparseRay {
        p: u64,
        /// Search two-step rays with top degree up to this bound instead.
        #[arg(long)]
        search: Option<i64>,
    },
}

#[derive(Subcommand)]
enum SemigroupCommand {
    /// Membership of the triplet (r, s, t).
    Check { r: u32, s: u32, t: u32 },
    /// The ten minimal generators and their diagrams.
    Generators,
    /// Classifier versus generator search for all triplets up to a bound.
    Enumerate {
        #[arg(long)]
        bound: u32,
    },
    /// The triplet of a diagram supported on the simplex.
    Triplet {
        #[command(flatten)]
        input: DiagramInput,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotInCone { .. } | Error::NonNegativityViolation { .. } => EXIT_NOT_IN_CONE,
            Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INPUT,
        };
        let mut message = e.to_string();
        if let Error::NotInCone { remainder, .. } = &e {
            message.push_str(&format!("\nremainder:\n{remainder}"));
        }
        Failure { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_diagram(input: &DiagramInput) -> Result<BettiDiagram, Failure> {
    let text = match &input.file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", p.display()),
        })?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(BettiDiagram::parse_any(&text, input.n)?)
}

fn options(h: &Hypotheses, extended: bool) -> AnalysisOptions {
    AnalysisOptions {
        enforce_hypotheses: !h.no_hypotheses,
        extended_hypotheses: extended,
    }
}

fn show_diagram(d: &BettiDiagram, json: bool) -> Result<(), Failure> {
    if json {
        println!("{}", d.to_json());
    } else {
        print!("{}", d.to_text()?);
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Pure { sequence } => show_diagram(&pure_diagram(&sequence)?, json).map(|_| 0),
        Command::IntegralPoint { sequence } => {
            show_diagram(&smallest_integral_point(&sequence)?, json).map(|_| 0)
        }
        Command::Decompose { input, units } => {
            let chain = bs_decompose_in(&read_diagram(&input)?, units)?;
            if json {
                println!("{}", chain.to_json());
            } else {
                print!("{chain}");
            }
            Ok(0)
        }
        Command::CheckSplit { input, hypotheses } => {
            let report = analyze(&read_diagram(&input)?, options(&hypotheses, false))?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(match report.verdict {
                Verdict::DirectSumCertified | Verdict::CleanFiltrationCertified => 0,
                Verdict::ObstructionFound { .. } => EXIT_OBSTRUCTION,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::NorthFork { input } => {
            let d = read_diagram(&input)?;
            let f = north_fork_degrees(&d)?;
            let t = truncate(&d, &f);
            let cutoffs: Vec<String> = f.iter().map(|c| c.to_string()).collect();
            if json {
                println!("{}", json!({ "cutoffs": cutoffs, "truncation": t }));
            } else {
                println!("cutoffs: ({})", cutoffs.join(","));
                println!("truncation:");
                print!("{}", t.to_text()?);
            }
            Ok(0)
        }
        Command::QuotientPredict {
            input,
            hypotheses,
            extended_hypotheses,
        } => {
            let d = read_diagram(&input)?;
            let q = predict_quotient_betti(&d, options(&hypotheses, extended_hypotheses))?;
            show_diagram(&q, json).map(|_| 0)
        }
        Command::Monotonicity {
            sweep,
            index,
            chain,
            d,
            e,
        } => match (sweep, d, e) {
            (Some(w), _, _) => {
                let n = usize::try_from(w[1]).map_err(|_| Failure {
                    code: EXIT_INPUT,
                    message: format!("n must be non-negative, got {}", w[1]),
                })?;
                let report = sweep_verify(w[0], n, index);
                if json {
                    println!("{}", serde_json::to_string(&report).expect("serializable"));
                } else {
                    print!("{report}");
                }
                Ok(if report.passed() { 0 } else { EXIT_OBSTRUCTION })
            }
            (None, Some(d), Some(e)) => {
                let i = index.ok_or_else(|| Failure {
                    code: EXIT_INPUT,
                    message: "a pair check needs --index".into(),
                })?;
                let holds = check_monotonicity(&d, &e, i)?;
                let (rd, re) = (strand_ratio(&d, i)?, strand_ratio(&e, i)?);
                let path = if chain {
                    Some(interpolating_chain(&d, &e, i)?)
                } else {
                    None
                };
                if json {
                    let path: Option<Vec<String>> =
                        path.map(|p| p.iter().map(|s| s.to_string()).collect());
                    println!(
                        "{}",
                        json!({
                            "i": i,
                            "ratio_d": rd.to_string(),
                            "ratio_e": re.to_string(),
                            "strictly_increasing": holds,
                            "chain": path,
                        })
                    );
                } else {
                    println!("ratio at {d}: {rd}");
                    println!("ratio at {e}: {re}");
                    println!("strictly increasing: {}", if holds { "yes" } else { "no" });
                    if let Some(p) = path {
                        println!("chain:");
                        for s in p {
                            println!("  {s}");
                        }
                    }
                }
                Ok(if holds { 0 } else { EXIT_OBSTRUCTION })
            }
            _ => Err(Failure {
                code: EXIT_INPUT,
                message: "give either --sweep MAX_DEGREE N or two degree sequences".into(),
            }),
        },
        Command::Semigroup { command } => semigroup(command, json),
        Command::SparseRay { p, search } => {
            let cert = match search {
                Some(window) => find_obstructed_ray(p, window)?.ok_or_else(|| Failure {
                    code: EXIT_INCONCLUSIVE,
                    message: format!("no ray for p = {p} with top degree up to {window}"),
                })?,
                None => sparse_ray(p)?,
            };
            println!("{}", cert.to_json());
            if !json {
                print!("{}", cert.diagram.to_text()?);
            }
            Ok(0)
        }
    }
}

fn semigroup(command: SemigroupCommand, json: bool) -> Outcome {
    match command {
        SemigroupCommand::Check { r, s, t } => {
            let q = Triplet::new(r, s, t);
            let result = is_in_bmod(q)?;
            if json {
                println!(
                    "{}",
                    json!({ "triplet": q, "diagram": triplet_to_diagram(q), "result": result })
                );
            } else {
                println!("{q}");
                print!("{}", triplet_to_diagram(q).to_text()?);
                println!("{result}");
            }
            Ok(if result.is_member() {
                0
            } else {
                EXIT_OBSTRUCTION
            })
        }
        SemigroupCommand::Generators => {
            let gens = generators();
            if json {
                let items: Vec<_> = gens
                    .iter()
                    .map(|(g, d)| json!({ "triplet": g, "diagram": d }))
                    .collect();
                println!("{}", serde_json::Value::Array(items));
            } else {
                for (k, (g, d)) in gens.iter().enumerate() {
                    if k > 0 {
                        println!();
                    }
                    println!("{g}");
                    print!("{}", d.to_text()?);
                }
            }
            Ok(0)
        }
        SemigroupCommand::Enumerate { bound } => {
            let report = enumerate_members(bound);
            if json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                print!("{report}");
            }
            Ok(if report.agrees() { 0 } else { EXIT_OBSTRUCTION })
        }
        SemigroupCommand::Triplet { input } => {
            let q = diagram_to_triplet(&read_diagram(&input)?)?;
            if json {
                println!("{}", json!({ "triplet": q }));
            } else {
                println!("{q}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
