use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use signinv_core::det::{det_harary, det_oracle};
use signinv_core::format::{format_edge_list, parse_edge_list, InverseDocument, ReduceDocument};
use signinv_core::graph::MAX_ENUMERATION_VERTICES;
use signinv_core::inverse::inverse_graph;
use signinv_core::structure::k2_reduce;
use signinv_core::{classify, families, BarbellSpec, Error, Graph, ThetaSpec};

mod verify;

const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_SINGULAR: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "signinv", version, about = "Exact graph determinants, inverses and sign-invertibility")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print det A(G).
    Det {
        /// Edge-list file; stdin when omitted or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Print A(G)^-1 from feasible paths.
    Inverse {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classify invertibility and sign-invertibility.
    Classify { input: Option<PathBuf> },
    /// Print the K2-reduction trace.
    Reduce { input: Option<PathBuf> },
    /// Print a family member as an edge list.
    #[command(after_help = "Labelings:\n  \
        cycle N            vertices 0..N around the cycle\n  \
        path N             vertices 0..N in order\n  \
        theta A B C        central vertices 0 and 1, then path interiors by increasing length\n  \
        barbell A B T      first cycle 0..A (junction A-1), central path interior, second cycle\n  \
        net                triangle 0,1,2 with leaves 3,4,5\n  \
        pegged-cycle N V.. C_N with a leaf at each listed vertex\n  \
        crab-candidate A B C U V   theta A B C with leaves at U and V")]
    Gen {
        #[arg(value_enum)]
        family: Family,
        params: Vec<usize>,
    },
    /// Cross-check the engines on generated graphs.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Harary,
    Oracle,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Edges,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Cycle,
    Path,
    Theta,
    Barbell,
    Net,
    PeggedCycle,
    CrabCandidate,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular => Failure { code: EXIT_SINGULAR, message: "singular: det=0".into() },
            other => Failure::input(other.to_string()),
        }
    }
}

fn read_graph(input: &Option<PathBuf>) -> Result<Graph, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("stdin: {e}")))?;
            s
        }
    };
    let g = parse_edge_list(&text)?;
    if g.vertex_count() > MAX_ENUMERATION_VERTICES {
        return Err(Failure::input(format!(
            "{} vertices exceed the supported maximum of {MAX_ENUMERATION_VERTICES}",
            g.vertex_count()
        )));
    }
    Ok(g)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn generate(family: Family, p: &[usize]) -> Result<Graph, Failure> {
    let arity = |k: usize| {
        if p.len() == k {
            Ok(())
        } else {
            Err(Failure::input(format!("{family:?} takes {k} parameters, got {}", p.len())))
        }
    };
    let g = match family {
        Family::Cycle => {
            arity(1)?;
            if p[0] < 3 {
                return Err(Failure::input("cycle needs at least 3 vertices"));
            }
            families::cycle(p[0])
        }
        Family::Path => {
            arity(1)?;
            families::path(p[0])
        }
        Family::Theta => {
            arity(3)?;
            families::theta(&ThetaSpec::new(p[0], p[1], p[2])?)
        }
        Family::Barbell => {
            arity(3)?;
            families::barbell(&BarbellSpec::new(p[0], p[1], p[2])?)
        }
        Family::Net => {
            arity(0)?;
            families::net()
        }
        Family::PeggedCycle => {
            let (&n, at) =
                p.split_first().ok_or_else(|| Failure::input("pegged-cycle needs N and attachment vertices"))?;
            families::pegged_cycle(n, at)?
        }
        Family::CrabCandidate => {
            arity(5)?;
            let core = families::theta(&ThetaSpec::new(p[0], p[1], p[2])?);
            families::with_pendants(&core, &p[3..5])?
        }
    };
    Ok(g)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Det { input, method } => {
            let g = read_graph(&input)?;
            let det = match method {
                Method::Harary => det_harary(&g),
                Method::Oracle => det_oracle(&g),
                Method::Auto => {
                    let (h, o) = (det_harary(&g), det_oracle(&g));
                    if h != o {
                        return Err(Failure {
                            code: EXIT_MISMATCH,
                            message: format!("method mismatch: harary={h} oracle={o}"),
                        });
                    }
                    h
                }
            };
            Ok(format!("{det}\n"))
        }
        Command::Inverse { input, format } => {
            let g = read_graph(&input)?;
            let inv = inverse_graph(&g)?;
            let doc = InverseDocument::new(&det_harary(&g), &inv);
            Ok(match format {
                Format::Json => json(&doc),
                Format::Edges => doc.to_edge_text(),
            })
        }
        Command::Classify { input } => {
            let g = read_graph(&input)?;
            Ok(json(&classify::classify(&g)))
        }
        Command::Reduce { input } => {
            let g = read_graph(&input)?;
            Ok(json(&ReduceDocument::new(&k2_reduce(&g))))
        }
        Command::Gen { family, params } => Ok(format_edge_list(&generate(family, &params)?)),
        Command::Verify { max_n, samples, seed } => {
            if max_n > 12 {
                return Err(Failure::input("--max-n is limited to 12"));
            }
            let report = verify::run(max_n, samples, seed);
            let text = report.render();
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure { code: EXIT_VERIFY, message: "verification failed".into() })
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("signinv: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
