//! Batch calculator for virtual and welded braid words.
//!
//! Exit status: 0 on success, 1 when a verification fails or a search is
//! inconclusive, 2 on usage or input errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vbraid::braiding::braid_from_gauss;
use vbraid::gauss::{gauss_of_closure, GaussData};
use vbraid::invariant::q_invariant_workers;
use vbraid::moves::{apply_step, verify_witness_in, MoveSet, MoveStep, Witness};
use vbraid::search::{equiv_search, SearchLimits};
use vbraid::weights::WeightTable;
use vbraid::word::BraidWord;

const WORD_GRAMMAR: &str = "\
Braid words are single lines: a header `degree <m>;` followed by whitespace-
separated letters `s<i>` (a positive crossing of strands i and i+1), `S<i>`
(its inverse) and `t<i>` (a virtual crossing), each with 1 <= i <= m-1.
Example: `degree 3; t1 S1 S2 t1 s1 s2`.";

const GAUSS_GRAMMAR: &str = "\
Gauss data files are line oriented (`#` starts a comment):
  crossing <id> <+|->          one real crossing with its sign
  arc <id>.<3|4> -> <id>.<1|2> a directed arc from an exit to an entry corner
  loops <k>                    number of components with no real crossing
Corners: 1/2 = incoming left/right, 3/4 = outgoing left/right; the strands
pass through a crossing as 1->4 and 2->3.";

const WITNESS_GRAMMAR: &str = "\
Witness logs are line oriented: `start <word>`, one move per line, then
`end <word>`. Moves:
  vm0 <relation> @<pos> <ltr|rtl>   a defining-relation rewrite
  vm1 <word>                        conjugation by the given word
  vm2 <pos|neg|virt> <stab|destab>  right (de)stabilization
  left-stab <pos|neg|virt> <stab|destab>
  vm3 <left|right> <sigma-to-tau|tau-to-sigma>";

#[derive(Parser)]
#[command(
    name = "vbraid",
    version,
    about = "Exact calculus for virtual and welded braids",
    after_long_help = format!("{WORD_GRAMMAR}\n\n{GAUSS_GRAMMAR}\n\n{WITNESS_GRAMMAR}")
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Input file; `-` or absent reads standard input
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce each braid word line
    #[command(after_long_help = WORD_GRAMMAR)]
    Normalize(InputArg),
    /// Print the strand permutation of each word as the image of 1..m
    #[command(after_long_help = WORD_GRAMMAR)]
    Perm(InputArg),
    /// Print the writhe (positive minus negative crossings) of each word
    #[command(after_long_help = WORD_GRAMMAR)]
    Writhe(InputArg),
    /// Print the Gauss data of the closure of each word
    #[command(after_long_help = GAUSS_GRAMMAR)]
    Gauss(InputArg),
    /// Convert a Gauss data file into a braid word realizing it
    #[command(after_long_help = GAUSS_GRAMMAR)]
    Braid(InputArg),
    /// Evaluate the state-sum invariant of each word's closure
    Q(QArgs),
    /// Apply one serialized move step to each word
    #[command(name = "move", after_long_help = WITNESS_GRAMMAR)]
    Move(MoveArgs),
    /// Search for a move sequence connecting two words
    Equiv(EquivArgs),
    /// Replay a witness log and check every step
    #[command(name = "witness-verify", after_long_help = WITNESS_GRAMMAR)]
    WitnessVerify(VerifyArgs),
}

#[derive(Args)]
struct QArgs {
    /// Number of labels per arc
    #[arg(long = "N")]
    n: u32,
    /// Table parameter alpha (metadata for the built-in table)
    #[arg(long, default_value_t = 0)]
    alpha: i64,
    /// Load the weight table from a file instead of the built-in one
    #[arg(long)]
    table: Option<PathBuf>,
    /// Worker threads for state enumeration
    #[arg(long, default_value_t = 1)]
    workers: usize,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct MoveArgs {
    /// The move to apply, e.g. `vm2 virt stab` or `vm0 tau-yb i=1 @0 ltr`
    #[arg(long)]
    step: String,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct EquivArgs {
    /// Move vocabulary: vb (VM0-VM3), vb-strict (VM0-VM2), wb (WM0-WM2)
    #[arg(long, default_value = "vb", value_parser = ["vb", "vb-strict", "wb"])]
    flavor: String,
    #[arg(long = "max-degree", default_value_t = 5)]
    max_degree: usize,
    #[arg(long = "max-length", default_value_t = 12)]
    max_length: usize,
    #[arg(long = "max-depth", default_value_t = 8)]
    max_depth: usize,
    /// File with the two words to connect, one per line
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Move vocabulary to replay under
    #[arg(long, default_value = "vb", value_parser = ["vb", "vb-strict", "wb", "wb-star"])]
    flavor: String,
    input: Option<PathBuf>,
}

enum CliError {
    /// exit 2: bad usage or unparseable input
    Input(String),
    /// exit 1 with a message: failed verification
    Failed(String),
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        CliError::Input(message)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

/// Nonempty, non-comment lines.
fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_words(text: &str) -> Result<Vec<BraidWord>, CliError> {
    data_lines(text)
        .map(|line| {
            line.parse::<BraidWord>()
                .map_err(|e| CliError::Input(format!("`{line}`: {e}")))
        })
        .collect()
}

fn for_each_word(
    input: &Option<PathBuf>,
    mut f: impl FnMut(&BraidWord) -> Result<String, CliError>,
) -> Result<(), CliError> {
    let text = read_input(input)?;
    let words = parse_words(&text)?;
    if words.is_empty() {
        return Err(CliError::Input("no braid word in input".into()));
    }
    for word in &words {
        println!("{}", f(word)?);
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Normalize(args) => for_each_word(&args.input, |w| Ok(w.free_reduce().to_string())),
        Command::Perm(args) => for_each_word(&args.input, |w| Ok(w.permutation().to_string())),
        Command::Writhe(args) => for_each_word(&args.input, |w| Ok(w.writhe().to_string())),
        Command::Gauss(args) => {
            let text = read_input(&args.input)?;
            let words = parse_words(&text)?;
            if words.is_empty() {
                return Err(CliError::Input("no braid word in input".into()));
            }
            let blocks: Vec<String> = words
                .iter()
                .map(|w| gauss_of_closure(w).to_string())
                .collect();
            println!("{}", blocks.join("\n\n"));
            Ok(())
        }
        Command::Braid(args) => {
            let text = read_input(&args.input)?;
            let gauss: GaussData = text
                .parse()
                .map_err(|e| CliError::Input(format!("gauss data: {e}")))?;
            let word = braid_from_gauss(&gauss).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{word}");
            Ok(())
        }
        Command::Q(args) => {
            let table = match &args.table {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        CliError::Input(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let table: WeightTable = text
                        .parse()
                        .map_err(|e| CliError::Input(format!("weight table: {e}")))?;
                    if table.n() != args.n {
                        return Err(CliError::Input(format!(
                            "table has N={}, requested N={}",
                            table.n(),
                            args.n
                        )));
                    }
                    table
                }
                None => WeightTable::standard(args.n, args.alpha)
                    .map_err(|e| CliError::Input(e.to_string()))?,
            };
            let workers = args.workers.max(1);
            for_each_word(&args.input, |w| {
                q_invariant_workers(w, &table, workers)
                    .map(|p| p.to_string())
                    .map_err(|e| CliError::Input(e.to_string()))
            })
        }
        Command::Move(args) => {
            let step: MoveStep = args
                .step
                .parse()
                .map_err(|e: vbraid::moves::ParseStepError| CliError::Input(e.to_string()))?;
            for_each_word(&args.input, |w| {
                apply_step(w, &step)
                    .map(|next| next.to_string())
                    .map_err(|e| CliError::Input(format!("cannot apply `{}`: {e}", args.step)))
            })
        }
        Command::Equiv(args) => {
            let moves: MoveSet = args.flavor.parse().map_err(CliError::Input)?;
            let limits = SearchLimits::new(args.max_degree, args.max_length, args.max_depth)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let text = read_input(&args.input)?;
            let words = parse_words(&text)?;
            let [w1, w2] = words.as_slice() else {
                return Err(CliError::Input(format!(
                    "equiv needs exactly two word lines, found {}",
                    words.len()
                )));
            };
            match equiv_search(w1, w2, moves, limits) {
                Some(witness) => {
                    print!("{}", witness.to_log());
                    Ok(())
                }
                None => {
                    println!("INCONCLUSIVE");
                    Err(CliError::Failed(format!(
                        "no connection found within degree {}, length {}, depth {}",
                        args.max_degree, args.max_length, args.max_depth
                    )))
                }
            }
        }
        Command::WitnessVerify(args) => {
            let moves: MoveSet = args.flavor.parse().map_err(CliError::Input)?;
            let text = read_input(&args.input)?;
            let witness = Witness::from_log(&text)
                .map_err(|e| CliError::Input(format!("witness log: {e}")))?;
            match verify_witness_in(&witness, moves) {
                Ok(()) => {
                    println!("OK");
                    Ok(())
                }
                Err(e) => {
                    println!("FAIL");
                    Err(CliError::Failed(e.to_string()))
                }
            }
        }
    }
}
