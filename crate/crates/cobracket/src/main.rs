//! Command-line frontend for the cobracket library.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use cobracket::cli::{batch_lines, latex_sum, parse_word, random_reduced_word, ResultDocument};
use cobracket::{
    coproduct_of_bv, coproduct_on_generator, oracle, turaev_cobracket, CyclicWord, FormalSum,
    Genus, Mode, Normalizer, ReducedWord,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "cobracket", version, about = "String topology coproduct and Turaev cobracket on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Dehn,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Dehn => Mode::Dehn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct WordInput {
    /// Surface genus (>= 2)
    #[arg(long)]
    genus: u32,
    /// A word such as "c4 c6 c3 c1- c5^-1 c4"
    #[arg(long, conflicts_with = "file")]
    word: Option<String>,
    /// Batch file: one word per line, '#' starts a comment
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Normalization of output classes
    #[arg(long, value_enum, env = "COBRACK_MODE", default_value = "dehn")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Turaev cobracket of the class of the word
    Cobracket(WordInput),
    /// Coproduct of the class swept out by rotating the loop
    CoproductBv(WordInput),
    /// Coproduct of the degree-one generator of the word's component
    CoproductGen(WordInput),
    /// Level (repetition multiplicity) of the cyclic word
    Level {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        word: String,
    },
    /// Conjugacy-normal form of the word's class
    Normalize {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, env = "COBRACK_MODE", default_value = "dehn")]
        mode: ModeArg,
    },
    /// The surface relator (boundary word of the fattened wedge)
    Relator {
        #[arg(long)]
        genus: u32,
    },
    /// Cross-validate the combinatorial engine against the geometric oracle
    OracleCheck {
        #[arg(long)]
        genus: u32,
        #[arg(long, conflicts_with = "random")]
        word: Option<String>,
        /// Number of random words to check
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the constructed curve (single-word mode only) as SVG
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn genus_of(g: u32) -> Result<Genus, ExitCode> {
    Genus::new(g).map_err(|e| fail(EXIT_PARSE, e))
}

type Engine = fn(Genus, &ReducedWord, &Normalizer) -> Result<FormalSum, cobracket::CoproductError>;

fn run_engine(input: &WordInput, engine: Engine) -> ExitCode {
    let genus = match genus_of(input.genus) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mode: Mode = input.mode.into();
    let norm = match Normalizer::new(genus, mode) {
        Ok(n) => n,
        Err(e) => return fail(EXIT_INVARIANT, e),
    };
    let words: Vec<String> = if let Some(w) = &input.word {
        vec![w.clone()]
    } else if let Some(path) = &input.file {
        match std::fs::read_to_string(path) {
            Ok(contents) => batch_lines(&contents)
                .into_iter()
                .map(|(_, l)| l.to_string())
                .collect(),
            Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", path.display())),
        }
    } else {
        return fail(EXIT_PARSE, "provide --word or --file");
    };
    for text in &words {
        let raw = match parse_word(genus, text) {
            Ok(w) => w,
            Err(e) => return fail(EXIT_PARSE, format!("{text:?}: {e}")),
        };
        let word = ReducedWord::new(&raw);
        let sum = match engine(genus, &word, &norm) {
            Ok(s) => s,
            Err(e) => return fail(EXIT_INVARIANT, e),
        };
        match input.format {
            Format::Text => println!("{sum}"),
            Format::Latex => println!("{}", latex_sum(&sum)),
            Format::Json => {
                match ResultDocument::new(genus, &word, mode, &sum, "combinatorial") {
                    Ok(doc) => println!("{}", doc.to_json()),
                    Err(e) => return fail(EXIT_INVARIANT, e),
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_oracle_check(
    genus: u32,
    word: Option<String>,
    random: Option<usize>,
    max_len: usize,
    seed: u64,
    svg: Option<std::path::PathBuf>,
) -> ExitCode {
    let genus = match genus_of(genus) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let norm = match Normalizer::new(genus, Mode::Dehn) {
        Ok(n) => n,
        Err(e) => return fail(EXIT_INVARIANT, e),
    };
    let mut targets: Vec<ReducedWord> = Vec::new();
    if let Some(text) = &word {
        match parse_word(genus, text) {
            Ok(w) => targets.push(ReducedWord::new(&w)),
            Err(e) => return fail(EXIT_PARSE, e),
        }
    } else if let Some(n) = random {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n {
            let w: CyclicWord = random_reduced_word(genus, max_len, &mut rng);
            targets.push(ReducedWord::from_class(&w));
        }
    } else {
        return fail(EXIT_PARSE, "provide --word or --random N");
    }
    if let Some(path) = &svg {
        if targets.len() != 1 {
            return fail(EXIT_PARSE, "--svg requires a single --word");
        }
        let curve = match oracle::build_curve(genus, &targets[0], oracle::Schedule::Standard) {
            Ok(c) => c,
            Err(e) => return fail(EXIT_INVARIANT, e),
        };
        match oracle::to_svg(&curve) {
            Ok(s) => {
                if let Err(e) = std::fs::write(path, s) {
                    return fail(EXIT_INVARIANT, format!("{}: {e}", path.display()));
                }
            }
            Err(e) => return fail(EXIT_INVARIANT, e),
        }
    }
    let mut mismatches = 0usize;
    for w in &targets {
        match oracle::compare(genus, w, &norm) {
            Ok(report) if report.matched() => {
                println!(
                    "ok   {} ({} intersections)",
                    w.as_word(),
                    report.intersection_count
                );
            }
            Ok(report) => {
                mismatches += 1;
                println!("FAIL {}", w.as_word());
                for d in &report.discrepancies {
                    println!("     {d}");
                }
            }
            Err(e) => return fail(EXIT_INVARIANT, e),
        }
    }
    if mismatches > 0 {
        eprintln!("error: {mismatches} of {} words mismatched", targets.len());
        return ExitCode::from(EXIT_MISMATCH);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Cobracket(input) => run_engine(&input, turaev_cobracket),
        Command::CoproductBv(input) => run_engine(&input, coproduct_of_bv),
        Command::CoproductGen(input) => run_engine(&input, coproduct_on_generator),
        Command::Level { genus, word } => {
            let genus = match genus_of(genus) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match parse_word(genus, &word) {
                Ok(w) => {
                    println!("{}", CyclicWord::reduce(&w).level());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(EXIT_PARSE, e),
            }
        }
        Command::Normalize { genus, word, mode } => {
            let genus = match genus_of(genus) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let norm = match Normalizer::new(genus, mode.into()) {
                Ok(n) => n,
                Err(e) => return fail(EXIT_INVARIANT, e),
            };
            let w = match parse_word(genus, &word) {
                Ok(w) => w,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            match norm.key_of_word(&w) {
                Ok(Some(key)) => println!("{key}"),
                Ok(None) => println!("[1]"),
                Err(e) => return fail(EXIT_INVARIANT, e),
            }
            ExitCode::SUCCESS
        }
        Command::Relator { genus } => {
            let genus = match genus_of(genus) {
                Ok(g) => g,
                Err(code) => return code,
            };
            println!("{}", genus.boundary_word());
            ExitCode::SUCCESS
        }
        Command::OracleCheck {
            genus,
            word,
            random,
            max_len,
            seed,
            svg,
        } => run_oracle_check(genus, word, random, max_len, seed, svg),
    }
}
