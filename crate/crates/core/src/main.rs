use std::fmt::Display;
use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pbwtidx::oracle::{naive_positional, naive_substring};
use pbwtidx::{
    Alphabet, Error, FmIndex, Index, PositionalIndex, RankLayout, SentinelText, StoragePolicy,
    Strategy, StringCollection, TraceStep,
};

const DEFAULT_INDEX: &str = "index.pbwtidx";

#[derive(Parser)]
#[command(
    name = "pbwtidx",
    version,
    about = "Positional and substring search with the (positional) BWT"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a string collection or a single text.
    Build(BuildArgs),
    /// Query an index file.
    #[command(subcommand)]
    Query(QueryCommand),
    /// Print index internals.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildMode {
    Positional,
    Substring,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Full,
    Sampled,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Binary,
    Backward,
    Rebuild,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Binary => Strategy::Binary,
            StrategyArg::Backward => Strategy::Backward,
            StrategyArg::Rebuild => Strategy::Rebuild,
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum, default_value = "positional")]
    mode: BuildMode,
    /// Collection file, one string per line (`-` for stdin).
    #[arg(long)]
    input: Option<String>,
    /// Text to index in substring mode: a file path, or the text itself.
    #[arg(long)]
    text: Option<String>,
    /// Ordered symbols of the alphabet.
    #[arg(long, default_value = "ACGT")]
    alphabet: String,
    /// Which permutation columns to keep (positional mode).
    #[arg(long, value_enum, default_value = "sampled")]
    policy: PolicyArg,
    /// Column stride for `--policy sampled`; defaults to ceil(lg n).
    #[arg(long)]
    stride: Option<usize>,
    /// Text-position stride of the suffix-array samples (substring mode); defaults to ceil(lg (n+1)).
    #[arg(long)]
    sa_stride: Option<usize>,
    /// Use block-sampled rank tables with this block size instead of full tables.
    #[arg(long)]
    rank_block: Option<usize>,
    #[arg(long, default_value = DEFAULT_INDEX)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum QueryCommand {
    /// Strings containing PATTERN starting at POSITION.
    Positional(PositionalQueryArgs),
    /// Text positions where PATTERN occurs.
    Substring(SubstringQueryArgs),
}

#[derive(Args)]
struct CommonQueryArgs {
    #[arg(long, default_value = DEFAULT_INDEX)]
    index: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pattern: String,
    /// Print one `j f l` line per backward step before the results.
    #[arg(long)]
    trace: bool,
    /// Cross-check the answer against a brute-force scan.
    #[arg(long)]
    verify: bool,
    /// Print only the number of matches.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct PositionalQueryArgs {
    #[command(flatten)]
    common: CommonQueryArgs,
    #[arg(long)]
    position: usize,
    #[arg(long, value_enum, default_value = "backward")]
    strategy: StrategyArg,
    /// Print string indexes in ascending order instead of row order.
    #[arg(long)]
    sorted: bool,
}

#[derive(Args)]
struct SubstringQueryArgs {
    #[command(flatten)]
    common: CommonQueryArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpWhat {
    Pi,
    Pbwt,
    Bwt,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(value_enum)]
    what: DumpWhat,
    #[arg(long, default_value = DEFAULT_INDEX)]
    index: PathBuf,
}

enum CliError {
    Usage(String),
    Index(Error),
    VerifyMismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Index(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Index(Error::Io(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Index(e) if e.is_io() => 1,
            _ => 2,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Index(e) => write!(f, "{}: {e}", error_name(e)),
            CliError::VerifyMismatch(m) => write!(f, "verification failed: {m}"),
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::UnknownCharacter { .. } => "UnknownCharacter",
        Error::RankOutOfRange { .. } => "RankOutOfRange",
        Error::InvalidAlphabet(_) => "InvalidAlphabet",
        Error::RaggedCollection { .. } => "RaggedCollection",
        Error::EmptyInput => "EmptyInput",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::PermutationNotStored { .. } => "PermutationNotStored",
        Error::PatternOverrun { .. } => "PatternOverrun",
        Error::InvalidStride(_) => "InvalidStride",
        Error::ModeMismatch { .. } => "ModeMismatch",
        Error::Inconsistent(_) => "Inconsistent",
        Error::Format(_) => "Format",
        Error::Io(_) => "Io",
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Build(args) => build(args, &mut out),
        Command::Query(QueryCommand::Positional(args)) => query_positional(args, &mut out),
        Command::Query(QueryCommand::Substring(args)) => query_substring(args, &mut out),
        Command::Dump(args) => dump(args, &mut out),
    };
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("pbwtidx: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("pbwtidx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input(path: &str) -> CliResult<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read(path)?)
    }
}

/// A path that exists is read (trailing line breaks dropped); anything else is the text itself.
fn read_text_arg(arg: &str) -> CliResult<Vec<u8>> {
    let mut text = if arg == "-" || Path::new(arg).is_file() {
        read_input(arg)?
    } else {
        arg.as_bytes().to_vec()
    };
    while matches!(text.last(), Some(b'\n' | b'\r')) {
        text.pop();
    }
    Ok(text)
}

fn build(args: BuildArgs, out: &mut impl Write) -> CliResult {
    let alphabet = Alphabet::new(args.alphabet.as_bytes())?;
    let layout = match args.rank_block {
        None => RankLayout::Exact,
        Some(0) => return Err(Error::InvalidStride(0).into()),
        Some(block) => RankLayout::Blocked { block },
    };
    let (index, summary) = match args.mode {
        BuildMode::Positional => {
            if args.text.is_some() || args.sa_stride.is_some() {
                return Err(CliError::Usage(
                    "--text and --sa-stride apply to --mode substring".into(),
                ));
            }
            let input = args
                .input
                .as_deref()
                .ok_or_else(|| CliError::Usage("--mode positional needs --input <path>".into()))?;
            let collection = StringCollection::parse(&read_input(input)?, &alphabet)?;
            let policy = match (args.policy, args.stride) {
                (PolicyArg::Full, None) => StoragePolicy::Full,
                (PolicyArg::None, None) => StoragePolicy::NoPerms,
                (PolicyArg::Sampled, None) => StoragePolicy::default_for(collection.n_strings()),
                (PolicyArg::Sampled, Some(t)) => StoragePolicy::sampled(t)?,
                (_, Some(_)) => {
                    return Err(CliError::Usage(
                        "--stride applies to --policy sampled".into(),
                    ))
                }
            };
            let summary = format!(
                "positional index: n={} len={} sigma={} policy={policy}",
                collection.n_strings(),
                collection.string_len(),
                alphabet.sigma()
            );
            let idx = PositionalIndex::build_with_layout(collection, policy, layout)?;
            (Index::Positional(idx), summary)
        }
        BuildMode::Substring => {
            if args.stride.is_some() {
                return Err(CliError::Usage(
                    "--stride applies to --mode positional".into(),
                ));
            }
            let raw = match (&args.text, &args.input) {
                (Some(t), None) => read_text_arg(t)?,
                (None, Some(p)) => {
                    let mut t = read_input(p)?;
                    while matches!(t.last(), Some(b'\n' | b'\r')) {
                        t.pop();
                    }
                    t
                }
                _ => {
                    return Err(CliError::Usage(
                        "--mode substring needs exactly one of --text or --input".into(),
                    ))
                }
            };
            let text = SentinelText::new(&raw, &alphabet)?;
            let stride = args
                .sa_stride
                .unwrap_or_else(|| StoragePolicy::default_stride(text.len() + 1));
            let summary = format!(
                "substring index: n={} sigma={} sa_stride={stride}",
                text.len(),
                alphabet.sigma()
            );
            (
                Index::Substring(FmIndex::build_with_layout(text, stride, layout)?),
                summary,
            )
        }
    };
    let bytes = index.save(&args.output)?;
    writeln!(out, "{summary} bytes={bytes} -> {}", args.output.display())?;
    Ok(())
}

fn write_trace(out: &mut impl Write, trace: &[TraceStep]) -> io::Result<()> {
    for step in trace {
        writeln!(out, "{step}")?;
    }
    Ok(())
}

fn query_positional(args: PositionalQueryArgs, out: &mut impl Write) -> CliResult {
    let idx = Index::load(&args.common.index)?.into_positional()?;
    let pattern = args.common.pattern.as_bytes();
    let k = args.position;
    let strategy = Strategy::from(args.strategy);

    let interval = if args.common.trace {
        let (iv, trace) = idx.search_backward_traced(pattern, k)?;
        let chosen = idx.search(pattern, k, strategy)?;
        debug_assert_eq!(iv, chosen);
        write_trace(out, &trace)?;
        chosen
    } else {
        idx.search(pattern, k, strategy)?
    };

    let mut hits = if args.common.count_only && !args.common.verify {
        Vec::new()
    } else {
        idx.locate(interval, k)?
    };

    if args.common.verify {
        let expected = naive_positional(idx.collection(), pattern, k)?;
        let mut got = hits.clone();
        got.sort_unstable();
        if got != expected || interval.width() != expected.len() {
            return Err(CliError::VerifyMismatch(format!(
                "index reported {got:?}, scan found {expected:?}"
            )));
        }
    }

    if args.common.count_only {
        writeln!(out, "{}", interval.width())?;
    } else {
        if args.sorted {
            hits.sort_unstable();
        }
        for h in hits {
            writeln!(out, "{h}")?;
        }
    }
    Ok(())
}

fn query_substring(args: SubstringQueryArgs, out: &mut impl Write) -> CliResult {
    let idx = Index::load(&args.common.index)?.into_substring()?;
    let pattern = args.common.pattern.as_bytes();
    let (interval, trace) = idx.count_traced(pattern)?;
    if args.common.trace {
        write_trace(out, &trace)?;
    }
    let mut positions = if args.common.count_only && !args.common.verify {
        Vec::new()
    } else {
        idx.locate(interval)
    };
    positions.sort_unstable();

    if args.common.verify {
        let expected = naive_substring(idx.text().text(), pattern);
        if positions != expected || interval.width() != expected.len() {
            return Err(CliError::VerifyMismatch(format!(
                "index reported {positions:?}, scan found {expected:?}"
            )));
        }
    }

    if args.common.count_only {
        writeln!(out, "{}", interval.width())?;
    } else {
        for p in positions {
            writeln!(out, "{p}")?;
        }
    }
    Ok(())
}

fn color_enabled() -> bool {
    match std::env::var("PBWT_IDX_COLOR").as_deref() {
        Ok("never") => false,
        _ => io::stdout().is_terminal(),
    }
}

fn dump(args: DumpArgs, out: &mut impl Write) -> CliResult {
    let index = Index::load(&args.index)?;
    match args.what {
        DumpWhat::Pi => {
            let idx = index.into_positional()?;
            let columns = (0..idx.string_len())
                .map(|j| idx.stored_permutation(j))
                .collect::<Result<Vec<_>, _>>()?;
            for i in 0..idx.n_strings() {
                let row: Vec<String> = columns.iter().map(|c| c[i].to_string()).collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
        DumpWhat::Pbwt => {
            let idx = index.into_positional()?;
            let m = idx.matrix();
            for i in 0..m.n_rows() {
                let row: Vec<String> = m.row(i).iter().map(|&c| (c as char).to_string()).collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
        DumpWhat::Bwt => {
            let idx = index.into_substring()?;
            if color_enabled() {
                // highlight characters sitting at sampled text positions
                let mut line = String::new();
                for (row, &c) in idx.bwt().iter().enumerate() {
                    let prev = idx.lf_step(row)?;
                    if idx.sample_at(prev).is_some() {
                        line.push_str(&format!("\x1b[31m{}\x1b[0m", c as char));
                    } else {
                        line.push(c as char);
                    }
                }
                writeln!(out, "{line}")?;
            } else {
                out.write_all(idx.bwt())?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
