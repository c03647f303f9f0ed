//! Command-line front end: embed, extract, inspect, capacity, and bench.
//!
//! Exit codes: 0 success, 1 usage error, 2 capacity/no-spaces error,
//! 3 extraction or integrity failure, 4 I/O error.

use clap::{Args, Parser, Subcommand};
use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use innamark::bench::corpus::Corpus;
use innamark::bench::sweep::run_full_benchmark;
use innamark::codec::{decode_digits, DigitString};
use innamark::extractor::segments;
use innamark::tag::{analyze_tag, EmbedOptions, TagFlags};
use innamark::{
    capacity_bytes, count_spaces, embed, extract_literal, extract_robust, TransformSuite,
    WhitespaceAlphabet,
};

const EXIT_USAGE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_EXTRACTION: u8 = 3;
const EXIT_IO: u8 = 4;

const PASSPHRASE_ENV: &str = "INNAMARK_PASSPHRASE";

#[derive(Parser)]
#[command(
    name = "innamark",
    about = "Hide byte payloads in text by substituting spaces with whitespace homoglyphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a message into a cover text
    Embed(EmbedArgs),
    /// Extract a message from a marked text
    Extract(ExtractArgs),
    /// Report tag flags and segment validity without printing the payload
    Inspect(InspectArgs),
    /// Print the maximum embeddable payload for a cover text
    Capacity(CapacityArgs),
    /// Run the evaluation benchmark and write a report
    Bench(BenchArgs),
}

#[derive(Args)]
struct FlagArgs {
    /// Compress the message before embedding
    #[arg(long)]
    compress: bool,
    /// Encrypt the message (passphrase from INNAMARK_PASSPHRASE or prompt)
    #[arg(long)]
    encrypt: bool,
    /// Add an 8-byte hash prefix
    #[arg(long)]
    hash: bool,
    /// Add a CRC-32 checksum prefix
    #[arg(long)]
    crc: bool,
    /// Add a 4-byte size prefix
    #[arg(long)]
    size: bool,
}

impl FlagArgs {
    fn tag_flags(&self) -> TagFlags {
        TagFlags {
            encryption: self.encrypt,
            compression: self.compress,
            hashing: self.hash,
            crc32: self.crc,
            size_prefix: self.size,
        }
    }
}

#[derive(Args)]
struct AlphabetArg {
    /// Custom alphabet: comma-separated U+XXXX code points, separator first
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
}

impl AlphabetArg {
    fn resolve(&self) -> Result<WhitespaceAlphabet, CliError> {
        let Some(labels) = &self.alphabet else {
            return Ok(WhitespaceAlphabet::default());
        };
        if labels.len() < 3 {
            return Err(CliError::usage(
                "--alphabet needs a separator plus at least two digits".into(),
            ));
        }
        let mut chars = Vec::with_capacity(labels.len());
        for label in labels {
            let hex = label
                .strip_prefix("U+")
                .or_else(|| label.strip_prefix("u+"))
                .ok_or_else(|| CliError::usage(format!("bad code point {label:?}, want U+XXXX")))?;
            let cp = u32::from_str_radix(hex, 16)
                .map_err(|_| CliError::usage(format!("bad code point {label:?}")))?;
            chars.push(
                char::from_u32(cp)
                    .ok_or_else(|| CliError::usage(format!("invalid scalar value {label}")))?,
            );
        }
        let (sep, digits) = chars.split_first().expect("length checked above");
        WhitespaceAlphabet::new(*sep, digits.to_vec())
            .map_err(|e| CliError::usage(format!("bad alphabet: {e}")))
    }
}

#[derive(Args)]
struct EmbedArgs {
    /// Cover text file ("-" for stdin)
    #[arg(long)]
    cover: String,
    /// Message as an inline string
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    /// Message read from a file (raw bytes)
    #[arg(long)]
    message_file: Option<PathBuf>,
    /// Output file (default stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    flags: FlagArgs,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Args)]
struct ExtractArgs {
    /// Marked text file ("-" for stdin)
    input: String,
    /// Use the exact single-segment scan instead of robust recovery
    #[arg(long)]
    literal: bool,
    /// Output file for the message bytes (default stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Args)]
struct InspectArgs {
    /// Marked text file ("-" for stdin)
    input: String,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Args)]
struct CapacityArgs {
    /// Cover text file ("-" for stdin)
    #[arg(long)]
    cover: String,
    #[command(flatten)]
    flags: FlagArgs,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .txt cover documents (default: built-in synthetic corpus)
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Synthetic corpus size when no directory is given
    #[arg(long, default_value_t = 210)]
    docs: usize,
    /// Master seed for tamper positions and the synthetic corpus
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file (default stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct CliError {
    code: u8,
    kind: &'static str,
    message: String,
}

impl CliError {
    fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message,
        }
    }

    fn io(err: std::io::Error, path: &str) -> Self {
        Self {
            code: EXIT_IO,
            kind: "io",
            message: format!("{path}: {err}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not errors.
            if err.use_stderr() {
                eprintln!("error: usage: {err}");
                return ExitCode::from(EXIT_USAGE);
            }
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.kind, e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Embed(args) => run_embed(args),
        Command::Extract(args) => run_extract(args),
        Command::Inspect(args) => run_inspect(args),
        Command::Capacity(args) => run_capacity(args),
        Command::Bench(args) => run_bench(args),
    }
}

/// Strict UTF-8 read; invalid sequences are an I/O error, not lossy
/// replacement, since replacement could destroy or fabricate alphabet
/// characters.
fn read_text(path: &str) -> Result<String, CliError> {
    let bytes = read_bytes(path)?;
    String::from_utf8(bytes).map_err(|_| CliError {
        code: EXIT_IO,
        kind: "io",
        message: format!("{path}: not valid UTF-8"),
    })
}

fn read_bytes(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::io(e, "<stdin>"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| CliError::io(e, path))
    }
}

fn write_output(output: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::io(e, &path.display().to_string())),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io(e, "<stdout>")),
    }
}

fn passphrase_if(needed: bool) -> Result<Option<String>, CliError> {
    if !needed {
        return Ok(None);
    }
    if let Ok(pass) = std::env::var(PASSPHRASE_ENV) {
        return Ok(Some(pass));
    }
    if std::io::stdin().is_terminal() {
        eprint!("passphrase: ");
        let mut line = String::new();
        std::io::stdin()
            .read_line(&mut line)
            .map_err(|e| CliError::io(e, "<stdin>"))?;
        let pass = line.trim_end_matches(['\r', '\n']).to_string();
        if !pass.is_empty() {
            return Ok(Some(pass));
        }
    }
    Err(CliError::usage(format!(
        "--encrypt needs a passphrase; set {PASSPHRASE_ENV} or run interactively"
    )))
}

fn run_embed(args: EmbedArgs) -> Result<(), CliError> {
    let alphabet = args.alphabet.resolve()?;
    let cover = read_text(&args.cover)?;
    let message = match (&args.message, &args.message_file) {
        (Some(inline), None) => inline.as_bytes().to_vec(),
        (None, Some(path)) => read_bytes(&path.display().to_string())?,
        (None, None) => return Err(CliError::usage("need --message or --message-file".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let options = EmbedOptions {
        flags: args.flags.tag_flags(),
        passphrase: passphrase_if(args.flags.encrypt)?,
    };
    let result = embed(
        &cover,
        &message,
        &options,
        &alphabet,
        &TransformSuite::default(),
    )
    .map_err(|e| CliError {
        code: EXIT_CAPACITY,
        kind: "embed",
        message: e.to_string(),
    })?;
    write_output(args.output.as_deref(), result.text.as_bytes())
}

fn run_extract(args: ExtractArgs) -> Result<(), CliError> {
    let alphabet = args.alphabet.resolve()?;
    let text = read_text(&args.input)?;
    let suite = TransformSuite::default();
    let passphrase = std::env::var(PASSPHRASE_ENV).ok();
    let result = if args.literal {
        extract_literal(&text, &alphabet, passphrase.as_deref(), &suite)
    } else {
        extract_robust(&text, &alphabet, passphrase.as_deref(), &suite)
    }
    .map_err(|e| CliError {
        code: EXIT_EXTRACTION,
        kind: "extract",
        message: e.to_string(),
    })?;
    write_output(args.output.as_deref(), &result.message)
}

fn run_inspect(args: InspectArgs) -> Result<(), CliError> {
    let alphabet = args.alphabet.resolve()?;
    let text = read_text(&args.input)?;
    let suite = TransformSuite::default();
    let passphrase = std::env::var(PASSPHRASE_ENV).ok();

    let segs = segments(&text, &alphabet);
    if segs.is_empty() {
        return Err(CliError {
            code: EXIT_EXTRACTION,
            kind: "inspect",
            message: "no-marks".to_string(),
        });
    }

    let mut valid = 0usize;
    let mut first_flags: Option<TagFlags> = None;
    let mut message_len: Option<usize> = None;
    for seg in &segs {
        let Ok(digits) = DigitString::from_chars(seg.digits.clone(), &alphabet) else {
            continue;
        };
        let decoded = decode_digits(&digits, &alphabet);
        let Some(&tag_byte) = decoded.bytes.first() else {
            continue;
        };
        let Ok(flags) = TagFlags::parse(tag_byte) else {
            continue;
        };
        if let Ok(message) = analyze_tag(&decoded.bytes, passphrase.as_deref(), &suite) {
            if !decoded.truncated_tail && !seg.unseparated {
                valid += 1;
                if first_flags.is_none() {
                    first_flags = Some(flags);
                    message_len = Some(message.len());
                }
            }
        }
    }

    println!("segments: {} found, {} valid", segs.len(), valid);
    match first_flags {
        Some(flags) => {
            println!(
                "tag: 0x{:02X} encryption={} compression={} hashing={} crc32={} size={}",
                flags.encode(),
                flags.encryption,
                flags.compression,
                flags.hashing,
                flags.crc32,
                flags.size_prefix
            );
            println!("message: {} bytes (not shown)", message_len.unwrap_or(0));
            Ok(())
        }
        None => Err(CliError {
            code: EXIT_EXTRACTION,
            kind: "inspect",
            message: "no segment passed validation".to_string(),
        }),
    }
}

fn run_capacity(args: CapacityArgs) -> Result<(), CliError> {
    let alphabet = args.alphabet.resolve()?;
    let cover = read_text(&args.cover)?;
    let flags = args.flags.tag_flags();
    let bytes = capacity_bytes(&cover, &flags, &alphabet);
    let chars = cover.chars().count();
    let ratio = if chars == 0 {
        0.0
    } else {
        (bytes * 8) as f64 / chars as f64
    };
    println!("spaces: {}", count_spaces(&cover));
    println!("capacity: {bytes} bytes");
    println!("ratio: {ratio:.4} bits/char");
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    let corpus = match &args.corpus {
        Some(dir) => Corpus::from_dir(dir)
            .map_err(|e| CliError::io(e, &dir.display().to_string()))?,
        None => Corpus::synthetic(args.docs, args.seed),
    };
    if corpus.is_empty() {
        return Err(CliError::usage("corpus is empty".into()));
    }
    let report = run_full_benchmark(&corpus, args.seed);
    let mut buf = Vec::new();
    match args.format.as_str() {
        "csv" => report.write_csv(&mut buf).map_err(|e| CliError {
            code: EXIT_IO,
            kind: "io",
            message: e.to_string(),
        })?,
        "json" => {
            serde_json::to_writer_pretty(&mut buf, &report.to_json()).expect("report serializes");
            buf.push(b'\n');
        }
        other => return Err(CliError::usage(format!("unknown format {other:?}"))),
    }
    write_output(args.output.as_deref(), &buf)
}
