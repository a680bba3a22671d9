//! Batch front end for the scytale cipher: encrypt/decrypt files, render
//! ciphertext as grayscale image containers, run diffusion analysis and
//! runtime benchmarks.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input or container,
//! 3 benchmark integrity failure.

use std::fmt::Display;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use scytale::analysis::avalanche_report;
use scytale::bench::{
    emit_csv, iteration_sweep_with_mode, length_sweep_with_mode, DEFAULT_ITERATION_KEYS,
    DEFAULT_ITERATION_LENGTH, DEFAULT_LENGTHS, DEFAULT_LENGTH_KEYS,
};
use scytale::cipher::{
    decrypt_with_mode, encrypt_with_mode, read_ciphertext, write_ciphertext,
};
use scytale::image_io::{
    chunk_to_square, export_pgm, read_image_container, square_to_chunk, write_image_container,
};
use scytale::{ChunkMode, CipherParams, Ciphertext, Error};

const LONG_ABOUT: &str = "\
Block cipher built on a reversible cellular automaton: plaintext bytes become \
2D bit lattices evolved under the Critters rule, with the iteration count as \
the private key. Ciphertext chunks can additionally be rendered as grayscale \
images and archived in an image container.

SECURITY DISCLAIMER: this is a research cipher. It has no security proof, no \
authentication, and a tiny effective keyspace. Do not use it to protect real \
data.";

#[derive(Parser)]
#[command(name = "scytale", version, about = "Reversible cellular automaton block cipher", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(Subcommand)]
enum CommandKind {
    /// Encrypt bytes into a ciphertext container
    Encrypt(CryptoArgs),
    /// Decrypt a ciphertext container back to bytes
    Decrypt(DecryptArgs),
    /// Render a ciphertext container as a grayscale image container
    ExportImage(ExportImageArgs),
    /// Rebuild a ciphertext container from a grayscale image container
    ImportImage(ImportImageArgs),
    /// Confusion/diffusion measurements
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Runtime measurements over encrypt-decrypt cycles
    #[command(subcommand)]
    Bench(BenchCmd),
}

#[derive(Args)]
struct KeyArgs {
    /// Iteration count used as the private key (or set SCYTALE_KEY)
    #[arg(long, env = "SCYTALE_KEY", value_name = "K")]
    key: u64,

    /// Permit the zero key, which performs no encryption at all
    #[arg(long)]
    allow_zero_key: bool,
}

#[derive(Args)]
struct IoArgs {
    /// Input file, or "-" for standard input
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: PathBuf,

    /// Output file, or "-" for standard output
    #[arg(long = "out", value_name = "FILE", default_value = "-")]
    output: PathBuf,
}

#[derive(Args)]
struct CryptoArgs {
    #[command(flatten)]
    key: KeyArgs,

    /// Chunk size in bytes; must be even
    #[arg(long, value_name = "B", default_value_t = 8)]
    block_size: u8,

    /// Padding fill byte as hex (e.g. 00 or 0x20)
    #[arg(long, value_name = "HEX", value_parser = parse_hex_byte, default_value = "00")]
    pad: u8,

    /// Transform chunks across threads (output is bit-identical)
    #[arg(long)]
    parallel_chunks: bool,

    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct DecryptArgs {
    #[command(flatten)]
    key: KeyArgs,

    /// Expected chunk size; defaults to the container's recorded value
    #[arg(long, value_name = "B")]
    block_size: Option<u8>,

    /// Padding fill byte as hex (e.g. 00 or 0x20)
    #[arg(long, value_name = "HEX", value_parser = parse_hex_byte, default_value = "00")]
    pad: u8,

    /// Transform chunks across threads (output is bit-identical)
    #[arg(long)]
    parallel_chunks: bool,

    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ExportImageArgs {
    #[command(flatten)]
    io: IoArgs,

    /// Also write one PGM image per chunk into this directory
    #[arg(long, value_name = "DIR")]
    pgm_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ImportImageArgs {
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Flip one character many times and measure ciphertext changes
    Avalanche(AvalancheArgs),
}

#[derive(Args)]
struct AvalancheArgs {
    #[command(flatten)]
    key: KeyArgs,

    /// Chunk size in bytes; must be even
    #[arg(long, value_name = "B", default_value_t = 8)]
    block_size: u8,

    /// Number of single-character flips to measure
    #[arg(long, value_name = "N", default_value_t = 100)]
    trials: usize,

    /// Seed for the trial generator (fixed seed = reproducible report)
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,

    /// Plaintext file to measure, or "-" for standard input
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: PathBuf,

    /// Also write the per-trial records as CSV to this file
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BenchCommonArgs {
    /// Chunk size in bytes; must be even
    #[arg(long, value_name = "B", default_value_t = 8)]
    block_size: u8,

    /// Timed repetitions averaged per measurement
    #[arg(long, value_name = "N", default_value_t = 3)]
    repetitions: u32,

    /// Seed for plaintext generation
    #[arg(long, value_name = "S", default_value_t = 42)]
    seed: u64,

    /// Transform chunks across threads while timing
    #[arg(long)]
    parallel_chunks: bool,

    /// Permit timing the zero key, which performs no encryption at all
    #[arg(long)]
    allow_zero_key: bool,

    /// Write the records to this CSV file instead of standard output
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Sweep plaintext length at fixed keys
    Length {
        /// Comma-separated plaintext lengths, ascending
        #[arg(long, value_delimiter = ',', value_name = "L,L,...", default_values_t = DEFAULT_LENGTHS)]
        lengths: Vec<usize>,

        /// Comma-separated keys timed at each length
        #[arg(long, value_delimiter = ',', value_name = "K,K,...", default_values_t = DEFAULT_LENGTH_KEYS)]
        keys: Vec<u64>,

        #[command(flatten)]
        common: BenchCommonArgs,
    },
    /// Sweep key at a fixed plaintext length
    Iterations {
        /// Plaintext length
        #[arg(long, value_name = "L", default_value_t = DEFAULT_ITERATION_LENGTH)]
        length: usize,

        /// Comma-separated keys to time
        #[arg(long, value_delimiter = ',', value_name = "K,K,...", default_values_t = DEFAULT_ITERATION_KEYS)]
        keys: Vec<u64>,

        #[command(flatten)]
        common: BenchCommonArgs,
    },
}

fn parse_hex_byte(raw: &str) -> Result<u8, String> {
    let digits = raw.strip_prefix("0x").or_else(|| raw.strip_prefix("0X")).unwrap_or(raw);
    u8::from_str_radix(digits, 16).map_err(|_| format!("'{raw}' is not a hex byte (00..ff)"))
}

/// A failure carrying its process exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn data(message: impl Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

/// Library errors raised while interpreting input data (containers,
/// rasters, on-disk bytes) — everything the user's files can cause.
fn data_err(err: Error) -> Failure {
    data(err)
}

/// Library errors raised while validating caller-chosen parameters.
fn usage_err(err: Error) -> Failure {
    usage(err)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit code for usage errors is 2; this tool
            // reserves 2 for malformed data, so usage maps to 1
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = run(cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        CommandKind::Encrypt(args) => cmd_encrypt(args),
        CommandKind::Decrypt(args) => cmd_decrypt(args),
        CommandKind::ExportImage(args) => cmd_export_image(args),
        CommandKind::ImportImage(args) => cmd_import_image(args),
        CommandKind::Analyze(AnalyzeCmd::Avalanche(args)) => cmd_avalanche(args),
        CommandKind::Bench(cmd) => cmd_bench(cmd),
    }
}

fn check_key(key: &KeyArgs) -> Result<u64, Failure> {
    if key.key == 0 && !key.allow_zero_key {
        return Err(usage(
            "key 0 performs no encryption; pass --allow-zero-key if that is intentional",
        ));
    }
    Ok(key.key)
}

fn check_keys(keys: &[u64], allow_zero: bool) -> Result<(), Failure> {
    if keys.contains(&0) && !allow_zero {
        return Err(usage(
            "key 0 performs no encryption; pass --allow-zero-key if that is intentional",
        ));
    }
    Ok(())
}

fn chunk_mode(parallel: bool) -> ChunkMode {
    if parallel {
        ChunkMode::Parallel
    } else {
        ChunkMode::Sequential
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut bytes = Vec::new();
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| data(format!("reading standard input: {e}")))?;
        Ok(bytes)
    } else {
        fs::read(path).map_err(|e| data(format!("reading {}: {e}", path.display())))
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| data(format!("writing standard output: {e}")))
    } else {
        fs::write(path, bytes).map_err(|e| data(format!("writing {}: {e}", path.display())))
    }
}

fn cmd_encrypt(args: CryptoArgs) -> Result<(), Failure> {
    let key = check_key(&args.key)?;
    let params = CipherParams::new(args.block_size, key)
        .map_err(usage_err)?
        .with_pad_byte(args.pad);
    let plaintext = read_input(&args.io.input)?;
    if plaintext.last() == Some(&args.pad) {
        eprintln!(
            "warning: the plaintext ends with the padding byte 0x{:02x}; decryption strips \
             trailing padding, so those final bytes will be lost — choose a different --pad \
             to round-trip this data",
            args.pad
        );
    }
    let ciphertext = encrypt_with_mode(&plaintext, &params, chunk_mode(args.parallel_chunks));
    let mut out = Vec::new();
    write_ciphertext(&mut out, &ciphertext).map_err(data_err)?;
    write_output(&args.io.output, &out)
}

fn cmd_decrypt(args: DecryptArgs) -> Result<(), Failure> {
    let key = check_key(&args.key)?;
    let bytes = read_input(&args.io.input)?;
    let ciphertext = read_ciphertext(&mut bytes.as_slice()).map_err(data_err)?;
    let block_size = args.block_size.unwrap_or_else(|| ciphertext.block_size());
    let params = CipherParams::new(block_size, key)
        .map_err(usage_err)?
        .with_pad_byte(args.pad);
    let plaintext = decrypt_with_mode(&ciphertext, &params, chunk_mode(args.parallel_chunks))
        .map_err(data_err)?;
    write_output(&args.io.output, &plaintext)
}

fn cmd_export_image(args: ExportImageArgs) -> Result<(), Failure> {
    let bytes = read_input(&args.io.input)?;
    let ciphertext = read_ciphertext(&mut bytes.as_slice()).map_err(data_err)?;
    let squares = ciphertext
        .chunks()
        .iter()
        .map(|chunk| chunk_to_square(chunk))
        .collect::<Result<Vec<_>, _>>()
        .map_err(data_err)?;
    let mut out = Vec::new();
    write_image_container(&mut out, ciphertext.block_size(), &squares).map_err(data_err)?;
    write_output(&args.io.output, &out)?;
    if let Some(dir) = &args.pgm_dir {
        fs::create_dir_all(dir)
            .map_err(|e| data(format!("creating {}: {e}", dir.display())))?;
        for (index, square) in squares.iter().enumerate() {
            let path = dir.join(format!("chunk-{index:06}.pgm"));
            let mut pgm = Vec::new();
            export_pgm(square, &mut pgm).map_err(data_err)?;
            fs::write(&path, &pgm)
                .map_err(|e| data(format!("writing {}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn cmd_import_image(args: ImportImageArgs) -> Result<(), Failure> {
    let bytes = read_input(&args.io.input)?;
    let (block_size, squares) =
        read_image_container(&mut bytes.as_slice()).map_err(data_err)?;
    let chunks = squares
        .iter()
        .map(square_to_chunk)
        .collect::<Result<Vec<_>, _>>()
        .map_err(data_err)?;
    let ciphertext = Ciphertext::new(block_size, chunks).map_err(data_err)?;
    let mut out = Vec::new();
    write_ciphertext(&mut out, &ciphertext).map_err(data_err)?;
    write_output(&args.io.output, &out)
}

fn cmd_avalanche(args: AvalancheArgs) -> Result<(), Failure> {
    let key = check_key(&args.key)?;
    let params = CipherParams::new(args.block_size, key).map_err(usage_err)?;
    let plaintext = read_input(&args.input)?;
    let report =
        avalanche_report(&plaintext, &params, args.trials, args.seed).map_err(usage_err)?;
    print!("{report}");
    if let Some(path) = &args.csv {
        let mut csv = Vec::new();
        report.write_csv(&mut csv).map_err(data_err)?;
        fs::write(path, &csv).map_err(|e| data(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_bench(cmd: BenchCmd) -> Result<(), Failure> {
    let (records, common) = match cmd {
        BenchCmd::Length { lengths, keys, common } => {
            check_keys(&keys, common.allow_zero_key)?;
            let records = length_sweep_with_mode(
                &lengths,
                &keys,
                common.block_size,
                common.repetitions,
                common.seed,
                chunk_mode(common.parallel_chunks),
            )
            .map_err(bench_err)?;
            (records, common)
        }
        BenchCmd::Iterations { length, keys, common } => {
            check_keys(&keys, common.allow_zero_key)?;
            let records = iteration_sweep_with_mode(
                length,
                &keys,
                common.block_size,
                common.repetitions,
                common.seed,
                chunk_mode(common.parallel_chunks),
            )
            .map_err(bench_err)?;
            (records, common)
        }
    };
    let mut csv = Vec::new();
    emit_csv(&records, &mut csv).map_err(data_err)?;
    match &common.csv {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| data(format!("writing {}: {e}", path.display())))
        }
        None => write_output(Path::new("-"), &csv),
    }
}

/// Benchmark failures keep their dedicated exit code; anything else the
/// sweeps raise is a parameter problem.
fn bench_err(err: Error) -> Failure {
    match err {
        Error::BenchIntegrity { .. } => Failure { code: 3, message: err.to_string() },
        other => usage_err(other),
    }
}
