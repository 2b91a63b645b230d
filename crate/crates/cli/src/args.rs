use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use wimax_fec::decoder::Scheme;
use wimax_fec::CodeSpec;

/// Rate-1/2 convolutional encoder, Viterbi decoders and BER harness.
///
/// The default code is the WiMAX 802.16 one: constraint length K=7,
/// generators 171 and 133 (octal, first output from 171), and L=40 trellis
/// stages per frame (34 payload bits followed by a 6-bit zero tail).
///
/// Bit frames are text, one frame per line of ASCII '0'/'1'.
#[derive(Debug, Parser)]
#[command(name = "wimax-fec", version, about, long_about)]
pub struct Cli {
    #[command(flatten)]
    pub code: CodeArgs,

    /// Print the resolved code (K, octal generators, L) and exit.
    #[arg(long)]
    pub spec_dump: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Constraint length K.
    #[arg(long = "constraint-length", short = 'k', global = true, default_value_t = 7)]
    pub constraint_length: usize,

    /// Generator polynomials as two comma-separated octal numbers.
    #[arg(long, global = true, default_value = "171,133")]
    pub generators: String,

    /// Trellis stages per frame L, zero tail included.
    #[arg(long = "frame-len", short = 'L', global = true, default_value_t = 40)]
    pub frame_len: usize,
}

impl CodeArgs {
    pub fn spec(&self) -> Result<CodeSpec> {
        let parts: Vec<&str> = self.generators.split(',').map(str::trim).collect();
        ensure!(
            parts.len() == 2,
            "--generators: expected two octal numbers like 171,133, got {:?}",
            self.generators
        );
        CodeSpec::from_octal(self.constraint_length, [parts[0], parts[1]], self.frame_len)
            .context("invalid code given by --constraint-length/--generators/--frame-len")
    }
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input file, or - for standard input.
    #[arg(long, short = 'i', default_value = "-")]
    pub input: PathBuf,

    /// Output file, or - for standard output. Files are written atomically.
    #[arg(long, short = 'o', default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode payload frames (L-K+1 bits per line) into coded frames (2L bits).
    Encode {
        #[command(flatten)]
        io: Io,
    },
    /// Viterbi-decode coded frames back to payloads.
    Decode {
        #[command(flatten)]
        io: Io,
        /// Survivor memory organisation.
        #[arg(long, default_value = "traceback", value_parser = parse_scheme)]
        scheme: Scheme,
        /// Write the activity report (CSV) to this file.
        #[arg(long, value_name = "PATH")]
        activity: Option<PathBuf>,
        /// Emit all L decoded bits instead of stripping the tail.
        #[arg(long)]
        with_tail: bool,
    },
    /// Brute-force maximum-likelihood decode (payloads up to 24 bits).
    OracleDecode {
        #[command(flatten)]
        io: Io,
        /// Emit all L bits (payload plus zero tail).
        #[arg(long)]
        with_tail: bool,
    },
    /// Flip bits in every frame.
    InjectErrors {
        #[command(flatten)]
        io: Io,
        /// Comma-separated bit indices to flip.
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        positions: Vec<usize>,
        /// Flip this many distinct random positions per frame instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        /// Seed for --random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte-Carlo BER of uncoded BPSK and the coded link over AWGN.
    BerSweep {
        /// Eb/N0 points in dB: start:step:stop, a comma list, or one value.
        #[arg(long, default_value = "0:1:8")]
        ebno: String,
        /// Stop a point after this many bit errors.
        #[arg(long, default_value_t = 200)]
        stop_errors: u64,
        /// Minimum information bits per point.
        #[arg(long, default_value = "0", value_parser = parse_count)]
        min_bits: u64,
        /// Maximum information bits per point.
        #[arg(long, default_value = "1e7", value_parser = parse_count)]
        max_bits: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Transmit without noise.
        #[arg(long)]
        noiseless: bool,
        /// CSV output, or - for standard output.
        #[arg(long, short = 'o', default_value = "-")]
        out: PathBuf,
    },
    /// Compare survivor register activity of trace-back and register exchange.
    PowerCompare {
        #[arg(long, default_value_t = 1000)]
        frames: usize,
        /// Eb/N0 in dB for the noisy test frames.
        #[arg(long, default_value_t = 4.0)]
        ebno: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// CSV output, or - for standard output.
        #[arg(long, short = 'o', default_value = "-")]
        out: PathBuf,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
}

/// Accepts integers and float notation such as `2e7`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("{s:?} is not a non-negative whole number")),
    }
}

/// Parses `start:step:stop` (inclusive), `a,b,c`, or a single value.
pub fn parse_ebno(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| -> Result<f64> {
        let x: f64 = t
            .trim()
            .parse()
            .with_context(|| format!("--ebno: {t:?} is not a number"))?;
        ensure!(x.is_finite(), "--ebno: {t:?} is not finite");
        Ok(x)
    };
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            bail!("--ebno: range must be start:step:stop, got {s:?}");
        }
        let (start, step, stop) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        ensure!(step > 0.0, "--ebno: step must be positive");
        ensure!(stop >= start, "--ebno: stop is below start");
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..n).map(|i| start + i as f64 * step).collect());
    }
    s.split(',').map(num).collect()
}
