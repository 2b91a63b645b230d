mod args;
mod frames;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use wimax_fec::channel::{self, rng_from_seed};
use wimax_fec::decoder::ViterbiDecoder;
use wimax_fec::harness::{self, PowerConfig, SweepConfig};
use wimax_fec::oracle::{self, MAX_ORACLE_PAYLOAD_BITS};
use wimax_fec::{encoder, BitFrame, CodeSpec, FrameRole, Trellis};

use args::{Cli, Command};
use frames::{open_input, read_frames, write_frames, write_output};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let spec = cli.code.spec()?;
    if cli.spec_dump {
        let stdout = std::io::stdout();
        dump_spec(&spec, &mut stdout.lock())?;
        return Ok(());
    }
    let Some(command) = cli.command else {
        anyhow::bail!("no subcommand given (try --help)");
    };
    let trellis = Trellis::new(&spec)?;

    match command {
        Command::Encode { io } => {
            let input = read_frames(open_input(&io.input)?, Some(spec.payload_length()), FrameRole::Payload)?;
            let coded = input
                .iter()
                .map(|l| encoder::encode_frame(&l.frame, &trellis).with_context(|| format!("line {}", l.number)))
                .collect::<Result<Vec<_>>>()?;
            write_output(&io.output, |w| write_frames(w, &coded))
        }
        Command::Decode {
            io,
            scheme,
            activity,
            with_tail,
        } => {
            let input = read_frames(open_input(&io.input)?, Some(spec.coded_length()), FrameRole::Coded)?;
            let mut engine = ViterbiDecoder::new(&trellis, scheme);
            let decoded = input
                .iter()
                .map(|l| {
                    let out = engine.decode(&l.frame).with_context(|| format!("line {}", l.number))?;
                    Ok(if with_tail { out.decoded } else { out.payload() })
                })
                .collect::<Result<Vec<BitFrame>>>()?;
            if let Some(path) = activity {
                let report = *engine.activity();
                write_output(&path, |w| Ok(harness::write_activity_csv(&[report], w)?))?;
            }
            write_output(&io.output, |w| write_frames(w, &decoded))
        }
        Command::OracleDecode { io, with_tail } => {
            anyhow::ensure!(
                spec.payload_length() <= MAX_ORACLE_PAYLOAD_BITS,
                "oracle-decode enumerates every payload and is limited to {MAX_ORACLE_PAYLOAD_BITS} payload bits; \
                 this code has {} (lower --frame-len)",
                spec.payload_length()
            );
            let input = read_frames(open_input(&io.input)?, Some(spec.coded_length()), FrameRole::Coded)?;
            let decoded = input
                .iter()
                .map(|l| {
                    let r = oracle::ml_decode(&l.frame, &spec).with_context(|| format!("line {}", l.number))?;
                    Ok(if with_tail {
                        encoder::encoder_input(&r.best_payload, &trellis)?
                    } else {
                        r.best_payload
                    })
                })
                .collect::<Result<Vec<BitFrame>>>()?;
            write_output(&io.output, |w| write_frames(w, &decoded))
        }
        Command::InjectErrors {
            io,
            positions,
            random,
            seed,
        } => {
            let input = read_frames(open_input(&io.input)?, None, FrameRole::Coded)?;
            let mut rng = rng_from_seed(seed);
            let out = input
                .iter()
                .map(|l| {
                    let flips = match random {
                        Some(count) => channel::random_positions(l.frame.len(), count, &mut rng)?,
                        None => positions.clone(),
                    };
                    channel::inject_errors(&l.frame, flips).with_context(|| format!("line {}", l.number))
                })
                .collect::<Result<Vec<_>>>()?;
            write_output(&io.output, |w| write_frames(w, &out))
        }
        Command::BerSweep {
            ebno,
            stop_errors,
            min_bits,
            max_bits,
            seed,
            noiseless,
            out,
        } => {
            let cfg = SweepConfig {
                ebno_points: args::parse_ebno(&ebno)?,
                min_info_bits: min_bits,
                max_info_bits: max_bits,
                stop_at_errors: stop_errors,
                seed,
                spec,
                noiseless,
            };
            let points = harness::ber_sweep(&cfg)?;
            write_output(&out, |w| Ok(harness::write_ber_csv(&points, w)?))
        }
        Command::PowerCompare {
            frames,
            ebno,
            seed,
            out,
        } => {
            let cmp = harness::power_compare(&PowerConfig {
                spec,
                frames,
                ebno_db: ebno,
                seed,
            })?;
            write_output(&out, |w| Ok(harness::write_power_csv(&cmp, w)?))
        }
    }
}

fn dump_spec(spec: &CodeSpec, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "constraint_length={}", spec.constraint_length())?;
    writeln!(w, "generators={},{}", spec.generator_octal(0), spec.generator_octal(1))?;
    writeln!(w, "frame_stages={}", spec.frame_stages())?;
    writeln!(w, "payload_bits={}", spec.payload_length())?;
    writeln!(w, "tail_bits={}", spec.tail_length())?;
    writeln!(w, "states={}", spec.num_states())?;
    Ok(())
}
