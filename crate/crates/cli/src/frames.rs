//! Text frame I/O: one frame per line of ASCII '0'/'1'.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use tempfile::NamedTempFile;
use wimax_fec::{BitFrame, FrameRole};

/// A frame with the 1-based line it came from.
pub struct Line {
    pub number: usize,
    pub frame: BitFrame,
}

pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(file)))
}

/// Reads every non-empty line as a bit frame, of exactly `expected_len` bits
/// when given.
pub fn read_frames<R: BufRead>(input: R, expected_len: Option<usize>, role: FrameRole) -> Result<Vec<Line>> {
    let mut frames = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let number = i + 1;
        let line = line.with_context(|| format!("line {number}: read failed"))?;
        if line.is_empty() {
            continue;
        }
        let frame = BitFrame::parse(&line, role).map_err(|_| {
            let (col, c) = line
                .char_indices()
                .find(|&(_, c)| c != '0' && c != '1')
                .expect("parse failed on a non-bit character");
            anyhow::anyhow!("line {number}: malformed bit line, {c:?} at column {}", col + 1)
        })?;
        if let Some(expected_len) = expected_len.filter(|&n| n != frame.len()) {
            bail!(
                "line {number}: frame length mismatch, expected {expected_len} bits, got {}",
                frame.len()
            );
        }
        frames.push(Line { number, frame });
    }
    Ok(frames)
}

/// Writes to standard output, or to a temporary file in the target directory
/// that is renamed over `path` only once everything has been written.
pub fn write_output<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    if path == Path::new("-") {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        body(&mut lock)?;
        lock.flush()?;
        return Ok(());
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot create a file in {}", dir.display()))?;
    {
        let mut w = io::BufWriter::new(tmp.as_file_mut());
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

pub fn write_frames<'a, I>(out: &mut dyn Write, frames: I) -> Result<()>
where
    I: IntoIterator<Item = &'a BitFrame>,
{
    for f in frames {
        writeln!(out, "{f}")?;
    }
    Ok(())
}
