//! Hard-decision Viterbi decoder for zero-tail frames.
//!
//! Both survivor organisations run the same add-compare-select recursion with
//! the same tie rule, so they produce identical decisions:
//!
//! - [`Scheme::TraceBack`] stores one survivor word per stage in a
//!   [`SurvivorMemory`] and walks it back from state 0 once the frame is in.
//! - [`Scheme::RegisterExchange`] keeps a decoded-bit register per state and
//!   copies every register forward at every stage.
//!
//! [`ActivityReport`] counts register bit-writes for each organisation as a
//! switching-activity proxy for power.

mod metrics;
mod register_exchange;
mod stream;
mod survivor;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::FrameRole;
use crate::trellis::Symbol;
use crate::{BitFrame, Error, Result, Trellis};

pub use metrics::{acs_step, branch_metric, PathMetricBank};
pub use register_exchange::RegisterExchange;
pub use stream::{stream_decode, StreamDecoder, StreamFrame, StreamReport, TruncatedFrame};
pub use survivor::{output_map, previous_state, traceback, SurvivorMemory, SurvivorWord};

/// Survivor-memory organisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scheme {
    #[serde(rename = "traceback")]
    TraceBack,
    #[serde(rename = "regex")]
    RegisterExchange,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::TraceBack => "traceback",
            Scheme::RegisterExchange => "regex",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "traceback" | "trace-back" | "tb" => Ok(Scheme::TraceBack),
            "regex" | "register-exchange" | "re" => Ok(Scheme::RegisterExchange),
            other => Err(format!("unknown scheme {other:?} (expected traceback or regex)")),
        }
    }
}

/// Register activity accumulated over decoded frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActivityReport {
    pub scheme: Scheme,
    pub frames: u64,
    /// Survivor register bits written.
    pub survivor_bit_writes: u64,
    /// Path-metric register writes, one per state per stage.
    pub metric_writes: u64,
    /// Survivor bits read while tracing back. Zero for register exchange,
    /// which reads out state 0's register directly.
    pub traceback_reads: u64,
}

impl ActivityReport {
    pub fn new(scheme: Scheme) -> Self {
        ActivityReport {
            scheme,
            frames: 0,
            survivor_bit_writes: 0,
            metric_writes: 0,
            traceback_reads: 0,
        }
    }

    pub fn accumulate(&mut self, other: &ActivityReport) {
        debug_assert_eq!(self.scheme, other.scheme);
        self.frames += other.frames;
        self.survivor_bit_writes += other.survivor_bit_writes;
        self.metric_writes += other.metric_writes;
        self.traceback_reads += other.traceback_reads;
    }
}

/// Result of decoding one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameDecode {
    /// All `L` decoded encoder inputs, tail included.
    pub decoded: BitFrame,
    /// Metric of state 0 after the last stage: the Hamming distance between
    /// the received frame and the decoded codeword.
    pub final_metric: u32,
    pub activity: ActivityReport,
    payload_length: usize,
}

impl FrameDecode {
    /// The decoded payload, tail removed.
    pub fn payload(&self) -> BitFrame {
        BitFrame::from_trusted(
            self.decoded.bits()[..self.payload_length].to_vec(),
            FrameRole::Payload,
        )
    }
}

/// Reusable decoder engine. One frame at a time; create one per thread to
/// decode in parallel.
#[derive(Debug)]
pub struct ViterbiDecoder<'t> {
    trellis: &'t Trellis,
    scheme: Scheme,
    metrics: Vec<Option<u32>>,
    next_metrics: Vec<Option<u32>>,
    word: SurvivorWord,
    memory: SurvivorMemory,
    registers: RegisterExchange,
    activity: ActivityReport,
}

impl<'t> ViterbiDecoder<'t> {
    pub fn new(trellis: &'t Trellis, scheme: Scheme) -> Self {
        let n = trellis.num_states();
        ViterbiDecoder {
            trellis,
            scheme,
            metrics: vec![None; n],
            next_metrics: vec![None; n],
            word: SurvivorWord::new(n),
            memory: SurvivorMemory::for_trellis(trellis),
            registers: match scheme {
                Scheme::RegisterExchange => RegisterExchange::for_trellis(trellis),
                Scheme::TraceBack => RegisterExchange::new(0, 0),
            },
            activity: ActivityReport::new(scheme),
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn trellis(&self) -> &'t Trellis {
        self.trellis
    }

    /// Activity summed over every frame this engine decoded.
    pub fn activity(&self) -> &ActivityReport {
        &self.activity
    }

    /// Survivor memory as left by the last trace-back decode.
    pub fn survivor_memory(&self) -> &SurvivorMemory {
        &self.memory
    }

    /// Decodes one `2L`-bit coded frame.
    pub fn decode(&mut self, coded: &BitFrame) -> Result<FrameDecode> {
        self.decode_bits(coded.bits())
    }

    pub(crate) fn decode_bits(&mut self, coded: &[u8]) -> Result<FrameDecode> {
        let spec = self.trellis.spec();
        let stages = spec.frame_stages();
        if coded.len() != 2 * stages {
            return Err(Error::FrameLength {
                expected: 2 * stages,
                got: coded.len(),
            });
        }
        let n = self.trellis.num_states();
        let mut frame = ActivityReport::new(self.scheme);
        frame.frames = 1;

        self.metrics.iter_mut().for_each(|m| *m = None);
        self.metrics[0] = Some(0);
        self.memory.start_frame();
        if self.scheme == Scheme::RegisterExchange {
            self.registers.start_frame();
        }

        for (t, pair) in coded.chunks_exact(2).enumerate() {
            let received = Symbol::from_pair(pair);
            self.word.clear();
            metrics::acs_into(&self.metrics, &mut self.next_metrics, &mut self.word, received, self.trellis);
            std::mem::swap(&mut self.metrics, &mut self.next_metrics);
            frame.metric_writes += n as u64;

            let bound = 2 * (t as u32 + 1);
            if let Some(m) = self.metrics.iter().flatten().find(|&&m| m > bound) {
                return Err(Error::Internal(format!("metric {m} exceeds bound {bound} at stage {t}")));
            }

            match self.scheme {
                Scheme::TraceBack => {
                    let before = self.memory.write_count();
                    self.memory.write(&self.word)?;
                    frame.survivor_bit_writes += self.memory.write_count() - before;
                }
                Scheme::RegisterExchange => {
                    frame.survivor_bit_writes += self.registers.update(&self.word, self.trellis);
                }
            }
        }

        let final_metric = self.metrics[0]
            .ok_or_else(|| Error::Internal("state 0 unreachable at end of frame".into()))?;

        let decoded = match self.scheme {
            Scheme::TraceBack => {
                let path = self.memory.traceback(0);
                frame.traceback_reads += stages as u64;
                debug_assert_eq!(path.last(), Some(&0));
                output_map(&path)
            }
            Scheme::RegisterExchange => self.registers.read(0),
        };

        self.activity.accumulate(&frame);
        Ok(FrameDecode {
            decoded,
            final_metric,
            activity: frame,
            payload_length: spec.payload_length(),
        })
    }
}

/// Trace-back decode of one frame.
pub fn decode_frame(coded: &BitFrame, trellis: &Trellis) -> Result<FrameDecode> {
    ViterbiDecoder::new(trellis, Scheme::TraceBack).decode(coded)
}

/// Register-exchange decode of one frame. Same output as [`decode_frame`].
pub fn decode_frame_register_exchange(coded: &BitFrame, trellis: &Trellis) -> Result<FrameDecode> {
    ViterbiDecoder::new(trellis, Scheme::RegisterExchange).decode(coded)
}

/// Decodes a list of frames with one engine, returning per-frame results.
pub fn decode_frames<'a, I>(coded: I, trellis: &Trellis, scheme: Scheme) -> Result<(Vec<FrameDecode>, ActivityReport)>
where
    I: IntoIterator<Item = &'a BitFrame>,
{
    let mut engine = ViterbiDecoder::new(trellis, scheme);
    let frames = coded
        .into_iter()
        .enumerate()
        .map(|(i, f)| engine.decode(f).map_err(|e| e.in_frame(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok((frames, *engine.activity()))
}
