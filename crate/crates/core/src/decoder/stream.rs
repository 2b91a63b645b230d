//! Frame-synchronous streaming front end.
//!
//! Coded bits arrive one 2-bit symbol per clock. A frame's decoded bits can
//! only be released after its last symbol, because trace-back starts from the
//! known end state. Frame `i` therefore occupies clocks `[i*L, (i+1)*L)` and
//! comes out at clock `(i+1)*L`: a fixed latency of `L` clocks behind its
//! first symbol. In hardware the next frame's ACS stages overlap this
//! frame's trace-back; here trace-back completes before the next push
//! returns.

use super::{FrameDecode, Scheme, ViterbiDecoder};
use crate::{Error, Result, Trellis};

/// A decoded frame with its timing on the symbol clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamFrame {
    pub index: usize,
    pub decode: FrameDecode,
    /// Clock at which the frame's first symbol entered the decoder.
    pub first_symbol_clock: u64,
    /// Clock at which the decoded frame became available.
    pub available_clock: u64,
}

impl StreamFrame {
    /// Symbol clocks between the first input symbol and the decoded output.
    pub fn latency(&self) -> u64 {
        self.available_clock - self.first_symbol_clock
    }
}

/// A partial frame left over when the stream ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedFrame {
    pub index: usize,
    pub bits_received: usize,
    pub bits_expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamReport {
    pub frames: Vec<StreamFrame>,
    pub truncated: Option<TruncatedFrame>,
}

/// Push-based decoder over a continuous coded bit stream.
#[derive(Debug)]
pub struct StreamDecoder<'t> {
    engine: ViterbiDecoder<'t>,
    buffer: Vec<u8>,
    frame_bits: usize,
    frames_done: usize,
    bits_seen: u64,
}

impl<'t> StreamDecoder<'t> {
    pub fn new(trellis: &'t Trellis, scheme: Scheme) -> Self {
        let frame_bits = trellis.spec().coded_length();
        StreamDecoder {
            engine: ViterbiDecoder::new(trellis, scheme),
            buffer: Vec::with_capacity(frame_bits),
            frame_bits,
            frames_done: 0,
            bits_seen: 0,
        }
    }

    /// Symbol clocks elapsed so far (whole symbols received).
    pub fn clock(&self) -> u64 {
        self.bits_seen / 2
    }

    /// Feeds coded bits; returns every frame completed by them, in order.
    pub fn push(&mut self, bits: &[u8]) -> Result<Vec<StreamFrame>> {
        let mut out = Vec::new();
        for &b in bits {
            if b > 1 {
                return Err(Error::NotABit {
                    index: self.bits_seen as usize,
                    value: b,
                });
            }
            self.buffer.push(b);
            self.bits_seen += 1;
            if self.buffer.len() == self.frame_bits {
                let index = self.frames_done;
                let decode = self
                    .engine
                    .decode_bits(&self.buffer)
                    .map_err(|e| e.in_frame(index))?;
                self.buffer.clear();
                self.frames_done += 1;
                let stages = (self.frame_bits / 2) as u64;
                out.push(StreamFrame {
                    index,
                    decode,
                    first_symbol_clock: index as u64 * stages,
                    available_clock: self.clock(),
                });
            }
        }
        Ok(out)
    }

    /// Ends the stream, reporting any incomplete frame.
    pub fn finish(self) -> Option<TruncatedFrame> {
        (!self.buffer.is_empty()).then_some(TruncatedFrame {
            index: self.frames_done,
            bits_received: self.buffer.len(),
            bits_expected: self.frame_bits,
        })
    }
}

/// Decodes a concatenation of coded frames.
pub fn stream_decode(bits: &[u8], trellis: &Trellis, scheme: Scheme) -> Result<StreamReport> {
    let mut dec = StreamDecoder::new(trellis, scheme);
    let frames = dec.push(bits)?;
    Ok(StreamReport {
        frames,
        truncated: dec.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CodeSpec;

    #[test]
    fn empty_stream() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        let r = stream_decode(&[], &t, Scheme::TraceBack).unwrap();
        assert!(r.frames.is_empty());
        assert!(r.truncated.is_none());
    }

    #[test]
    fn single_frame_available_at_end() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        let mut dec = StreamDecoder::new(&t, Scheme::TraceBack);
        assert!(dec.push(&[0; 79]).unwrap().is_empty());
        let out = dec.push(&[0]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].available_clock, 40);
        assert_eq!(out[0].latency(), 40);
        assert!(dec.finish().is_none());
    }

    #[test]
    fn truncated_tail_is_reported() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        let r = stream_decode(&[0; 100], &t, Scheme::RegisterExchange).unwrap();
        assert_eq!(r.frames.len(), 1);
        assert_eq!(
            r.truncated,
            Some(TruncatedFrame {
                index: 1,
                bits_received: 20,
                bits_expected: 80
            })
        );
    }
}
