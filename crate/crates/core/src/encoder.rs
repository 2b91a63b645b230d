//! Zero-tail frame encoder.
//!
//! Each payload is followed by `K-1` zero bits, which returns the encoder to
//! state 0, so frames encode independently of one another. Per input bit the
//! first-generator output precedes the second-generator output on the wire.

use crate::bits::FrameRole;
use crate::{BitFrame, Error, Result, Trellis};

/// Appends the zero tail to a payload, yielding the `L`-bit encoder input.
pub fn encoder_input(payload: &BitFrame, trellis: &Trellis) -> Result<BitFrame> {
    let spec = trellis.spec();
    if payload.len() != spec.payload_length() {
        return Err(Error::FrameLength {
            expected: spec.payload_length(),
            got: payload.len(),
        });
    }
    let mut bits = Vec::with_capacity(spec.frame_stages());
    bits.extend_from_slice(payload.bits());
    bits.resize(spec.frame_stages(), 0);
    Ok(BitFrame::from_trusted(bits, FrameRole::EncoderInput))
}

/// Encodes one `L-(K-1)` bit payload into a `2L` bit coded frame.
pub fn encode_frame(payload: &BitFrame, trellis: &Trellis) -> Result<BitFrame> {
    let input = encoder_input(payload, trellis)?;
    let mut coded = Vec::with_capacity(2 * input.len());
    let mut state = 0;
    for &b in input.bits() {
        let sym = trellis.branch_symbol(state, b);
        coded.push(sym.first());
        coded.push(sym.second());
        state = trellis.next_state(state, b);
    }
    debug_assert_eq!(state, 0, "zero tail must return the encoder to state 0");
    Ok(BitFrame::from_trusted(coded, FrameRole::Coded))
}

/// Encodes a sequence of payloads frame by frame.
pub fn encode_stream<'a, I>(payloads: I, trellis: &Trellis) -> Result<Vec<BitFrame>>
where
    I: IntoIterator<Item = &'a BitFrame>,
{
    payloads
        .into_iter()
        .enumerate()
        .map(|(i, p)| encode_frame(p, trellis).map_err(|e| e.in_frame(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CodeSpec;
    use proptest::prelude::*;

    /// Bitwise convolution of the tail-terminated input, independent of the trellis.
    fn convolve(spec: &CodeSpec, payload: &[u8]) -> Vec<u8> {
        let mut input = payload.to_vec();
        input.resize(spec.frame_stages(), 0);
        let mut out = Vec::new();
        for t in 0..input.len() {
            for g in spec.generators() {
                let bit = g
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i <= t)
                    .fold(0, |acc, (i, &tap)| acc ^ (tap & input[t - i]));
                out.push(bit);
            }
        }
        out
    }

    fn wimax() -> Trellis {
        Trellis::new(&CodeSpec::wimax()).unwrap()
    }

    #[test]
    fn all_zero_payload() {
        let t = wimax();
        let coded = encode_frame(&BitFrame::payload(vec![0; 34]), &t).unwrap();
        assert_eq!(coded.len(), 80);
        assert_eq!(coded.weight(), 0);
    }

    #[test]
    fn impulse_response_is_interleaved_taps() {
        let t = wimax();
        let mut p = vec![0; 34];
        p[0] = 1;
        let coded = encode_frame(&BitFrame::payload(p.clone()), &t).unwrap();
        let expected = BitFrame::parse("11101111000111", FrameRole::Coded).unwrap();
        assert_eq!(&coded.bits()[..14], expected.bits());
        assert!(coded.bits()[14..].iter().all(|&b| b == 0));
        assert_eq!(coded.bits(), convolve(t.spec(), &p).as_slice());
    }

    #[test]
    fn k3_example() {
        let spec = CodeSpec::new(3, [vec![1, 1, 1], vec![1, 0, 1]], 5).unwrap();
        let t = Trellis::new(&spec).unwrap();
        let coded = encode_frame(&BitFrame::payload(vec![1, 0, 1]), &t).unwrap();
        assert_eq!(coded.to_string(), "1110001011");
        assert_eq!(coded.bits(), convolve(&spec, &[1, 0, 1]).as_slice());
    }

    #[test]
    fn wrong_payload_length() {
        let t = wimax();
        assert_eq!(
            encode_frame(&BitFrame::payload(vec![0; 40]), &t),
            Err(Error::FrameLength {
                expected: 34,
                got: 40
            })
        );
    }

    #[test]
    fn stream_reports_frame_index() {
        let t = wimax();
        let frames = [BitFrame::payload(vec![0; 34]), BitFrame::payload(vec![0; 3])];
        let err = encode_stream(&frames, &t).unwrap_err();
        assert!(matches!(err, Error::InFrame { index: 1, .. }));
        assert!(encode_stream(&[], &t).unwrap().is_empty());
        let zeros = [BitFrame::payload(vec![0; 34]), BitFrame::payload(vec![0; 34])];
        let out = encode_stream(&zeros, &t).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|f| f.len() == 80 && f.weight() == 0));
    }

    proptest! {
        #[test]
        fn matches_direct_convolution(p in prop::collection::vec(0u8..2, 34)) {
            let t = wimax();
            let coded = encode_frame(&BitFrame::payload(p.clone()), &t).unwrap();
            let expected = convolve(t.spec(), &p);
            prop_assert_eq!(coded.bits(), expected.as_slice());
        }

        #[test]
        fn linear(a in prop::collection::vec(0u8..2, 34), b in prop::collection::vec(0u8..2, 34)) {
            let t = wimax();
            let x: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            let ea = encode_frame(&BitFrame::payload(a), &t).unwrap();
            let eb = encode_frame(&BitFrame::payload(b), &t).unwrap();
            let ex = encode_frame(&BitFrame::payload(x), &t).unwrap();
            let xor: Vec<u8> = ea.bits().iter().zip(eb.bits()).map(|(x, y)| x ^ y).collect();
            prop_assert_eq!(ex.bits(), xor.as_slice());
        }

        #[test]
        fn stream_is_elementwise(a in prop::collection::vec(0u8..2, 34), b in prop::collection::vec(0u8..2, 34)) {
            let t = wimax();
            let frames = [BitFrame::payload(a), BitFrame::payload(b)];
            let out = encode_stream(&frames, &t).unwrap();
            prop_assert_eq!(&out[0], &encode_frame(&frames[0], &t).unwrap());
            prop_assert_eq!(&out[1], &encode_frame(&frames[1], &t).unwrap());
        }
    }
}
