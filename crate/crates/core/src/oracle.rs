//! Brute-force maximum-likelihood decoding.
//!
//! On a binary symmetric channel the most likely codeword is the one nearest
//! the received word in Hamming distance. [`ml_decode`] finds it by encoding
//! every payload; [`ml_decode_within`] enumerates only the codewords inside a
//! Hamming ball, which reaches full-size frames when the ball is small.
//! Neither uses the trellis tables or the Viterbi recursion.

use crate::bits::FrameRole;
use crate::{BitFrame, CodeSpec, Error, Result};

/// Largest payload [`ml_decode`] will enumerate exhaustively.
pub const MAX_ORACLE_PAYLOAD_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlResult {
    /// Nearest payload; among equals, the lexicographically smallest with
    /// bit 0 most significant.
    pub best_payload: BitFrame,
    pub best_distance: u32,
    pub minimizer_unique: bool,
    pub num_minimizers: u64,
}

/// Zero-tail encoding by direct convolution with the generator taps.
pub fn convolve(spec: &CodeSpec, payload: &[u8]) -> Vec<u8> {
    let k = spec.constraint_length();
    let mut input = payload.to_vec();
    input.resize(payload.len() + k - 1, 0);
    let mut out = Vec::with_capacity(2 * input.len());
    for t in 0..input.len() {
        for g in spec.generators() {
            let mut bit = 0;
            for (i, &tap) in g.iter().enumerate().take(t + 1) {
                bit ^= tap & input[t - i];
            }
            out.push(bit);
        }
    }
    out
}

fn check_received(received: &BitFrame, spec: &CodeSpec) -> Result<()> {
    if received.len() != spec.coded_length() {
        return Err(Error::FrameLength {
            expected: spec.coded_length(),
            got: received.len(),
        });
    }
    Ok(())
}

/// Exhaustive minimum-distance decoding over all `2^(L-K+1)` payloads.
pub fn ml_decode(received: &BitFrame, spec: &CodeSpec) -> Result<MlResult> {
    check_received(received, spec)?;
    let n = spec.payload_length();
    if n > MAX_ORACLE_PAYLOAD_BITS {
        return Err(Error::OracleTooLarge {
            payload_bits: n,
            limit: MAX_ORACLE_PAYLOAD_BITS,
        });
    }
    let rx = received.bits();
    let mut payload = vec![0u8; n];
    let mut best: Option<(u32, u64)> = None;
    let mut count = 0u64;
    for index in 0..(1u64 << n) {
        for (i, bit) in payload.iter_mut().enumerate() {
            *bit = ((index >> (n - 1 - i)) & 1) as u8;
        }
        let d = distance(&convolve(spec, &payload), rx);
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => count += 1,
            _ => {
                best = Some((d, index));
                count = 1;
            }
        }
    }
    let (best_distance, index) = best.expect("payload space is nonempty");
    let best_payload = (0..n).map(|i| ((index >> (n - 1 - i)) & 1) as u8).collect();
    Ok(MlResult {
        best_payload: BitFrame::from_trusted(best_payload, FrameRole::Payload),
        best_distance,
        minimizer_unique: count == 1,
        num_minimizers: count,
    })
}

/// Every payload whose codeword lies within `radius` of `received`, with its
/// distance, in lexicographic payload order.
///
/// Depth-first over input bits; a branch is abandoned once the distance
/// accumulated so far exceeds `radius`, which cannot shrink later.
pub fn codewords_within(received: &BitFrame, spec: &CodeSpec, radius: u32) -> Result<Vec<(BitFrame, u32)>> {
    check_received(received, spec)?;
    let mut found = Vec::new();
    let mut inputs = Vec::with_capacity(spec.frame_stages());
    search(spec, received.bits(), radius, &mut inputs, 0, &mut found);
    Ok(found)
}

fn search(spec: &CodeSpec, rx: &[u8], radius: u32, inputs: &mut Vec<u8>, dist: u32, found: &mut Vec<(BitFrame, u32)>) {
    let t = inputs.len();
    if t == spec.frame_stages() {
        let payload = inputs[..spec.payload_length()].to_vec();
        found.push((BitFrame::from_trusted(payload, FrameRole::Payload), dist));
        return;
    }
    let choices: &[u8] = if t < spec.payload_length() { &[0, 1] } else { &[0] };
    for &b in choices {
        inputs.push(b);
        let mut d = dist;
        for (g, gen) in spec.generators().iter().enumerate() {
            let bit = gen
                .iter()
                .enumerate()
                .take(t + 1)
                .fold(0, |acc, (i, &tap)| acc ^ (tap & inputs[t - i]));
            d += u32::from(bit != rx[2 * t + g]);
        }
        if d <= radius {
            search(spec, rx, radius, inputs, d, found);
        }
        inputs.pop();
    }
}

/// Maximum-likelihood decoding restricted to a Hamming ball. Returns `None`
/// when no codeword lies within `radius`. Otherwise the result is exact: any
/// codeword outside the ball is farther than every one inside it.
pub fn ml_decode_within(received: &BitFrame, spec: &CodeSpec, radius: u32) -> Result<Option<MlResult>> {
    let found = codewords_within(received, spec, radius)?;
    let Some(best_distance) = found.iter().map(|(_, d)| *d).min() else {
        return Ok(None);
    };
    let mut minimizers = found.into_iter().filter(|(_, d)| *d == best_distance);
    let (best_payload, _) = minimizers.next().expect("minimum is attained");
    let num_minimizers = 1 + minimizers.count() as u64;
    Ok(Some(MlResult {
        best_payload,
        best_distance,
        minimizer_unique: num_minimizers == 1,
        num_minimizers,
    }))
}

fn distance(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> CodeSpec {
        CodeSpec::from_octal(3, ["7", "5"], 5).unwrap()
    }

    #[test]
    fn exact_codeword_decodes_to_itself() {
        let spec = k3();
        let rx = BitFrame::coded(convolve(&spec, &[1, 1, 0]));
        let r = ml_decode(&rx, &spec).unwrap();
        assert_eq!(r.best_payload.bits(), &[1, 1, 0]);
        assert_eq!(r.best_distance, 0);
        assert!(r.minimizer_unique);
    }

    #[test]
    fn k3_single_flip() {
        let spec = k3();
        let mut rx = BitFrame::parse("1110001011", FrameRole::Coded).unwrap().into_bits();
        rx[0] ^= 1;
        let r = ml_decode(&BitFrame::coded(rx), &spec).unwrap();
        assert_eq!(r.best_payload.bits(), &[1, 0, 1]);
        assert_eq!(r.best_distance, 1);
        assert!(r.minimizer_unique);
    }

    #[test]
    fn zero_word_with_one_flip() {
        for spec in [k3(), CodeSpec::from_octal(5, ["23", "35"], 12).unwrap()] {
            let mut rx = vec![0; spec.coded_length()];
            rx[3] = 1;
            let r = ml_decode(&BitFrame::coded(rx), &spec).unwrap();
            assert_eq!(r.best_payload.weight(), 0);
            assert_eq!(r.best_distance, 1);
            assert!(r.minimizer_unique);
        }
    }

    #[test]
    fn ties_resolve_lexicographically() {
        // K=3, L=4: payloads 01 and 10 encode to 00111011 and 11101100, both
        // at distance 3 from 00101101; 00 and 11 are at 4 and 6.
        let spec = CodeSpec::from_octal(3, ["7", "5"], 4).unwrap();
        assert_eq!(convolve(&spec, &[0, 1]), vec![0, 0, 1, 1, 1, 0, 1, 1]);
        assert_eq!(convolve(&spec, &[1, 0]), vec![1, 1, 1, 0, 1, 1, 0, 0]);
        let rx = BitFrame::coded(vec![0, 0, 1, 0, 1, 1, 0, 1]);
        let r = ml_decode(&rx, &spec).unwrap();
        assert_eq!(r.best_distance, 3);
        assert_eq!(r.num_minimizers, 2);
        assert!(!r.minimizer_unique);
        assert_eq!(r.best_payload.bits(), &[0, 1]);
        assert_eq!(ml_decode_within(&rx, &spec, 3).unwrap().unwrap(), r);
    }

    #[test]
    fn guard_rejects_large_payloads() {
        let rx = BitFrame::zeros(80, FrameRole::Coded);
        assert_eq!(
            ml_decode(&rx, &CodeSpec::wimax()),
            Err(Error::OracleTooLarge {
                payload_bits: 34,
                limit: 24
            })
        );
    }

    #[test]
    fn ball_search_agrees_with_exhaustive() {
        let spec = CodeSpec::from_octal(5, ["23", "35"], 12).unwrap();
        let mut rx = vec![0u8; 24];
        for i in [1, 5, 6, 13, 20] {
            rx[i] = 1;
        }
        let rx = BitFrame::coded(rx);
        let full = ml_decode(&rx, &spec).unwrap();
        let ball = ml_decode_within(&rx, &spec, full.best_distance).unwrap().unwrap();
        assert_eq!(ball, full);
        if full.best_distance > 0 {
            assert_eq!(ml_decode_within(&rx, &spec, full.best_distance - 1).unwrap(), None);
        }
    }

    #[test]
    fn seven_error_pattern_has_unique_nearest_codeword() {
        let mut rx = vec![0u8; 80];
        for i in [3, 17, 30, 41, 55, 60, 76] {
            rx[i] = 1;
        }
        let r = ml_decode_within(&BitFrame::coded(rx), &CodeSpec::wimax(), 7)
            .unwrap()
            .unwrap();
        assert_eq!(r.best_distance, 7);
        assert!(r.minimizer_unique);
        assert_eq!(r.best_payload.weight(), 0);
    }

    proptest::proptest! {
        #[test]
        fn one_flip_moves_distance_by_at_most_one(
            bits in proptest::collection::vec(0u8..2, 14),
            flip in 0usize..14,
        ) {
            let spec = CodeSpec::from_octal(3, ["7", "5"], 7).unwrap();
            let a = ml_decode(&BitFrame::coded(bits.clone()), &spec).unwrap();
            let mut flipped = bits;
            flipped[flip] ^= 1;
            let b = ml_decode(&BitFrame::coded(flipped), &spec).unwrap();
            proptest::prop_assert!(a.best_distance.abs_diff(b.best_distance) <= 1);
        }
    }
}
