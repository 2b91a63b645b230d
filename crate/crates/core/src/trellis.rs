//! Code definition and the precomputed trellis.
//!
//! State convention: a state holds the last `K-1` encoder inputs with the
//! newest bit in the least significant position, so input `b` moves state `p`
//! to `(2p + b) mod 2^(K-1)`. Every state `s` therefore has the butterfly
//! predecessors `s/2` (lower) and `s/2 + 2^(K-2)` (upper), and its LSB is the
//! input bit that entered it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::{Error, Result};

/// Largest supported constraint length. Survivor words are bitsets over
/// `2^(K-1)` states, so this bounds memory rather than correctness.
pub const MAX_CONSTRAINT_LENGTH: usize = 16;

/// Rate-1/2 convolutional code plus frame geometry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    constraint_length: usize,
    /// Tap vectors, tap 0 applied to the newest input bit.
    generators: [Vec<u8>; 2],
    frame_stages: usize,
}

impl CodeSpec {
    /// The 802.16 code: K = 7, generators 171 and 133 (octal), 40-stage frames
    /// carrying 34 payload bits and a 6-bit zero tail.
    pub fn wimax() -> Self {
        Self::from_octal(7, ["171", "133"], 40).expect("default code is valid")
    }

    pub fn new(constraint_length: usize, generators: [Vec<u8>; 2], frame_stages: usize) -> Result<Self> {
        if constraint_length < 2 {
            return Err(Error::ConstraintLength(constraint_length));
        }
        if constraint_length > MAX_CONSTRAINT_LENGTH {
            return Err(Error::ConstraintLengthTooLarge(constraint_length));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != constraint_length {
                return Err(Error::GeneratorLength {
                    index,
                    got: g.len(),
                    expected: constraint_length,
                });
            }
            if g.iter().any(|&t| t > 1) {
                return Err(Error::GeneratorTaps { index });
            }
        }
        let tail = constraint_length - 1;
        if frame_stages <= tail || frame_stages < constraint_length {
            return Err(Error::FrameTooShort { frame_stages, tail });
        }
        Ok(CodeSpec {
            constraint_length,
            generators,
            frame_stages,
        })
    }

    /// Builds a spec from octal generator strings such as `"171"`. The most
    /// significant of the `K` bits is tap 0.
    pub fn from_octal(constraint_length: usize, generators: [&str; 2], frame_stages: usize) -> Result<Self> {
        if constraint_length < 2 {
            return Err(Error::ConstraintLength(constraint_length));
        }
        if constraint_length > MAX_CONSTRAINT_LENGTH {
            return Err(Error::ConstraintLengthTooLarge(constraint_length));
        }
        let taps = |text: &str| -> Result<Vec<u8>> {
            let value = u32::from_str_radix(text.trim(), 8)
                .map_err(|_| Error::GeneratorOctal(text.to_string()))?;
            if value >> constraint_length != 0 {
                return Err(Error::GeneratorOctal(text.to_string()));
            }
            Ok((0..constraint_length)
                .map(|i| ((value >> (constraint_length - 1 - i)) & 1) as u8)
                .collect())
        };
        Self::new(
            constraint_length,
            [taps(generators[0])?, taps(generators[1])?],
            frame_stages,
        )
    }

    pub fn constraint_length(&self) -> usize {
        self.constraint_length
    }

    pub fn generators(&self) -> &[Vec<u8>; 2] {
        &self.generators
    }

    /// Generator `i` as an octal string, tap 0 most significant.
    pub fn generator_octal(&self, i: usize) -> String {
        let value = self.generators[i]
            .iter()
            .fold(0u32, |acc, &t| (acc << 1) | u32::from(t));
        format!("{value:o}")
    }

    /// Total encoder inputs per frame, tail included.
    pub fn frame_stages(&self) -> usize {
        self.frame_stages
    }

    pub fn tail_length(&self) -> usize {
        self.constraint_length - 1
    }

    pub fn payload_length(&self) -> usize {
        self.frame_stages - self.tail_length()
    }

    pub fn coded_length(&self) -> usize {
        2 * self.frame_stages
    }

    pub fn num_states(&self) -> usize {
        1 << (self.constraint_length - 1)
    }

    /// True when both generators tap the newest and the oldest register bit.
    pub fn has_full_span_taps(&self) -> bool {
        let last = self.constraint_length - 1;
        self.generators.iter().all(|g| g[0] == 1 && g[last] == 1)
    }

    /// Same code with a different frame length.
    pub fn with_frame_stages(&self, frame_stages: usize) -> Result<Self> {
        Self::new(self.constraint_length, self.generators.clone(), frame_stages)
    }

    /// Tap vector as a mask over the shift register `input | state << 1`.
    pub(crate) fn tap_mask(&self, i: usize) -> u32 {
        self.generators[i]
            .iter()
            .enumerate()
            .fold(0, |acc, (pos, &t)| acc | (u32::from(t) << pos))
    }
}

impl Default for CodeSpec {
    fn default() -> Self {
        Self::wimax()
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K={} generators={},{} L={} (payload {}, tail {})",
            self.constraint_length,
            self.generator_octal(0),
            self.generator_octal(1),
            self.frame_stages,
            self.payload_length(),
            self.tail_length()
        )
    }
}

impl fmt::Debug for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CodeSpec({self})")
    }
}

/// A 2-bit output symbol: first-generator bit in bit 1, second in bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Symbol(u8);

impl Symbol {
    pub fn new(first: u8, second: u8) -> Self {
        Symbol(((first & 1) << 1) | (second & 1))
    }

    pub fn first(self) -> u8 {
        self.0 >> 1
    }

    pub fn second(self) -> u8 {
        self.0 & 1
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn complement(self) -> Self {
        Symbol(self.0 ^ 0b11)
    }

    /// Hamming distance between two symbols.
    pub fn distance(self, other: Symbol) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    pub(crate) fn from_pair(bits: &[u8]) -> Self {
        Symbol::new(bits[0], bits[1])
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first(), self.second())
    }
}

/// Transition tables for every state of a [`CodeSpec`].
#[derive(Debug, Clone)]
pub struct Trellis {
    spec: CodeSpec,
    num_states: usize,
    next_state: Vec<[usize; 2]>,
    branch_symbol: Vec<[Symbol; 2]>,
}

impl Trellis {
    pub fn new(spec: &CodeSpec) -> Result<Self> {
        let num_states = spec.num_states();
        let masks = [spec.tap_mask(0), spec.tap_mask(1)];
        let mut next_state = Vec::with_capacity(num_states);
        let mut branch_symbol = Vec::with_capacity(num_states);
        for p in 0..num_states {
            let mut next = [0; 2];
            let mut sym = [Symbol::default(); 2];
            for b in 0..2 {
                next[b] = (2 * p + b) % num_states;
                let register = (b as u32) | ((p as u32) << 1);
                sym[b] = Symbol::new(
                    (register & masks[0]).count_ones() as u8 & 1,
                    (register & masks[1]).count_ones() as u8 & 1,
                );
            }
            next_state.push(next);
            branch_symbol.push(sym);
        }
        Ok(Trellis {
            spec: spec.clone(),
            num_states,
            next_state,
            branch_symbol,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// `2^(K-2)`: offset between the two predecessors of a butterfly.
    pub fn half_states(&self) -> usize {
        self.num_states / 2
    }

    pub fn next_state(&self, state: usize, input: u8) -> usize {
        self.next_state[state][usize::from(input)]
    }

    pub fn branch_symbol(&self, state: usize, input: u8) -> Symbol {
        self.branch_symbol[state][usize::from(input)]
    }

    /// `(lower, upper)` predecessors of `state`.
    pub fn predecessors(&self, state: usize) -> (usize, usize) {
        let lower = state / 2;
        (lower, lower + self.half_states())
    }

    /// Minimum output weight of a path that leaves state 0 and first returns
    /// to it, found by best-first search bounded by `weight_cap`.
    pub fn free_distance(&self, weight_cap: u32) -> FreeDistance {
        let mut best = vec![u32::MAX; self.num_states];
        let mut heap = BinaryHeap::new();
        let leave = self.next_state(0, 1);
        let w0 = self.branch_symbol(0, 1).weight();
        if leave == 0 {
            return FreeDistance::within_cap(w0, weight_cap);
        }
        best[leave] = w0;
        heap.push(Reverse((w0, leave)));
        while let Some(Reverse((w, s))) = heap.pop() {
            if w > weight_cap {
                break;
            }
            if s == 0 {
                return FreeDistance::Distance(w);
            }
            if w > best[s] {
                continue;
            }
            for b in 0..2u8 {
                let n = self.next_state(s, b);
                let nw = w + self.branch_symbol(s, b).weight();
                if nw < best[n] {
                    best[n] = nw;
                    heap.push(Reverse((nw, n)));
                }
            }
        }
        FreeDistance::ExceedsCap
    }
}

/// Result of [`free_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeDistance {
    Distance(u32),
    /// No re-merging path of weight at most the cap exists.
    ExceedsCap,
}

impl FreeDistance {
    fn within_cap(w: u32, cap: u32) -> Self {
        if w <= cap {
            FreeDistance::Distance(w)
        } else {
            FreeDistance::ExceedsCap
        }
    }

    pub fn value(self) -> Option<u32> {
        match self {
            FreeDistance::Distance(d) => Some(d),
            FreeDistance::ExceedsCap => None,
        }
    }

    /// Number of channel errors always corrected: `(d_free - 1) / 2`.
    pub fn correction_radius(self) -> Option<u32> {
        self.value().map(|d| d.saturating_sub(1) / 2)
    }
}

/// Free distance of `spec`'s code, or [`FreeDistance::ExceedsCap`].
pub fn free_distance(spec: &CodeSpec, weight_cap: u32) -> Result<FreeDistance> {
    Ok(Trellis::new(spec)?.free_distance(weight_cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct convolution of one input sequence, independent of the tables.
    fn convolve(spec: &CodeSpec, inputs: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for t in 0..inputs.len() {
            for g in spec.generators() {
                let mut acc = 0;
                for (i, &tap) in g.iter().enumerate() {
                    if i <= t {
                        acc ^= tap & inputs[t - i];
                    }
                }
                out.push(acc);
            }
        }
        out
    }

    fn k3() -> CodeSpec {
        CodeSpec::new(3, [vec![1, 1, 1], vec![1, 0, 1]], 5).unwrap()
    }

    #[test]
    fn wimax_taps_match_octal_171_133() {
        let spec = CodeSpec::wimax();
        assert_eq!(spec.generators()[0], vec![1, 1, 1, 1, 0, 0, 1]);
        assert_eq!(spec.generators()[1], vec![1, 0, 1, 1, 0, 1, 1]);
        assert_eq!(spec.generator_octal(0), "171");
        assert_eq!(spec.generator_octal(1), "133");
        assert_eq!(spec.payload_length(), 34);
        assert_eq!(spec.tail_length(), 6);
        assert_eq!(spec.num_states(), 64);
        assert!(spec.has_full_span_taps());
    }

    #[test]
    fn zero_state_zero_input_emits_zeros() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        assert_eq!(t.branch_symbol(0, 0), Symbol::new(0, 0));
        assert_eq!(t.next_state(0, 0), 0);
    }

    #[test]
    fn wimax_predecessors_of_state_4() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        assert_eq!(t.predecessors(4), (2, 34));
    }

    #[test]
    fn k3_state0_input1() {
        let t = Trellis::new(&k3()).unwrap();
        assert_eq!(t.next_state(0, 1), 1);
        assert_eq!(t.branch_symbol(0, 1), Symbol::new(1, 1));
    }

    #[test]
    fn branch_symbols_agree_with_direct_convolution() {
        for spec in [k3(), CodeSpec::wimax()] {
            let t = Trellis::new(&spec).unwrap();
            let m = spec.constraint_length() - 1;
            for p in 0..t.num_states() {
                for b in 0..2u8 {
                    // inputs oldest first: state bits from bit m-1 down to bit 0, then b
                    let mut inputs: Vec<u8> = (0..m).rev().map(|i| ((p >> i) & 1) as u8).collect();
                    inputs.push(b);
                    let out = convolve(&spec, &inputs);
                    let last = &out[out.len() - 2..];
                    assert_eq!(t.branch_symbol(p, b), Symbol::from_pair(last), "p={p} b={b}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            CodeSpec::new(1, [vec![1], vec![1]], 4),
            Err(Error::ConstraintLength(1))
        );
        assert!(matches!(
            CodeSpec::new(3, [vec![1, 1], vec![1, 0, 1]], 5),
            Err(Error::GeneratorLength { index: 0, got: 2, expected: 3 })
        ));
        assert!(matches!(
            CodeSpec::new(3, [vec![1, 1, 1], vec![1, 0, 1]], 2),
            Err(Error::FrameTooShort { .. })
        ));
        assert!(CodeSpec::from_octal(3, ["17", "5"], 5).is_err());
        assert!(CodeSpec::from_octal(3, ["9", "5"], 5).is_err());
    }

    #[test]
    fn butterfly_closure_and_lsb() {
        for spec in [k3(), CodeSpec::wimax(), CodeSpec::from_octal(5, ["23", "35"], 12).unwrap()] {
            let t = Trellis::new(&spec).unwrap();
            let half = t.half_states();
            let mut in_degree = vec![0; t.num_states()];
            for j in 0..half {
                for b in 0..2u8 {
                    let s = t.next_state(j, b);
                    assert_eq!(s, 2 * j + b as usize);
                    assert_eq!(t.next_state(j + half, b), s);
                    assert_eq!(s & 1, b as usize);
                }
            }
            for p in 0..t.num_states() {
                for b in 0..2u8 {
                    in_degree[t.next_state(p, b)] += 1;
                }
            }
            assert!(in_degree.iter().all(|&d| d == 2));
            for s in 0..t.num_states() {
                let (lo, hi) = t.predecessors(s);
                let b = (s & 1) as u8;
                assert_eq!(t.next_state(lo, b), s);
                assert_eq!(t.next_state(hi, b), s);
            }
        }
    }

    #[test]
    fn wimax_butterfly_antipodal_symbols() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        for j in 0..32 {
            for b in 0..2u8 {
                assert_eq!(t.branch_symbol(j, b), t.branch_symbol(j + 32, b).complement());
            }
        }
    }

    #[test]
    fn free_distance_known_codes() {
        assert_eq!(free_distance(&k3(), 16).unwrap(), FreeDistance::Distance(5));
        assert_eq!(free_distance(&CodeSpec::wimax(), 16).unwrap(), FreeDistance::Distance(10));
        assert_eq!(free_distance(&CodeSpec::wimax(), 1).unwrap(), FreeDistance::ExceedsCap);
        assert_eq!(free_distance(&CodeSpec::wimax(), 9).unwrap(), FreeDistance::ExceedsCap);
        assert_eq!(FreeDistance::Distance(10).correction_radius(), Some(4));
    }
}
