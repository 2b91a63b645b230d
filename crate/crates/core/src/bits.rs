//! Bit frames flowing between encoder, channel and decoder.

use std::fmt;

use crate::{Error, Result};

/// What a [`BitFrame`] holds. Informational; lengths are checked by the
/// operations that consume a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameRole {
    Payload,
    EncoderInput,
    Coded,
    Decoded,
}

/// An ordered sequence of bits, each stored as a `u8` equal to 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitFrame {
    bits: Vec<u8>,
    role: FrameRole,
}

impl BitFrame {
    /// Validating constructor.
    pub fn new(bits: Vec<u8>, role: FrameRole) -> Result<Self> {
        if let Some((index, &value)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(Error::NotABit { index, value });
        }
        Ok(BitFrame { bits, role })
    }

    /// Payload frame. Panics if any element is not 0 or 1.
    pub fn payload(bits: Vec<u8>) -> Self {
        Self::new(bits, FrameRole::Payload).expect("payload bits must be 0 or 1")
    }

    /// Coded frame. Panics if any element is not 0 or 1.
    pub fn coded(bits: Vec<u8>) -> Self {
        Self::new(bits, FrameRole::Coded).expect("coded bits must be 0 or 1")
    }

    pub fn zeros(len: usize, role: FrameRole) -> Self {
        BitFrame {
            bits: vec![0; len],
            role,
        }
    }

    /// Parses a string of ASCII '0' and '1'.
    pub fn parse(text: &str, role: FrameRole) -> Result<Self> {
        let bits = text
            .bytes()
            .enumerate()
            .map(|(index, c)| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                value => Err(Error::NotABit { index, value }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BitFrame { bits, role })
    }

    pub(crate) fn from_trusted(bits: Vec<u8>, role: FrameRole) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BitFrame { bits, role }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn role(&self) -> FrameRole {
        self.role
    }

    pub fn with_role(mut self, role: FrameRole) -> Self {
        self.role = role;
        self
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Number of positions where the two frames differ. Panics on length mismatch.
    pub fn hamming_distance(&self, other: &BitFrame) -> usize {
        hamming(&self.bits, &other.bits)
    }
}

pub(crate) fn hamming(a: &[u8], b: &[u8]) -> usize {
    assert_eq!(a.len(), b.len(), "hamming distance of unequal lengths");
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl fmt::Display for BitFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitFrame({:?}, {})", self.role, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_non_binary_characters() {
        assert_eq!(
            BitFrame::parse("01x0", FrameRole::Payload),
            Err(Error::NotABit {
                index: 2,
                value: b'x'
            })
        );
    }

    #[test]
    fn display_round_trips() {
        let f = BitFrame::parse("0110", FrameRole::Coded).unwrap();
        assert_eq!(f.to_string(), "0110");
        assert_eq!(f.weight(), 2);
    }

    #[test]
    fn new_rejects_values_above_one() {
        assert!(BitFrame::new(vec![0, 2], FrameRole::Payload).is_err());
    }
}
