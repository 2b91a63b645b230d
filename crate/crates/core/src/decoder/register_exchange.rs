//! Register-exchange survivor storage.

use super::survivor::SurvivorWord;
use crate::bits::FrameRole;
use crate::{BitFrame, Trellis};

/// One decoded-bit register per state. At stage `t` every state copies the
/// `t` bits held by its surviving predecessor and appends its own input bit,
/// so all `2^(K-1)` registers switch at every stage.
#[derive(Debug, Clone)]
pub struct RegisterExchange {
    current: Vec<u8>,
    next: Vec<u8>,
    num_states: usize,
    stages: usize,
    filled: usize,
}

impl RegisterExchange {
    pub fn new(num_states: usize, stages: usize) -> Self {
        RegisterExchange {
            current: vec![0; num_states * stages],
            next: vec![0; num_states * stages],
            num_states,
            stages,
            filled: 0,
        }
    }

    pub fn for_trellis(trellis: &Trellis) -> Self {
        Self::new(trellis.num_states(), trellis.spec().frame_stages())
    }

    pub fn start_frame(&mut self) {
        self.filled = 0;
    }

    /// Bits currently held per register.
    pub fn filled(&self) -> usize {
        self.filled
    }

    /// Applies one stage of survivor decisions. Returns the number of
    /// register bits written.
    pub fn update(&mut self, word: &SurvivorWord, trellis: &Trellis) -> u64 {
        assert!(self.filled < self.stages, "register exchange overflow");
        let len = self.filled;
        let width = self.stages;
        for s in 0..self.num_states {
            let (lo, hi) = trellis.predecessors(s);
            let src = if word.get(s) { hi } else { lo };
            let dst = s * width;
            self.next[dst..dst + len].copy_from_slice(&self.current[src * width..src * width + len]);
            self.next[dst + len] = (s & 1) as u8;
        }
        std::mem::swap(&mut self.current, &mut self.next);
        self.filled += 1;
        (self.num_states * self.filled) as u64
    }

    /// Contents of `state`'s register.
    pub fn read(&self, state: usize) -> BitFrame {
        let start = state * self.stages;
        BitFrame::from_trusted(
            self.current[start..start + self.filled].to_vec(),
            FrameRole::Decoded,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CodeSpec;

    #[test]
    fn write_count_grows_with_stage() {
        let t = Trellis::new(&CodeSpec::wimax()).unwrap();
        let mut re = RegisterExchange::for_trellis(&t);
        let w = SurvivorWord::new(64);
        let counts: Vec<u64> = (0..3).map(|_| re.update(&w, &t)).collect();
        assert_eq!(counts, vec![64, 128, 192]);
        assert_eq!(re.filled(), 3);
        // lower predecessors everywhere: state 1 came from 0, which came from 0
        assert_eq!(re.read(1).bits(), &[0, 0, 1]);
    }
}
