//! Trace-back survivor storage.
//!
//! One stage word per trellis stage, one bit per state: bit `s` of word `t`
//! is 1 when state `s` at stage `t+1` was entered from its upper predecessor.
//! A word is written once, at the stage pointer, and never touched again for
//! the rest of the frame; the pointer plays the role of the ring counter that
//! gates the register clocks.

use crate::bits::FrameRole;
use crate::{BitFrame, Error, Result, Trellis};

/// Survivor decisions for one stage, as a bitset over states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorWord {
    blocks: Vec<u64>,
    num_states: usize,
}

impl SurvivorWord {
    pub fn new(num_states: usize) -> Self {
        SurvivorWord {
            blocks: vec![0; num_states.div_ceil(64)],
            num_states,
        }
    }

    pub fn get(&self, state: usize) -> bool {
        (self.blocks[state / 64] >> (state % 64)) & 1 == 1
    }

    pub fn set(&mut self, state: usize) {
        self.blocks[state / 64] |= 1 << (state % 64);
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn count_ones(&self) -> u32 {
        self.blocks.iter().map(|b| b.count_ones()).sum()
    }
}

/// `L` stage words plus the stage pointer.
#[derive(Debug, Clone)]
pub struct SurvivorMemory {
    words: Vec<SurvivorWord>,
    written: Vec<bool>,
    stage_pointer: usize,
    write_count: u64,
}

impl SurvivorMemory {
    pub fn new(stages: usize, num_states: usize) -> Self {
        SurvivorMemory {
            words: vec![SurvivorWord::new(num_states); stages],
            written: vec![false; stages],
            stage_pointer: 0,
            write_count: 0,
        }
    }

    pub fn for_trellis(trellis: &Trellis) -> Self {
        Self::new(trellis.spec().frame_stages(), trellis.num_states())
    }

    /// Stages consumed in the current frame.
    pub fn stage_pointer(&self) -> usize {
        self.stage_pointer
    }

    pub fn stages(&self) -> usize {
        self.words.len()
    }

    /// Survivor bits written since construction, across frames.
    pub fn write_count(&self) -> u64 {
        self.write_count
    }

    pub fn word(&self, stage: usize) -> &SurvivorWord {
        &self.words[stage]
    }

    pub fn is_full(&self) -> bool {
        self.stage_pointer == self.words.len()
    }

    /// Stores `word` at the stage pointer and advances it. Only the word at
    /// the pointer is touched.
    pub fn write(&mut self, word: &SurvivorWord) -> Result<()> {
        let t = self.stage_pointer;
        if t == self.words.len() {
            return Err(Error::SurvivorOverflow(t));
        }
        if self.written[t] {
            return Err(Error::StageRewrite(t));
        }
        self.words[t].blocks.copy_from_slice(&word.blocks);
        self.written[t] = true;
        self.write_count += self.words[t].num_states as u64;
        self.stage_pointer += 1;
        Ok(())
    }

    /// Rewinds the stage pointer for a new frame. The write counter keeps
    /// accumulating.
    pub fn start_frame(&mut self) {
        self.stage_pointer = 0;
        self.written.iter_mut().for_each(|w| *w = false);
    }

    /// Walks the stored decisions back from `start_state` at the stage
    /// pointer. Returns the visited states newest first, ending at the
    /// stage-0 state, so the path has `stage_pointer + 1` entries.
    pub fn traceback(&self, start_state: usize) -> Vec<usize> {
        let half = self.words.first().map_or(0, |w| w.num_states / 2);
        let mut path = Vec::with_capacity(self.stage_pointer + 1);
        let mut state = start_state;
        path.push(state);
        for t in (0..self.stage_pointer).rev() {
            state = previous_state(state, self.words[t].get(state), half);
            path.push(state);
        }
        path
    }
}

/// For current state `2j` or `2j+1`: the upper branch came from `j + half`,
/// the lower from `j`.
pub fn previous_state(state: usize, from_upper: bool, half: usize) -> usize {
    let j = state >> 1;
    if from_upper {
        j + half
    } else {
        j
    }
}

/// Free-function form of [`SurvivorMemory::traceback`].
pub fn traceback(mem: &SurvivorMemory, start_state: usize) -> Vec<usize> {
    mem.traceback(start_state)
}

/// Decoded bits from a newest-first state path: the input that entered each
/// state is its LSB (odd state means 1). Emitted oldest first.
pub fn output_map(state_path: &[usize]) -> BitFrame {
    let bits = state_path
        .iter()
        .rev()
        .skip(1)
        .map(|&s| (s & 1) as u8)
        .collect();
    BitFrame::from_trusted(bits, FrameRole::Decoded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn previous_state_rule_for_64_states() {
        assert_eq!(previous_state(4, true, 32), 34);
        assert_eq!(previous_state(5, false, 32), 2);
        assert_eq!(previous_state(5, true, 32), 34);
        assert_eq!(previous_state(4, false, 32), 2);
    }

    #[test]
    fn traceback_follows_stored_bits() {
        let mut mem = SurvivorMemory::new(2, 64);
        mem.write(&SurvivorWord::new(64)).unwrap();
        let mut w = SurvivorWord::new(64);
        w.set(4);
        mem.write(&w).unwrap();
        assert_eq!(mem.traceback(4), vec![4, 34, 17]);
    }

    #[test]
    fn all_zero_memory_gives_zero_path() {
        let mut mem = SurvivorMemory::new(40, 64);
        for _ in 0..40 {
            mem.write(&SurvivorWord::new(64)).unwrap();
        }
        let path = traceback(&mem, 0);
        assert_eq!(path.len(), 41);
        assert!(path.iter().all(|&s| s == 0));
        let out = output_map(&path);
        assert_eq!(out.len(), 40);
        assert_eq!(out.weight(), 0);
    }

    #[test]
    fn output_map_odd_states_decode_to_one() {
        // newest first: stage 3 -> 6, stage 2 -> 5, stage 1 -> 2, stage 0 -> 0
        let out = output_map(&[6, 5, 2, 0]);
        assert_eq!(out.bits(), &[0, 1, 0]);
        assert_eq!(out.role(), FrameRole::Decoded);
    }

    #[test]
    fn single_write_per_stage_and_overflow() {
        let mut mem = SurvivorMemory::new(2, 4);
        let w = SurvivorWord::new(4);
        mem.write(&w).unwrap();
        mem.write(&w).unwrap();
        assert_eq!(mem.write(&w), Err(Error::SurvivorOverflow(2)));
        assert_eq!(mem.write_count(), 8);
        mem.start_frame();
        assert_eq!(mem.stage_pointer(), 0);
        mem.write(&w).unwrap();
        assert_eq!(mem.write_count(), 12);
    }

    #[test]
    fn wide_survivor_word() {
        let mut w = SurvivorWord::new(256);
        w.set(200);
        w.set(3);
        assert!(w.get(200) && w.get(3) && !w.get(199));
        assert_eq!(w.count_ones(), 2);
        w.clear();
        assert_eq!(w.count_ones(), 0);
    }
}
