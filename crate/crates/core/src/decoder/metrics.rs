//! Path metrics and the combined branch-metric / add-compare-select stage.

use super::survivor::SurvivorWord;
use crate::{Symbol, Trellis};

/// Hamming distance between a received and an expected 2-bit symbol.
///
/// This is the hard-decision lookup table: every (received, expected) pair
/// maps to 0, 1 or 2.
pub fn branch_metric(received: Symbol, expected: Symbol) -> u32 {
    received.distance(expected)
}

/// Accumulated Hamming metric per state. `None` marks a state that no path
/// from state 0 can have reached yet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMetricBank {
    metrics: Vec<Option<u32>>,
    stage: usize,
}

impl PathMetricBank {
    /// Stage-0 bank: state 0 at metric 0, every other state unreachable.
    pub fn initial(num_states: usize) -> Self {
        let mut metrics = vec![None; num_states];
        metrics[0] = Some(0);
        PathMetricBank { metrics, stage: 0 }
    }

    /// Bank with explicit contents, for driving single ACS steps.
    pub fn from_metrics(metrics: Vec<Option<u32>>, stage: usize) -> Self {
        PathMetricBank { metrics, stage }
    }

    pub fn metric(&self, state: usize) -> Option<u32> {
        self.metrics[state]
    }

    pub fn is_reachable(&self, state: usize) -> bool {
        self.metrics[state].is_some()
    }

    pub fn metrics(&self) -> &[Option<u32>] {
        &self.metrics
    }

    /// Number of ACS stages applied since the initial bank.
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn num_states(&self) -> usize {
        self.metrics.len()
    }

    /// Best metric over reachable states.
    pub fn best(&self) -> Option<(usize, u32)> {
        self.metrics
            .iter()
            .enumerate()
            .filter_map(|(s, m)| m.map(|m| (s, m)))
            .min_by_key(|&(s, m)| (m, s))
    }

    /// Checks that every reachable metric is at most `2 * stage`.
    pub fn within_bound(&self) -> bool {
        let bound = 2 * self.stage as u32;
        self.metrics.iter().flatten().all(|&m| m <= bound)
    }
}

/// One trellis stage: for each state pick the cheaper of its two
/// predecessors. Ties go to the lower predecessor (survivor bit 0); the
/// survivor bit is 1 only when the upper predecessor is strictly better or
/// the only reachable one.
pub fn acs_step(bank: &PathMetricBank, received: Symbol, trellis: &Trellis) -> (PathMetricBank, SurvivorWord) {
    let n = trellis.num_states();
    let mut next = vec![None; n];
    let mut word = SurvivorWord::new(n);
    acs_into(bank.metrics(), &mut next, &mut word, received, trellis);
    (
        PathMetricBank {
            metrics: next,
            stage: bank.stage + 1,
        },
        word,
    )
}

/// Buffer-reusing form of [`acs_step`]. `word` must be cleared by the caller.
pub(crate) fn acs_into(
    metrics: &[Option<u32>],
    next: &mut [Option<u32>],
    word: &mut SurvivorWord,
    received: Symbol,
    trellis: &Trellis,
) {
    for (s, slot) in next.iter_mut().enumerate() {
        let (lo, hi) = trellis.predecessors(s);
        let b = (s & 1) as u8;
        let m_lo = metrics[lo].map(|m| m + branch_metric(received, trellis.branch_symbol(lo, b)));
        let m_hi = metrics[hi].map(|m| m + branch_metric(received, trellis.branch_symbol(hi, b)));
        *slot = match (m_lo, m_hi) {
            (Some(l), Some(h)) if h < l => {
                word.set(s);
                Some(h)
            }
            (Some(l), _) => Some(l),
            (None, Some(h)) => {
                word.set(s);
                Some(h)
            }
            (None, None) => None,
        };
    }
}
