//! BPSK over AWGN with hard-decision quantisation, plus deterministic bit-flip
//! injection.
//!
//! Noise comes from a ChaCha8 generator seeded with [`NoiseConfig::seed`];
//! Gaussian samples use the ziggurat transform of `rand_distr::StandardNormal`.
//! Both are portable, so a seed reproduces the same samples on every platform.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bits::FrameRole;
use crate::{BitFrame, Error, Result};

/// The generator used for all channel noise and payload generation.
pub type ChannelRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChannelRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real-valued baseband samples, unit symbol energy.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolFrame {
    pub samples: Vec<f64>,
}

impl SymbolFrame {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// AWGN parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    ebno_db: f64,
    code_rate: f64,
    seed: u64,
}

pub const RATE_UNCODED: f64 = 1.0;
pub const RATE_HALF: f64 = 0.5;

impl NoiseConfig {
    /// `ebno_db` must be finite or `+inf` (the noiseless limit); `code_rate`
    /// must lie in `(0, 1]`.
    pub fn new(ebno_db: f64, code_rate: f64, seed: u64) -> Result<Self> {
        if ebno_db.is_nan() || ebno_db == f64::NEG_INFINITY {
            return Err(Error::Noise(format!("Eb/N0 of {ebno_db} dB")));
        }
        if !(code_rate > 0.0 && code_rate <= 1.0) {
            return Err(Error::Noise(format!("code rate {code_rate} outside (0, 1]")));
        }
        Ok(NoiseConfig {
            ebno_db,
            code_rate,
            seed,
        })
    }

    pub fn noiseless(code_rate: f64, seed: u64) -> Result<Self> {
        Self::new(f64::INFINITY, code_rate, seed)
    }

    pub fn ebno_db(&self) -> f64 {
        self.ebno_db
    }

    pub fn code_rate(&self) -> f64 {
        self.code_rate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Noise variance per real sample: `1 / (2 r Eb/N0)`.
    pub fn variance(&self) -> f64 {
        if self.ebno_db == f64::INFINITY {
            return 0.0;
        }
        1.0 / (2.0 * self.code_rate * 10f64.powf(self.ebno_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Bit 0 maps to +1, bit 1 to -1.
pub fn bpsk_modulate(bits: &BitFrame) -> SymbolFrame {
    SymbolFrame {
        samples: bits
            .bits()
            .iter()
            .map(|&b| if b == 0 { 1.0 } else { -1.0 })
            .collect(),
    }
}

/// Adds white Gaussian noise drawn from a generator seeded by `cfg`.
pub fn add_awgn(symbols: &SymbolFrame, cfg: &NoiseConfig) -> SymbolFrame {
    let mut rng = rng_from_seed(cfg.seed());
    add_awgn_with(symbols, cfg.sigma(), &mut rng)
}

/// Adds white Gaussian noise of standard deviation `sigma` from `rng`.
pub fn add_awgn_with<R: Rng + ?Sized>(symbols: &SymbolFrame, sigma: f64, rng: &mut R) -> SymbolFrame {
    if sigma == 0.0 {
        return symbols.clone();
    }
    SymbolFrame {
        samples: symbols
            .samples
            .iter()
            .map(|&x| {
                let n: f64 = rng.sample(StandardNormal);
                x + sigma * n
            })
            .collect(),
    }
}

/// One-bit quantiser: negative amplitudes give 1, everything else 0.
pub fn hard_quantize(symbols: &SymbolFrame) -> BitFrame {
    let bits = symbols
        .samples
        .iter()
        .map(|&x| u8::from(x < 0.0))
        .collect();
    BitFrame::from_trusted(bits, FrameRole::Coded)
}

/// Flips exactly the listed positions. Duplicate positions count once.
pub fn inject_errors<I>(bits: &BitFrame, positions: I) -> Result<BitFrame>
where
    I: IntoIterator<Item = usize>,
{
    let positions: BTreeSet<usize> = positions.into_iter().collect();
    let len = bits.len();
    if let Some(&position) = positions.iter().find(|&&p| p >= len) {
        return Err(Error::PositionOutOfRange { position, len });
    }
    let mut out = bits.bits().to_vec();
    for p in positions {
        out[p] ^= 1;
    }
    Ok(BitFrame::from_trusted(out, bits.role()))
}

/// `count` distinct positions in `0..len`, sorted.
pub fn random_positions<R: Rng + ?Sized>(len: usize, count: usize, rng: &mut R) -> Result<Vec<usize>> {
    if count > len {
        return Err(Error::PositionOutOfRange {
            position: count,
            len,
        });
    }
    let mut picked = rand::seq::index::sample(rng, len, count).into_vec();
    picked.sort_unstable();
    Ok(picked)
}
