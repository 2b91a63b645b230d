//! Monte-Carlo BER sweeps, the uncoded BPSK reference curve, and the
//! trace-back versus register-exchange activity comparison.
//!
//! Work is split into batches of [`FRAMES_PER_BATCH`] frames. Each batch draws
//! payloads and noise from its own generator, seeded from the sweep seed, the
//! scheme, the Eb/N0 index and the batch index. Batches run in parallel in
//! rounds, and their per-frame results are folded in batch order, so the
//! output does not depend on the thread count. The stopping rule is applied
//! frame by frame during that fold.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{self, rng_from_seed, ChannelRng, NoiseConfig, RATE_HALF, RATE_UNCODED};
use crate::decoder::{ActivityReport, Scheme, ViterbiDecoder};
use crate::{encoder, BitFrame, CodeSpec, Error, Result, Trellis};

use rand::Rng;

pub const FRAMES_PER_BATCH: usize = 256;
const BATCHES_PER_ROUND: usize = 32;

/// Transmission scheme of a BER point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BerScheme {
    #[serde(rename = "uncoded-bpsk")]
    UncodedBpsk,
    #[serde(rename = "coded-viterbi")]
    CodedViterbi,
}

impl BerScheme {
    fn tag(self) -> u64 {
        match self {
            BerScheme::UncodedBpsk => 1,
            BerScheme::CodedViterbi => 2,
        }
    }
}

/// One row of a BER sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerPoint {
    pub scheme: BerScheme,
    pub ebno_db: f64,
    pub info_bits: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub seed: u64,
}

impl BerPoint {
    /// Binomial standard error of `ber` around a true probability `p`.
    pub fn standard_error(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.info_bits as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub ebno_points: Vec<f64>,
    pub min_info_bits: u64,
    pub max_info_bits: u64,
    /// Stop a point once this many bit errors are seen (after `min_info_bits`).
    pub stop_at_errors: u64,
    pub seed: u64,
    pub spec: CodeSpec,
    /// Bypass the noise generator entirely.
    pub noiseless: bool,
}

impl SweepConfig {
    pub fn new(ebno_points: Vec<f64>, seed: u64) -> Self {
        SweepConfig {
            ebno_points,
            min_info_bits: 0,
            max_info_bits: 10_000_000,
            stop_at_errors: 200,
            seed,
            spec: CodeSpec::wimax(),
            noiseless: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_info_bits > self.max_info_bits {
            return Err(Error::Sweep(format!(
                "min_info_bits {} exceeds max_info_bits {}",
                self.min_info_bits, self.max_info_bits
            )));
        }
        if self.max_info_bits == 0 {
            return Err(Error::Sweep("max_info_bits must be positive".into()));
        }
        if let Some(e) = self.ebno_points.iter().find(|e| !e.is_finite()) {
            return Err(Error::Sweep(format!("Eb/N0 point {e} is not finite")));
        }
        Ok(())
    }
}

/// Runs both schemes at every Eb/N0 point. Output order: for each point,
/// uncoded then coded.
pub fn ber_sweep(cfg: &SweepConfig) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    let trellis = Trellis::new(&cfg.spec)?;
    let mut points = Vec::with_capacity(2 * cfg.ebno_points.len());
    for (i, &ebno) in cfg.ebno_points.iter().enumerate() {
        for scheme in [BerScheme::UncodedBpsk, BerScheme::CodedViterbi] {
            points.push(run_point(cfg, &trellis, scheme, i, ebno)?);
        }
    }
    Ok(points)
}

/// A single (scheme, Eb/N0) point of a sweep, identical to the matching row of
/// [`ber_sweep`] on the same configuration.
pub fn ber_point(cfg: &SweepConfig, scheme: BerScheme, point_index: usize) -> Result<BerPoint> {
    cfg.validate()?;
    let trellis = Trellis::new(&cfg.spec)?;
    let ebno = *cfg
        .ebno_points
        .get(point_index)
        .ok_or_else(|| Error::Sweep(format!("no Eb/N0 point {point_index}")))?;
    run_point(cfg, &trellis, scheme, point_index, ebno)
}

fn run_point(cfg: &SweepConfig, trellis: &Trellis, scheme: BerScheme, index: usize, ebno: f64) -> Result<BerPoint> {
    let bits_per_frame = cfg.spec.payload_length() as u64;
    let rate = match scheme {
        BerScheme::UncodedBpsk => RATE_UNCODED,
        BerScheme::CodedViterbi => RATE_HALF,
    };
    let noise = if cfg.noiseless {
        NoiseConfig::noiseless(rate, cfg.seed)?
    } else {
        NoiseConfig::new(ebno, rate, cfg.seed)?
    };
    let sigma = noise.sigma();

    let mut info_bits = 0u64;
    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let done = |info: u64, errs: u64| {
        info >= cfg.max_info_bits || (info >= cfg.min_info_bits && errs >= cfg.stop_at_errors)
    };

    let mut next_batch = 0u64;
    'rounds: loop {
        let batch_ids: Vec<u64> = (next_batch..next_batch + BATCHES_PER_ROUND as u64).collect();
        next_batch += BATCHES_PER_ROUND as u64;
        let results: Vec<Result<Vec<u32>>> = batch_ids
            .par_iter()
            .map(|&b| {
                let seed = derive_seed(cfg.seed, &[scheme.tag(), index as u64, b]);
                run_batch(trellis, scheme, sigma, seed)
            })
            .collect();
        for batch in results {
            for errors in batch? {
                info_bits += bits_per_frame;
                bit_errors += u64::from(errors);
                frame_errors += u64::from(errors > 0);
                if done(info_bits, bit_errors) {
                    break 'rounds;
                }
            }
        }
    }

    Ok(BerPoint {
        scheme,
        ebno_db: ebno,
        info_bits,
        bit_errors,
        frame_errors,
        ber: bit_errors as f64 / info_bits as f64,
        seed: cfg.seed,
    })
}

/// Payload bit errors for each frame of one batch.
fn run_batch(trellis: &Trellis, scheme: BerScheme, sigma: f64, seed: u64) -> Result<Vec<u32>> {
    let mut rng = rng_from_seed(seed);
    let payload_len = trellis.spec().payload_length();
    let mut decoder = ViterbiDecoder::new(trellis, Scheme::TraceBack);
    (0..FRAMES_PER_BATCH)
        .map(|_| {
            let payload = random_payload(payload_len, &mut rng);
            let received_payload = match scheme {
                BerScheme::UncodedBpsk => transmit(&payload, sigma, &mut rng),
                BerScheme::CodedViterbi => {
                    let coded = encoder::encode_frame(&payload, trellis)?;
                    let received = transmit(&coded, sigma, &mut rng);
                    decoder.decode(&received)?.payload()
                }
            };
            Ok(payload.hamming_distance(&received_payload) as u32)
        })
        .collect()
}

fn random_payload(len: usize, rng: &mut ChannelRng) -> BitFrame {
    BitFrame::payload((0..len).map(|_| rng.random_range(0..2u8)).collect())
}

/// BPSK, AWGN of deviation `sigma`, hard decision.
fn transmit(bits: &BitFrame, sigma: f64, rng: &mut ChannelRng) -> BitFrame {
    let rx = channel::add_awgn_with(&channel::bpsk_modulate(bits), sigma, rng);
    channel::hard_quantize(&rx).with_role(bits.role())
}

/// SplitMix64 over the base seed and each label in turn.
pub fn derive_seed(base: u64, labels: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    labels.iter().fold(mix(base), |acc, &l| mix(acc ^ mix(l)))
}

/// Gaussian tail probability `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Uncoded BPSK bit error probability `Q(sqrt(2 Eb/N0))`.
pub fn theoretical_uncoded_ber(ebno_db: f64) -> f64 {
    let ebno = 10f64.powf(ebno_db / 10.0);
    0.5 * libm::erfc(ebno.sqrt())
}

/// Writes BER points with the header
/// `scheme,ebno_db,info_bits,bit_errors,frame_errors,ber,seed`.
pub fn write_ber_csv<W: Write>(points: &[BerPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(p)?;
    }
    if points.is_empty() {
        w.write_record(["scheme", "ebno_db", "info_bits", "bit_errors", "frame_errors", "ber", "seed"])?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Writes activity reports as `scheme,frames,survivor_bit_writes,metric_writes,traceback_reads`.
pub fn write_activity_csv<W: Write>(reports: &[ActivityReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r)?;
    }
    if reports.is_empty() {
        w.write_record(["scheme", "frames", "survivor_bit_writes", "metric_writes", "traceback_reads"])?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerConfig {
    pub spec: CodeSpec,
    pub frames: usize,
    pub ebno_db: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerComparison {
    pub traceback: ActivityReport,
    pub register_exchange: ActivityReport,
    /// Register-exchange over trace-back survivor writes; `None` when no
    /// frames were decoded.
    pub ratio: Option<f64>,
}

/// `(L + 1) / 2`: register-exchange survivor writes per trace-back write.
pub fn expected_activity_ratio(spec: &CodeSpec) -> f64 {
    (spec.frame_stages() as f64 + 1.0) / 2.0
}

/// Decodes the same noisy frames under both survivor organisations and
/// compares their register activity. Any difference in decoded output is an
/// error.
pub fn power_compare(cfg: &PowerConfig) -> Result<PowerComparison> {
    let trellis = Trellis::new(&cfg.spec)?;
    let noise = NoiseConfig::new(cfg.ebno_db, RATE_HALF, cfg.seed)?;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, &[3]));
    let mut tb = ViterbiDecoder::new(&trellis, Scheme::TraceBack);
    let mut re = ViterbiDecoder::new(&trellis, Scheme::RegisterExchange);
    for i in 0..cfg.frames {
        let payload = random_payload(cfg.spec.payload_length(), &mut rng);
        let coded = encoder::encode_frame(&payload, &trellis)?;
        let received = transmit(&coded, noise.sigma(), &mut rng);
        let a = tb.decode(&received)?;
        let b = re.decode(&received)?;
        if a.decoded != b.decoded || a.final_metric != b.final_metric {
            return Err(Error::Internal(format!(
                "frame {i}: trace-back and register-exchange outputs differ"
            )));
        }
    }
    let traceback = *tb.activity();
    let register_exchange = *re.activity();
    let ratio = (traceback.survivor_bit_writes > 0)
        .then(|| register_exchange.survivor_bit_writes as f64 / traceback.survivor_bit_writes as f64);
    Ok(PowerComparison {
        traceback,
        register_exchange,
        ratio,
    })
}

/// Activity CSV for both schemes plus a `ratio_to_traceback` column (empty
/// when undefined).
pub fn write_power_csv<W: Write>(cmp: &PowerComparison, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scheme",
        "frames",
        "survivor_bit_writes",
        "metric_writes",
        "traceback_reads",
        "ratio_to_traceback",
    ])?;
    for (r, ratio) in [
        (&cmp.traceback, cmp.ratio.map(|_| 1.0)),
        (&cmp.register_exchange, cmp.ratio),
    ] {
        w.write_record([
            r.scheme.name().to_string(),
            r.frames.to_string(),
            r.survivor_bit_writes.to_string(),
            r.metric_writes.to_string(),
            r.traceback_reads.to_string(),
            ratio.map(|x| x.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}
