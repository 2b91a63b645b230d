//! Forward error correction for the WiMAX 802.16 rate-1/2, constraint-length-7
//! convolutional code.
//!
//! The crate is organised along the receive chain:
//!
//! - [`trellis`]: code definition ([`CodeSpec`]) and the precomputed [`Trellis`].
//! - [`encoder`]: zero-tail frame encoder.
//! - [`channel`]: BPSK mapping, AWGN, hard quantisation and bit-flip injection.
//! - [`decoder`]: Viterbi decoder with trace-back and register-exchange
//!   survivor storage, switching-activity accounting and a streaming front end.
//! - [`oracle`]: brute-force maximum-likelihood decoding used as ground truth.
//! - [`harness`]: Monte-Carlo BER sweeps and power-proxy comparisons.
//!
//! ```
//! use wimax_fec::{decoder, encoder, BitFrame, CodeSpec, Trellis};
//!
//! let spec = CodeSpec::wimax();
//! let trellis = Trellis::new(&spec).unwrap();
//! let payload = BitFrame::payload(vec![1; spec.payload_length()]);
//! let coded = encoder::encode_frame(&payload, &trellis).unwrap();
//! let out = decoder::decode_frame(&coded, &trellis).unwrap();
//! assert_eq!(out.payload().bits(), payload.bits());
//! assert_eq!(out.final_metric, 0);
//! ```

pub mod bits;
pub mod channel;
pub mod decoder;
pub mod encoder;
mod error;
pub mod harness;
pub mod oracle;
pub mod trellis;

pub use bits::{BitFrame, FrameRole};
pub use error::{Error, Result};
pub use trellis::{CodeSpec, FreeDistance, Symbol, Trellis};
