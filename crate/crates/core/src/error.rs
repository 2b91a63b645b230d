use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constraint length must be at least 2, got {0}")]
    ConstraintLength(usize),
    #[error("constraint length {0} exceeds the supported maximum of {max}", max = crate::trellis::MAX_CONSTRAINT_LENGTH)]
    ConstraintLengthTooLarge(usize),
    #[error("generator {index} has {got} taps, expected {expected}")]
    GeneratorLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("generator {index} is not a binary tap vector")]
    GeneratorTaps { index: usize },
    #[error("generator {0:?} is not a valid octal polynomial")]
    GeneratorOctal(String),
    #[error("frame of {frame_stages} stages leaves no payload after a {tail} bit tail")]
    FrameTooShort { frame_stages: usize, tail: usize },
    #[error("bit value {value} at index {index} is not 0 or 1")]
    NotABit { index: usize, value: u8 },
    #[error("expected a frame of {expected} bits, got {got}")]
    FrameLength { expected: usize, got: usize },
    #[error("frame {index}: {source}")]
    InFrame {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("error position {position} is outside a frame of {len} bits")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("invalid noise configuration: {0}")]
    Noise(String),
    #[error("payload space of 2^{payload_bits} words exceeds the oracle limit of 2^{limit}")]
    OracleTooLarge { payload_bits: usize, limit: usize },
    #[error("invalid sweep configuration: {0}")]
    Sweep(String),
    #[error("survivor memory stage {0} written twice in one frame")]
    StageRewrite(usize),
    #[error("survivor memory is full ({0} stages)")]
    SurvivorOverflow(usize),
    #[error("decoder invariant violated: {0}")]
    Internal(String),
    #[error("csv output failed: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn in_frame(self, index: usize) -> Self {
        Error::InFrame {
            index,
            source: Box::new(self),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
