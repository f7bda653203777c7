//! Error-control codecs and the BPSK/AWGN channel used to exercise them.

pub mod channel;
pub mod conv;
pub mod gf;
pub mod golden;
pub mod rs;

use thiserror::Error;

pub use channel::{awgn_channel, bpsk_modulate, hard_slice};
pub use conv::{ConvCodec, ConvSpec};
pub use gf::GaloisField;
pub use rs::{RsCodec, RsOutcome, RsSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("invalid code spec: {0}")]
    Spec(String),
    #[error("encode error: {0}")]
    Encode(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("channel error: {0}")]
    Channel(String),
    #[error("golden vector error: {0}")]
    Golden(String),
}
