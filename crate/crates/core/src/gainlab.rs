//! BER measurement over BPSK/AWGN and coding-gain extraction.
//!
//! A [`Chain`] is one way of pushing information bits through the channel:
//! uncoded, Reed-Solomon with hard decisions, or the convolutional code with
//! hard or soft Viterbi decoding. Noise is always set per *information* bit,
//! so coded chains pay for their redundancy and BER curves of different
//! chains can be compared on the same Eb/N0 axis.
//!
//! Frames are simulated in fixed-size batches. Frame `i` of a point draws its
//! message and noise from RNG stream `i` of the point seed, and the stopping
//! rule is only checked between batches, so serial and parallel execution
//! produce identical counts.

use thiserror::Error;

use crate::codecs::channel::{add_noise, bpsk_modulate, hard_slice, noise_sigma};
use crate::codecs::{CodecError, ConvCodec, RsCodec};
use crate::exec::Exec;
use crate::rng::{derive_seed, stream_rng};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GainError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("target BER {target:e} not bracketed by curve `{curve}`")]
    NotBracketed { curve: String, target: f64 },
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Closed-form BER of uncoded BPSK over AWGN, `Q(√(2·Eb/N0)) = ½·erfc(√(Eb/N0))`.
pub fn analytic_uncoded_ber(ebn0_db: f64) -> f64 {
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    0.5 * libm::erfc(ebn0.sqrt())
}

#[derive(Debug, Clone)]
pub enum Chain {
    Uncoded,
    Rs(RsCodec),
    ConvHard(ConvCodec),
    ConvSoft(ConvCodec),
}

impl Chain {
    pub fn label(&self) -> &'static str {
        match self {
            Chain::Uncoded => "uncoded",
            Chain::Rs(_) => "RS",
            Chain::ConvHard(_) => "CC-Hard",
            Chain::ConvSoft(_) => "CC-Soft",
        }
    }

    /// Information bits per frame for a requested frame size. RS frames are
    /// rounded up to whole codewords.
    pub fn frame_info_bits(&self, frame_bits: usize) -> usize {
        match self {
            Chain::Rs(rs) => {
                let per = rs.info_bits_per_codeword();
                frame_bits.div_ceil(per).max(1) * per
            }
            _ => frame_bits,
        }
    }

    /// Information bits over transmitted bits for one frame.
    pub fn effective_rate(&self, info_bits: usize) -> f64 {
        let coded = match self {
            Chain::Uncoded => info_bits,
            Chain::Rs(rs) => info_bits / rs.info_bits_per_codeword() * rs.coded_bits_per_codeword(),
            Chain::ConvHard(c) | Chain::ConvSoft(c) => c.spec().coded_len(info_bits),
        };
        info_bits as f64 / coded as f64
    }

    fn encode(&self, bits: &[u8]) -> Result<Vec<u8>, CodecError> {
        match self {
            Chain::Uncoded => Ok(bits.to_vec()),
            Chain::Rs(rs) => rs.encode_bits(bits),
            Chain::ConvHard(c) | Chain::ConvSoft(c) => c.encode(bits),
        }
    }

    fn decode(&self, observations: &[f64]) -> Result<Vec<u8>, CodecError> {
        match self {
            Chain::Uncoded => hard_slice(observations),
            Chain::Rs(rs) => rs.decode_bits(&hard_slice(observations)?),
            Chain::ConvHard(c) => c.decode_hard(&hard_slice(observations)?),
            Chain::ConvSoft(c) => c.decode_soft(observations),
        }
    }

    /// Runs one frame; returns `(information bits, bit errors)`.
    pub fn run_frame<R: Rng>(&self, info_bits: usize, sigma: f64, rng: &mut R) -> Result<(u64, u64), CodecError> {
        let message: Vec<u8> = (0..info_bits).map(|_| rng.random_range(0..2u8)).collect();
        let mut symbols = bpsk_modulate(&self.encode(&message)?);
        add_noise(&mut symbols, sigma, rng);
        let decoded = self.decode(&symbols)?;
        let errors = decoded.iter().zip(&message).filter(|(a, b)| a != b).count();
        Ok((info_bits as u64, errors as u64))
    }
}

/// Stopping rule for one BER point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerBudget {
    pub min_bits: u64,
    pub min_errors: u64,
    /// Hard cap, reached only at high SNR where errors are rare.
    pub max_bits: u64,
    pub frame_bits: usize,
    pub batch_frames: usize,
}

impl Default for BerBudget {
    fn default() -> Self {
        BerBudget {
            min_bits: 200_000,
            min_errors: 100,
            max_bits: 2_000_000,
            frame_bits: 1016,
            batch_frames: 64,
        }
    }
}

impl BerBudget {
    fn validate(&self) -> Result<(), GainError> {
        let bad = |name, reason: &str| Err(GainError::InvalidParameter { name, reason: reason.into() });
        if self.min_bits == 0 {
            return bad("min_bits", "must be >= 1");
        }
        if self.max_bits < self.min_bits {
            return bad("max_bits", "must be >= min_bits");
        }
        if self.frame_bits == 0 {
            return bad("frame_bits", "must be >= 1");
        }
        if self.batch_frames == 0 {
            return bad("batch_frames", "must be >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub ber: f64,
    pub bits: u64,
    pub errors: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerCurve {
    pub codec_label: String,
    pub points: Vec<BerPoint>,
}

impl BerCurve {
    pub fn new(codec_label: impl Into<String>, points: Vec<BerPoint>) -> Result<Self, GainError> {
        let curve = BerCurve { codec_label: codec_label.into(), points };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<(), GainError> {
        for p in &self.points {
            if !(0.0..=1.0).contains(&p.ber) || p.errors > p.bits {
                return Err(GainError::InvalidParameter {
                    name: "points",
                    reason: format!("inconsistent point at {} dB in `{}`", p.ebn0_db, self.codec_label),
                });
            }
        }
        if self.points.windows(2).any(|w| w[1].ebn0_db <= w[0].ebn0_db) {
            return Err(GainError::InvalidParameter {
                name: "points",
                reason: format!("Eb/N0 not strictly increasing in `{}`", self.codec_label),
            });
        }
        Ok(())
    }

    /// Eb/N0 at which the curve crosses `target`, by linear interpolation of
    /// log10(BER) between the first pair of adjacent points that brackets it.
    /// Points with zero observed errors carry no log-domain information and
    /// are skipped.
    pub fn crossing(&self, target: f64) -> Result<f64, GainError> {
        let not_bracketed = || GainError::NotBracketed {
            curve: self.codec_label.clone(),
            target,
        };
        let usable: Vec<&BerPoint> = self.points.iter().filter(|p| p.ber > 0.0).collect();
        for w in usable.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.ber >= target && b.ber <= target {
                if a.ber == b.ber {
                    return Ok(a.ebn0_db);
                }
                let (la, lb, lt) = (a.ber.log10(), b.ber.log10(), target.log10());
                return Ok(a.ebn0_db + (lt - la) * (b.ebn0_db - a.ebn0_db) / (lb - la));
            }
        }
        Err(not_bracketed())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainResult {
    pub codec_label: String,
    pub target_ber: f64,
    pub gain_db: f64,
    pub ebn0_uncoded_db: f64,
    pub ebn0_coded_db: f64,
}

/// Simulates one BER point until both minimums are met or `max_bits` is hit.
pub fn simulate_ber_point(
    chain: &Chain,
    ebn0_db: f64,
    budget: &BerBudget,
    seed: u64,
    exec: Exec,
) -> Result<BerPoint, GainError> {
    budget.validate()?;
    if !ebn0_db.is_finite() {
        return Err(GainError::InvalidParameter {
            name: "ebn0_db",
            reason: format!("{ebn0_db} is not finite"),
        });
    }
    let info_bits = chain.frame_info_bits(budget.frame_bits);
    let sigma = noise_sigma(ebn0_db, chain.effective_rate(info_bits))?;
    let (mut bits, mut errors) = (0u64, 0u64);
    let mut batch = 0usize;
    while !(bits >= budget.min_bits && errors >= budget.min_errors) && bits < budget.max_bits {
        let first = batch * budget.batch_frames;
        let results = exec.map_indexed(budget.batch_frames, |i| {
            let mut rng = stream_rng(seed, (first + i) as u64);
            chain.run_frame(info_bits, sigma, &mut rng)
        });
        for r in results {
            let (b, e) = r?;
            bits += b;
            errors += e;
        }
        batch += 1;
    }
    Ok(BerPoint {
        ebn0_db,
        ber: errors as f64 / bits as f64,
        bits,
        errors,
    })
}

/// One BER point per grid entry; point `i` uses a seed derived from
/// `(seed, i)`.
pub fn ber_sweep(chain: &Chain, grid: &[f64], budget: &BerBudget, seed: u64, exec: Exec) -> Result<BerCurve, GainError> {
    if grid.is_empty() {
        return Err(GainError::InvalidParameter {
            name: "grid",
            reason: "empty Eb/N0 grid".into(),
        });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GainError::InvalidParameter {
            name: "grid",
            reason: "Eb/N0 grid must be strictly increasing".into(),
        });
    }
    let points = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| simulate_ber_point(chain, x, budget, derive_seed(seed, i as u64), exec))
        .collect::<Result<Vec<_>, _>>()?;
    BerCurve::new(chain.label(), points)
}

pub fn coding_gain_at(coded: &BerCurve, uncoded: &BerCurve, target_ber: f64) -> Result<GainResult, GainError> {
    if !(target_ber > 0.0 && target_ber < 1.0) {
        return Err(GainError::InvalidParameter {
            name: "target_ber",
            reason: format!("{target_ber} outside (0, 1)"),
        });
    }
    let ebn0_uncoded_db = uncoded.crossing(target_ber)?;
    let ebn0_coded_db = coded.crossing(target_ber)?;
    Ok(GainResult {
        codec_label: coded.codec_label.clone(),
        target_ber,
        gain_db: ebn0_uncoded_db - ebn0_coded_db,
        ebn0_uncoded_db,
        ebn0_coded_db,
    })
}

/// Eb/N0 grid `start, start+step, …` up to and including `stop`.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + step * i as f64).collect()
}
