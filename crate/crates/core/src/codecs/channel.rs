//! BPSK mapping, AWGN channel and hard slicing.
//!
//! Bit 0 maps to +1 and bit 1 to −1, so symbols carry unit energy. For an
//! information-bit SNR `Eb/N0` and code rate `r`, each coded symbol has
//! `Es = r·Eb` and the per-dimension noise variance is `σ² = 1 / (2·r·Eb/N0)`.

use rand::Rng;
use rand_distr::StandardNormal;

use super::CodecError;
use crate::rng::stream_rng;

pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Noise standard deviation for unit-energy symbols at `ebn0_db` per
/// information bit.
pub fn noise_sigma(ebn0_db: f64, code_rate: f64) -> Result<f64, CodecError> {
    if ebn0_db.is_nan() {
        return Err(CodecError::Channel("Eb/N0 is NaN".into()));
    }
    if !(code_rate > 0.0 && code_rate <= 1.0) {
        return Err(CodecError::Channel(format!("code rate {code_rate} outside (0, 1]")));
    }
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    Ok((1.0 / (2.0 * code_rate * ebn0)).sqrt())
}

/// Adds Gaussian noise of standard deviation `sigma` in place.
pub fn add_noise<R: Rng>(symbols: &mut [f64], sigma: f64, rng: &mut R) {
    if sigma == 0.0 {
        return;
    }
    for y in symbols {
        let n: f64 = rng.sample(StandardNormal);
        *y += sigma * n;
    }
}

/// AWGN channel with an explicit seed.
pub fn awgn_channel(symbols: &[f64], ebn0_db: f64, code_rate: f64, seed: u64) -> Result<Vec<f64>, CodecError> {
    if let Some(y) = symbols.iter().find(|y| !y.is_finite()) {
        return Err(CodecError::Channel(format!("non-finite channel input {y}")));
    }
    let sigma = noise_sigma(ebn0_db, code_rate)?;
    let mut out = symbols.to_vec();
    add_noise(&mut out, sigma, &mut stream_rng(seed, 0));
    Ok(out)
}

/// Sign slicer: `y >= 0` decides 0, `y < 0` decides 1.
pub fn hard_slice(observations: &[f64]) -> Result<Vec<u8>, CodecError> {
    observations
        .iter()
        .map(|&y| {
            if !y.is_finite() {
                Err(CodecError::Channel(format!("non-finite observation {y}")))
            } else if y >= 0.0 {
                Ok(0)
            } else {
                Ok(1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_snr_is_noiseless() {
        let x = bpsk_modulate(&[0, 1, 1, 0, 1]);
        assert_eq!(awgn_channel(&x, f64::INFINITY, 0.5, 1).unwrap(), x);
    }

    #[test]
    fn slice_roundtrip() {
        let bits = [0u8, 1, 1, 0, 0, 1];
        assert_eq!(hard_slice(&bpsk_modulate(&bits)).unwrap(), bits);
        assert!(hard_slice(&[1.0, f64::INFINITY]).is_err());
        assert!(awgn_channel(&[f64::NAN], 3.0, 1.0, 0).is_err());
        assert!(awgn_channel(&[1.0], 3.0, 0.0, 0).is_err());
    }

    #[test]
    fn empirical_variance() {
        let n = 1_000_000;
        let zeros = vec![0.0; n];
        for (ebn0, rate) in [(0.0, 1.0), (4.0, 0.5)] {
            let y = awgn_channel(&zeros, ebn0, rate, 42).unwrap();
            let mean = y.iter().sum::<f64>() / n as f64;
            let var = y.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            let expect = noise_sigma(ebn0, rate).unwrap().powi(2);
            assert!(((var - expect) / expect).abs() < 0.01, "{var} vs {expect}");
        }
    }

    #[test]
    fn seeded_noise_is_repeatable() {
        let x = bpsk_modulate(&[0; 64]);
        assert_eq!(awgn_channel(&x, 2.0, 1.0, 9).unwrap(), awgn_channel(&x, 2.0, 1.0, 9).unwrap());
        assert_ne!(awgn_channel(&x, 2.0, 1.0, 9).unwrap(), awgn_channel(&x, 2.0, 1.0, 10).unwrap());
    }
}
