//! Systematic Reed-Solomon codes over GF(2^s).
//!
//! Codewords are stored highest degree first: position `i` of an `n`-symbol
//! codeword is the coefficient of `x^(n-1-i)`. The message occupies the first
//! `k` positions and the `n-k` parity symbols follow. Shortened codes
//! (`n < 2^s - 1`) are supported.
//!
//! Decoding: syndromes, Berlekamp-Massey for the error locator, Chien search
//! for positions, Forney for magnitudes. Anything that does not check out
//! (too many locator roots missing, residual syndrome) is reported as
//! [`RsOutcome::Failure`].

use super::gf::{default_primitive_poly, GaloisField};
use super::CodecError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsSpec {
    pub symbol_bits: u32,
    pub n: usize,
    pub k: usize,
    pub field_poly: u32,
    /// Exponent of the first consecutive generator root.
    pub first_root: u32,
}

impl RsSpec {
    /// `RS(n, k)` over GF(2^s) with the default primitive polynomial and
    /// first root α^1.
    pub fn new(symbol_bits: u32, n: usize, k: usize) -> Self {
        RsSpec {
            symbol_bits,
            n,
            k,
            field_poly: default_primitive_poly(symbol_bits).unwrap_or(0),
            first_root: 1,
        }
    }

    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl Default for RsSpec {
    /// RS(31,21) over GF(32).
    fn default() -> Self {
        RsSpec::new(5, 31, 21)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsOutcome {
    Decoded { message: Vec<u8>, corrected: usize },
    Failure,
}

#[derive(Debug, Clone)]
pub struct RsCodec {
    spec: RsSpec,
    gf: GaloisField,
    /// Monic generator, highest degree first, length n-k+1.
    generator: Vec<u8>,
}

impl RsCodec {
    pub fn new(spec: RsSpec) -> Result<Self, CodecError> {
        let gf = GaloisField::new(spec.symbol_bits, spec.field_poly)?;
        if spec.n > gf.order() {
            return Err(CodecError::Spec(format!(
                "n = {} exceeds 2^{} - 1 = {}",
                spec.n,
                spec.symbol_bits,
                gf.order()
            )));
        }
        if spec.k == 0 || spec.k >= spec.n {
            return Err(CodecError::Spec(format!("need 0 < k < n, got k = {}, n = {}", spec.k, spec.n)));
        }
        let mut generator = vec![1u8];
        for i in 0..(spec.n - spec.k) {
            let root = gf.alpha_pow(spec.first_root as i64 + i as i64);
            // multiply by (x + root)
            let mut next = vec![0u8; generator.len() + 1];
            for (j, &g) in generator.iter().enumerate() {
                next[j] ^= g;
                next[j + 1] ^= gf.mul(g, root);
            }
            generator = next;
        }
        Ok(RsCodec { spec, gf, generator })
    }

    pub fn spec(&self) -> &RsSpec {
        &self.spec
    }

    pub fn field(&self) -> &GaloisField {
        &self.gf
    }

    /// Generator polynomial, highest degree first.
    pub fn generator(&self) -> &[u8] {
        &self.generator
    }

    fn check_symbols(&self, symbols: &[u8]) -> Result<(), CodecError> {
        let limit = 1u32 << self.spec.symbol_bits;
        match symbols.iter().position(|&s| s as u32 >= limit) {
            Some(i) => Err(CodecError::Encode(format!(
                "symbol {} at position {i} does not fit in {} bits",
                symbols[i], self.spec.symbol_bits
            ))),
            None => Ok(()),
        }
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>, CodecError> {
        if message.len() != self.spec.k {
            return Err(CodecError::Encode(format!(
                "message has {} symbols, expected {}",
                message.len(),
                self.spec.k
            )));
        }
        self.check_symbols(message)?;
        let nroots = self.spec.n - self.spec.k;
        let mut parity = vec![0u8; nroots];
        for &m in message {
            let feedback = m ^ parity[0];
            parity.rotate_left(1);
            parity[nroots - 1] = 0;
            if feedback != 0 {
                for (p, &g) in parity.iter_mut().zip(&self.generator[1..]) {
                    *p ^= self.gf.mul(feedback, g);
                }
            }
        }
        let mut codeword = Vec::with_capacity(self.spec.n);
        codeword.extend_from_slice(message);
        codeword.extend_from_slice(&parity);
        Ok(codeword)
    }

    /// Syndromes `S_j = r(α^(first_root + j))`, `j = 0..n-k`.
    pub fn syndromes(&self, received: &[u8]) -> Vec<u8> {
        (0..self.spec.n - self.spec.k)
            .map(|j| {
                let x = self.gf.alpha_pow(self.spec.first_root as i64 + j as i64);
                self.gf.eval_desc(received, x)
            })
            .collect()
    }

    /// Error locator via Berlekamp-Massey, lowest degree first.
    fn berlekamp_massey(&self, syndromes: &[u8]) -> Vec<u8> {
        let gf = &self.gf;
        let mut c = vec![1u8];
        let mut b = vec![1u8];
        let mut len = 0usize;
        let mut shift = 1usize;
        let mut last = 1u8;
        for n in 0..syndromes.len() {
            let mut d = syndromes[n];
            for i in 1..=len.min(c.len() - 1) {
                d ^= gf.mul(c[i], syndromes[n - i]);
            }
            if d == 0 {
                shift += 1;
                continue;
            }
            let coef = gf.div(d, last);
            let prev = c.clone();
            if c.len() < b.len() + shift {
                c.resize(b.len() + shift, 0);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + shift] ^= gf.mul(coef, bi);
            }
            if 2 * len <= n {
                len = n + 1 - len;
                b = prev;
                last = d;
                shift = 1;
            } else {
                shift += 1;
            }
        }
        while c.len() > 1 && *c.last().unwrap() == 0 {
            c.pop();
        }
        c
    }

    pub fn decode(&self, received: &[u8]) -> Result<RsOutcome, CodecError> {
        let n = self.spec.n;
        if received.len() != n {
            return Err(CodecError::Decode(format!(
                "received word has {} symbols, expected {n}",
                received.len()
            )));
        }
        self.check_symbols(received).map_err(|e| CodecError::Decode(e.to_string()))?;
        let syndromes = self.syndromes(received);
        if syndromes.iter().all(|&s| s == 0) {
            return Ok(RsOutcome::Decoded {
                message: received[..self.spec.k].to_vec(),
                corrected: 0,
            });
        }
        let gf = &self.gf;
        let locator = self.berlekamp_massey(&syndromes);
        let degree = locator.len() - 1;
        if degree == 0 || degree > self.spec.t() {
            return Ok(RsOutcome::Failure);
        }

        // Chien search over the n valid positions only.
        let mut positions = Vec::with_capacity(degree);
        for i in 0..n {
            let power = (n - 1 - i) as i64;
            if gf.eval_asc(&locator, gf.alpha_pow(-power)) == 0 {
                positions.push(i);
            }
        }
        if positions.len() != degree {
            return Ok(RsOutcome::Failure);
        }

        // Ω(x) = S(x)Λ(x) mod x^(n-k)
        let nroots = syndromes.len();
        let mut omega = vec![0u8; nroots];
        for (i, &l) in locator.iter().enumerate() {
            for (j, &s) in syndromes.iter().enumerate() {
                if i + j < nroots {
                    omega[i + j] ^= gf.mul(l, s);
                }
            }
        }
        // Formal derivative in characteristic 2 keeps odd-degree terms.
        let derivative: Vec<u8> = locator
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &l)| if i % 2 == 1 { l } else { 0 })
            .collect();

        let mut corrected = received.to_vec();
        for &i in &positions {
            let power = (n - 1 - i) as i64;
            let x_inv = gf.alpha_pow(-power);
            let denom = gf.eval_asc(&derivative, x_inv);
            if denom == 0 {
                return Ok(RsOutcome::Failure);
            }
            let scale = gf.alpha_pow(power * (1 - self.spec.first_root as i64));
            let magnitude = gf.mul(scale, gf.div(gf.eval_asc(&omega, x_inv), denom));
            corrected[i] ^= magnitude;
        }
        if self.syndromes(&corrected).iter().any(|&s| s != 0) {
            return Ok(RsOutcome::Failure);
        }
        corrected.truncate(self.spec.k);
        Ok(RsOutcome::Decoded {
            message: corrected,
            corrected: positions.len(),
        })
    }

    pub fn info_bits_per_codeword(&self) -> usize {
        self.spec.k * self.spec.symbol_bits as usize
    }

    pub fn coded_bits_per_codeword(&self) -> usize {
        self.spec.n * self.spec.symbol_bits as usize
    }

    /// Encodes a bit stream whose length is a multiple of `k·s`, MSB-first
    /// within each symbol.
    pub fn encode_bits(&self, bits: &[u8]) -> Result<Vec<u8>, CodecError> {
        let per = self.info_bits_per_codeword();
        if bits.is_empty() || !bits.len().is_multiple_of(per) {
            return Err(CodecError::Encode(format!(
                "bit length {} is not a positive multiple of {per}",
                bits.len()
            )));
        }
        let s = self.spec.symbol_bits as usize;
        let mut out = Vec::with_capacity(bits.len() / per * self.coded_bits_per_codeword());
        for block in bits.chunks(per) {
            let symbols = pack_symbols(block, s);
            let cw = self.encode(&symbols)?;
            unpack_symbols(&cw, s, &mut out);
        }
        Ok(out)
    }

    /// Hard-decision decoding of a bit stream. Blocks that fail to decode
    /// pass their systematic part through unchanged.
    pub fn decode_bits(&self, bits: &[u8]) -> Result<Vec<u8>, CodecError> {
        let per = self.coded_bits_per_codeword();
        if bits.is_empty() || !bits.len().is_multiple_of(per) {
            return Err(CodecError::Decode(format!(
                "bit length {} is not a positive multiple of {per}",
                bits.len()
            )));
        }
        let s = self.spec.symbol_bits as usize;
        let mut out = Vec::with_capacity(bits.len() / per * self.info_bits_per_codeword());
        for block in bits.chunks(per) {
            let symbols = pack_symbols(block, s);
            match self.decode(&symbols)? {
                RsOutcome::Decoded { message, .. } => unpack_symbols(&message, s, &mut out),
                RsOutcome::Failure => unpack_symbols(&symbols[..self.spec.k], s, &mut out),
            }
        }
        Ok(out)
    }
}

fn pack_symbols(bits: &[u8], s: usize) -> Vec<u8> {
    bits.chunks(s)
        .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | (b & 1)))
        .collect()
}

fn unpack_symbols(symbols: &[u8], s: usize, out: &mut Vec<u8>) {
    for &sym in symbols {
        for j in (0..s).rev() {
            out.push((sym >> j) & 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::seq::index::sample;
    use rand::Rng;

    /// Long division by the generator using shift-and-add field arithmetic,
    /// without the codec's log tables.
    fn oracle_parity(msg: &[u8], nroots: usize, bits: u32, poly: u32, first_root: u32) -> Vec<u8> {
        let mul = |a: u8, b: u8| -> u8 {
            let (mut a, mut b, mut r) = (a as u32, b as u32, 0u32);
            while b != 0 {
                if b & 1 != 0 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> bits != 0 {
                    a ^= poly;
                }
            }
            r as u8
        };
        let mut alpha_i = 1u8;
        for _ in 0..first_root {
            alpha_i = mul(alpha_i, 2);
        }
        let mut g = vec![1u8];
        for _ in 0..nroots {
            let mut next = vec![0u8; g.len() + 1];
            for (j, &c) in g.iter().enumerate() {
                next[j] ^= c;
                next[j + 1] ^= mul(c, alpha_i);
            }
            g = next;
            alpha_i = mul(alpha_i, 2);
        }
        let mut dividend: Vec<u8> = msg.to_vec();
        dividend.extend(std::iter::repeat_n(0, nroots));
        for i in 0..msg.len() {
            let lead = dividend[i];
            if lead != 0 {
                for (j, &c) in g.iter().enumerate() {
                    dividend[i + j] ^= mul(lead, c);
                }
            }
        }
        dividend[msg.len()..].to_vec()
    }

    #[test]
    fn zero_message_gives_zero_codeword() {
        let rs = RsCodec::new(RsSpec::new(3, 7, 3)).unwrap();
        assert_eq!(rs.encode(&[0, 0, 0]).unwrap(), vec![0; 7]);
    }

    #[test]
    fn rs73_parity_matches_long_division() {
        let rs = RsCodec::new(RsSpec::new(3, 7, 3)).unwrap();
        let msg = [1u8, 2, 3];
        let cw = rs.encode(&msg).unwrap();
        assert_eq!(&cw[..3], &msg);
        assert_eq!(&cw[3..], oracle_parity(&msg, 4, 3, 0xB, 1).as_slice());
        // Frozen from the oracle above.
        assert_eq!(cw, vec![1, 2, 3, 0, 0, 1, 3]);
    }

    #[test]
    fn parity_matches_long_division_for_other_specs() {
        let mut rng = stream_rng(11, 0);
        for spec in [RsSpec::default(), RsSpec::new(8, 255, 223), RsSpec::new(4, 12, 6), RsSpec {
            first_root: 0,
            ..RsSpec::new(5, 31, 25)
        }] {
            let rs = RsCodec::new(spec).unwrap();
            let msg: Vec<u8> = (0..spec.k).map(|_| rng.random_range(0..(1u32 << spec.symbol_bits)) as u8).collect();
            let cw = rs.encode(&msg).unwrap();
            let expect = oracle_parity(&msg, spec.n - spec.k, spec.symbol_bits, spec.field_poly, spec.first_root);
            assert_eq!(&cw[spec.k..], expect.as_slice(), "{spec:?}");
            assert!(rs.syndromes(&cw).iter().all(|&s| s == 0));
        }
    }

    #[test]
    fn encode_rejects_bad_input() {
        let rs = RsCodec::new(RsSpec::new(3, 7, 3)).unwrap();
        assert!(matches!(rs.encode(&[1, 2]), Err(CodecError::Encode(_))));
        assert!(matches!(rs.encode(&[1, 2, 8]), Err(CodecError::Encode(_))));
        assert!(matches!(rs.decode(&[0; 6]), Err(CodecError::Decode(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(RsCodec::new(RsSpec::new(3, 8, 3)).is_err());
        assert!(RsCodec::new(RsSpec::new(3, 7, 7)).is_err());
        assert!(RsCodec::new(RsSpec::new(3, 7, 0)).is_err());
        assert_eq!(RsSpec::default().t(), 5);
    }

    fn corrupt<R: Rng>(rs: &RsCodec, cw: &[u8], count: usize, rng: &mut R) -> Vec<u8> {
        let mut r = cw.to_vec();
        let max = 1u32 << rs.spec().symbol_bits;
        for pos in sample(rng, cw.len(), count) {
            r[pos] ^= rng.random_range(1..max) as u8;
        }
        r
    }

    fn correct_up_to_t(spec: RsSpec, trials: u64, seed: u64) {
        let rs = RsCodec::new(spec).unwrap();
        let max = 1u32 << spec.symbol_bits;
        for trial in 0..trials {
            let mut rng = stream_rng(seed, trial);
            let msg: Vec<u8> = (0..spec.k).map(|_| rng.random_range(0..max) as u8).collect();
            let cw = rs.encode(&msg).unwrap();
            let errors = rng.random_range(0..=spec.t());
            let r = corrupt(&rs, &cw, errors, &mut rng);
            match rs.decode(&r).unwrap() {
                RsOutcome::Decoded { message, corrected } => {
                    assert_eq!(message, msg, "trial {trial}");
                    assert_eq!(corrected, errors);
                }
                RsOutcome::Failure => panic!("trial {trial}: {errors} errors not corrected"),
            }
        }
    }

    #[test]
    fn rs73_corrects_up_to_two() {
        correct_up_to_t(RsSpec::new(3, 7, 3), 1000, 1);
    }

    #[test]
    fn rs3121_corrects_up_to_five() {
        correct_up_to_t(RsSpec::default(), 1000, 2);
    }

    #[test]
    fn shortened_and_zero_first_root() {
        correct_up_to_t(RsSpec::new(8, 60, 40), 200, 3);
        correct_up_to_t(RsSpec { first_root: 0, ..RsSpec::new(4, 15, 9) }, 200, 4);
    }

    #[test]
    fn rs73_three_errors_never_fault() {
        // Exhaustive over all 3-position patterns with every nonzero magnitude
        // on a fixed codeword; decoder must return a value every time.
        let rs = RsCodec::new(RsSpec::new(3, 7, 3)).unwrap();
        let msg = [5u8, 0, 6];
        let cw = rs.encode(&msg).unwrap();
        let mut failures = 0;
        let mut wrong = 0;
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    for ea in 1..8u8 {
                        for eb in 1..8u8 {
                            for ec in 1..8u8 {
                                let mut r = cw.clone();
                                r[a] ^= ea;
                                r[b] ^= eb;
                                r[c] ^= ec;
                                match rs.decode(&r).unwrap() {
                                    RsOutcome::Failure => failures += 1,
                                    RsOutcome::Decoded { message, .. } => {
                                        assert_ne!(message, msg.to_vec());
                                        wrong += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(failures + wrong, 35 * 343);
        assert!(failures > 0);
    }

    #[test]
    fn bit_wrappers_roundtrip() {
        let rs = RsCodec::new(RsSpec::default()).unwrap();
        let mut rng = stream_rng(5, 0);
        let bits: Vec<u8> = (0..rs.info_bits_per_codeword() * 3).map(|_| rng.random_range(0..2u8)).collect();
        let coded = rs.encode_bits(&bits).unwrap();
        assert_eq!(coded.len(), 3 * rs.coded_bits_per_codeword());
        assert_eq!(&coded[..rs.info_bits_per_codeword()], &bits[..rs.info_bits_per_codeword()]);
        let mut noisy = coded.clone();
        noisy[0] ^= 1;
        noisy[40] ^= 1;
        noisy[200] ^= 1;
        assert_eq!(rs.decode_bits(&noisy).unwrap(), bits);
        assert!(rs.encode_bits(&bits[1..]).is_err());
    }
}
