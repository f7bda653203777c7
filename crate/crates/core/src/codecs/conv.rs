//! Feed-forward convolutional codes and Viterbi decoding.
//!
//! Generator taps follow the usual octal convention: the most significant of
//! the `K` tap bits multiplies the current input bit, the least significant
//! the oldest one. Output bits for each input are emitted in generator order.
//!
//! Both decoders run the same add-compare-select over the full frame and trace
//! back from the end (state 0 when the frame is zero-flushed). On equal path
//! metrics the predecessor with the lower index wins, so the hard decoder fed
//! sliced bits and the soft decoder fed exact ±1 observations agree bit for
//! bit.

use std::ops::Add;

use super::CodecError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvSpec {
    pub constraint_length: u32,
    /// Tap polynomials; write them as octal literals (`0o171`).
    pub generators: Vec<u32>,
    /// Append `K-1` zero bits so the trellis ends in state 0.
    pub terminated: bool,
}

impl ConvSpec {
    pub fn new(constraint_length: u32, generators: &[u32]) -> Self {
        ConvSpec {
            constraint_length,
            generators: generators.to_vec(),
            terminated: true,
        }
    }

    pub fn rate_inverse(&self) -> usize {
        self.generators.len()
    }

    pub fn rate(&self) -> f64 {
        1.0 / self.generators.len() as f64
    }

    /// Coded length for `message_bits` information bits.
    pub fn coded_len(&self, message_bits: usize) -> usize {
        let steps = if self.terminated {
            message_bits + self.constraint_length as usize - 1
        } else {
            message_bits
        };
        steps * self.rate_inverse()
    }
}

impl Default for ConvSpec {
    /// K = 7, rate 1/2, generators 171/133 octal.
    fn default() -> Self {
        ConvSpec::new(7, &[0o171, 0o133])
    }
}

/// Encoder and Viterbi decoder for one [`ConvSpec`].
#[derive(Debug, Clone)]
pub struct ConvCodec {
    spec: ConvSpec,
    states: usize,
    /// Output pattern (bit j = generator j) for `state * 2 + input`.
    outputs: Vec<u32>,
}

impl ConvCodec {
    pub fn new(spec: ConvSpec) -> Result<Self, CodecError> {
        let k = spec.constraint_length;
        if !(2..=12).contains(&k) {
            return Err(CodecError::Spec(format!("constraint length {k} outside 2..=12")));
        }
        if spec.generators.is_empty() || spec.generators.len() > 8 {
            return Err(CodecError::Spec(format!(
                "need 1..=8 generators, got {}",
                spec.generators.len()
            )));
        }
        for &g in &spec.generators {
            if g == 0 || g >> k != 0 {
                return Err(CodecError::Spec(format!("generator {g:o} (octal) does not fit K = {k}")));
            }
        }
        let states = 1usize << (k - 1);
        let mut outputs = vec![0u32; states * 2];
        for state in 0..states {
            for input in 0..2 {
                let reg = ((input as u32) << (k - 1)) | state as u32;
                outputs[state * 2 + input] = spec
                    .generators
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &g)| acc | (((reg & g).count_ones() & 1) << j));
            }
        }
        Ok(ConvCodec { spec, states, outputs })
    }

    pub fn spec(&self) -> &ConvSpec {
        &self.spec
    }

    pub fn encode(&self, bits: &[u8]) -> Result<Vec<u8>, CodecError> {
        if bits.is_empty() {
            return Err(CodecError::Encode("empty input".into()));
        }
        let rinv = self.spec.rate_inverse();
        let flush = if self.spec.terminated {
            self.spec.constraint_length as usize - 1
        } else {
            0
        };
        let mut out = Vec::with_capacity(self.spec.coded_len(bits.len()));
        let mut state = 0usize;
        for &b in bits.iter().chain(std::iter::repeat_n(&0, flush)) {
            if b > 1 {
                return Err(CodecError::Encode(format!("input value {b} is not a bit")));
            }
            let pattern = self.outputs[state * 2 + b as usize];
            out.extend((0..rinv).map(|j| ((pattern >> j) & 1) as u8));
            state = ((b as usize) << (self.spec.constraint_length - 2) | state >> 1) & (self.states - 1);
        }
        Ok(out)
    }

    fn steps_for(&self, coded_len: usize) -> Result<usize, CodecError> {
        let rinv = self.spec.rate_inverse();
        let min_steps = if self.spec.terminated {
            self.spec.constraint_length as usize
        } else {
            1
        };
        if !coded_len.is_multiple_of(rinv) || coded_len / rinv < min_steps {
            return Err(CodecError::Decode(format!(
                "coded length {coded_len} inconsistent with rate 1/{rinv}{}",
                if self.spec.terminated { " and zero-flush termination" } else { "" }
            )));
        }
        Ok(coded_len / rinv)
    }

    /// Hard-decision Viterbi under the Hamming metric.
    pub fn decode_hard(&self, bits: &[u8]) -> Result<Vec<u8>, CodecError> {
        let steps = self.steps_for(bits.len())?;
        let rinv = self.spec.rate_inverse();
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(CodecError::Decode(format!("input value {b} is not a bit")));
        }
        let patterns = 1u32 << rinv;
        Ok(self.viterbi(steps, u32::MAX / 2, |t, costs: &mut Vec<u32>| {
            let chunk = &bits[t * rinv..(t + 1) * rinv];
            let received = chunk.iter().enumerate().fold(0u32, |acc, (j, &b)| acc | ((b as u32) << j));
            costs.clear();
            costs.extend((0..patterns).map(|p| (p ^ received).count_ones()));
        }))
    }

    /// Soft-decision Viterbi on unquantised observations (positive means bit
    /// 0). Minimises `Σ y·(2c − 1)`, i.e. maximises correlation, which is the
    /// Euclidean ML rule for antipodal signalling.
    pub fn decode_soft(&self, observations: &[f64]) -> Result<Vec<u8>, CodecError> {
        let steps = self.steps_for(observations.len())?;
        if let Some(y) = observations.iter().find(|y| !y.is_finite()) {
            return Err(CodecError::Decode(format!("non-finite observation {y}")));
        }
        let rinv = self.spec.rate_inverse();
        let patterns = 1u32 << rinv;
        Ok(self.viterbi(steps, f64::INFINITY, |t, costs: &mut Vec<f64>| {
            let chunk = &observations[t * rinv..(t + 1) * rinv];
            costs.clear();
            costs.extend((0..patterns).map(|p| {
                chunk
                    .iter()
                    .enumerate()
                    .map(|(j, &y)| if (p >> j) & 1 == 1 { y } else { -y })
                    .sum::<f64>()
            }));
        }))
    }

    /// Add-compare-select over `steps` trellis sections with full traceback.
    /// `branch_costs(t, costs)` fills the cost of every output pattern at
    /// step `t`.
    fn viterbi<M, F>(&self, steps: usize, unreachable: M, mut branch_costs: F) -> Vec<u8>
    where
        M: Copy + PartialOrd + Add<Output = M> + Default,
        F: FnMut(usize, &mut Vec<M>),
    {
        let states = self.states;
        let mask = states - 1;
        let top = self.spec.constraint_length - 2;
        let mut metric = vec![unreachable; states];
        metric[0] = M::default();
        let mut next = vec![unreachable; states];
        let mut decisions = vec![0u8; steps * states];
        let mut costs = Vec::new();

        for t in 0..steps {
            branch_costs(t, &mut costs);
            let row = &mut decisions[t * states..(t + 1) * states];
            for (ns, slot) in next.iter_mut().enumerate() {
                let input = ns >> top;
                let p0 = (ns << 1) & mask;
                let p1 = p0 | 1;
                let m0 = metric[p0] + costs[self.outputs[p0 * 2 + input] as usize];
                let m1 = metric[p1] + costs[self.outputs[p1 * 2 + input] as usize];
                if m1 < m0 {
                    *slot = m1;
                    row[ns] = 1;
                } else {
                    *slot = m0;
                }
            }
            std::mem::swap(&mut metric, &mut next);
        }

        let mut state = if self.spec.terminated {
            0
        } else {
            let mut best = 0;
            for s in 1..states {
                if metric[s] < metric[best] {
                    best = s;
                }
            }
            best
        };
        let mut bits = vec![0u8; steps];
        for t in (0..steps).rev() {
            bits[t] = (state >> top) as u8;
            state = ((state << 1) | decisions[t * states + state] as usize) & mask;
        }
        if self.spec.terminated {
            bits.truncate(steps + 1 - self.spec.constraint_length as usize);
        }
        bits
    }
}
