//! GF(2^m) arithmetic with exp/log tables, 2 ≤ m ≤ 8.

use super::CodecError;

/// Default primitive polynomial for each supported field size, bit `m` set.
pub fn default_primitive_poly(symbol_bits: u32) -> Option<u32> {
    Some(match symbol_bits {
        2 => 0x7,
        3 => 0xB,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11D,
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    bits: u32,
    order: usize,
    exp: Vec<u8>,
    log: Vec<u8>,
}

impl GaloisField {
    /// Builds the tables and checks that `poly` is primitive.
    pub fn new(symbol_bits: u32, poly: u32) -> Result<Self, CodecError> {
        if !(2..=8).contains(&symbol_bits) {
            return Err(CodecError::Spec(format!("symbol_bits {symbol_bits} outside 2..=8")));
        }
        if poly >> symbol_bits != 1 {
            return Err(CodecError::Spec(format!(
                "field polynomial {poly:#x} is not of degree {symbol_bits}"
            )));
        }
        let size = 1usize << symbol_bits;
        let order = size - 1;
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u8; size];
        let mut seen = vec![false; size];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if seen[x as usize] {
                return Err(CodecError::Spec(format!("field polynomial {poly:#x} is not primitive")));
            }
            seen[x as usize] = true;
            *slot = x as u8;
            log[x as usize] = i as u8;
            x <<= 1;
            if x & (size as u32) != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(CodecError::Spec(format!("field polynomial {poly:#x} is not primitive")));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GaloisField { bits: symbol_bits, order, exp, log })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Multiplicative group order, 2^m − 1.
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub fn div(&self, a: u8, b: u8) -> u8 {
        assert!(b != 0, "division by zero in GF(2^{})", self.bits);
        if a == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.order - self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.div(1, a)
    }

    /// α^e for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u8 {
        self.exp[e.rem_euclid(self.order as i64) as usize]
    }

    /// Evaluates a polynomial stored highest degree first.
    pub fn eval_desc(&self, poly: &[u8], x: u8) -> u8 {
        poly.iter().fold(0u8, |acc, &c| self.mul(acc, x) ^ c)
    }

    /// Evaluates a polynomial stored lowest degree first.
    pub fn eval_asc(&self, poly: &[u8], x: u8) -> u8 {
        poly.iter().rev().fold(0u8, |acc, &c| self.mul(acc, x) ^ c)
    }
}
