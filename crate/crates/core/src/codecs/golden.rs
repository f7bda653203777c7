//! Golden-vector files.
//!
//! Line-oriented text; blank lines and lines starting with `#` are ignored.
//! Every other line holds one `message codeword` pair as two whitespace
//! separated lowercase hex strings.
//!
//! - Reed-Solomon files: one byte (two hex digits) per symbol.
//! - Convolutional files: bits packed MSB-first into bytes. The message is
//!   always a whole number of bytes; the codeword is zero-padded to a whole
//!   byte and its true bit length follows from the code spec.

use super::CodecError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenVector {
    pub message: Vec<u8>,
    pub codeword: Vec<u8>,
}

pub fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn from_hex(s: &str) -> Result<Vec<u8>, CodecError> {
    if !s.len().is_multiple_of(2) {
        return Err(CodecError::Golden(format!("odd-length hex string `{s}`")));
    }
    (0..s.len())
        .step_by(2)
        .map(|i| {
            u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| CodecError::Golden(format!("bad hex `{}`", &s[i..i + 2])))
        })
        .collect()
}

/// Packs bits MSB-first, zero-padding the last byte.
pub fn pack_bits(bits: &[u8]) -> Vec<u8> {
    bits.chunks(8)
        .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b & 1) << (7 - i))))
        .collect()
}

pub fn unpack_bits(bytes: &[u8], nbits: usize) -> Vec<u8> {
    (0..nbits).map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1).collect()
}

pub fn format_line(v: &GoldenVector) -> String {
    format!("{} {}", to_hex(&v.message), to_hex(&v.codeword))
}

pub fn parse(text: &str) -> Result<Vec<GoldenVector>, CodecError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CodecError::Golden(format!(
                "line {}: expected `message codeword`, got {} fields",
                lineno + 1,
                fields.len()
            )));
        }
        out.push(GoldenVector {
            message: from_hex(fields[0])?,
            codeword: from_hex(fields[1])?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let text = "# header\n\n0102 0a0b0c\n";
        let v = parse(text).unwrap();
        assert_eq!(v, vec![GoldenVector { message: vec![1, 2], codeword: vec![10, 11, 12] }]);
        assert_eq!(format_line(&v[0]), "0102 0a0b0c");
        assert!(parse("01 02 03").is_err());
        assert!(parse("0g 00").is_err());
        assert!(parse("012 00").is_err());
    }

    #[test]
    fn bit_packing() {
        let bits = [1, 0, 1, 1, 0, 0, 0, 0, 1, 1];
        let packed = pack_bits(&bits);
        assert_eq!(packed, vec![0xB0, 0xC0]);
        assert_eq!(unpack_bits(&packed, bits.len()), bits);
    }
}
