use std::path::Path;

use adaptecc_core::codecs::golden::{self, pack_bits, unpack_bits};
use adaptecc_core::codecs::{ConvCodec, ConvSpec, RsCodec, RsOutcome, RsSpec};

fn load(name: &str) -> Vec<golden::GoldenVector> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let vectors = golden::parse(&text).unwrap();
    assert!(!vectors.is_empty(), "{name} is empty");
    vectors
}

fn check_rs(name: &str, spec: RsSpec) {
    let codec = RsCodec::new(spec).unwrap();
    for (i, v) in load(name).iter().enumerate() {
        assert_eq!(codec.encode(&v.message).unwrap(), v.codeword, "{name} vector {i}");
        match codec.decode(&v.codeword).unwrap() {
            RsOutcome::Decoded { message, corrected } => {
                assert_eq!(message, v.message);
                assert_eq!(corrected, 0);
            }
            RsOutcome::Failure => panic!("{name} vector {i} failed to decode"),
        }
    }
}

fn check_conv(name: &str, spec: ConvSpec) {
    let codec = ConvCodec::new(spec).unwrap();
    for (i, v) in load(name).iter().enumerate() {
        let bits = unpack_bits(&v.message, v.message.len() * 8);
        let coded = codec.encode(&bits).unwrap();
        assert_eq!(pack_bits(&coded), v.codeword, "{name} vector {i}");
        let expected = unpack_bits(&v.codeword, codec.spec().coded_len(bits.len()));
        assert_eq!(codec.decode_hard(&expected).unwrap(), bits);
    }
}

#[test]
fn rs_7_3() {
    check_rs("rs_7_3.txt", RsSpec::new(3, 7, 3));
}

#[test]
fn rs_31_21() {
    check_rs("rs_31_21.txt", RsSpec::new(5, 31, 21));
}

#[test]
fn rs_255_223() {
    check_rs("rs_255_223.txt", RsSpec::new(8, 255, 223));
}

#[test]
fn conv_k3() {
    check_conv("conv_k3_7_5.txt", ConvSpec::new(3, &[0o7, 0o5]));
}

#[test]
fn conv_k7() {
    check_conv("conv_k7_171_133.txt", ConvSpec::default());
}
