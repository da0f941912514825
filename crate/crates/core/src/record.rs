//! The JSON-lines matrix record and JSON helpers for big integers.
//!
//! A record is `{"n": <order>, "bits": "<hex>"}`. The upper triangle of the
//! Seidel matrix is read row-major over pairs `(1,2), (1,3), .., (n-1,n)`;
//! pair number `p` (0-based) is bit `p` of the integer whose lowercase hex
//! form is `bits`. Bit set means entry `+1`. The hex string is zero-padded
//! to exactly `ceil(n(n-1)/2 / 4)` digits, so the empty string encodes
//! orders 0 and 1.

use std::io::BufRead;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SeidelMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub n: usize,
    pub bits: String,
}

impl MatrixRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

impl From<&SeidelMatrix> for MatrixRecord {
    fn from(s: &SeidelMatrix) -> Self {
        MatrixRecord {
            n: s.order(),
            bits: encode_hex(s.words(), s.pair_count()),
        }
    }
}

impl TryFrom<&MatrixRecord> for SeidelMatrix {
    type Error = Error;

    fn try_from(r: &MatrixRecord) -> Result<SeidelMatrix> {
        let pairs = r.n * r.n.saturating_sub(1) / 2;
        let words = decode_hex(&r.bits, pairs)?;
        Ok(SeidelMatrix::from_words(r.n, words))
    }
}

/// Hex digits needed for `bit_len` bits.
pub fn hex_width(bit_len: usize) -> usize {
    bit_len.div_ceil(4)
}

pub(crate) fn encode_hex(words: &[u64], bit_len: usize) -> String {
    let width = hex_width(bit_len);
    let mut out = String::with_capacity(width);
    for d in (0..width).rev() {
        let bit = d * 4;
        let word = words.get(bit / 64).copied().unwrap_or(0);
        let nibble = (word >> (bit % 64)) & 0xf;
        out.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    out
}

pub(crate) fn decode_hex(hex: &str, bit_len: usize) -> Result<Vec<u64>> {
    let mut words = vec![0u64; bit_len.div_ceil(64)];
    for (d, c) in hex.chars().rev().enumerate() {
        let nibble = c
            .to_digit(16)
            .ok_or_else(|| Error::BadRecord(format!("invalid hex digit {c:?}")))?
            as u64;
        if c.is_ascii_uppercase() {
            return Err(Error::BadRecord("hex digits must be lowercase".into()));
        }
        for b in 0..4 {
            if nibble >> b & 1 == 1 {
                let bit = d * 4 + b;
                if bit >= bit_len {
                    return Err(Error::BadRecord(format!(
                        "bit {bit} set but only {bit_len} pairs exist"
                    )));
                }
                words[bit / 64] |= 1 << (bit % 64);
            }
        }
    }
    Ok(words)
}

/// Reads every line of `reader` that parses as a matrix record. Lines that
/// are blank or carry other JSON objects (certificates, reports) are
/// skipped.
pub fn read_matrices<R: BufRead>(reader: R) -> Result<Vec<SeidelMatrix>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::BadRecord(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Ok(rec) = serde_json::from_str::<MatrixRecord>(line) {
            out.push(SeidelMatrix::try_from(&rec)?);
        }
    }
    Ok(out)
}

pub(crate) fn bigint_to_number(v: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("decimal integers are JSON numbers")
}

pub(crate) fn bigint_from_number(n: &serde_json::Number) -> std::result::Result<BigInt, String> {
    BigInt::from_str(&n.to_string()).map_err(|e| format!("{n} is not an integer: {e}"))
}

/// Serde adapter writing a `BigInt` as a bare JSON number.
pub mod bigint_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        bigint_to_number(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        bigint_from_number(&n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_record() {
        // pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4) = +,+,+,+,-,+ -> 0b101111
        let s = SeidelMatrix::from_rows(&[
            vec![0, 1, 1, 1],
            vec![-1, 0, 1, -1],
            vec![-1, -1, 0, 1],
            vec![-1, 1, -1, 0],
        ])
        .unwrap();
        let rec = MatrixRecord::from(&s);
        assert_eq!(rec.bits, "2f");
        assert_eq!(rec.to_json_line(), r#"{"n":4,"bits":"2f"}"#);
        assert_eq!(SeidelMatrix::try_from(&rec).unwrap(), s);
    }

    #[test]
    fn padding_and_degenerate_orders() {
        assert_eq!(MatrixRecord::from(&SeidelMatrix::transitive(0)).bits, "");
        assert_eq!(MatrixRecord::from(&SeidelMatrix::transitive(1)).bits, "");
        // n = 5: 10 pairs -> 3 hex digits
        assert_eq!(MatrixRecord::from(&SeidelMatrix::transitive(5)).bits, "3ff");
        let neg = SeidelMatrix::from_words(5, vec![0]);
        assert_eq!(MatrixRecord::from(&neg).bits, "000");
    }

    #[test]
    fn rejects_bad_hex() {
        let bad = MatrixRecord { n: 3, bits: "f".into() };
        assert!(SeidelMatrix::try_from(&bad).is_err());
        let bad = MatrixRecord { n: 4, bits: "zz".into() };
        assert!(SeidelMatrix::try_from(&bad).is_err());
        let upper = MatrixRecord { n: 4, bits: "2F".into() };
        assert!(SeidelMatrix::try_from(&upper).is_err());
    }

    #[test]
    fn reader_skips_other_lines() {
        let input = "{\"n\":2,\"bits\":\"1\"}\n{\"certificate\":{}}\n\n{\"n\":2,\"bits\":\"0\"}\n";
        let ms = read_matrices(input.as_bytes()).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].entry(0, 1), 1);
        assert_eq!(ms[1].entry(0, 1), -1);
    }
}
