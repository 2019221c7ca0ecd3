//! JSON emission with 17-significant-digit floats.
//!
//! Every float printed by the CLI goes through this formatter so identical
//! invocations produce byte-identical output and every value round-trips
//! exactly back to its f64 bits.

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};
use std::io;

struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            // 1 leading digit + 16 fractional digits = 17 significant.
            write!(writer, "{value:.16e}")
        } else {
            // JSON has no inf/nan tokens.
            writer.write_all(b"null")
        }
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        let mut inner = CompactFormatter;
        inner.write_f32(writer, value)
    }
}

/// Serialize to a compact JSON string with 17-digit floats.
pub fn to_string_g17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::with_capacity(128);
    let mut ser = Serializer::with_formatter(&mut out, G17Formatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// The same 17-significant-digit rendering for non-JSON (CSV/human) output.
pub fn fmt_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        for v in [
            0.1,
            2.0 / 3.0,
            std::f64::consts::PI * std::f64::consts::PI / 6.0,
            1e-300,
            6.357051097134755,
        ] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s} does not round-trip");
        }
    }

    #[test]
    fn json_shape() {
        #[derive(Serialize)]
        struct Row {
            p: i64,
            value: f64,
        }
        let s = to_string_g17(&Row { p: 3, value: 0.5 });
        assert_eq!(s, "{\"p\":3,\"value\":5.0000000000000000e-1}");
    }
}
