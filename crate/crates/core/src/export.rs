//! CSV conventions shared by all exporters: header row, RFC 4180 quoting,
//! LF line endings, 17 significant digits.

use std::io::Write;

use csv::{Terminator, WriterBuilder};

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    WriterBuilder::new().terminator(Terminator::Any(b'\n')).from_writer(w)
}

/// Round-trip exact decimal form of `x` with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn lf_terminated() {
        let mut w = csv_writer(Vec::new());
        w.write_record(["a", "b,c"]).unwrap();
        let out = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(out, "a,\"b,c\"\n");
    }
}
