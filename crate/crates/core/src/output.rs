//! Fixed formatting shared by every CSV and JSON emitter.

use std::io::{self, Write};

use sha2::{Digest, Sha256};

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn fmt_float(x: f64) -> String {
    format!("{:.11e}", x + 0.0)
}

/// Writes a CSV header and rows with LF line endings.
pub fn write_csv<W: Write>(out: &mut W, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000e0");
        assert_eq!(fmt_float(-0.0), "0.00000000000e0");
        assert_eq!(fmt_float(-0.25), "-2.50000000000e-1");
        assert_eq!(fmt_float(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,2\n");
    }
}
