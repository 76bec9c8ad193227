//! Flat-file formats: coefficient CSV and sample-trail CSV.
//!
//! Coefficient files carry the header `n,re,im` and one row per index,
//! n = 1..N consecutively.  Real and imaginary parts are written in
//! scientific notation with 17 significant digits, so a write–read–write
//! round trip is byte-identical and files diff cleanly across runs.
//!
//! Sample trails (`x,statistic,ratio`) are the plot-ready form of an
//! estimate's evidence: the scale, the log-numerator, and their quotient.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::abscissa::AbscissaEstimate;
use crate::coeffs::{CoefficientSeq, Structure};
use crate::{Error, Result};

/// Write `a` in the coefficient CSV format.
pub fn write_coeffs_csv<W: Write>(mut w: W, a: &CoefficientSeq) -> Result<()> {
    writeln!(w, "n,re,im")?;
    for (i, v) in a.values().iter().enumerate() {
        writeln!(w, "{},{:.16e},{:.16e}", i + 1, v.re, v.im)?;
    }
    Ok(())
}

/// Write `a` to a coefficient CSV file at `path`.
pub fn write_coeffs_file<P: AsRef<Path>>(path: P, a: &CoefficientSeq) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_coeffs_csv(&mut w, a)?;
    w.flush()?;
    Ok(())
}

/// Read a coefficient CSV.  The header must be `n,re,im` and the indices
/// must run 1, 2, 3, ... without gaps.  Structural claims do not survive
/// serialization: the result is tagged [`Structure::Unknown`].
pub fn read_coeffs_csv<R: BufRead>(r: R) -> Result<CoefficientSeq> {
    let mut lines = r.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(Error::Parse {
                place: "line 1".into(),
                detail: "empty file, expected header n,re,im".into(),
            })
        }
    };
    if header.trim_end() != "n,re,im" {
        return Err(Error::Parse {
            place: "line 1".into(),
            detail: format!("expected header n,re,im, got {header:?}"),
        });
    }
    let mut values = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let place = || format!("line {}", lineno + 2);
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.trim_end().split(',');
        let (Some(n), Some(re), Some(im), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::Parse {
                place: place(),
                detail: "expected exactly three fields n,re,im".into(),
            });
        };
        let n: usize = n.parse().map_err(|e| Error::Parse {
            place: place(),
            detail: format!("bad index {n:?}: {e}"),
        })?;
        if n != values.len() + 1 {
            return Err(Error::Parse {
                place: place(),
                detail: format!("expected index {}, got {}", values.len() + 1, n),
            });
        }
        let re: f64 = re.parse().map_err(|e| Error::Parse {
            place: place(),
            detail: format!("bad real part {re:?}: {e}"),
        })?;
        let im: f64 = im.parse().map_err(|e| Error::Parse {
            place: place(),
            detail: format!("bad imaginary part {im:?}: {e}"),
        })?;
        values.push(Complex64::new(re, im));
    }
    if values.is_empty() {
        return Err(Error::Parse {
            place: "line 2".into(),
            detail: "no coefficient rows".into(),
        });
    }
    CoefficientSeq::new(values, Structure::Unknown)
}

/// Read a coefficient CSV file from `path`.
pub fn read_coeffs_file<P: AsRef<Path>>(path: P) -> Result<CoefficientSeq> {
    read_coeffs_csv(BufReader::new(File::open(path)?))
}

/// Write an estimate's sample trail as `x,statistic,ratio` rows.
pub fn write_sample_trail<W: Write>(mut w: W, est: &AbscissaEstimate) -> Result<()> {
    writeln!(w, "x,statistic,ratio")?;
    for &(x, y) in &est.samples {
        writeln!(w, "{},{:.16e},{:.16e}", x, y, y / x.ln())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abscissa::{sigma_c_estimate, SampleGrid};
    use crate::constructions::{wintner_coeffs, zeta_coeffs, RandomModelConfig};

    fn roundtrip(a: &CoefficientSeq) -> (Vec<u8>, CoefficientSeq) {
        let mut buf = Vec::new();
        write_coeffs_csv(&mut buf, a).unwrap();
        let back = read_coeffs_csv(buf.as_slice()).unwrap();
        (buf, back)
    }

    #[test]
    fn coefficient_csv_round_trips_bitwise() {
        let a = wintner_coeffs(&RandomModelConfig::new(11, 300)).unwrap();
        let (bytes, back) = roundtrip(&a);
        assert_eq!(back.len(), a.len());
        for n in 1..=a.len() {
            assert_eq!(back.get(n).re.to_bits(), a.get(n).re.to_bits(), "n = {n}");
            assert_eq!(back.get(n).im.to_bits(), a.get(n).im.to_bits(), "n = {n}");
        }
        assert_eq!(back.structure(), Structure::Unknown);

        // write(read(write(a))) == write(a), byte for byte
        let mut again = Vec::new();
        write_coeffs_csv(&mut again, &back).unwrap();
        assert_eq!(bytes, again);
    }

    #[test]
    fn coefficient_csv_format_is_pinned() {
        let a = zeta_coeffs(2);
        let mut buf = Vec::new();
        write_coeffs_csv(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,re,im\n1,1.0000000000000000e0,0.0000000000000000e0\n2,1.0000000000000000e0,0.0000000000000000e0\n"
        );
    }

    #[test]
    fn reader_rejects_malformed_input() {
        let cases: &[(&str, &str)] = &[
            ("", "empty"),
            ("x,y,z\n1,1.0,0.0\n", "header"),
            ("n,re,im\n", "no rows"),
            ("n,re,im\n2,1.0,0.0\n", "starts at 2"),
            ("n,re,im\n1,1.0,0.0\n3,1.0,0.0\n", "gap"),
            ("n,re,im\n1,1.0\n", "two fields"),
            ("n,re,im\n1,1.0,0.0,9\n", "four fields"),
            ("n,re,im\n1,abc,0.0\n", "bad float"),
            ("n,re,im\none,1.0,0.0\n", "bad index"),
        ];
        for (input, label) in cases {
            let got = read_coeffs_csv(input.as_bytes());
            assert!(
                matches!(got, Err(Error::Parse { .. })),
                "case {label:?} should fail to parse, got {got:?}"
            );
        }
    }

    #[test]
    fn file_round_trip_and_trail_shape() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seq.csv");
        let a = zeta_coeffs(128);
        write_coeffs_file(&path, &a).unwrap();
        let back = read_coeffs_file(&path).unwrap();
        assert_eq!(back.len(), 128);

        let grid = SampleGrid::dyadic(128).unwrap();
        let est = sigma_c_estimate(&back, &grid).unwrap();
        let mut buf = Vec::new();
        write_sample_trail(&mut buf, &est).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,statistic,ratio"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("16,"), "got {first:?}");
        // S(16) = 16: statistic log 16, ratio exactly 1
        assert!(first.ends_with(",1.0000000000000000e0"), "got {first:?}");
        assert_eq!(text.lines().count(), 1 + est.samples.len());
    }
}
