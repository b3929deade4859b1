//! Binary PGM (P5, 8-bit) image I/O.
//!
//! Pixel values are stored on the `[0, 255]` scale; writing clamps and
//! rounds to the nearest integer, so images that are already integral in
//! range round-trip exactly.

use std::io::{Read, Write};

use crate::array::{RealArray, Shape};
use crate::error::{Error, Result};

pub fn write_pgm(mut out: impl Write, img: &RealArray) -> Result<()> {
    let ctx = |e| Error::Io {
        context: "writing pgm".into(),
        source: e,
    };
    let (rows, cols) = img.shape().dims();
    write!(out, "P5\n{cols} {rows}\n255\n").map_err(ctx)?;
    let bytes: Vec<u8> = img
        .data()
        .iter()
        .map(|&v| v.clamp(0.0, 255.0).round() as u8)
        .collect();
    out.write_all(&bytes).map_err(ctx)
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Malformed {
            format: "pgm",
            offset: self.pos,
            reason: reason.into(),
        }
    }

    /// Skip whitespace and `#` comments.
    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("unexpected end of header"));
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.fail("expected a decimal number"))
    }
}

pub fn read_pgm(mut input: impl Read) -> Result<RealArray> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(|e| Error::Io {
        context: "reading pgm".into(),
        source: e,
    })?;
    let mut sc = Scanner {
        bytes: &bytes,
        pos: 0,
    };
    let magic = sc.token()?;
    if magic != b"P5" {
        return Err(sc.fail("not a binary pgm (magic is not P5)"));
    }
    let cols = sc.number()?;
    let rows = sc.number()?;
    let maxval = sc.number()?;
    if maxval != 255 {
        return Err(sc.fail(format!("unsupported maxval {maxval}, expected 255")));
    }
    // exactly one whitespace byte separates the header from the raster
    if sc.pos >= sc.bytes.len() || !sc.bytes[sc.pos].is_ascii_whitespace() {
        return Err(sc.fail("missing raster separator"));
    }
    sc.pos += 1;
    let need = rows * cols;
    let raster = &sc.bytes[sc.pos..];
    if raster.len() < need {
        return Err(Error::Malformed {
            format: "pgm",
            offset: sc.pos + raster.len(),
            reason: format!("raster truncated: need {need} bytes, have {}", raster.len()),
        });
    }
    let data: Vec<f64> = raster[..need].iter().map(|&b| b as f64).collect();
    RealArray::new(Shape::Two(rows, cols), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_is_exact_for_integer_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let img = RealArray::from_fn_2d(9, 13, |_, _| rng.gen_range(0..=255) as f64);
        let mut buf = Vec::new();
        write_pgm(&mut buf, &img).unwrap();
        let back = read_pgm(buf.as_slice()).unwrap();
        assert_eq!(back.shape(), img.shape());
        assert_eq!(back.data(), img.data());
    }

    #[test]
    fn comments_in_header_are_skipped() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"P5\n# a comment\n2 2\n255\n");
        buf.extend_from_slice(&[0, 64, 128, 255]);
        let img = read_pgm(buf.as_slice()).unwrap();
        assert_eq!(img.data(), &[0.0, 64.0, 128.0, 255.0]);
    }

    #[test]
    fn truncated_raster_reports_position() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"P5\n4 4\n255\n");
        buf.extend_from_slice(&[1, 2, 3]);
        let err = read_pgm(buf.as_slice()).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("byte"), "position info expected: {text}");
    }

    #[test]
    fn wrong_magic_rejected() {
        assert!(read_pgm(b"P2\n1 1\n255\n0".as_slice()).is_err());
    }
}
