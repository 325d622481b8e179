//! Serialization: the QF01 binary field format, P6 PPM images as
//! pure-quaternion fields, and textual root-pair specifications.
//!
//! QF01 layout (all integers and floats little-endian):
//!
//! ```text
//! bytes 0..4   magic "QF01"
//! bytes 4..8   n1 as u32
//! bytes 8..12  n2 as u32
//! then n1*n2 samples of four f64 in (w, x, y, z) order, row-major
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::QField;
use crate::quat::{Quaternion, Root, RootPair};

const MAGIC: [u8; 4] = *b"QF01";
const HEADER_LEN: usize = 12;
const SAMPLE_LEN: usize = 32;

pub fn write_field(path: impl AsRef<Path>, f: &QField) -> Result<()> {
    fs::write(path, encode_field(f)).map_err(Error::from)
}

pub fn read_field(path: impl AsRef<Path>) -> Result<QField> {
    decode_field(&fs::read(path)?)
}

pub fn encode_field(f: &QField) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(HEADER_LEN + SAMPLE_LEN * f.len());
    bytes.extend_from_slice(&MAGIC);
    bytes.extend_from_slice(&(f.n1() as u32).to_le_bytes());
    bytes.extend_from_slice(&(f.n2() as u32).to_le_bytes());
    for q in f.data() {
        for c in [q.w, q.x, q.y, q.z] {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
    }
    bytes
}

pub fn decode_field(bytes: &[u8]) -> Result<QField> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::TruncatedPayload {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let found: [u8; 4] = bytes[0..4].try_into().expect("length checked");
    if found != MAGIC {
        return Err(Error::BadMagic {
            found,
            expected: MAGIC,
        });
    }
    let n1 = u32::from_le_bytes(bytes[4..8].try_into().expect("length checked")) as usize;
    let n2 = u32::from_le_bytes(bytes[8..12].try_into().expect("length checked")) as usize;
    let expected = HEADER_LEN + SAMPLE_LEN * n1 * n2;
    if bytes.len() != expected {
        return Err(Error::TruncatedPayload {
            expected,
            found: bytes.len(),
        });
    }
    let mut data = Vec::with_capacity(n1 * n2);
    for chunk in bytes[HEADER_LEN..].chunks_exact(SAMPLE_LEN) {
        let mut c = [0.0; 4];
        for (v, raw) in c.iter_mut().zip(chunk.chunks_exact(8)) {
            *v = f64::from_le_bytes(raw.try_into().expect("chunk size"));
        }
        data.push(Quaternion::new(c[0], c[1], c[2], c[3]));
    }
    QField::new(n1, n2, data)
}

/// Reads a binary P6 PPM with maxval 255. Pixel `(r, g, b)` becomes the
/// pure quaternion `(0, r/255, g/255, b/255)`; rows map to the first grid
/// axis, columns to the second.
pub fn read_ppm(path: impl AsRef<Path>) -> Result<QField> {
    decode_ppm(&fs::read(path)?)
}

pub fn decode_ppm(bytes: &[u8]) -> Result<QField> {
    let mut cursor = 0;
    let magic = next_token(bytes, &mut cursor)
        .ok_or_else(|| Error::UnsupportedFormat("missing PPM header".into()))?;
    if magic != b"P6" {
        return Err(Error::UnsupportedFormat(format!(
            "only binary P6 is supported, got {:?}",
            String::from_utf8_lossy(magic)
        )));
    }
    let width = parse_header_number(bytes, &mut cursor, "width")?;
    let height = parse_header_number(bytes, &mut cursor, "height")?;
    let maxval = parse_header_number(bytes, &mut cursor, "maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!(
            "only maxval 255 is supported, got {maxval}"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    cursor += 1;
    let expected = width * height * 3;
    let raster = bytes
        .get(cursor..cursor + expected)
        .ok_or(Error::TruncatedPayload {
            expected: cursor + expected,
            found: bytes.len(),
        })?;

    let mut data = Vec::with_capacity(width * height);
    for px in raster.chunks_exact(3) {
        data.push(Quaternion::pure(
            px[0] as f64 / 255.0,
            px[1] as f64 / 255.0,
            px[2] as f64 / 255.0,
        ));
    }
    QField::new(height, width, data)
}

/// Result of a PPM write; `max_scalar_abs` reports how much real part was
/// discarded so callers can warn when it exceeds noise level (1e-6).
#[derive(Clone, Copy, Debug, Default)]
pub struct PpmWriteReport {
    pub max_scalar_abs: f64,
}

impl PpmWriteReport {
    pub fn scalar_leak_warning(&self) -> bool {
        self.max_scalar_abs > 1e-6
    }
}

pub fn write_ppm(path: impl AsRef<Path>, f: &QField) -> Result<PpmWriteReport> {
    let (bytes, report) = encode_ppm(f);
    fs::write(path, bytes)?;
    Ok(report)
}

/// Inverts the read mapping: channels clamp to [0, 1] and quantize with
/// round-half-up; the scalar part is dropped and reported.
pub fn encode_ppm(f: &QField) -> (Vec<u8>, PpmWriteReport) {
    let mut bytes = format!("P6\n{} {}\n255\n", f.n2(), f.n1()).into_bytes();
    let mut max_scalar = 0.0_f64;
    for q in f.data() {
        max_scalar = max_scalar.max(q.w.abs());
        for channel in [q.x, q.y, q.z] {
            bytes.push((channel.clamp(0.0, 1.0) * 255.0).round() as u8);
        }
    }
    (
        bytes,
        PpmWriteReport {
            max_scalar_abs: max_scalar,
        },
    )
}

fn next_token<'a>(bytes: &'a [u8], cursor: &mut usize) -> Option<&'a [u8]> {
    // skip whitespace and '#' comments, which run to end of line
    loop {
        match bytes.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while let Some(b) = bytes.get(*cursor) {
                    *cursor += 1;
                    if *b == b'\n' {
                        break;
                    }
                }
            }
            Some(_) => break,
            None => return None,
        }
    }
    let start = *cursor;
    while let Some(b) = bytes.get(*cursor) {
        if b.is_ascii_whitespace() {
            break;
        }
        *cursor += 1;
    }
    (start < *cursor).then(|| &bytes[start..*cursor])
}

fn parse_header_number(bytes: &[u8], cursor: &mut usize, what: &str) -> Result<usize> {
    let token = next_token(bytes, cursor)
        .ok_or_else(|| Error::UnsupportedFormat(format!("missing PPM {what}")))?;
    std::str::from_utf8(token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::UnsupportedFormat(format!("invalid PPM {what}")))
}

/// Parses a root-pair specification: a named preset (`equal-i`, `perp-ij`,
/// `gray-line`) or one/two comma-separated 3-vectors joined by `;`.
/// A single vector is used for both roots.
pub fn parse_roots(text: &str) -> Result<RootPair> {
    let text = text.trim();
    match text {
        "equal-i" => return Ok(RootPair::equal(Root::I)),
        "perp-ij" => return Ok(RootPair::new(Root::I, Root::J)),
        "gray-line" => {
            let gray = Root::new(1.0, 1.0, 1.0).expect("non-zero");
            return Ok(RootPair::equal(gray));
        }
        _ => {}
    }
    let mut parts = text.split(';');
    let mu = parse_vector(parts.next().unwrap_or(""))?;
    let nu = match parts.next() {
        Some(v) => parse_vector(v)?,
        None => mu,
    };
    if parts.next().is_some() {
        return Err(Error::ParseError(format!(
            "expected at most two vectors in root spec {text:?}"
        )));
    }
    Ok(RootPair::new(mu, nu))
}

fn parse_vector(text: &str) -> Result<Root> {
    let comps: Vec<f64> = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| Error::ParseError(format!("invalid component {:?}", c.trim())))
        })
        .collect::<Result<_>>()?;
    if comps.len() != 3 {
        return Err(Error::ParseError(format!(
            "expected three components, got {} in {text:?}",
            comps.len()
        )));
    }
    Root::new(comps[0], comps[1], comps[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::anticommutator;

    #[test]
    fn one_by_one_field_is_44_bytes() {
        let f = QField::constant(1, 1, Quaternion::new(1.0, 2.0, 3.0, 4.0));
        let bytes = encode_field(&f);
        assert_eq!(bytes.len(), 44);
        assert_eq!(decode_field(&bytes).unwrap(), f);
    }

    #[test]
    fn field_round_trip_is_bit_identical() {
        let f = QField::from_fn(8, 8, |a, b| {
            Quaternion::new(
                (a as f64).sin(),
                (b as f64).cos(),
                a as f64 - 0.5 * b as f64,
                -1.0 / (1.0 + (a + b) as f64),
            )
        });
        let bytes = encode_field(&f);
        let again = encode_field(&decode_field(&bytes).unwrap());
        assert_eq!(bytes, again);
    }

    #[test]
    fn bad_magic_is_reported() {
        let f = QField::zeros(1, 1);
        let mut bytes = encode_field(&f);
        bytes[3] = b'0'; // "QF00"
        assert!(matches!(
            decode_field(&bytes),
            Err(Error::BadMagic { found, .. }) if &found == b"QF00"
        ));
    }

    #[test]
    fn truncated_payload_is_reported() {
        let f = QField::zeros(2, 2);
        let mut bytes = encode_field(&f);
        bytes.truncate(bytes.len() - 1);
        assert!(matches!(
            decode_field(&bytes),
            Err(Error::TruncatedPayload { .. })
        ));
    }

    #[test]
    fn pure_red_maps_to_i() {
        let bytes = b"P6\n1 1\n255\n\xff\x00\x00";
        let f = decode_ppm(bytes).unwrap();
        assert_eq!(f[(0, 0)], Quaternion::I);
    }

    #[test]
    fn black_image_is_the_zero_field() {
        let bytes = b"P6\n2 2\n255\n\x00\x00\x00\x00\x00\x00\x00\x00\x00\x00\x00\x00";
        let f = decode_ppm(bytes).unwrap();
        assert_eq!(f, QField::zeros(2, 2));
    }

    #[test]
    fn ppm_read_write_read_is_stable() {
        let mut raster = Vec::new();
        for k in 0..12u32 {
            raster.push((k * 21 % 256) as u8);
        }
        let mut bytes = b"P6\n# test card\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&raster);
        let f = decode_ppm(&bytes).unwrap();
        let (encoded, report) = encode_ppm(&f);
        assert!(!report.scalar_leak_warning());
        let again = decode_ppm(&encoded).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn non_p6_and_wrong_maxval_are_unsupported() {
        assert!(matches!(
            decode_ppm(b"P3\n1 1\n255\n"),
            Err(Error::UnsupportedFormat(_))
        ));
        assert!(matches!(
            decode_ppm(b"P6\n1 1\n65535\n\x00\x00\x00\x00\x00\x00"),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn scalar_leak_is_reported() {
        let f = QField::constant(1, 1, Quaternion::new(0.01, 0.5, 0.5, 0.5));
        let (_, report) = encode_ppm(&f);
        assert!(report.scalar_leak_warning());
        assert!((report.max_scalar_abs - 0.01).abs() < 1e-15);
    }

    #[test]
    fn root_presets() {
        let p = parse_roots("perp-ij").unwrap();
        assert_eq!(p.mu(), Root::I);
        assert_eq!(p.nu(), Root::J);
        assert_eq!(p.anticommutator(), 0.0);

        let g = parse_roots("gray-line").unwrap();
        let q = g.mu().as_quaternion();
        assert!((q * q + Quaternion::ONE).abs_max() <= 1e-14);
        assert_eq!(g.mu(), g.nu());

        let e = parse_roots("equal-i").unwrap();
        assert_eq!(e.mu(), Root::I);
        assert_eq!(e.anticommutator(), -2.0);
    }

    #[test]
    fn root_vectors() {
        let p = parse_roots("1,0,0;0,1,0").unwrap();
        assert_eq!(p.mu(), Root::I);
        assert_eq!(p.nu(), Root::J);

        let single = parse_roots("0,0,2").unwrap();
        assert_eq!(single.mu(), Root::K);
        assert_eq!(single.nu(), Root::K);
        assert_eq!(anticommutator(single.mu(), single.nu()), -2.0);

        assert!(matches!(parse_roots("1,0"), Err(Error::ParseError(_))));
        assert!(matches!(parse_roots("0,0,0"), Err(Error::ZeroVector)));
        assert!(matches!(parse_roots("a,b,c"), Err(Error::ParseError(_))));
        assert!(matches!(
            parse_roots("1,0,0;0,1,0;0,0,1"),
            Err(Error::ParseError(_))
        ));
    }
}
