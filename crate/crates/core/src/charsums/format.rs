//! Binary encodings of sum tables (`EXPS`) and value distributions (`EXPD`).

use num_complex::Complex64;

use super::dist::ValueDist;
use super::table::{error_bound, SumTable, TableKind};
use crate::error::{Error, Result};
use crate::field_poly::PolyId;

pub const TABLE_MAGIC: &[u8; 4] = b"EXPS";
pub const DIST_MAGIC: &[u8; 4] = b"EXPD";
pub const TABLE_VERSION: u16 = 1;
const TABLE_HEADER: usize = 4 + 2 + 8 + 2 + 32;

pub fn encode_table(t: &SumTable) -> Vec<u8> {
    let mut out = Vec::with_capacity(TABLE_HEADER + 16 * t.values.len());
    out.extend_from_slice(TABLE_MAGIC);
    out.extend_from_slice(&TABLE_VERSION.to_le_bytes());
    out.extend_from_slice(&t.p.to_le_bytes());
    out.extend_from_slice(&(t.degree as u16).to_le_bytes());
    out.extend_from_slice(&t.poly_id.0);
    for z in &t.values {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

fn take<const N: usize>(buf: &[u8], at: usize) -> Result<[u8; N]> {
    buf.get(at..at + N)
        .and_then(|s| s.try_into().ok())
        .ok_or_else(|| Error::Format("truncated input".into()))
}

/// Decodes a plain table.
pub fn decode_table(buf: &[u8]) -> Result<SumTable> {
    if take::<4>(buf, 0)? != *TABLE_MAGIC {
        return Err(Error::Format("bad table magic".into()));
    }
    let version = u16::from_le_bytes(take(buf, 4)?);
    if version != TABLE_VERSION {
        return Err(Error::Format(format!("unsupported table version {version}")));
    }
    let p = u64::from_le_bytes(take(buf, 6)?);
    let degree = u16::from_le_bytes(take(buf, 14)?) as usize;
    let poly_id = PolyId(take(buf, 16)?);
    let body = &buf[TABLE_HEADER..];
    if body.len() as u64 != 16 * p {
        return Err(Error::Format(format!("expected {} value bytes, found {}", 16 * p, body.len())));
    }
    let values = body
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    Ok(SumTable { p, poly_id, degree, kind: TableKind::Plain, values, error_bound: error_bound(p) })
}

pub fn encode_dist(d: &ValueDist) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 4 * d.counts().len());
    out.extend_from_slice(DIST_MAGIC);
    out.extend_from_slice(&d.p().to_le_bytes());
    for &c in d.counts() {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

pub fn decode_dist(buf: &[u8]) -> Result<ValueDist> {
    if take::<4>(buf, 0)? != *DIST_MAGIC {
        return Err(Error::Format("bad distribution magic".into()));
    }
    let p = u64::from_le_bytes(take(buf, 4)?);
    let body = &buf[12..];
    if body.len() as u64 != 4 * p {
        return Err(Error::Format(format!("expected {} count bytes, found {}", 4 * p, body.len())));
    }
    let counts = body.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
    Ok(ValueDist::from_counts(p, counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsums::{sum_table, value_distribution};
    use crate::field_poly::{PolyModP, PrimeField};

    #[test]
    fn round_trips() {
        let f = PolyModP::from_i64s(PrimeField::new(101).unwrap(), &[1, 1, 0, 1]);
        let t = sum_table(&f).unwrap();
        let bytes = encode_table(&t);
        assert_eq!(&bytes[..4], b"EXPS");
        assert_eq!(bytes.len(), 48 + 16 * 101);
        assert_eq!(u64::from_le_bytes(bytes[6..14].try_into().unwrap()), 101);
        assert_eq!(decode_table(&bytes).unwrap(), t);
        let d = value_distribution(&f);
        let bytes = encode_dist(&d);
        assert_eq!(bytes.len(), 12 + 4 * 101);
        assert_eq!(decode_dist(&bytes).unwrap(), d);
    }

    #[test]
    fn rejects_corruption() {
        let f = PolyModP::from_i64s(PrimeField::new(7).unwrap(), &[0, 0, 1]);
        let mut bytes = encode_table(&sum_table(&f).unwrap());
        bytes.pop();
        assert!(matches!(decode_table(&bytes), Err(Error::Format(_))));
        bytes[0] = b'X';
        assert!(matches!(decode_table(&bytes), Err(Error::Format(_))));
        assert!(matches!(decode_dist(b"EXPD"), Err(Error::Format(_))));
    }
}
