//! Shared container framing for the ciphertext and image formats.
//!
//! Both containers open with the same 12-byte header:
//!
//! ```text
//! magic (4) | version (1) | block_size (1) | reserved (2, zero) | count (4, LE)
//! ```
//!
//! followed by `count` fixed-size records. Everything is little-endian.

use std::io::{Read, Write};

use crate::{Error, Result};

pub(crate) const FORMAT_VERSION: u8 = 0x01;

pub(crate) struct Header {
    pub block_size: u8,
    pub count: u32,
}

pub(crate) fn write_header(
    sink: &mut dyn Write,
    magic: &[u8; 4],
    block_size: u8,
    count: u32,
) -> Result<()> {
    sink.write_all(magic)?;
    sink.write_all(&[FORMAT_VERSION, block_size, 0, 0])?;
    sink.write_all(&count.to_le_bytes())?;
    Ok(())
}

pub(crate) fn read_header(source: &mut dyn Read, magic: &[u8; 4]) -> Result<Header> {
    let mut fixed = [0u8; 8];
    read_exact(source, &mut fixed, "container header")?;
    if &fixed[..4] != magic {
        return Err(Error::BadMagic {
            expected: *magic,
            found: [fixed[0], fixed[1], fixed[2], fixed[3]],
        });
    }
    if fixed[4] != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion { found: fixed[4] });
    }
    let block_size = fixed[5];
    if block_size < 2 || block_size % 2 != 0 {
        return Err(Error::InvalidBlockSize { size: block_size });
    }
    let mut count_bytes = [0u8; 4];
    read_exact(source, &mut count_bytes, "container header")?;
    Ok(Header {
        block_size,
        count: u32::from_le_bytes(count_bytes),
    })
}

/// `read_exact` with short reads reported as a truncation of `context`.
pub(crate) fn read_exact(
    source: &mut dyn Read,
    buf: &mut [u8],
    context: &'static str,
) -> Result<()> {
    source.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::Truncated { context }
        } else {
            Error::Io(e)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAGIC: &[u8; 4] = b"TSTC";

    #[test]
    fn header_round_trip() {
        let mut buf = Vec::new();
        write_header(&mut buf, MAGIC, 8, 3).unwrap();
        assert_eq!(buf, [b'T', b'S', b'T', b'C', 1, 8, 0, 0, 3, 0, 0, 0]);
        let h = read_header(&mut buf.as_slice(), MAGIC).unwrap();
        assert_eq!(h.block_size, 8);
        assert_eq!(h.count, 3);
    }

    #[test]
    fn count_is_little_endian() {
        let mut buf = Vec::new();
        write_header(&mut buf, MAGIC, 2, 0x0102_0304).unwrap();
        assert_eq!(&buf[8..], [0x04, 0x03, 0x02, 0x01]);
    }

    #[test]
    fn wrong_magic_is_rejected() {
        let mut buf = Vec::new();
        write_header(&mut buf, b"OTHR", 8, 1).unwrap();
        assert!(matches!(
            read_header(&mut buf.as_slice(), MAGIC),
            Err(Error::BadMagic { expected, found })
                if &expected == MAGIC && &found == b"OTHR"
        ));
    }

    #[test]
    fn unknown_version_is_rejected() {
        let mut buf = Vec::new();
        write_header(&mut buf, MAGIC, 8, 1).unwrap();
        buf[4] = 2;
        assert!(matches!(
            read_header(&mut buf.as_slice(), MAGIC),
            Err(Error::UnsupportedVersion { found: 2 })
        ));
    }

    #[test]
    fn bad_stored_block_size_is_rejected() {
        for bad in [0u8, 5] {
            let mut buf = Vec::new();
            write_header(&mut buf, MAGIC, bad, 1).unwrap();
            assert!(matches!(
                read_header(&mut buf.as_slice(), MAGIC),
                Err(Error::InvalidBlockSize { size }) if size == bad
            ));
        }
    }

    #[test]
    fn short_header_is_truncated() {
        let mut buf = Vec::new();
        write_header(&mut buf, MAGIC, 8, 1).unwrap();
        buf.truncate(6);
        assert!(matches!(
            read_header(&mut buf.as_slice(), MAGIC),
            Err(Error::Truncated { .. })
        ));
        assert!(matches!(
            read_header(&mut [].as_slice(), MAGIC),
            Err(Error::Truncated { .. })
        ));
    }
}
