//! Bit-packed prefix files: an 8-byte little-endian bit count followed by
//! the bits, eight per byte, least significant bit first.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::BitStream;
use crate::error::{Error, Result};
use crate::word::Word;

pub const PREFIX_HEADER_BYTES: usize = 8;

fn io_err(e: std::io::Error) -> Error {
    Error::ResourceLimit(format!("i/o: {e}"))
}

fn word_bytes(w: &Word, out: &mut Vec<u8>) {
    let nbytes = w.len().div_ceil(8);
    out.extend(w.limbs().iter().flat_map(|l| l.to_le_bytes()).take(nbytes));
}

/// Writes `w` with its header.
pub fn write_prefix(w: &Word, mut out: impl Write) -> Result<()> {
    out.write_all(&(w.len() as u64).to_le_bytes()).map_err(io_err)?;
    let mut bytes = Vec::new();
    word_bytes(w, &mut bytes);
    out.write_all(&bytes).map_err(io_err)
}

pub fn read_prefix(mut input: impl Read) -> Result<Word> {
    let mut header = [0u8; PREFIX_HEADER_BYTES];
    input.read_exact(&mut header).map_err(io_err)?;
    let len = u64::from_le_bytes(header) as usize;
    let mut bytes = Vec::with_capacity(len.div_ceil(8));
    input.read_to_end(&mut bytes).map_err(io_err)?;
    if bytes.len() != len.div_ceil(8) {
        return Err(Error::InvalidParameter(format!(
            "prefix header announces {len} bits but {} bytes follow",
            bytes.len()
        )));
    }
    let limbs = bytes
        .chunks(8)
        .map(|c| {
            let mut b = [0u8; 8];
            b[..c.len()].copy_from_slice(c);
            u64::from_le_bytes(b)
        })
        .collect();
    Ok(Word::from_limbs(limbs, len))
}

pub fn read_prefix_file(path: &Path) -> Result<Word> {
    read_prefix(BufReader::new(File::open(path).map_err(io_err)?))
}

/// Streams `y|_n` to `path` in fixed-size chunks.
pub fn write_prefix_file(path: &Path, stream: &mut BitStream, n: u64) -> Result<()> {
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    out.write_all(&n.to_le_bytes()).map_err(io_err)?;
    let mut bytes = Vec::new();
    stream.for_each_chunk(n as u128, 1 << 23, |chunk| {
        bytes.clear();
        word_bytes(chunk, &mut bytes);
        out.write_all(&bytes).map_err(io_err)
    })?;
    out.flush().map_err(io_err)
}
