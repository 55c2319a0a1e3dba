//! digraph6 records, list files and list digests.
//!
//! A record is `&`, the byte `n + 63`, then the `n × n` adjacency matrix in
//! row-major order, six bits per byte (most significant first, plus 63),
//! zero-padded at the end. Arcs run from a covering element to the element
//! it covers.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use md5::Md5;
use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::lattice::{bit, Lattice, Mask, MAX_ELEMENTS};

/// A decoded record: `rows[i]` holds the out-neighbours of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub rows: Vec<Mask>,
}

impl Digraph {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &r) in self.rows.iter().enumerate() {
            for j in crate::lattice::bits(r) {
                out.push((i, j));
            }
        }
        out
    }

    /// Interprets the arcs as cover pairs of a bounded poset.
    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_covers(self.size(), &self.arcs())
    }
}

/// Record for raw out-neighbour rows.
pub fn encode_rows(rows: &[Mask]) -> String {
    let n = rows.len();
    assert!(n <= MAX_ELEMENTS, "digraph6 records hold at most {MAX_ELEMENTS} vertices");
    let mut out = String::with_capacity(2 + (n * n).div_ceil(6));
    out.push('&');
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut used = 0;
    for &row in rows {
        for j in 0..n {
            acc = (acc << 1) | u8::from(row & bit(j) != 0);
            used += 1;
            if used == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(((acc << (6 - used)) + 63) as char);
    }
    out
}

/// Record for a canonical form.
pub fn encode(form: &CanonicalForm) -> String {
    encode_rows(form.rows())
}

/// Record for a lattice in its own numbering.
pub fn encode_lattice(l: &Lattice) -> String {
    let rows: Vec<Mask> = (0..l.size()).map(|i| l.lower_cover(i)).collect();
    encode_rows(&rows)
}

/// Parses a record into its raw digraph.
pub fn decode(record: &str) -> Result<Digraph> {
    let bad = |reason| Error::Digraph6 {
        record: record.to_string(),
        reason,
    };
    let bytes = record.as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(bad("missing '&' header"));
    }
    let Some(&size) = bytes.get(1) else {
        return Err(bad("missing size byte"));
    };
    if !(63..=63 + MAX_ELEMENTS as u8).contains(&size) {
        return Err(bad("size byte out of range"));
    }
    let n = (size - 63) as usize;
    let body = &bytes[2..];
    // A lone vertex is also accepted without its all-zero group.
    if body.len() != (n * n).div_ceil(6) && !(n == 1 && body.is_empty()) {
        return Err(bad("wrong body length"));
    }
    let mut rows = vec![0 as Mask; n];
    for (k, &c) in body.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(bad("byte outside the printable range"));
        }
        let v = c - 63;
        for b in 0..6 {
            let pos = 6 * k + b;
            if v & (0b10_0000 >> b) == 0 {
                continue;
            }
            if pos >= n * n {
                return Err(bad("non-zero padding"));
            }
            rows[pos / n] |= bit(pos % n);
        }
    }
    Ok(Digraph { rows })
}

/// Decodes a record and re-derives its canonical form.
pub fn decode_canonical(record: &str) -> Result<CanonicalForm> {
    Ok(canonical_form(&decode(record)?.to_lattice()?))
}

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

/// Writes records sorted, one per line; `.gz` paths are compressed.
pub fn write_list<P: AsRef<Path>>(path: P, records: &[String]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path)?;
    if is_gz(path) {
        let mut w = GzEncoder::new(BufWriter::new(file), Compression::default());
        write_sorted(&mut w, records)?;
        w.finish()?.flush()?;
    } else {
        let mut w = BufWriter::new(file);
        write_sorted(&mut w, records)?;
        w.flush()?;
    }
    Ok(())
}

/// Writes records sorted, one per line.
pub fn write_sorted<W: Write>(w: &mut W, records: &[String]) -> io::Result<()> {
    let mut sorted: Vec<&String> = records.iter().collect();
    sorted.sort_unstable();
    for r in sorted {
        w.write_all(r.as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads non-empty lines of a list file. In strict mode a repeated line is
/// an error.
pub fn read_list<P: AsRef<Path>>(path: P, strict: bool) -> Result<Vec<String>> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let reader: Box<dyn Read> = if is_gz(path) {
        Box::new(MultiGzDecoder::new(file))
    } else {
        Box::new(file)
    };
    read_lines(BufReader::new(reader), strict)
}

pub fn read_lines<R: BufRead>(reader: R, strict: bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if strict && !seen.insert(line.to_string()) {
            return Err(Error::DuplicateRecord(line.to_string()));
        }
        out.push(line.to_string());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DigestAlgorithm {
    #[default]
    Sha256,
    Md5,
}

impl DigestAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            DigestAlgorithm::Sha256 => "sha256",
            DigestAlgorithm::Md5 => "md5",
        }
    }
}

/// Hex digest of the sorted records, each followed by a newline.
pub fn digest_list(records: &[String], algorithm: DigestAlgorithm) -> String {
    let mut sorted: Vec<&String> = records.iter().collect();
    sorted.sort_unstable();
    fn run<D: Digest>(sorted: &[&String]) -> String {
        let mut h = D::new();
        for r in sorted {
            h.update(r.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
    match algorithm {
        DigestAlgorithm::Sha256 => run::<Sha256>(&sorted),
        DigestAlgorithm::Md5 => run::<Md5>(&sorted),
    }
}
