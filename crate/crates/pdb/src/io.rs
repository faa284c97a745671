//! Binary serialization for PDB artifacts.
//!
//! All flavors share the "APDB" magic and a little-endian u16 version
//! that doubles as the flavor tag: 1 = plain, 2 = min-compressed,
//! 3 = delta. A pattern header is kind byte (0 corners, 1 edges),
//! tracked count, tracked indices. Plain files continue with max_value,
//! entry count (u64 LE) and raw entry bytes; compressed files insert the
//! group size (u32 LE) before the entry count; delta files carry the
//! large and base pattern headers followed by max delta, count, and the
//! delta bytes.

use crate::{CompressedPdb, DeltaPdb, PatternDatabase, PdbError};
use puzzle_core::pattern::{Pattern, PatternKind};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"APDB";
const VERSION_PLAIN: u16 = 1;
const VERSION_COMPRESSED: u16 = 2;
const VERSION_DELTA: u16 = 3;

fn write_pattern(w: &mut impl Write, p: &Pattern) -> std::io::Result<()> {
    let kind = match p.kind() {
        PatternKind::Corners => 0u8,
        PatternKind::Edges => 1u8,
    };
    w.write_all(&[kind, p.tracked().len() as u8])?;
    w.write_all(p.tracked())
}

fn read_pattern(r: &mut impl Read) -> Result<Pattern, PdbError> {
    let mut head = [0u8; 2];
    r.read_exact(&mut head)?;
    let kind = match head[0] {
        0 => PatternKind::Corners,
        1 => PatternKind::Edges,
        k => return Err(PdbError::Format(format!("unknown pattern kind byte {k}"))),
    };
    let mut tracked = vec![0u8; head[1] as usize];
    r.read_exact(&mut tracked)?;
    Pattern::new(kind, tracked).map_err(|e| PdbError::Format(e.to_string()))
}

fn write_header(w: &mut impl Write, version: u16) -> std::io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&version.to_le_bytes())
}

fn read_header(r: &mut impl Read) -> Result<u16, PdbError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(PdbError::Format("bad magic, not a PDB file".into()));
    }
    let mut v = [0u8; 2];
    r.read_exact(&mut v)?;
    Ok(u16::from_le_bytes(v))
}

fn read_entries(r: &mut impl Read) -> Result<(u8, Vec<u8>), PdbError> {
    let mut max = [0u8; 1];
    r.read_exact(&mut max)?;
    let mut count = [0u8; 8];
    r.read_exact(&mut count)?;
    let count = u64::from_le_bytes(count);
    let mut entries = vec![0u8; count as usize];
    r.read_exact(&mut entries)?;
    Ok((max[0], entries))
}

pub fn write_pdb(db: &PatternDatabase, path: &Path) -> Result<(), PdbError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, VERSION_PLAIN)?;
    write_pattern(&mut w, db.pattern())?;
    w.write_all(&[db.max_value()])?;
    w.write_all(&(db.entries().len() as u64).to_le_bytes())?;
    w.write_all(db.entries())?;
    w.flush()?;
    Ok(())
}

pub fn read_pdb(path: &Path) -> Result<PatternDatabase, PdbError> {
    let mut r = BufReader::new(File::open(path)?);
    let version = read_header(&mut r)?;
    if version != VERSION_PLAIN {
        return Err(PdbError::Format(format!("expected plain PDB, found version {version}")));
    }
    let pattern = read_pattern(&mut r)?;
    let (max_value, entries) = read_entries(&mut r)?;
    if entries.len() as u64 != pattern.state_count() {
        return Err(PdbError::Format(format!(
            "entry count {} does not match pattern state count {}",
            entries.len(),
            pattern.state_count()
        )));
    }
    Ok(PatternDatabase::from_parts(pattern, entries, max_value))
}

pub fn write_compressed(c: &CompressedPdb, path: &Path) -> Result<(), PdbError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, VERSION_COMPRESSED)?;
    write_pattern(&mut w, c.pattern())?;
    w.write_all(&[c.max_value()])?;
    w.write_all(&c.group_size().to_le_bytes())?;
    w.write_all(&(c.entries().len() as u64).to_le_bytes())?;
    w.write_all(c.entries())?;
    w.flush()?;
    Ok(())
}

pub fn read_compressed(path: &Path) -> Result<CompressedPdb, PdbError> {
    let mut r = BufReader::new(File::open(path)?);
    let version = read_header(&mut r)?;
    if version != VERSION_COMPRESSED {
        return Err(PdbError::Format(format!(
            "expected compressed PDB, found version {version}"
        )));
    }
    let pattern = read_pattern(&mut r)?;
    let mut max = [0u8; 1];
    r.read_exact(&mut max)?;
    let mut g = [0u8; 4];
    r.read_exact(&mut g)?;
    let group_size = u32::from_le_bytes(g);
    if group_size == 0 {
        return Err(PdbError::BadGroupSize);
    }
    let mut count = [0u8; 8];
    r.read_exact(&mut count)?;
    let count = u64::from_le_bytes(count);
    let mut entries = vec![0u8; count as usize];
    r.read_exact(&mut entries)?;
    let expected = pattern.state_count().div_ceil(group_size as u64);
    if entries.len() as u64 != expected {
        return Err(PdbError::Format(format!(
            "compressed entry count {} does not match ceil(N/g) = {expected}",
            entries.len()
        )));
    }
    Ok(CompressedPdb::from_parts(pattern, group_size, entries, max[0]))
}

pub fn write_delta(d: &DeltaPdb, path: &Path) -> Result<(), PdbError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, VERSION_DELTA)?;
    write_pattern(&mut w, d.large_pattern())?;
    write_pattern(&mut w, d.base_pattern())?;
    w.write_all(&[d.max_value()])?;
    w.write_all(&(d.delta_entries().len() as u64).to_le_bytes())?;
    w.write_all(d.delta_entries())?;
    w.flush()?;
    Ok(())
}

pub fn read_delta(path: &Path) -> Result<DeltaPdb, PdbError> {
    let mut r = BufReader::new(File::open(path)?);
    let version = read_header(&mut r)?;
    if version != VERSION_DELTA {
        return Err(PdbError::Format(format!("expected delta PDB, found version {version}")));
    }
    let large = read_pattern(&mut r)?;
    let base = read_pattern(&mut r)?;
    if !large.contains(&base) {
        return Err(PdbError::NotSubset);
    }
    let (max_value, delta) = read_entries(&mut r)?;
    if delta.len() as u64 != large.state_count() {
        return Err(PdbError::Format(format!(
            "delta entry count {} does not match large pattern state count {}",
            delta.len(),
            large.state_count()
        )));
    }
    Ok(DeltaPdb::from_parts(large, base, delta, max_value))
}

/// Flavor sniffing for generic loaders.
pub enum PdbFile {
    Plain(PatternDatabase),
    Compressed(CompressedPdb),
    Delta(DeltaPdb),
}

pub fn read_any(path: &Path) -> Result<PdbFile, PdbError> {
    let mut r = BufReader::new(File::open(path)?);
    let version = read_header(&mut r)?;
    drop(r);
    match version {
        VERSION_PLAIN => Ok(PdbFile::Plain(read_pdb(path)?)),
        VERSION_COMPRESSED => Ok(PdbFile::Compressed(read_compressed(path)?)),
        VERSION_DELTA => Ok(PdbFile::Delta(read_delta(path)?)),
        v => Err(PdbError::Format(format!("unknown PDB file version {v}"))),
    }
}
