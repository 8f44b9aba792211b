//! Binary sidecar for tower tables, keyed by (p, h).
//!
//! Layout (all little-endian u32): magic `HSGT`, format version, p, h,
//! polynomial length, polynomial coefficients, then the antilog table of
//! q^6 - 1 packed additive representations. Log and Zech tables are rebuilt
//! from the antilog table on load.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::{FieldTower, PrimePower};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"HSGT";
const VERSION: u32 = 1;

pub fn sidecar_name(pp: PrimePower) -> String {
    format!("gftower_p{}_h{}.bin", pp.p(), pp.h())
}

pub fn save_tables(tower: &FieldTower, path: &Path) -> Result<()> {
    let header = tower.header();
    let (exp, _) = tower.tables();
    let mut buf = Vec::with_capacity(4 * (exp.len() + 16));
    buf.extend_from_slice(MAGIC);
    for v in [VERSION, header.p, header.h, header.defining_polynomial.len() as u32] {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    for &c in &header.defining_polynomial {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    for &e in exp {
        buf.extend_from_slice(&e.to_le_bytes());
    }
    fs::File::create(path)?.write_all(&buf)?;
    Ok(())
}

pub fn load_tables(path: &Path) -> Result<FieldTower> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 20 || &bytes[..4] != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let words: Vec<u32> = bytes[4..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    if words[0] != VERSION {
        return Err(Error::Cache(format!("unsupported version {}", words[0])));
    }
    let pp = PrimePower::new(words[1], words[2])?;
    let len = words[3] as usize;
    let modulus = words
        .get(4..4 + len)
        .ok_or_else(|| Error::Cache("truncated polynomial".into()))?
        .to_vec();
    let tower = FieldTower::from_modulus(pp, modulus);
    let stored = &words[4 + len..];
    if stored != tower.tables().0 {
        return Err(Error::Cache("antilog table does not match polynomial".into()));
    }
    Ok(tower)
}

/// Load the tower from `dir` if a matching sidecar exists, otherwise build
/// it and write the sidecar.
pub fn build_tower_cached(pp: PrimePower, dir: &Path) -> Result<FieldTower> {
    let path: PathBuf = dir.join(sidecar_name(pp));
    if path.exists() {
        if let Ok(t) = load_tables(&path) {
            if t.prime_power() == pp {
                return Ok(t);
            }
        }
    }
    let tower = FieldTower::build(pp)?;
    save_tables(&tower, &path)?;
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let pp = PrimePower::from_q(3).unwrap();
        let built = build_tower_cached(pp, dir.path()).unwrap();
        assert!(dir.path().join("gftower_p3_h1.bin").exists());
        let loaded = build_tower_cached(pp, dir.path()).unwrap();
        assert_eq!(built.header(), loaded.header());
        assert_eq!(built.tables(), loaded.tables());
    }

    #[test]
    fn corrupted_sidecar_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.bin");
        std::fs::write(&path, b"nope, not a table").unwrap();
        assert!(matches!(load_tables(&path), Err(Error::Cache(_))));
    }
}
