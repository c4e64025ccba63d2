//! Resumable enumeration checkpoints.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      4 bytes  "DWD1"
//! version    u32      1
//! n          u32
//! algorithm  u32      0 = exact keys, 1 = XXH3-128 fingerprints
//! level      u32      completed BFS levels
//! hist_len   u32      then hist_len × (degree u32, count u64)
//! visited    u64      then visited × (key | fingerprint u128)
//! frontier   u64      then frontier × key
//! ```
//!
//! A key is `n² + 1` `u32` label codes in ascending order.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::GraphError;
use crate::label::ClassKey;

const MAGIC: &[u8; 4] = b"DWD1";
const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerprintAlgorithm {
    /// Full keys are stored; no hashing.
    Exact = 0,
    /// XXH3-128 over the little-endian key codes.
    Xxh3_128 = 1,
}

impl FingerprintAlgorithm {
    fn from_id(id: u32) -> Option<Self> {
        match id {
            0 => Some(Self::Exact),
            1 => Some(Self::Xxh3_128),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VisitedSnapshot {
    Exact(Vec<ClassKey>),
    Fingerprints(Vec<u128>),
}

impl VisitedSnapshot {
    pub fn len(&self) -> usize {
        match self {
            VisitedSnapshot::Exact(v) => v.len(),
            VisitedSnapshot::Fingerprints(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    pub level: u32,
    pub histogram: BTreeMap<usize, u64>,
    pub visited: VisitedSnapshot,
    pub frontier: Vec<ClassKey>,
}

impl Checkpoint {
    pub fn algorithm(&self) -> FingerprintAlgorithm {
        match self.visited {
            VisitedSnapshot::Exact(_) => FingerprintAlgorithm::Exact,
            VisitedSnapshot::Fingerprints(_) => FingerprintAlgorithm::Xxh3_128,
        }
    }

    /// Writes to `path` through a temporary sibling file and a rename.
    pub fn write(&self, path: &Path) -> Result<(), GraphError> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            w.write_all(MAGIC)?;
            for v in [VERSION, self.n as u32, self.algorithm() as u32, self.level] {
                w.write_all(&v.to_le_bytes())?;
            }
            w.write_all(&(self.histogram.len() as u32).to_le_bytes())?;
            for (&d, &c) in &self.histogram {
                w.write_all(&(d as u32).to_le_bytes())?;
                w.write_all(&c.to_le_bytes())?;
            }
            w.write_all(&(self.visited.len() as u64).to_le_bytes())?;
            match &self.visited {
                VisitedSnapshot::Exact(keys) => {
                    for k in keys {
                        write_key(&mut w, k)?;
                    }
                }
                VisitedSnapshot::Fingerprints(fps) => {
                    for f in fps {
                        w.write_all(&f.to_le_bytes())?;
                    }
                }
            }
            w.write_all(&(self.frontier.len() as u64).to_le_bytes())?;
            for k in &self.frontier {
                write_key(&mut w, k)?;
            }
            w.flush()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Checkpoint, GraphError> {
        let mut r = BufReader::new(File::open(path)?);
        let corrupt = |what: &str| GraphError::CheckpointCorrupt(what.to_string());
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic).map_err(|_| corrupt("truncated header"))?;
        if &magic != MAGIC {
            return Err(corrupt("bad magic"));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(corrupt("unsupported version"));
        }
        let n = read_u32(&mut r)? as usize;
        if !(2..=crate::MAX_STRINGS).contains(&n) {
            return Err(corrupt("string count out of range"));
        }
        let algorithm =
            FingerprintAlgorithm::from_id(read_u32(&mut r)?).ok_or_else(|| corrupt("unknown fingerprint algorithm"))?;
        let level = read_u32(&mut r)?;
        let hist_len = read_u32(&mut r)?;
        let mut histogram = BTreeMap::new();
        for _ in 0..hist_len {
            let d = read_u32(&mut r)? as usize;
            let c = read_u64(&mut r)?;
            histogram.insert(d, c);
        }
        let key_len = n * n + 1;
        let visited_len = read_u64(&mut r)?;
        let visited = match algorithm {
            FingerprintAlgorithm::Exact => {
                let mut keys = Vec::new();
                for _ in 0..visited_len {
                    keys.push(read_key(&mut r, key_len)?);
                }
                VisitedSnapshot::Exact(keys)
            }
            FingerprintAlgorithm::Xxh3_128 => {
                let mut fps = Vec::new();
                for _ in 0..visited_len {
                    let mut b = [0u8; 16];
                    r.read_exact(&mut b).map_err(|_| corrupt("truncated visited section"))?;
                    fps.push(u128::from_le_bytes(b));
                }
                VisitedSnapshot::Fingerprints(fps)
            }
        };
        let frontier_len = read_u64(&mut r)?;
        let mut frontier = Vec::new();
        for _ in 0..frontier_len {
            frontier.push(read_key(&mut r, key_len)?);
        }
        let mut rest = Vec::new();
        r.read_to_end(&mut rest)?;
        if !rest.is_empty() {
            return Err(corrupt("trailing bytes"));
        }
        Ok(Checkpoint { n, level, histogram, visited, frontier })
    }
}

fn write_key(w: &mut impl Write, k: &ClassKey) -> std::io::Result<()> {
    for c in k.codes() {
        w.write_all(&c.to_le_bytes())?;
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32, GraphError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|_| GraphError::CheckpointCorrupt("truncated".into()))?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64, GraphError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|_| GraphError::CheckpointCorrupt("truncated".into()))?;
    Ok(u64::from_le_bytes(b))
}

fn read_key(r: &mut impl Read, len: usize) -> Result<ClassKey, GraphError> {
    let mut codes = Vec::with_capacity(len);
    for _ in 0..len {
        codes.push(read_u32(r)?);
    }
    if !codes.windows(2).all(|w| w[0] < w[1]) {
        return Err(GraphError::CheckpointCorrupt("key not strictly ascending".into()));
    }
    Ok(ClassKey::from_codes(codes.into_boxed_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::{chamber_labels, standard_word};

    fn sample(fingerprints: bool) -> Checkpoint {
        let k = chamber_labels(&standard_word(3)).key();
        let visited = if fingerprints {
            VisitedSnapshot::Fingerprints(vec![k.fingerprint()])
        } else {
            VisitedSnapshot::Exact(vec![k.clone()])
        };
        Checkpoint { n: 3, level: 1, histogram: [(3, 1)].into_iter().collect(), visited, frontier: vec![k] }
    }

    #[test]
    fn write_read_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for fp in [false, true] {
            let path = dir.path().join("ck.bin");
            let c = sample(fp);
            c.write(&path).unwrap();
            assert_eq!(Checkpoint::read(&path).unwrap(), c);
        }
    }

    #[test]
    fn corrupt_inputs_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.bin");
        sample(false).write(&path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(Checkpoint::read(&path), Err(GraphError::CheckpointCorrupt(_))));
        bytes[0] = b'D';
        bytes.truncate(bytes.len() - 3);
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(Checkpoint::read(&path), Err(GraphError::CheckpointCorrupt(_))));
    }
}
