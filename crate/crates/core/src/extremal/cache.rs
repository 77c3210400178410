//! Directory-backed store of extremal records.
//!
//! Each record is one file named by the SHA-256 of its key. The file is the
//! text hypergraph format of the witness preceded by a `# {json}` header
//! line. Records are re-verified whenever they are read or written.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::canon::{canonical_key, CanonicalKey};
use super::{ExtremalRecord, Mode, SearchStats};
use crate::error::{Error, Result};
use crate::hypercore::text::{parse_document, to_text_with_comments};
use crate::hypercore::UniformHypergraph;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "HYPERTURAN_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub n: usize,
    pub pattern: CanonicalKey,
    pub forbidden: CanonicalKey,
    pub mode: Mode,
}

impl CacheKey {
    pub fn new(n: usize, t: &UniformHypergraph, f: &UniformHypergraph, mode: Mode) -> Result<CacheKey> {
        Ok(CacheKey {
            n,
            pattern: canonical_key(t)?,
            forbidden: canonical_key(f)?,
            mode,
        })
    }

    pub fn of(record: &ExtremalRecord) -> Result<CacheKey> {
        Self::new(record.n, &record.pattern, &record.forbidden, record.mode)
    }

    pub fn file_name(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        format!("{}.hg", hex::encode(&digest[..16]))
    }
}

impl std::fmt::Display for CacheKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "n={};T={};F={};mode={}",
            self.n, self.pattern, self.forbidden, self.mode
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    key: String,
    value: u64,
    mode: Mode,
    nodes: u64,
    elapsed_ns: u64,
    timed_out: bool,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// The directory named by `HYPERTURAN_CACHE`, if set.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// The stored record for `(n, t, f, mode)`, re-verified against `t` and
    /// `f`. A missing file is `Ok(None)`; anything unreadable or failing
    /// verification is an integrity error.
    pub fn get(
        &self,
        n: usize,
        t: &UniformHypergraph,
        f: &UniformHypergraph,
        mode: Mode,
    ) -> Result<Option<ExtremalRecord>> {
        let key = CacheKey::new(n, t, f, mode)?;
        let path = self.path_for(&key);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let record = decode(&text, &key, t, f).map_err(|e| {
            Error::Integrity(format!("cache entry {}: {e}", path.display()))
        })?;
        Ok(Some(record))
    }

    /// Stores `record` after verifying it. An existing entry for the same
    /// key must agree on the value.
    pub fn put(&self, record: &ExtremalRecord) -> Result<PathBuf> {
        record
            .verify()
            .map_err(|e| Error::Integrity(format!("refusing to cache an invalid record: {e}")))?;
        let key = CacheKey::of(record)?;
        if let Some(old) = self.get(record.n, &record.pattern, &record.forbidden, record.mode)? {
            if old.value != record.value {
                return Err(Error::Integrity(format!(
                    "cache already holds value {} for {key}, new value is {}",
                    old.value, record.value
                )));
            }
        }
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&key);
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        fs::write(&tmp, encode(record, &key)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

fn encode(record: &ExtremalRecord, key: &CacheKey) -> Result<String> {
    let header = Header {
        key: key.to_string(),
        value: record.value,
        mode: record.mode,
        nodes: record.stats.nodes,
        elapsed_ns: record.stats.elapsed.as_nanos().min(u64::MAX as u128) as u64,
        timed_out: record.stats.timed_out,
    };
    let json = serde_json::to_string(&header).map_err(|e| Error::Io(e.to_string()))?;
    Ok(to_text_with_comments(&record.witness, &[json]))
}

fn decode(
    text: &str,
    key: &CacheKey,
    t: &UniformHypergraph,
    f: &UniformHypergraph,
) -> Result<ExtremalRecord> {
    let doc = parse_document(text)?;
    let json = doc
        .comments
        .first()
        .ok_or_else(|| Error::Integrity("missing header".into()))?;
    let header: Header =
        serde_json::from_str(json).map_err(|e| Error::Integrity(format!("bad header: {e}")))?;
    if header.key != key.to_string() {
        return Err(Error::Integrity(format!(
            "header key `{}` does not match `{key}`",
            header.key
        )));
    }
    if header.mode != key.mode {
        return Err(Error::Integrity("header mode does not match key".into()));
    }
    let record = ExtremalRecord {
        n: key.n,
        pattern: t.clone(),
        forbidden: f.clone(),
        value: header.value,
        witness: doc.hypergraph,
        mode: header.mode,
        stats: SearchStats {
            nodes: header.nodes,
            elapsed: Duration::from_nanos(header.elapsed_ns),
            timed_out: header.timed_out,
        },
    };
    record.verify()?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{exact_ex, ExactOptions};
    use crate::hypercore::complete_partite;

    fn sample() -> ExtremalRecord {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let diamond = complete_partite(2, &[1, 1, 2]).unwrap().0;
        exact_ex(5, &k3, &diamond, &ExactOptions::default()).unwrap()
    }

    #[test]
    fn roundtrip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let rec = sample();
        assert!(cache
            .get(5, &rec.pattern, &rec.forbidden, Mode::Exact)
            .unwrap()
            .is_none());
        let path = cache.put(&rec).unwrap();
        let back = cache
            .get(5, &rec.pattern, &rec.forbidden, Mode::Exact)
            .unwrap()
            .unwrap();
        assert_eq!(back.value, rec.value);
        assert_eq!(back.witness, rec.witness);
        assert_eq!(back.stats, SearchStats {
            elapsed: Duration::from_nanos(rec.stats.elapsed.as_nanos() as u64),
            ..rec.stats
        });

        let mut wrong = rec.clone();
        wrong.value += 1;
        assert!(cache.put(&wrong).is_err());

        let text = fs::read_to_string(&path).unwrap();
        let tampered = text.replace("\"value\":2", "\"value\":3");
        fs::write(&path, tampered).unwrap();
        assert!(matches!(
            cache.get(5, &rec.pattern, &rec.forbidden, Mode::Exact),
            Err(Error::Integrity(_))
        ));
    }
}
