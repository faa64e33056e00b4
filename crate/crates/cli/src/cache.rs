//! On-disk cache of sum tables keyed by polynomial hash, kind and prime.
//!
//! Layout: `<root>/<hash>/plain/<p>.exps` with a hex SHA-256 sidecar
//! `<p>.exps.sha256`. Writers hold `<p>.exps.lock` and publish by rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use expsum::charsums::{decode_table, encode_table, SumTable};
use expsum::field_poly::PolyExact;
use expsum::moments::{DirectTables, TableSource};
use sha2::{Digest, Sha256};

const KIND: &str = "plain";
const LOCK_WAIT: Duration = Duration::from_secs(30);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub hash: String,
    pub kind: String,
    pub p: u64,
    pub path: PathBuf,
    pub bytes: u64,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    root: PathBuf,
}

fn hex_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("exps.sha256")
}

fn lock_path(path: &Path) -> PathBuf {
    path.with_extension("exps.lock")
}

/// Outcome of reading one entry.
#[derive(Debug)]
pub enum Lookup {
    Hit(SumTable),
    Missing,
    Corrupt(String),
}

impl TableCache {
    pub fn new(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).with_context(|| format!("creating cache dir {}", root.display()))?;
        Ok(Self { root })
    }

    pub fn path_for(&self, f: &PolyExact, p: u64) -> PathBuf {
        self.root.join(f.id().hex()).join(KIND).join(format!("{p}.exps"))
    }

    /// Reads and verifies an entry without side effects.
    pub fn read(path: &Path, expected: Option<(&PolyExact, u64)>) -> Lookup {
        let Ok(bytes) = fs::read(path) else { return Lookup::Missing };
        let Ok(sum) = fs::read_to_string(sidecar(path)) else {
            return Lookup::Corrupt("missing checksum".into());
        };
        if sum.trim() != hex_digest(&bytes) {
            return Lookup::Corrupt("checksum mismatch".into());
        }
        match decode_table(&bytes) {
            Err(e) => Lookup::Corrupt(e.to_string()),
            Ok(t) => match expected {
                Some((f, p)) if t.p != p || t.poly_id != f.id() => Lookup::Corrupt("key mismatch".into()),
                _ => Lookup::Hit(t),
            },
        }
    }

    pub fn evict_path(path: &Path) {
        let _ = fs::remove_file(path);
        let _ = fs::remove_file(sidecar(path));
    }

    fn write(&self, path: &Path, t: &SumTable) -> Result<()> {
        let dir = path.parent().expect("entry has a parent");
        fs::create_dir_all(dir)?;
        let bytes = encode_table(t);
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&bytes)?;
        tmp.as_file().sync_all()?;
        let mut sum = tempfile::NamedTempFile::new_in(dir)?;
        writeln!(sum, "{}", hex_digest(&bytes))?;
        sum.persist(sidecar(path)).map_err(|e| e.error)?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the cached table, computing and storing it when missing or
    /// corrupt.
    pub fn get_or_compute(&self, f: &PolyExact, p: u64) -> Result<SumTable> {
        let path = self.path_for(f, p);
        match Self::read(&path, Some((f, p))) {
            Lookup::Hit(t) => return Ok(t),
            Lookup::Corrupt(why) => {
                eprintln!("warning: cache entry {} is corrupt ({why}); recomputing", path.display());
                Self::evict_path(&path);
            }
            Lookup::Missing => {}
        }
        let table = DirectTables.table(f, p)?;
        fs::create_dir_all(path.parent().unwrap())?;
        let lock = lock_path(&path);
        let start = Instant::now();
        loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(_) => break,
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if let Lookup::Hit(t) = Self::read(&path, Some((f, p))) {
                        return Ok(t);
                    }
                    if start.elapsed() > LOCK_WAIT {
                        eprintln!("warning: {} is held; not caching this entry", lock.display());
                        return Ok(table);
                    }
                    std::thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let written = self.write(&path, &table);
        let _ = fs::remove_file(&lock);
        written?;
        Ok(table)
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        for hash_dir in read_dir_sorted(&self.root)? {
            let hash = file_name(&hash_dir);
            for kind_dir in read_dir_sorted(&hash_dir)? {
                let kind = file_name(&kind_dir);
                for path in read_dir_sorted(&kind_dir)? {
                    if path.extension().is_some_and(|e| e == "exps") {
                        let Some(p) = path.file_stem().and_then(|s| s.to_str()).and_then(|s| s.parse().ok()) else {
                            continue;
                        };
                        let bytes = fs::metadata(&path)?.len();
                        out.push(CacheEntry { hash: hash.clone(), kind: kind.clone(), p, path, bytes });
                    }
                }
            }
        }
        out.sort_by(|a, b| (&a.hash, &a.kind, a.p).cmp(&(&b.hash, &b.kind, b.p)));
        Ok(out)
    }

    /// Removes entries whose hash starts with `prefix` (all when `None`).
    pub fn evict(&self, prefix: Option<&str>) -> Result<usize> {
        let mut n = 0;
        for e in self.list()? {
            if prefix.is_none_or(|pre| e.hash.starts_with(pre)) {
                Self::evict_path(&e.path);
                n += 1;
            }
        }
        Ok(n)
    }

    /// Re-checks every entry, evicting the corrupt ones. Returns the evicted entries.
    pub fn verify(&self) -> Result<Vec<(CacheEntry, String)>> {
        let mut bad = Vec::new();
        for e in self.list()? {
            if let Lookup::Corrupt(why) = Self::read(&e.path, None) {
                Self::evict_path(&e.path);
                bad.push((e, why));
            }
        }
        Ok(bad)
    }
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut v: Vec<PathBuf> = fs::read_dir(dir)?.map(|e| e.map(|e| e.path())).collect::<std::io::Result<_>>()?;
    v.sort();
    Ok(v)
}

/// Table source backed by an optional cache.
pub struct CachedTables<'a> {
    pub cache: Option<&'a TableCache>,
}

impl TableSource for CachedTables<'_> {
    fn table(&self, f: &PolyExact, p: u64) -> expsum::Result<SumTable> {
        match self.cache {
            None => DirectTables.table(f, p),
            Some(c) => c.get_or_compute(f, p).or_else(|e| match e.downcast::<expsum::Error>() {
                Ok(err) => Err(err),
                Err(io) => {
                    eprintln!("warning: cache unavailable ({io:#}); computing directly");
                    DirectTables.table(f, p)
                }
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        assert!(cache.list().unwrap().is_empty());
        let t = cache.get_or_compute(&f, 101).unwrap();
        let path = cache.path_for(&f, 101);
        assert!(matches!(TableCache::read(&path, Some((&f, 101))), Lookup::Hit(ref u) if *u == t));
        let mut bytes = fs::read(&path).unwrap();
        bytes[60] ^= 0xff;
        fs::write(&path, bytes).unwrap();
        assert!(matches!(TableCache::read(&path, Some((&f, 101))), Lookup::Corrupt(_)));
        assert_eq!(cache.get_or_compute(&f, 101).unwrap(), t);
        assert_eq!(cache.list().unwrap().len(), 1);
        assert!(cache.verify().unwrap().is_empty());
        assert_eq!(cache.evict(Some("ffff")).unwrap(), 0);
        assert_eq!(cache.evict(Some(&f.id().hex()[..8])).unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }
}
