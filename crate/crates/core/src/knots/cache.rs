//! Content-addressed on-disk cache of colored Jones polynomials.
//!
//! Entry path: `<root>/<sha256(header)>.cjp` where the header line is
//! `"<canonical knot> <n> <normalized>"`. The payload after the header is the
//! canonical [`LaurentPoly`](crate::laurent::LaurentPoly) serialization.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::laurent::IntLaurent;

#[derive(Debug, Clone)]
pub struct JonesCache {
    root: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub knot: String,
    pub n: u32,
    pub normalized: bool,
}

impl CacheKey {
    pub fn header(&self) -> String {
        format!("{} {} {}", self.knot, self.n, self.normalized)
    }
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl JonesCache {
    pub fn new(root: impl Into<PathBuf>) -> JonesCache {
        JonesCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        let digest = Sha256::digest(key.header().as_bytes());
        self.root.join(format!("{}.cjp", hex::encode(digest)))
    }

    /// `Ok(None)` for an absent or unreadable-as-cache entry.
    pub fn get(&self, key: &CacheKey) -> io::Result<Option<IntLaurent>> {
        let text = match fs::read_to_string(self.path_for(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) if e.kind() == io::ErrorKind::InvalidData => return Ok(None),
            Err(e) => return Err(e),
        };
        let Some((header, body)) = text.split_once('\n') else { return Ok(None) };
        if header != key.header() {
            return Ok(None);
        }
        Ok(IntLaurent::parse_canonical(body).ok())
    }

    /// Writes to a temporary file in the cache root, then renames it into place.
    pub fn put(&self, key: &CacheKey, value: &IntLaurent) -> io::Result<()> {
        fs::create_dir_all(&self.root)?;
        let dest = self.path_for(key);
        let tmp = self.root.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(key.header().as_bytes())?;
        f.write_all(b"\n")?;
        f.write_all(value.to_canonical_string().as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &dest).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// All entry headers currently stored, sorted.
    pub fn list(&self) -> io::Result<Vec<String>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.root) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e),
        };
        for ent in rd {
            let p = ent?.path();
            if p.extension().is_some_and(|x| x == "cjp") {
                if let Some(h) = fs::read_to_string(&p).ok().and_then(|t| t.lines().next().map(str::to_string)) {
                    out.push(h);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let mut n = 0;
        let rd = match fs::read_dir(&self.root) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        for ent in rd {
            let p = ent?.path();
            if p.extension().is_some_and(|x| x == "cjp") {
                fs::remove_file(&p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
