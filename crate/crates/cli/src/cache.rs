//! Content-addressed on-disk store for reduced Groebner bases.
//!
//! The key is the SHA-256 of the characteristic, the variable names, the
//! monomial order and the sorted canonical generator text; the entry is the
//! basis, one canonical polynomial per line. Entries are validated on load and
//! written through a temporary file and a rename.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use frobex_core::{
    parse_polynomial_in, BasisStore, GroebnerBasis, MonomialOrder, Polynomial, Ring,
};
use log::warn;
use sha2::{Digest, Sha256};

pub struct DiskCache {
    dir: PathBuf,
    lock: RwLock<()>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl DiskCache {
    /// Opens (creating if needed) a cache directory. Returns `None`, with a
    /// warning, when the directory cannot be written.
    pub fn open(dir: &Path) -> Option<Arc<DiskCache>> {
        let probe = dir.join(format!(".probe-{}", std::process::id()));
        let usable = fs::create_dir_all(dir)
            .and_then(|_| fs::write(&probe, b""))
            .and_then(|_| fs::remove_file(&probe));
        match usable {
            Ok(()) => Some(Arc::new(DiskCache {
                dir: dir.to_path_buf(),
                lock: RwLock::new(()),
                hits: AtomicU64::new(0),
                misses: AtomicU64::new(0),
            })),
            Err(e) => {
                warn!(
                    "cache directory {} is not writable ({e}); continuing without a cache",
                    dir.display()
                );
                None
            }
        }
    }

    pub fn key(ring: &Ring, order: MonomialOrder, gens: &[Polynomial]) -> String {
        let mut text: Vec<String> = gens
            .iter()
            .map(|g| g.with_order(MonomialOrder::Grevlex).to_string())
            .collect();
        text.sort();
        let mut h = Sha256::new();
        h.update(format!(
            "p={}\nvars={}\norder={order}\n",
            ring.characteristic(),
            ring.vars().join(",")
        ));
        for t in &text {
            h.update(t.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    fn validate(
        ring: &Ring,
        order: MonomialOrder,
        gens: &[Polynomial],
        text: &str,
    ) -> Result<Vec<Polynomial>, String> {
        let elements = text
            .lines()
            .map(|l| parse_polynomial_in(ring, l, order).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        if elements
            .iter()
            .any(|f| f.is_zero() || !f.leading_coeff().unwrap().is_one())
        {
            return Err("basis elements must be nonzero and monic".into());
        }
        let gb = GroebnerBasis::from_reduced_elements(ring, order, elements.clone());
        if !gb.is_groebner().map_err(|e| e.to_string())? {
            return Err("an S-polynomial does not reduce to zero".into());
        }
        for g in gens {
            if !gb.contains(g).map_err(|e| e.to_string())? {
                return Err("a generator is not in the stored ideal".into());
            }
        }
        Ok(elements)
    }
}

impl BasisStore for DiskCache {
    fn load(
        &self,
        ring: &Ring,
        order: MonomialOrder,
        gens: &[Polynomial],
    ) -> Option<Vec<Polynomial>> {
        let key = Self::key(ring, order, gens);
        let path = self.entry_path(&key);
        let text = {
            let _guard = self.lock.read().unwrap();
            fs::read_to_string(&path).ok()
        };
        let Some(text) = text else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        match Self::validate(ring, order, gens, &text) {
            Ok(elements) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(elements)
            }
            Err(why) => {
                warn!("ignoring corrupt cache entry {} ({why})", path.display());
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn save(&self, ring: &Ring, order: MonomialOrder, gens: &[Polynomial], basis: &[Polynomial]) {
        let key = Self::key(ring, order, gens);
        let path = self.entry_path(&key);
        let mut body = String::new();
        for f in basis {
            body.push_str(&f.to_string());
            body.push('\n');
        }
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let _guard = self.lock.write().unwrap();
        let written = fs::File::create(&tmp)
            .and_then(|mut f| f.write_all(body.as_bytes()).and_then(|_| f.sync_all()))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = written {
            let _ = fs::remove_file(&tmp);
            warn!("could not write cache entry {}: {e}", path.display());
        }
    }
}
