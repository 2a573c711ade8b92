//! Memoized correlators with an optional on-disk cache.

use crate::engine::{Convention, Engine};
use crate::error::TrError;
use p5_algebra::par::Exec;
use p5_algebra::PoleBasisTensor;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "P5_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".p5cache";

/// Flag value, else `$P5_CACHE_DIR`, else `./.p5cache`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

/// A correlator W_n^(g); the two unstable ones are kept in closed form.
#[derive(Clone, Debug)]
pub enum Correlator {
    /// W₁⁽⁰⁾ = ω(z) = s(z²+1)/(4z²)
    Omega,
    /// W₂⁽⁰⁾ = 1/(z₁−z₂)²
    Bergman,
    Stable(Arc<PoleBasisTensor>),
}

impl Correlator {
    pub fn tensor(&self) -> Option<&PoleBasisTensor> {
        match self {
            Correlator::Stable(t) => Some(t),
            _ => None,
        }
    }
}

pub fn is_stable(g: usize, n: usize) -> bool {
    n >= 1 && 2 * g + n > 2
}

pub struct Store {
    engine: Engine,
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<(usize, usize), Arc<OnceLock<Arc<PoleBasisTensor>>>>>,
}

impl Store {
    pub fn new(exec: Exec, cache_dir: Option<PathBuf>) -> Self {
        Self::with_convention(Convention::default(), exec, cache_dir)
    }

    /// Non-default conventions cache under a subdirectory named by
    /// [`Convention::slug`].
    pub fn with_convention(convention: Convention, exec: Exec, cache_dir: Option<PathBuf>) -> Self {
        let cache_dir = match convention {
            Convention::PrintedRatio => cache_dir,
            c => cache_dir.map(|d| d.join(c.slug())),
        };
        Store { engine: Engine::new(convention, exec), cache_dir, memo: Mutex::default() }
    }

    pub fn convention(&self) -> Convention {
        self.engine.convention()
    }

    /// In-memory only, default execution.
    pub fn in_memory() -> Self {
        Self::new(Exec::default(), None)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn correlator(&self, g: usize, n: usize) -> Result<Correlator, TrError> {
        match (g, n) {
            (0, 1) => Ok(Correlator::Omega),
            (0, 2) => Ok(Correlator::Bergman),
            _ if is_stable(g, n) => Ok(Correlator::Stable(self.tensor(g, n)?)),
            _ => Err(TrError::Unstable { g, n }),
        }
    }

    /// Stable correlator as a pole-basis tensor in z₁..z_n.
    pub fn tensor(&self, g: usize, n: usize) -> Result<Arc<PoleBasisTensor>, TrError> {
        if !is_stable(g, n) {
            return Err(TrError::Unstable { g, n });
        }
        let cell = self.memo.lock().unwrap().entry((g, n)).or_default().clone();
        if let Some(t) = cell.get() {
            return Ok(t.clone());
        }
        for (h, k) in dependencies(g, n) {
            self.tensor(h, k)?;
        }
        let mut err = None;
        let t = cell.get_or_init(|| match self.load_or_compute(g, n) {
            Ok(t) => Arc::new(t),
            Err(e) => {
                err = Some(e);
                Arc::new(PoleBasisTensor::zero(n, 0))
            }
        });
        if let Some(e) = err {
            self.memo.lock().unwrap().remove(&(g, n));
            return Err(e);
        }
        Ok(t.clone())
    }

    fn memoized(&self, g: usize, n: usize) -> Arc<PoleBasisTensor> {
        let cell = self.memo.lock().unwrap().get(&(g, n)).cloned();
        cell.and_then(|c| c.get().cloned())
            .unwrap_or_else(|| panic!("W_{n}^({g}) requested before it was computed"))
    }

    fn load_or_compute(&self, g: usize, n: usize) -> Result<PoleBasisTensor, TrError> {
        if let Some(t) = self.load(g, n) {
            return Ok(t);
        }
        let t = self.engine.step(g, n - 1, |h, k| self.memoized(h, k));
        self.save(g, n, &t)?;
        Ok(t)
    }

    fn paths(&self, g: usize, n: usize) -> Option<(PathBuf, PathBuf)> {
        let d = self.cache_dir.as_ref()?;
        Some((d.join(format!("w_{g}_{n}.json")), d.join(format!("w_{g}_{n}.sha256"))))
    }

    fn load(&self, g: usize, n: usize) -> Option<PoleBasisTensor> {
        let (json, sum) = self.paths(g, n)?;
        let body = fs::read(&json).ok()?;
        let recorded = fs::read_to_string(&sum).ok()?;
        if recorded.trim() != hex_digest(&body) {
            return None;
        }
        let t = PoleBasisTensor::from_json(std::str::from_utf8(&body).ok()?).ok()?;
        let grade = 2 - 2 * g as i32 - n as i32;
        (t.nvars() == n && (t.is_zero() || t.s_grade() == grade)).then_some(t)
    }

    fn save(&self, g: usize, n: usize, t: &PoleBasisTensor) -> Result<(), TrError> {
        let Some((json, sum)) = self.paths(g, n) else {
            return Ok(());
        };
        let io = |p: &Path, e| TrError::Cache { path: p.display().to_string(), source: e };
        let dir = json.parent().expect("file in a directory");
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let body = t.to_json();
        write_atomic(&json, body.as_bytes()).map_err(|e| io(&json, e))?;
        write_atomic(&sum, hex_digest(body.as_bytes()).as_bytes()).map_err(|e| io(&sum, e))?;
        Ok(())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Stable correlators read while computing W_n^(g).
pub fn dependencies(g: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if g >= 1 && is_stable(g - 1, n + 1) {
        out.push((g - 1, n + 1));
    }
    for m in 0..=g {
        for k1 in 1..=n {
            let k2 = n + 1 - k1;
            if (m, k1) == (0, 1) || (g - m, k2) == (0, 1) {
                continue;
            }
            for d in [(m, k1), (g - m, k2)] {
                if is_stable(d.0, d.1) {
                    out.push(d);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
