//! Catalog cache keyed by `(m, depth, CATALOG_VERSION)`.

use std::fs;
use std::path::{Path, PathBuf};

use coltrees::{classify_all, ClassificationCatalog, ClassifyOptions, CATALOG_VERSION};

use crate::Failure;

pub struct Request<'a> {
    pub m: usize,
    pub depth: usize,
    pub jobs: Option<usize>,
    pub allow_m5: bool,
    pub cache_dir: Option<&'a Path>,
}

pub fn cache_path(dir: &Path, m: usize, depth: usize) -> PathBuf {
    dir.join(format!("catalog-m{m}-n{depth}-{CATALOG_VERSION}.json"))
}

fn read_cached(path: &Path, req: &Request) -> Option<ClassificationCatalog> {
    let text = fs::read_to_string(path).ok()?;
    match ClassificationCatalog::from_json(&text) {
        Ok(c) if c.header.m == req.m && c.header.depth == req.depth && c.header.version == CATALOG_VERSION => Some(c),
        Ok(_) => {
            eprintln!("warning: cache {} has a different header; recomputing", path.display());
            None
        }
        Err(e) => {
            eprintln!("warning: cache {} is corrupt ({e}); recomputing", path.display());
            None
        }
    }
}

pub fn load_or_classify(req: &Request) -> Result<ClassificationCatalog, Failure> {
    if req.m == 0 {
        return Err(Failure::Usage("m must be positive".into()));
    }
    if req.depth == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let path = req.cache_dir.map(|d| cache_path(d, req.m, req.depth));
    if let Some(c) = path.as_deref().and_then(|p| read_cached(p, req)) {
        return Ok(c);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = req.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Resource(format!("cannot start workers: {e}")))?;
    let opts = ClassifyOptions {
        depth: req.depth,
        allow_m5: req.allow_m5,
    };
    let catalog = pool
        .install(|| classify_all(req.m, opts))
        .map_err(|e| Failure::Resource(e.to_string()))?;
    if let (Some(dir), Some(path)) = (req.cache_dir, path) {
        store(dir, &path, &catalog)?;
    }
    Ok(catalog)
}

/// Writes through a temporary file so an interrupted run leaves no partial cache.
fn store(dir: &Path, path: &Path, catalog: &ClassificationCatalog) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Resource(format!("cache {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, catalog.to_json() + "\n").map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
