use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::extremal::pareto::ParetoSearch;

/// Directory of JSON-lines frontier caches, one file per `(d, k)`.
#[derive(Debug, Clone)]
pub struct FrontierCache {
    dir: PathBuf,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

impl FrontierCache {
    pub fn new(dir: impl Into<PathBuf>) -> FrontierCache {
        FrontierCache { dir: dir.into() }
    }

    pub fn path(&self, d: usize, k: usize) -> PathBuf {
        self.dir.join(format!("frontier-d{d}-k{k}.jsonl"))
    }

    /// The cached search for `(d, k)`, or `None` if no cache file exists.
    pub fn load(&self, d: usize, k: usize) -> Result<Option<ParetoSearch>> {
        let path = self.path(d, k);
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path, e)),
        };
        ParetoSearch::read_jsonl(k, d, BufReader::new(file)).map(Some)
    }

    /// Loads the cache when present, otherwise starts a fresh search.
    pub fn load_or_new(&self, d: usize, k: usize) -> Result<ParetoSearch> {
        match self.load(d, k)? {
            Some(s) => Ok(s),
            None => ParetoSearch::with_arity(k, d),
        }
    }

    /// Rewrites the cache file for the search's `(d, k)`.
    pub fn store(&self, search: &ParetoSearch) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        let path = self.path(search.arity(), search.order());
        let tmp = path.with_extension("jsonl.tmp");
        let file = File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
        let mut out = BufWriter::new(file);
        search.write_jsonl(&mut out).map_err(|e| io_err(&tmp, e))?;
        out.flush().map_err(|e| io_err(&tmp, e))?;
        drop(out);
        fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }

    pub fn clear(&self, d: usize, k: usize) -> Result<bool> {
        let path = self.path(d, k);
        match fs::remove_file(&path) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(false),
            Err(e) => Err(io_err(&path, e)),
        }
    }
}
