//! On-disk cache of Miller bases, one file per `(k, N)`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use spcycles_core::qseries::{miller_basis, MillerBasis};

use crate::format::{basis_to_string, parse_basis};
use crate::CliError;

pub fn cache_file_name(k: u32, precision: usize) -> String {
    format!("miller_k{k}_N{precision}.txt")
}

#[derive(Debug, Clone, Default)]
pub struct BasisCache {
    dir: Option<PathBuf>,
}

impl BasisCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, k: u32, precision: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(cache_file_name(k, precision)))
    }

    /// Reads the cached basis if present and intact, otherwise computes it
    /// and (re)writes the file. Problems with a cached file are reported on
    /// `warn` and never change the result.
    pub fn load_or_compute(
        &self,
        k: u32,
        precision: usize,
        warn: &mut dyn Write,
    ) -> Result<MillerBasis, CliError> {
        let Some(path) = self.path_for(k, precision) else {
            return Ok(miller_basis(k, precision)?);
        };
        match fs::read_to_string(&path) {
            Ok(text) => match parse_basis(&text) {
                Ok(b) if b.weight() == k && b.precision() == precision => return Ok(b),
                Ok(_) => {
                    let _ = writeln!(warn, "warning: {} describes a different basis; recomputing", path.display());
                }
                Err(e) => {
                    let _ = writeln!(warn, "warning: corrupt cache file {}: {e}; recomputing", path.display());
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => {
                let _ = writeln!(warn, "warning: cannot read {}: {e}; recomputing", path.display());
            }
        }
        let basis = miller_basis(k, precision)?;
        if let Err(e) = store(&path, &basis) {
            let _ = writeln!(warn, "warning: cannot write {}: {e}", path.display());
        }
        Ok(basis)
    }
}

fn store(path: &Path, basis: &MillerBasis) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    // write-then-rename so a reader never sees a half-written file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, basis_to_string(basis))?;
    fs::rename(&tmp, path)
}
