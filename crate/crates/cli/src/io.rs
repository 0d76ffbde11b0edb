use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

use crate::UsageError;

pub const CHUNK_LINES: usize = 2048;

/// Writes to a temporary file next to `target` and renames it into place on
/// `commit`. Dropping without committing removes the temporary file.
pub struct AtomicOutput {
    target: PathBuf,
    writer: BufWriter<NamedTempFile>,
}

impl AtomicOutput {
    pub fn create(target: &Path) -> Result<Self> {
        let dir = match target.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot create output in {}", dir.display()))?;
        Ok(AtomicOutput { target: target.to_path_buf(), writer: BufWriter::new(tmp) })
    }

    pub fn write_line(&mut self, line: &str) -> Result<()> {
        self.writer.write_all(line.as_bytes())?;
        self.writer.write_all(b"\n")?;
        Ok(())
    }

    pub fn write_all(&mut self, bytes: &[u8]) -> Result<()> {
        self.writer.write_all(bytes)?;
        Ok(())
    }

    pub fn commit(self) -> Result<()> {
        let tmp = self.writer.into_inner().map_err(|e| e.into_error())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&self.target).with_context(|| format!("cannot write {}", self.target.display()))?;
        Ok(())
    }
}

pub fn open_lines(path: &Path) -> Result<std::io::Lines<BufReader<File>>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(file).lines())
}

/// Feeds numbered, non-blank lines to `f` in chunks.
pub fn for_each_chunk(
    path: &Path,
    mut f: impl FnMut(Vec<(usize, String)>) -> Result<()>,
) -> Result<()> {
    let mut chunk = Vec::with_capacity(CHUNK_LINES);
    for (i, line) in open_lines(path)?.enumerate() {
        let line = line.with_context(|| format!("cannot read {}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        chunk.push((i + 1, line));
        if chunk.len() == CHUNK_LINES {
            f(std::mem::take(&mut chunk))?;
        }
    }
    if !chunk.is_empty() {
        f(chunk)?;
    }
    Ok(())
}

/// Outputs must not overwrite inputs or each other.
pub fn ensure_distinct(inputs: &[&Path], outputs: &[&Path]) -> Result<()> {
    let key = |p: &Path| std::fs::canonicalize(p).unwrap_or_else(|_| std::path::absolute(p).unwrap_or(p.to_path_buf()));
    let mut seen: Vec<PathBuf> = inputs.iter().map(|p| key(p)).collect();
    for out in outputs {
        let k = key(out);
        if seen.contains(&k) {
            return Err(UsageError(format!("path {} is used twice", out.display())).into());
        }
        seen.push(k);
    }
    Ok(())
}
