//! Persistent memo cache: a versioned flat text file mapping canonical keys
//! `d:n:sorted-codims` to decimal counts.

use std::fs;
use std::io::Write;
use std::path::Path;

use floorcount::{CountValue, ExactCounter, MemoKey};

pub const HEADER: &str = "# gwcount-memo v1";

/// Loads `path` into the counter. Missing files are fine; a version mismatch
/// or unreadable file is reported on stderr and ignored.
pub fn load(path: &Path, counter: &ExactCounter) -> usize {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return 0,
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            return 0;
        }
    };
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        eprintln!(
            "warning: ignoring cache {}: version mismatch (expected `{HEADER}`)",
            path.display()
        );
        return 0;
    }
    let mut loaded = 0;
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let parsed = line.split_once('=').and_then(|(key, value)| {
            Some((
                key.parse::<MemoKey>().ok()?,
                value.parse::<CountValue>().ok()?,
            ))
        });
        match parsed {
            Some((key, value)) => {
                counter.preload(key, value);
                loaded += 1;
            }
            None => eprintln!("warning: skipping malformed cache line `{line}`"),
        }
    }
    loaded
}

/// Writes every memoized count to `path` via a temporary file and rename.
pub fn save(path: &Path, counter: &ExactCounter) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    writeln!(tmp, "{HEADER}")?;
    for (key, value) in counter.memo_entries() {
        writeln!(tmp, "{key}={value}")?;
    }
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let counter = ExactCounter::new();
        counter.count_conics(3, &[2; 8]).unwrap();
        save(&path, &counter).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(HEADER));
        assert!(text.contains("2:3:2,2,2,2,2,2,2,2=92"));

        let fresh = ExactCounter::new();
        assert!(load(&path, &fresh) > 0);
        assert_eq!(fresh.memo_entries(), counter.memo_entries());
    }

    #[test]
    fn wrong_version_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        fs::write(&path, "# gwcount-memo v0\n2:3:2,2,2,2,2,2,2,2=1\n").unwrap();
        let counter = ExactCounter::new();
        assert_eq!(load(&path, &counter), 0);
        assert_eq!(counter.count_conics(3, &[2; 8]).unwrap(), 92u32.into());
    }
}
