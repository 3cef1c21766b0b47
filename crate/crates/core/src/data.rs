//! Shipped datasets. Each file is compiled in; setting `DMWB_DATA_DIR` makes
//! the loaders read same-named files from that directory instead.

use std::borrow::Cow;
use std::fmt::Write as _;
use std::path::PathBuf;

use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DATA_DIR_ENV: &str = "DMWB_DATA_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    Table,
    TriangleClasses,
    LatticeFlags,
}

impl Dataset {
    pub fn file_name(&self) -> &'static str {
        match self {
            Dataset::Table => "table1.txt",
            Dataset::TriangleClasses => "triangle_classes.txt",
            Dataset::LatticeFlags => "lattice_flags.txt",
        }
    }

    pub fn embedded(&self) -> &'static str {
        match self {
            Dataset::Table => include_str!("../data/table1.txt"),
            Dataset::TriangleClasses => include_str!("../data/triangle_classes.txt"),
            Dataset::LatticeFlags => include_str!("../data/lattice_flags.txt"),
        }
    }
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse {
        file: &'static str,
        line: usize,
        message: String,
    },
}

impl DataError {
    pub fn parse(file: &'static str, line: usize, message: impl Into<String>) -> Self {
        DataError::Parse {
            file,
            line,
            message: message.into(),
        }
    }
}

/// Dataset text, honouring the override directory.
pub fn load(ds: Dataset) -> Result<Cow<'static, str>, DataError> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(ds.file_name());
            std::fs::read_to_string(&path)
                .map(Cow::Owned)
                .map_err(|source| DataError::Io { path, source })
        }
        None => Ok(Cow::Borrowed(ds.embedded())),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

pub fn checksum(ds: Dataset) -> String {
    sha256_hex(ds.embedded())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_known_string() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn records_skip_comments() {
        let r: Vec<_> = records("# x\n\n a b \n#y\nc").collect();
        assert_eq!(r, vec![(3, "a b"), (5, "c")]);
    }
}
