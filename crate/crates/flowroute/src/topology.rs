//! Topology sources: the bundled backbone edge lists and edge-list files.
//!
//! A file may carry a `# sha256: <hex>` comment. The digest covers the edge
//! lines only, each trimmed and terminated by a newline, so comments can be
//! edited freely. Bundled files always carry one and it is always checked.

use std::path::{Path, PathBuf};

use flowroute_core::{edgelist, Graph};
use sha2::{Digest, Sha256};

const BUNDLED: [(&str, &str); 4] = [
    ("internet2", include_str!("../data/internet2.edges")),
    ("geant", include_str!("../data/geant.edges")),
    ("rnp", include_str!("../data/rnp.edges")),
    ("wide", include_str!("../data/wide.edges")),
];

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0:?} is neither a bundled topology ({names}) nor an existing file", names = bundled_names().collect::<Vec<_>>().join(", "))]
    Unknown(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: {source}")]
    Parse {
        origin: String,
        source: flowroute_core::Error,
    },
    #[error("{origin}: checksum mismatch, header says {expected} but edges hash to {actual}")]
    Checksum {
        origin: String,
        expected: String,
        actual: String,
    },
}

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(name, _)| *name)
}

pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

fn is_data_line(line: &str) -> bool {
    !line.is_empty() && !line.starts_with('#')
}

/// Hex SHA-256 of the edge lines of an edge-list text.
pub fn edge_digest(text: &str) -> String {
    let mut h = Sha256::new();
    for line in text.lines().map(str::trim).filter(|l| is_data_line(l)) {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn declared_digest(text: &str) -> Option<&str> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix("sha256:"))
        .map(str::trim)
}

/// Parses an edge list, checking its `# sha256:` line if it has one.
pub fn parse_checked(text: &str, origin: &str) -> Result<Graph, LoadError> {
    if let Some(expected) = declared_digest(text) {
        let actual = edge_digest(text);
        if !expected.eq_ignore_ascii_case(&actual) {
            return Err(LoadError::Checksum {
                origin: origin.into(),
                expected: expected.into(),
                actual,
            });
        }
    }
    edgelist::parse(text).map_err(|source| LoadError::Parse {
        origin: origin.into(),
        source,
    })
}

pub fn load_file(path: &Path) -> Result<Graph, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.into(),
        source,
    })?;
    parse_checked(&text, &path.display().to_string())
}

/// Loads a bundled topology by name, or else the edge-list file at that path.
pub fn load_topology(name_or_path: &str) -> Result<Graph, LoadError> {
    if let Some(text) = bundled_text(name_or_path) {
        return parse_checked(text, name_or_path);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(LoadError::Unknown(name_or_path.into()));
    }
    load_file(path)
}

/// Label for a topology source: the bundled name, or the file stem.
pub fn topology_label(name_or_path: &str) -> String {
    if bundled_text(name_or_path).is_some() {
        return name_or_path.into();
    }
    Path::new(name_or_path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name_or_path.into())
}
