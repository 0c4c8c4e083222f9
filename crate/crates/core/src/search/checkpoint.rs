//! JSON-lines checkpoints: one header line, one line per unexplored work
//! prefix, one per configuration found so far and a running statistics line.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::NormSpec;

use super::{SearchMode, SearchStats};
use super::lattice::LatticeSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub lattice: LatticeSpec,
    pub norm: NormSpec,
    pub target_size: usize,
    pub mode: SearchMode,
    pub symmetry_reduction: bool,
    pub relax_general_position: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Header(Header),
    Prefix { item: usize, indices: Vec<usize> },
    Found { item: usize, indices: Vec<usize> },
    Stats(SearchStats),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Checkpoint {
    /// Unexplored work items as `(item number, index prefix)`.
    pub pending: Vec<(usize, Vec<usize>)>,
    pub found: Vec<(usize, Vec<usize>)>,
    pub stats: SearchStats,
}

pub fn save(path: &Path, header: &Header, cp: &Checkpoint) -> Result<()> {
    let mut buf = Vec::new();
    let mut put = |line: &Line| -> Result<()> {
        serde_json::to_writer(&mut buf, line)?;
        buf.push(b'\n');
        Ok(())
    };
    put(&Line::Header(header.clone()))?;
    for (item, p) in &cp.pending {
        put(&Line::Prefix { item: *item, indices: p.clone() })?;
    }
    for (item, f) in &cp.found {
        put(&Line::Found { item: *item, indices: f.clone() })?;
    }
    put(&Line::Stats(cp.stats.clone()))?;
    let tmp = path.with_extension("tmp");
    let mut file = fs::File::create(&tmp)?;
    file.write_all(&buf)?;
    file.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a checkpoint written for `header`. A missing or empty file means a
/// fresh start and yields `None`.
pub fn load(path: &Path, header: &Header) -> Result<Option<Checkpoint>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty()).enumerate();
    let Some((_, first)) = lines.next() else {
        return Ok(None);
    };
    let bad = |n: usize, msg: &str| Error::CheckpointFormat(format!("line {}: {msg}", n + 1));
    match serde_json::from_str::<Line>(first) {
        Ok(Line::Header(h)) if &h == header => {}
        Ok(Line::Header(_)) => return Err(bad(0, "header does not match the search parameters")),
        Ok(_) => return Err(bad(0, "expected a header line")),
        Err(e) => return Err(bad(0, &e.to_string())),
    }
    let mut cp = Checkpoint::default();
    let mut stats = None;
    for (n, l) in lines {
        match serde_json::from_str::<Line>(l).map_err(|e| bad(n, &e.to_string()))? {
            Line::Header(_) => return Err(bad(n, "repeated header")),
            Line::Prefix { item, indices } => cp.pending.push((item, indices)),
            Line::Found { item, indices } => cp.found.push((item, indices)),
            Line::Stats(s) => stats = Some(s),
        }
    }
    cp.stats = stats.ok_or_else(|| Error::CheckpointFormat("missing statistics line".into()))?;
    Ok(Some(cp))
}
