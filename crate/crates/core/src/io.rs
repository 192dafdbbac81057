//! Edge-list ingest and output.
//!
//! Input is ASCII with one whitespace-separated pair of non-negative integer
//! labels per line. Blank lines and lines starting with the comment prefix
//! are skipped. Labels are mapped to dense IDs in ascending label order, so a
//! file whose labels are already `0..N` keeps its numbering.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestOptions {
    /// Input is directed; every arc is reflected. Since the graph is stored
    /// undirected and deduplicated this yields the same edge set either way;
    /// the flag is recorded for provenance.
    pub reflect: bool,
    /// Drop nodes whose degree (after reflection and dedup) exceeds this.
    /// Applied once, not to a fixpoint.
    pub degree_cap: Option<usize>,
    pub comment_prefix: char,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            reflect: false,
            degree_cap: None,
            comment_prefix: '#',
        }
    }
}

/// A graph with the original label of every dense node ID.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
    /// Nodes removed by the degree cap, by original label.
    pub capped: Vec<u64>,
}

pub fn load_edge_list(path: impl AsRef<Path>, opts: &IngestOptions) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(BufReader::new(file), opts, path)
}

pub fn parse_edge_list<R: BufRead>(
    reader: R,
    opts: &IngestOptions,
    origin: &Path,
) -> Result<LoadedGraph> {
    if opts.degree_cap == Some(0) {
        return Err(Error::InvalidParameter("degree cap must be >= 1".into()));
    }
    let parse_error = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: origin.to_path_buf(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(opts.comment_prefix) {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_error(
                line_no,
                format!("expected two node IDs, got {trimmed:?}"),
            ));
        };
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|e| parse_error(line_no, format!("bad node ID {s:?}: {e}")))
        };
        pairs.push((parse(a)?, parse(b)?));
    }

    let mut labels: Vec<u64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > NodeId::MAX as usize {
        return Err(parse_error(0, "too many distinct nodes".into()));
    }
    let index: HashMap<u64, NodeId> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as NodeId))
        .collect();
    let dense = Graph::with_nodes(
        labels.len(),
        pairs.iter().map(|(a, b)| (index[a], index[b])),
    );

    let Some(cap) = opts.degree_cap else {
        return Ok(LoadedGraph {
            graph: dense,
            labels,
            capped: Vec::new(),
        });
    };
    let removed: Vec<bool> = dense.degrees().iter().map(|&d| d > cap).collect();
    let mut remap = vec![NodeId::MAX; labels.len()];
    let mut kept_labels = Vec::new();
    let mut capped = Vec::new();
    for (v, &label) in labels.iter().enumerate() {
        if removed[v] {
            capped.push(label);
        } else {
            remap[v] = kept_labels.len() as NodeId;
            kept_labels.push(label);
        }
    }
    let graph = Graph::with_nodes(
        kept_labels.len(),
        dense
            .edges()
            .filter(|&(a, b)| !removed[a as usize] && !removed[b as usize])
            .map(|(a, b)| (remap[a as usize], remap[b as usize])),
    );
    Ok(LoadedGraph {
        graph,
        labels: kept_labels,
        capped,
    })
}

/// Writes one `i j` line (`i < j`) per edge, sorted, in dense ID space.
pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_to_path(path.as_ref(), |w| write_edges(g, None, w))
}

/// Like [`write_edge_list`] but reports every node by its original label.
pub fn write_labeled_edge_list(g: &Graph, labels: &[u64], path: impl AsRef<Path>) -> Result<()> {
    write_to_path(path.as_ref(), |w| write_edges(g, Some(labels), w))
}

pub fn write_edges<W: Write>(
    g: &Graph,
    labels: Option<&[u64]>,
    out: &mut W,
) -> std::io::Result<()> {
    let mut edges: Vec<(u64, u64)> = g
        .edges()
        .map(|(a, b)| match labels {
            Some(l) => {
                let (x, y) = (l[a as usize], l[b as usize]);
                (x.min(y), x.max(y))
            }
            None => (u64::from(a), u64::from(b)),
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

fn write_to_path(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<()> {
    let io_err = |source| Error::Io {
        path: PathBuf::from(path),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    body(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
