//! Line-oriented graph files: a `n m` header, then one `u v` pair per edge,
//! 0-indexed. Generation metadata travels in a JSON sidecar.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::SimpleGraph;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub n: usize,
    pub m: usize,
    pub tau: f64,
    pub seed: u64,
    pub degrees: Vec<u32>,
}

pub fn write_edge_list(g: &SimpleGraph, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{} {}", g.n(), g.m())?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the edge list to `path` and the metadata sidecar to
/// `path` + ".meta.json".
pub fn write_graph_with_metadata(g: &SimpleGraph, meta: &GraphMetadata, path: &Path) -> Result<()> {
    write_edge_list(g, path)?;
    let sidecar = sidecar_path(path);
    let file = BufWriter::new(File::create(sidecar)?);
    serde_json::to_writer_pretty(file, meta)?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    std::path::PathBuf::from(s)
}

pub fn read_edge_list(path: &Path) -> Result<SimpleGraph> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidGraphFile("empty file".into()))??;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), "n")?;
    let m: usize = parse_field(parts.next(), "m")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let u: u32 = parse_field(parts.next(), "u")?;
        let v: u32 = parse_field(parts.next(), "v")?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::InvalidGraphFile(format!(
            "header promises {m} edges, file has {}",
            edges.len()
        )));
    }
    SimpleGraph::from_edges(n, edges)
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::InvalidGraphFile(format!("missing field {name}")))?
        .parse()
        .map_err(|_| Error::InvalidGraphFile(format!("unparsable field {name}")))
}
