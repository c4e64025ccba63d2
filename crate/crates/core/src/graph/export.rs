//! Graph files.
//!
//! * `edges.txt`: one `u v` line per edge, `u < v`, ascending.
//! * `vertices.txt`: `id<TAB>label,label,...` per vertex.
//! * `phi.dot`: Graphviz, only for `n <= 3`.
//! * `stats.json`: [`GraphStats`] as JSON.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{GraphError, GraphStats, PhiGraph};
use crate::label::{ChamberLabel, ClassKey, LabelSet};

pub const EDGES_FILE: &str = "edges.txt";
pub const VERTICES_FILE: &str = "vertices.txt";
pub const DOT_FILE: &str = "phi.dot";
pub const STATS_FILE: &str = "stats.json";

/// Largest string count for which DOT output is produced.
pub const DOT_MAX_STRINGS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Dot,
    StatsJson,
}

/// Writes `g` in `format` under `dir`; returns the files written.
pub fn export_graph(g: &PhiGraph, format: ExportFormat, dir: &Path) -> Result<Vec<PathBuf>, GraphError> {
    fs::create_dir_all(dir)?;
    match format {
        ExportFormat::EdgeList => {
            let edges = dir.join(EDGES_FILE);
            let mut w = BufWriter::new(fs::File::create(&edges)?);
            for (u, v) in g.edges() {
                writeln!(w, "{u} {v}")?;
            }
            w.flush()?;
            let vertices = dir.join(VERTICES_FILE);
            let mut w = BufWriter::new(fs::File::create(&vertices)?);
            for id in 0..g.vertex_count() {
                writeln!(w, "{id}\t{}", g.labels(id))?;
            }
            w.flush()?;
            Ok(vec![edges, vertices])
        }
        ExportFormat::Dot => {
            if g.n() > DOT_MAX_STRINGS {
                return Err(GraphError::FormatTooLarge { format: "dot", max: DOT_MAX_STRINGS });
            }
            let path = dir.join(DOT_FILE);
            fs::write(&path, to_dot(g))?;
            Ok(vec![path])
        }
        ExportFormat::StatsJson => {
            let path = dir.join(STATS_FILE);
            fs::write(&path, g.stats().to_json() + "\n")?;
            Ok(vec![path])
        }
    }
}

pub fn write_stats_json(stats: &GraphStats, path: &Path) -> Result<(), GraphError> {
    fs::write(path, stats.to_json() + "\n")?;
    Ok(())
}

fn to_dot(g: &PhiGraph) -> String {
    let mut out = format!("graph phi{} {{\n", g.n());
    for id in 0..g.vertex_count() {
        out.push_str(&format!("  {id} [tooltip=\"{}\"];\n", g.labels(id)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Reads an edge list export back into a graph.
pub fn read_edge_list(dir: &Path) -> Result<PhiGraph, GraphError> {
    let bad = |msg: String| GraphError::Malformed(msg);
    let mut keys = Vec::new();
    for (i, line) in fs::read_to_string(dir.join(VERTICES_FILE))?.lines().enumerate() {
        let (id, labels) = line.split_once('\t').ok_or_else(|| bad(format!("vertices line {}", i + 1)))?;
        if id.parse::<usize>().ok() != Some(i) {
            return Err(bad(format!("vertex ids out of order at line {}", i + 1)));
        }
        let set: LabelSet = labels
            .split(',')
            .map(|l| l.parse::<ChamberLabel>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(e.to_string()))?;
        keys.push(set.key());
    }
    let n = keys.first().map(|k: &ClassKey| k.labels().strings()).unwrap_or(0);
    let mut adjacency = vec![Vec::new(); keys.len()];
    for (i, line) in fs::read_to_string(dir.join(EDGES_FILE))?.lines().enumerate() {
        let mut it = line.split_whitespace().map(|t| t.parse::<u32>());
        let (Some(Ok(u)), Some(Ok(v)), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad(format!("edges line {}", i + 1)));
        };
        if u as usize >= keys.len() || v as usize >= keys.len() {
            return Err(bad(format!("edge {u} {v} names an unknown vertex")));
        }
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }
    for ns in &mut adjacency {
        ns.sort_unstable();
    }
    Ok(PhiGraph::from_parts(n, keys, adjacency))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate, EnumerateOptions};

    #[test]
    fn phi2_edge_list() {
        let g = enumerate(2, &EnumerateOptions::default()).unwrap().graph.unwrap();
        let dir = tempfile::tempdir().unwrap();
        export_graph(&g, ExportFormat::EdgeList, dir.path()).unwrap();
        assert_eq!(fs::read_to_string(dir.path().join(EDGES_FILE)).unwrap(), "0 1\n");
        let vertices = fs::read_to_string(dir.path().join(VERTICES_FILE)).unwrap();
        assert_eq!(vertices.lines().count(), 2);
        assert!(vertices.starts_with("0\t-|-,"));
    }

    #[test]
    fn phi3_round_trip_and_stats() {
        let g = enumerate(3, &EnumerateOptions::default()).unwrap().graph.unwrap();
        let dir = tempfile::tempdir().unwrap();
        export_graph(&g, ExportFormat::EdgeList, dir.path()).unwrap();
        assert_eq!(read_edge_list(dir.path()).unwrap().stats(), g.stats());
        export_graph(&g, ExportFormat::StatsJson, dir.path()).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join(STATS_FILE)).unwrap()).unwrap();
        assert_eq!(v["vertices"], 34);
        export_graph(&g, ExportFormat::Dot, dir.path()).unwrap();
        assert!(fs::read_to_string(dir.path().join(DOT_FILE)).unwrap().starts_with("graph phi3"));
    }

    #[test]
    fn dot_refused_for_phi4() {
        let g = enumerate(4, &EnumerateOptions::default()).unwrap().graph.unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(export_graph(&g, ExportFormat::Dot, dir.path()), Err(GraphError::FormatTooLarge { .. })));
    }
}
