//! The graph of commutation classes: enumeration, statistics, move paths,
//! Hamiltonian search and export.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::{ChamberLabel, ClassKey, LabelSet};
use crate::quiver::{apply_detected, neighbors, Move};

mod checkpoint;
mod enumerate;
pub mod export;
mod hamiltonian;
pub(crate) mod paths;

pub use checkpoint::{Checkpoint, FingerprintAlgorithm};
pub use enumerate::{enumerate, exact_memory_estimate, EnumerateOptions, Enumeration, DEFAULT_MEMORY_BUDGET};
pub use hamiltonian::{hamiltonian_cycle, is_hamiltonian_cycle};
pub use paths::{bfs_classes, find_paths_to_minors, MovePath};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("checkpoint is corrupt: {0}")]
    CheckpointCorrupt(String),
    #[error("exact enumeration needs about {required} bytes, over the {budget}-byte budget; use fingerprint mode")]
    FingerprintModeRequired { required: u64, budget: u64 },
    #[error("unsupported string count {0}")]
    UnsupportedStrings(usize),
    #[error("enumeration interrupted after level {0}")]
    Interrupted(u32),
    #[error("no class reachable from the start contains {0}")]
    TargetUnreachable(ChamberLabel),
    #[error("search budget of {0} nodes exhausted")]
    Timeout(u64),
    #[error("{format} export is limited to n <= {max}")]
    FormatTooLarge { format: &'static str, max: usize },
    #[error("malformed graph file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Vertex and edge counts plus the degree histogram of a class graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub vertices: u64,
    pub degree_sum: u64,
    pub undirected_edges: u64,
    pub degree_histogram: BTreeMap<usize, u64>,
}

impl GraphStats {
    pub fn from_histogram(n: usize, degree_histogram: BTreeMap<usize, u64>) -> GraphStats {
        let vertices = degree_histogram.values().sum();
        let degree_sum: u64 = degree_histogram.iter().map(|(&d, &c)| d as u64 * c).sum();
        GraphStats { n, vertices, degree_sum, undirected_edges: degree_sum / 2, degree_histogram }
    }

    /// `degree_sum == 2 * undirected_edges` and the histogram covers every vertex.
    pub fn is_consistent(&self) -> bool {
        self.degree_sum.is_multiple_of(2)
            && self.degree_sum == 2 * self.undirected_edges
            && self.degree_histogram.values().sum::<u64>() == self.vertices
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}

/// An enumerated class graph with ids assigned by sorted key rank.
#[derive(Clone, Debug)]
pub struct PhiGraph {
    n: usize,
    keys: Vec<ClassKey>,
    adjacency: Vec<Vec<u32>>,
}

impl PhiGraph {
    /// Builds the graph over `keys` (any order) by re-running move detection.
    pub fn from_keys(n: usize, mut keys: Vec<ClassKey>) -> PhiGraph {
        keys.sort_unstable();
        let adjacency = keys
            .iter()
            .map(|k| {
                let mut ids: Vec<u32> = neighbors(&k.labels())
                    .into_iter()
                    .map(|(_, t)| keys.binary_search(&t.key()).expect("graph closed under moves") as u32)
                    .collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        PhiGraph { n, keys, adjacency }
    }

    /// Builds a graph from explicit adjacency; used when re-importing.
    pub fn from_parts(n: usize, keys: Vec<ClassKey>, adjacency: Vec<Vec<u32>>) -> PhiGraph {
        assert_eq!(keys.len(), adjacency.len());
        PhiGraph { n, keys, adjacency }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[ClassKey] {
        &self.keys
    }

    pub fn key(&self, id: usize) -> &ClassKey {
        &self.keys[id]
    }

    pub fn labels(&self, id: usize) -> LabelSet {
        self.keys[id].labels()
    }

    pub fn id_of(&self, key: &ClassKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    pub fn neighbors(&self, id: usize) -> &[u32] {
        &self.adjacency[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency[id].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v as usize > u).map(move |&v| (u as u32, v)))
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, u64> {
        let mut h = BTreeMap::new();
        for ns in &self.adjacency {
            *h.entry(ns.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats::from_histogram(self.n, self.degree_histogram())
    }

    /// The move leading from vertex `from` to its neighbor `to`.
    pub fn move_between(&self, from: usize, to: usize) -> Option<Move> {
        let s = self.labels(from);
        let target = self.keys[to].labels();
        crate::quiver::detect_moves(&s).into_iter().find(|m| apply_detected(&s, m) == target)
    }
}
