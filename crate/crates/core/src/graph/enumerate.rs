//! Level-synchronous breadth-first enumeration of the class graph.

use std::collections::BTreeMap;
use std::hash::BuildHasherDefault;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use dashmap::DashSet;
use rayon::prelude::*;
use rustc_hash::FxHasher;

use super::checkpoint::{Checkpoint, VisitedSnapshot};
use super::{GraphError, GraphStats, PhiGraph};
use crate::label::{ClassKey, LabelSet};
use crate::quiver::neighbors;
use crate::wiring::{chamber_labels, standard_word, Word};

/// Exact-mode memory budget used when none is given: 512 MiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 512 << 20;

/// Known class counts, used only for memory estimates.
const KNOWN_VERTICES: [(usize, u64); 4] = [(2, 2), (3, 34), (4, 4894), (5, 5_520_372)];

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub threads: usize,
    /// Deduplicate by 128-bit fingerprint instead of full keys (n ≥ 5 only).
    pub fingerprint: bool,
    pub checkpoint: Option<PathBuf>,
    pub memory_budget: Option<u64>,
    /// Materialize the adjacency structure (exact mode only).
    pub build_graph: bool,
    /// BFS seed; defaults to the standard word.
    pub seed: Option<Word>,
    /// Checked between levels; when set the run checkpoints and stops.
    pub interrupt: Option<Arc<AtomicBool>>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            threads: 1,
            fingerprint: false,
            checkpoint: None,
            memory_budget: None,
            build_graph: true,
            seed: None,
            interrupt: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub stats: GraphStats,
    pub graph: Option<PhiGraph>,
    pub levels: u32,
}

/// Rough resident size of an exact-mode run, in bytes.
pub fn exact_memory_estimate(n: usize) -> u64 {
    let per_state = ((n * n + 1) * 4 + 64) as u64;
    match KNOWN_VERTICES.iter().find(|(k, _)| *k == n) {
        Some(&(_, v)) => v * per_state,
        None => u64::MAX,
    }
}

type FxBuild = BuildHasherDefault<FxHasher>;

enum Visited {
    Exact(DashSet<ClassKey, FxBuild>),
    Fingerprint(DashSet<u128, FxBuild>),
}

impl Visited {
    fn insert(&self, key: &ClassKey) -> bool {
        match self {
            Visited::Exact(s) => s.insert(key.clone()),
            Visited::Fingerprint(s) => s.insert(key.fingerprint()),
        }
    }

    fn len(&self) -> usize {
        match self {
            Visited::Exact(s) => s.len(),
            Visited::Fingerprint(s) => s.len(),
        }
    }

    fn snapshot(&self) -> VisitedSnapshot {
        match self {
            Visited::Exact(s) => {
                let mut v: Vec<ClassKey> = s.iter().map(|k| k.clone()).collect();
                v.sort_unstable();
                VisitedSnapshot::Exact(v)
            }
            Visited::Fingerprint(s) => {
                let mut v: Vec<u128> = s.iter().map(|k| *k).collect();
                v.sort_unstable();
                VisitedSnapshot::Fingerprints(v)
            }
        }
    }

    fn restore(snapshot: VisitedSnapshot) -> Visited {
        match snapshot {
            VisitedSnapshot::Exact(v) => Visited::Exact(v.into_iter().collect()),
            VisitedSnapshot::Fingerprints(v) => Visited::Fingerprint(v.into_iter().collect()),
        }
    }
}

/// Enumerates every class reachable from the seed by braid moves.
///
/// Vertex and degree statistics are exact in both modes; the adjacency
/// structure is only built in exact mode with `build_graph` set.
pub fn enumerate(n: usize, opts: &EnumerateOptions) -> Result<Enumeration, GraphError> {
    if !(2..=crate::MAX_STRINGS).contains(&n) {
        return Err(GraphError::UnsupportedStrings(n));
    }
    let mut fingerprint = opts.fingerprint;
    if fingerprint && n <= 4 {
        log::warn!("fingerprint mode ignored for n = {n}; exact keys are used");
        fingerprint = false;
    }
    if !fingerprint {
        let budget = opts.memory_budget.unwrap_or(DEFAULT_MEMORY_BUDGET);
        let required = exact_memory_estimate(n);
        if required > budget {
            return Err(GraphError::FingerprintModeRequired { required, budget });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads.max(1)).build().expect("thread pool");

    let resumed = match &opts.checkpoint {
        Some(path) if path.exists() => Some(Checkpoint::read(path)?),
        _ => None,
    };
    let (visited, mut frontier, mut histogram, mut level) = match resumed {
        Some(c) => {
            if c.n != n {
                return Err(GraphError::CheckpointCorrupt(format!("checkpoint is for n = {}", c.n)));
            }
            let is_fp = matches!(c.visited, VisitedSnapshot::Fingerprints(_));
            if is_fp != fingerprint {
                return Err(GraphError::CheckpointCorrupt("checkpoint mode differs from requested mode".into()));
            }
            log::info!("resuming n = {n} at level {} with {} visited", c.level, c.visited.len());
            (Visited::restore(c.visited), c.frontier, c.histogram, c.level)
        }
        None => {
            let seed = opts.seed.clone().unwrap_or_else(|| standard_word(n));
            assert_eq!(seed.n(), n, "seed word has a different string count");
            let start = chamber_labels(&seed).key();
            let visited =
                if fingerprint { Visited::Fingerprint(DashSet::default()) } else { Visited::Exact(DashSet::default()) };
            visited.insert(&start);
            (visited, vec![start], BTreeMap::new(), 0)
        }
    };

    while !frontier.is_empty() {
        if let Some(flag) = &opts.interrupt {
            if flag.load(Ordering::SeqCst) {
                if let Some(path) = &opts.checkpoint {
                    Checkpoint { n, level, histogram, visited: visited.snapshot(), frontier }.write(path)?;
                }
                return Err(GraphError::Interrupted(level));
            }
        }
        let expanded: Vec<(usize, Vec<ClassKey>)> = pool.install(|| {
            frontier
                .par_iter()
                .map(|key| {
                    let next = neighbors(&key.labels());
                    let degree = next.len();
                    debug_assert!(distinct(&next.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>()));
                    let fresh = next.into_iter().map(|(_, t)| t.key()).filter(|k| visited.insert(k)).collect();
                    (degree, fresh)
                })
                .collect()
        });
        let mut next = Vec::new();
        for (degree, fresh) in expanded {
            *histogram.entry(degree).or_insert(0) += 1;
            next.extend(fresh);
        }
        next.par_sort_unstable();
        frontier = next;
        level += 1;
        log::debug!("level {level}: frontier {} visited {}", frontier.len(), visited.len());
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                n,
                level,
                histogram: histogram.clone(),
                visited: visited.snapshot(),
                frontier: frontier.clone(),
            }
            .write(path)?;
        }
    }

    let stats = GraphStats::from_histogram(n, histogram);
    debug_assert_eq!(stats.vertices as usize, visited.len());
    let graph = match visited {
        Visited::Exact(set) if opts.build_graph => {
            let keys: Vec<ClassKey> = set.into_iter().collect();
            let g = pool.install(|| PhiGraph::from_keys(n, keys));
            debug_assert_eq!(g.stats(), stats);
            Some(g)
        }
        _ => None,
    };
    Ok(Enumeration { stats, graph, levels: level })
}

fn distinct(sets: &[LabelSet]) -> bool {
    let mut keys: Vec<ClassKey> = sets.iter().map(|s| s.key()).collect();
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}
