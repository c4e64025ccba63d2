//! Cross-validation of quiver-based move detection against the word-level
//! heap oracle.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::label::{ChamberLabel, ClassKey, LabelSet};
use crate::quiver::neighbors;
use crate::wiring::{apply_word_move, chamber_labels, standard_word, word_move_sites, Word};

/// Every class reachable from the standard word using word-level moves
/// only, each with one witness word. Sorted by key.
pub fn word_enumerate(n: usize) -> Vec<(ClassKey, Word)> {
    let start = standard_word(n);
    let mut seen: FxHashMap<ClassKey, Word> = FxHashMap::default();
    seen.insert(chamber_labels(&start).key(), start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for site in word_move_sites(&w) {
            let next = apply_word_move(&w, &site).expect("site from word_move_sites");
            let key = chamber_labels(&next).key();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<(ClassKey, Word)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `(center, neighbor)` pairs from the word oracle, sorted.
pub fn word_transitions(w: &Word) -> Vec<(ChamberLabel, ClassKey)> {
    let here = chamber_labels(w);
    let mut out: Vec<(ChamberLabel, ClassKey)> = word_move_sites(w)
        .iter()
        .map(|site| {
            let next = chamber_labels(&apply_word_move(w, site).expect("site from word_move_sites"));
            let removed: Vec<ChamberLabel> = here.iter().filter(|l| !next.contains(*l)).collect();
            assert_eq!(removed.len(), 1, "a braid move changes exactly one label");
            (removed[0], next.key())
        })
        .collect();
    out.sort();
    out
}

/// `(center, neighbor)` pairs from quiver detection, sorted.
pub fn quiver_transitions(s: &LabelSet) -> Vec<(ChamberLabel, ClassKey)> {
    let mut out: Vec<(ChamberLabel, ClassKey)> = neighbors(s).into_iter().map(|(m, t)| (m.center, t.key())).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub classes: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare(w: &Word, mismatches: &mut Vec<String>) {
    let s = chamber_labels(w);
    let (a, b) = (quiver_transitions(&s), word_transitions(w));
    if a != b {
        mismatches.push(format!("class of `{w}`: quiver gives {} moves, word oracle {}", a.len(), b.len()));
    }
}

/// Compares quiver and word neighbor generation on every class reachable
/// by word moves.
pub fn oracle_check_all(n: usize) -> OracleReport {
    let classes = word_enumerate(n);
    let mut mismatches = Vec::new();
    for (_, w) in &classes {
        compare(w, &mut mismatches);
    }
    OracleReport { n, classes: classes.len(), mismatches }
}

/// Random walks over words; compares at `sample` distinct classes.
pub fn oracle_check_sampled(n: usize, sample: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = standard_word(n);
    let mut seen: FxHashSet<ClassKey> = FxHashSet::default();
    let mut mismatches = Vec::new();
    let walk = n * n;
    let mut attempts = 0;
    while seen.len() < sample && attempts < sample * 20 {
        attempts += 1;
        for _ in 0..walk {
            let sites = word_move_sites(&w);
            let site = sites.choose(&mut rng).expect("every class has a move");
            w = apply_word_move(&w, site).expect("site from word_move_sites");
        }
        if seen.insert(chamber_labels(&w).key()) {
            compare(&w, &mut mismatches);
        }
    }
    OracleReport { n, classes: seen.len(), mismatches }
}
