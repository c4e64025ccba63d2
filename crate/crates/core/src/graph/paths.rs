use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashSet;

use super::GraphError;
use crate::label::{ChamberLabel, ClassKey, LabelSet};
use crate::quiver::{apply_detected, detect_moves, Move};

/// A sequence of braid moves starting at a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovePath {
    pub start: ClassKey,
    pub steps: Vec<Move>,
}

impl MovePath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every class along the path, start included.
    pub fn classes(&self) -> Vec<LabelSet> {
        let mut out = vec![self.start.labels()];
        for m in &self.steps {
            let next = apply_detected(out.last().expect("nonempty"), m);
            out.push(next);
        }
        out
    }

    pub fn end(&self) -> LabelSet {
        self.classes().pop().expect("nonempty")
    }

    /// Each step is detected in the class reached by the previous steps.
    pub fn is_valid(&self) -> bool {
        let mut current = self.start.labels();
        for m in &self.steps {
            if !detect_moves(&current).contains(m) {
                return false;
            }
            current = apply_detected(&current, m);
        }
        true
    }
}

/// A class reached by [`bfs_classes`] with the move that first reached it.
#[derive(Clone, Debug)]
pub struct BfsNode {
    pub labels: LabelSet,
    pub parent: Option<(usize, Move)>,
    pub depth: u32,
}

/// Breadth-first traversal from `start`, visiting neighbors in move order.
/// `visit` sees each newly discovered node (the start included) and
/// returns `false` to stop the search.
pub fn bfs_classes(start: &LabelSet, mut visit: impl FnMut(&[BfsNode], usize) -> bool) -> Vec<BfsNode> {
    let mut nodes = vec![BfsNode { labels: start.clone(), parent: None, depth: 0 }];
    let mut seen: FxHashSet<ClassKey> = FxHashSet::default();
    seen.insert(start.key());
    if !visit(&nodes, 0) {
        return nodes;
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let current = nodes[at].labels.clone();
        let depth = nodes[at].depth + 1;
        for m in detect_moves(&current) {
            let next = apply_detected(&current, &m);
            if !seen.insert(next.key()) {
                continue;
            }
            nodes.push(BfsNode { labels: next, parent: Some((at, m)), depth });
            let id = nodes.len() - 1;
            queue.push_back(id);
            if !visit(&nodes, id) {
                return nodes;
            }
        }
    }
    nodes
}

pub(crate) fn path_to(nodes: &[BfsNode], mut id: usize) -> Vec<Move> {
    let mut steps = Vec::new();
    while let Some((parent, m)) = nodes[id].parent {
        steps.push(m);
        id = parent;
    }
    steps.reverse();
    steps
}

/// Shortest move path from `start` to a class containing each target.
pub fn find_paths_to_minors(
    start: &LabelSet,
    targets: &[ChamberLabel],
) -> Result<BTreeMap<ChamberLabel, MovePath>, GraphError> {
    let mut found: BTreeMap<ChamberLabel, usize> = BTreeMap::new();
    let mut remaining: Vec<ChamberLabel> = targets.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    let nodes = bfs_classes(start, |nodes, id| {
        remaining.retain(|t| {
            if nodes[id].labels.contains(*t) {
                found.insert(*t, id);
                false
            } else {
                true
            }
        });
        !remaining.is_empty()
    });
    if let Some(&missing) = remaining.first() {
        return Err(GraphError::TargetUnreachable(missing));
    }
    let key = start.key();
    Ok(found.into_iter().map(|(t, id)| (t, MovePath { start: key.clone(), steps: path_to(&nodes, id) })).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::non_fixed_minors;
    use crate::wiring::{chamber_labels, standard_word};

    #[test]
    fn target_in_start_is_empty_path() {
        let s = chamber_labels(&standard_word(3));
        let t: ChamberLabel = "2|1".parse().unwrap();
        let paths = find_paths_to_minors(&s, &[t]).unwrap();
        assert!(paths[&t].is_empty());
    }

    #[test]
    fn n2_single_step() {
        let s = chamber_labels(&standard_word(2));
        let t: ChamberLabel = "2|2".parse().unwrap();
        let p = &find_paths_to_minors(&s, &[t]).unwrap()[&t];
        assert_eq!(p.len(), 1);
        assert!(p.is_valid());
        assert!(p.end().contains(t));
    }

    #[test]
    fn n3_reaches_every_minor() {
        let s = chamber_labels(&standard_word(3));
        let targets = crate::label::all_minors(3);
        assert_eq!(targets.len(), 19);
        let paths = find_paths_to_minors(&s, &targets).unwrap();
        assert_eq!(paths.len(), 19);
        for (t, p) in &paths {
            assert!(p.is_valid());
            assert!(p.end().contains(*t));
        }
        assert!(paths.values().map(|p| p.len()).max().unwrap() <= 34);
        assert_eq!(non_fixed_minors(3).len(), 14);
    }

    #[test]
    fn unreachable_target() {
        let s = chamber_labels(&standard_word(2));
        let t: ChamberLabel = "12|13".parse().unwrap();
        assert!(matches!(find_paths_to_minors(&s, &[t]), Err(GraphError::TargetUnreachable(_))));
    }
}
