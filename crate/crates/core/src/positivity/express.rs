use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

use super::{ExpressionReport, MinorId, PositivityError};
use crate::graph::paths::path_to;
use crate::graph::{bfs_classes, find_paths_to_minors, GraphError, MovePath};
use crate::label::{ChamberLabel, LabelSet};
use crate::laurent::{LaurentError, LaurentPoly, VarTable};
use crate::quiver::{apply_detected, Move};

/// Polynomials for the labels of the current class.
struct Exchange {
    known: FxHashMap<ChamberLabel, LaurentPoly>,
}

impl Exchange {
    fn new(base: &LabelSet) -> Exchange {
        let vars = VarTable::for_class(base);
        let known = base.iter().map(|l| (l, LaurentPoly::minor(&vars, l).expect("base label is a variable"))).collect();
        Exchange { known }
    }

    fn get(&self, l: ChamberLabel) -> &LaurentPoly {
        self.known.get(&l).unwrap_or_else(|| panic!("no expression for {l}"))
    }

    /// `Y = (A·D + B·C) / X` for the move.
    fn solve(&self, m: &Move, step: usize) -> Result<LaurentPoly, PositivityError> {
        let [(a, d), (b, c)] = m.factors;
        let num = self.get(a).mul(self.get(d))?.add(&self.get(b).mul(self.get(c))?)?;
        num.exact_div(self.get(m.center)).map_err(|e| match e {
            LaurentError::NotDivisible => PositivityError::NotDivisible { step, relation: m.to_string() },
            other => other.into(),
        })
    }
}

/// One solved exchange relation.
#[derive(Clone, Debug)]
pub struct ExchangeStep {
    pub step: Move,
    pub result: LaurentPoly,
}

/// Applies `steps` from `base`, returning each new minor's expression in the
/// base chamber minors.
pub fn express_steps(base: &LabelSet, steps: &[Move]) -> Result<Vec<ExchangeStep>, PositivityError> {
    let mut ex = Exchange::new(base);
    let mut current = base.clone();
    let mut out = Vec::with_capacity(steps.len());
    for (i, m) in steps.iter().enumerate() {
        let y = ex.solve(m, i)?;
        ex.known.remove(&m.center);
        ex.known.insert(m.replacement, y.clone());
        current = apply_detected(&current, m);
        out.push(ExchangeStep { step: *m, result: y });
    }
    debug_assert!(current.iter().all(|l| ex.known.contains_key(&l)));
    Ok(out)
}

/// Expresses `target` along a shortest move path from `base`.
pub fn express_minor(base: &LabelSet, target: MinorId) -> Result<ExpressionReport, PositivityError> {
    let paths = find_paths_to_minors(base, &[target.label()])?;
    let path = paths.into_values().next().expect("one target");
    let ex = Exchange::new(base);
    let expression = if path.is_empty() {
        ex.get(target.label()).clone()
    } else {
        express_steps(base, &path.steps)?.pop().expect("nonempty path").result
    };
    Ok(ExpressionReport::new(base.key(), target, path, expression))
}

/// Expresses every target from one breadth-first sweep.
///
/// Minors are uniquely determined as rational functions of the base chamber
/// minors, so a label's expression is computed once, the first time a move
/// produces it, and reused by later moves.
pub fn express_all(
    base: &LabelSet,
    targets: &[MinorId],
) -> Result<Vec<Result<ExpressionReport, PositivityError>>, PositivityError> {
    let mut ex = Exchange::new(base);
    let mut first_node: BTreeMap<ChamberLabel, usize> = BTreeMap::new();
    let mut remaining: Vec<ChamberLabel> = targets.iter().map(|t| t.label()).filter(|l| !base.contains(*l)).collect();
    remaining.sort_unstable();
    remaining.dedup();
    let mut failure: Option<PositivityError> = None;
    let nodes = bfs_classes(base, |nodes, id| {
        if remaining.is_empty() {
            return false;
        }
        let Some((_, m)) = nodes[id].parent else { return true };
        if !ex.known.contains_key(&m.replacement) {
            match ex.solve(&m, nodes[id].depth as usize - 1) {
                Ok(y) => {
                    ex.known.insert(m.replacement, y);
                }
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
        }
        if let Ok(i) = remaining.binary_search(&m.replacement) {
            first_node.insert(m.replacement, id);
            remaining.remove(i);
        }
        !remaining.is_empty()
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if let Some(&missing) = remaining.first() {
        return Err(GraphError::TargetUnreachable(missing).into());
    }
    let key = base.key();
    Ok(targets
        .iter()
        .map(|&t| {
            let steps = first_node.get(&t.label()).map(|&id| path_to(&nodes, id)).unwrap_or_default();
            let path = MovePath { start: key.clone(), steps };
            Ok(ExpressionReport::new(key.clone(), t, path, ex.get(t.label()).clone()))
        })
        .collect())
}
