use super::{GraphError, PhiGraph};

/// Backtracking search for a Hamiltonian cycle, budgeted by search nodes.
///
/// Returns `Ok(None)` only when the search space is exhausted.
pub fn hamiltonian_cycle(g: &PhiGraph, node_budget: u64) -> Result<Option<Vec<usize>>, GraphError> {
    let n = g.vertex_count();
    if n < 3 {
        return Ok(None);
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return Ok(None);
    }
    let mut search = Search { g, on_path: vec![false; n], path: Vec::with_capacity(n), nodes: 0, budget: node_budget };
    search.on_path[0] = true;
    search.path.push(0);
    match search.extend()? {
        true => Ok(Some(search.path)),
        false => Ok(None),
    }
}

struct Search<'a> {
    g: &'a PhiGraph,
    on_path: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn free_degree(&self, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.on_path[w as usize]).count()
    }

    /// Every unvisited vertex still has two usable edges (one if adjacent to
    /// the path's ends).
    fn feasible(&self, last: usize) -> bool {
        let start = self.path[0];
        (0..self.g.vertex_count()).filter(|&v| !self.on_path[v]).all(|v| {
            let ns = self.g.neighbors(v);
            let usable = ns
                .iter()
                .filter(|&&w| {
                    let w = w as usize;
                    !self.on_path[w] || w == start || w == last
                })
                .count();
            usable >= 2
        })
    }

    fn extend(&mut self) -> Result<bool, GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::Timeout(self.budget));
        }
        let last = *self.path.last().expect("path has a start");
        if self.path.len() == self.g.vertex_count() {
            return Ok(self.g.neighbors(last).contains(&(self.path[0] as u32)));
        }
        if !self.feasible(last) {
            return Ok(false);
        }
        // fewest onward options first
        let mut next: Vec<usize> =
            self.g.neighbors(last).iter().map(|&w| w as usize).filter(|&w| !self.on_path[w]).collect();
        next.sort_by_key(|&w| (self.free_degree(w), w));
        for w in next {
            self.on_path[w] = true;
            self.path.push(w);
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.on_path[w] = false;
        }
        Ok(false)
    }
}

/// Consecutive vertices (cyclically) are adjacent and every vertex occurs once.
pub fn is_hamiltonian_cycle(g: &PhiGraph, cycle: &[usize]) -> bool {
    let n = g.vertex_count();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        g.neighbors(a).contains(&(b as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::ClassKey;

    fn graph(adj: Vec<Vec<u32>>) -> PhiGraph {
        let keys = (0..adj.len() as u32).map(|i| ClassKey::from_codes(vec![i].into_boxed_slice())).collect();
        PhiGraph::from_parts(2, keys, adj)
    }

    #[test]
    fn square_has_cycle() {
        let g = graph(vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]);
        let c = hamiltonian_cycle(&g, 1000).unwrap().unwrap();
        assert!(is_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn star_has_none() {
        let g = graph(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]);
        assert_eq!(hamiltonian_cycle(&g, 1000).unwrap(), None);
        // two triangles sharing a vertex (bowtie): degrees ok, still no cycle
        let bowtie = graph(vec![vec![1, 2, 3, 4], vec![0, 2], vec![0, 1], vec![0, 4], vec![0, 3]]);
        assert_eq!(hamiltonian_cycle(&bowtie, 1000).unwrap(), None);
    }

    #[test]
    fn checker_rejects_bad_cycles() {
        let g = graph(vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]);
        assert!(!is_hamiltonian_cycle(&g, &[0, 2, 1, 3]));
        assert!(!is_hamiltonian_cycle(&g, &[0, 1, 2]));
        assert!(!is_hamiltonian_cycle(&g, &[0, 1, 1, 3]));
    }
}
