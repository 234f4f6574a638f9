use crate::error::{Error, Result};
use crate::set::{Element, ElementSet};

/// Bipartite graph with dense edge ids in insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    edges: Vec<(usize, usize)>,
    // (right, edge id) per left node
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_left];
        for (id, &(l, r)) in edges.iter().enumerate() {
            if l >= n_left || r >= n_right {
                return Err(Error::Config(format!(
                    "edge ({l}, {r}) outside {n_left}x{n_right} graph"
                )));
            }
            if adjacency[l].iter().any(|&(rr, _)| rr == r) {
                return Err(Error::Config(format!("duplicate edge ({l}, {r})")));
            }
            adjacency[l].push((r, id));
        }
        Ok(BipartiteGraph {
            n_left,
            n_right,
            edges,
            adjacency,
        })
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(right, edge id)` pairs incident to a left node.
    pub fn neighbors(&self, left: usize) -> &[(usize, usize)] {
        &self.adjacency[left]
    }

    /// Edge ids incident to the given left nodes.
    pub fn star(&self, lefts: &ElementSet) -> ElementSet {
        let mut s = ElementSet::empty(self.edges.len());
        for l in lefts {
            for &(_, id) in &self.adjacency[l] {
                s.insert(id);
            }
        }
        s
    }

    /// Left endpoints of an edge set.
    pub fn left_endpoints(&self, edges: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.n_left, edges.iter().map(|id| self.edges[id].0))
    }

    /// Whether the edge set shares no endpoint.
    pub fn is_matching(&self, edges: &ElementSet) -> bool {
        let mut left = ElementSet::empty(self.n_left);
        let mut right = ElementSet::empty(self.n_right);
        edges.iter().all(|id| {
            let (l, r) = self.edges[id];
            left.insert(l) && right.insert(r)
        })
    }
}

/// Size of a maximum matching using only left nodes in `restricted_left`.
///
/// Kuhn's augmenting-path algorithm; allocates its own scratch space.
pub fn maximum_matching(graph: &BipartiteGraph, restricted_left: &ElementSet) -> usize {
    let mut match_of_right: Vec<Option<usize>> = vec![None; graph.n_right];
    let mut visited = vec![false; graph.n_right];
    let mut size = 0;
    for l in restricted_left {
        visited.iter_mut().for_each(|v| *v = false);
        if augment(graph, l, &mut visited, &mut match_of_right) {
            size += 1;
        }
    }
    size
}

fn augment(
    graph: &BipartiteGraph,
    left: usize,
    visited: &mut [bool],
    match_of_right: &mut [Option<usize>],
) -> bool {
    for &(r, _) in graph.neighbors(left) {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match match_of_right[r] {
            None => true,
            Some(other) => augment(graph, other, visited, match_of_right),
        };
        if free {
            match_of_right[r] = Some(left);
            return true;
        }
    }
    false
}

/// Left nodes of a bipartite graph; a set is independent iff some matching
/// saturates it.
#[derive(Clone, Debug, PartialEq)]
pub struct TransversalMatroid {
    graph: BipartiteGraph,
}

impl TransversalMatroid {
    pub fn new(graph: BipartiteGraph) -> Self {
        TransversalMatroid { graph }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn ground_size(&self) -> usize {
        self.graph.n_left
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        maximum_matching(&self.graph, s) == s.len()
    }
}

/// Edge sets of a bipartite graph that form matchings: the intersection of
/// the left-partition and right-partition matroids over edges.
#[derive(Clone, Copy, Debug)]
pub struct EdgeMatchings<'a> {
    pub graph: &'a BipartiteGraph,
}

impl super::Independence for EdgeMatchings<'_> {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn is_independent(&self, s: &ElementSet) -> bool {
        self.graph.is_matching(s)
    }

    fn can_extend(&self, s: &ElementSet, e: Element) -> bool {
        let (l, r) = self.graph.edge(e);
        !s.contains(e)
            && s.iter().all(|id| {
                let (ll, rr) = self.graph.edge(id);
                ll != l && rr != r
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest matching by trying every edge subset.
    fn brute_matching(g: &BipartiteGraph, left: &ElementSet) -> usize {
        let m = g.edge_count();
        (0u64..1 << m)
            .map(|bits| ElementSet::from_bits(m, bits))
            .filter(|s| g.is_matching(s) && s.iter().all(|id| left.contains(g.edge(id).0)))
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matching_examples() {
        let k22 = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(maximum_matching(&k22, &ElementSet::empty(2)), 0);
        assert_eq!(maximum_matching(&k22, &ElementSet::full(2)), 2);
        let star = BipartiteGraph::new(3, 1, vec![(0, 0), (1, 0), (2, 0)]).unwrap();
        assert_eq!(maximum_matching(&star, &ElementSet::full(3)), 1);
        assert_eq!(brute_matching(&star, &ElementSet::full(3)), 1);
    }

    #[test]
    fn transversal_independence_example() {
        let g = BipartiteGraph::new(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        let t = TransversalMatroid::new(g);
        assert!(!t.is_independent(&ElementSet::full(2)));
        assert!(t.is_independent(&ElementSet::from_elements(2, [1])));
    }

    #[test]
    fn augmenting_path_needed() {
        // Greedy without augmentation would match 0-0 and strand 1.
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(maximum_matching(&g, &ElementSet::full(2)), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(BipartiteGraph::new(1, 1, vec![(0, 1)]).is_err());
        assert!(BipartiteGraph::new(1, 1, vec![(0, 0), (0, 0)]).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (nl, nr) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
            let mut edges = Vec::new();
            for l in 0..nl {
                for r in 0..nr {
                    if edges.len() < 12 && rng.gen_bool(0.5) {
                        edges.push((l, r));
                    }
                }
            }
            let g = BipartiteGraph::new(nl, nr, edges).unwrap();
            for bits in 0u64..1 << nl {
                let left = ElementSet::from_bits(nl, bits);
                assert_eq!(maximum_matching(&g, &left), brute_matching(&g, &left));
            }
        }
    }
}
