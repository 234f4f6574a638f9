use crate::error::{check_cap, Result};
use crate::limits::{MAX_BRUTE_FORCE_N, MAX_MATCHING_EDGES, VALUE_TOLERANCE};
use crate::matroid::{enumerate_independent_sets, BipartiteGraph, Independence};
use crate::set::ElementSet;
use crate::valuation::SetFunction;

/// An optimal value with the set attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub value: f64,
    pub witness: ElementSet,
}

impl Optimum {
    fn offer(&mut self, value: f64, set: &ElementSet) {
        let better = value > self.value + VALUE_TOLERANCE;
        let tied = (value - self.value).abs() <= VALUE_TOLERANCE;
        if better || (tied && set.cmp_lexicographic(&self.witness).is_lt()) {
            self.value = value;
            self.witness = set.clone();
        }
    }
}

/// Maximum of `f` over all independent sets.
///
/// Values within the comparison tolerance count as equal, and the witness
/// is the lexicographically least maximizer.
pub fn brute_force_opt<I, F>(system: &I, f: &F) -> Result<Optimum>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    let n = system.ground_size();
    let mut best = Optimum {
        value: 0.0,
        witness: ElementSet::empty(n),
    };
    for set in enumerate_independent_sets(system, MAX_BRUTE_FORCE_N)? {
        best.offer(f.value(&set), &set);
    }
    Ok(best)
}

/// Maximum of an edge valuation over all matchings of `graph`.
pub fn brute_force_opt_matching<F>(graph: &BipartiteGraph, f: &F) -> Result<Optimum>
where
    F: SetFunction + ?Sized,
{
    let m = graph.edge_count();
    check_cap("edge set for matching enumeration", m, MAX_MATCHING_EDGES)?;
    let mut best = Optimum {
        value: 0.0,
        witness: ElementSet::empty(m),
    };
    let mut left_used = vec![false; graph.n_left()];
    let mut right_used = vec![false; graph.n_right()];
    let mut current = ElementSet::empty(m);
    extend_matching(
        graph,
        f,
        0,
        &mut current,
        &mut left_used,
        &mut right_used,
        &mut best,
    );
    Ok(best)
}

fn extend_matching<F: SetFunction + ?Sized>(
    graph: &BipartiteGraph,
    f: &F,
    from: usize,
    current: &mut ElementSet,
    left_used: &mut [bool],
    right_used: &mut [bool],
    best: &mut Optimum,
) {
    best.offer(f.value(current), current);
    for id in from..graph.edge_count() {
        let (l, r) = graph.edge(id);
        if left_used[l] || right_used[r] {
            continue;
        }
        left_used[l] = true;
        right_used[r] = true;
        current.insert(id);
        extend_matching(graph, f, id + 1, current, left_used, right_used, best);
        current.remove(id);
        left_used[l] = false;
        right_used[r] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{IndependenceSystem, UniformMatroid};
    use crate::valuation::{CoverageValuation, LinearValuation};

    #[test]
    fn matroid_examples() {
        let sys: IndependenceSystem = UniformMatroid::new(3, 2).into();
        let f = LinearValuation::new(vec![5.0, 3.0, 1.0]).unwrap();
        let opt = brute_force_opt(&sys, &f).unwrap();
        assert_eq!((opt.value, opt.witness.to_vec()), (8.0, vec![0, 1]));

        let cov = CoverageValuation::new(vec![5.0, 2.0], vec![vec![0], vec![0], vec![1]]).unwrap();
        let opt = brute_force_opt(&sys, &cov).unwrap();
        assert_eq!((opt.value, opt.witness.to_vec()), (7.0, vec![0, 2]));

        let empty: IndependenceSystem = UniformMatroid::new(3, 0).into();
        let opt = brute_force_opt(&empty, &f).unwrap();
        assert_eq!(opt.value, 0.0);
        assert!(opt.witness.is_empty());
    }

    #[test]
    fn matching_examples() {
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let f = LinearValuation::new(vec![4.0, 1.0, 1.0, 4.0]).unwrap();
        let opt = brute_force_opt_matching(&g, &f).unwrap();
        assert_eq!((opt.value, opt.witness.to_vec()), (8.0, vec![0, 3]));

        let none = BipartiteGraph::new(2, 2, vec![]).unwrap();
        let f0 = LinearValuation::new(vec![]).unwrap();
        let opt = brute_force_opt_matching(&none, &f0).unwrap();
        assert_eq!(opt.value, 0.0);

        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let f1 = LinearValuation::new(vec![2.5]).unwrap();
        assert_eq!(brute_force_opt_matching(&single, &f1).unwrap().value, 2.5);
    }

    #[test]
    fn refuses_oversized_inputs() {
        let sys: IndependenceSystem = UniformMatroid::new(21, 1).into();
        let f = LinearValuation::new(vec![1.0; 21]).unwrap();
        assert!(brute_force_opt(&sys, &f).is_err());
    }
}
