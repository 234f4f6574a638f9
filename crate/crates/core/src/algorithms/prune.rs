use crate::error::{Error, Result};
use crate::matroid::{BipartiteGraph, Constraint, IndependenceSystem, LaminarMatroid};
use crate::set::ElementSet;

/// Drops every constraint set that the candidates overflow:
/// `S = N ∖ ⋃ {N ∩ B : |N ∩ B| > μ(B)}`.
pub fn prune_by_constraints(candidates: &ElementSet, constraints: &[Constraint]) -> ElementSet {
    let mut kept = candidates.clone();
    for c in constraints {
        if candidates.intersection_len(&c.members) > c.capacity {
            kept.difference_with(&c.members);
        }
    }
    kept
}

pub fn prune_laminar(candidates: &ElementSet, matroid: &LaminarMatroid) -> ElementSet {
    prune_by_constraints(candidates, matroid.constraints())
}

/// Keeps an edge iff no other candidate edge shares its right node.
///
/// Candidates must not share left nodes.
pub fn prune_transversal(graph: &BipartiteGraph, candidates: &ElementSet) -> Result<ElementSet> {
    let mut left_used = ElementSet::empty(graph.n_left());
    let mut right_count = vec![0usize; graph.n_right()];
    for id in candidates {
        let (l, r) = graph.edge(id);
        if !left_used.insert(l) {
            return Err(Error::ContractViolation(format!(
                "candidate edges share left node {l}"
            )));
        }
        right_count[r] += 1;
    }
    Ok(ElementSet::from_elements(
        candidates.universe(),
        candidates
            .iter()
            .filter(|&id| right_count[graph.edge(id).1] == 1),
    ))
}

/// Pruning rule for the matroid simulation, derived from the system.
#[derive(Clone, Debug, PartialEq)]
pub struct Pruner {
    constraints: Vec<Constraint>,
}

impl Pruner {
    pub fn from_constraints(constraints: Vec<Constraint>) -> Self {
        Pruner { constraints }
    }

    /// Whole-constraint pruning for uniform, partition, laminar and laminar
    /// intersection systems. Transversal systems go through the matching
    /// simulation instead.
    pub fn for_system(system: &IndependenceSystem) -> Result<Self> {
        system
            .laminar_constraints()
            .map(Self::from_constraints)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no constraint pruning for {} systems; use the matching simulation",
                    system.kind()
                ))
            })
    }

    pub fn prune(&self, candidates: &ElementSet) -> ElementSet {
        prune_by_constraints(candidates, &self.constraints)
    }
}
