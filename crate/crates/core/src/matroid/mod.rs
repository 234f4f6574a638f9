//! Ground sets and the independence systems used by the secretary algorithms.

mod laminar;
mod transversal;

pub use laminar::{
    validate_laminar, Constraint, LaminarMatroid, LaminarViolation, PartitionMatroid,
    UniformMatroid,
};
pub use transversal::{maximum_matching, BipartiteGraph, EdgeMatchings, TransversalMatroid};

use crate::error::{check_cap, Error, Result};
use crate::set::{Element, ElementSet};

/// Independence oracle over a ground set `{0, .., n-1}`.
///
/// Callers guarantee that queried sets live in the same ground set; the
/// checked entry point is [`IndependenceSystem::check_independent`].
pub trait Independence: Sync {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, s: &ElementSet) -> bool;

    /// Whether `s ∪ {e}` is independent, for independent `s` and `e ∉ s`.
    fn can_extend(&self, s: &ElementSet, e: Element) -> bool {
        self.is_independent(&s.with(e))
    }
}

/// Intersection of `k >= 1` laminar matroids over one ground set.
#[derive(Clone, Debug, PartialEq)]
pub struct LaminarIntersection {
    matroids: Vec<LaminarMatroid>,
}

impl LaminarIntersection {
    pub fn new(matroids: Vec<LaminarMatroid>) -> Result<Self> {
        let first = matroids.first().ok_or_else(|| {
            Error::Config("laminar intersection needs at least one matroid".into())
        })?;
        let n = first.ground_size();
        if let Some(m) = matroids.iter().find(|m| m.ground_size() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: m.ground_size(),
            });
        }
        Ok(LaminarIntersection { matroids })
    }

    pub fn matroids(&self) -> &[LaminarMatroid] {
        &self.matroids
    }

    pub fn ground_size(&self) -> usize {
        self.matroids[0].ground_size()
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        self.matroids.iter().all(|m| m.is_independent(s))
    }
}

/// Every independence system the algorithms run on.
#[derive(Clone, Debug, PartialEq)]
pub enum IndependenceSystem {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Laminar(LaminarMatroid),
    Transversal(TransversalMatroid),
    LaminarIntersection(LaminarIntersection),
}

impl IndependenceSystem {
    pub fn kind(&self) -> &'static str {
        match self {
            IndependenceSystem::Uniform(_) => "uniform",
            IndependenceSystem::Partition(_) => "partition",
            IndependenceSystem::Laminar(_) => "laminar",
            IndependenceSystem::Transversal(_) => "transversal",
            IndependenceSystem::LaminarIntersection(_) => "laminar_intersection",
        }
    }

    /// Independence with a ground-size check.
    pub fn check_independent(&self, s: &ElementSet) -> Result<bool> {
        let n = self.ground_size();
        if s.universe() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: s.universe(),
            });
        }
        Ok(self.is_independent(s))
    }

    /// Whether the system is a single matroid (intersections are not).
    pub fn is_matroid(&self) -> bool {
        !matches!(self, IndependenceSystem::LaminarIntersection(m) if m.matroids().len() > 1)
    }

    /// Laminar constraints describing the system, when it has them.
    ///
    /// Intersections contribute the constraints of every member; transversal
    /// matroids have none.
    pub fn laminar_constraints(&self) -> Option<Vec<Constraint>> {
        match self {
            IndependenceSystem::Uniform(u) => Some(u.to_laminar().constraints().to_vec()),
            IndependenceSystem::Partition(p) => Some(p.blocks().to_vec()),
            IndependenceSystem::Laminar(l) => Some(l.constraints().to_vec()),
            IndependenceSystem::LaminarIntersection(x) => Some(
                x.matroids()
                    .iter()
                    .flat_map(|m| m.constraints().iter().cloned())
                    .collect(),
            ),
            IndependenceSystem::Transversal(_) => None,
        }
    }
}

impl Independence for IndependenceSystem {
    fn ground_size(&self) -> usize {
        match self {
            IndependenceSystem::Uniform(u) => u.n,
            IndependenceSystem::Partition(p) => p.ground_size(),
            IndependenceSystem::Laminar(l) => l.ground_size(),
            IndependenceSystem::Transversal(t) => t.ground_size(),
            IndependenceSystem::LaminarIntersection(x) => x.ground_size(),
        }
    }

    fn is_independent(&self, s: &ElementSet) -> bool {
        match self {
            IndependenceSystem::Uniform(u) => u.is_independent(s),
            IndependenceSystem::Partition(p) => p.is_independent(s),
            IndependenceSystem::Laminar(l) => l.is_independent(s),
            IndependenceSystem::Transversal(t) => t.is_independent(s),
            IndependenceSystem::LaminarIntersection(x) => x.is_independent(s),
        }
    }
}

impl From<UniformMatroid> for IndependenceSystem {
    fn from(m: UniformMatroid) -> Self {
        IndependenceSystem::Uniform(m)
    }
}

impl From<PartitionMatroid> for IndependenceSystem {
    fn from(m: PartitionMatroid) -> Self {
        IndependenceSystem::Partition(m)
    }
}

impl From<LaminarMatroid> for IndependenceSystem {
    fn from(m: LaminarMatroid) -> Self {
        IndependenceSystem::Laminar(m)
    }
}

impl From<TransversalMatroid> for IndependenceSystem {
    fn from(m: TransversalMatroid) -> Self {
        IndependenceSystem::Transversal(m)
    }
}

impl From<LaminarIntersection> for IndependenceSystem {
    fn from(m: LaminarIntersection) -> Self {
        IndependenceSystem::LaminarIntersection(m)
    }
}

/// Size of a maximum independent set, by cardinality greedy.
///
/// Only valid for matroids; intersections of two or more laminar matroids
/// are refused.
pub fn rank(system: &IndependenceSystem) -> Result<usize> {
    if !system.is_matroid() {
        return Err(Error::Unsupported(
            "rank of an intersection of matroids is not computed by greedy".into(),
        ));
    }
    let n = system.ground_size();
    let mut basis = ElementSet::empty(n);
    for e in 0..n {
        if system.can_extend(&basis, e) {
            basis.insert(e);
        }
    }
    Ok(basis.len())
}

/// Every independent set of a system exactly once, in depth-first order.
///
/// A dependent set is never extended, so the walk only visits independent
/// sets and their immediate dependent extensions.
pub fn enumerate_independent_sets<'a, I: Independence + ?Sized>(
    system: &'a I,
    max_n: usize,
) -> Result<IndependentSets<'a, I>> {
    let n = system.ground_size();
    check_cap("ground set for enumeration", n, max_n)?;
    Ok(IndependentSets {
        system,
        stack: vec![(ElementSet::empty(n), 0)],
    })
}

pub struct IndependentSets<'a, I: ?Sized> {
    system: &'a I,
    // (independent set, next element to try adding)
    stack: Vec<(ElementSet, Element)>,
}

impl<I: Independence + ?Sized> Iterator for IndependentSets<'_, I> {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let (set, from) = self.stack.pop()?;
        let n = self.system.ground_size();
        // push in reverse so smaller elements are explored first
        for e in (from..n).rev() {
            if self.system.can_extend(&set, e) {
                self.stack.push((set.with(e), e + 1));
            }
        }
        Some(set)
    }
}
