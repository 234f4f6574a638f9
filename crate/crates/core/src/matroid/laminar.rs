use std::fmt;

use crate::error::{Error, Result};
use crate::set::{Element, ElementSet};

/// One capacity constraint `|T ∩ members| <= capacity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub members: ElementSet,
    pub capacity: usize,
}

impl Constraint {
    pub fn new(members: ElementSet, capacity: usize) -> Self {
        Constraint { members, capacity }
    }

    pub fn is_satisfied_by(&self, s: &ElementSet) -> bool {
        s.intersection_len(&self.members) <= self.capacity
    }
}

/// First violated well-formedness condition of a laminar family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaminarViolation {
    /// Two constraint sets intersect without one containing the other.
    Crossing { first: usize, second: usize },
    /// The same member set appears twice.
    Duplicate { first: usize, second: usize },
    /// `inner ⊂ outer` but `μ(inner) >= μ(outer)`.
    NonIncreasingCapacity { inner: usize, outer: usize },
}

impl fmt::Display for LaminarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaminarViolation::Crossing { first, second } => {
                write!(
                    f,
                    "constraints {first} and {second} cross (neither disjoint nor nested)"
                )
            }
            LaminarViolation::Duplicate { first, second } => {
                write!(
                    f,
                    "constraints {first} and {second} have identical member sets"
                )
            }
            LaminarViolation::NonIncreasingCapacity { inner, outer } => write!(
                f,
                "constraint {inner} is nested in {outer} without a strictly smaller capacity"
            ),
        }
    }
}

/// Checks laminarity, distinctness and strict capacity growth along chains.
pub fn validate_laminar(constraints: &[Constraint]) -> Result<(), LaminarViolation> {
    for (i, a) in constraints.iter().enumerate() {
        for (j, b) in constraints.iter().enumerate().skip(i + 1) {
            if a.members == b.members {
                return Err(LaminarViolation::Duplicate {
                    first: i,
                    second: j,
                });
            }
            let (inner, outer, small, big) = if a.members.len() <= b.members.len() {
                (i, j, a, b)
            } else {
                (j, i, b, a)
            };
            if small.members.is_disjoint(&big.members) {
                continue;
            }
            if !small.members.is_subset(&big.members) {
                return Err(LaminarViolation::Crossing {
                    first: i,
                    second: j,
                });
            }
            if small.capacity >= big.capacity {
                return Err(LaminarViolation::NonIncreasingCapacity { inner, outer });
            }
        }
    }
    Ok(())
}

/// Capacity constraints on a laminar family of subsets.
///
/// The ground set itself is only a constraint if listed. Well-formedness is
/// checked by [`LaminarMatroid::validate`] rather than at construction, so
/// independence tests also work on families with redundant constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct LaminarMatroid {
    n: usize,
    constraints: Vec<Constraint>,
}

impl LaminarMatroid {
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for c in &constraints {
            if c.members.universe() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: c.members.universe(),
                });
            }
        }
        Ok(LaminarMatroid { n, constraints })
    }

    /// Convenience constructor from `(members, capacity)` pairs.
    pub fn from_lists(n: usize, lists: &[(&[Element], usize)]) -> Result<Self> {
        let mut constraints = Vec::with_capacity(lists.len());
        for (members, cap) in lists {
            if let Some(&bad) = members.iter().find(|&&e| e >= n) {
                return Err(Error::Config(format!(
                    "element {bad} outside ground set of size {n}"
                )));
            }
            constraints.push(Constraint::new(
                ElementSet::from_elements(n, members.iter().copied()),
                *cap,
            ));
        }
        Self::new(n, constraints)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn validate(&self) -> Result<(), LaminarViolation> {
        validate_laminar(&self.constraints)
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied_by(s))
    }

    /// Constraints sorted by `(size, members)`, the canonical serialization order.
    pub fn canonical(&self) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.sort_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then_with(|| a.members.cmp_lexicographic(&b.members))
                .then(a.capacity.cmp(&b.capacity))
        });
        LaminarMatroid {
            n: self.n,
            constraints,
        }
    }
}

/// At most `capacity` elements overall.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformMatroid {
    pub n: usize,
    pub capacity: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, capacity: usize) -> Self {
        UniformMatroid { n, capacity }
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        s.len() <= self.capacity
    }

    pub fn to_laminar(&self) -> LaminarMatroid {
        LaminarMatroid {
            n: self.n,
            constraints: vec![Constraint::new(ElementSet::full(self.n), self.capacity)],
        }
    }
}

/// Disjoint blocks covering the ground set, each with its own capacity.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionMatroid {
    n: usize,
    blocks: Vec<Constraint>,
}

impl PartitionMatroid {
    pub fn new(n: usize, blocks: Vec<Constraint>) -> Result<Self> {
        let mut seen = ElementSet::empty(n);
        for b in &blocks {
            if b.members.universe() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: b.members.universe(),
                });
            }
            if !seen.is_disjoint(&b.members) {
                return Err(Error::Config("partition blocks overlap".into()));
            }
            seen.union_with(&b.members);
        }
        if seen.len() != n {
            return Err(Error::Config(format!(
                "partition blocks cover {} of {n} elements",
                seen.len()
            )));
        }
        Ok(PartitionMatroid { n, blocks })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Constraint] {
        &self.blocks
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        self.blocks.iter().all(|b| b.is_satisfied_by(s))
    }

    pub fn to_laminar(&self) -> LaminarMatroid {
        LaminarMatroid {
            n: self.n,
            constraints: self.blocks.clone(),
        }
    }
}
