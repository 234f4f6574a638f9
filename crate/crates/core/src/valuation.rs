//! Non-negative monotone submodular valuation oracles.

use std::fmt;

use crate::error::{check_cap, Error, Result};
use crate::limits::{MAX_VALIDATOR_N, VALUE_TOLERANCE};
use crate::matroid::BipartiteGraph;
use crate::set::{Element, ElementSet};

/// A set function over a ground set `{0, .., n-1}`.
pub trait SetFunction: Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, s: &ElementSet) -> f64;

    /// `f(s ∪ {e}) - f(s)`, zero when `e ∈ s`.
    fn marginal(&self, s: &ElementSet, e: Element) -> f64 {
        if s.contains(e) {
            0.0
        } else {
            self.value(&s.with(e)) - self.value(s)
        }
    }
}

/// `f(S) = Σ_{e∈S} w_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearValuation {
    weights: Vec<f64>,
}

impl LinearValuation {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Config(format!(
                "linear weight {w} is not a non-negative number"
            )));
        }
        Ok(LinearValuation { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SetFunction for LinearValuation {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        s.iter().fold(0.0, |acc, e| acc + self.weights[e])
    }
}

/// Weighted coverage: `f(S)` is the total weight of items covered by `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverageValuation {
    item_weights: Vec<f64>,
    covers: Vec<ElementSet>,
}

impl CoverageValuation {
    /// `covers[e]` lists the items element `e` covers.
    pub fn new(item_weights: Vec<f64>, covers: Vec<Vec<usize>>) -> Result<Self> {
        let m = item_weights.len();
        if let Some(w) = item_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Config(format!(
                "item weight {w} is not a non-negative number"
            )));
        }
        let mut sets = Vec::with_capacity(covers.len());
        for (e, items) in covers.into_iter().enumerate() {
            if let Some(bad) = items.iter().find(|&&i| i >= m) {
                return Err(Error::Config(format!(
                    "element {e} covers item {bad}, but only {m} items exist"
                )));
            }
            sets.push(ElementSet::from_elements(m, items));
        }
        Ok(CoverageValuation {
            item_weights,
            covers: sets,
        })
    }

    pub fn item_weights(&self) -> &[f64] {
        &self.item_weights
    }

    pub fn covers(&self) -> &[ElementSet] {
        &self.covers
    }

    pub fn covered_items(&self, s: &ElementSet) -> ElementSet {
        let mut items = ElementSet::empty(self.item_weights.len());
        for e in s {
            items.union_with(&self.covers[e]);
        }
        items
    }
}

impl SetFunction for CoverageValuation {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        self.covered_items(s)
            .iter()
            .fold(0.0, |acc, i| acc + self.item_weights[i])
    }
}

/// Explicit value table indexed by subset bitmask, normalized so `f(∅) = 0`.
///
/// Used for hand-built functions in validation files; nothing guarantees
/// submodularity, which is what the validator is for.
#[derive(Clone, Debug, PartialEq)]
pub struct TableValuation {
    n: usize,
    values: Vec<f64>,
}

impl TableValuation {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_cap("table valuation ground set", n, MAX_VALIDATOR_N)?;
        if values.len() != 1 << n {
            return Err(Error::Config(format!(
                "table over {n} elements needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("table values must be finite".into()));
        }
        let base = values[0];
        let values = values.into_iter().map(|v| v - base).collect();
        Ok(TableValuation { n, values })
    }

    /// Tabulates `f` over all subsets of `{0, .., n-1}`.
    pub fn from_fn(n: usize, f: impl Fn(&ElementSet) -> f64) -> Result<Self> {
        check_cap("table valuation ground set", n, MAX_VALIDATOR_N)?;
        let values = (0u64..1 << n)
            .map(|b| f(&ElementSet::from_bits(n, b)))
            .collect();
        Self::new(n, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl SetFunction for TableValuation {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: &ElementSet) -> f64 {
        self.values[s.bits() as usize]
    }
}

/// A valuation on left nodes extended to edges: `f(E') = base(L ∩ E')`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeLiftedValuation {
    base: Box<ValuationOracle>,
    graph: BipartiteGraph,
}

impl EdgeLiftedValuation {
    pub fn base(&self) -> &ValuationOracle {
        &self.base
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }
}

impl SetFunction for EdgeLiftedValuation {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        self.base.value(&self.graph.left_endpoints(s))
    }
}

/// Lifts a valuation on the left nodes of `graph` to its edge set.
pub fn lift_to_edges(base: ValuationOracle, graph: BipartiteGraph) -> Result<EdgeLiftedValuation> {
    if base.ground_size() != graph.n_left() {
        return Err(Error::SizeMismatch {
            expected: graph.n_left(),
            found: base.ground_size(),
        });
    }
    Ok(EdgeLiftedValuation {
        base: Box::new(base),
        graph,
    })
}

/// Every valuation family that can be loaded from an instance file.
#[derive(Clone, Debug, PartialEq)]
pub enum ValuationOracle {
    Linear(LinearValuation),
    Coverage(CoverageValuation),
    EdgeLifted(EdgeLiftedValuation),
    Table(TableValuation),
}

impl ValuationOracle {
    pub fn kind(&self) -> &'static str {
        match self {
            ValuationOracle::Linear(_) => "linear",
            ValuationOracle::Coverage(_) => "coverage",
            ValuationOracle::EdgeLifted(_) => "edge_lifted",
            ValuationOracle::Table(_) => "table",
        }
    }

    /// Value with a ground-size check.
    pub fn eval(&self, s: &ElementSet) -> Result<f64> {
        self.check_size(s)?;
        Ok(self.value(s))
    }

    /// Marginal with a ground-size check.
    pub fn marginal_checked(&self, s: &ElementSet, e: Element) -> Result<f64> {
        self.check_size(s)?;
        if e >= self.ground_size() {
            return Err(Error::Config(format!(
                "element {e} outside ground set of size {}",
                self.ground_size()
            )));
        }
        Ok(self.marginal(s, e))
    }

    fn check_size(&self, s: &ElementSet) -> Result<()> {
        if s.universe() == self.ground_size() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.ground_size(),
                found: s.universe(),
            })
        }
    }
}

impl SetFunction for ValuationOracle {
    fn ground_size(&self) -> usize {
        match self {
            ValuationOracle::Linear(v) => v.ground_size(),
            ValuationOracle::Coverage(v) => v.ground_size(),
            ValuationOracle::EdgeLifted(v) => v.ground_size(),
            ValuationOracle::Table(v) => v.ground_size(),
        }
    }

    fn value(&self, s: &ElementSet) -> f64 {
        match self {
            ValuationOracle::Linear(v) => v.value(s),
            ValuationOracle::Coverage(v) => v.value(s),
            ValuationOracle::EdgeLifted(v) => v.value(s),
            ValuationOracle::Table(v) => v.value(s),
        }
    }
}

impl From<LinearValuation> for ValuationOracle {
    fn from(v: LinearValuation) -> Self {
        ValuationOracle::Linear(v)
    }
}

impl From<CoverageValuation> for ValuationOracle {
    fn from(v: CoverageValuation) -> Self {
        ValuationOracle::Coverage(v)
    }
}

impl From<EdgeLiftedValuation> for ValuationOracle {
    fn from(v: EdgeLiftedValuation) -> Self {
        ValuationOracle::EdgeLifted(v)
    }
}

impl From<TableValuation> for ValuationOracle {
    fn from(v: TableValuation) -> Self {
        ValuationOracle::Table(v)
    }
}

/// A view of an oracle that only answers queries over seen elements.
///
/// Online drivers hand this to the greedy subroutine; a query touching an
/// unseen element is a bug in the driver and panics.
pub struct SeenView<'a, F: ?Sized> {
    inner: &'a F,
    seen: ElementSet,
}

impl<'a, F: SetFunction + ?Sized> SeenView<'a, F> {
    pub fn new(inner: &'a F) -> Self {
        SeenView {
            inner,
            seen: ElementSet::empty(inner.ground_size()),
        }
    }

    pub fn reveal(&mut self, e: Element) {
        self.seen.insert(e);
    }

    pub fn reveal_all(&mut self, s: &ElementSet) {
        self.seen.union_with(s);
    }

    pub fn seen(&self) -> &ElementSet {
        &self.seen
    }
}

impl<F: SetFunction + ?Sized> SetFunction for SeenView<'_, F> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        assert!(
            s.is_subset(&self.seen),
            "contract violation: valuation queried on unseen elements {}",
            s.difference(&self.seen)
        );
        self.inner.value(s)
    }
}

/// Where a candidate valuation stops being monotone or submodular.
#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample {
    /// `f(s ∪ {e}) < f(s)`.
    NotMonotone {
        s: ElementSet,
        e: Element,
        before: f64,
        after: f64,
    },
    /// `f_s(e) < f_t(e)` with `s ⊂ t`, `e ∉ t`.
    NotSubmodular {
        s: ElementSet,
        t: ElementSet,
        e: Element,
        gain_small: f64,
        gain_large: f64,
    },
    /// `f(∅) != 0` or a negative value.
    NotNormalized { s: ElementSet, value: f64 },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::NotMonotone { s, e, before, after } => write!(
                f,
                "not monotone: f({s}) = {before} but adding {e} gives {after}"
            ),
            Counterexample::NotSubmodular {
                s,
                t,
                e,
                gain_small,
                gain_large,
            } => write!(
                f,
                "not submodular: gain of {e} is {gain_small} on {s} but {gain_large} on superset {t}"
            ),
            Counterexample::NotNormalized { s, value } => {
                write!(f, "not normalized: f({s}) = {value}")
            }
        }
    }
}

/// Exhaustive check of normalization, monotonicity and diminishing returns.
///
/// Diminishing returns is checked on one-element extensions `t = s ∪ {x}`,
/// which implies it for all `s ⊆ t` by telescoping. Comparisons allow an
/// absolute slack of `1e-9`.
pub fn verify_monotone_submodular<F: SetFunction + ?Sized>(
    f: &F,
) -> Result<Result<(), Counterexample>> {
    let n = f.ground_size();
    check_cap("ground set for submodularity check", n, MAX_VALIDATOR_N)?;
    let values: Vec<f64> = (0u64..1 << n)
        .map(|b| f.value(&ElementSet::from_bits(n, b)))
        .collect();
    let set = |b: u64| ElementSet::from_bits(n, b);
    for (b, &v) in values.iter().enumerate() {
        if v < -VALUE_TOLERANCE || (b == 0 && v.abs() > VALUE_TOLERANCE) {
            return Ok(Err(Counterexample::NotNormalized {
                s: set(b as u64),
                value: v,
            }));
        }
    }
    for b in 0u64..1 << n {
        for e in (0..n).filter(|e| b >> e & 1 == 0) {
            let (before, after) = (values[b as usize], values[(b | 1 << e) as usize]);
            if after < before - VALUE_TOLERANCE {
                return Ok(Err(Counterexample::NotMonotone {
                    s: set(b),
                    e,
                    before,
                    after,
                }));
            }
        }
    }
    for b in 0u64..1 << n {
        for x in (0..n).filter(|x| b >> x & 1 == 0) {
            let t = b | 1 << x;
            for e in (0..n).filter(|e| t >> e & 1 == 0) {
                let gain_small = values[(b | 1 << e) as usize] - values[b as usize];
                let gain_large = values[(t | 1 << e) as usize] - values[t as usize];
                if gain_small < gain_large - VALUE_TOLERANCE {
                    return Ok(Err(Counterexample::NotSubmodular {
                        s: set(b),
                        t: set(t),
                        e,
                        gain_small,
                        gain_large,
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}
