use serde_json::{json, Value};

use crate::set::{Element, ElementSet};
use crate::valuation::SetFunction;

/// Full record of one algorithm run.
///
/// Sets are over the run's ground set: elements for matroid runs, edge ids
/// for matching runs. The per-element gains and the greedy order are filled
/// by the simulations only; online runs leave them empty.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    /// `H`: the sampled prefix (online) or the head-coin elements (simulation).
    pub sample: ElementSet,
    /// `M`: greedy solution on the sample.
    pub sample_greedy: ElementSet,
    /// `N`: elements that passed the greedy test.
    pub candidates: ElementSet,
    /// `S`: pruned candidates.
    pub pruned: ElementSet,
    /// `ALG`: accepted elements (equal to `pruned` for simulations).
    pub accepted: ElementSet,
    pub greedy_order: Vec<Element>,
    /// `w(e)`: marginal of `e` over `M` when it was selected.
    pub sample_gain: Vec<f64>,
    /// `g(e)`: marginal of `e` over `N` when it was selected.
    pub candidate_gain: Vec<f64>,
    /// Coin outcome of each greedy step, in `greedy_order`.
    pub coins: Vec<bool>,
}

impl RunTrace {
    pub(crate) fn new(n: usize) -> Self {
        RunTrace {
            sample: ElementSet::empty(n),
            sample_greedy: ElementSet::empty(n),
            candidates: ElementSet::empty(n),
            pruned: ElementSet::empty(n),
            accepted: ElementSet::empty(n),
            greedy_order: Vec::new(),
            sample_gain: Vec::new(),
            candidate_gain: Vec::new(),
            coins: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.sample.universe()
    }

    /// `w(s) = Σ_{e∈s} w(e)`; zero for online traces.
    pub fn weight(&self, s: &ElementSet) -> f64 {
        if self.sample_gain.is_empty() {
            return 0.0;
        }
        s.iter().fold(0.0, |acc, e| acc + self.sample_gain[e])
    }

    /// `g(s) = Σ_{e∈s} g(e)`; zero for online traces.
    pub fn candidate_weight(&self, s: &ElementSet) -> f64 {
        if self.candidate_gain.is_empty() {
            return 0.0;
        }
        s.iter().fold(0.0, |acc, e| acc + self.candidate_gain[e])
    }

    /// One JSON record with the sets and their values under `f`.
    pub fn to_json<F: SetFunction + ?Sized>(&self, f: &F) -> Value {
        json!({
            "H": self.sample.to_vec(),
            "M": self.sample_greedy.to_vec(),
            "N": self.candidates.to_vec(),
            "S": self.pruned.to_vec(),
            "ALG": self.accepted.to_vec(),
            "f_values": {
                "H": f.value(&self.sample),
                "M": f.value(&self.sample_greedy),
                "N": f.value(&self.candidates),
                "S": f.value(&self.pruned),
                "ALG": f.value(&self.accepted),
            },
        })
    }
}
