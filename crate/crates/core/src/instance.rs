use crate::error::{Error, Result};
use crate::matroid::IndependenceSystem;
use crate::valuation::{SetFunction, ValuationOracle};

/// An independence system paired with a valuation on the same ground set.
///
/// For transversal systems the valuation lives on the left nodes.
#[derive(Clone, Debug)]
pub struct Instance {
    system: IndependenceSystem,
    valuation: ValuationOracle,
}

impl Instance {
    pub fn new(system: IndependenceSystem, valuation: ValuationOracle) -> Result<Self> {
        let n = crate::matroid::Independence::ground_size(&system);
        if valuation.ground_size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: valuation.ground_size(),
            });
        }
        Ok(Instance { system, valuation })
    }

    pub fn system(&self) -> &IndependenceSystem {
        &self.system
    }

    pub fn valuation(&self) -> &ValuationOracle {
        &self.valuation
    }

    pub fn ground_size(&self) -> usize {
        self.valuation.ground_size()
    }
}
