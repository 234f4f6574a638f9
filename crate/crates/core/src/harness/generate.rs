use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::format::{
    ConstraintSpec, InstanceSpec, LaminarSpec, Metadata, SystemSpec, ValuationSpec,
};
use crate::analysis::brute_force_opt;
use crate::error::{Error, Result};
use crate::limits::{MAX_BRUTE_FORCE_N, MAX_GROUND_SIZE};
use crate::seed::trial_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    Uniform,
    Partition,
    Laminar,
    Transversal,
    LaminarIntersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationKind {
    Linear,
    Coverage,
}

/// Size parameters for [`generate_instance`]; recorded in the file's metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub system: SystemKind,
    pub valuation: ValuationKind,
    /// Ground size (left nodes for transversal systems).
    pub n: usize,
    /// Levels below the root of each laminar tree.
    pub depth: usize,
    /// Number of laminar matroids in an intersection.
    pub copies: usize,
    pub n_right: usize,
    /// Edge probability of the bipartite graph.
    pub density: f64,
    /// Number of coverage items.
    pub items: usize,
}

impl GeneratorParams {
    pub fn new(system: SystemKind, valuation: ValuationKind, n: usize) -> Self {
        GeneratorParams {
            system,
            valuation,
            n,
            depth: 2,
            copies: 2,
            n_right: (n / 2).max(1),
            density: 0.5,
            items: 2 * n,
        }
    }

    fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 || self.n > MAX_GROUND_SIZE {
            return fail(format!("n = {} must lie in 1..={MAX_GROUND_SIZE}", self.n));
        }
        if self.system == SystemKind::Transversal {
            if self.n_right == 0 {
                return fail("a bipartite graph needs at least one right node".into());
            }
            if !(self.density > 0.0 && self.density <= 1.0) {
                return fail(format!("density {} must lie in (0, 1]", self.density));
            }
        }
        if self.system == SystemKind::LaminarIntersection && self.copies == 0 {
            return fail("an intersection needs at least one matroid".into());
        }
        if self.valuation == ValuationKind::Coverage && self.items == 0 {
            return fail("a coverage valuation needs at least one item".into());
        }
        Ok(())
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// A random laminar tree over a shuffled ground set.
///
/// Every node below the root splits its block into two or three parts; each
/// node's capacity is strictly larger than its children's.
fn laminar_tree<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Vec<ConstraintSpec> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut out = Vec::new();
    build_node(rng, &labels, depth, &mut out);
    out
}

fn build_node<R: Rng>(
    rng: &mut R,
    block: &[usize],
    levels: usize,
    out: &mut Vec<ConstraintSpec>,
) -> usize {
    let len = block.len();
    let capacity = if levels == 0 || len < 2 {
        if len < 2 {
            1
        } else {
            rng.gen_range(1..len)
        }
    } else {
        let parts = rng.gen_range(2..=len.min(3));
        let mut cuts: Vec<usize> = (1..len).collect();
        cuts.shuffle(rng);
        let mut cuts = cuts[..parts - 1].to_vec();
        cuts.sort_unstable();
        let mut start = 0;
        let mut widest = 0;
        for end in cuts.into_iter().chain([len]) {
            widest = widest.max(build_node(rng, &block[start..end], levels - 1, out));
            start = end;
        }
        let low = widest + 1;
        rng.gen_range(low..=low.max(len - 1))
    };
    let mut members = block.to_vec();
    members.sort_unstable();
    out.push(ConstraintSpec { members, capacity });
    capacity
}

fn partition_blocks<R: Rng>(rng: &mut R, n: usize) -> Vec<ConstraintSpec> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let count = rng.gen_range(1..=(n / 2).max(1));
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..count - 1].to_vec();
    cuts.sort_unstable();
    let mut start = 0;
    let mut blocks = Vec::new();
    for end in cuts.into_iter().chain([n]) {
        let mut members = labels[start..end].to_vec();
        members.sort_unstable();
        let capacity = if members.len() > 1 {
            rng.gen_range(1..members.len())
        } else {
            1
        };
        blocks.push(ConstraintSpec { members, capacity });
        start = end;
    }
    blocks
}

fn bipartite_edges<R: Rng>(
    rng: &mut R,
    n_left: usize,
    n_right: usize,
    density: f64,
) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for l in 0..n_left {
        let before = edges.len();
        for r in 0..n_right {
            if rng.gen_bool(density) {
                edges.push((l, r));
            }
        }
        if edges.len() == before {
            edges.push((l, rng.gen_range(0..n_right)));
        }
    }
    edges
}

fn distinct_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut weights: Vec<f64> = Vec::with_capacity(n);
    while weights.len() < n {
        let w = round2(rng.gen_range(1.0..100.0));
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    weights
}

fn coverage<R: Rng>(rng: &mut R, n: usize, items: usize) -> ValuationSpec {
    let item_weights = (0..items)
        .map(|_| round2(rng.gen_range(1.0..10.0)))
        .collect();
    let prob = (2.5 / items as f64).min(1.0);
    let covers = (0..n)
        .map(|_| {
            let mut c: Vec<usize> = (0..items).filter(|_| rng.gen_bool(prob)).collect();
            if c.is_empty() {
                c.push(rng.gen_range(0..items));
            }
            c
        })
        .collect();
    ValuationSpec::Coverage {
        item_weights,
        covers,
    }
}

/// Generates a random instance. The same parameters and seed always give the
/// same file. The optimum is recorded when the ground set is small enough
/// for brute force.
pub fn generate_instance(params: &GeneratorParams, seed: u64, name: &str) -> Result<InstanceSpec> {
    params.check()?;
    let mut rng = trial_rng(seed, 0);
    let n = params.n;
    let system = match params.system {
        SystemKind::Uniform => SystemSpec::Uniform {
            n,
            capacity: rng.gen_range(1..=(n / 2).max(1)),
        },
        SystemKind::Partition => SystemSpec::Partition {
            n,
            blocks: partition_blocks(&mut rng, n),
        },
        SystemKind::Laminar => SystemSpec::Laminar {
            n,
            constraints: laminar_tree(&mut rng, n, params.depth),
        },
        SystemKind::Transversal => SystemSpec::Transversal {
            n_left: n,
            n_right: params.n_right,
            edges: bipartite_edges(&mut rng, n, params.n_right, params.density),
        },
        SystemKind::LaminarIntersection => SystemSpec::LaminarIntersection {
            n,
            matroids: (0..params.copies)
                .map(|_| LaminarSpec {
                    constraints: laminar_tree(&mut rng, n, params.depth),
                })
                .collect(),
        },
    };
    let valuation = match params.valuation {
        ValuationKind::Linear => ValuationSpec::Linear {
            weights: distinct_weights(&mut rng, n),
        },
        ValuationKind::Coverage => coverage(&mut rng, n, params.items),
    };
    let mut spec = InstanceSpec {
        metadata: Metadata {
            name: name.to_string(),
            n,
            generator: Some(serde_json::to_value(params).expect("generator params serialize")),
            seed: Some(seed),
            expected_opt: None,
        },
        system,
        valuation,
    };
    if n <= MAX_BRUTE_FORCE_N {
        let instance = spec.build()?;
        spec.metadata.expected_opt =
            Some(brute_force_opt(instance.system(), instance.valuation())?.value);
    }
    Ok(spec.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::validate_laminar;
    use crate::valuation::verify_monotone_submodular;
    use crate::IndependenceSystem;

    #[test]
    fn laminar_generator_is_valid_and_deterministic() {
        let mut params = GeneratorParams::new(SystemKind::Laminar, ValuationKind::Coverage, 8);
        params.depth = 2;
        let a = generate_instance(&params, 7, "a").unwrap();
        let b = generate_instance(&params, 7, "a").unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        let inst = a.build().unwrap();
        match inst.system() {
            IndependenceSystem::Laminar(l) => assert!(validate_laminar(l.constraints()).is_ok()),
            _ => unreachable!(),
        }
        assert!(verify_monotone_submodular(inst.valuation())
            .unwrap()
            .is_ok());
        assert!(a.metadata.expected_opt.unwrap() > 0.0);
    }

    #[test]
    fn transversal_generator() {
        let mut params = GeneratorParams::new(SystemKind::Transversal, ValuationKind::Linear, 6);
        params.n_right = 4;
        let spec = generate_instance(&params, 1, "t").unwrap();
        let inst = spec.build().unwrap();
        assert_eq!(inst.ground_size(), 6);
    }

    #[test]
    fn rejects_bad_sizes() {
        let params = GeneratorParams::new(SystemKind::Uniform, ValuationKind::Linear, 0);
        assert!(generate_instance(&params, 1, "x").is_err());
        let mut params = GeneratorParams::new(SystemKind::Transversal, ValuationKind::Linear, 4);
        params.density = 0.0;
        assert!(generate_instance(&params, 1, "x").is_err());
    }
}
