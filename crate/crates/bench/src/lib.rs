//! Seeded fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secretary_core::harness::{generate_instance, GeneratorParams, SystemKind, ValuationKind};
use secretary_core::matroid::BipartiteGraph;
use secretary_core::Instance;

pub fn laminar_coverage(n: usize, seed: u64) -> Instance {
    let params = GeneratorParams::new(SystemKind::Laminar, ValuationKind::Coverage, n);
    generate_instance(&params, seed, "bench")
        .unwrap()
        .build()
        .unwrap()
}

pub fn transversal_coverage(n_left: usize, seed: u64) -> Instance {
    let mut params = GeneratorParams::new(SystemKind::Transversal, ValuationKind::Coverage, n_left);
    params.density = 0.3;
    generate_instance(&params, seed, "bench")
        .unwrap()
        .build()
        .unwrap()
}

/// Random bipartite graph with every left node of degree at least one.
pub fn random_graph(n_left: usize, n_right: usize, density: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for l in 0..n_left {
        let forced = rng.gen_range(0..n_right);
        for r in 0..n_right {
            if r == forced || rng.gen_bool(density) {
                edges.push((l, r));
            }
        }
    }
    BipartiteGraph::new(n_left, n_right, edges).unwrap()
}
