//! JSON instance files.
//!
//! An instance file holds a `metadata` object, a `system` and a `valuation`,
//! each tagged by `kind`. Sets are sorted element arrays. The canonical form
//! sorts constraints and blocks by size, then lexicographically, and is
//! written as pretty-printed JSON with a trailing newline.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matroid::{
    BipartiteGraph, Constraint, IndependenceSystem, LaminarIntersection, LaminarMatroid,
    PartitionMatroid, TransversalMatroid, UniformMatroid,
};
use crate::set::{Element, ElementSet};
use crate::valuation::{
    lift_to_edges, CoverageValuation, LinearValuation, TableValuation, ValuationOracle,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub members: Vec<Element>,
    pub capacity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminarSpec {
    pub constraints: Vec<ConstraintSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub n_left: usize,
    pub n_right: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Uniform {
        n: usize,
        capacity: usize,
    },
    Partition {
        n: usize,
        blocks: Vec<ConstraintSpec>,
    },
    Laminar {
        n: usize,
        constraints: Vec<ConstraintSpec>,
    },
    Transversal {
        n_left: usize,
        n_right: usize,
        edges: Vec<(usize, usize)>,
    },
    LaminarIntersection {
        n: usize,
        matroids: Vec<LaminarSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ValuationSpec {
    Linear {
        weights: Vec<f64>,
    },
    Coverage {
        item_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    EdgeLifted {
        base: Box<ValuationSpec>,
        graph: GraphSpec,
    },
    /// Values indexed by subset bitmask over `n` elements.
    Table {
        n: usize,
        values: Vec<f64>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub name: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Optimum computed by brute force when the file was written.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_opt: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub metadata: Metadata,
    pub system: SystemSpec,
    pub valuation: ValuationSpec,
}

fn constraint_spec(c: &Constraint) -> ConstraintSpec {
    ConstraintSpec {
        members: c.members.to_vec(),
        capacity: c.capacity,
    }
}

fn canonical_constraints(list: &[ConstraintSpec]) -> Vec<ConstraintSpec> {
    let mut out = list.to_vec();
    for c in &mut out {
        c.members.sort_unstable();
        c.members.dedup();
    }
    out.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
            .then_with(|| a.capacity.cmp(&b.capacity))
    });
    out
}

fn build_constraints(n: usize, list: &[ConstraintSpec]) -> Result<Vec<Constraint>> {
    list.iter()
        .map(|c| {
            if let Some(bad) = c.members.iter().find(|&&e| e >= n) {
                return Err(Error::Config(format!(
                    "constraint member {bad} is outside the ground set of {n}"
                )));
            }
            Ok(Constraint::new(
                ElementSet::from_elements(n, c.members.iter().copied()),
                c.capacity,
            ))
        })
        .collect()
}

impl GraphSpec {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        GraphSpec {
            n_left: g.n_left(),
            n_right: g.n_right(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn build(&self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.n_left, self.n_right, self.edges.clone())
    }
}

impl SystemSpec {
    pub fn from_system(system: &IndependenceSystem) -> Self {
        let list = |cs: &[Constraint]| {
            canonical_constraints(&cs.iter().map(constraint_spec).collect::<Vec<_>>())
        };
        match system {
            IndependenceSystem::Uniform(u) => SystemSpec::Uniform {
                n: u.n,
                capacity: u.capacity,
            },
            IndependenceSystem::Partition(p) => SystemSpec::Partition {
                n: p.ground_size(),
                blocks: list(p.blocks()),
            },
            IndependenceSystem::Laminar(l) => SystemSpec::Laminar {
                n: l.ground_size(),
                constraints: list(l.constraints()),
            },
            IndependenceSystem::Transversal(t) => {
                let g = GraphSpec::from_graph(t.graph());
                SystemSpec::Transversal {
                    n_left: g.n_left,
                    n_right: g.n_right,
                    edges: g.edges,
                }
            }
            IndependenceSystem::LaminarIntersection(x) => SystemSpec::LaminarIntersection {
                n: x.ground_size(),
                matroids: x
                    .matroids()
                    .iter()
                    .map(|m| LaminarSpec {
                        constraints: list(m.constraints()),
                    })
                    .collect(),
            },
        }
    }

    pub fn build(&self) -> Result<IndependenceSystem> {
        Ok(match self {
            SystemSpec::Uniform { n, capacity } => UniformMatroid::new(*n, *capacity).into(),
            SystemSpec::Partition { n, blocks } => {
                PartitionMatroid::new(*n, build_constraints(*n, blocks)?)?.into()
            }
            SystemSpec::Laminar { n, constraints } => {
                LaminarMatroid::new(*n, build_constraints(*n, constraints)?)?.into()
            }
            SystemSpec::Transversal {
                n_left,
                n_right,
                edges,
            } => TransversalMatroid::new(BipartiteGraph::new(*n_left, *n_right, edges.clone())?)
                .into(),
            SystemSpec::LaminarIntersection { n, matroids } => {
                let ms = matroids
                    .iter()
                    .map(|m| LaminarMatroid::new(*n, build_constraints(*n, &m.constraints)?))
                    .collect::<Result<Vec<_>>>()?;
                LaminarIntersection::new(ms)?.into()
            }
        })
    }

    fn canonical(&self) -> Self {
        match self {
            SystemSpec::Partition { n, blocks } => SystemSpec::Partition {
                n: *n,
                blocks: canonical_constraints(blocks),
            },
            SystemSpec::Laminar { n, constraints } => SystemSpec::Laminar {
                n: *n,
                constraints: canonical_constraints(constraints),
            },
            SystemSpec::LaminarIntersection { n, matroids } => SystemSpec::LaminarIntersection {
                n: *n,
                matroids: matroids
                    .iter()
                    .map(|m| LaminarSpec {
                        constraints: canonical_constraints(&m.constraints),
                    })
                    .collect(),
            },
            other => other.clone(),
        }
    }
}

impl ValuationSpec {
    pub fn from_valuation(v: &ValuationOracle) -> Self {
        match v {
            ValuationOracle::Linear(l) => ValuationSpec::Linear {
                weights: l.weights().to_vec(),
            },
            ValuationOracle::Coverage(c) => ValuationSpec::Coverage {
                item_weights: c.item_weights().to_vec(),
                covers: c.covers().iter().map(ElementSet::to_vec).collect(),
            },
            ValuationOracle::EdgeLifted(e) => ValuationSpec::EdgeLifted {
                base: Box::new(ValuationSpec::from_valuation(e.base())),
                graph: GraphSpec::from_graph(e.graph()),
            },
            ValuationOracle::Table(t) => ValuationSpec::Table {
                n: t.values().len().trailing_zeros() as usize,
                values: t.values().to_vec(),
            },
        }
    }

    pub fn build(&self) -> Result<ValuationOracle> {
        Ok(match self {
            ValuationSpec::Linear { weights } => LinearValuation::new(weights.clone())?.into(),
            ValuationSpec::Coverage {
                item_weights,
                covers,
            } => CoverageValuation::new(item_weights.clone(), covers.clone())?.into(),
            ValuationSpec::EdgeLifted { base, graph } => {
                lift_to_edges(base.build()?, graph.build()?)?.into()
            }
            ValuationSpec::Table { n, values } => TableValuation::new(*n, values.clone())?.into(),
        })
    }

    fn canonical(&self) -> Self {
        match self {
            ValuationSpec::Coverage {
                item_weights,
                covers,
            } => ValuationSpec::Coverage {
                item_weights: item_weights.clone(),
                covers: covers
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c.dedup();
                        c
                    })
                    .collect(),
            },
            ValuationSpec::EdgeLifted { base, graph } => ValuationSpec::EdgeLifted {
                base: Box::new(base.canonical()),
                graph: graph.clone(),
            },
            other => other.clone(),
        }
    }
}

impl InstanceSpec {
    pub fn from_instance(instance: &Instance, metadata: Metadata) -> Self {
        InstanceSpec {
            metadata,
            system: SystemSpec::from_system(instance.system()),
            valuation: ValuationSpec::from_valuation(instance.valuation()),
        }
    }

    /// Builds the instance; `metadata.n` must match the ground size.
    pub fn build(&self) -> Result<Instance> {
        let instance = Instance::new(self.system.build()?, self.valuation.build()?)?;
        if instance.ground_size() != self.metadata.n {
            return Err(Error::SizeMismatch {
                expected: self.metadata.n,
                found: instance.ground_size(),
            });
        }
        Ok(instance)
    }

    pub fn canonical(&self) -> Self {
        InstanceSpec {
            metadata: self.metadata.clone(),
            system: self.system.canonical(),
            valuation: self.valuation.canonical(),
        }
    }

    /// Canonical text form.
    pub fn to_canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.canonical())
            .expect("instance specs always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str, path: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: PathBuf::from(path),
        source,
    }
}

/// Reads and parses an instance file without building it.
pub fn load_spec(path: &Path) -> Result<InstanceSpec> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    InstanceSpec::from_json(&text, path)
}

/// Reads, parses and builds an instance file.
pub fn load_instance(path: &Path) -> Result<(InstanceSpec, Instance)> {
    let spec = load_spec(path)?;
    let instance = spec.build()?;
    Ok((spec, instance))
}

/// Writes the canonical form of `spec` to `path`.
pub fn save_spec(path: &Path, spec: &InstanceSpec) -> Result<()> {
    fs::write(path, spec.to_canonical_json()).map_err(io_error(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "metadata": {"name": "tiny", "n": 3},
  "system": {"kind": "laminar", "n": 3, "constraints": [
    {"members": [0, 1, 2], "capacity": 2},
    {"members": [1, 0], "capacity": 1}
  ]},
  "valuation": {"kind": "linear", "weights": [3.0, 2.0, 1.0]}
}"#;

    #[test]
    fn parses_and_canonicalizes() {
        let spec = InstanceSpec::from_json(SAMPLE, Path::new("x.json")).unwrap();
        let inst = spec.build().unwrap();
        assert_eq!(inst.system().kind(), "laminar");
        let text = spec.to_canonical_json();
        let again = InstanceSpec::from_json(&text, Path::new("y.json")).unwrap();
        assert_eq!(again.to_canonical_json(), text);
        match again.system {
            SystemSpec::Laminar { constraints, .. } => {
                assert_eq!(constraints[0].members, vec![0, 1])
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let bad = "{\n  \"metadata\": {\"name\": \"x\", \"n\": 1},\n  \"system\": {\"kind\": \"graphic\"}\n}";
        match InstanceSpec::from_json(bad, Path::new("bad.json")) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn transversal_round_trip() {
        let text = r#"{"metadata": {"name": "t", "n": 2},
            "system": {"kind": "transversal", "n_left": 2, "n_right": 1, "edges": [[0, 0], [1, 0]]},
            "valuation": {"kind": "coverage", "item_weights": [1.0, 2.0], "covers": [[1, 0], [1]]}}"#;
        let spec = InstanceSpec::from_json(text, Path::new("t.json")).unwrap();
        let inst = spec.build().unwrap();
        let back = InstanceSpec::from_instance(&inst, spec.metadata.clone());
        assert_eq!(back.to_canonical_json(), spec.to_canonical_json());
    }

    #[test]
    fn metadata_size_must_match() {
        let text = SAMPLE.replace("\"n\": 3}", "\"n\": 4}");
        let spec = InstanceSpec::from_json(&text, Path::new("x.json")).unwrap();
        assert!(spec.build().is_err());
    }
}
