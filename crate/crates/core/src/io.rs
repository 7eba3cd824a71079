//! Canonical JSON files: compact, edges as `[lo, hi]`, arrays sorted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::graph::{validate_instance, Edge, EdgeSet, Instance, ValidationOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub points: Vec<[i64; 2]>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub unhappy: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HappySetFile {
    pub edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleFile {
    pub cycle: Vec<usize>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            points: inst.graph.points().iter().map(|p| [p.x, p.y]).collect(),
            edges: inst.graph.edges().iter().map(|e| [e.lo(), e.hi()]).collect(),
            unhappy: inst.unhappy.iter().copied().collect(),
        }
    }

    pub fn into_instance(self, opts: ValidationOptions) -> Result<Instance> {
        validate_instance(
            self.points.into_iter().map(|[x, y]| Point::new(x, y)).collect(),
            self.edges.into_iter().map(|[a, b]| (a, b)).collect(),
            self.unhappy,
            opts,
        )
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_instance(text: &str, opts: ValidationOptions) -> Result<Instance> {
    parse::<InstanceFile>(text, "instance")?.into_instance(opts)
}

pub fn write_instance(inst: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from_instance(inst)).expect("plain data serializes")
}

pub fn read_happy_set(text: &str) -> Result<EdgeSet> {
    Ok(parse::<HappySetFile>(text, "happy set")?.edges)
}

pub fn write_happy_set(h: &EdgeSet) -> String {
    serde_json::to_string(&HappySetFile { edges: h.clone() }).expect("plain data serializes")
}

pub fn read_cycle(text: &str) -> Result<Vec<usize>> {
    Ok(parse::<CycleFile>(text, "cycle")?.cycle)
}

pub fn write_cycle(cycle: &[usize]) -> String {
    serde_json::to_string(&CycleFile { cycle: cycle.to_vec() }).expect("plain data serializes")
}

/// Convenience for tests and callers holding raw pairs.
pub fn edge_set(pairs: &[(usize, usize)]) -> EdgeSet {
    pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
}
