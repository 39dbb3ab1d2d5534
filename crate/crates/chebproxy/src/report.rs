//! The document emitted by `solve`.

use chebproxy_core::{IntervalBox, RootRecord, SolveOutput};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub dimension: usize,
    pub interval: Vec<[f64; 2]>,
    pub roots: Vec<Root>,
    pub stats: Stats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub point: Vec<f64>,
    #[serde(rename = "box")]
    pub bounds: Bounds,
    pub residuals: Vec<f64>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub function_evals: usize,
    pub subdivisions: usize,
    pub max_depth: usize,
    /// Seconds.
    pub wall_time: f64,
}

impl Root {
    pub fn from_record(r: &RootRecord) -> Self {
        Root {
            point: r.point.clone(),
            bounds: Bounds {
                lower: r.bounding_box.lower().to_vec(),
                upper: r.bounding_box.upper().to_vec(),
            },
            residuals: r.residuals.clone(),
            flags: r.flags.names().into_iter().map(String::from).collect(),
        }
    }
}

impl Report {
    pub fn new(bbox: &IntervalBox, out: &SolveOutput, wall_time: f64) -> Self {
        Report {
            dimension: bbox.dims(),
            interval: bbox
                .lower()
                .iter()
                .zip(bbox.upper())
                .map(|(&l, &h)| [l, h])
                .collect(),
            roots: out.records.iter().map(Root::from_record).collect(),
            stats: Stats {
                function_evals: out.stats.function_evals,
                subdivisions: out.stats.subdivisions,
                max_depth: out.stats.max_depth,
                wall_time,
            },
        }
    }

    pub fn flagged(&self) -> bool {
        self.roots.iter().any(|r| !r.flags.is_empty())
    }

    /// The roots section alone, as compact JSON.
    pub fn roots_json(&self) -> String {
        serde_json::to_string(&self.roots).expect("reports always serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
