//! Contact and positivity sets on the thin plane and their geometry.

pub mod export;
mod metric;
mod shape;
mod thinset;

pub use metric::{
    directed_hausdorff, distance_grid, distance_to_set, eta_bar, hausdorff, hausdorff_points, set_separation, EtaBar,
};
pub use shape::{connected_components, convex_hull, convexity_check, encloses, star_shaped};
pub use thinset::{extract_thin_sets, ThinSet, ThinSets};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("empty {0}")]
    EmptySet(&'static str),
    #[error("mask has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("function is not positive on the boundary of the region")]
    NonPositiveOnBoundary,
}

/// Summary of a plane set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetReport {
    pub node_count: usize,
    pub component_count: usize,
    /// `[xmin, ymin, xmax, ymax]` per component.
    pub bounding_boxes: Vec<[f64; 4]>,
    pub hausdorff: BTreeMap<String, f64>,
    pub star_shaped: Option<bool>,
    pub star_center: [f64; 2],
    pub convex: Option<bool>,
}

pub fn set_report(set: &ThinSet, center: [f64; 2]) -> SetReport {
    let comps = connected_components(set);
    let bounding_boxes = comps
        .iter()
        .map(|c| {
            c.points().iter().fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, p| {
                [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])]
            })
        })
        .collect();
    SetReport {
        node_count: set.count(),
        component_count: comps.len(),
        bounding_boxes,
        hausdorff: BTreeMap::new(),
        star_shaped: star_shaped(set, &center).ok(),
        star_center: center,
        convex: convexity_check(set).ok(),
    }
}
