//! Finite pseudometric spaces with exact rational distances.
//!
//! The crate covers the zero-distance equivalence and metric reflection,
//! the open-ball topology of a finite space, pseudoisometries and isometry
//! search, superspace constructions, and seeded instance generators used by
//! the property suites.

#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod dist;
pub mod error;
pub mod morphisms;
pub mod reflection;
pub mod report;
pub mod space;
pub mod topology;
pub mod union_find;
pub mod zero;

pub use constructions::{
    check_cec_minimality, completion_glue, glue_zero_point, in_cec, is_superspace, random_space,
    random_superspace, Embedding, GenParams,
};
pub use dist::Dist;
pub use error::{Error, Result};
pub use morphisms::{
    are_pseudoisometric, brute_force_pseudoisometry, compose, find_isometry, induced_reflection_map,
    is_distance_preserving, is_isometry, is_pseudoisometry, IsoSearchStats, PointMap,
};
pub use reflection::{check_well_defined, metric_reflection, projection_as_pseudoisometry, Reflection};
pub use report::{Report, Violation};
pub use space::{is_metric, validate_pseudometric, Space, Subset};
pub use topology::{
    boundary, closed_via_completeness, closure, complete_via_boundary, interior, is_cauchy,
    is_closed, is_open, limit_points, open_ball, EpSequence,
};
pub use zero::{class_of, saturate, zero_classes, Partition};
