//! Exact checks of the sample-size conditions and of the structural
//! inequalities behind them, plus an empirical check of the vertex-sample
//! concentration events.

mod bounds;
mod buckets;
mod conditions;
mod sampling;

pub use bounds::{
    structural_checks, verify_degeneracy_sum_square_bound, verify_max_out_degree,
    verify_norm_inequalities, verify_sum_square_bound, BoundCheck, DegeneracyRatio,
};
pub use buckets::{bucket_decomposition, degree_bucket, BucketCell, BucketDecomposition};
pub use conditions::{
    certified_plan, check_conditions, check_conditions_with, ConditionConstants, ConditionReport,
};
pub use sampling::{vertex_sample_events, VertexSampleEvents};
