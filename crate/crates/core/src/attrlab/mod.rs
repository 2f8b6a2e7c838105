mod fiber;
mod report;

pub use fiber::{fiber_count_real, generic_rotation, generic_rotation_from, Rotation, SpecializedFiber};
pub use report::{dex2, minimal_poly_coordinate, mfs_sample, AttributeReport, DexResult, MinimalPolyCoordinate};
