//! Applications of the gap engine: nearest-integer distances, the classical
//! three-gap case, piecewise-linear maps, and the cube-root-of-15 scan.

pub mod nearest;
pub mod pwl;
pub mod remark;

pub use nearest::{
    classical_config, classical_report, classical_three_gap, nearest_circle_config, nearest_int,
    nearest_int_gaps, nearest_int_gaps_via_circle, NearestIntReport, NEAREST_INT_BOUND,
};
pub use pwl::{
    pwl_decompose, pwl_gaps, pwl_gaps_empirical, Piece, PwlDecomposition, PwlFunction, PwlPart, PwlReport,
};
pub use remark::{
    cube_root_15, scan_nearest_int, search_gap_values, search_remark, GapConvention, RemarkMatch,
    RemarkSearch, ScanStep, REMARK_DECIMALS, REMARK_GAPS,
};
