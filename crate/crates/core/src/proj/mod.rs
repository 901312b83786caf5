//! Exact projective kernel: canonical points, lines of the plane, maps, cross
//! ratios and harmonic solves.

mod line;
mod map;
mod point;
mod ratio;

pub use line::{join_points, meet_coplanar_lines, meet_lines, project_vertical, reflect_r, ProjLine2};
pub use map::{apply_map, axes_normalization_map, ProjMap};
pub use point::{p1, p1q, p2, p2q, ProjPoint};
pub use ratio::{
    bracket, cross_ratio4, cross_ratio6, harmonic4_relation, harmonic6_relation, solve_harmonic4,
    solve_harmonic6,
};
