//! Exact rational convex geometry: hulls and face lattices, opposite normal
//! cones and fans, the digit-tile polytope machinery and image export.

mod cone;
mod hull;
mod lp;
mod render;
mod tile;

pub use cone::{normal_fan, opposite_normal_cone, Cone};
pub use hull::{
    convex_hull, extreme_count_2d, extreme_points, extreme_points_rat, hull2d, int_to_rat_point,
    Face, Polytope, RatPoint,
};
pub use lp::{in_cone_hull, in_convex_hull};
pub use render::{natural_cell, render_pgm, render_svg, RasterParams};
pub use tile::{
    digit_tile_hull, extreme_counts, facet_normal_eigencheck, polytope_test, rat, tile_points,
    FacetEigenReport, PolytopeStatus, TileApproximation,
};
