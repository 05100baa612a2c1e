//! Monotone functions used by the constructions: the Cantor function,
//! Riesz–Nagy functions, nested-interval staircases, and full-measure
//! mappers built from them.

mod cantor;
mod grid;
mod mapper;
mod monotone;
mod riesz_nagy;
mod staircase;

pub use cantor::{enclose_cantor, eval_cantor, eval_cantor_with_budget, DEFAULT_DIGIT_BUDGET};
pub use grid::{PlacementGrid, MAX_GRID_LEVEL};
pub use mapper::{
    build_full_measure_mapper, build_full_measure_mapper_with, rational_intervals, verify_mapper, MapperConfig,
    MapperResult,
};
pub use monotone::{image_measure, image_union, Direction, MonotoneFn, WeightedTerm, DEFAULT_ENCLOSURE_BITS};
pub use riesz_nagy::{dyadic_increment, enclose_riesz_nagy, eval_riesz_nagy, inverse_riesz_nagy};
pub use staircase::{build_interval_staircase, build_tree, level_bound, NestedIntervalTree};
