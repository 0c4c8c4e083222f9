//! Exact predicates, constructions and searches for crescent and line-like
//! point configurations in normed planes.
//!
//! * [`scalar`] and [`geometry`]: the field `Q(sqrt 3)`, points, norms, distances.
//! * [`predicates`]: collinearity, norm circles, line-like orderings, strong crescents.
//! * [`constructors`] and [`lp`]: explicit families and the `L^p` numeric searches.
//! * [`classifier`]: `L^inf` step types and grid sampling of their realizations.
//! * [`search`]: symmetry-reduced lattice backtracking with checkpoints.

pub mod classifier;
pub mod constructors;
pub mod error;
pub mod geometry;
pub mod json;
pub mod linelike;
pub mod lp;
pub mod numeric;
pub mod predicates;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{
    distance, duality_inverse, duality_transform, exact_distance, unit_circle_segments,
    Coord, DistanceValue, Metric, NormSpec, Point, PolygonNorm, Segment,
};
pub use predicates::{Configuration, NormCircle};
pub use scalar::ExactScalar;
