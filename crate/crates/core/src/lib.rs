//! Newton polygons, Culler-Shalen seminorms and surgery obstructions for
//! character-variety plane curves, computed with exact rational arithmetic,
//! plus numerical hyperbolic volume tools.

pub mod laurent;
pub mod newton;
pub mod norm;
pub mod obstruction;
pub mod par;
pub mod roots;
pub mod volume;

pub use laurent::{parse_poly, LaurentPoly2, PolyError, Rational, UniPoly, Var, Vars};
