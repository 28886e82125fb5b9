//! Weierstrass models over Q, isomorphisms, quadratic twists and minimal
//! models.

mod minimal;
mod model;
mod strongly;
mod twist;

pub use minimal::{is_globally_minimal, minimal_model, minimal_model_rational, MinimalModelResult};
pub use model::{Invariants, IsoMap, RationalModel, WeierstrassModel};
pub use strongly::{two_strongly_minimal, StronglyMinimal, TwoAdicPattern};
pub use twist::{quadratic_twist, quadratic_twist_rational};

/// Applies `map` to a model over Q.
pub fn apply_iso(e: &RationalModel, map: &IsoMap) -> RationalModel {
    e.apply_iso(map)
}
