//! End-to-end constructions producing [`Certificate`]s.

pub mod degree;
pub mod genus;
pub mod ltw;

pub use degree::bounded_degree_rep;
pub use genus::{classify_outside, genus_rep};
pub use ltw::{group_components_ok, layered_tw_rep, Layering};

use crate::certificate::Piece;
use crate::error::Result;
use crate::geometry::BoxRepresentation;

/// Composes the piece representations (all over the full vertex set); with
/// no pieces the result is the one-dimensional universal representation.
pub(crate) fn compose(n: usize, reps: &[BoxRepresentation]) -> Result<BoxRepresentation> {
    if reps.is_empty() {
        return Ok(BoxRepresentation::universal(n, 1));
    }
    let refs: Vec<&BoxRepresentation> = reps.iter().collect();
    BoxRepresentation::product_compose(&refs)
}

pub(crate) fn any_fallback(pieces: &[Piece]) -> bool {
    pieces.iter().any(|p| p.fallback)
}
