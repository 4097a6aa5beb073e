//! Certificate-producing constructions. Every builder checks its output
//! against its target graph before returning it.

pub mod bipartite;
pub mod caught;
pub(crate) mod cover;
pub mod degenerate;
pub mod lift;
pub mod pairs;
pub mod span;
pub mod treewidth;

pub use bipartite::{bipartite_suitable_rep, BipartiteParams, BipartiteRep};
pub use caught::{caught_permutation_rep, CaughtParams, CaughtRep};
pub use degenerate::{degenerate_rep, DegenerateParams, DegenerateRep};
pub use lift::vertex_deletion_lift;
pub use pairs::pair_elimination_rep;
pub use span::{span_gadget, SpanGadgetSpec};
pub use treewidth::{treewidth_rep, TreeDecomposition, TreewidthParams, TreewidthRep};

use crate::error::Result;
use crate::geometry::BoxRepresentation;
use crate::graph::Graph;
use crate::verify::verify_box_rep;

pub(crate) fn ensure(target: &Graph, rep: &BoxRepresentation) -> Result<()> {
    verify_box_rep(target, rep)?.into_result()
}
