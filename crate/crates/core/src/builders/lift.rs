use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::verify::verify_box_rep;

/// Adds vertex `v` to a representation of `G[S]` (`S` the covered vertices),
/// giving one of `G[S ∪ {v}]` with one more dimension. In the new dimension
/// `v` is `[-4, 2]`, its neighbours are `[0, 8]` and the rest of `S` is
/// `[4, 8]`; `v` is the whole space in the old dimensions.
pub fn vertex_deletion_lift(
    rep: &BoxRepresentation,
    g: &Graph,
    v: usize,
) -> Result<BoxRepresentation> {
    let n = g.n();
    if rep.n() != n {
        return Err(Error::structural(format!(
            "representation has {} vertices, graph has {n}",
            rep.n()
        )));
    }
    if v >= n {
        return Err(Error::param(format!("vertex {v} out of range")));
    }
    if rep.is_covered(v) {
        return Err(Error::structural(format!("vertex {v} already has a box")));
    }
    let s = rep.covered_vertices();
    let sub = g.induced(&s);
    let local = BoxRepresentation::from_boxes(
        rep.dim(),
        s.iter()
            .map(|&u| Some(rep.get_box(u).unwrap().to_vec()))
            .collect(),
    )?;
    verify_box_rep(&sub, &local)?.into_result()?;

    let mut boxes: Vec<Option<Vec<Interval>>> = vec![None; n];
    for (u, slot) in boxes.iter_mut().enumerate() {
        let (mut b, last) = if u == v {
            (vec![Interval::FULL; rep.dim()], Interval::new(-4, 2))
        } else if let Some(b) = rep.get_box(u) {
            (
                b.to_vec(),
                if g.has_edge(u, v) {
                    Interval::new(0, 8)
                } else {
                    Interval::new(4, 8)
                },
            )
        } else {
            continue;
        };
        b.push(last);
        *slot = Some(b);
    }
    BoxRepresentation::from_boxes(rep.dim() + 1, boxes)
}
