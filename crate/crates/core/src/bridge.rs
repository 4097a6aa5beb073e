//! Conversions between box representations and poset realizers.

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::options::Options;
use crate::pipelines::bounded_degree_rep;
use crate::poset::{ranks_of, Poset};
use crate::verify::{verify_box_rep, verify_fk_realizer, verify_realizer};

/// Height-two poset on `V × {0, 1}`: element `(v, j)` has index `2v + j`, and
/// `(u, 0) < (v, 1)` iff `u = v` or `uv` is an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledPoset {
    pub base: Graph,
    pub poset: Poset,
}

impl DoubledPoset {
    pub fn element(v: usize, j: usize) -> usize {
        2 * v + j
    }
}

pub fn graph_to_doubled_poset(g: &Graph) -> DoubledPoset {
    let n = g.n();
    let mut rels = Vec::with_capacity(n + 2 * g.m());
    for v in 0..n {
        rels.push((DoubledPoset::element(v, 0), DoubledPoset::element(v, 1)));
    }
    for (u, v) in g.edges() {
        rels.push((DoubledPoset::element(u, 0), DoubledPoset::element(v, 1)));
        rels.push((DoubledPoset::element(v, 0), DoubledPoset::element(u, 1)));
    }
    let poset = Poset::from_relations(2 * n, &rels).expect("height-two relations are acyclic");
    DoubledPoset {
        base: g.clone(),
        poset,
    }
}

/// Box of `v` in dimension `i`: the positions of `(v, 0)` and `(v, 1)` in
/// order `i`.
pub fn boxes_from_realizer(g: &Graph, orders: &[Vec<usize>]) -> Result<BoxRepresentation> {
    let dp = graph_to_doubled_poset(g);
    verify_realizer(&dp.poset, orders)?.into_result()?;
    let n = g.n();
    let mut columns = Vec::with_capacity(orders.len());
    for o in orders {
        let rank = ranks_of(o, 2 * n)?;
        columns.push(
            (0..n)
                .map(|v| {
                    Interval::new(
                        rank[DoubledPoset::element(v, 0)] as i64,
                        rank[DoubledPoset::element(v, 1)] as i64,
                    )
                })
                .collect::<Vec<_>>(),
        );
    }
    if columns.is_empty() {
        return Err(Error::structural("empty realizer"));
    }
    BoxRepresentation::from_columns(n, &columns)
}

/// Two orders per dimension: descending left endpoints, then ascending right
/// endpoints, ties by vertex index. They satisfy the Füredi–Kahn condition
/// but are not linear extensions in general (see [`linear_extensions`]).
pub fn realizer_from_boxes(p: &Poset, rep: &BoxRepresentation) -> Result<Vec<Vec<usize>>> {
    verify_box_rep(&p.comparability_graph(), rep)?.into_result()?;
    let n = p.n();
    let mut orders = Vec::with_capacity(2 * rep.dim());
    for i in 0..rep.dim() {
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by(|&a, &b| {
            rep.interval(b, i)
                .lo
                .cmp(&rep.interval(a, i).lo)
                .then(a.cmp(&b))
        });
        let mut by_right: Vec<usize> = (0..n).collect();
        by_right.sort_by(|&a, &b| {
            rep.interval(a, i)
                .hi
                .cmp(&rep.interval(b, i).hi)
                .then(a.cmp(&b))
        });
        orders.push(by_left);
        orders.push(by_right);
    }
    Ok(orders)
}

/// Each order re-sorted into a linear extension of `p`.
pub fn linear_extensions(p: &Poset, orders: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    orders.iter().map(|o| p.linearize(o)).collect()
}

/// Realizer of `p` from a bounded-degree representation of its comparability
/// graph: `2d` orders, checked against the Füredi–Kahn condition.
pub fn dimension_pipeline(
    p: &Poset,
    seed: u64,
    opts: &Options,
) -> Result<(Vec<Vec<usize>>, Certificate)> {
    let g = p.comparability_graph();
    let cert = bounded_degree_rep(&g, seed, opts)?;
    let orders = realizer_from_boxes(p, &cert.boxes)?;
    verify_fk_realizer(p, &orders)?.into_result()?;
    Ok((orders, cert))
}
