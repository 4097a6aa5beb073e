use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, ExtInt, Interval};
use crate::graph::Graph;

/// Layout of one two-dimensional gadget: `order[i]` is the `B`-vertex at
/// position `i + 1`, and each `A`-vertex has an inclusive span of positions
/// (1-based) or `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanGadgetSpec {
    pub order: Vec<usize>,
    pub spans: Vec<(usize, Option<(usize, usize)>)>,
}

impl SpanGadgetSpec {
    /// Spans from the neighbourhoods in `g`: leftmost and rightmost
    /// neighbour of each `a` in `order`.
    pub fn from_graph(g: &Graph, a: &[usize], order: &[usize]) -> SpanGadgetSpec {
        let mut pos = vec![0usize; g.n()];
        for (i, &w) in order.iter().enumerate() {
            pos[w] = i + 1;
        }
        let spans = a
            .iter()
            .map(|&v| {
                let mut lo = usize::MAX;
                let mut hi = 0;
                for &w in g.neighbors(v) {
                    if pos[w] > 0 {
                        lo = lo.min(pos[w]);
                        hi = hi.max(pos[w]);
                    }
                }
                (v, if hi == 0 { None } else { Some((lo, hi)) })
            })
            .collect();
        SpanGadgetSpec {
            order: order.to_vec(),
            spans,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for &v in self.order.iter().chain(self.spans.iter().map(|(v, _)| v)) {
            if v >= n {
                return Err(Error::param(format!("gadget vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::param(format!("gadget vertex {v} listed twice")));
            }
            seen[v] = true;
        }
        let len = self.order.len();
        for &(v, s) in &self.spans {
            if let Some((lo, hi)) = s {
                if lo == 0 || lo > hi || hi > len {
                    return Err(Error::param(format!(
                        "span ({lo}, {hi}) of vertex {v} invalid for {len} positions"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Two-dimensional representation over `0..n`: the `B`-vertex at position
/// `b` is the quadrant `[-inf, 2b] x [2b, +inf]`, an `A`-vertex with span
/// `(x, y)` is `[2x-1, +inf] x [-inf, 2y+1]`, an `A`-vertex without span is
/// the point `(2|B|, -2|B|)`, everything else is the whole plane.
pub fn span_gadget(spec: &SpanGadgetSpec, n: usize) -> Result<BoxRepresentation> {
    spec.validate(n)?;
    let mut rep = BoxRepresentation::universal(n, 2);
    for (i, &w) in spec.order.iter().enumerate() {
        let b = 2 * (i as i64 + 1);
        rep.set(w, 0, Interval::new(ExtInt::NEG_INF, b));
        rep.set(w, 1, Interval::new(b, ExtInt::POS_INF));
    }
    let len = spec.order.len() as i64;
    for &(v, s) in &spec.spans {
        match s {
            Some((lo, hi)) => {
                rep.set(v, 0, Interval::new(2 * lo as i64 - 1, ExtInt::POS_INF));
                rep.set(v, 1, Interval::new(ExtInt::NEG_INF, 2 * hi as i64 + 1));
            }
            None => {
                rep.set(v, 0, Interval::point(2 * len));
                rep.set(v, 1, Interval::point(-2 * len));
            }
        }
    }
    Ok(rep)
}
