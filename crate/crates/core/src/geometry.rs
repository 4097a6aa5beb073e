//! Extended-integer intervals, boxes, and box representations.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An integer or one of the sentinels `-inf` / `+inf`.
///
/// Stored as an `i64` with `i64::MIN` and `i64::MAX` reserved for the
/// sentinels, so the derived order is the extended order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtInt(i64);

impl ExtInt {
    pub const NEG_INF: ExtInt = ExtInt(i64::MIN);
    pub const POS_INF: ExtInt = ExtInt(i64::MAX);

    /// Finite value. Panics on the two reserved bit patterns.
    pub fn fin(v: i64) -> ExtInt {
        assert!(
            v != i64::MIN && v != i64::MAX,
            "finite coordinate collides with a sentinel"
        );
        ExtInt(v)
    }

    pub fn finite(self) -> Option<i64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.0)
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Self::NEG_INF || self == Self::POS_INF
    }

    /// Raw encoding (sentinels as `i64::MIN` / `i64::MAX`), used by the C ABI.
    pub fn raw(self) -> i64 {
        self.0
    }

    pub fn from_raw(v: i64) -> ExtInt {
        ExtInt(v)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::fin(v)
    }
}

impl fmt::Debug for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExtInt::NEG_INF => write!(f, "-inf"),
            ExtInt::POS_INF => write!(f, "+inf"),
            ExtInt(v) => write!(f, "{v}"),
        }
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: ExtInt,
    pub hi: ExtInt,
}

impl Interval {
    pub const FULL: Interval = Interval {
        lo: ExtInt::NEG_INF,
        hi: ExtInt::POS_INF,
    };

    pub fn new(lo: impl Into<ExtInt>, hi: impl Into<ExtInt>) -> Interval {
        let (lo, hi) = (lo.into(), hi.into());
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: i64) -> Interval {
        Interval::new(x, x)
    }

    pub fn is_valid(&self) -> bool {
        self.lo <= self.hi
    }

    #[inline]
    pub fn meets(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi)
    }
}

impl From<ExtInt> for Interval {
    fn from(x: ExtInt) -> Self {
        Interval { lo: x, hi: x }
    }
}

/// Boxes for (a subset of) the vertices `0..n`, all in the same dimension.
///
/// Storage is vertex-major: the box of `v` is `data[v*dim .. (v+1)*dim]`.
/// Vertices without a box are "uncovered"; most operations require full
/// coverage, and [`BoxRepresentation::extend_full`] fills uncovered vertices
/// with the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxRepresentation {
    dim: usize,
    covered: Vec<bool>,
    data: Vec<Interval>,
}

impl BoxRepresentation {
    /// Every vertex gets the full-space box.
    pub fn universal(n: usize, dim: usize) -> Self {
        BoxRepresentation {
            dim,
            covered: vec![true; n],
            data: vec![Interval::FULL; n * dim],
        }
    }

    /// No vertex has a box yet.
    pub fn uncovered(n: usize, dim: usize) -> Self {
        BoxRepresentation {
            dim,
            covered: vec![false; n],
            data: vec![Interval::FULL; n * dim],
        }
    }

    /// Builds a representation from per-dimension interval columns
    /// (`columns[i][v]` is the interval of `v` in dimension `i`).
    pub fn from_columns(n: usize, columns: &[Vec<Interval>]) -> Result<Self> {
        let dim = columns.len();
        let mut rep = BoxRepresentation::universal(n, dim);
        for (i, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::structural(format!(
                    "dimension {i} has {} intervals, expected {n}",
                    col.len()
                )));
            }
            for (v, iv) in col.iter().enumerate() {
                rep.set(v, i, *iv);
            }
        }
        Ok(rep)
    }

    /// Builds a representation from per-vertex boxes; `None` leaves the vertex uncovered.
    pub fn from_boxes(dim: usize, boxes: Vec<Option<Vec<Interval>>>) -> Result<Self> {
        let mut rep = BoxRepresentation::uncovered(boxes.len(), dim);
        for (v, b) in boxes.into_iter().enumerate() {
            if let Some(b) = b {
                rep.set_box(v, &b)?;
            }
        }
        Ok(rep)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of the vertex universe.
    #[inline]
    pub fn n(&self) -> usize {
        self.covered.len()
    }

    #[inline]
    pub fn is_covered(&self, v: usize) -> bool {
        self.covered[v]
    }

    pub fn covered_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.covered[v]).collect()
    }

    pub fn is_fully_covered(&self) -> bool {
        self.covered.iter().all(|&c| c)
    }

    pub fn get_box(&self, v: usize) -> Option<&[Interval]> {
        if self.covered[v] {
            Some(&self.data[v * self.dim..(v + 1) * self.dim])
        } else {
            None
        }
    }

    #[inline]
    pub fn interval(&self, v: usize, i: usize) -> Interval {
        self.data[v * self.dim + i]
    }

    /// Sets one interval and marks `v` covered.
    pub fn set(&mut self, v: usize, i: usize, iv: Interval) {
        self.covered[v] = true;
        self.data[v * self.dim + i] = iv;
    }

    pub fn set_box(&mut self, v: usize, b: &[Interval]) -> Result<()> {
        if b.len() != self.dim {
            return Err(Error::structural(format!(
                "box of vertex {v} has {} intervals, expected {}",
                b.len(),
                self.dim
            )));
        }
        if let Some(bad) = b.iter().find(|iv| !iv.is_valid()) {
            return Err(Error::structural(format!(
                "vertex {v} has empty interval [{}, {}]",
                bad.lo, bad.hi
            )));
        }
        self.covered[v] = true;
        self.data[v * self.dim..(v + 1) * self.dim].copy_from_slice(b);
        Ok(())
    }

    /// Whether the boxes of `u` and `v` intersect. Both must be covered.
    #[inline]
    pub fn boxes_meet(&self, u: usize, v: usize) -> bool {
        let d = self.dim;
        let a = &self.data[u * d..(u + 1) * d];
        let b = &self.data[v * d..(v + 1) * d];
        a.iter().zip(b).all(|(x, y)| x.meets(y))
    }

    fn require_full_coverage(&self) -> Result<()> {
        match self.covered.iter().position(|&c| !c) {
            Some(v) => Err(Error::structural(format!("vertex {v} has no box"))),
            None => Ok(()),
        }
    }

    /// The graph on `0..n` whose edges are the intersecting pairs of boxes.
    pub fn intersection_graph(&self) -> Result<Graph> {
        self.require_full_coverage()?;
        if let Some(v) =
            (0..self.n()).find(|&v| self.get_box(v).unwrap().iter().any(|iv| !iv.is_valid()))
        {
            return Err(Error::structural(format!(
                "vertex {v} has an empty interval"
            )));
        }
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if self.boxes_meet(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Cartesian product: concatenates the boxes of each vertex. All inputs
    /// must cover the same vertex set. The intersection graph of the result is
    /// the intersection of the inputs' intersection graphs.
    pub fn product_compose(reps: &[&BoxRepresentation]) -> Result<BoxRepresentation> {
        let Some(first) = reps.first() else {
            return Err(Error::structural("nothing to compose"));
        };
        let n = first.n();
        for r in reps {
            if r.n() != n || r.covered != first.covered {
                return Err(Error::structural(
                    "representations cover different vertex sets",
                ));
            }
        }
        let dim: usize = reps.iter().map(|r| r.dim).sum();
        let mut out = BoxRepresentation::uncovered(n, dim);
        out.covered = first.covered.clone();
        for v in 0..n {
            let mut off = v * dim;
            for r in reps {
                out.data[off..off + r.dim].copy_from_slice(&r.data[v * r.dim..(v + 1) * r.dim]);
                off += r.dim;
            }
        }
        Ok(out)
    }

    /// Gives each vertex of `extra` the full-space box. The vertices must
    /// currently be uncovered.
    pub fn extend_full(&self, extra: &[usize]) -> Result<BoxRepresentation> {
        let mut out = self.clone();
        for &v in extra {
            if v >= self.n() {
                return Err(Error::param(format!("vertex {v} out of range")));
            }
            if out.covered[v] {
                return Err(Error::structural(format!("vertex {v} already has a box")));
            }
            out.covered[v] = true;
            for i in 0..self.dim {
                out.data[v * self.dim + i] = Interval::FULL;
            }
        }
        Ok(out)
    }

    /// Full-space boxes for every uncovered vertex.
    pub fn complete_with_full(&self) -> BoxRepresentation {
        let missing: Vec<usize> = (0..self.n()).filter(|&v| !self.covered[v]).collect();
        self.extend_full(&missing)
            .expect("uncovered vertices are in range")
    }

    /// Lifts a representation of a relabelled subgraph (`vertices[i]` is the
    /// original id of local vertex `i`) into the universe `0..n`; other
    /// vertices stay uncovered.
    pub fn embed(&self, vertices: &[usize], n: usize) -> Result<BoxRepresentation> {
        if vertices.len() != self.n() {
            return Err(Error::structural(
                "embedding map does not match representation size",
            ));
        }
        let mut out = BoxRepresentation::uncovered(n, self.dim);
        for (i, &v) in vertices.iter().enumerate() {
            if let Some(b) = self.get_box(i) {
                out.set_box(v, b)?;
            }
        }
        Ok(out)
    }

    /// Copy restricted to the listed dimensions, in the given order.
    pub fn select_dims(&self, dims: &[usize]) -> BoxRepresentation {
        let mut out = BoxRepresentation::uncovered(self.n(), dims.len());
        out.covered = self.covered.clone();
        for v in 0..self.n() {
            for (j, &i) in dims.iter().enumerate() {
                out.data[v * dims.len() + j] = self.data[v * self.dim + i];
            }
        }
        out
    }

    /// Appends `extra` copies of the all-full dimension.
    pub fn pad_dims(&self, extra: usize) -> BoxRepresentation {
        let full = BoxRepresentation {
            dim: extra,
            covered: self.covered.clone(),
            data: vec![Interval::FULL; self.n() * extra],
        };
        BoxRepresentation::product_compose(&[self, &full]).expect("same coverage")
    }

    /// Intervals of all vertices in dimension `i`.
    pub fn column(&self, i: usize) -> Vec<Interval> {
        (0..self.n()).map(|v| self.interval(v, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim(ivs: &[(i64, i64)]) -> BoxRepresentation {
        let col: Vec<Interval> = ivs.iter().map(|&(a, b)| Interval::new(a, b)).collect();
        BoxRepresentation::from_columns(ivs.len(), &[col]).unwrap()
    }

    #[test]
    fn extint_order() {
        assert!(ExtInt::NEG_INF < ExtInt::fin(-1_000_000));
        assert!(ExtInt::fin(1_000_000) < ExtInt::POS_INF);
        assert_eq!(ExtInt::NEG_INF.to_string(), "-inf");
        assert_eq!(ExtInt::fin(3).finite(), Some(3));
    }

    #[test]
    fn touching_closed_intervals_meet() {
        let g = one_dim(&[(0, 1), (1, 2)]).intersection_graph().unwrap();
        assert!(g.has_edge(0, 1));
        let g = one_dim(&[(0, 1), (2, 3)]).intersection_graph().unwrap();
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn universal_boxes_give_complete_graph() {
        let g = BoxRepresentation::universal(5, 3)
            .intersection_graph()
            .unwrap();
        assert!(g.is_complete());
    }

    #[test]
    fn malformed_boxes_rejected() {
        let mut rep = BoxRepresentation::uncovered(2, 2);
        assert!(rep.set_box(0, &[Interval::FULL]).is_err());
        rep.set_box(0, &[Interval::FULL, Interval::FULL]).unwrap();
        assert!(rep.intersection_graph().is_err());
    }

    #[test]
    fn compose_with_itself_doubles_dim() {
        let r = one_dim(&[(0, 1), (1, 2), (3, 4)]);
        let c = BoxRepresentation::product_compose(&[&r, &r]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(
            c.intersection_graph().unwrap(),
            r.intersection_graph().unwrap()
        );
    }

    #[test]
    fn compose_with_complete_is_identity() {
        let r = one_dim(&[(0, 1), (1, 2), (3, 4)]);
        let k = one_dim(&[(0, 5), (0, 5), (0, 5)]);
        let c = BoxRepresentation::product_compose(&[&r, &k]).unwrap();
        assert_eq!(
            c.intersection_graph().unwrap(),
            r.intersection_graph().unwrap()
        );
    }

    #[test]
    fn compose_rejects_mismatched_sets() {
        let a = one_dim(&[(0, 1), (1, 2)]);
        let b = one_dim(&[(0, 1), (1, 2), (2, 3)]);
        assert!(BoxRepresentation::product_compose(&[&a, &b]).is_err());
    }

    #[test]
    fn extend_full_k2_to_triangle() {
        let mut r = BoxRepresentation::uncovered(3, 1);
        r.set_box(0, &[Interval::new(0, 1)]).unwrap();
        r.set_box(1, &[Interval::new(1, 2)]).unwrap();
        let t = r.extend_full(&[2]).unwrap();
        assert!(t.intersection_graph().unwrap().is_complete());
        assert_eq!(r.extend_full(&[]).unwrap(), r);
        assert!(t.extend_full(&[2]).is_err());
    }
}
