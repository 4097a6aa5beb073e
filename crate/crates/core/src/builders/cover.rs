//! Greedy covering of non-edges by interval supergraphs.
//!
//! A vertex ordering `pos` gives the interval supergraph with
//! `I_v = [pos(v), max_{u ∈ N[v]} pos(u)]`. It contains every edge, and a
//! non-edge `uv` with `pos(u) < pos(v)` is missing from it exactly when all
//! of `N[u]` comes before `v`.

use crate::bits::BitMatrix;
use crate::geometry::Interval;
use crate::graph::Graph;

pub(crate) struct NonEdgeCover {
    remaining: BitMatrix,
    left: usize,
}

impl NonEdgeCover {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut remaining = BitMatrix::new(n);
        let mut left = 0;
        for (u, v) in g.non_edges() {
            remaining.set(u, v);
            remaining.set(v, u);
            left += 1;
        }
        NonEdgeCover { remaining, left }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    /// Vertex with the most uncovered non-edges.
    pub fn busiest(&self) -> Option<usize> {
        let n = self.remaining.len();
        (0..n)
            .map(|v| (self.remaining.row_count(v), v))
            .filter(|&(c, _)| c > 0)
            .max_by_key(|&(c, v)| (c, std::cmp::Reverse(v)))
            .map(|(_, v)| v)
    }

    /// Number of uncovered non-edges the ordering would separate.
    pub fn gain(&self, g: &Graph, order: &[usize]) -> usize {
        let mut total = 0;
        self.sweep(g, order, |row, suffix| {
            total += row
                .iter()
                .zip(suffix)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>();
        });
        total
    }

    /// Marks the separated non-edges as covered; returns how many were new.
    pub fn apply(&mut self, g: &Graph, order: &[usize]) -> usize {
        let mut hits: Vec<(usize, usize)> = Vec::new();
        let pos = positions(order);
        let reach = reach(g, &pos);
        for u in 0..order.len() {
            for v in self.remaining.row_iter(u) {
                if u < v && (pos[v] > reach[u] || pos[u] > reach[v]) {
                    hits.push((u, v));
                }
            }
        }
        for &(u, v) in &hits {
            self.remaining.clear(u, v);
            self.remaining.clear(v, u);
        }
        self.left -= hits.len();
        hits.len()
    }

    fn sweep(&self, g: &Graph, order: &[usize], mut f: impl FnMut(&[u64], &[u64])) {
        let n = order.len();
        let pos = positions(order);
        let reach = reach(g, &pos);
        let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); n];
        for u in 0..n {
            bucket[reach[u]].push(u);
        }
        let mut suffix = vec![0u64; self.remaining.words_per_row()];
        for p in (0..n).rev() {
            for &u in &bucket[p] {
                f(self.remaining.row(u), &suffix);
            }
            let v = order[p];
            suffix[v / 64] |= 1 << (v % 64);
        }
    }
}

pub(crate) fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

fn reach(g: &Graph, pos: &[usize]) -> Vec<usize> {
    (0..pos.len())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| pos[u])
                .fold(pos[v], usize::max)
        })
        .collect()
}

/// The interval column of an ordering, with integer coordinates `0..n`.
pub(crate) fn ordering_column(g: &Graph, order: &[usize]) -> Vec<Interval> {
    let pos = positions(order);
    let reach = reach(g, &pos);
    (0..order.len())
        .map(|v| Interval::new(pos[v] as i64, reach[v] as i64))
        .collect()
}

/// `0..n` with `v` moved to the end: separates every remaining non-edge at `v`.
pub(crate) fn vertex_last(n: usize, v: usize) -> Vec<usize> {
    (0..n)
        .filter(|&u| u != v)
        .chain(std::iter::once(v))
        .collect()
}

/// Runs greedy rounds: each round picks the candidate ordering with the
/// largest gain (ties go to the earliest) and adds its column. A vertex-last
/// ordering for the busiest vertex is always among the candidates, so every
/// round makes progress. Stops when all non-edges are covered, or returns
/// `None` once `cap` columns are used.
pub(crate) fn greedy_cover(
    g: &Graph,
    cap: Option<usize>,
    mut candidates: impl FnMut(usize) -> Vec<Vec<usize>>,
) -> Option<Vec<Vec<Interval>>> {
    let mut cover = NonEdgeCover::new(g);
    let mut columns = Vec::new();
    while cover.left() > 0 {
        if cap.is_some_and(|c| columns.len() >= c) {
            return None;
        }
        let mut pool = candidates(columns.len());
        pool.push(vertex_last(
            g.n(),
            cover.busiest().expect("uncovered non-edge exists"),
        ));
        let mut best = 0;
        let mut best_gain = 0;
        for (i, ord) in pool.iter().enumerate() {
            let gain = cover.gain(g, ord);
            if gain > best_gain {
                best = i;
                best_gain = gain;
            }
        }
        cover.apply(g, &pool[best]);
        columns.push(ordering_column(g, &pool[best]));
    }
    Some(columns)
}
