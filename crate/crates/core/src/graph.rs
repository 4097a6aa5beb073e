//! Simple undirected graphs on vertices `0..n`.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    bits: BitMatrix,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            bits: BitMatrix::new(n),
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::structural(format!("multi-edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::structural(format!(
                "edge {u}-{v} out of range for n={n}"
            )));
        }
        if u == v {
            return Err(Error::structural(format!("loop at vertex {u}")));
        }
        if self.bits.get(u, v) {
            return Ok(false);
        }
        self.insert(u, v);
        Ok(true)
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.bits.set(u, v);
        self.bits.set(v, u);
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits.get(u, v)
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// Edges as `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, lexicographic.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn non_edge_count(&self) -> usize {
        let n = self.n();
        n * n.saturating_sub(1) / 2 - self.m
    }

    /// Induced subgraph on `vertices`, relabelled so that `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Edge-wise intersection of two graphs on the same vertex set.
    pub fn intersection(&self, other: &Graph) -> Result<Graph> {
        if self.n() != other.n() {
            return Err(Error::structural("graphs have different vertex counts"));
        }
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            if other.has_edge(u, v) {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    /// `G<X>`: every pair with at least one endpoint outside `X` becomes an edge.
    pub fn local_supergraph(&self, x: &[usize]) -> Result<Graph> {
        let inside = self.membership(x, "X")?;
        let mut g = self.clone();
        let n = self.n();
        for u in 0..n {
            for v in u + 1..n {
                if !(inside[u] && inside[v]) && !g.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        Ok(g)
    }

    /// `G<X,Y>`: the only surviving non-edges are non-edges of `G` between `X` and `Y`.
    pub fn bipartite_supergraph(&self, x: &[usize], y: &[usize]) -> Result<Graph> {
        let in_x = self.membership(x, "X")?;
        let in_y = self.membership(y, "Y")?;
        if let Some(v) = (0..self.n()).find(|&v| in_x[v] && in_y[v]) {
            return Err(Error::param(format!("X and Y overlap at vertex {v}")));
        }
        let mut g = self.clone();
        let n = self.n();
        for u in 0..n {
            for v in u + 1..n {
                let across = (in_x[u] && in_y[v]) || (in_y[u] && in_x[v]);
                if !across && !g.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn membership(&self, set: &[usize], name: &str) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            if v >= self.n() {
                return Err(Error::param(format!("vertex {v} of {name} out of range")));
            }
            inside[v] = true;
        }
        Ok(inside)
    }

    /// Minimum-degree elimination ordering `v_1, ..., v_n` where `v_i` has minimum
    /// degree in `G[{v_i, ..., v_n}]`. Returns the ordering and the degree of each
    /// vertex at the moment it was removed (indexed by position).
    pub fn min_degree_ordering(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let maxd = self.max_degree();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
        for v in (0..n).rev() {
            buckets[deg[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut removal_degree = Vec::with_capacity(n);
        let mut low = 0;
        while order.len() < n {
            // buckets may hold stale entries; skip them
            low = low.min(maxd);
            let v = loop {
                while buckets[low].is_empty() {
                    low += 1;
                }
                let v = buckets[low].pop().unwrap();
                if !removed[v] && deg[v] == low {
                    break v;
                }
            };
            removed[v] = true;
            order.push(v);
            removal_degree.push(deg[v]);
            for &w in self.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    buckets[deg[w]].push(w);
                    low = low.min(deg[w]);
                }
            }
        }
        (order, removal_degree)
    }

    /// Smallest `k` such that the graph is `k`-degenerate.
    pub fn degeneracy(&self) -> usize {
        self.min_degree_ordering().1.into_iter().max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `root`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[root] = Some(0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}
