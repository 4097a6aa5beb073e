use std::collections::BTreeSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::cover::greedy_cover;
use crate::error::{Error, Result};
use crate::geometry::BoxRepresentation;
use crate::graph::Graph;
use crate::seed;

/// Bags over vertices `0..n` joined by tree edges between bag indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub n: usize,
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        adj
    }

    /// Checks that the bags form a tree decomposition of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let nb = self.bags.len();
        if self.n != g.n() {
            return Err(Error::structural(format!(
                "decomposition is over {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        if nb == 0 {
            return Err(Error::structural("decomposition has no bags"));
        }
        if self.edges.len() != nb - 1 {
            return Err(Error::structural(format!(
                "{nb} bags need {} tree edges, got {}",
                nb - 1,
                self.edges.len()
            )));
        }
        for &(x, y) in &self.edges {
            if x >= nb || y >= nb || x == y {
                return Err(Error::structural(format!("bad tree edge {x}-{y}")));
            }
        }
        for (i, b) in self.bags.iter().enumerate() {
            if let Some(&v) = b.iter().find(|&&v| v >= self.n) {
                return Err(Error::structural(format!(
                    "bag {i} holds vertex {v} out of range"
                )));
            }
        }
        let adj = self.tree_adjacency();
        if reachable(&adj, 0, |_| true).len() != nb {
            return Err(Error::structural("decomposition tree is disconnected"));
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                holders[v].push(i);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(Error::structural(format!("vertex {v} is in no bag")));
            }
            let inside: BTreeSet<usize> = hs.iter().copied().collect();
            if reachable(&adj, hs[0], |x| inside.contains(&x)).len() != inside.len() {
                return Err(Error::structural(format!(
                    "bags holding vertex {v} are not connected"
                )));
            }
        }
        let mut covered = Graph::empty(self.n);
        for b in &self.bags {
            for (i, &u) in b.iter().enumerate() {
                for &v in &b[i + 1..] {
                    if u != v {
                        covered.add_edge(u, v)?;
                    }
                }
            }
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| !covered.has_edge(u, v)) {
            return Err(Error::structural(format!("edge {u}-{v} lies in no bag")));
        }
        Ok(())
    }

    /// Decomposition from a minimum-degree elimination with fill-in. A
    /// heuristic: the width is not minimal in general.
    pub fn min_degree_heuristic(g: &Graph) -> TreeDecomposition {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition {
                n,
                bags: vec![Vec::new()],
                edges: Vec::new(),
            };
        }
        let mut adj: Vec<BTreeSet<usize>> = (0..n)
            .map(|v| g.neighbors(v).iter().copied().collect())
            .collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        let mut bags = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (adj[v].len(), v))
                .unwrap();
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
                adj[a].remove(&v);
            }
            alive[v] = false;
            let mut bag = nbrs.clone();
            bag.push(v);
            bag.sort_unstable();
            order.push((v, nbrs));
            bags.push(bag);
        }
        let mut step = vec![0; n];
        for (i, (v, _)) in order.iter().enumerate() {
            step[*v] = i;
        }
        let mut edges = Vec::new();
        let mut last_root: Option<usize> = None;
        for (i, (_, nbrs)) in order.iter().enumerate() {
            match nbrs.iter().map(|&u| step[u]).min() {
                Some(parent) => edges.push((i, parent)),
                None => {
                    if let Some(r) = last_root {
                        edges.push((i, r));
                    }
                    last_root = Some(i);
                }
            }
        }
        TreeDecomposition { n, bags, edges }
    }

    /// Vertices in order of first appearance along a depth-first walk of the tree.
    fn first_appearance(&self, adj: &[Vec<usize>], root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        for x in dfs(adj, root) {
            for &v in &self.bags[x] {
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
        }
        out
    }

    /// Restriction to the vertices in `keep` (`keep[i]` is the new id `i`);
    /// empty bags are kept so the tree stays intact.
    pub fn restrict(&self, keep: &[usize]) -> TreeDecomposition {
        let mut id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            id[v] = i;
        }
        let bags = self
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|&&v| id[v] != usize::MAX)
                    .map(|&v| id[v])
                    .collect()
            })
            .collect();
        TreeDecomposition {
            n: keep.len(),
            bags,
            edges: self.edges.clone(),
        }
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if allowed(y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

fn dfs(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::with_capacity(adj.len());
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        out.push(x);
        for &y in adj[x].iter().rev() {
            if !seen[y] {
                stack.push(y);
            }
        }
    }
    out
}

/// Number of decomposition roots tried for candidate orderings.
pub const TREEWIDTH_ROOTS: usize = 16;
/// Random layered candidates per round.
pub const TREEWIDTH_POOL: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthParams {
    pub width: usize,
    pub target_d: usize,
}

#[derive(Debug, Clone)]
pub struct TreewidthRep {
    pub rep: BoxRepresentation,
    pub params: TreewidthParams,
}

/// Representation guided by a tree decomposition of width `w`; the recorded
/// target is `w + 2`. Dimensions are interval supergraphs chosen greedily
/// from first-appearance orderings of the decomposition (from several
/// roots, and reversed), random layered orderings, and vertex-last orderings.
pub fn treewidth_rep(g: &Graph, td: &TreeDecomposition, seed: u64) -> Result<TreewidthRep> {
    td.validate(g)?;
    let n = g.n();
    let width = td.width();
    let params = TreewidthParams {
        width,
        target_d: width + 2,
    };
    if g.is_complete() {
        return Ok(TreewidthRep {
            rep: BoxRepresentation::universal(n, 1),
            params,
        });
    }
    let adj = td.tree_adjacency();
    let nb = td.bags.len();
    let roots = TREEWIDTH_ROOTS.min(nb);
    let mut fixed: Vec<Vec<usize>> = Vec::new();
    for i in 0..roots {
        let o = td.first_appearance(&adj, i * nb / roots);
        let mut r = o.clone();
        r.reverse();
        fixed.push(o);
        fixed.push(r);
    }
    let (elim, _) = g.min_degree_ordering();
    let mut elim_pos = vec![0; n];
    for (i, &v) in elim.iter().enumerate() {
        elim_pos[v] = i;
    }
    let p = 1.0 / (width as f64 + 2.0);
    let mut rng = seed::rng(seed);
    let cols = greedy_cover(g, None, |_| {
        let mut pool = fixed.clone();
        for _ in 0..TREEWIDTH_POOL {
            let lifted: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (lifted[v], elim_pos[v]));
            pool.push(order);
        }
        pool
    })
    .expect("uncapped cover terminates");
    let rep = BoxRepresentation::from_columns(n, &cols)?;
    super::ensure(g, &rep)?;
    Ok(TreewidthRep { rep, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_td(n: usize) -> TreeDecomposition {
        TreeDecomposition {
            n,
            bags: (0..n - 1).map(|i| vec![i, i + 1]).collect(),
            edges: (1..n - 1).map(|i| (i - 1, i)).collect(),
        }
    }

    #[test]
    fn tree_target_is_three() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let r = treewidth_rep(&g, &path_td(6), 1).unwrap();
        assert_eq!(r.params.target_d, 3);
        assert!(r.rep.dim() <= 3);
    }

    #[test]
    fn c4_and_complete() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let td = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 2], vec![0, 2, 3]],
            edges: vec![(0, 1)],
        };
        let r = treewidth_rep(&c4, &td, 1).unwrap();
        assert_eq!(r.params.target_d, 4);
        assert!(r.rep.dim() >= 2);
        let k4 = Graph::complete(4);
        let td = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 2, 3]],
            edges: vec![],
        };
        assert_eq!(treewidth_rep(&k4, &td, 1).unwrap().rep.dim(), 1);
    }

    #[test]
    fn invalid_decompositions() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let missing_edge = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 2], vec![2, 3]],
            edges: vec![(0, 1)],
        };
        assert!(matches!(
            missing_edge.validate(&c4),
            Err(Error::Structural(_))
        ));
        let split = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 3], vec![1, 2], vec![2, 3]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert!(matches!(split.validate(&c4), Err(Error::Structural(_))));
    }

    #[test]
    fn heuristic_is_valid() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
            .unwrap();
        let td = TreeDecomposition::min_degree_heuristic(&g);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 2);
    }
}
