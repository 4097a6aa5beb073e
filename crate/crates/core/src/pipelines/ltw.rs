use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::builders::{treewidth_rep, TreeDecomposition};
use crate::certificate::{Certificate, Params, Target};
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::seed::derive;

/// Layer index of every vertex; each edge joins equal or consecutive layers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    pub layer: Vec<usize>,
}

impl Layering {
    /// BFS layering from `root`; other components continue in later layers.
    pub fn bfs(g: &Graph, root: usize) -> Layering {
        let n = g.n();
        let mut layer = vec![usize::MAX; n];
        let mut base = 0;
        for start in std::iter::once(root).chain(0..n) {
            if start >= n || layer[start] != usize::MAX {
                continue;
            }
            let dist = g.bfs_distances(start);
            let mut top = base;
            for (v, dv) in dist.iter().enumerate() {
                if let Some(dv) = dv {
                    layer[v] = base + dv;
                    top = top.max(base + dv);
                }
            }
            base = top + 1;
        }
        Layering { layer }
    }

    pub fn count(&self) -> usize {
        self.layer.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count()];
        for (v, &l) in self.layer.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.layer.len() != g.n() {
            return Err(Error::structural(format!(
                "layering has {} entries, graph has {} vertices",
                self.layer.len(),
                g.n()
            )));
        }
        if let Some((u, v)) = g
            .edges()
            .find(|&(u, v)| self.layer[u].abs_diff(self.layer[v]) > 1)
        {
            return Err(Error::structural(format!(
                "edge {u}-{v} joins layers {} and {}",
                self.layer[u], self.layer[v]
            )));
        }
        Ok(())
    }

    /// Largest `|bag ∩ layer|`.
    pub fn layered_width(&self, td: &TreeDecomposition) -> usize {
        let mut best = 0;
        let mut cnt = vec![0usize; self.count()];
        for bag in &td.bags {
            for &v in bag {
                cnt[self.layer[v]] += 1;
            }
            for &v in bag {
                best = best.max(cnt[self.layer[v]]);
                cnt[self.layer[v]] = 0;
            }
        }
        best
    }
}

/// Vertex sets `V_j ∪ V_{j+1}` of the blocks of group `i`, `j ≡ i (mod 3)`.
/// `(first layer, vertices, representation, decomposition width)`.
type Block = (usize, Vec<usize>, BoxRepresentation, usize);

fn group_blocks(members: &[Vec<usize>], i: usize) -> Vec<(usize, Vec<usize>)> {
    (i..members.len())
        .step_by(3)
        .map(|j| {
            let mut vs = members[j].clone();
            if j + 1 < members.len() {
                vs.extend_from_slice(&members[j + 1]);
            }
            vs.sort_unstable();
            (j, vs)
        })
        .filter(|(_, vs)| !vs.is_empty())
        .collect()
}

/// Every component of each group graph `⋃_{j ≡ i} G[V_j ∪ V_{j+1}]` lies
/// inside two consecutive layers.
pub fn group_components_ok(g: &Graph, layering: &Layering) -> bool {
    let members = layering.members();
    (0..3).all(|i| {
        let mut edges = Vec::new();
        for (_, vs) in group_blocks(&members, i) {
            let sub = g.induced(&vs);
            edges.extend(sub.edges().map(|(a, b)| (vs[a], vs[b])));
        }
        let gi = Graph::from_edges(g.n(), &edges).expect("edges of induced subgraphs");
        gi.components().iter().all(|comp| {
            let lo = comp.iter().map(|&v| layering.layer[v]).min().unwrap();
            let hi = comp.iter().map(|&v| layering.layer[v]).max().unwrap();
            hi - lo <= 1
        })
    })
}

/// Representation from a tree decomposition and a layering. Each of the three
/// groups of two-layer blocks gets `D_sub` dimensions holding the blocks'
/// representations side by side (vertices outside the group are full); a last
/// dimension gives layer `j` the interval `[2j, 2j+2]`. `ltw_claim`, when
/// given, must be at least the measured layered width and is used for the
/// target `6 ltw + 4`.
///
/// Block `(group i, layer j)` is built with seed fork `j` of `seed`.
pub fn layered_tw_rep(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    ltw_claim: Option<usize>,
    seed: u64,
) -> Result<Certificate> {
    td.validate(g)?;
    layering.validate(g)?;
    let n = g.n();
    let measured = layering.layered_width(td);
    let ltw = match ltw_claim {
        Some(c) if c < measured => {
            return Err(Error::structural(format!(
                "claimed layered width {c} but a bag meets a layer in {measured} vertices"
            )))
        }
        Some(c) => c,
        None => measured,
    };
    let members = layering.members();

    let mut groups: Vec<Vec<Block>> = Vec::with_capacity(3);
    for i in 0..3 {
        let mut blocks = Vec::new();
        for (j, vs) in group_blocks(&members, i) {
            let sub = g.induced(&vs);
            let sub_td = td.restrict(&vs);
            let r = treewidth_rep(&sub, &sub_td, derive(seed, j as u64))?;
            blocks.push((j, vs, r.rep, r.params.width));
        }
        groups.push(blocks);
    }
    let d_sub = groups
        .iter()
        .flatten()
        .map(|b| b.2.dim())
        .max()
        .unwrap_or(1)
        .max(1);

    let mut columns: Vec<Vec<Interval>> = Vec::with_capacity(3 * d_sub + 1);
    for blocks in &groups {
        let mut cols = vec![vec![Interval::FULL; n]; d_sub];
        for (_, vs, rep, _) in blocks {
            for (local, &v) in vs.iter().enumerate() {
                for (dim, col) in cols.iter_mut().enumerate().take(rep.dim()) {
                    col[v] = rep.interval(local, dim);
                }
            }
        }
        columns.extend(cols);
    }
    columns.push(
        (0..n)
            .map(|v| {
                Interval::new(
                    2 * layering.layer[v] as i64,
                    2 * layering.layer[v] as i64 + 2,
                )
            })
            .collect(),
    );
    let rep = BoxRepresentation::from_columns(n, &columns)?;

    let blocks = groups
        .iter()
        .map(|bs| {
            bs.iter()
                .map(|(j, _, rep, w)| (*j, *w, rep.dim()))
                .collect()
        })
        .collect();
    let params = Params::Ltw {
        ltw,
        ltw_measured: measured,
        layers: members.len(),
        d_sub,
        blocks,
    };
    let witness = json!({ "layers": layering.layer });
    let cert = Certificate::new("ltw", seed, Target::Whole, params, witness, rep, false)?;
    cert.verify(g)?.into_result()?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn path_td(n: usize) -> TreeDecomposition {
        TreeDecomposition {
            n,
            bags: (1..n).map(|i| vec![i - 1, i]).collect(),
            edges: (1..n - 1).map(|i| (i - 1, i)).collect(),
        }
    }

    #[test]
    fn path_with_bfs_layers() {
        let g = path(12);
        let l = Layering::bfs(&g, 0);
        assert_eq!(l.count(), 12);
        let c = layered_tw_rep(&g, &path_td(12), &l, None, 1).unwrap();
        assert_eq!(c.target_d, 10);
        assert!(c.d <= 10);
        if let Params::Ltw { d_sub, ltw, .. } = c.params {
            assert_eq!(ltw, 1);
            assert_eq!(c.d, 3 * d_sub + 1);
        }
        assert!(group_components_ok(&g, &l));
        c.replay_params().unwrap();
    }

    #[test]
    fn single_layer() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let td = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 2], vec![0, 2, 3]],
            edges: vec![(0, 1)],
        };
        let l = Layering { layer: vec![0; 4] };
        let c = layered_tw_rep(&g, &td, &l, None, 1).unwrap();
        if let Params::Ltw { d_sub, ltw, .. } = c.params {
            assert_eq!(ltw, 3);
            assert_eq!(c.d, 3 * d_sub + 1);
        }
    }

    #[test]
    fn bad_layering_and_claim() {
        let g = path(4);
        assert!(layered_tw_rep(
            &g,
            &path_td(4),
            &Layering {
                layer: vec![0, 2, 1, 0]
            },
            None,
            1
        )
        .is_err());
        let l = Layering { layer: vec![0; 4] };
        assert!(matches!(
            layered_tw_rep(&g, &path_td(4), &l, Some(1), 1),
            Err(Error::Structural(_))
        ));
    }
}
