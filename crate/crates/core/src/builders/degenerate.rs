use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::cover::greedy_cover;
use super::pairs::pair_elimination_rep;
use crate::error::{Error, Result};
use crate::geometry::BoxRepresentation;
use crate::graph::Graph;
use crate::options::Options;
use crate::seed::SeedStream;

/// Restarts of the randomized cover before falling back to pair elimination.
pub const DEGENERATE_ATTEMPTS: usize = 8;
/// Random candidate orderings per greedy round.
pub const DEGENERATE_POOL: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateParams {
    pub n: usize,
    pub k: usize,
    pub target_d: usize,
    pub fallback: bool,
}

#[derive(Debug, Clone)]
pub struct DegenerateRep {
    pub rep: BoxRepresentation,
    pub params: DegenerateParams,
}

/// `max(1, (k+2) ⌈2e ln n⌉)`.
pub fn degenerate_target(n: usize, k: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let per = (2.0 * std::f64::consts::E * (n as f64).ln()).ceil() as usize;
    ((k + 2) * per).max(1)
}

/// Representation of a `k`-degenerate graph.
///
/// Dimensions are interval supergraphs of random layered orderings: each
/// vertex is lifted to the top layer with probability `1/(k+2)`, and within a
/// layer vertices follow a minimum-degree elimination order. A non-edge `uv`
/// where `u` is eliminated first is separated whenever `v` is lifted while `u`
/// and its at most `k` later neighbours are not. Rounds keep the best of a
/// small pool, capped at the target; after [`DEGENERATE_ATTEMPTS`] failed
/// attempts the result comes from pair elimination and is flagged.
pub fn degenerate_rep(g: &Graph, k: usize, seed: u64, opts: &Options) -> Result<DegenerateRep> {
    let n = g.n();
    let (elim, removal) = g.min_degree_ordering();
    let degeneracy = removal.iter().copied().max().unwrap_or(0);
    if degeneracy > k && !opts.force {
        return Err(Error::param(format!(
            "graph is {degeneracy}-degenerate, not {k}-degenerate"
        )));
    }
    let target_d = degenerate_target(n, k);
    if g.is_complete() {
        let rep = BoxRepresentation::universal(n, 1);
        return Ok(DegenerateRep {
            rep,
            params: DegenerateParams {
                n,
                k,
                target_d,
                fallback: false,
            },
        });
    }
    let mut elim_pos = vec![0; n];
    for (i, &v) in elim.iter().enumerate() {
        elim_pos[v] = i;
    }
    let p = 1.0 / (k as f64 + 2.0);
    let mut stream = SeedStream::new(seed);
    for _ in 0..DEGENERATE_ATTEMPTS {
        let mut rng = stream.fork_rng();
        let cols = greedy_cover(g, Some(target_d), |_| {
            (0..DEGENERATE_POOL)
                .map(|_| {
                    let lifted: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
                    let mut order: Vec<usize> = (0..n).collect();
                    order.sort_by_key(|&v| (lifted[v], elim_pos[v]));
                    order
                })
                .collect()
        });
        if let Some(cols) = cols {
            let rep = BoxRepresentation::from_columns(n, &cols)?;
            super::ensure(g, &rep)?;
            return Ok(DegenerateRep {
                rep,
                params: DegenerateParams {
                    n,
                    k,
                    target_d,
                    fallback: false,
                },
            });
        }
    }
    let rep = pair_elimination_rep(g);
    super::ensure(g, &rep)?;
    Ok(DegenerateRep {
        rep,
        params: DegenerateParams {
            n,
            k,
            target_d,
            fallback: true,
        },
    })
}
