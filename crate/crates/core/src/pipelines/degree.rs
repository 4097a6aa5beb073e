use rayon::prelude::*;
use serde_json::json;

use crate::builders::{bipartite_suitable_rep, degenerate_rep};
use crate::certificate::{Certificate, Params, Piece, Target};
use crate::error::Result;
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::lll::{auto_params_partition, partition_bounded_mono};
use crate::options::Options;
use crate::seed::derive;

struct ClassOutput {
    pieces: Vec<(Piece, BoxRepresentation)>,
    colourings: serde_json::Value,
}

/// Representation of a graph of maximum degree `Δ` as the intersection over
/// the classes `V_i` of a bounded-degree partition of `G<V_i>` and
/// `G<V_i, V \ V_i>`.
///
/// Seeds: fork 0 of `seed` drives the partition; class `i` uses forks
/// `2i + 1` (degenerate piece) and `2i + 2` (bipartite piece).
pub fn bounded_degree_rep(g: &Graph, seed: u64, opts: &Options) -> Result<Certificate> {
    let n = g.n();
    let delta = g.max_degree();
    if g.is_complete() {
        let piece = Piece::new("complete", 1, false, Params::Universal)?;
        let params = Params::Degree {
            delta,
            d: None,
            k: None,
            pieces: vec![piece],
        };
        let rep = BoxRepresentation::universal(n, 1);
        return finish(g, seed, params, serde_json::Value::Null, rep, false);
    }
    if delta <= 1 {
        let comps = g.components();
        let mut col = vec![Interval::FULL; n];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                col[v] = Interval::new(2 * c as i64, 2 * c as i64 + 1);
            }
        }
        let rep = BoxRepresentation::from_columns(n, &[col])?;
        let piece = Piece::new(
            "components",
            1,
            false,
            Params::Components {
                components: comps.len(),
            },
        )?;
        let params = Params::Degree {
            delta,
            d: None,
            k: None,
            pieces: vec![piece],
        };
        return finish(g, seed, params, serde_json::Value::Null, rep, false);
    }

    let (d, k) = auto_params_partition(delta)?;
    let partition = partition_bounded_mono(g, d, k, derive(seed, 0), opts)?;
    let classes = partition.classes();
    let outputs: Vec<ClassOutput> = classes
        .par_iter()
        .enumerate()
        .map(|(i, vi)| {
            class_pieces(
                g,
                i,
                vi,
                d,
                delta,
                derive(seed, 2 * i as u64 + 1),
                derive(seed, 2 * i as u64 + 2),
                opts,
            )
        })
        .collect::<Result<_>>()?;

    let mut pieces = Vec::new();
    let mut reps = Vec::new();
    let mut colourings = Vec::new();
    for out in outputs {
        for (p, r) in out.pieces {
            pieces.push(p);
            reps.push(r);
        }
        colourings.push(out.colourings);
    }
    let rep = super::compose(n, &reps)?;
    let fallback = super::any_fallback(&pieces);
    let params = Params::Degree {
        delta,
        d: Some(d),
        k: Some(k),
        pieces,
    };
    let witness = json!({ "partition": partition, "colourings": colourings });
    finish(g, seed, params, witness, rep, fallback)
}

#[allow(clippy::too_many_arguments)]
fn class_pieces(
    g: &Graph,
    i: usize,
    vi: &[usize],
    d: usize,
    delta: usize,
    seed_local: u64,
    seed_bip: u64,
    opts: &Options,
) -> Result<ClassOutput> {
    let n = g.n();
    let mut pieces = Vec::new();
    let sub = g.induced(vi);
    if !sub.is_complete() {
        let r = degenerate_rep(&sub, sub.degeneracy(), seed_local, opts)?;
        let full = r.rep.embed(vi, n)?.complete_with_full();
        let piece = Piece::new(
            format!("local-{i}"),
            full.dim(),
            r.params.fallback,
            Params::Degenerate(r.params),
        )?;
        pieces.push((piece, full));
    }
    let mut in_vi = vec![false; n];
    for &v in vi {
        in_vi[v] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_vi[v]).collect();
    let cross_non_edges = vi
        .iter()
        .any(|&v| rest.len() > g.neighbors(v).iter().filter(|&&w| !in_vi[w]).count());
    let mut colourings = serde_json::Value::Null;
    if cross_non_edges {
        let r =
            bipartite_suitable_rep(g, &rest, vi, d.max(2), delta.max(d.max(2)), seed_bip, opts)?;
        let piece = Piece::new(
            format!("bipartite-{i}"),
            r.rep.dim(),
            false,
            Params::Bipartite(r.params),
        )?;
        colourings = serde_json::to_value(&r.colourings)?;
        pieces.push((piece, r.rep));
    }
    Ok(ClassOutput { pieces, colourings })
}

fn finish(
    g: &Graph,
    seed: u64,
    params: Params,
    witness: serde_json::Value,
    rep: BoxRepresentation,
    fallback: bool,
) -> Result<Certificate> {
    let cert = Certificate::new(
        "degree",
        seed,
        Target::Whole,
        params,
        witness,
        rep,
        fallback,
    )?;
    cert.verify(g)?.into_result()?;
    Ok(cert)
}
