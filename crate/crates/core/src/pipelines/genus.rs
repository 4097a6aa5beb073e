use serde_json::json;

use crate::builders::{
    caught_permutation_rep, degenerate_rep, pair_elimination_rep, span_gadget,
    vertex_deletion_lift, SpanGadgetSpec,
};
use crate::certificate::{
    genus_k, suitable_gadget_bound, Certificate, GenusBranch, Params, Piece, Target,
};
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::options::Options;
use crate::seed::derive;
use crate::suitable::build_suitable;
use crate::verify::verify_box_rep;

/// Vertices outside `X` split by their number of neighbours in `X`:
/// `(Y, Z, W)` for one or two, at least three, and none.
pub fn classify_outside(g: &Graph, x: &[usize]) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let in_x = g.membership(x, "X")?;
    let (mut y, mut z, mut w) = (Vec::new(), Vec::new(), Vec::new());
    for v in (0..g.n()).filter(|&v| !in_x[v]) {
        match g.neighbors(v).iter().filter(|&&u| in_x[u]).count() {
            0 => w.push(v),
            1 | 2 => y.push(v),
            _ => z.push(v),
        }
    }
    Ok((y, z, w))
}

/// Representation of a graph of Euler genus `genus` from a representation
/// `rep_gx` of `G - X` (boxes on every vertex outside `X`, none on `X`).
///
/// Below `opts.genus_threshold` vertices of `X` are added back one dimension
/// at a time. Otherwise the result is the product of `G<V \ X>` (the input
/// extended by full boxes), `G<X, Y ∪ W>` (span gadgets over a 3-suitable
/// family of `X`) and three pieces for `H = G[X ∪ Z]` split along a
/// minimum-degree elimination at the first removal degree `>= k`.
///
/// Seeds: fork 0 for the suitable family, forks 1 and 2 for the degenerate
/// and caught pieces of `H`.
pub fn genus_rep(
    g: &Graph,
    genus: usize,
    x: &[usize],
    rep_gx: &BoxRepresentation,
    seed: u64,
    opts: &Options,
) -> Result<Certificate> {
    let n = g.n();
    let in_x = g.membership(x, "X")?;
    if rep_gx.n() != n {
        return Err(Error::structural(format!(
            "representation is over {} vertices, graph has {n}",
            rep_gx.n()
        )));
    }
    if let Some(v) = (0..n).find(|&v| in_x[v] == rep_gx.is_covered(v)) {
        let what = if in_x[v] {
            "is in X but has a box"
        } else {
            "is outside X but has no box"
        };
        return Err(Error::structural(format!("vertex {v} {what}")));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let local = BoxRepresentation::from_boxes(
        rep_gx.dim(),
        rest.iter()
            .map(|&v| Some(rep_gx.get_box(v).unwrap().to_vec()))
            .collect(),
    )?;
    verify_box_rep(&g.induced(&rest), &local)?.into_result()?;

    let mut xs = x.to_vec();
    xs.sort_unstable();
    let (y, z, w) = classify_outside(g, &xs)?;
    let advisory =
        (xs.len() > 60 * genus).then(|| format!("|X| = {} exceeds 60g = {}", xs.len(), 60 * genus));
    let supplied = Piece::new(
        "supplied",
        rep_gx.dim(),
        false,
        Params::Supplied { d: rep_gx.dim() },
    )?;

    if xs.len() < opts.genus_threshold {
        let mut rep = rep_gx.clone();
        let mut pieces = vec![supplied];
        for &v in &xs {
            rep = vertex_deletion_lift(&rep, g, v)?;
            pieces.push(Piece::new(
                format!("lift-{v}"),
                1,
                false,
                Params::Lift { vertex: v },
            )?);
        }
        let params = Params::Genus {
            g: genus,
            x: xs,
            branch: GenusBranch::Deletion,
            k: None,
            y,
            z,
            w,
            advisory,
            pieces,
        };
        return finish(g, seed, params, serde_json::Value::Null, rep, false);
    }

    let k = genus_k(genus);
    let mut pieces = vec![supplied];
    let mut reps = vec![rep_gx.extend_full(&xs)?];

    // G<X, Y ∪ W>
    let family = build_suitable(xs.len(), 3, derive(seed, 0), opts)?;
    let mut outside: Vec<usize> = y.iter().chain(&w).copied().collect();
    outside.sort_unstable();
    let mut columns: Vec<Vec<Interval>> = Vec::with_capacity(2 * family.len());
    for perm in &family.perms {
        let order: Vec<usize> = perm.iter().map(|&i| xs[i]).collect();
        let gadget = span_gadget(&SpanGadgetSpec::from_graph(g, &outside, &order), n)?;
        columns.push(gadget.column(0));
        columns.push(gadget.column(1));
    }
    let gadgets = BoxRepresentation::from_columns(n, &columns)?;
    pieces.push(Piece::new(
        "suitable-gadgets",
        gadgets.dim(),
        false,
        Params::SuitableGadget {
            x_size: xs.len(),
            p: family.len(),
            p_bound: suitable_gadget_bound(xs.len()),
        },
    )?);
    reps.push(gadgets);

    // H = G[X ∪ Z]
    let mut hv: Vec<usize> = xs.iter().chain(&z).copied().collect();
    hv.sort_unstable();
    let h = g.induced(&hv);
    let (order, removal) = h.min_degree_ordering();
    let split = removal.iter().position(|&r| r >= k).unwrap_or(order.len());
    let mut a_loc = order[..split].to_vec();
    let mut b_loc = order[split..].to_vec();
    a_loc.sort_unstable();
    b_loc.sort_unstable();
    let lift = |rep: &BoxRepresentation, local: &[usize]| -> Result<BoxRepresentation> {
        let ids: Vec<usize> = local.iter().map(|&i| hv[i]).collect();
        Ok(rep.embed(&ids, n)?.complete_with_full())
    };
    let ha = h.induced(&a_loc);
    if !ha.is_complete() {
        let r = degenerate_rep(&ha, k, derive(seed, 1), opts)?;
        let rep = lift(&r.rep, &a_loc)?;
        pieces.push(Piece::new(
            "h-a",
            rep.dim(),
            r.params.fallback,
            Params::Degenerate(r.params),
        )?);
        reps.push(rep);
    }
    let hb = h.induced(&b_loc);
    if !hb.is_complete() {
        let rep = lift(&pair_elimination_rep(&hb), &b_loc)?;
        pieces.push(Piece::new(
            "h-b",
            rep.dim(),
            false,
            Params::PairElimination {
                vertices: b_loc.len(),
            },
        )?);
        reps.push(rep);
    }
    let cross = a_loc.iter().any(|&v| {
        h.neighbors(v)
            .iter()
            .filter(|&&u| b_loc.binary_search(&u).is_ok())
            .count()
            < b_loc.len()
    });
    let mut perms = Vec::new();
    if cross {
        let r = caught_permutation_rep(&h, &a_loc, &b_loc, k, derive(seed, 2), opts)?;
        let rep = r.rep.embed(&hv, n)?.complete_with_full();
        pieces.push(Piece::new(
            "h-ab",
            rep.dim(),
            false,
            Params::Caught(r.params),
        )?);
        perms = r
            .perms
            .iter()
            .map(|p| p.iter().map(|&i| hv[i]).collect::<Vec<_>>())
            .collect();
        reps.push(rep);
    }
    let rep = super::compose(n, &reps)?;
    let fallback = super::any_fallback(&pieces);
    let a: Vec<usize> = a_loc.iter().map(|&i| hv[i]).collect();
    let b: Vec<usize> = b_loc.iter().map(|&i| hv[i]).collect();
    let witness = json!({ "suitable": family.perms, "h_a": a, "h_b": b, "caught": perms });
    let params = Params::Genus {
        g: genus,
        x: xs,
        branch: GenusBranch::Suitable,
        k: Some(k),
        y,
        z,
        w,
        advisory,
        pieces,
    };
    finish(g, seed, params, witness, rep, fallback)
}

fn finish(
    g: &Graph,
    seed: u64,
    params: Params,
    witness: serde_json::Value,
    rep: BoxRepresentation,
    fallback: bool,
) -> Result<Certificate> {
    let cert = Certificate::new("genus", seed, Target::Whole, params, witness, rep, fallback)?;
    cert.verify(g)?.into_result()?;
    Ok(cert)
}
