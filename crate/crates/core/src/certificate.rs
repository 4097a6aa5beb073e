//! Self-contained certificate records and their JSON form.
//!
//! Boxes are written as `{"<vertex>": [[lo, hi], ...]}` in increasing vertex
//! order, with `"-inf"` and `"+inf"` for the infinite endpoints. Nothing in a
//! certificate depends on time or hash order, so a rerun with the same inputs
//! and seed reproduces the file byte for byte.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::builders::bipartite::bipartite_formulas;
use crate::builders::caught::caught_count;
use crate::builders::degenerate::degenerate_target;
use crate::builders::{BipartiteParams, CaughtParams, DegenerateParams, TreewidthParams};
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, ExtInt, Interval};
use crate::graph::Graph;
use crate::lll::auto_params_partition;
use crate::verify::{verify_box_rep, VerifyReport};

/// The graph a certificate's boxes realize, relative to the input graph `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `G` itself.
    Whole,
    /// `G<X>`.
    Local { x: Vec<usize> },
    /// `G<A,B>`.
    Bipartite { a: Vec<usize>, b: Vec<usize> },
}

impl Target {
    pub fn graph(&self, g: &Graph) -> Result<Graph> {
        match self {
            Target::Whole => Ok(g.clone()),
            Target::Local { x } => g.local_supergraph(x),
            Target::Bipartite { a, b } => g.bipartite_supergraph(a, b),
        }
    }
}

/// One factor of a composed representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub name: String,
    pub d: usize,
    pub target_d: usize,
    pub fallback: bool,
    pub params: Params,
}

impl Piece {
    pub fn new(name: impl Into<String>, d: usize, fallback: bool, params: Params) -> Result<Piece> {
        let target_d = bound_formula(&params)?;
        Ok(Piece {
            name: name.into(),
            d,
            target_d,
            fallback: fallback || d > target_d,
            params,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusBranch {
    Deletion,
    Suitable,
}

/// Construction parameters. Each variant carries what is needed to recompute
/// its dimension bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Params {
    /// All boxes equal.
    Universal,
    PairElimination {
        vertices: usize,
    },
    Degenerate(DegenerateParams),
    Treewidth(TreewidthParams),
    Bipartite(BipartiteParams),
    Caught(CaughtParams),
    /// Maximum degree at most one: components laid out along a line.
    Components {
        components: usize,
    },
    /// A representation given as input.
    Supplied {
        d: usize,
    },
    /// One dimension added for a deleted vertex.
    Lift {
        vertex: usize,
    },
    /// Span gadgets over a 3-suitable family of permutations of `X`.
    SuitableGadget {
        x_size: usize,
        p: usize,
        /// `24 ln ln |X|`
        p_bound: f64,
    },
    Degree {
        delta: usize,
        /// Per-class degree bound and number of classes (absent when `Δ <= 1`).
        d: Option<usize>,
        k: Option<usize>,
        pieces: Vec<Piece>,
    },
    Genus {
        g: usize,
        x: Vec<usize>,
        branch: GenusBranch,
        /// `7 + ⌈√(g / ln g)⌉`, or 8 when `g <= 1` (suitable branch only).
        k: Option<usize>,
        /// Vertices outside `X` with one or two neighbours in `X`.
        y: Vec<usize>,
        /// Vertices outside `X` with at least three neighbours in `X`.
        z: Vec<usize>,
        /// Vertices outside `X` with no neighbour in `X`.
        w: Vec<usize>,
        advisory: Option<String>,
        pieces: Vec<Piece>,
    },
    Ltw {
        /// Layered width used for the bound `6 ltw + 4`.
        ltw: usize,
        /// Largest `|bag ∩ layer|` of the supplied decomposition and layering.
        ltw_measured: usize,
        layers: usize,
        d_sub: usize,
        /// Per group, `(first layer, width of the restricted decomposition, dimensions)` of each block.
        blocks: Vec<Vec<(usize, usize, usize)>>,
    },
}

/// Dimension bound of a construction from its recorded parameters. For
/// composed constructions this is the sum over the pieces; for the layered
/// construction it is `6 ltw + 4`.
pub fn bound_formula(params: &Params) -> Result<usize> {
    Ok(match params {
        Params::Universal => 1,
        Params::PairElimination { vertices } => (vertices / 2).max(1),
        Params::Degenerate(p) => degenerate_target(p.n, p.k),
        Params::Treewidth(p) => p.width + 2,
        Params::Bipartite(p) => 4 * p.t * p.l * p.p_max,
        Params::Caught(p) => 2 * p.t,
        Params::Components { .. } => 2,
        Params::Supplied { d } => *d,
        Params::Lift { .. } => 1,
        Params::SuitableGadget { p, .. } => 2 * p,
        Params::Degree { pieces, .. } | Params::Genus { pieces, .. } => {
            if pieces.is_empty() {
                1
            } else {
                pieces
                    .iter()
                    .map(|p| bound_formula(&p.params))
                    .sum::<Result<usize>>()?
            }
        }
        Params::Ltw { ltw, .. } => 6 * ltw + 4,
    })
}

/// `7 + ⌈√(g / ln g)⌉`, with 8 for `g <= 1`.
pub fn genus_k(g: usize) -> usize {
    if g <= 1 {
        return 8;
    }
    let g = g as f64;
    7 + (g / g.ln()).sqrt().ceil() as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub construction: String,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub target_d: usize,
    pub fallback: bool,
    pub target: Target,
    pub params: Params,
    /// Construction-specific auxiliary data (permutations, colourings, partitions).
    pub witness: serde_json::Value,
    pub boxes: BoxRepresentation,
}

impl Certificate {
    /// Fills `d`, `target_d` and `fallback` from the boxes and parameters.
    pub fn new(
        construction: impl Into<String>,
        seed: u64,
        target: Target,
        params: Params,
        witness: serde_json::Value,
        boxes: BoxRepresentation,
        fallback: bool,
    ) -> Result<Certificate> {
        let target_d = bound_formula(&params)?;
        let d = boxes.dim();
        Ok(Certificate {
            construction: construction.into(),
            seed,
            n: boxes.n(),
            d,
            target_d,
            fallback: fallback || d > target_d,
            target,
            params,
            witness,
            boxes,
        })
    }

    /// Checks the boxes against the target graph derived from `g`.
    pub fn verify(&self, g: &Graph) -> Result<VerifyReport> {
        if self.n != g.n() {
            return Err(Error::structural(format!(
                "certificate is for {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        verify_box_rep(&self.target.graph(g)?, &self.boxes)
    }

    /// Recomputes every recorded formula value; errors on the first mismatch.
    pub fn replay_params(&self) -> Result<()> {
        if self.d != self.boxes.dim() {
            return Err(Error::structural(format!(
                "recorded d={} but boxes have {} dimensions",
                self.d,
                self.boxes.dim()
            )));
        }
        let target = bound_formula(&self.params)?;
        if target != self.target_d {
            return Err(Error::structural(format!(
                "recorded target_d={} but parameters give {target}",
                self.target_d
            )));
        }
        if self.d > self.target_d && !self.fallback {
            return Err(Error::structural(
                "dimension exceeds target without the fallback flag",
            ));
        }
        replay(&self.params)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }
}

fn mismatch(what: &str, recorded: impl std::fmt::Debug, recomputed: impl std::fmt::Debug) -> Error {
    Error::structural(format!(
        "{what}: recorded {recorded:?}, recomputed {recomputed:?}"
    ))
}

fn replay(params: &Params) -> Result<()> {
    match params {
        Params::Bipartite(p) => {
            let (r, l, t, h, p_bound) = bipartite_formulas(p.d, p.delta);
            if (r, l, t, h) != (p.r, p.l, p.t, p.h) {
                return Err(mismatch("(r, l, t, h)", (p.r, p.l, p.t, p.h), (r, l, t, h)));
            }
            if p_bound.to_bits() != p.p_bound.to_bits() {
                return Err(mismatch("p_bound", p.p_bound, p_bound));
            }
            if p.target_d != 4 * t * l * p.p_max {
                return Err(mismatch(
                    "bipartite target",
                    p.target_d,
                    4 * t * l * p.p_max,
                ));
            }
        }
        Params::Degenerate(p) => {
            if p.target_d != degenerate_target(p.n, p.k) {
                return Err(mismatch(
                    "degenerate target",
                    p.target_d,
                    degenerate_target(p.n, p.k),
                ));
            }
        }
        Params::Treewidth(p) => {
            if p.target_d != p.width + 2 {
                return Err(mismatch("treewidth target", p.target_d, p.width + 2));
            }
        }
        Params::Caught(p) => {
            if p.t != caught_count(p.k, p.n) {
                return Err(mismatch("caught t", p.t, caught_count(p.k, p.n)));
            }
        }
        Params::SuitableGadget {
            x_size, p_bound, ..
        } => {
            let b = suitable_gadget_bound(*x_size);
            if b.to_bits() != p_bound.to_bits() {
                return Err(mismatch("gadget p_bound", p_bound, b));
            }
        }
        Params::Degree {
            delta,
            d,
            k,
            pieces,
        } => {
            if *delta >= 2 {
                let (dd, kk) = auto_params_partition(*delta)?;
                if (Some(dd), Some(kk)) != (*d, *k) {
                    return Err(mismatch("(d, k)", (d, k), (dd, kk)));
                }
            }
            replay_pieces(pieces)?;
        }
        Params::Genus {
            g,
            branch,
            k,
            pieces,
            ..
        } => {
            let expect = match branch {
                GenusBranch::Deletion => None,
                GenusBranch::Suitable => Some(genus_k(*g)),
            };
            if *k != expect {
                return Err(mismatch("genus k", k, expect));
            }
            if let Some(k) = k {
                for p in pieces {
                    if let Params::Caught(c) = &p.params {
                        if c.k != *k {
                            return Err(mismatch("caught k", c.k, k));
                        }
                    }
                }
            }
            replay_pieces(pieces)?;
        }
        Params::Ltw {
            ltw,
            ltw_measured,
            d_sub,
            blocks,
            ..
        } => {
            if ltw < ltw_measured {
                return Err(mismatch("ltw below measured", ltw, ltw_measured));
            }
            let max = blocks.iter().flatten().map(|b| b.2).max().unwrap_or(1);
            if *d_sub != max.max(1) {
                return Err(mismatch("d_sub", d_sub, max));
            }
        }
        _ => {}
    }
    Ok(())
}

fn replay_pieces(pieces: &[Piece]) -> Result<()> {
    for p in pieces {
        let t = bound_formula(&p.params)?;
        if t != p.target_d {
            return Err(mismatch(&format!("piece {} target", p.name), p.target_d, t));
        }
        replay(&p.params)?;
    }
    Ok(())
}

/// `24 ln ln |X|`.
pub fn suitable_gadget_bound(x_size: usize) -> f64 {
    24.0 * (x_size as f64).ln().ln()
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.finite() {
            Some(v) => s.serialize_i64(v),
            None if *self == ExtInt::NEG_INF => s.serialize_str("-inf"),
            None => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) if v == i64::MIN || v == i64::MAX => {
                Err(D::Error::custom("coordinate out of range"))
            }
            Raw::Int(v) => Ok(ExtInt::fin(v)),
            Raw::Str(s) => match s.as_str() {
                "-inf" => Ok(ExtInt::NEG_INF),
                "+inf" | "inf" => Ok(ExtInt::POS_INF),
                _ => Err(D::Error::custom(format!("bad coordinate {s:?}"))),
            },
        }
    }
}

struct BoxesRef<'a>(&'a BoxRepresentation);

impl Serialize for BoxesRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rep = self.0;
        let covered = rep.covered_vertices();
        let mut map = s.serialize_map(Some(covered.len()))?;
        for v in covered {
            let b: Vec<[ExtInt; 2]> = rep
                .get_box(v)
                .unwrap()
                .iter()
                .map(|iv| [iv.lo, iv.hi])
                .collect();
            map.serialize_entry(&v.to_string(), &b)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct CertificateOut<'a> {
    construction: &'a str,
    seed: u64,
    n: usize,
    d: usize,
    target_d: usize,
    fallback: bool,
    target: &'a Target,
    params: &'a Params,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    witness: &'a serde_json::Value,
    boxes: BoxesRef<'a>,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateOut {
            construction: &self.construction,
            seed: self.seed,
            n: self.n,
            d: self.d,
            target_d: self.target_d,
            fallback: self.fallback,
            target: &self.target,
            params: &self.params,
            witness: &self.witness,
            boxes: BoxesRef(&self.boxes),
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
struct CertificateIn {
    construction: String,
    seed: u64,
    n: Option<usize>,
    d: usize,
    #[serde(default)]
    target_d: Option<usize>,
    #[serde(default)]
    fallback: bool,
    #[serde(default = "whole")]
    target: Target,
    #[serde(default = "supplied")]
    params: Params,
    #[serde(default)]
    witness: serde_json::Value,
    boxes: BTreeMap<String, Vec<[ExtInt; 2]>>,
}

fn whole() -> Target {
    Target::Whole
}

fn supplied() -> Params {
    Params::Supplied { d: 0 }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = CertificateIn::deserialize(de)?;
        let mut ids = Vec::with_capacity(raw.boxes.len());
        for (k, b) in &raw.boxes {
            let v: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad vertex key {k:?}")))?;
            if b.len() != raw.d {
                return Err(D::Error::custom(format!(
                    "box of vertex {v} has {} intervals, expected {}",
                    b.len(),
                    raw.d
                )));
            }
            ids.push(v);
        }
        let n = raw
            .n
            .unwrap_or_else(|| ids.iter().max().map_or(0, |&m| m + 1));
        let mut boxes: Vec<Option<Vec<Interval>>> = vec![None; n];
        for (v, b) in ids.into_iter().zip(raw.boxes.into_values()) {
            if v >= n {
                return Err(D::Error::custom(format!(
                    "vertex {v} out of range for n={n}"
                )));
            }
            boxes[v] = Some(b.into_iter().map(|[lo, hi]| Interval { lo, hi }).collect());
        }
        let rep = BoxRepresentation::from_boxes(raw.d, boxes).map_err(D::Error::custom)?;
        let params = match raw.params {
            Params::Supplied { d: 0 } => Params::Supplied { d: raw.d },
            p => p,
        };
        Ok(Certificate {
            construction: raw.construction,
            seed: raw.seed,
            n,
            d: raw.d,
            target_d: raw.target_d.unwrap_or(raw.d),
            fallback: raw.fallback,
            target: raw.target,
            params,
            witness: raw.witness,
            boxes: rep,
        })
    }
}
