//! Independent checkers for box representations and realizers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::BoxRepresentation;
use crate::graph::Graph;
use crate::poset::{ranks_of, Poset};

pub const DEFAULT_VIOLATION_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `uv` is an edge but the boxes are disjoint.
    MissingEdge,
    /// `uv` is a non-edge but the boxes intersect.
    SpuriousIntersection,
    /// `u < v` in the poset but some order puts `v` first.
    BrokenRelation,
    /// `u` precedes `v` in every order but `u < v` does not hold.
    SpuriousRelation,
    /// Incomparable `(x, y)` with no order placing `x` below the up-set of `y`.
    UnseparatedPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub u: usize,
    pub v: usize,
}

/// Violations found by a verifier. Only the first `cap` are kept; `total`
/// counts all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
    pub total: usize,
    #[serde(skip)]
    cap: usize,
}

impl VerifyReport {
    pub fn with_cap(cap: usize) -> Self {
        VerifyReport {
            violations: Vec::new(),
            total: 0,
            cap,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, kind: ViolationKind, u: usize, v: usize) {
        self.total += 1;
        if self.violations.len() < self.cap {
            self.violations.push(Violation { kind, u, v });
        }
    }

    /// `Ok(())` when clean, otherwise a verification error carrying the report.
    pub fn into_result(self) -> Result<()> {
        if self.is_clean() {
            Ok(())
        } else {
            Err(Error::Verification(self))
        }
    }
}

impl Default for VerifyReport {
    fn default() -> Self {
        VerifyReport::with_cap(DEFAULT_VIOLATION_CAP)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.total)?;
        for x in self.violations.iter().take(10) {
            write!(f, "; {:?} {{{}, {}}}", x.kind, x.u, x.v)?;
        }
        if self.total > 10 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Checks that `rep` is a box representation of `g`: boxes of `u` and `v`
/// meet iff `uv` is an edge.
pub fn verify_box_rep(g: &Graph, rep: &BoxRepresentation) -> Result<VerifyReport> {
    verify_box_rep_capped(g, rep, DEFAULT_VIOLATION_CAP)
}

pub fn verify_box_rep_capped(
    g: &Graph,
    rep: &BoxRepresentation,
    cap: usize,
) -> Result<VerifyReport> {
    let n = g.n();
    if rep.n() != n {
        return Err(Error::structural(format!(
            "representation has {} vertices, graph has {n}",
            rep.n()
        )));
    }
    for v in 0..n {
        match rep.get_box(v) {
            None => return Err(Error::structural(format!("vertex {v} has no box"))),
            Some(b) => {
                if b.iter().any(|iv| !iv.is_valid()) {
                    return Err(Error::structural(format!(
                        "vertex {v} has an empty interval"
                    )));
                }
            }
        }
    }
    let mut report = VerifyReport::with_cap(cap);
    for u in 0..n {
        for v in u + 1..n {
            let meet = rep.boxes_meet(u, v);
            let edge = g.has_edge(u, v);
            if edge && !meet {
                report.push(ViolationKind::MissingEdge, u, v);
            } else if !edge && meet {
                report.push(ViolationKind::SpuriousIntersection, u, v);
            }
        }
    }
    Ok(report)
}

/// Checks that the intersection of `orders` is exactly `p`.
pub fn verify_realizer(p: &Poset, orders: &[Vec<usize>]) -> Result<VerifyReport> {
    let n = p.n();
    let ranks: Vec<Vec<usize>> = orders
        .iter()
        .map(|o| ranks_of(o, n))
        .collect::<Result<_>>()?;
    let mut report = VerifyReport::default();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let below_everywhere = ranks.iter().all(|r| r[u] < r[v]);
            if p.less(u, v) && !below_everywhere {
                report.push(ViolationKind::BrokenRelation, u, v);
            } else if !p.less(u, v) && below_everywhere {
                report.push(ViolationKind::SpuriousRelation, u, v);
            }
        }
    }
    Ok(report)
}

/// Füredi–Kahn condition: for every incomparable `(x, y)` some order puts `x`
/// before every `z` with `y <= z`. The orders need not be linear extensions.
pub fn verify_fk_realizer(p: &Poset, orders: &[Vec<usize>]) -> Result<VerifyReport> {
    let n = p.n();
    let ranks: Vec<Vec<usize>> = orders
        .iter()
        .map(|o| ranks_of(o, n))
        .collect::<Result<_>>()?;
    // min rank over the up-set of y, per order
    let up_min: Vec<Vec<usize>> = ranks
        .iter()
        .map(|r| {
            (0..n)
                .map(|y| p.above(y).map(|z| r[z]).fold(r[y], usize::min))
                .collect()
        })
        .collect();
    let mut report = VerifyReport::default();
    for (x, y) in p.incomparable_pairs() {
        let ok = ranks.iter().zip(&up_min).any(|(r, m)| r[x] < m[y]);
        if !ok {
            report.push(ViolationKind::UnseparatedPair, x, y);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Interval;

    fn one_dim(ivs: &[(i64, i64)]) -> BoxRepresentation {
        let col: Vec<Interval> = ivs.iter().map(|&(a, b)| Interval::new(a, b)).collect();
        BoxRepresentation::from_columns(ivs.len(), &[col]).unwrap()
    }

    #[test]
    fn triangle_with_equal_boxes_is_clean() {
        let r = verify_box_rep(&Graph::complete(3), &one_dim(&[(0, 1), (0, 1), (0, 1)])).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn path_with_equal_boxes_flags_pair_0_2() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = verify_box_rep(&p3, &one_dim(&[(0, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(r.total, 1);
        assert_eq!(
            r.violations[0],
            Violation {
                kind: ViolationKind::SpuriousIntersection,
                u: 0,
                v: 2
            }
        );
    }

    #[test]
    fn missing_box_is_structural() {
        let rep = BoxRepresentation::uncovered(2, 1);
        assert!(matches!(
            verify_box_rep(&Graph::empty(2), &rep),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn report_cap_limits_storage_not_count() {
        let g = Graph::empty(20);
        let rep = BoxRepresentation::universal(20, 1);
        let r = verify_box_rep_capped(&g, &rep, 5).unwrap();
        assert_eq!(r.total, 190);
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn realizer_examples() {
        let chain = Poset::chain(3);
        assert!(verify_realizer(&chain, &[vec![0, 1, 2]])
            .unwrap()
            .is_clean());
        assert!(!verify_realizer(&chain, &[vec![1, 0, 2]])
            .unwrap()
            .is_clean());
        let anti = Poset::antichain(2);
        assert!(verify_realizer(&anti, &[vec![0, 1], vec![1, 0]])
            .unwrap()
            .is_clean());
        assert!(!verify_realizer(&anti, &[vec![0, 1]]).unwrap().is_clean());
        assert!(verify_realizer(&anti, &[vec![0, 0]]).is_err());
    }

    #[test]
    fn fk_examples() {
        let chain = Poset::chain(3);
        assert!(verify_fk_realizer(&chain, &[vec![0, 1, 2]])
            .unwrap()
            .is_clean());
        let anti = Poset::antichain(2);
        assert!(verify_fk_realizer(&anti, &[vec![0, 1], vec![1, 0]])
            .unwrap()
            .is_clean());
        assert!(!verify_fk_realizer(&anti, &[vec![0, 1]]).unwrap().is_clean());
    }
}
