//! Strict partial orders and realizers.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A strict partial order on `0..n`, stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    lt: BitMatrix,
}

impl Poset {
    /// Builds the transitive closure of the given cover/order relations.
    /// Cycles (including self-relations) are rejected.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Poset> {
        let mut lt = BitMatrix::new(n);
        for &(u, v) in relations {
            if u >= n || v >= n {
                return Err(Error::structural(format!(
                    "relation {u}<{v} out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::structural(format!("reflexive relation {u}<{u}")));
            }
            lt.set(u, v);
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if lt.get(i, k) {
                    for j in lt.row_iter(k).collect::<Vec<_>>() {
                        lt.set(i, j);
                    }
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| lt.get(v, v)) {
            return Err(Error::structural(format!(
                "relations contain a cycle through {v}"
            )));
        }
        Ok(Poset { lt })
    }

    pub fn antichain(n: usize) -> Poset {
        Poset {
            lt: BitMatrix::new(n),
        }
    }

    pub fn chain(n: usize) -> Poset {
        let rels: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &rels).unwrap()
    }

    pub fn n(&self) -> usize {
        self.lt.len()
    }

    #[inline]
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.lt.get(u, v)
    }

    #[inline]
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.lt.get(u, v) || self.lt.get(v, u)
    }

    /// All `(u, v)` with `u < v` in the order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.lt.row_iter(u).map(move |v| (u, v)))
            .collect()
    }

    /// Elements strictly above `v`.
    pub fn above(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.lt.row_iter(v)
    }

    /// Ordered pairs `(x, y)` of distinct incomparable elements.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && !self.comparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Edge `uv` iff `u` and `v` are comparable.
    pub fn comparability_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.relations() {
            g.add_edge(u, v).expect("closed relation has no loops");
        }
        g
    }

    /// Standard example `S_m`: minimal `a_i = i`, maximal `b_j = m + j`,
    /// with `a_i < b_j` iff `i != j`.
    pub fn standard_example(m: usize) -> Poset {
        let mut rels = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    rels.push((i, m + j));
                }
            }
        }
        Poset::from_relations(2 * m, &rels).unwrap()
    }

    /// A linear extension obtained by stably re-sorting `order`: at every step
    /// the earliest element of `order` whose predecessors are all placed is emitted.
    pub fn linearize(&self, order: &[usize]) -> Result<Vec<usize>> {
        let n = self.n();
        check_permutation(order, n)?;
        let mut pending: Vec<usize> = (0..n)
            .map(|v| (0..n).filter(|&u| self.less(u, v)).count())
            .collect();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v = *order
                .iter()
                .find(|&&v| !placed[v] && pending[v] == 0)
                .expect("acyclic order always has a minimal element");
            placed[v] = true;
            out.push(v);
            for w in self.above(v) {
                pending[w] -= 1;
            }
        }
        Ok(out)
    }
}

/// A list of total orders, each given as the sequence of elements from
/// smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    pub orders: Vec<Vec<usize>>,
}

impl Realizer {
    pub fn new(orders: Vec<Vec<usize>>) -> Self {
        Realizer { orders }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// `ranks()[i][v]` is the 1-based position of `v` in order `i`.
    pub fn ranks(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        self.orders.iter().map(|o| ranks_of(o, n)).collect()
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    ranks_of(order, n).map(|_| ())
}

pub(crate) fn ranks_of(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::structural(format!(
            "order has {} elements, expected {n}",
            order.len()
        )));
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != 0 {
            return Err(Error::structural(format!(
                "order is not a permutation of 0..{n}"
            )));
        }
        rank[v] = i + 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert!(Poset::from_relations(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Poset::from_relations(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn comparability_examples() {
        assert!(Poset::chain(3).comparability_graph().is_complete());
        assert_eq!(Poset::antichain(3).comparability_graph().m(), 0);
        let g = Poset::standard_example(3).comparability_graph();
        assert_eq!(g.m(), 6);
        for i in 0..3 {
            assert!(!g.has_edge(i, 3 + i));
            for j in 0..3 {
                assert_eq!(g.has_edge(i, 3 + j), i != j);
            }
        }
    }

    #[test]
    fn linearize_moves_elements_after_predecessors() {
        let p = Poset::from_relations(3, &[(2, 0)]).unwrap();
        assert_eq!(p.linearize(&[0, 1, 2]).unwrap(), vec![1, 2, 0]);
        assert!(p.linearize(&[0, 0, 1]).is_err());
    }
}
