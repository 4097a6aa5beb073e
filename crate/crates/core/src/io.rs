//! Text formats for graphs, posets, tree decompositions, layerings and
//! vertex sets.
//!
//! Blank lines and lines starting with `#` or `c ` are ignored everywhere.
//! Vertices are 0-based.

use std::fmt::Write as _;

use crate::builders::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pipelines::Layering;
use crate::poset::Poset;

/// Content lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && l != &"c" && !l.starts_with("c "))
}

fn numbers(line: usize, s: &str, expect: Option<usize>) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| {
                Error::parse(line, format!("expected a non-negative integer, got {t:?}"))
            })
        })
        .collect::<Result<_>>()?;
    if let Some(k) = expect {
        if v.len() != k {
            return Err(Error::parse(
                line,
                format!("expected {k} integers, got {}", v.len()),
            ));
        }
    }
    Ok(v)
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    word: &str,
    count: usize,
) -> Result<Vec<usize>> {
    let (ln, l) = it
        .next()
        .ok_or_else(|| Error::parse(0, format!("missing \"{word}\" header")))?;
    let rest = l
        .strip_prefix(word)
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::parse(ln, format!("expected \"{word} ...\" header")))?;
    numbers(ln, rest, Some(count))
}

fn pairs<'a>(
    it: impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    m: usize,
    what: &str,
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::with_capacity(m);
    let mut last = 0;
    for (ln, l) in it {
        let v = numbers(ln, l, Some(2))?;
        if v[0] >= n || v[1] >= n {
            return Err(Error::parse(ln, format!("vertex out of range for n={n}")));
        }
        out.push((v[0], v[1]));
        last = ln;
    }
    if out.len() != m {
        return Err(Error::parse(
            last,
            format!("header promises {m} {what}, found {}", out.len()),
        ));
    }
    Ok(out)
}

/// `graph <n> <m>` followed by `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let h = header(&mut it, "graph", 2)?;
    let edges = pairs(&mut it, h[0], h[1], "edges")?;
    Graph::from_edges(h[0], &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// `poset <n> <k>` followed by `k` lines `u v` meaning `u < v`.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let h = header(&mut it, "poset", 2)?;
    let rels = pairs(&mut it, h[0], h[1], "relations")?;
    Poset::from_relations(h[0], &rels)
}

/// Writes the cover relations only.
pub fn write_poset(p: &Poset) -> String {
    let rels = p.relations();
    let covers: Vec<(usize, usize)> = rels
        .iter()
        .copied()
        .filter(|&(u, v)| !(0..p.n()).any(|z| p.less(u, z) && p.less(z, v)))
        .collect();
    let mut s = format!("poset {} {}\n", p.n(), covers.len());
    for (u, v) in covers {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// `td <bags> <width+1> <n>`, then one line `b <i> <vertices...>` per bag
/// (bags numbered from 0), then `bags - 1` tree edges `i j`.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut it = lines(text);
    let h = header(&mut it, "td", 3)?;
    let (nb, size, n) = (h[0], h[1], h[2]);
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nb];
    for _ in 0..nb {
        let (ln, l) = it
            .next()
            .ok_or_else(|| Error::parse(0, format!("expected {nb} bag lines")))?;
        let rest = l
            .strip_prefix('b')
            .ok_or_else(|| Error::parse(ln, "expected a bag line \"b <i> ...\""))?;
        let v = numbers(ln, rest, None)?;
        let Some((&i, verts)) = v.split_first() else {
            return Err(Error::parse(ln, "bag line without an index"));
        };
        if i >= nb || bags[i].is_some() {
            return Err(Error::parse(
                ln,
                format!("bag index {i} out of range or repeated"),
            ));
        }
        if verts.len() > size {
            return Err(Error::parse(
                ln,
                format!("bag {i} has {} vertices, header allows {size}", verts.len()),
            ));
        }
        if let Some(&x) = verts.iter().find(|&&x| x >= n) {
            return Err(Error::parse(
                ln,
                format!("vertex {x} out of range for n={n}"),
            ));
        }
        bags[i] = Some(verts.to_vec());
    }
    let bags: Vec<Vec<usize>> = bags.into_iter().map(|b| b.unwrap()).collect();
    let edges = pairs(it, nb, nb.saturating_sub(1), "tree edges")?;
    Ok(TreeDecomposition { n, bags, edges })
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut s = format!("td {} {} {}\n", td.bags.len(), td.width() + 1, td.n);
    for (i, b) in td.bags.iter().enumerate() {
        let _ = write!(s, "b {i}");
        for v in b {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    for (x, y) in &td.edges {
        let _ = writeln!(s, "{x} {y}");
    }
    s
}

/// Whitespace-separated layer indices, one per vertex in order.
pub fn parse_layers(text: &str, n: usize) -> Result<Layering> {
    let mut layer = Vec::with_capacity(n);
    for (ln, l) in lines(text) {
        layer.extend(numbers(ln, l, None)?);
    }
    if layer.len() != n {
        return Err(Error::parse(
            0,
            format!("expected {n} layer indices, got {}", layer.len()),
        ));
    }
    Ok(Layering { layer })
}

pub fn write_layers(l: &Layering) -> String {
    let mut s = l
        .layer
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

/// Whitespace-separated vertex ids, each below `n` and listed once.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    for (ln, l) in lines(text) {
        for v in numbers(ln, l, None)? {
            if v >= n || seen[v] {
                return Err(Error::parse(
                    ln,
                    format!("vertex {v} out of range or repeated"),
                ));
            }
            seen[v] = true;
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let text = "# comment\ngraph 3 1\n\n0 2\n";
        assert!(parse_graph(text).unwrap().has_edge(0, 2));
    }

    #[test]
    fn graph_errors_carry_lines() {
        assert!(matches!(
            parse_graph("graph 3 2\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3 1\n0 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("grph 3 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3 1\n1 1\n"),
            Err(Error::Parameter(_) | Error::Structural(_))
        ));
    }

    #[test]
    fn poset_closure_and_cycle() {
        let p = parse_poset("poset 3 2\n0 1\n1 2\n").unwrap();
        assert!(p.less(0, 2));
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        assert!(parse_poset("poset 2 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition {
            n: 4,
            bags: vec![vec![0, 1, 2], vec![0, 2, 3]],
            edges: vec![(0, 1)],
        };
        assert_eq!(parse_td(&write_td(&td)).unwrap(), td);
        assert!(parse_td("td 2 2 3\nb 0 0 1 2\nb 1 1\n0 1\n").is_err());
    }

    #[test]
    fn layers_and_sets() {
        let l = parse_layers("0 1\n2\n", 3).unwrap();
        assert_eq!(l.layer, vec![0, 1, 2]);
        assert_eq!(parse_layers(&write_layers(&l), 3).unwrap(), l);
        assert!(parse_layers("0 1", 3).is_err());
        assert_eq!(parse_vertex_set("3 1\n", 4).unwrap(), vec![3, 1]);
        assert!(parse_vertex_set("1 1", 4).is_err());
    }
}
