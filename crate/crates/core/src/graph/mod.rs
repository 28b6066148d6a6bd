//! Diameter graphs and their exact combinatorics.

mod bounds;
mod cliques;
mod coloring;
mod cycles;

pub use bounds::{find_ks3, kst_condition, kst_condition_density, triangle_bound_check, TriangleBound};
pub use cliques::{
    clique_equivalence_partition, clique_report, cliques_sharing_exactly, count_cliques,
    enumerate_cliques, CliqueClass, CliquePartition, CliqueReport,
};
pub use coloring::{chromatic_number, color_with, CHROMATIC_CAP};
pub use cycles::{odd_cycles_pairwise_intersect, simple_odd_cycles, ODD_CYCLE_CAP};

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{self, PointSet, DEFAULT_EPS};

/// Largest accepted "at diameter" tolerance.
pub const MAX_EPS: f64 = 1e-3;

/// Undirected simple graph with bit-packed adjacency rows.
///
/// Built from a point set, it joins `i` and `j` iff
/// `dist(p_i, p_j) >= diam * (1 - eps)`.
#[derive(Debug, Clone)]
pub struct DiameterGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    diam: f64,
    tolerance: f64,
    source: Option<Arc<PointSet>>,
}

impl PartialEq for DiameterGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl DiameterGraph {
    pub fn build(ps: &PointSet, eps: f64) -> Result<Self> {
        if !(0.0..=MAX_EPS).contains(&eps) {
            return Err(Error::Domain(format!("tolerance {eps} outside [0, {MAX_EPS}]")));
        }
        let d = geometry::diameter(ps)?;
        if d.value <= 1e-12 {
            return Err(Error::DegenerateSet("all points coincide".into()));
        }
        let n = ps.len();
        let mut g = Self::empty(n);
        let cut = d.value * (1.0 - eps);
        for i in 0..n {
            for j in i + 1..n {
                if geometry::dist(ps.point(i), ps.point(j)) >= cut {
                    g.add_edge(i, j);
                }
            }
        }
        g.diam = d.value;
        g.tolerance = eps;
        g.source = Some(Arc::new(ps.clone()));
        Ok(g)
    }

    /// Diameter graph at the default tolerance.
    pub fn of(ps: &PointSet) -> Result<Self> {
        Self::build(ps, DEFAULT_EPS)
    }

    /// Abstract graph on `0..n` (no geometric source, `diam = 1`).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Domain(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            if i == j {
                return Err(Error::Domain(format!("self-loop at {i}")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    fn empty(n: usize) -> Self {
        let words = words_for(n);
        DiameterGraph {
            n,
            words,
            rows: vec![0; n * words],
            diam: 1.0,
            tolerance: 0.0,
            source: None,
        }
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        let w = self.words;
        self.rows[i * w + j / 64] |= 1 << (j % 64);
        self.rows[j * w + i / 64] |= 1 << (i % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diam(&self) -> f64 {
        self.diam
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn source(&self) -> Option<&PointSet> {
        self.source.as_deref()
    }

    /// Words per adjacency row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.row(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in bits(self.row(i)).filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Subgraph induced on `labels`, relabelled `0..labels.len()` in order.
    pub fn induced(&self, labels: &[usize]) -> DiameterGraph {
        let mut g = Self::empty(labels.len());
        for (a, &i) in labels.iter().enumerate() {
            for (b, &j) in labels.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge(a, b);
                }
            }
        }
        g.diam = self.diam;
        g.tolerance = self.tolerance;
        g.source = self.source.as_ref().map(|ps| Arc::new(ps.subset(labels)));
        g
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in bits(self.row(v)) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// DIMACS edge format, 1-indexed.
    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut s = format!("p edge {} {}\n", self.n, edges.len());
        for (i, j) in edges {
            s.push_str(&format!("e {} {}\n", i + 1, j + 1));
        }
        s
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let mut tok = line.split_whitespace();
            let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
            match tok.next() {
                None | Some("c") => {}
                Some("p") => {
                    if tok.next() != Some("edge") || n.is_some() {
                        return Err(bad());
                    }
                    n = Some(tok.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad)?);
                }
                Some("e") => {
                    let mut end = || {
                        tok.next()
                            .and_then(|t| t.parse::<usize>().ok())
                            .filter(|&x| x >= 1)
                            .ok_or_else(bad)
                    };
                    let (i, j) = (end()?, end()?);
                    edges.push((i - 1, j - 1));
                }
                Some(_) => return Err(bad()),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing \"p edge\" header".into()))?;
        Self::from_edges(n, &edges)
    }

    /// `{"n": int, "edges": [[i, j], ...]}`, edges sorted.
    pub fn to_json_value(&self) -> Value {
        json!({
            "n": self.n,
            "edges": self.edges().into_iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        })
    }
}

/// Iterate the set bits of a packed row.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_simplex;

    pub(crate) fn cycle(n: usize) -> DiameterGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        DiameterGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn simplex_is_complete() {
        let g = DiameterGraph::of(&regular_simplex(4)).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!((g.diam() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_circle_pair_is_one_edge() {
        let (r1, r2) = (0.6f64, 0.8f64);
        let ps = PointSet::new(4, vec![vec![r1, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, r2]]).unwrap();
        let g = DiameterGraph::of(&ps).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert!((g.diam() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pentagram_gives_five_cycle() {
        let r = 1.0 / (2.0 * (2.0 * std::f64::consts::PI / 5.0).sin());
        let pts = (0..5)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        let g = DiameterGraph::of(&PointSet::new(2, pts).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 5);
        for v in 0..5 {
            assert_eq!(g.neighbors(v), {
                let mut x = vec![(v + 2) % 5, (v + 3) % 5];
                x.sort();
                x
            });
        }
        assert!((g.diam() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn build_errors() {
        let ps = PointSet::new(2, vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(DiameterGraph::of(&ps), Err(Error::DegenerateSet(_))));
        let ok = regular_simplex(3);
        assert!(DiameterGraph::build(&ok, 2e-3).is_err());
        assert!(DiameterGraph::build(&ok, -1.0).is_err());
    }

    #[test]
    fn dimacs_roundtrip() {
        let g = cycle(7);
        let text = g.to_dimacs();
        assert!(text.starts_with("p edge 7 7\ne 1 2\n"));
        assert_eq!(DiameterGraph::from_dimacs(&text).unwrap(), g);
        assert!(DiameterGraph::from_dimacs("e 1 2\n").is_err());
        assert!(DiameterGraph::from_dimacs("p edge 2 1\ne 0 1\n").is_err());
    }

    #[test]
    fn json_edges_sorted() {
        let g = DiameterGraph::from_edges(4, &[(3, 1), (0, 2), (2, 1)]).unwrap();
        assert_eq!(
            serde_json::to_string(&g.to_json_value()).unwrap(),
            r#"{"n":4,"edges":[[0,2],[1,2],[1,3]]}"#
        );
    }

    #[test]
    fn wide_rows() {
        let e: Vec<_> = (0..130).map(|i| (i, 129 - i)).filter(|(a, b)| a != b).collect();
        let g = DiameterGraph::from_edges(130, &e).unwrap();
        assert_eq!(g.words(), 3);
        assert!(g.has_edge(0, 129) && g.has_edge(129, 0));
        assert_eq!(g.edge_count(), 65);
        assert_eq!(g.neighbors(1), vec![128]);
    }
}
