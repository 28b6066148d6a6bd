use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{bits, DiameterGraph};

fn clear(row: &mut [u64], v: usize) {
    row[v / 64] &= !(1 << (v % 64));
}

fn popcount(row: &[u64]) -> u64 {
    row.iter().map(|w| w.count_ones() as u64).sum()
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Neighbours of `v` with a larger label.
fn forward(g: &DiameterGraph, v: usize) -> Vec<u64> {
    let mut row = g.row(v).to_vec();
    for b in 0..=v {
        clear(&mut row, b);
    }
    row
}

fn count_ext(g: &DiameterGraph, cand: &[u64], k: usize) -> u64 {
    match k {
        0 => 1,
        1 => popcount(cand),
        _ => {
            let mut rest = cand.to_vec();
            let mut total = 0;
            for u in bits(cand) {
                clear(&mut rest, u);
                let next = and(&rest, g.row(u));
                total += count_ext(g, &next, k - 1);
            }
            total
        }
    }
}

/// Exact number of cliques with `l` vertices.
pub fn count_cliques(g: &DiameterGraph, l: usize) -> u64 {
    match l {
        0 => 1,
        1 => g.n() as u64,
        2 => g.edge_count() as u64,
        _ if l > g.n() => 0,
        _ => {
            let per_vertex = |v: usize| count_ext(g, &forward(g, v), l - 1);
            if g.n() >= 48 {
                (0..g.n()).into_par_iter().map(per_vertex).sum()
            } else {
                (0..g.n()).map(per_vertex).sum()
            }
        }
    }
}

fn enum_ext(g: &DiameterGraph, cand: &[u64], k: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        out.push(stack.clone());
        return;
    }
    let mut rest = cand.to_vec();
    for u in bits(cand) {
        clear(&mut rest, u);
        stack.push(u);
        let next = and(&rest, g.row(u));
        enum_ext(g, &next, k - 1, stack, out);
        stack.pop();
    }
}

/// Every `l`-clique as a sorted vertex list, in lexicographic order.
pub fn enumerate_cliques(g: &DiameterGraph, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if l == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut stack = Vec::with_capacity(l);
    for v in 0..g.n() {
        stack.push(v);
        enum_ext(g, &forward(g, v), l - 1, &mut stack, &mut out);
        stack.pop();
    }
    out
}

/// Clique counts for sizes 2 through 5, optionally with one size listed.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueReport {
    pub counts: BTreeMap<usize, u64>,
    pub cliques_of_size: Option<(usize, Vec<Vec<usize>>)>,
}

pub fn clique_report(g: &DiameterGraph, list_size: Option<usize>) -> CliqueReport {
    CliqueReport {
        counts: (2..=5).map(|l| (l, count_cliques(g, l))).collect(),
        cliques_of_size: list_size.map(|l| (l, enumerate_cliques(g, l))),
    }
}

fn mask(n: usize, c: &[usize]) -> Vec<u64> {
    let mut m = vec![0u64; super::words_for(n)];
    for &v in c {
        m[v / 64] |= 1 << (v % 64);
    }
    m
}

fn shared(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Unordered pairs of distinct `l`-cliques meeting in exactly `k` vertices.
pub fn cliques_sharing_exactly(g: &DiameterGraph, l: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let cl = enumerate_cliques(g, l);
    let masks: Vec<Vec<u64>> = cl.iter().map(|c| mask(g.n(), c)).collect();
    let mut out = Vec::new();
    for i in 0..cl.len() {
        for j in i + 1..cl.len() {
            if shared(&masks[i], &masks[j]) == k {
                out.push((cl[i].clone(), cl[j].clone()));
            }
        }
    }
    out
}

/// One class of intersecting `l`-cliques.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueClass {
    pub vertices: Vec<usize>,
    pub cliques: Vec<Vec<usize>>,
    /// Smallest overlap between two cliques of the class (`None` for a single clique).
    pub min_pairwise_share: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliquePartition {
    pub l: usize,
    pub classes: Vec<CliqueClass>,
}

impl CliquePartition {
    /// Whether inside every class any two cliques share at least two vertices.
    pub fn pairwise_share_at_least_two(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.min_pairwise_share.is_none_or(|s| s >= 2))
    }

    /// Whether each class has no more cliques than vertices.
    pub fn cliques_within_vertex_budget(&self) -> bool {
        self.classes.iter().all(|c| c.cliques.len() <= c.vertices.len())
    }

    pub fn vertex_total(&self) -> usize {
        self.classes.iter().map(|c| c.vertices.len()).sum()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Components of the "share at least one vertex" relation on `l`-cliques.
/// Classes are ordered by their smallest vertex.
pub fn clique_equivalence_partition(g: &DiameterGraph, l: usize) -> CliquePartition {
    let cl = enumerate_cliques(g, l);
    let mut parent: Vec<usize> = (0..cl.len()).collect();
    let mut first_at: Vec<Option<usize>> = vec![None; g.n()];
    for (ci, c) in cl.iter().enumerate() {
        for &v in c {
            match first_at[v] {
                None => first_at[v] = Some(ci),
                Some(cj) => {
                    let (a, b) = (find(&mut parent, ci), find(&mut parent, cj));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ci in 0..cl.len() {
        groups.entry(find(&mut parent, ci)).or_default().push(ci);
    }
    let mut classes: Vec<CliqueClass> = groups
        .into_values()
        .map(|members| {
            let mut vertices: Vec<usize> = members.iter().flat_map(|&c| cl[c].iter().copied()).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let masks: Vec<Vec<u64>> = members.iter().map(|&c| mask(g.n(), &cl[c])).collect();
            let mut min_share = None;
            for i in 0..masks.len() {
                for j in i + 1..masks.len() {
                    let s = shared(&masks[i], &masks[j]);
                    min_share = Some(min_share.map_or(s, |m: usize| m.min(s)));
                }
            }
            CliqueClass {
                vertices,
                cliques: members.iter().map(|&c| cl[c].clone()).collect(),
                min_pairwise_share: min_share,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.vertices[0]);
    CliquePartition { l, classes }
}
