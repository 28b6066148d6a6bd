use super::{bits, DiameterGraph};
use crate::error::{Error, Result};

/// Largest graph accepted by the exhaustive odd-cycle routines.
pub const ODD_CYCLE_CAP: usize = 16;

fn check_cap(g: &DiameterGraph, what: &'static str) -> Result<()> {
    if g.n() > ODD_CYCLE_CAP {
        return Err(Error::SizeCap {
            what,
            cap: ODD_CYCLE_CAP,
            n: g.n(),
        });
    }
    Ok(())
}

fn adj_masks(g: &DiameterGraph) -> Vec<u32> {
    (0..g.n()).map(|v| g.row(v)[0] as u32).collect()
}

/// Walks simple paths `start, p1, ..., pk` over labels above `start` and
/// reports each cycle once: the closing vertex must exceed `p1`. With
/// `chordless`, the path is kept induced.
struct Walker<'a, F: FnMut(&[usize]) -> bool> {
    adj: &'a [u32],
    chordless: bool,
    path: Vec<usize>,
    on_cycle: F,
}

impl<F: FnMut(&[usize]) -> bool> Walker<'_, F> {
    // returns false to stop the enumeration
    fn extend(&mut self, interior: u32) -> bool {
        let start = self.path[0];
        let cur = *self.path.last().expect("nonempty");
        let used: u32 = self.path.iter().map(|&v| 1u32 << v).sum();
        for w in bits(&[self.adj[cur] as u64]) {
            if w <= start || used >> w & 1 == 1 {
                continue;
            }
            if self.chordless && self.adj[w] & interior != 0 {
                continue;
            }
            let closes = self.path.len() >= 2 && self.adj[w] >> start & 1 == 1;
            if closes && w > self.path[1] && self.path.len() % 2 == 0 {
                self.path.push(w);
                let go_on = (self.on_cycle)(&self.path);
                self.path.pop();
                if !go_on {
                    return false;
                }
            }
            if closes && self.chordless {
                // any longer path through w would have the chord (w, start)
                continue;
            }
            let next_interior = if self.path.len() >= 2 { interior | 1 << cur } else { interior };
            self.path.push(w);
            let go_on = self.extend(next_interior);
            self.path.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn walk(g: &DiameterGraph, chordless: bool, mut on_cycle: impl FnMut(&[usize]) -> bool) {
    let adj = adj_masks(g);
    for s in 0..g.n() {
        let mut w = Walker {
            adj: &adj,
            chordless,
            path: vec![s],
            on_cycle: &mut on_cycle,
        };
        if !w.extend(0) {
            return;
        }
    }
}

/// Every simple odd cycle, as a vertex sequence starting at its smallest
/// label and continuing towards the smaller of that label's two neighbours.
pub fn simple_odd_cycles(g: &DiameterGraph) -> Result<Vec<Vec<usize>>> {
    check_cap(g, "simple_odd_cycles")?;
    let mut out = Vec::new();
    walk(g, false, |c| {
        out.push(c.to_vec());
        true
    });
    Ok(out)
}

/// True iff no two simple odd cycles are vertex-disjoint.
///
/// Every odd cycle contains a chordless odd cycle on a subset of its
/// vertices, so only chordless odd cycles are enumerated; each new one is
/// tested against those already seen, stopping at the first disjoint pair.
pub fn odd_cycles_pairwise_intersect(g: &DiameterGraph) -> Result<bool> {
    check_cap(g, "odd_cycles_pairwise_intersect")?;
    let mut seen: Vec<u32> = Vec::new();
    let mut disjoint = false;
    walk(g, true, |c| {
        let m: u32 = c.iter().map(|&v| 1u32 << v).sum();
        if seen.iter().any(|&s| s & m == 0) {
            disjoint = true;
            return false;
        }
        seen.push(m);
        true
    });
    Ok(!disjoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, e: &[(usize, usize)]) -> DiameterGraph {
        DiameterGraph::from_edges(n, e).unwrap()
    }

    // oracle: two disjoint odd cycles exist iff some vertex split leaves both
    // sides non-bipartite
    fn split_oracle(g: &DiameterGraph) -> bool {
        let n = g.n();
        let all: Vec<usize> = (0..n).collect();
        for mask in 0u32..1 << n {
            let a: Vec<usize> = all.iter().copied().filter(|&v| mask >> v & 1 == 1).collect();
            let b: Vec<usize> = all.iter().copied().filter(|&v| mask >> v & 1 == 0).collect();
            if !g.induced(&a).is_bipartite() && !g.induced(&b).is_bipartite() {
                return false;
            }
        }
        true
    }

    fn brute_odd_cycles(g: &DiameterGraph) -> usize {
        // count odd cycles via closed walks without repeats, each seen 2k times
        let n = g.n();
        let mut count = 0;
        fn rec(g: &DiameterGraph, path: &mut Vec<usize>, count: &mut usize) {
            let cur = *path.last().unwrap();
            for w in 0..g.n() {
                if !g.has_edge(cur, w) {
                    continue;
                }
                if w == path[0] && path.len() >= 3 && path.len() % 2 == 1 {
                    *count += 1;
                }
                if !path.contains(&w) {
                    path.push(w);
                    rec(g, path, count);
                    path.pop();
                }
            }
        }
        let mut per_length = 0;
        for s in 0..n {
            let mut p = vec![s];
            rec(g, &mut p, &mut count);
        }
        per_length += count;
        per_length
    }

    #[test]
    fn five_cycle_plus_isolated() {
        let g = graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(odd_cycles_pairwise_intersect(&g).unwrap());
        assert_eq!(simple_odd_cycles(&g).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn two_triangles() {
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!odd_cycles_pairwise_intersect(&g).unwrap());
    }

    #[test]
    fn wheel() {
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, 5)));
        let g = graph(6, &e);
        assert!(odd_cycles_pairwise_intersect(&g).unwrap());
        assert!(split_oracle(&g));
    }

    #[test]
    fn dense_graph_is_fast() {
        let mut e = Vec::new();
        for i in 0..16 {
            for j in i + 1..16 {
                e.push((i, j));
            }
        }
        assert!(!odd_cycles_pairwise_intersect(&graph(16, &e)).unwrap());
        // K5 plus pendant path: every odd cycle lives in K5 and K5 cannot hold two
        let mut k5: Vec<_> = e.iter().copied().filter(|&(i, j)| j < 5 && i < 5).collect();
        k5.push((4, 5));
        assert!(odd_cycles_pairwise_intersect(&graph(6, &k5)).unwrap());
    }

    #[test]
    fn cap() {
        assert!(matches!(
            odd_cycles_pairwise_intersect(&graph(17, &[])),
            Err(Error::SizeCap { cap: 16, .. })
        ));
    }

    proptest! {
        #[test]
        fn disjointness_matches_split_oracle(n in 0usize..=9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] { e.push((i, j)); }
                    k += 1;
                }
            }
            let g = graph(n, &e);
            prop_assert_eq!(odd_cycles_pairwise_intersect(&g).unwrap(), split_oracle(&g));
        }

        #[test]
        fn cycle_list_matches_walk_count(n in 0usize..=7, bits in proptest::collection::vec(any::<bool>(), 21)) {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] { e.push((i, j)); }
                    k += 1;
                }
            }
            let g = graph(n, &e);
            let cycles = simple_odd_cycles(&g).unwrap();
            // each cycle of length L is traced 2L times as a rooted directed walk
            let traced: usize = cycles.iter().map(|c| 2 * c.len()).sum();
            prop_assert_eq!(traced, brute_odd_cycles(&g));
            for c in &cycles {
                prop_assert!(c.len() % 2 == 1 && c.len() >= 3);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
        }
    }
}
