use super::{bits, DiameterGraph};
use crate::error::{Error, Result};

/// Largest graph accepted by the exact colouring search.
pub const CHROMATIC_CAP: usize = 64;

struct Dense {
    n: usize,
    adj: Vec<u64>,
}

impl Dense {
    fn of(g: &DiameterGraph) -> Self {
        Dense {
            n: g.n(),
            adj: (0..g.n()).map(|v| g.row(v)[0]).collect(),
        }
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }
}

/// A large clique found greedily, scanning vertices by descending degree.
fn greedy_clique(d: &Dense) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(d.degree(v)), v));
    let mut best = Vec::new();
    for &start in &order {
        let mut clique = vec![start];
        let mut cand = d.adj[start];
        for &v in &order {
            if cand >> v & 1 == 1 {
                clique.push(v);
                cand &= d.adj[v];
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

const NONE: u8 = u8::MAX;

struct Search<'a> {
    d: &'a Dense,
    k: usize,
    color: Vec<u8>,
    // bitmask of colours used by neighbours
    seen: Vec<u64>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        for w in bits(&[self.d.adj[v]]) {
            self.seen[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        self.color[v] = NONE;
        for w in bits(&[self.d.adj[v]]) {
            let mut m = 0u64;
            for u in bits(&[self.d.adj[w]]) {
                if self.color[u] != NONE {
                    m |= 1 << self.color[u];
                }
            }
            self.seen[w] = m;
        }
    }

    /// DSATUR choice: most saturated uncoloured vertex, ties by degree.
    fn pick(&self) -> Option<usize> {
        (0..self.d.n)
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.seen[v].count_ones(), self.d.degree(v), std::cmp::Reverse(v)))
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else { return true };
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.seen[v] >> c & 1 == 0 {
                self.assign(v, c as u8);
                if self.solve(used.max(c + 1)) {
                    return true;
                }
                self.unassign(v);
            }
        }
        false
    }
}

fn try_k(d: &Dense, clique: &[usize], k: usize) -> Option<Vec<usize>> {
    if clique.len() > k {
        return None;
    }
    let mut s = Search {
        d,
        k,
        color: vec![NONE; d.n],
        seen: vec![0; d.n],
    };
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c as u8);
    }
    s.solve(clique.len())
        .then(|| s.color.iter().map(|&c| c as usize).collect())
}

fn check_cap(g: &DiameterGraph) -> Result<()> {
    if g.n() > CHROMATIC_CAP {
        return Err(Error::SizeCap {
            what: "chromatic_number",
            cap: CHROMATIC_CAP,
            n: g.n(),
        });
    }
    Ok(())
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn color_with(g: &DiameterGraph, k: usize) -> Result<Option<Vec<usize>>> {
    check_cap(g)?;
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    let d = Dense::of(g);
    Ok(try_k(&d, &greedy_clique(&d), k))
}

/// Exact chromatic number (`n <= 64`), by iterative deepening from the size
/// of a greedy clique.
pub fn chromatic_number(g: &DiameterGraph) -> Result<usize> {
    check_cap(g)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let d = Dense::of(g);
    let clique = greedy_clique(&d);
    let mut k = clique.len();
    while try_k(&d, &clique, k).is_none() {
        k += 1;
    }
    Ok(k)
}
