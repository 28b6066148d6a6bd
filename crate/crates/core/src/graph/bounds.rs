use super::{bits, count_cliques, DiameterGraph};
use crate::error::{Error, Result};

/// First vertex triple (lexicographic) with at least `s` common neighbours,
/// together with the `s` smallest of them.
pub fn find_ks3(g: &DiameterGraph, s: usize) -> Option<(Vec<usize>, [usize; 3])> {
    if s == 0 {
        return None;
    }
    let n = g.n();
    let w = g.words();
    let mut common2 = vec![0u64; w];
    for i in 0..n {
        for j in i + 1..n {
            for (c, (a, b)) in common2.iter_mut().zip(g.row(i).iter().zip(g.row(j))) {
                *c = a & b;
            }
            if common2.iter().map(|x| x.count_ones() as usize).sum::<usize>() < s {
                continue;
            }
            for k in j + 1..n {
                let cnt: usize = common2
                    .iter()
                    .zip(g.row(k))
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                if cnt >= s {
                    let both: Vec<u64> = common2.iter().zip(g.row(k)).map(|(a, b)| a & b).collect();
                    let side: Vec<usize> = bits(&both).take(s).collect();
                    return Some((side, [i, j, k]));
                }
            }
        }
    }
    None
}

fn kst_domain(n: i128, e: i128) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    if e < 0 || e > n * (n - 1) / 2 {
        return Err(Error::Domain(format!("edge count {e} outside [0, n(n-1)/2]")));
    }
    Ok(())
}

/// The counting condition `2cn(2cn-1)(2cn-2) > (s-1)(n-1)(n-2)` with
/// `c = e / n^2`, evaluated exactly after multiplying through by `n^3`.
pub fn kst_condition(n: u64, e: u64, s: u64) -> Result<bool> {
    let (n, e, s) = (n as i128, e as i128, s as i128);
    kst_domain(n, e)?;
    if 2 * e >= n * n {
        return Err(Error::Domain("need e < n^2 / 2".into()));
    }
    let lhs = 2 * e * (2 * e - n) * (2 * e - 2 * n);
    let rhs = (s - 1) * (n - 1) * (n - 2) * n * n * n;
    Ok(lhs > rhs)
}

/// Same condition for a density `c = num / den` in `(0, 1/2)`, independent of
/// the integrality of `c n^2`.
pub fn kst_condition_density(n: u64, num: u64, den: u64, s: u64) -> Result<bool> {
    let (n, num, den, s) = (n as i128, num as i128, den as i128, s as i128);
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    if den == 0 || num == 0 || 2 * num >= den {
        return Err(Error::Domain("density must lie in (0, 1/2)".into()));
    }
    let x = 2 * num * n;
    let lhs = x * (x - den) * (x - 2 * den);
    let rhs = (s - 1) * (n - 1) * (n - 2) * den * den * den;
    Ok(lhs > rhs)
}

/// Triangle count against `4e/3 - 2n/3`.
///
/// Bounds are stored multiplied by 3 so every comparison is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleBound {
    pub triangles: u64,
    pub edges: u64,
    pub n: u64,
    /// `3 * (4e/3 - 2n/3) = 4e - 2n`.
    pub bound_x3: i64,
    /// `t <= max(bound, 0)`.
    pub ok: bool,
    /// `3 * (n^2/3 + 2n/3) = n^2 + 2n`.
    pub secondary_x3: i64,
    /// Vertices of degree at least one.
    pub n_active: u64,
    /// `4e - 2 n_active`: the bound with isolated vertices discarded.
    pub active_bound_x3: i64,
    pub active_ok: bool,
    /// The graph comes from a point set in dimension at most 4.
    pub applies: bool,
}

impl TriangleBound {
    pub fn bound(&self) -> f64 {
        self.bound_x3 as f64 / 3.0
    }

    pub fn active_bound(&self) -> f64 {
        self.active_bound_x3 as f64 / 3.0
    }

    /// The literal comparison `t <= 4e/3 - 2n/3`, no clamping.
    pub fn strict_ok(&self) -> bool {
        3 * self.triangles as i64 <= self.bound_x3
    }
}

pub fn triangle_bound_check(g: &DiameterGraph) -> TriangleBound {
    let t = count_cliques(g, 3);
    let e = g.edge_count() as i64;
    let n = g.n() as i64;
    let n_active = (0..g.n()).filter(|&v| g.degree(v) > 0).count() as i64;
    let bound_x3 = 4 * e - 2 * n;
    let active_bound_x3 = 4 * e - 2 * n_active;
    let t3 = 3 * t as i64;
    TriangleBound {
        triangles: t,
        edges: e as u64,
        n: n as u64,
        bound_x3,
        ok: t3 <= bound_x3.max(0),
        secondary_x3: n * n + 2 * n,
        n_active: n_active as u64,
        active_bound_x3,
        active_ok: t3 <= active_bound_x3.max(0),
        applies: g.source().is_some_and(|ps| ps.dim() <= 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{regular_simplex, PointSet};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete_bipartite(a: usize, b: usize) -> DiameterGraph {
        let mut e = Vec::new();
        for i in 0..a {
            for j in 0..b {
                e.push((i, a + j));
            }
        }
        DiameterGraph::from_edges(a + b, &e).unwrap()
    }

    fn random_graph(n: usize, m: usize, seed: u64) -> DiameterGraph {
        let mut all = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                all.push((i, j));
            }
        }
        all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        all.truncate(m);
        DiameterGraph::from_edges(n, &all).unwrap()
    }

    #[test]
    fn ks3_in_complete_bipartite() {
        let g = complete_bipartite(7, 3);
        let (side, triple) = find_ks3(&g, 7).unwrap();
        assert_eq!(triple, [7, 8, 9]);
        assert_eq!(side, (0..7).collect::<Vec<_>>());
        assert!(find_ks3(&g, 8).is_none());
    }

    #[test]
    fn no_ks3_in_hexagon() {
        let e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = DiameterGraph::from_edges(6, &e).unwrap();
        assert!(find_ks3(&g, 2).is_none());
        // brute force over the 20 triples
        let mut best = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let c = (0..6).filter(|&v| g.has_edge(v, i) && g.has_edge(v, j) && g.has_edge(v, k)).count();
                    best = best.max(c);
                }
            }
        }
        assert!(best < 2);
    }

    #[test]
    fn kst_examples() {
        assert!(kst_condition(52, 676, 7).unwrap());
        assert!(kst_condition(3, 1, 1).unwrap());
        // with s = 1 the right side vanishes, but the left side is only positive
        // when e > n (or 2e < n)
        for n in 3..40u64 {
            for e in n + 1..(n * (n - 1) / 2 + 1).min((n * n + 1) / 2) {
                assert!(kst_condition(n, e, 1).unwrap());
            }
        }
        assert!(!kst_condition(10, 5, 1).unwrap());
        assert!(!kst_condition(10, 7, 1).unwrap());
        assert!(kst_condition(2, 1, 1).is_err());
        assert!(kst_condition(10, 50, 1).is_err());
        // exact integer evaluation at n = 51, e = 651
        let lhs: i128 = 1302 * (1302 - 51) * (1302 - 102);
        let rhs: i128 = 6 * 50 * 49 * 51 * 51 * 51;
        assert_eq!((lhs, rhs), (1_954_562_400, 1_949_969_700));
        assert!(kst_condition(51, 651, 7).unwrap());
    }

    #[test]
    fn quarter_density_threshold_is_52() {
        assert!(!kst_condition_density(51, 1, 4, 7).unwrap());
        for n in 52..=2000 {
            assert!(kst_condition_density(n, 1, 4, 7).unwrap(), "n = {n}");
        }
        for n in 3..52 {
            assert!(!kst_condition_density(n, 1, 4, 7).unwrap(), "n = {n}");
        }
        // integral densities agree with the edge form
        assert_eq!(kst_condition_density(52, 1, 4, 7).unwrap(), kst_condition(52, 676, 7).unwrap());
    }

    #[test]
    fn triangle_bound_cases() {
        let mut e = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        let k5 = DiameterGraph::from_edges(5, &e).unwrap();
        let tb = triangle_bound_check(&k5);
        assert_eq!((tb.triangles, tb.bound_x3), (10, 30));
        assert!(tb.ok && tb.strict_ok() && !tb.applies);

        let empty = triangle_bound_check(&DiameterGraph::from_edges(6, &[]).unwrap());
        assert_eq!(empty.bound_x3, -12);
        assert!(empty.ok && !empty.strict_ok());

        let simplex = DiameterGraph::of(&regular_simplex(4)).unwrap();
        assert!(triangle_bound_check(&simplex).applies);
    }

    #[test]
    fn isolated_vertices_break_the_plain_bound() {
        // simplex plus its centroid: the centroid is isolated
        let mut pts = regular_simplex(4).into_points();
        pts.push(vec![0.0; 4]);
        let g = DiameterGraph::of(&PointSet::new(4, pts).unwrap()).unwrap();
        let tb = triangle_bound_check(&g);
        assert_eq!((tb.triangles, tb.edges, tb.n), (10, 10, 6));
        assert!(tb.applies);
        assert!(!tb.ok, "10 > 40/3 - 4");
        assert!(tb.active_ok);
    }

    proptest! {
        #[test]
        fn kst_true_implies_ks3(seed in 0u64..10_000, n in 6usize..=24, s in 1u64..4) {
            let max_e = n * (n - 1) / 2;
            let lo = n; // the counting argument needs average degree >= 2
            let hi = (n * n / 2).min(max_e + 1) - 1;
            let e = lo + (seed as usize) % (hi - lo + 1);
            prop_assume!(2 * e < n * n);
            if kst_condition(n as u64, e as u64, s).unwrap() {
                let g = random_graph(n, e, seed);
                prop_assert!(find_ks3(&g, s as usize).is_some());
            }
        }
    }
}
