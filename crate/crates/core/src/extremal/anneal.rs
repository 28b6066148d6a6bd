use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::sample::{cap_instance, geodesic_rescale, instance_rng, r4_instance};
use crate::error::{Error, Result};
use crate::geometry::{dist, max_distance, PointSet, DEFAULT_EPS};
use crate::graph::{count_cliques, enumerate_cliques, DiameterGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    R4,
    Sphere(f64),
}

/// Geometric interpolation of step size, temperature and edge margin from
/// their start to their end values over `steps` moves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub steps: usize,
    pub sigma_start: f64,
    pub sigma_end: f64,
    pub temp_start: f64,
    pub temp_end: f64,
    pub margin_start: f64,
    pub margin_end: f64,
    pub polish: bool,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            steps: 20_000,
            sigma_start: 0.1,
            sigma_end: 1e-4,
            temp_start: 0.05,
            temp_end: 1e-6,
            margin_start: 0.3,
            margin_end: 1e-4,
            polish: true,
        }
    }
}

impl Schedule {
    pub fn with_steps(steps: usize) -> Self {
        Schedule {
            steps,
            ..Schedule::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if self.steps == 0 {
            return Err(Error::Domain("schedule needs at least one step".into()));
        }
        if !(pos(self.sigma_end) && self.sigma_start >= self.sigma_end && self.sigma_start.is_finite()) {
            return Err(Error::Domain("need sigma_start >= sigma_end > 0".into()));
        }
        if !(pos(self.temp_end) && self.temp_start >= self.temp_end && self.temp_start.is_finite()) {
            return Err(Error::Domain("need temp_start >= temp_end > 0".into()));
        }
        if !(pos(self.margin_end) && self.margin_start >= self.margin_end && self.margin_start < 1.0) {
            return Err(Error::Domain("need 1 > margin_start >= margin_end > 0".into()));
        }
        Ok(())
    }

    fn at(&self, start: f64, end: f64, step: usize) -> f64 {
        let t = step as f64 / self.steps.max(1) as f64;
        start * (end / start).powf(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchState {
    pub n: usize,
    pub l: usize,
    pub space: Space,
    pub schedule: Schedule,
    pub seed: u64,
    pub current: PointSet,
    pub current_count: u64,
    pub best: PointSet,
    pub best_count: u64,
    /// Proven upper bound for this `(space, l)`, where one is known.
    pub bound: Option<u64>,
    pub accepted: usize,
}

const SOFT_CUTOFF: f64 = 14.0;

/// Exact `l`-clique count of the diameter graph at the default tolerance.
pub fn exact_count(ps: &PointSet, l: usize) -> u64 {
    DiameterGraph::build(ps, DEFAULT_EPS).map_or(0, |g| count_cliques(&g, l))
}

/// Pairs closer than this are pushed apart during search.
pub const REPULSION_RANGE: f64 = 0.05;

/// Sum over `l`-cliques of the soft graph of the product of pair weights,
/// minus `n (1 - d / REPULSION_RANGE)^2` for every pair closer than
/// [`REPULSION_RANGE`]. For unit diameter a pair at distance
/// `d >= 1 - 10 eps` weighs 1, others `exp(-(1 - d) / margin)`, cut to zero
/// below `exp(-SOFT_CUTOFF)`.
pub fn soft_score(points: &[Vec<f64>], l: usize, margin: f64) -> f64 {
    let n = points.len();
    let mut w = vec![0.0; n * n];
    let mut edges = Vec::new();
    let mut penalty = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(&points[i], &points[j]);
            if d < REPULSION_RANGE {
                penalty += n as f64 * (1.0 - d / REPULSION_RANGE).powi(2);
            }
            let gap = 1.0 - d;
            let z = if gap <= 10.0 * DEFAULT_EPS { 0.0 } else { gap / margin };
            if z < SOFT_CUTOFF {
                let x = (-z).exp();
                w[i * n + j] = x;
                w[j * n + i] = x;
                edges.push((i, j));
            }
        }
    }
    if l == 2 {
        return edges.iter().map(|&(i, j)| w[i * n + j]).sum::<f64>() - penalty;
    }
    let g = DiameterGraph::from_edges(n, &edges).expect("indices in range");
    let total: f64 = enumerate_cliques(&g, l)
        .iter()
        .map(|c| {
            let mut p = 1.0;
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    p *= w[c[a] * n + c[b]];
                }
            }
            p
        })
        .sum();
    total - penalty
}

/// Divide all coordinates by the diameter.
pub fn rescale_r4(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = max_distance(points);
    if d == 1.0 || d <= 0.0 {
        return points.to_vec();
    }
    points.iter().map(|p| p.iter().map(|x| x / d).collect()).collect()
}

fn normalize_state(points: Vec<Vec<f64>>, space: Space) -> Option<Vec<Vec<f64>>> {
    match space {
        Space::R4 => Some(rescale_r4(&points)),
        Space::Sphere(r) => {
            let on: Vec<Vec<f64>> = points
                .into_iter()
                .map(|p| {
                    let l = crate::geometry::norm(&p);
                    p.iter().map(|x| x * r / l).collect()
                })
                .collect();
            geodesic_rescale(&on, r)
        }
    }
}

/// States with two points closer than this are rejected.
pub const MIN_SEPARATION: f64 = 1e-6;

fn to_point_set(points: Vec<Vec<f64>>, space: Space) -> Option<PointSet> {
    let n = points.len();
    if (0..n).any(|i| (i + 1..n).any(|j| dist(&points[i], &points[j]) < MIN_SEPARATION)) {
        return None;
    }
    match space {
        Space::R4 => PointSet::new(4, points).ok(),
        Space::Sphere(r) => PointSet::on_sphere(4, r, points).ok(),
    }
}

fn known_bound(n: usize, l: usize, space: Space) -> Option<u64> {
    match (space, l) {
        (Space::Sphere(r), 2) if r > std::f64::consts::FRAC_1_SQRT_2 => Some(2 * n as u64 - 2),
        (Space::R4, 4) => Some(n as u64),
        (_, 5) => Some(1),
        _ => None,
    }
}

/// Gauss-Newton on the pairs within `thr` of unit length.
fn gauss_newton(points: &[Vec<f64>], space: Space, thr: f64) -> Vec<Vec<f64>> {
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| dist(&points[i], &points[j]) >= 1.0 - thr)
        .collect();
    gauss_newton_pairs(points, space, &pairs)
}

/// Make the given pairs unit (and keep sphere points on the sphere) by
/// Gauss-Newton with minimum-norm steps from the SVD.
fn gauss_newton_pairs(points: &[Vec<f64>], space: Space, pairs: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let n = points.len();
    let sphere = matches!(space, Space::Sphere(_));
    let rows = pairs.len() + if sphere { n } else { 0 };
    let mut x: Vec<f64> = points.iter().flatten().copied().collect();
    for _ in 0..30 {
        let mut jac = DMatrix::<f64>::zeros(rows, 4 * n);
        let mut f = DVector::<f64>::zeros(rows);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let mut s = 0.0;
            for c in 0..4 {
                let d = x[4 * i + c] - x[4 * j + c];
                s += d * d;
                jac[(k, 4 * i + c)] = 2.0 * d;
                jac[(k, 4 * j + c)] = -2.0 * d;
            }
            f[k] = s - 1.0;
        }
        if let Space::Sphere(r) = space {
            for i in 0..n {
                let k = pairs.len() + i;
                let mut s = 0.0;
                for c in 0..4 {
                    s += x[4 * i + c] * x[4 * i + c];
                    jac[(k, 4 * i + c)] = 2.0 * x[4 * i + c];
                }
                f[k] = s - r * r;
            }
        }
        if f.amax() < 1e-15 {
            break;
        }
        let Ok(step) = jac.svd(true, true).solve(&f, 1e-12) else { break };
        for (xi, s) in x.iter_mut().zip(step.iter()) {
            *xi -= s;
        }
    }
    x.chunks(4).map(|c| c.to_vec()).collect()
}

/// Snap near-unit pairs to unit length, then try to add the nearest
/// further pairs one at a time, keeping each addition that survives.
fn polish(start: &PointSet, space: Space, l: usize) -> Option<(PointSet, u64)> {
    let settle = |pts: Vec<Vec<f64>>| normalize_state(pts, space).and_then(|p| to_point_set(p, space));
    let mut best: Option<(PointSet, u64)> = None;
    for thr in [1e-3, 1e-5, 1e-7] {
        if let Some(ps) = settle(gauss_newton(start.points(), space, thr)) {
            let c = exact_count(&ps, l);
            if best.as_ref().is_none_or(|b| c > b.1) {
                best = Some((ps, c));
            }
        }
    }
    let (mut cur, mut count) = best.clone()?;
    let n = cur.len();
    let mut budget = 4 * n;
    'grow: while budget > 0 {
        let g = DiameterGraph::build(&cur, DEFAULT_EPS).ok()?;
        let edges = g.edges();
        let p = cur.points();
        let mut cands: Vec<(f64, (usize, usize))> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.has_edge(i, j))
            .map(|(i, j)| (1.0 - dist(&p[i], &p[j]), (i, j)))
            .filter(|c| c.0 < 0.2)
            .collect();
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (_, pair) in cands {
            if budget == 0 {
                break 'grow;
            }
            budget -= 1;
            let mut pairs = edges.clone();
            pairs.push(pair);
            let Some(next) = settle(gauss_newton_pairs(cur.points(), space, &pairs)) else { continue };
            let grown = DiameterGraph::build(&next, DEFAULT_EPS).map_or(0, |h| h.edge_count());
            let c = exact_count(&next, l);
            if grown > edges.len() && c >= count {
                cur = next;
                count = c;
                if best.as_ref().is_none_or(|b| c > b.1) {
                    best = Some((cur.clone(), c));
                }
                continue 'grow;
            }
        }
        break;
    }
    best
}

/// Simulated annealing for many `l`-cliques among `n` unit-diameter points.
/// Moves are Gaussian displacements of one point followed by rescaling to
/// diameter 1; acceptance uses the soft score, the best exact count is kept.
/// An optional starting configuration replaces the random one.
pub fn anneal_search(
    n: usize,
    l: usize,
    space: Space,
    schedule: Schedule,
    seed: u64,
    init: Option<&PointSet>,
) -> Result<SearchState> {
    schedule.validate()?;
    if !(5..=64).contains(&n) {
        return Err(Error::Domain(format!("need 5 <= n <= 64, got {n}")));
    }
    if !(2..=4).contains(&l) {
        return Err(Error::Domain(format!("clique size {l} not in 2..=4")));
    }
    if let Space::Sphere(r) = space {
        if !(2.0 * r > 1.0 && r.is_finite()) {
            return Err(Error::Domain(format!("sphere radius {r} cannot hold unit diameter")));
        }
    }
    let mut rng = instance_rng(seed, 0);
    let start: Vec<Vec<f64>> = match init {
        Some(ps) => {
            if ps.len() != n || ps.dim() != 4 {
                return Err(Error::Domain("initial state must have n points in R^4".into()));
            }
            normalize_state(ps.points().to_vec(), space)
                .ok_or_else(|| Error::Domain("initial state cannot be rescaled".into()))?
        }
        None => match space {
            Space::R4 => r4_instance(n, &mut rng).into_points(),
            Space::Sphere(r) => loop {
                if let Some(ps) = cap_instance(n, r, &mut rng) {
                    break ps.into_points();
                }
            },
        },
    };
    let mut cur = start;
    let mut cur_ps = to_point_set(cur.clone(), space).ok_or_else(|| Error::Domain("initial state has coincident points".into()))?;
    let mut cur_count = exact_count(&cur_ps, l);
    let mut best = cur_ps.clone();
    let mut best_count = cur_count;
    let mut accepted = 0;
    let mut margin = schedule.margin_start;
    let mut score = soft_score(&cur, l, margin);
    for step in 0..schedule.steps {
        let sigma = schedule.at(schedule.sigma_start, schedule.sigma_end, step);
        let temp = schedule.at(schedule.temp_start, schedule.temp_end, step);
        let m = schedule.at(schedule.margin_start, schedule.margin_end, step);
        if m != margin {
            margin = m;
            score = soft_score(&cur, l, margin);
        }
        let i = rng.random_range(0..n);
        let mut cand = cur.clone();
        for x in cand[i].iter_mut() {
            *x += sigma * rng.sample::<f64, _>(StandardNormal);
        }
        let u: f64 = rng.random();
        let Some(cand) = normalize_state(cand, space) else { continue };
        let s = soft_score(&cand, l, margin);
        if s >= score || u < ((s - score) / temp).exp() {
            let Some(ps) = to_point_set(cand.clone(), space) else { continue };
            cur = cand;
            score = s;
            accepted += 1;
            cur_count = exact_count(&ps, l);
            cur_ps = ps;
            if cur_count > best_count {
                best_count = cur_count;
                best = cur_ps.clone();
            }
        }
    }
    if schedule.polish {
        for start in [cur_ps.clone(), best.clone()] {
            if let Some((ps, c)) = polish(&start, space, l) {
                if c > best_count {
                    best_count = c;
                    best = ps;
                }
            }
        }
    }
    Ok(SearchState {
        n,
        l,
        space,
        schedule,
        seed,
        current: cur_ps,
        current_count: cur_count,
        best,
        best_count,
        bound: known_bound(n, l, space),
        accepted,
    })
}

/// Largest exact `l`-clique count over `trials` independent R^4 chains
/// (`n <= 7`), each polished at the end.
pub fn small_n_oracle(n: usize, l: usize, trials: usize, seed: u64) -> Result<u64> {
    if n > 7 {
        return Err(Error::Domain(format!("oracle is limited to n <= 7, got {n}")));
    }
    let best = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            anneal_search(n, l, Space::R4, Schedule::default(), seed.wrapping_add(t), None).map(|s| s.best_count)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(best.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::diameter;
    use crate::lenz::{f2, gen_edge_optimal};
    use proptest::prelude::*;

    #[test]
    fn bad_schedules() {
        let mut s = Schedule::default();
        s.sigma_end = 0.0;
        assert!(anneal_search(5, 4, Space::R4, s, 0, None).is_err());
        assert!(anneal_search(5, 4, Space::R4, Schedule::with_steps(0), 0, None).is_err());
        assert!(anneal_search(4, 4, Space::R4, Schedule::default(), 0, None).is_err());
        assert!(anneal_search(5, 5, Space::R4, Schedule::default(), 0, None).is_err());
    }

    #[test]
    fn simplex_found_at_n5() {
        let s = anneal_search(5, 4, Space::R4, Schedule::with_steps(20_000), 1, None).unwrap();
        assert_eq!(s.best_count, 5);
        assert!((diameter(&s.best).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeded_edges_hold() {
        let init = gen_edge_optimal(8).unwrap().point_set();
        let s = anneal_search(8, 2, Space::R4, Schedule::with_steps(2_000), 3, Some(&init)).unwrap();
        assert_eq!(s.best_count, f2(8).unwrap());
    }

    #[test]
    fn deterministic() {
        let a = anneal_search(6, 3, Space::Sphere(0.9), Schedule::with_steps(1_500), 9, None).unwrap();
        let b = anneal_search(6, 3, Space::Sphere(0.9), Schedule::with_steps(1_500), 9, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sphere_search_respects_bound() {
        for seed in 0..4 {
            let s = anneal_search(7, 2, Space::Sphere(0.8), Schedule::with_steps(3_000), seed, None).unwrap();
            assert!(s.best_count <= s.bound.unwrap(), "{} > {:?}", s.best_count, s.bound);
            let r = s.best.sphere_radius().unwrap();
            assert!(s.best.points().iter().all(|p| (crate::geometry::norm(p) - r).abs() < 1e-9));
        }
    }

    #[test]
    fn unseeded_edges_climb() {
        for seed in 0..4 {
            let s = anneal_search(8, 2, Space::R4, Schedule::default(), seed, None).unwrap();
            assert!(s.best_count >= 17, "seed {seed}: {}", s.best_count);
            assert!(s.best_count <= f2(8).unwrap());
        }
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(small_n_oracle(5, 4, 4, 1).unwrap(), 5);
        assert_eq!(small_n_oracle(5, 3, 4, 1).unwrap(), 10);
        assert_eq!(small_n_oracle(5, 2, 4, 1).unwrap(), 10);
        assert!(small_n_oracle(8, 2, 1, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rescale_idempotent(pts in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 4), 2..10)) {
            let once = rescale_r4(&pts);
            prop_assume!(max_distance(&pts) > 1e-6);
            let twice = rescale_r4(&once);
            for (a, b) in once.iter().flatten().zip(twice.iter().flatten()) {
                prop_assert!((a - b).abs() <= 1e-15 * a.abs().max(1.0));
            }
            prop_assert!((soft_score(&once, 2, 0.1) - soft_score(&twice, 2, 0.1)).abs() < 1e-12);
        }
    }
}
