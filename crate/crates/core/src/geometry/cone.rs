//! Convex cones of finitely many vectors and spherical hulls.

use nalgebra::{DMatrix, DVector};

use super::ball::angle_between;
use super::{in_open_hemisphere, min_enclosing_cap, norm, normalized, PointSet};
use crate::error::{Error, Result};

/// Relative residual below which a vector counts as inside a cone.
const CONE_TOL: f64 = 1e-8;
/// Generators closer than this angle are treated as one direction.
const DEDUP_ANGLE: f64 = 1e-9;

/// Solution of a non-negative least-squares problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Nnls {
    pub x: Vec<f64>,
    /// `b - A x`.
    pub residual: Vec<f64>,
}

impl Nnls {
    pub fn residual_norm(&self) -> f64 {
        norm(&self.residual)
    }
}

/// Lawson-Hanson active-set NNLS: minimise `|A x - b|` over `x >= 0`, where
/// the columns of `A` are `columns`.
///
/// On return the residual `r = b - A x` satisfies `A^T r <= tol`, so when `r`
/// is nonzero it separates `b` from the cone.
pub fn nnls(columns: &[Vec<f64>], b: &[f64]) -> Nnls {
    let k = columns.len();
    let d = b.len();
    let a = DMatrix::from_fn(d, k, |i, j| columns[j][i]);
    let bv = DVector::from_column_slice(b);
    let scale = a.norm().max(1.0) * bv.norm().max(1.0);
    let tol = 1e-13 * scale;

    let mut x = DVector::<f64>::zeros(k);
    let mut passive = vec![false; k];
    let mut w = a.transpose() * (&bv - &a * &x);

    for _outer in 0..3 * k + 3 {
        let pick = (0..k)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = pick else { break };
        passive[j] = true;

        for _inner in 0..3 * k + 3 {
            let z = solve_passive(&a, &bv, &passive);
            let bad: Vec<usize> = (0..k).filter(|&i| passive[i] && z[i] <= 0.0).collect();
            if bad.is_empty() {
                x = z;
                break;
            }
            let alpha = bad
                .iter()
                .map(|&i| x[i] / (x[i] - z[i]))
                .fold(f64::INFINITY, f64::min);
            x = &x + (&z - &x) * alpha;
            for i in 0..k {
                if passive[i] && x[i] <= tol * 1e-3 {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
        w = a.transpose() * (&bv - &a * &x);
    }
    let r = &bv - &a * &x;
    Nnls {
        x: x.iter().map(|v| v.max(0.0)).collect(),
        residual: r.iter().copied().collect(),
    }
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
    let sub = a.select_columns(&idx);
    let sol = sub
        .svd(true, true)
        .solve(b, 1e-14)
        .unwrap_or_else(|_| DVector::zeros(idx.len()));
    let mut z = DVector::zeros(passive.len());
    for (t, &i) in idx.iter().enumerate() {
        z[i] = sol[t];
    }
    z
}

/// Coefficients `lambda >= 0` with `|sum lambda_i g_i - x| <= 1e-8 |x|`, if any.
pub fn cone_membership(x: &[f64], generators: &[Vec<f64>]) -> Option<Vec<f64>> {
    if generators.is_empty() {
        return None;
    }
    let xn = norm(x);
    if xn == 0.0 {
        return Some(vec![0.0; generators.len()]);
    }
    let sol = nnls(generators, x);
    (sol.residual_norm() <= CONE_TOL * xn).then_some(sol.x)
}

/// Indices of the extreme rays of the cone spanned by `generators`, which
/// must lie in a common open hemisphere. Coincident directions are merged,
/// keeping the lowest index. The result is sorted.
pub fn spherical_hull_vertices(generators: &[Vec<f64>]) -> Result<Vec<usize>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let dim = first.len();
    if generators.iter().any(|g| g.len() != dim || !(norm(g) > 0.0)) {
        return Err(Error::Domain("generators must be nonzero and of equal dimension".into()));
    }
    let units: Vec<Vec<f64>> = generators.iter().map(|g| normalized(g)).collect();
    let mut unique: Vec<usize> = Vec::new();
    for (i, u) in units.iter().enumerate() {
        if !unique.iter().any(|&j| angle_between(&units[j], u) < DEDUP_ANGLE) {
            unique.push(i);
        }
    }
    let ps = PointSet::on_sphere(dim, 1.0, unique.iter().map(|&i| units[i].clone()).collect())?;
    let inside = match min_enclosing_cap(&ps) {
        Ok(cap) => in_open_hemisphere(&ps, &cap.pole),
        Err(Error::DegenerateCap { .. }) => false,
        Err(e) => return Err(e),
    };
    if !inside {
        return Err(Error::NotInHemisphere(
            "generators do not lie in an open hemisphere".into(),
        ));
    }
    if unique.len() == 1 {
        return Ok(unique);
    }
    let mut out = Vec::new();
    for &i in &unique {
        let others: Vec<Vec<f64>> = unique
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| units[j].clone())
            .collect();
        if cone_membership(&units[i], &others).is_none() {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dot;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn in_cap(rng: &mut ChaCha8Rng, dim: usize, max_angle: f64) -> Vec<f64> {
        // rejection sampling around e_last
        loop {
            let v: Vec<f64> = (0..dim)
                .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
                .collect();
            let u = normalized(&v);
            if u[dim - 1].clamp(-1.0, 1.0).acos() <= max_angle {
                return u;
            }
        }
    }

    #[test]
    fn generator_is_its_own_member() {
        let g = vec![vec![1.0, 0.0, 0.2], vec![0.0, 1.0, 0.3], vec![0.1, 0.1, 1.0]];
        let lam = cone_membership(&g[2], &g).unwrap();
        let recon: Vec<f64> = (0..3)
            .map(|c| (0..3).map(|i| lam[i] * g[i][c]).sum())
            .collect();
        for c in 0..3 {
            assert!((recon[c] - g[2][c]).abs() < 1e-10);
        }
    }

    #[test]
    fn sum_of_two_generators() {
        let g = vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0], vec![-1.0, 0.0, 1.0]];
        let x = vec![1.0, 1.0, 2.0];
        assert!(cone_membership(&x, &g).is_some());
    }

    #[test]
    fn negated_generator_is_separated_by_the_residual() {
        let g = vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0], vec![-1.0, -1.0, 2.0]];
        let x: Vec<f64> = g[0].iter().map(|v| -v).collect();
        assert!(cone_membership(&x, &g).is_none());
        // dual certificate y: <y, g_i> <= 0 for all i, <y, x> > 0
        let y = nnls(&g, &x).residual;
        for gi in &g {
            assert!(dot(&y, gi) <= 1e-12);
        }
        assert!(dot(&y, &x) > 1e-6);
    }

    #[test]
    fn hull_of_three_generic_directions() {
        let g = vec![
            normalized(&[1.0, 0.0, 3.0]),
            normalized(&[0.0, 1.0, 3.0]),
            normalized(&[-1.0, -1.0, 3.0]),
        ];
        assert_eq!(spherical_hull_vertices(&g).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn midpoint_generator_is_dropped() {
        let mut g = vec![
            normalized(&[1.0, 0.0, 3.0]),
            normalized(&[0.0, 1.0, 3.0]),
            normalized(&[-1.0, -1.0, 3.0]),
        ];
        let m: Vec<f64> = g[0].iter().zip(&g[1]).map(|(a, b)| a + b).collect();
        g.push(normalized(&m));
        assert_eq!(spherical_hull_vertices(&g).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn duplicates_keep_lowest_index() {
        let g = vec![
            normalized(&[0.0, 1.0, 3.0]),
            normalized(&[1.0, 0.0, 3.0]),
            normalized(&[0.0, 1.0, 3.0]),
        ];
        assert_eq!(spherical_hull_vertices(&g).unwrap(), vec![0, 1]);
    }

    #[test]
    fn hemisphere_is_required() {
        let g = vec![vec![1.0, 0.0, 0.0], vec![-1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert!(matches!(spherical_hull_vertices(&g), Err(Error::NotInHemisphere(_))));
    }

    fn brute_minimal_generators(g: &[Vec<f64>]) -> Vec<usize> {
        let k = g.len();
        let mut masks: Vec<u32> = (1..1u32 << k).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for m in masks {
            let sub: Vec<Vec<f64>> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| g[i].clone()).collect();
            if g.iter().all(|x| cone_membership(x, &sub).is_some()) {
                return (0..k).filter(|i| m >> i & 1 == 1).collect();
            }
        }
        unreachable!("the full set spans its own cone")
    }

    #[test]
    fn hull_matches_subset_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let cap = 30f64.to_radians();
        for inst in 0..50 {
            let dim = if inst % 2 == 0 { 3 } else { 4 };
            let k = rng.random_range(3..=10);
            let g: Vec<Vec<f64>> = (0..k).map(|_| in_cap(&mut rng, dim, cap)).collect();
            assert_eq!(spherical_hull_vertices(&g).unwrap(), brute_minimal_generators(&g), "instance {inst}");
        }
    }

    proptest! {
        #[test]
        fn hull_is_idempotent(seed in 0u64..500, k in 3usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g: Vec<Vec<f64>> = (0..k).map(|_| in_cap(&mut rng, 3, 1.0)).collect();
            let v = spherical_hull_vertices(&g).unwrap();
            let sub: Vec<Vec<f64>> = v.iter().map(|&i| g[i].clone()).collect();
            let again = spherical_hull_vertices(&sub).unwrap();
            prop_assert_eq!(again, (0..v.len()).collect::<Vec<_>>());
        }
    }
}
