//! Euclidean and spherical primitives.
//!
//! Everything here works in double precision. "Equal to the diameter" always
//! means *within a relative tolerance* of the maximum distance; the default
//! band is [`DEFAULT_EPS`].

mod ball;
mod cone;
mod sphere;

pub use ball::{in_open_hemisphere, min_enclosing_ball, min_enclosing_cap, Ball, SphericalCap};
pub use cone::{cone_membership, nnls, spherical_hull_vertices, Nnls};
pub use sphere::{arc_intersection, angle3, cross, dot3, norm3, normalize3, GreatArc, Vec3};

use crate::error::{Error, Result};

/// Default relative tolerance for "at diameter".
pub const DEFAULT_EPS: f64 = 1e-9;

/// Relative tolerance used when checking that points sit on their sphere.
pub const SPHERE_TOL: f64 = 1e-9;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn normalized(a: &[f64]) -> Vec<f64> {
    let l = norm(a);
    a.iter().map(|x| x / l).collect()
}

/// A finite labelled set of points in R^d, optionally constrained to the
/// sphere of radius `sphere_radius` about the origin.
///
/// Labels are indices `0..n`; duplicates are kept as given.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
    sphere_radius: Option<f64>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(dim, points, None)
    }

    /// Points that must all lie on the sphere of radius `radius` (relative error 1e-9).
    pub fn on_sphere(dim: usize, radius: f64, points: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(dim, points, Some(radius))
    }

    fn build(dim: usize, points: Vec<Vec<f64>>, sphere_radius: Option<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidPointSet(format!("dimension {dim} < 2")));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidPointSet(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPointSet(format!("point {i} is not finite")));
            }
        }
        if let Some(r) = sphere_radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidPointSet(format!("sphere radius {r} must be positive")));
            }
            for (i, p) in points.iter().enumerate() {
                let off = (norm(p) - r).abs();
                if off > r * SPHERE_TOL {
                    return Err(Error::InvalidPointSet(format!(
                        "point {i} has norm {} but the sphere radius is {r}",
                        norm(p)
                    )));
                }
            }
        }
        Ok(PointSet {
            dim,
            points,
            sphere_radius,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn sphere_radius(&self) -> Option<f64> {
        self.sphere_radius
    }

    pub fn into_points(self) -> Vec<Vec<f64>> {
        self.points
    }

    /// The sub-configuration on the given labels (in the given order).
    pub fn subset(&self, labels: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: labels.iter().map(|&i| self.points[i].clone()).collect(),
            sphere_radius: self.sphere_radius,
        }
    }

    /// Uniform scaling about the origin; the sphere radius scales along.
    pub fn scaled(&self, factor: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| scale(p, factor)).collect(),
            sphere_radius: self.sphere_radius.map(|r| r * factor),
        }
    }

    /// Forget the sphere constraint.
    pub fn unconstrained(&self) -> PointSet {
        PointSet {
            sphere_radius: None,
            ..self.clone()
        }
    }
}

/// Result of [`diameter`].
#[derive(Debug, Clone, PartialEq)]
pub struct Diameter {
    pub value: f64,
    /// All pairs `(i, j)`, `i < j`, within relative 1e-9 of the maximum.
    pub witness_pairs: Vec<(usize, usize)>,
}

/// Maximum pairwise distance and the pairs that realize it.
pub fn diameter(ps: &PointSet) -> Result<Diameter> {
    let n = ps.len();
    if n < 2 {
        return Err(Error::DegenerateSet(format!("{n} point(s); need at least 2")));
    }
    let mut best = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max(dist(&ps.points[i], &ps.points[j]));
        }
    }
    let cut = best * (1.0 - DEFAULT_EPS);
    let mut witness_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if dist(&ps.points[i], &ps.points[j]) >= cut {
                witness_pairs.push((i, j));
            }
        }
    }
    Ok(Diameter {
        value: best,
        witness_pairs,
    })
}

/// Plain maximum pairwise distance (0 for fewer than two points).
pub(crate) fn max_distance(points: &[Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(dist(&points[i], &points[j]));
        }
    }
    best
}

/// Jung's bound: every unit-diameter set in R^d fits in a ball of this radius.
pub fn jung_radius(d: i64) -> Result<f64> {
    if d <= 0 {
        return Err(Error::Domain(format!("Jung radius needs d >= 1, got {d}")));
    }
    let d = d as f64;
    Ok((d / (2.0 * d + 2.0)).sqrt())
}

/// Regular simplex with `d + 1` vertices and unit edge length in R^d,
/// centred at the origin (so it lies on the sphere of radius `jung_radius(d)`).
pub fn regular_simplex(d: usize) -> PointSet {
    assert!(d >= 2, "simplex dimension must be at least 2");
    // e_i / sqrt(2) in R^{d+1}, expressed in the Helmert basis of the sum-zero hyperplane
    let m = d + 1;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let centroid = s / m as f64;
    let helmert: Vec<Vec<f64>> = (1..=d)
        .map(|j| {
            let norm = ((j * (j + 1)) as f64).sqrt();
            (0..m)
                .map(|k| match k.cmp(&j) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(j as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    let points = (0..m)
        .map(|i| {
            let v: Vec<f64> = (0..m)
                .map(|k| if k == i { s - centroid } else { -centroid })
                .collect();
            helmert.iter().map(|h| dot(h, &v)).collect()
        })
        .collect();
    let r = jung_radius(d as i64).expect("d >= 2");
    PointSet::on_sphere(d, r, points).expect("simplex vertices lie on their circumsphere")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diameter_of_two_points() {
        let ps = PointSet::new(4, vec![vec![0.0; 4], vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        let d = diameter(&ps).unwrap();
        assert_eq!(d.value, 1.0);
        assert_eq!(d.witness_pairs, vec![(0, 1)]);
    }

    #[test]
    fn simplex_has_all_pairs_at_diameter() {
        let s = regular_simplex(4);
        let d = diameter(&s).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        assert_eq!(d.witness_pairs.len(), 10);
    }

    #[test]
    fn degenerate_diameter() {
        let ps = PointSet::new(3, vec![vec![0.0; 3]]).unwrap();
        assert!(matches!(diameter(&ps), Err(Error::DegenerateSet(_))));
    }

    #[test]
    fn jung_values() {
        assert!((jung_radius(4).unwrap() - (0.4f64).sqrt()).abs() < 1e-15);
        assert!((jung_radius(2).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((jung_radius(3).unwrap() - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
        assert!(jung_radius(0).is_err());
        assert!(jung_radius(-3).is_err());
    }

    #[test]
    fn jung_monotone_towards_inverse_sqrt2() {
        let mut prev = 0.0;
        for d in 1..=64 {
            let r = jung_radius(d).unwrap();
            assert!(r > prev);
            assert!(r < std::f64::consts::FRAC_1_SQRT_2);
            prev = r;
        }
        assert!(std::f64::consts::FRAC_1_SQRT_2 - jung_radius(1 << 30).unwrap() < 1e-9);
    }

    #[test]
    fn sphere_constraint_is_checked() {
        assert!(PointSet::on_sphere(2, 1.0, vec![vec![1.0, 0.0], vec![0.0, 1.1]]).is_err());
        assert!(PointSet::new(3, vec![vec![1.0, 0.0]]).is_err());
        assert!(PointSet::new(1, vec![vec![1.0]]).is_err());
    }

    #[test]
    fn simplex_circumradius_matches_jung() {
        for d in 2..=6 {
            let s = regular_simplex(d);
            let r = jung_radius(d as i64).unwrap();
            for p in s.points() {
                assert!((norm(p) - r).abs() < 1e-12);
            }
        }
    }
}
