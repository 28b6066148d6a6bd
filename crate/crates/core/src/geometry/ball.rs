use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{dist, dot, norm, sub, PointSet};
use crate::error::{Error, Result};

const BALL_SEED: u64 = 0x5eed_ba11;

/// A closed Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn contains(&self, p: &[f64]) -> bool {
        self.radius >= 0.0 && dist(&self.center, p) <= self.radius * (1.0 + 1e-12) + 1e-15
    }
}

/// Smallest ball containing `points` (Welzl's randomized incremental
/// algorithm, fixed seed). Support sets have at most `d + 1` points and are
/// solved exactly through their Gram system.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Option<Ball> {
    let first = points.first()?;
    let d = first.len();
    let mut order: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(BALL_SEED));
    let mut support = Vec::with_capacity(d + 1);
    let mut ball = welzl(&order, order.len(), &mut support, d);
    // a near-singular support system can leave a support point a hair outside
    ball.radius = order
        .iter()
        .map(|p| dist(&ball.center, p))
        .fold(0.0, f64::max);
    Some(ball)
}

fn welzl(points: &[&[f64]], end: usize, support: &mut Vec<usize>, d: usize) -> Ball {
    let mut ball = ball_on_boundary(points, support, d);
    if support.len() == d + 1 {
        return ball;
    }
    for i in 0..end {
        if !ball.contains(points[i]) {
            support.push(i);
            ball = welzl(points, i, support, d);
            support.pop();
        }
    }
    ball
}

/// Smallest ball with every support point on its boundary.
fn ball_on_boundary(points: &[&[f64]], support: &[usize], d: usize) -> Ball {
    match support {
        [] => Ball {
            center: vec![0.0; d],
            radius: -1.0,
        },
        [only] => Ball {
            center: points[*only].to_vec(),
            radius: 0.0,
        },
        [base, rest @ ..] => {
            let q0 = points[*base];
            let v: Vec<Vec<f64>> = rest.iter().map(|&i| sub(points[i], q0)).collect();
            let k = v.len();
            let gram = DMatrix::from_fn(k, k, |i, j| 2.0 * dot(&v[i], &v[j]));
            let rhs = DVector::from_fn(k, |i, _| dot(&v[i], &v[i]));
            let alpha = gram
                .clone()
                .lu()
                .solve(&rhs)
                .filter(|a| a.iter().all(|x| x.is_finite()))
                .or_else(|| gram.svd(true, true).solve(&rhs, 1e-14).ok())
                .unwrap_or_else(|| DVector::zeros(k));
            let mut center = q0.to_vec();
            for (a, vi) in alpha.iter().zip(&v) {
                for (c, x) in center.iter_mut().zip(vi) {
                    *c += a * x;
                }
            }
            let radius = support
                .iter()
                .map(|&i| dist(&center, points[i]))
                .fold(0.0, f64::max);
            Ball { center, radius }
        }
    }
}

/// A closed cap `{u : angle(pole, u) <= angular_radius}` on a sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCap {
    /// Unit vector.
    pub pole: Vec<f64>,
    pub angular_radius: f64,
}

impl SphericalCap {
    pub fn contains(&self, u: &[f64]) -> bool {
        angle_between(&self.pole, u) <= self.angular_radius + 1e-12
    }

    /// True when the cap is strictly smaller than a hemisphere.
    pub fn within_open_hemisphere(&self) -> bool {
        self.angular_radius < std::f64::consts::FRAC_PI_2
    }
}

pub(crate) fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let c = dot(a, b) / (norm(a) * norm(b));
    c.clamp(-1.0, 1.0).acos()
}

/// Minimal cap containing a point set on a sphere, obtained from the minimal
/// enclosing ball of the points in ambient space.
pub fn min_enclosing_cap(ps: &PointSet) -> Result<SphericalCap> {
    let r = ps
        .sphere_radius()
        .ok_or_else(|| Error::Domain("min_enclosing_cap needs a sphere-constrained set".into()))?;
    let ball = min_enclosing_ball(ps.points())
        .ok_or_else(|| Error::DegenerateSet("empty point set".into()))?;
    let c = norm(&ball.center);
    if c <= 1e-12 * r.max(1.0) {
        return Err(Error::DegenerateCap {
            ball_radius: ball.radius,
        });
    }
    let pole: Vec<f64> = ball.center.iter().map(|x| x / c).collect();
    let angular_radius = ps
        .points()
        .iter()
        .map(|p| angle_between(&pole, p))
        .fold(0.0, f64::max);
    Ok(SphericalCap {
        pole,
        angular_radius,
    })
}

/// True iff every point has `<p, pole> > r * 1e-12`.
pub fn in_open_hemisphere(ps: &PointSet, pole: &[f64]) -> bool {
    let r = ps
        .sphere_radius()
        .unwrap_or_else(|| ps.points().iter().map(|p| norm(p)).fold(0.0, f64::max));
    ps.points().iter().all(|p| dot(p, pole) > r * 1e-12)
}
