use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::{dot, max_distance, norm, PointSet};
use crate::graph::DiameterGraph;

/// Independent stream `index` of the generator seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let l = norm(&v);
        if l > 1e-9 {
            return v.iter().map(|x| x / l).collect();
        }
    }
}

fn unit_tangent<R: Rng + ?Sized>(pole: &[f64], rng: &mut R) -> Vec<f64> {
    loop {
        let mut v = random_unit(pole.len(), rng);
        let h = dot(&v, pole);
        v.iter_mut().zip(pole).for_each(|(x, p)| *x -= h * p);
        let l = norm(&v);
        if l > 1e-6 {
            return v.iter().map(|x| x / l).collect();
        }
    }
}

/// Angles from the pole and unit tangent directions of sphere points.
fn polar(points: &[Vec<f64>], pole: &[f64]) -> Vec<(f64, Vec<f64>)> {
    points
        .iter()
        .map(|x| {
            let l = norm(x);
            let c = dot(x, pole) / l;
            let t: Vec<f64> = x.iter().zip(pole).map(|(a, p)| a / l - c * p).collect();
            let s = norm(&t);
            let phi = s.atan2(c);
            let t = if s > 0.0 { t.iter().map(|a| a / s).collect() } else { vec![0.0; x.len()] };
            (phi, t)
        })
        .collect()
}

fn place(r: f64, pole: &[f64], polar: &[(f64, Vec<f64>)], lambda: f64) -> Vec<Vec<f64>> {
    polar
        .iter()
        .map(|(phi, t)| {
            let (s, c) = (lambda * phi).sin_cos();
            pole.iter().zip(t).map(|(p, t)| r * (c * p + s * t)).collect()
        })
        .collect()
}

/// Scale all angles from the normalized mean by a common factor so that the
/// diameter becomes 1. `None` when the mean vanishes or 1 is out of reach
/// inside the hemisphere.
pub fn geodesic_rescale(points: &[Vec<f64>], r: f64) -> Option<Vec<Vec<f64>>> {
    let d0 = max_distance(points);
    if (d0 - 1.0).abs() <= 1e-12 {
        return Some(points.to_vec());
    }
    let dim = points.first()?.len();
    let mut mean = vec![0.0; dim];
    for p in points {
        mean.iter_mut().zip(p).for_each(|(m, x)| *m += x);
    }
    let l = norm(&mean);
    if l <= 1e-12 * r {
        return None;
    }
    let pole: Vec<f64> = mean.iter().map(|m| m / l).collect();
    let pol = polar(points, &pole);
    let phi_max = pol.iter().map(|p| p.0).fold(0.0, f64::max);
    if phi_max <= 0.0 {
        return None;
    }
    let diam = |lam: f64| max_distance(&place(r, &pole, &pol, lam));
    let (mut lo, mut hi) = if d0 > 1.0 {
        (0.0, 1.0)
    } else {
        let top = 0.999 * std::f64::consts::FRAC_PI_2 / phi_max;
        if top <= 1.0 || diam(top) < 1.0 {
            return None;
        }
        (1.0, top)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if diam(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lam = if (diam(lo) - 1.0).abs() < (diam(hi) - 1.0).abs() { lo } else { hi };
    Some(place(r, &pole, &pol, lam))
}

/// `n` points uniform in a cap of `S^3_r` whose chord radius is 1, then
/// [`geodesic_rescale`]d to unit diameter.
pub fn cap_instance<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> Option<PointSet> {
    let theta = 2.0 * (1.0 / (2.0 * r)).min(1.0).asin();
    let pole = random_unit(4, rng);
    let peak = theta.min(std::f64::consts::FRAC_PI_2).sin().powi(2);
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            // polar angle with density sin^2 on [0, theta]
            let phi = loop {
                let phi = rng.random::<f64>() * theta;
                if rng.random::<f64>() * peak <= phi.sin().powi(2) {
                    break phi;
                }
            };
            let t = unit_tangent(&pole, rng);
            let (s, c) = phi.sin_cos();
            pole.iter().zip(&t).map(|(p, t)| r * (c * p + s * t)).collect()
        })
        .collect();
    let pts = geodesic_rescale(&pts, r)?;
    PointSet::on_sphere(4, r, pts).ok()
}

/// Orthonormal basis of the orthogonal complement of `span(rows)` in R^4.
fn complement(rows: &[&[f64]]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut out = Vec::new();
    let cands = rows.iter().map(|r| r.to_vec()).chain((0..4).map(|k| {
        let mut e = vec![0.0; 4];
        e[k] = 1.0;
        e
    }));
    for (idx, mut v) in cands.enumerate() {
        for q in &basis {
            let h = dot(&v, q);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= h * y);
        }
        let l = norm(&v);
        if l > 1e-8 {
            let u: Vec<f64> = v.iter().map(|x| x / l).collect();
            if idx >= rows.len() {
                out.push(u.clone());
            }
            basis.push(u);
        }
    }
    out
}

/// Points of `S^3_r` grown one at a time, each at distance exactly 1 from
/// one to three random earlier points and at most 1 from all of them.
pub fn unit_rich_instance<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> Option<PointSet> {
    if 2.0 * r < 1.0 || n < 2 {
        return None;
    }
    let c = r * r - 0.5;
    let mut pts: Vec<Vec<f64>> = vec![random_unit(4, rng).iter().map(|x| r * x).collect()];
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > 400 * n {
            return None;
        }
        let k = rng.random_range(1..=pts.len().min(3));
        let anchors: Vec<&[f64]> = sample(rng, pts.len(), k).iter().map(|i| pts[i].as_slice()).collect();
        // least-norm solution of <x, a_i> = c inside span(anchors)
        let a = nalgebra::DMatrix::from_fn(k, 4, |i, j| anchors[i][j]);
        let gram = &a * a.transpose();
        let Some(inv) = gram.try_inverse() else { continue };
        let y = inv * nalgebra::DVector::from_element(k, c);
        let x0: Vec<f64> = (a.transpose() * y).iter().copied().collect();
        let h2 = r * r - dot(&x0, &x0);
        if h2 <= 0.0 {
            continue;
        }
        let comp = complement(&anchors);
        let coeffs = random_unit(comp.len(), rng);
        let mut x = x0.clone();
        for (b, w) in comp.iter().zip(&coeffs) {
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += h2.sqrt() * w * bi);
        }
        let l = norm(&x);
        x.iter_mut().for_each(|xi| *xi *= r / l);
        let ok = pts.iter().all(|p| {
            let d = crate::geometry::dist(p, &x);
            d <= 1.0 + 1e-12 && d > 1e-6
        });
        if ok {
            pts.push(x);
        }
    }
    PointSet::on_sphere(4, r, pts).ok()
}

/// Instance `index` of a sweep on `S^3_r`: even indices from
/// [`cap_instance`], odd ones from [`unit_rich_instance`].
pub fn sphere_instance(n: usize, r: f64, seed: u64, index: u64) -> PointSet {
    let mut rng = instance_rng(seed, index);
    for _ in 0..64 {
        let got = if index % 2 == 0 {
            cap_instance(n, r, &mut rng)
        } else {
            unit_rich_instance(n, r, &mut rng)
        };
        if let Some(ps) = got {
            return ps;
        }
    }
    loop {
        if let Some(ps) = cap_instance(n, r, &mut rng) {
            return ps;
        }
    }
}

/// Gaussian points of R^4 scaled to unit diameter.
pub fn r4_instance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PointSet {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..4).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
        .collect();
    let d = max_distance(&pts);
    PointSet::new(4, pts.iter().map(|p| p.iter().map(|x| x / d).collect()).collect()).expect("finite")
}

/// Uniform graph on `n` vertices with `min(m, n(n-1)/2)` edges.
pub fn random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> DiameterGraph {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    all.truncate(m);
    DiameterGraph::from_edges(n, &all).expect("labels below n")
}
