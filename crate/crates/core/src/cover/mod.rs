//! Projection of a diameter graph on `S^3_r` (`r > 1/sqrt 2`) onto a
//! diametral 2-sphere, and the bipartite double cover drawn there.
//!
//! Pipeline: [`prune_low_degree`] → [`diametral_sphere`] → [`project_rb`] per
//! vertex → [`check_separation`] → [`build_double_cover`] → [`verify_drawing`].
//! [`cover_pipeline`] runs all of it.

mod polygon;

pub use polygon::{contact, Contact, SphericalPolygon, POINT_TOL};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{
    arc_intersection, diameter, dot, in_open_hemisphere, min_enclosing_cap, norm, normalize3,
    spherical_hull_vertices, GreatArc, PointSet, Vec3, DEFAULT_EPS,
};
use crate::graph::DiameterGraph;
use crate::json::num;

/// Hull boundary samples per vertex neighbourhood in the hemisphere witness.
pub const HULL_SAMPLES: usize = 100;

/// Repeatedly delete vertices of degree at most one. Returns the induced
/// subgraph on the survivors and their labels.
pub fn prune_low_degree(g: &DiameterGraph) -> (DiameterGraph, Vec<usize>) {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push(w);
                }
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    (g.induced(&kept), kept)
}

/// Radius of a point set satisfying the hypotheses: on `S^3_r` with
/// `r > (1 + 1e-9)/sqrt 2` and diameter 1 within `1e-9`.
pub fn check_hypotheses(ps: &PointSet) -> Result<f64> {
    let r = ps
        .sphere_radius()
        .ok_or_else(|| Error::preconditions("point set is not sphere-constrained"))?;
    if ps.dim() != 4 {
        return Err(Error::preconditions(format!("expected points on S^3 in R^4, got dimension {}", ps.dim())));
    }
    if r <= std::f64::consts::FRAC_1_SQRT_2 * (1.0 + 1e-9) {
        return Err(Error::preconditions(format!("sphere radius {r} is not above 1/sqrt(2)")));
    }
    let d = diameter(ps)?.value;
    if (d - 1.0).abs() > 1e-9 {
        return Err(Error::preconditions(format!("diameter {d} is not 1")));
    }
    Ok(r)
}

/// The great 2-sphere `S = S^3_r ∩ pole^⊥`, with an orthonormal basis of
/// `pole^⊥` used to express its points as unit 3-vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DiametralFrame {
    pub radius: f64,
    pub pole: Vec<f64>,
    pub basis: [Vec<f64>; 3],
    /// Size of the sample the pole was fitted to.
    pub samples: usize,
}

impl DiametralFrame {
    fn from_pole(radius: f64, pole: Vec<f64>, samples: usize) -> Self {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(3);
        let mut cands: Vec<Vec<f64>> = (0..4)
            .map(|k| {
                let mut e = vec![0.0; 4];
                e[k] = 1.0;
                e
            })
            .collect();
        // least aligned with the pole first, for conditioning
        cands.sort_by(|a, b| dot(a, &pole).abs().total_cmp(&dot(b, &pole).abs()));
        for e in cands {
            let mut v = e.clone();
            for q in std::iter::once(&pole).chain(basis.iter()) {
                let h = dot(&v, q);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= h * y;
                }
            }
            let l = norm(&v);
            if l > 1e-6 && basis.len() < 3 {
                basis.push(v.iter().map(|x| x / l).collect());
            }
        }
        let [a, b, c]: [Vec<f64>; 3] = basis.try_into().expect("three orthonormal vectors");
        DiametralFrame {
            radius,
            pole,
            basis: [a, b, c],
            samples,
        }
    }

    /// Unit 3-vector of the component of `x` orthogonal to the pole.
    pub fn to_sphere(&self, x: &[f64]) -> Vec3 {
        normalize3([dot(x, &self.basis[0]), dot(x, &self.basis[1]), dot(x, &self.basis[2])])
    }

    /// Point of `S` (radius `r`) in R^4 for a unit 3-vector.
    pub fn lift(&self, y: Vec3) -> Vec<f64> {
        (0..4)
            .map(|k| self.radius * (y[0] * self.basis[0][k] + y[1] * self.basis[1][k] + y[2] * self.basis[2][k]))
            .collect()
    }
}

/// Points of `conv_S(N(v))` on `S^2(v) = S^3_r ∩ {|x - v| = 1}` along the
/// geodesics between neighbour pairs.
fn hull_samples(ps: &PointSet, r: f64, v: usize, nbrs: &[usize], count: usize) -> Vec<Vec<f64>> {
    if nbrs.len() < 2 {
        return Vec::new();
    }
    let pv = ps.point(v);
    let centre: Vec<f64> = pv.iter().map(|x| x * (1.0 - 1.0 / (2.0 * r * r))).collect();
    let rho = (r * r - dot(&centre, &centre)).max(0.0).sqrt();
    let pairs: Vec<(usize, usize)> = (0..nbrs.len())
        .flat_map(|i| (i + 1..nbrs.len()).map(move |j| (i, j)))
        .collect();
    let per = count.div_ceil(pairs.len()).max(1);
    let mut out = Vec::with_capacity(per * pairs.len());
    for &(i, j) in &pairs {
        let a: Vec<f64> = ps.point(nbrs[i]).iter().zip(&centre).map(|(x, c)| x - c).collect();
        let b: Vec<f64> = ps.point(nbrs[j]).iter().zip(&centre).map(|(x, c)| x - c).collect();
        for s in 0..per {
            let t = (s + 1) as f64 / (per + 1) as f64;
            let m: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (1.0 - t) * x + t * y).collect();
            let l = norm(&m);
            if l > 1e-12 {
                out.push(centre.iter().zip(&m).map(|(c, x)| c + rho * x / l).collect());
            }
        }
    }
    out
}

/// Pole of an open hemisphere containing the points and sampled
/// neighbourhood hulls, from the minimal enclosing cap of that sample.
pub fn diametral_sphere(ps: &PointSet, g: &DiameterGraph) -> Result<DiametralFrame> {
    let r = check_hypotheses(ps)?;
    let mut sample: Vec<Vec<f64>> = ps.points().to_vec();
    for v in 0..ps.len() {
        sample.extend(hull_samples(ps, r, v, &g.neighbors(v), HULL_SAMPLES));
    }
    // sampled hull points sit on the sphere up to rounding; re-project
    for p in sample.iter_mut() {
        let l = norm(p);
        p.iter_mut().for_each(|x| *x *= r / l);
    }
    let count = sample.len();
    let cloud = PointSet::on_sphere(4, r, sample)?;
    let cap = match min_enclosing_cap(&cloud) {
        Ok(cap) => cap,
        Err(Error::DegenerateCap { .. }) => {
            return Err(Error::Preconditions {
                reason: "sample is not confined to any hemisphere".into(),
                offending: cloud.into_points(),
            })
        }
        Err(e) => return Err(e),
    };
    if !in_open_hemisphere(&cloud, &cap.pole) {
        let offending = cloud
            .points()
            .iter()
            .filter(|p| dot(p, &cap.pole) <= r * 1e-12)
            .cloned()
            .collect();
        return Err(Error::Preconditions {
            reason: "no open hemisphere contains the sample".into(),
            offending,
        });
    }
    Ok(DiametralFrame::from_pole(r, cap.pole, count))
}

/// `R(v)`, `B(v)` and the edge points behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    /// Vertex index in the pruned graph.
    pub vertex: usize,
    pub neighbors: Vec<usize>,
    /// `u(v -> w)` for each neighbour `w`, as unit 3-vectors on `S`.
    pub edge_points: Vec<Vec3>,
    /// Positions in `neighbors` whose edge point is a vertex of `R(v)`.
    pub hull: Vec<usize>,
    pub r: SphericalPolygon,
    pub b: SphericalPolygon,
}

impl Projection {
    pub fn edge_point_towards(&self, w: usize) -> Option<Vec3> {
        self.neighbors.iter().position(|&x| x == w).map(|i| self.edge_points[i])
    }
}

/// `u(v -> w)`: where the great circle through `v` and `w`, followed from `v`
/// past `w`, meets `S`. Computed from the lower label so that
/// `u(w -> v) = -u(v -> w)` holds exactly.
pub fn edge_point(ps: &PointSet, frame: &DiametralFrame, v: usize, w: usize) -> Result<Vec3> {
    let (a, b) = (v.min(w), v.max(w));
    let (pa, pb) = (ps.point(a), ps.point(b));
    let (ha, hb) = (dot(pa, &frame.pole), dot(pb, &frame.pole));
    let tol = frame.radius * 1e-9;
    if ha <= tol || hb <= tol {
        return Err(Error::ProjectionDegenerate(format!(
            "vertex {} lies on the diametral sphere",
            if ha <= tol { a } else { b }
        )));
    }
    // u(a -> b) is proportional to <a,p> b - <b,p> a
    let z: Vec<f64> = pa.iter().zip(pb).map(|(x, y)| ha * y - hb * x).collect();
    if norm(&z) <= 1e-12 * frame.radius {
        return Err(Error::ProjectionDegenerate(format!("vertices {a} and {b} are parallel")));
    }
    let u = frame.to_sphere(&z);
    Ok(if v == a { u } else { [-u[0], -u[1], -u[2]] })
}

/// Project the edges at `v` (a vertex of the pruned graph `g`, whose points
/// are `ps`) onto the diametral sphere.
pub fn project_rb(ps: &PointSet, g: &DiameterGraph, v: usize, frame: &DiametralFrame) -> Result<Projection> {
    let neighbors = g.neighbors(v);
    if neighbors.len() < 2 {
        return Err(Error::Domain(format!("vertex {v} has degree {} < 2", neighbors.len())));
    }
    let edge_points: Vec<Vec3> = neighbors
        .iter()
        .map(|&w| edge_point(ps, frame, v, w))
        .collect::<Result<_>>()?;
    let gens: Vec<Vec<f64>> = edge_points.iter().map(|u| u.to_vec()).collect();
    let hull = spherical_hull_vertices(&gens).map_err(|e| match e {
        Error::NotInHemisphere(m) => Error::ProjectionDegenerate(format!("edge points of vertex {v}: {m}")),
        other => other,
    })?;
    let r = SphericalPolygon::from_vertices(1.0, hull.iter().map(|&i| edge_points[i]).collect())?;
    let b = r.negated();
    Ok(Projection {
        vertex: v,
        neighbors,
        edge_points,
        hull,
        r,
        b,
    })
}

/// One failed separation property.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `R(v)` and `R(w)` meet.
    RedRed { v: usize, w: usize, contact: Contact },
    /// `R(v)` and `B(u)` meet other than in a common vertex along the edge `uv`
    /// (or fail to meet although `uv` is an edge).
    RedBlue { v: usize, u: usize, edge: bool, contact: Contact },
    /// The edge point towards `w` is not a vertex of `R(v)`.
    NotAVertex { v: usize, w: usize },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeparationReport {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl SeparationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check, over all projected vertices of `g`:
/// `R(v) ∩ R(w) = ∅` for `v != w`; `R(v) ∩ B(u)` is empty unless `uv` is an
/// edge, in which case it is a single common vertex; and every edge point is a
/// vertex of its polygon.
pub fn check_separation(g: &DiameterGraph, proj: &[Projection]) -> SeparationReport {
    let mut rep = SeparationReport::default();
    for (i, p) in proj.iter().enumerate() {
        for &w in &p.neighbors {
            let pos = p.neighbors.iter().position(|&x| x == w).expect("own neighbour");
            if !p.hull.contains(&pos) {
                rep.violations.push(Violation::NotAVertex { v: p.vertex, w });
            }
        }
        for q in &proj[i + 1..] {
            rep.pairs_checked += 1;
            let c = contact(&p.r, &q.r);
            if !c.is_disjoint() {
                rep.violations.push(Violation::RedRed { v: p.vertex, w: q.vertex, contact: c });
            }
        }
        for q in proj {
            rep.pairs_checked += 1;
            let edge = p.vertex != q.vertex && g.has_edge(p.vertex, q.vertex);
            let c = contact(&p.r, &q.b);
            let fine = match (&c, edge) {
                (Contact::Disjoint, false) => true,
                (Contact::SharedVertex(_), true) => true,
                _ => false,
            };
            if !fine {
                rep.violations.push(Violation::RedBlue { v: p.vertex, u: q.vertex, edge, contact: c });
            }
        }
    }
    rep
}

/// The double cover `C` drawn on the unit diametral sphere. Vertex `i` is
/// `c(kept[i])`, vertex `m + i` is `c'(kept[i]) = -c(kept[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCover {
    pub n_base: usize,
    pub kept: Vec<usize>,
    pub vertices: Vec<Vec3>,
    pub edges: Vec<(usize, usize)>,
    /// Two arcs per edge: `c(v) -> x` and `x -> c'(w)`.
    pub arcs: Vec<[GreatArc; 2]>,
}

impl DoubleCover {
    pub fn graph(&self) -> DiameterGraph {
        DiameterGraph::from_edges(self.vertices.len(), &self.edges).expect("indices in range")
    }

    pub fn to_json_value(&self) -> Value {
        let v3 = |x: Vec3| json!([num(x[0]), num(x[1]), num(x[2])]);
        json!({
            "n_base": self.n_base,
            "vertices": self.vertices.iter().map(|&x| v3(x)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "arcs": self
                .arcs
                .iter()
                .flat_map(|pair| pair.iter().map(|a| json!([v3(a.unit_start()), v3(a.unit_end())])))
                .collect::<Vec<_>>(),
        })
    }
}

/// Assemble `C` from verified projections (`proj[i].vertex == i`).
pub fn build_double_cover(
    g: &DiameterGraph,
    kept: &[usize],
    proj: &[Projection],
    report: &SeparationReport,
) -> Result<DoubleCover> {
    if !report.ok() {
        return Err(Error::CoverRefused(report.violations.len()));
    }
    let m = proj.len();
    let c: Vec<Vec3> = proj.iter().map(|p| p.r.centroid()).collect();
    let mut vertices = c.clone();
    vertices.extend(c.iter().map(|x| [-x[0], -x[1], -x[2]]));
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut arcs = Vec::with_capacity(2 * g.edge_count());
    let arc = |a: Vec3, b: Vec3| {
        GreatArc::new(a, b).map_err(|e| Error::ProjectionDegenerate(format!("cover arc: {e}")))
    };
    for (i, j) in g.edges() {
        for (v, w) in [(i, j), (j, i)] {
            let x = proj[v]
                .edge_point_towards(w)
                .ok_or_else(|| Error::Domain(format!("projection of {v} misses neighbour {w}")))?;
            edges.push((v, m + w));
            arcs.push([arc(vertices[v], x)?, arc(x, vertices[m + w])?]);
        }
    }
    Ok(DoubleCover {
        n_base: m,
        kept: kept.to_vec(),
        vertices,
        edges,
        arcs,
    })
}

/// Two drawn arcs that meet where they should not.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    /// Arc indices, `2 * edge + k`.
    pub a: usize,
    pub b: usize,
    /// `None` for arcs overlapping along a great circle.
    pub point: Option<Vec3>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrawingReport {
    pub planar_ok: bool,
    pub crossings: Vec<Crossing>,
    pub cover_edges: usize,
    /// `|E(C)| <= 4 n' - 4`.
    pub cover_edge_bound_ok: bool,
    /// `|E(g')| = |E(C)| / 2 <= 2 n' - 2`.
    pub base_edge_bound_ok: bool,
}

fn shares_endpoint(a: &GreatArc, b: &GreatArc) -> bool {
    let same = |x: Vec3, y: Vec3| crate::geometry::angle3(x, y) < POINT_TOL;
    [a.unit_start(), a.unit_end()]
        .iter()
        .any(|&p| same(p, b.unit_start()) || same(p, b.unit_end()))
}

/// Pairwise crossing test of all drawn arcs. Arcs with a common endpoint may
/// meet there; any other contact is a crossing.
pub fn verify_drawing(dc: &DoubleCover) -> DrawingReport {
    let flat: Vec<&GreatArc> = dc.arcs.iter().flat_map(|p| p.iter()).collect();
    let mut crossings = Vec::new();
    for i in 0..flat.len() {
        for j in i + 1..flat.len() {
            let touching = shares_endpoint(flat[i], flat[j]);
            match arc_intersection(flat[i], flat[j]) {
                Ok(Some(x)) if !touching => crossings.push(Crossing { a: i, b: j, point: Some(x) }),
                Err(_) => crossings.push(Crossing { a: i, b: j, point: None }),
                _ => {}
            }
        }
    }
    let n = dc.n_base as i64;
    let e = dc.edges.len() as i64;
    DrawingReport {
        planar_ok: crossings.is_empty(),
        crossings,
        cover_edges: dc.edges.len(),
        cover_edge_bound_ok: e <= (4 * n - 4).max(0),
        base_edge_bound_ok: e / 2 <= (2 * n - 2).max(0),
    }
}

/// Everything the pipeline computed for one point set.
#[derive(Debug, Clone)]
pub struct CoverOutcome {
    pub graph: DiameterGraph,
    pub pruned: DiameterGraph,
    pub kept: Vec<usize>,
    pub frame: DiametralFrame,
    pub projections: Vec<Projection>,
    pub separation: SeparationReport,
    pub cover: Option<DoubleCover>,
    pub drawing: Option<DrawingReport>,
}

impl CoverOutcome {
    /// All checks passed: separation, bipartite cover with twice the edges,
    /// and a crossing-free drawing.
    pub fn ok(&self) -> bool {
        match (&self.cover, &self.drawing) {
            (Some(c), Some(d)) => {
                self.separation.ok()
                    && c.edges.len() == 2 * self.pruned.edge_count()
                    && c.graph().is_bipartite()
                    && d.planar_ok
                    && d.cover_edge_bound_ok
            }
            _ => false,
        }
    }
}

/// Run the whole construction on a point set of `S^3_r`.
pub fn cover_pipeline(ps: &PointSet, eps: f64) -> Result<CoverOutcome> {
    check_hypotheses(ps)?;
    let graph = DiameterGraph::build(ps, eps)?;
    let frame = diametral_sphere(ps, &graph)?;
    let (pruned, kept) = prune_low_degree(&graph);
    let sub = ps.subset(&kept);
    let projections: Vec<Projection> = (0..kept.len())
        .map(|v| project_rb(&sub, &pruned, v, &frame))
        .collect::<Result<_>>()?;
    let separation = check_separation(&pruned, &projections);
    let cover = build_double_cover(&pruned, &kept, &projections, &separation).ok();
    let drawing = cover.as_ref().map(verify_drawing);
    Ok(CoverOutcome {
        graph,
        pruned,
        kept,
        frame,
        projections,
        separation,
        cover,
        drawing,
    })
}

/// [`cover_pipeline`] at the default tolerance.
pub fn cover_of(ps: &PointSet) -> Result<CoverOutcome> {
    cover_pipeline(ps, DEFAULT_EPS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chromatic_number;
    use crate::lenz::star_radius;
    use std::f64::consts::PI;

    pub(crate) fn pentagram_on_sphere(r: f64) -> PointSet {
        let rho = star_radius(5);
        let h = (r * r - rho * rho).sqrt();
        let pts = (0..5)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 5.0;
                vec![rho * t.cos(), rho * t.sin(), 0.0, h]
            })
            .collect();
        PointSet::on_sphere(4, r, pts).unwrap()
    }

    /// Two unit triangles sharing the north pole of `S^3_1`, their far edges
    /// crossing at right angles.
    pub(crate) fn bowtie() -> PointSet {
        // neighbours of the pole lie on x4 = 1/2, |x| = sqrt(3)/2 in the first three coordinates
        let rho = 0.75f64.sqrt();
        let half = (1.0 / (2.0 * rho)).asin();
        let at = |polar: f64, az: f64| {
            vec![
                rho * polar.sin() * az.cos(),
                rho * polar.sin() * az.sin(),
                rho * polar.cos(),
                0.5,
            ]
        };
        let pts = vec![
            vec![0.0, 0.0, 0.0, 1.0],
            at(half, 0.0),
            at(half, PI),
            at(half, PI / 2.0),
            at(half, 3.0 * PI / 2.0),
        ];
        PointSet::on_sphere(4, 1.0, pts).unwrap()
    }

    #[test]
    fn pruning() {
        let p4 = DiameterGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(prune_low_degree(&p4).1, Vec::<usize>::new());
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let g = DiameterGraph::from_edges(5, &c5).unwrap();
        assert_eq!(prune_low_degree(&g).1, vec![0, 1, 2, 3, 4]);
        let mut pend = c5.clone();
        pend.push((2, 5));
        let (h, kept) = prune_low_degree(&DiameterGraph::from_edges(6, &pend).unwrap());
        assert_eq!(kept, vec![0, 1, 2, 3, 4]);
        assert_eq!(h.edge_count(), 5);
    }

    #[test]
    fn pentagram_pole_is_north() {
        let ps = pentagram_on_sphere(0.8);
        let g = DiameterGraph::of(&ps).unwrap();
        let f = diametral_sphere(&ps, &g).unwrap();
        assert!(f.pole[3] > 1.0 - 1e-9);
        assert_eq!(f.samples, 5 + 5 * HULL_SAMPLES);
        for b in &f.basis {
            assert!((norm(b) - 1.0).abs() < 1e-12 && dot(b, &f.pole).abs() < 1e-12);
        }
    }

    #[test]
    fn radius_gate() {
        let kmm = {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut pts = Vec::new();
            for k in 0..3 {
                let t = k as f64 * 0.5;
                pts.push(vec![r * t.cos(), r * t.sin(), 0.0, 0.0]);
                pts.push(vec![0.0, 0.0, r * t.cos(), r * t.sin()]);
            }
            PointSet::on_sphere(4, r, pts).unwrap()
        };
        assert!(matches!(cover_of(&kmm), Err(Error::Preconditions { .. })));
        let flat = PointSet::new(4, vec![vec![0.0; 4], vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(cover_of(&flat), Err(Error::Preconditions { .. })));
    }

    #[test]
    fn single_edge_has_a_pole_and_empty_cover() {
        let ps = PointSet::on_sphere(4, 1.0, vec![vec![0.0, 0.0, 0.0, 1.0], vec![0.75f64.sqrt(), 0.0, 0.0, 0.5]]).unwrap();
        let out = cover_of(&ps).unwrap();
        assert!(out.kept.is_empty());
        assert!(out.ok());
        assert!(in_open_hemisphere(&ps, &out.frame.pole));
    }

    #[test]
    fn pentagram_cover_is_a_ten_cycle() {
        let out = cover_of(&pentagram_on_sphere(0.8)).unwrap();
        assert!(out.separation.ok(), "{:?}", out.separation.violations);
        let dc = out.cover.as_ref().unwrap();
        let c = dc.graph();
        assert_eq!((c.n(), c.edge_count()), (10, 10));
        assert!((0..10).all(|v| c.degree(v) == 2));
        assert_eq!(chromatic_number(&c).unwrap(), 2);
        // connected: a single 10-cycle
        let (_, kept) = prune_low_degree(&c);
        assert_eq!(kept.len(), 10);
        let mut seen = vec![0usize];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for w in c.neighbors(v) {
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        assert_eq!(seen.len(), 10);
        let d = out.drawing.unwrap();
        assert!(d.planar_ok && d.cover_edge_bound_ok && d.base_edge_bound_ok);
        for p in &out.projections {
            assert_eq!(p.r.len(), 2);
            for (x, y) in p.r.vertices().iter().zip(p.b.vertices()) {
                assert_eq!(*y, [-x[0], -x[1], -x[2]]);
            }
        }
    }

    #[test]
    fn bowtie_cover() {
        let ps = bowtie();
        let g = DiameterGraph::of(&ps).unwrap();
        assert_eq!(g.edge_count(), 6);
        let out = cover_of(&ps).unwrap();
        assert!(out.ok(), "{:?}", out.separation.violations);
        let c = out.cover.unwrap().graph();
        assert_eq!((c.n(), c.edge_count()), (10, 12));
        assert!(c.is_bipartite());
        // the hub has four neighbours and a quadrilateral R
        assert_eq!(out.projections[0].r.len(), 4);
    }

    #[test]
    fn antipodal_involution_is_exact() {
        let out = cover_of(&bowtie()).unwrap();
        let dc = out.cover.unwrap();
        let key = |a: &GreatArc| {
            let mut e = [a.unit_start(), a.unit_end()].map(|p| p.map(f64::to_bits));
            e.sort();
            e
        };
        let all: Vec<_> = dc.arcs.iter().flat_map(|p| p.iter().map(key)).collect();
        for pair in &dc.arcs {
            for a in pair {
                assert!(all.contains(&key(&a.negated())));
            }
        }
    }

    #[test]
    fn injected_overlap_is_reported() {
        let out = cover_of(&pentagram_on_sphere(0.8)).unwrap();
        let mut proj = out.projections.clone();
        // make R(1) a copy of R(0)
        proj[1].r = proj[0].r.clone();
        proj[1].b = proj[0].b.clone();
        let rep = check_separation(&out.pruned, &proj);
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RedRed { v: 0, w: 1, .. })));
        assert!(matches!(
            build_double_cover(&out.pruned, &out.kept, &proj, &rep),
            Err(Error::CoverRefused(_))
        ));
    }

    #[test]
    fn crossed_fixture_is_not_planar() {
        let out = cover_of(&pentagram_on_sphere(0.8)).unwrap();
        let mut dc = out.cover.unwrap();
        let first = dc.arcs[0][0];
        let mid = first.unit_point_at(0.5);
        // an arc through the midpoint of the first arc, crossing it
        let n = first.normal();
        let a = normalize3([mid[0] + 0.1 * n[0], mid[1] + 0.1 * n[1], mid[2] + 0.1 * n[2]]);
        let b = normalize3([mid[0] - 0.1 * n[0], mid[1] - 0.1 * n[1], mid[2] - 0.1 * n[2]]);
        dc.arcs.push([GreatArc::new(a, b).unwrap(), GreatArc::new(b, a).unwrap()]);
        dc.edges.push((0, 1));
        let d = verify_drawing(&dc);
        assert!(!d.planar_ok);
        assert!(d.crossings.iter().any(|c| c.a == 0));
    }

    #[test]
    fn cover_json_shape() {
        let out = cover_of(&pentagram_on_sphere(0.8)).unwrap();
        let v = out.cover.unwrap().to_json_value();
        assert_eq!(v["n_base"], 5);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
        assert_eq!(v["edges"].as_array().unwrap().len(), 10);
        assert_eq!(v["arcs"].as_array().unwrap().len(), 20);
    }
}
