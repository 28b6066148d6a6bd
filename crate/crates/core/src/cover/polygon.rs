use crate::error::{Error, Result};
use crate::geometry::{arc_intersection, cross, dot3, normalize3, GreatArc, Vec3};

/// Angular tolerance for identifying points on the diametral sphere.
pub const POINT_TOL: f64 = 1e-9;
/// Orientation slack in containment tests.
const INSIDE_TOL: f64 = 1e-12;

fn same(a: Vec3, b: Vec3) -> bool {
    crate::geometry::angle3(a, b) < POINT_TOL
}

fn det(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    dot3(a, cross(b, c))
}

/// A spherically convex polygon on a 2-sphere, stored as unit vertices in
/// counter-clockwise order around their normalized centroid. Two vertices
/// make an arc, one a point.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    pub sphere_radius: f64,
    vertices: Vec<Vec3>,
}

impl SphericalPolygon {
    /// Orders the given directions around their centroid. The caller
    /// guarantees they are the vertices of a convex polygon in an open
    /// hemisphere, with no two closer than [`POINT_TOL`].
    pub fn from_vertices(sphere_radius: f64, vertices: Vec<Vec3>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("polygon without vertices".into()));
        }
        let mut vertices: Vec<Vec3> = vertices.into_iter().map(normalize3).collect();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if same(vertices[i], vertices[j]) {
                    return Err(Error::Domain("coincident polygon vertices".into()));
                }
            }
        }
        if vertices.len() >= 3 {
            let c = centroid_of(&vertices);
            let e1 = normalize3(sub_along(vertices[0], c));
            let e2 = cross(c, e1);
            vertices.sort_by(|a, b| {
                let ta = dot3(*a, e2).atan2(dot3(*a, e1));
                let tb = dot3(*b, e2).atan2(dot3(*b, e1));
                ta.total_cmp(&tb)
            });
        }
        Ok(SphericalPolygon {
            sphere_radius,
            vertices,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Point reflection through the sphere centre.
    pub fn negated(&self) -> SphericalPolygon {
        SphericalPolygon {
            sphere_radius: self.sphere_radius,
            vertices: self.vertices.iter().map(|v| [-v[0], -v[1], -v[2]]).collect(),
        }
    }

    /// Normalized vertex centroid; the arc midpoint for 2-gons.
    pub fn centroid(&self) -> Vec3 {
        centroid_of(&self.vertices)
    }

    pub fn edges(&self) -> Vec<GreatArc> {
        let k = self.vertices.len();
        match k {
            1 => Vec::new(),
            2 => vec![GreatArc::new(self.vertices[0], self.vertices[1]).expect("distinct, non-antipodal")],
            _ => (0..k)
                .map(|i| {
                    GreatArc::new(self.vertices[i], self.vertices[(i + 1) % k])
                        .expect("distinct, non-antipodal")
                })
                .collect(),
        }
    }

    pub fn is_vertex(&self, x: Vec3) -> bool {
        self.vertices.iter().any(|&v| same(v, x))
    }

    /// Closed containment of a direction.
    pub fn contains(&self, x: Vec3) -> bool {
        let x = normalize3(x);
        match self.vertices.len() {
            1 => same(self.vertices[0], x),
            2 => self.edges()[0].contains(x),
            k => {
                if dot3(x, self.centroid()) <= 0.0 {
                    return false;
                }
                (0..k).all(|i| det(self.vertices[i], self.vertices[(i + 1) % k], x) >= -INSIDE_TOL)
            }
        }
    }
}

fn sub_along(v: Vec3, c: Vec3) -> Vec3 {
    let h = dot3(v, c);
    [v[0] - h * c[0], v[1] - h * c[1], v[2] - h * c[2]]
}

fn centroid_of(vs: &[Vec3]) -> Vec3 {
    let mut s = [0.0; 3];
    for v in vs {
        for k in 0..3 {
            s[k] += v[k];
        }
    }
    normalize3(s)
}

/// How two polygons meet.
#[derive(Debug, Clone, PartialEq)]
pub enum Contact {
    Disjoint,
    /// One common point, a vertex of both.
    SharedVertex(Vec3),
    /// One common point that is not a vertex of both.
    SinglePoint(Vec3),
    /// More than one common point.
    Overlap(Vec3),
}

impl Contact {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Contact::Disjoint)
    }
}

/// Classify `P ∩ Q` from edge crossings and vertex containment.
pub fn contact(p: &SphericalPolygon, q: &SphericalPolygon) -> Contact {
    let mut pts: Vec<Vec3> = Vec::new();
    let push = |x: Vec3, pts: &mut Vec<Vec3>| {
        let x = normalize3(x);
        if !pts.iter().any(|&y| same(x, y)) {
            pts.push(x);
        }
    };
    for a in p.edges() {
        for b in q.edges() {
            match arc_intersection(&a, &b) {
                Ok(Some(x)) => push(x, &mut pts),
                Ok(None) => {}
                Err(_) => return Contact::Overlap(a.unit_point_at(0.5)),
            }
        }
    }
    for &v in p.vertices() {
        if q.contains(v) {
            push(v, &mut pts);
        }
    }
    for &v in q.vertices() {
        if p.contains(v) {
            push(v, &mut pts);
        }
    }
    match pts.as_slice() {
        [] => Contact::Disjoint,
        [x] if p.is_vertex(*x) && q.is_vertex(*x) => Contact::SharedVertex(*x),
        [x] => Contact::SinglePoint(*x),
        [x, ..] => Contact::Overlap(*x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ll(lon: f64, lat: f64) -> Vec3 {
        let (lo, la) = (lon.to_radians(), lat.to_radians());
        [la.cos() * lo.cos(), la.cos() * lo.sin(), la.sin()]
    }

    fn poly(vs: &[Vec3]) -> SphericalPolygon {
        SphericalPolygon::from_vertices(1.0, vs.to_vec()).unwrap()
    }

    #[test]
    fn ordering_is_counter_clockwise() {
        let p = poly(&[ll(10.0, 0.0), ll(-10.0, 0.0), ll(0.0, 10.0), ll(0.0, -10.0)]);
        let c = p.centroid();
        let v = p.vertices();
        for i in 0..4 {
            assert!(det(c, v[i], v[(i + 1) % 4]) > 0.0);
        }
        assert!(p.contains(ll(0.0, 0.0)));
        assert!(p.contains(ll(10.0, 0.0)));
        assert!(!p.contains(ll(8.0, 8.0)));
        assert!(!p.contains([-1.0, 0.0, 0.0]));
    }

    #[test]
    fn contact_kinds() {
        let a = poly(&[ll(0.0, 0.0), ll(10.0, 0.0), ll(5.0, 8.0)]);
        let far = poly(&[ll(40.0, 0.0), ll(50.0, 0.0)]);
        assert_eq!(contact(&a, &far), Contact::Disjoint);
        let touching = poly(&[ll(10.0, 0.0), ll(20.0, 0.0), ll(15.0, -8.0)]);
        assert!(matches!(contact(&a, &touching), Contact::SharedVertex(_)));
        let crossing = poly(&[ll(5.0, -5.0), ll(5.0, 5.0)]);
        assert!(matches!(contact(&a, &crossing), Contact::Overlap(_)));
        // a vertex of one resting inside an edge of the other
        let poke = poly(&[ll(5.0, 0.0), ll(5.0, -6.0)]);
        assert!(matches!(contact(&a, &poke), Contact::SinglePoint(_)));
        // an arc crossing another arc at interior points
        let bar = poly(&[ll(-5.0, 3.0), ll(15.0, 3.0)]);
        let post = poly(&[ll(0.0, -5.0), ll(0.0, 30.0)]);
        assert!(matches!(contact(&bar, &post), Contact::SinglePoint(_)));
        // nested
        let inner = poly(&[ll(4.0, 1.0), ll(6.0, 1.0), ll(5.0, 3.0)]);
        assert!(matches!(contact(&a, &inner), Contact::Overlap(_)));
    }

    #[test]
    fn negation_and_single_point() {
        let a = poly(&[ll(0.0, 0.0), ll(10.0, 0.0)]);
        assert!(contact(&a, &a.negated()).is_disjoint());
        let pt = poly(&[ll(3.0, 0.0)]);
        assert!(matches!(contact(&a, &pt), Contact::SinglePoint(_)));
        assert!(SphericalPolygon::from_vertices(1.0, vec![ll(0.0, 0.0), ll(0.0, 0.0)]).is_err());
    }
}
