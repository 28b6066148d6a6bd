//! Great arcs on a 2-sphere in R^3.

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

/// Angular tolerance for treating two directions as the same point.
const SAME_POINT: f64 = 1e-9;
/// Orientation slack for "on the arc" tests on unit vectors.
const ON_ARC: f64 = 1e-11;

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn normalize3(a: Vec3) -> Vec3 {
    let l = norm3(a);
    [a[0] / l, a[1] / l, a[2] / l]
}

fn neg(a: Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

fn scale3(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Angle between two nonzero vectors, computed stably via atan2.
pub fn angle3(a: Vec3, b: Vec3) -> f64 {
    norm3(cross(a, b)).atan2(dot3(a, b))
}

pub(crate) fn same_point(a: Vec3, b: Vec3) -> bool {
    angle3(a, b) < SAME_POINT
}

/// The shorter great-circle arc between two points that are neither equal nor
/// antipodal. Endpoints are stored as unit vectors together with the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatArc {
    start: Vec3,
    end: Vec3,
    radius: f64,
}

impl GreatArc {
    pub fn new(p: Vec3, q: Vec3) -> Result<Self> {
        let (rp, rq) = (norm3(p), norm3(q));
        if !(rp > 0.0) || !(rq > 0.0) {
            return Err(Error::Domain("arc endpoint at the origin".into()));
        }
        if (rp - rq).abs() > 1e-9 * rp.max(rq) {
            return Err(Error::Domain(format!(
                "arc endpoints on different spheres ({rp} vs {rq})"
            )));
        }
        let (start, end) = (normalize3(p), normalize3(q));
        let theta = angle3(start, end);
        if theta < SAME_POINT {
            return Err(Error::Domain("arc endpoints coincide".into()));
        }
        if std::f64::consts::PI - theta < SAME_POINT {
            return Err(Error::Domain("arc endpoints are antipodal".into()));
        }
        Ok(GreatArc {
            start,
            end,
            radius: rp,
        })
    }

    pub fn start(&self) -> Vec3 {
        scale3(self.start, self.radius)
    }

    pub fn end(&self) -> Vec3 {
        scale3(self.end, self.radius)
    }

    pub fn unit_start(&self) -> Vec3 {
        self.start
    }

    pub fn unit_end(&self) -> Vec3 {
        self.end
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Angular length in radians.
    pub fn length(&self) -> f64 {
        angle3(self.start, self.end)
    }

    /// Unit normal of the carrying great circle, oriented start -> end.
    pub fn normal(&self) -> Vec3 {
        normalize3(cross(self.start, self.end))
    }

    pub fn reversed(&self) -> GreatArc {
        GreatArc {
            start: self.end,
            end: self.start,
            radius: self.radius,
        }
    }

    pub fn negated(&self) -> GreatArc {
        GreatArc {
            start: neg(self.start),
            end: neg(self.end),
            radius: self.radius,
        }
    }

    /// Point at fraction `t` of the way along the arc (unit sphere).
    pub fn unit_point_at(&self, t: f64) -> Vec3 {
        let theta = self.length();
        let (a, b) = (((1.0 - t) * theta).sin(), (t * theta).sin());
        let s = theta.sin();
        normalize3([
            (a * self.start[0] + b * self.end[0]) / s,
            (a * self.start[1] + b * self.end[1]) / s,
            (a * self.start[2] + b * self.end[2]) / s,
        ])
    }

    /// Angular distance from a direction to the nearest point of the arc.
    pub fn angular_distance(&self, x: Vec3) -> f64 {
        let x = normalize3(x);
        let n = self.normal();
        let h = dot3(x, n);
        let foot = [x[0] - h * n[0], x[1] - h * n[1], x[2] - h * n[2]];
        if norm3(foot) > 1e-15 {
            let foot = normalize3(foot);
            if self.on_circle_within(foot, 0.0) {
                return angle3(x, foot);
            }
        }
        angle3(x, self.start).min(angle3(x, self.end))
    }

    /// Whether `x` (a direction) lies on the closed arc.
    pub fn contains(&self, x: Vec3) -> bool {
        self.angular_distance(x) <= 1e-9
    }

    // x assumed on the carrying circle
    fn on_circle_within(&self, x: Vec3, slack: f64) -> bool {
        let n = cross(self.start, self.end);
        dot3(cross(self.start, x), n) >= -slack
            && dot3(cross(x, self.end), n) >= -slack
            && dot3(x, [
                self.start[0] + self.end[0],
                self.start[1] + self.end[1],
                self.start[2] + self.end[2],
            ]) > 0.0
    }

    fn strictly_inside(&self, x: Vec3) -> bool {
        !same_point(x, self.start) && !same_point(x, self.end) && self.contains(x)
    }
}

/// Intersection of two shorter great arcs on a common sphere.
///
/// Shared endpoints count as intersections. Arcs on one great circle that
/// overlap in more than a point yield [`Error::ArcOverlap`].
pub fn arc_intersection(a: &GreatArc, b: &GreatArc) -> Result<Option<Vec3>> {
    if (a.radius - b.radius).abs() > 1e-9 * a.radius.max(b.radius) {
        return Err(Error::Domain(format!(
            "arcs on different spheres ({} vs {})",
            a.radius, b.radius
        )));
    }
    let r = a.radius;
    let shared = [a.start, a.end]
        .into_iter()
        .find(|&p| same_point(p, b.start) || same_point(p, b.end));

    let na = cross(a.start, a.end);
    let nb = cross(b.start, b.end);
    let line = cross(normalize3(na), normalize3(nb));
    if norm3(line) < 1e-12 {
        // one great circle
        let both_shared = (same_point(a.start, b.start) && same_point(a.end, b.end))
            || (same_point(a.start, b.end) && same_point(a.end, b.start));
        if both_shared
            || a.strictly_inside(b.start)
            || a.strictly_inside(b.end)
            || b.strictly_inside(a.start)
            || b.strictly_inside(a.end)
        {
            return Err(Error::ArcOverlap);
        }
        return Ok(shared.map(|p| scale3(p, r)));
    }
    if let Some(p) = shared {
        return Ok(Some(scale3(p, r)));
    }
    let x = normalize3(line);
    for cand in [x, neg(x)] {
        if a.on_circle_within(cand, ON_ARC) && b.on_circle_within(cand, ON_ARC) {
            return Ok(Some(scale3(cand, r)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lonlat(lon_deg: f64, lat_deg: f64) -> Vec3 {
        let (lon, lat) = (lon_deg * PI / 180.0, lat_deg * PI / 180.0);
        [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
    }

    #[test]
    fn orthogonal_crossing_at_midpoint() {
        let r = 2.5;
        let eq = GreatArc::new(scale3(lonlat(-10.0, 0.0), r), scale3(lonlat(10.0, 0.0), r)).unwrap();
        let mer = GreatArc::new(scale3(lonlat(0.0, -10.0), r), scale3(lonlat(0.0, 10.0), r)).unwrap();
        let x = arc_intersection(&eq, &mer).unwrap().unwrap();
        assert!((x[0] - r).abs() < 1e-12 && x[1].abs() < 1e-12 && x[2].abs() < 1e-12);
    }

    #[test]
    fn disjoint_arcs() {
        let eq = GreatArc::new(lonlat(20.0, 0.0), lonlat(40.0, 0.0)).unwrap();
        let mer = GreatArc::new(lonlat(0.0, -10.0), lonlat(0.0, 10.0)).unwrap();
        assert_eq!(arc_intersection(&eq, &mer).unwrap(), None);
    }

    #[test]
    fn shared_endpoint_only() {
        let v1 = lonlat(5.0, 5.0);
        let a = GreatArc::new(v1, lonlat(30.0, 0.0)).unwrap();
        let b = GreatArc::new(lonlat(0.0, 40.0), v1).unwrap();
        let x = arc_intersection(&a, &b).unwrap().unwrap();
        assert!(same_point(x, v1));
    }

    #[test]
    fn collinear_overlap_is_an_error() {
        let a = GreatArc::new(lonlat(0.0, 0.0), lonlat(30.0, 0.0)).unwrap();
        let b = GreatArc::new(lonlat(20.0, 0.0), lonlat(50.0, 0.0)).unwrap();
        assert_eq!(arc_intersection(&a, &b), Err(Error::ArcOverlap));
        assert_eq!(arc_intersection(&a, &a), Err(Error::ArcOverlap));
        // collinear, touching end to end: one point
        let c = GreatArc::new(lonlat(30.0, 0.0), lonlat(60.0, 0.0)).unwrap();
        assert!(arc_intersection(&a, &c).unwrap().is_some());
        // collinear, apart
        let d = GreatArc::new(lonlat(40.0, 0.0), lonlat(60.0, 0.0)).unwrap();
        assert_eq!(arc_intersection(&a, &d).unwrap(), None);
    }

    #[test]
    fn radius_mismatch() {
        let a = GreatArc::new(lonlat(0.0, 0.0), lonlat(30.0, 0.0)).unwrap();
        let b = GreatArc::new(scale3(lonlat(0.0, 10.0), 2.0), scale3(lonlat(0.0, -10.0), 2.0)).unwrap();
        assert!(matches!(arc_intersection(&a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn antipodal_and_coincident_endpoints_rejected() {
        assert!(GreatArc::new([1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]).is_err());
        assert!(GreatArc::new([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]).is_err());
        assert!(GreatArc::new([1.0, 0.0, 0.0], [0.0, 2.0, 0.0]).is_err());
    }

    #[test]
    fn angular_distance_to_arc() {
        let a = GreatArc::new(lonlat(0.0, 0.0), lonlat(30.0, 0.0)).unwrap();
        assert!((a.angular_distance(lonlat(15.0, 10.0)) - 10.0 * PI / 180.0).abs() < 1e-12);
        assert!((a.angular_distance(lonlat(40.0, 0.0)) - 10.0 * PI / 180.0).abs() < 1e-12);
        assert!(a.contains(lonlat(29.0, 0.0)));
        assert!(!a.contains(lonlat(31.0, 0.0)));
    }
}
