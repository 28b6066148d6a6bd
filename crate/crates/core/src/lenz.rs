//! Extremal counting functions and Lenz configurations.
//!
//! A Lenz configuration puts `a` points on a circle `C1` of radius `r1` in
//! the `x1 x2` plane and `n - a` points on a circle `C2` of radius `r2` in the
//! `x3 x4` plane, with `r1^2 + r2^2 = 1`. Every cross pair is then at distance
//! exactly 1, and the diameter graph contains `K_{a, n-a}`.

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graph::{count_cliques, DiameterGraph};
use crate::json::{num, point_set_value};

/// Chords on `C2` other than the single unit chord stay at or below `1 - C2_MARGIN`.
pub const C2_MARGIN: f64 = 1e-3;

fn need_n5(n: u64) -> Result<()> {
    if n < 5 {
        return Err(Error::Domain(format!("defined for n >= 5, got {n}")));
    }
    Ok(())
}

/// Edges of the balanced complete bipartite graph.
pub fn t2(n: u64) -> u64 {
    (n / 2) * n.div_ceil(2)
}

/// Maximum number of diameters among `n` points of R^4.
pub fn f2(n: u64) -> Result<u64> {
    need_n5(n)?;
    let base = t2(n) + n.div_ceil(2);
    Ok(if n % 4 == 3 { base } else { base + 1 })
}

/// Maximum number of unit triangles of a diameter graph in R^4 (large `n`).
pub fn f3(n: u64) -> Result<u64> {
    need_n5(n)?;
    Ok(match n % 4 {
        1 => (n - 1) * (n - 1) / 4 + n,
        3 => (n - 1) * (n - 1) / 4 + n - 1,
        _ => n * (n - 2) / 4 + n,
    })
}

/// Maximum number of unit distances among `n` points of R^4.
pub fn u4_edges(n: u64) -> Result<u64> {
    need_n5(n)?;
    let base = n * n / 4 + n;
    Ok(if n % 8 == 0 || n % 10 == 0 { base } else { base - 1 })
}

/// Largest number of diameters among `k` points on a circle of the given radius
/// (the diameter being 1).
pub fn max_circle_diameters(k: u64, radius: f64) -> u64 {
    if k < 2 || radius < 0.5 {
        return 0;
    }
    if radius == 0.5 {
        return k / 2;
    }
    if radius > 1.0 / 3f64.sqrt() {
        return 1;
    }
    if k % 2 == 1 {
        k
    } else {
        k - 1
    }
}

/// Diameters realizable among `a` points on the small circle.
pub fn diam1(a: u64) -> u64 {
    if a % 2 == 1 {
        a
    } else {
        a.saturating_sub(1)
    }
}

/// Triangle count of the split-`a` Lenz bound, `n + 2(n-a) floor((a-1)/2)`.
pub fn lenz_triangles_formula(n: u64, a: u64) -> Result<u64> {
    need_n5(n)?;
    if a < 2 || a + 2 > n {
        return Err(Error::Domain(format!("split a = {a} outside [2, {}]", n - 2)));
    }
    Ok(n + 2 * (n - a) * ((a - 1) / 2))
}

/// Radius of the circle on which the regular `m`-gon (m odd) has unit
/// `(m-1)/2`-step chords.
pub fn star_radius(m: u64) -> f64 {
    debug_assert!(m % 2 == 1 && m >= 3);
    let k = (m - 1) / 2;
    1.0 / (2.0 * (k as f64 * PI / m as f64).sin())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LenzConfig {
    pub a: usize,
    pub r1: f64,
    pub r2: f64,
    pub angles1: Vec<f64>,
    pub angles2: Vec<f64>,
}

impl LenzConfig {
    pub fn n(&self) -> usize {
        self.angles1.len() + self.angles2.len()
    }

    /// The realized points, `C1` part first.
    pub fn point_set(&self) -> PointSet {
        let mut pts: Vec<Vec<f64>> = self
            .angles1
            .iter()
            .map(|t| vec![self.r1 * t.cos(), self.r1 * t.sin(), 0.0, 0.0])
            .collect();
        pts.extend(
            self.angles2
                .iter()
                .map(|t| vec![0.0, 0.0, self.r2 * t.cos(), self.r2 * t.sin()]),
        );
        PointSet::new(4, pts).expect("finite 4-vectors")
    }

    pub fn graph(&self) -> DiameterGraph {
        DiameterGraph::of(&self.point_set()).expect("a Lenz configuration has positive diameter")
    }

    /// `1 - (longest non-unit chord)` on each circle (`inf` if none).
    pub fn chord_margins(&self) -> (f64, f64) {
        (
            chord_margin(self.r1, &self.angles1),
            chord_margin(self.r2, &self.angles2),
        )
    }

    /// PointSet JSON with a `"lenz"` block.
    pub fn to_json_value(&self) -> Value {
        point_set_value(
            &self.point_set(),
            vec![(
                "lenz".into(),
                json!({"a": self.a, "r1": num(self.r1), "r2": num(self.r2)}),
            )],
        )
    }
}

fn chord(r: f64, s: f64, t: f64) -> f64 {
    2.0 * r * ((s - t).abs() / 2.0).sin().abs()
}

fn chord_margin(r: f64, angles: &[f64]) -> f64 {
    let mut worst = f64::INFINITY;
    for i in 0..angles.len() {
        for j in i + 1..angles.len() {
            let c = chord(r, angles[i], angles[j]);
            if (c - 1.0).abs() > 1e-9 {
                worst = worst.min(1.0 - c);
            }
        }
    }
    worst
}

/// `a` points on `C1` with `diam1(a)` unit chords: the regular `a`-star for
/// odd `a`, otherwise `a` consecutive vertices of the `(a+1)`-star.
fn c1_part(a: usize) -> (f64, Vec<f64>) {
    let m = if a % 2 == 1 { a } else { a + 1 };
    let step = 2.0 * PI / m as f64;
    (star_radius(m as u64), (0..a).map(|j| j as f64 * step).collect())
}

/// `b >= 2` angles on a circle of radius `r2 > 1/sqrt(3)` with exactly one
/// unit chord, all other chords at most `1 - C2_MARGIN`.
fn c2_angles(b: usize, r2: f64) -> Vec<f64> {
    let alpha = 2.0 * (1.0 / (2.0 * r2)).asin();
    let beta = 2.0 * ((1.0 - C2_MARGIN) / (2.0 * r2)).asin();
    let mut out = vec![0.0, alpha];
    let rest = b - 2;
    match rest {
        0 => {}
        1 => out.push(alpha / 2.0),
        _ => {
            let (lo, hi) = (alpha - beta, beta);
            let h = (hi - lo) / (rest - 1) as f64;
            out.extend((0..rest).map(|i| lo + i as f64 * h));
        }
    }
    out
}

/// The Lenz configuration with `a` points on `C1` and `n - a` on `C2`, having
/// `a(n-a) + diam1(a) + 1` diameters.
pub fn lenz_config(n: usize, a: usize) -> Result<LenzConfig> {
    need_n5(n as u64)?;
    if a < 2 || a + 2 > n {
        return Err(Error::Domain(format!("split a = {a} outside [2, {}]", n - 2)));
    }
    let (r1, angles1) = c1_part(a);
    let r2 = (1.0 - r1 * r1).sqrt();
    Ok(LenzConfig {
        a,
        r1,
        r2,
        angles1,
        angles2: c2_angles(n - a, r2),
    })
}

/// Split maximizing `a(n-a) + diam1(a) + 1`; ties go to odd, then larger `a`.
pub fn edge_optimal_split(n: usize) -> usize {
    (2..=n - 2)
        .max_by_key(|&a| {
            let v = a * (n - a) + diam1(a as u64) as usize + 1;
            (v, a % 2, a)
        })
        .expect("n >= 5")
}

/// Odd split maximizing the triangle formula; ties go to the larger `a`.
pub fn triangle_optimal_split(n: usize) -> usize {
    (3..=n - 2)
        .filter(|a| a % 2 == 1)
        .max_by_key(|&a| (lenz_triangles_formula(n as u64, a as u64).expect("in range"), a))
        .expect("n >= 5")
}

pub fn gen_edge_optimal(n: usize) -> Result<LenzConfig> {
    need_n5(n as u64)?;
    lenz_config(n, edge_optimal_split(n))
}

pub fn gen_triangle_optimal(n: usize) -> Result<LenzConfig> {
    need_n5(n as u64)?;
    lenz_config(n, triangle_optimal_split(n))
}

/// `gen_clique4` output: the configuration and its measured 4-clique count.
#[derive(Debug, Clone, PartialEq)]
pub struct Clique4 {
    pub config: LenzConfig,
    pub four_cliques: u64,
    /// `n - four_cliques`, the distance to the upper bound `n`.
    pub gap: i64,
}

/// `n - 2` points on `C1`, two on `C2` sharing one unit chord.
pub fn gen_clique4(n: usize) -> Result<Clique4> {
    let config = lenz_config(n, n - 2)?;
    let four_cliques = count_cliques(&config.graph(), 4);
    Ok(Clique4 {
        gap: n as i64 - four_cliques as i64,
        config,
        four_cliques,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaRow {
    pub n: u64,
    pub t2: u64,
    pub f2: u64,
    pub f3: u64,
    pub u4: u64,
}

/// Formula values for `lo..=hi` (empty when `lo > hi`).
pub fn formula_table(lo: u64, hi: u64) -> Result<Vec<FormulaRow>> {
    need_n5(lo)?;
    (lo..=hi)
        .map(|n| {
            Ok(FormulaRow {
                n,
                t2: t2(n),
                f2: f2(n)?,
                f3: f3(n)?,
                u4: u4_edges(n)?,
            })
        })
        .collect()
}

/// CSV with header `n,t2,F2,F3,U4`; `comment` lines are prefixed with `# `.
pub fn formula_csv(rows: &[FormulaRow], comment: &[String]) -> String {
    let mut s = String::new();
    for c in comment {
        s.push_str("# ");
        s.push_str(c);
        s.push('\n');
    }
    s.push_str("n,t2,F2,F3,U4\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.n, r.t2, r.f2, r.f3, r.u4));
    }
    s
}

/// The triangle formula for every admissible split of `n`.
pub fn triangles_by_split(n: u64) -> Result<Vec<(u64, u64)>> {
    need_n5(n)?;
    (2..=n - 2).map(|a| Ok((a, lenz_triangles_formula(n, a)?))).collect()
}
