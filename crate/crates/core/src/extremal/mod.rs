//! Theorem-level checks, the two sphere counterexamples, random instance
//! generators, sweeps and simulated-annealing search.

mod anneal;
mod sample;
mod sweep;

pub use anneal::{
    anneal_search, exact_count, rescale_r4, MIN_SEPARATION, REPULSION_RANGE, small_n_oracle, soft_score, Schedule, SearchState, Space,
};
pub use sample::{
    cap_instance, geodesic_rescale, instance_rng, r4_instance, random_graph, random_unit, sphere_instance, unit_rich_instance,
};
pub use sweep::{schur_sweep, sweep_csv, theorem1_sweep, SweepConfig, SweepRow};

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use serde_json::{json, Map, Value};

use crate::cover::{check_hypotheses, cover_pipeline};
use crate::geometry::{diameter, regular_simplex, PointSet};
use crate::graph::{
    chromatic_number, clique_equivalence_partition, cliques_sharing_exactly, count_cliques,
    odd_cycles_pairwise_intersect, DiameterGraph, CHROMATIC_CAP, ODD_CYCLE_CAP,
};
use crate::json::num;

/// Arc width, as a fraction of `pi/2`, holding each part of the `K_{m,m}` example.
pub const KMM_ARC_FRACTION: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Value>,
}

/// Outcome of one theorem check on one instance. When the hypotheses fail
/// no claims are asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypothesis_ok: bool,
    pub claims: Vec<Claim>,
    pub instance: Map<String, Value>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn new(theorem: &str, ps: &PointSet, eps: f64) -> Self {
        let mut instance = Map::new();
        instance.insert("n".into(), json!(ps.len()));
        instance.insert("dim".into(), json!(ps.dim()));
        instance.insert("r".into(), ps.sphere_radius().map_or(Value::Null, num));
        instance.insert("eps".into(), num(eps));
        instance.insert("seed".into(), Value::Null);
        TheoremReport {
            theorem: theorem.into(),
            hypothesis_ok: true,
            claims: Vec::new(),
            instance,
            notes: Vec::new(),
        }
    }

    fn violated(mut self, why: impl std::fmt::Display) -> Self {
        self.hypothesis_ok = false;
        self.notes.push(format!("hypothesis violated: {why}"));
        self
    }

    fn claim(&mut self, name: &str, pass: bool, witness: Option<Value>) {
        self.claims.push(Claim {
            name: name.into(),
            pass,
            witness,
        });
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.instance.insert("seed".into(), json!(seed));
        self
    }

    /// Hypotheses hold and every asserted claim passed.
    pub fn passed(&self) -> bool {
        self.hypothesis_ok && self.claims.iter().all(|c| c.pass)
    }

    /// Hypotheses hold and some claim failed.
    pub fn failed(&self) -> bool {
        self.hypothesis_ok && self.claims.iter().any(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "hypothesis": self.hypothesis_ok,
            "claims": self
                .claims
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness}))
                .collect::<Vec<_>>(),
            "instance": self.instance,
            "notes": self.notes,
        })
    }
}

fn caps(rep: &mut TheoremReport, pairs: &[(&str, usize)]) {
    let m: Map<String, Value> = pairs.iter().map(|&(k, v)| (k.to_string(), json!(v))).collect();
    rep.instance.insert("caps".into(), Value::Object(m));
}

/// Edge bound, 4-colourability, intersecting odd cycles, and the double
/// cover construction, for a unit-diameter set on `S^3_r`, `r > 1/sqrt 2`.
pub fn verify_theorem1(ps: &PointSet, eps: f64) -> TheoremReport {
    let mut rep = TheoremReport::new("theorem1", ps, eps);
    caps(&mut rep, &[("chromatic", CHROMATIC_CAP), ("odd_cycles", ODD_CYCLE_CAP)]);
    if let Err(e) = check_hypotheses(ps) {
        return rep.violated(e);
    }
    let g = match DiameterGraph::build(ps, eps) {
        Ok(g) => g,
        Err(e) => return rep.violated(e),
    };
    let n = g.n();
    let e = g.edge_count();
    let bound = (2 * n).saturating_sub(2);
    rep.claim("edges_at_most_2n_minus_2", e <= bound, Some(json!({"edges": e, "bound": bound})));
    match chromatic_number(&g) {
        Ok(chi) => rep.claim("chromatic_at_most_4", chi <= 4, Some(json!({"chromatic": chi}))),
        Err(_) => rep.notes.push(format!("chromatic claim skipped: n = {n} exceeds cap {CHROMATIC_CAP}")),
    }
    match odd_cycles_pairwise_intersect(&g) {
        Ok(ok) => rep.claim("odd_cycles_pairwise_intersect", ok, None),
        Err(_) => rep.notes.push(format!("odd-cycle claim skipped: n = {n} exceeds cap {ODD_CYCLE_CAP}")),
    }
    match cover_pipeline(ps, eps) {
        Ok(out) => {
            let first = out.separation.violations.first().map(|v| json!(format!("{v:?}")));
            rep.claim(
                "separation",
                out.separation.ok(),
                Some(json!({
                    "pruned_n": out.kept.len(),
                    "violations": out.separation.violations.len(),
                    "first": first,
                })),
            );
            if let (Some(c), Some(d)) = (&out.cover, &out.drawing) {
                let doubled = c.edges.len() == 2 * out.pruned.edge_count();
                let bip = c.graph().is_bipartite();
                rep.claim(
                    "double_cover",
                    doubled && bip && d.cover_edge_bound_ok,
                    Some(json!({
                        "base_edges": out.pruned.edge_count(),
                        "cover_edges": c.edges.len(),
                        "bipartite": bip,
                    })),
                );
                rep.claim(
                    "planar_drawing",
                    d.planar_ok,
                    Some(json!({"crossings": d.crossings.len()})),
                );
            }
        }
        Err(e) => rep.claim("cover_pipeline", false, Some(json!({"error": e.to_string()}))),
    }
    rep
}

fn unit_diameter_gate(rep: TheoremReport, ps: &PointSet, min_n: usize) -> std::result::Result<TheoremReport, TheoremReport> {
    if ps.dim() > 4 {
        return Err(rep.violated(format!("dimension {} > 4", ps.dim())));
    }
    if ps.len() < min_n {
        return Err(rep.violated(format!("n = {} < {min_n}", ps.len())));
    }
    match diameter(ps) {
        Ok(d) if (d.value - 1.0).abs() <= 1e-9 => Ok(rep),
        Ok(d) => Err(rep.violated(format!("diameter {} is not 1", d.value))),
        Err(e) => Err(rep.violated(e)),
    }
}

/// At most `n` 4-cliques in R^4, no two sharing exactly one vertex, and the
/// per-class accounting behind that count.
pub fn verify_schur(ps: &PointSet, eps: f64) -> TheoremReport {
    let rep = TheoremReport::new("schur", ps, eps);
    let mut rep = match unit_diameter_gate(rep, ps, 5) {
        Ok(r) => r,
        Err(r) => return r,
    };
    let g = match DiameterGraph::build(ps, eps) {
        Ok(g) => g,
        Err(e) => return rep.violated(e),
    };
    let n = g.n();
    let k4 = count_cliques(&g, 4);
    rep.claim("four_cliques_at_most_n", k4 <= n as u64, Some(json!({"four_cliques": k4, "n": n})));
    let one = cliques_sharing_exactly(&g, 4, 1);
    rep.claim(
        "no_pair_sharing_one_vertex",
        one.is_empty(),
        one.first().map(|(a, b)| json!({"pair": [a, b]})),
    );
    let part = clique_equivalence_partition(&g, 4);
    let classes: Vec<Value> = part
        .classes
        .iter()
        .map(|c| json!({"vertices": c.vertices.len(), "cliques": c.cliques.len()}))
        .collect();
    rep.claim(
        "classes_share_at_least_two",
        part.pairwise_share_at_least_two(),
        None,
    );
    rep.claim(
        "class_counts_within_vertices",
        part.cliques_within_vertex_budget() && part.vertex_total() <= n,
        Some(json!({"classes": classes, "vertex_total": part.vertex_total()})),
    );
    rep
}

/// At most one 5-clique in R^4.
pub fn verify_d5_cliques(ps: &PointSet, eps: f64) -> TheoremReport {
    let rep = TheoremReport::new("d5_cliques", ps, eps);
    let mut rep = match unit_diameter_gate(rep, ps, 2) {
        Ok(r) => r,
        Err(r) => return r,
    };
    match DiameterGraph::build(ps, eps) {
        Ok(g) => {
            let k5 = count_cliques(&g, 5);
            rep.claim("five_cliques_at_most_one", k5 <= 1, Some(json!({"five_cliques": k5})));
            rep
        }
        Err(e) => rep.violated(e),
    }
}

/// `K_{m,m}` on `S^3_{1/sqrt 2}`: `m` points along an arc of width just
/// under `pi/2` on each of two orthogonal great circles.
pub fn counterexample_vazsonyi_sqrt2(m: usize) -> crate::Result<PointSet> {
    if m < 3 {
        return Err(crate::Error::Domain(format!("need m >= 3, got {m}")));
    }
    let r = FRAC_1_SQRT_2;
    let width = FRAC_PI_2 * KMM_ARC_FRACTION;
    let step = width / (m - 1) as f64;
    let mut pts = Vec::with_capacity(2 * m);
    for k in 0..m {
        let t = k as f64 * step;
        pts.push(vec![r * t.cos(), r * t.sin(), 0.0, 0.0]);
    }
    for k in 0..m {
        let t = k as f64 * step;
        pts.push(vec![0.0, 0.0, r * t.cos(), r * t.sin()]);
    }
    PointSet::on_sphere(4, r, pts)
}

/// The unit regular 4-simplex, on `S^3_{sqrt(2/5)}`.
pub fn counterexample_borsuk_sqrt25() -> PointSet {
    regular_simplex(4)
}
