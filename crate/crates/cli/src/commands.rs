use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::path::Path;

use diamgraph::cover::cover_pipeline;
use diamgraph::extremal::{
    anneal_search, counterexample_vazsonyi_sqrt2, instance_rng, random_graph, schur_sweep, sphere_instance,
    sweep_csv, theorem1_sweep, verify_d5_cliques, verify_schur, verify_theorem1, Schedule, Space, SweepConfig,
    SweepRow, TheoremReport,
};
use diamgraph::geometry::{diameter, regular_simplex, PointSet};
use diamgraph::graph::{
    chromatic_number, clique_report, find_ks3, kst_condition, triangle_bound_check, DiameterGraph, CHROMATIC_CAP,
    MAX_EPS,
};
use diamgraph::json::{num, point_set_from_json, point_set_value, render};
use diamgraph::lenz::{formula_csv, formula_table, gen_clique4, gen_edge_optimal, gen_triangle_optimal};
use diamgraph::Error;
use serde_json::{json, Map, Value};

use crate::{AnalyzeArgs, Common, CoverArgs, FormulaArgs, GenArgs, GenKind, SearchArgs, SpaceArg, Suite, VerifyArgs};

pub const VERSION: &str = concat!("diamgraph ", env!("CARGO_PKG_VERSION"));

const FORMULA_MAX_N: u64 = 1_000_000;
const SWEEP_MAX_N: usize = 64;
const RANDOM_SPHERE_MAX_N: usize = 4096;
const KST_MAX_N: u64 = 4096;
const COVER_CLAIMS: [&str; 4] = ["separation", "double_cover", "planar_drawing", "cover_pipeline"];

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

type Res<T> = std::result::Result<T, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Preconditions { .. }
            | Error::NotInHemisphere(_)
            | Error::DegenerateCap { .. }
            | Error::ProjectionDegenerate(_) => 3,
            Error::CoverRefused(_) => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Size the global rayon pool from `DIAMGRAPH_THREADS`, if set.
pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("DIAMGRAPH_THREADS") else {
        return Ok(());
    };
    let k = v
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| format!("DIAMGRAPH_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Resolved run configuration; output paths are left out so that the same
/// run renders the same bytes wherever it is written.
fn config(sub: &str, common: &Common, pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("subcommand".into(), json!(sub));
    for (k, v) in pairs {
        m.insert(k.into(), v);
    }
    m.insert("eps".into(), num(common.eps));
    m
}

fn stamped(cfg: Map<String, Value>, body: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    m.insert("config".into(), Value::Object(cfg));
    for (k, v) in body {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

fn comment_lines(cfg: &Map<String, Value>) -> Vec<String> {
    vec![VERSION.to_string(), format!("config {}", Value::Object(cfg.clone()))]
}

fn write(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_eps(common: &Common) -> Res<()> {
    if common.eps > 0.0 && common.eps <= MAX_EPS {
        Ok(())
    } else {
        Err(usage(format!("--eps must lie in (0, {MAX_EPS}], got {}", common.eps)))
    }
}

fn read_points(path: &Path) -> Res<PointSet> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Err(usage(format!("{}: empty input", path.display())));
    }
    point_set_from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn path_value(p: &Path) -> Value {
    json!(p.display().to_string())
}

pub fn formula(a: &FormulaArgs) -> Res<u8> {
    if a.n_min < 5 || a.n_max > FORMULA_MAX_N {
        return Err(usage(format!(
            "n range must lie within [5, {FORMULA_MAX_N}], got {}..{}",
            a.n_min, a.n_max
        )));
    }
    let cfg = config(
        "formula",
        &a.common,
        vec![("n_min", json!(a.n_min)), ("n_max", json!(a.n_max))],
    );
    let rows = formula_table(a.n_min, a.n_max)?;
    write(a.common.output.as_deref(), &formula_csv(&rows, &comment_lines(&cfg)))?;
    Ok(0)
}

fn kind_name(k: GenKind) -> &'static str {
    match k {
        GenKind::LenzEdges => "lenz-edges",
        GenKind::LenzTriangles => "lenz-triangles",
        GenKind::Lenz4cliques => "lenz-4cliques",
        GenKind::Simplex => "simplex",
        GenKind::Kmm => "kmm",
        GenKind::RandomSphere => "random-sphere",
    }
}

pub fn gen(a: &GenArgs) -> Res<u8> {
    let kind = kind_name(a.kind);
    let allowed: &[&str] = match a.kind {
        GenKind::LenzEdges | GenKind::LenzTriangles | GenKind::Lenz4cliques => &["n"],
        GenKind::Simplex => &["d"],
        GenKind::Kmm => &["m"],
        GenKind::RandomSphere => &["n", "r", "seed"],
    };
    let given = [
        ("n", a.n.is_some()),
        ("m", a.m.is_some()),
        ("d", a.d.is_some()),
        ("r", a.r.is_some()),
        ("seed", a.seed != 0),
    ];
    if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
        return Err(usage(format!("--{flag} does not apply to {kind}")));
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("{kind} needs --{flag}")));

    let mut params = vec![("kind", json!(kind))];
    let mut extras: Vec<(String, Value)> = Vec::new();
    let ps = match a.kind {
        GenKind::LenzEdges | GenKind::LenzTriangles | GenKind::Lenz4cliques => {
            let n = need(a.n, "n")?;
            params.push(("n", json!(n)));
            let lenz = match a.kind {
                GenKind::LenzEdges => gen_edge_optimal(n)?,
                GenKind::LenzTriangles => gen_triangle_optimal(n)?,
                _ => {
                    let c = gen_clique4(n)?;
                    extras.push(("four_cliques".into(), json!(c.four_cliques)));
                    extras.push(("gap".into(), json!(c.gap)));
                    c.config
                }
            };
            extras.insert(0, ("lenz".into(), json!({"a": lenz.a, "r1": num(lenz.r1), "r2": num(lenz.r2)})));
            lenz.point_set()
        }
        GenKind::Simplex => {
            let d = a.d.unwrap_or(4);
            if !(2..=64).contains(&d) {
                return Err(usage(format!("simplex needs 2 <= d <= 64, got {d}")));
            }
            params.push(("d", json!(d)));
            regular_simplex(d)
        }
        GenKind::Kmm => {
            let m = need(a.m, "m")?;
            params.push(("m", json!(m)));
            counterexample_vazsonyi_sqrt2(m)?
        }
        GenKind::RandomSphere => {
            let n = need(a.n, "n")?;
            let r = a.r.ok_or_else(|| usage("random-sphere needs --r"))?;
            if !(2..=RANDOM_SPHERE_MAX_N).contains(&n) {
                return Err(usage(format!("random-sphere needs 2 <= n <= {RANDOM_SPHERE_MAX_N}, got {n}")));
            }
            if !(r.is_finite() && r > 0.5 && r <= 1e6) {
                return Err(usage(format!("random-sphere needs 0.5 < r <= 1e6, got {r}")));
            }
            params.extend([("n", json!(n)), ("r", num(r)), ("seed", json!(a.seed))]);
            sphere_instance(n, r, a.seed, 0)
        }
    };
    let cfg = config("gen", &a.common, params);
    extras.push(("version".into(), json!(VERSION)));
    extras.push(("config".into(), Value::Object(cfg)));
    write(a.common.output.as_deref(), &render(&point_set_value(&ps, extras)))?;
    Ok(0)
}

/// `r > 1/sqrt 2` with the same relative margin the theorem checks use.
fn above_sqrt2_threshold(r: f64) -> bool {
    r > FRAC_1_SQRT_2 * (1.0 + 1e-9)
}

pub fn analyze(a: &AnalyzeArgs) -> Res<u8> {
    check_eps(&a.common)?;
    let ps = read_points(&a.input)?;
    let d = diameter(&ps)?;
    let g = DiameterGraph::build(&ps, a.common.eps)?;
    let (n, e) = (g.n(), g.edge_count());
    let mut notes: Vec<String> = Vec::new();

    let counts: Map<String, Value> = clique_report(&g, None)
        .counts
        .iter()
        .map(|(l, c)| (l.to_string(), json!(c)))
        .collect();
    let chromatic = if n <= CHROMATIC_CAP {
        json!(chromatic_number(&g)?)
    } else {
        notes.push(format!("chromatic number skipped: n = {n} exceeds cap {CHROMATIC_CAP}"));
        Value::Null
    };

    let mut bounds = Map::new();
    let unit = (d.value - 1.0).abs() <= 1e-9;
    match ps.sphere_radius() {
        Some(r) => {
            let bound = (2 * n).saturating_sub(2);
            let applies = ps.dim() == 4 && above_sqrt2_threshold(r) && unit;
            bounds.insert(
                "sphere_edges".into(),
                json!({"radius": num(r), "applies": applies, "bound": bound, "edges": e, "ok": e <= bound}),
            );
        }
        None => notes.push("no sphere metadata: the 2n-2 edge bound is not evaluated".into()),
    }
    let tb = triangle_bound_check(&g);
    bounds.insert(
        "triangles".into(),
        json!({
            "applies": tb.applies,
            "triangles": tb.triangles,
            "bound": num(tb.bound()),
            "ok": tb.strict_ok(),
            "clamped_ok": tb.ok,
            "active_vertices": tb.n_active,
            "active_bound": num(tb.active_bound()),
            "active_ok": tb.active_ok,
            "secondary_bound": num(tb.secondary_x3 as f64 / 3.0),
        }),
    );
    let quarter = (n * n) as f64 / 4.0 + n as f64;
    bounds.insert(
        "edges_quarter_n2_plus_n".into(),
        json!({"applies": ps.dim() <= 4, "bound": num(quarter), "edges": e, "ok": e as f64 <= quarter}),
    );
    if !unit {
        notes.push(format!("diameter {} is not 1; bounds are stated for unit diameter", d.value));
    }

    let cfg = config(
        "analyze",
        &a.common,
        vec![
            ("input", path_value(&a.input)),
            ("dimacs", a.dimacs.as_deref().map_or(Value::Null, path_value)),
        ],
    );
    if let Some(p) = &a.dimacs {
        let mut text: String = comment_lines(&cfg).iter().map(|c| format!("c {c}\n")).collect();
        text.push_str(&g.to_dimacs());
        write(Some(p), &text)?;
    }
    let report = stamped(
        cfg,
        vec![
            ("n", json!(n)),
            ("dim", json!(ps.dim())),
            ("sphere_radius", ps.sphere_radius().map_or(Value::Null, num)),
            ("diameter", json!({"value": num(d.value), "witness_pairs": d.witness_pairs.len()})),
            ("edges", json!(e)),
            ("counts", Value::Object(counts)),
            ("chromatic", chromatic),
            ("bounds", Value::Object(bounds)),
            ("notes", json!(notes)),
        ],
    );
    write(a.common.output.as_deref(), &render(&report))?;
    Ok(0)
}

#[derive(Default)]
struct Tally {
    instances: usize,
    skipped: usize,
    failures: usize,
    reports: Vec<Value>,
    notes: Vec<String>,
}

impl Tally {
    fn add(&mut self, rep: &TheoremReport) {
        self.instances += 1;
        if !rep.hypothesis_ok {
            self.skipped += 1;
        }
        if rep.failed() {
            self.failures += 1;
        }
        self.reports.push(rep.to_json_value());
    }

    fn add_rows(&mut self, rows: &[SweepRow]) {
        for row in rows {
            for rep in &row.reports {
                self.add(rep);
            }
        }
    }
}

/// The cover claims of a theorem-1 report, under their own name.
fn cover_only(rep: &TheoremReport) -> TheoremReport {
    let mut out = rep.clone();
    out.theorem = "cover".into();
    out.claims.retain(|c| COVER_CLAIMS.contains(&c.name.as_str()));
    out
}

fn kst_suite(a: &VerifyArgs, e: u64, tally: &mut Tally) -> Res<()> {
    if a.n > KST_MAX_N {
        return Err(usage(format!("kst needs n <= {KST_MAX_N}, got {}", a.n)));
    }
    if !kst_condition(a.n, e, a.s)? {
        tally.notes.push(format!(
            "kst skipped: the counting condition fails for n = {}, e = {e}, s = {}",
            a.n, a.s
        ));
        return Ok(());
    }
    for index in 0..a.trials as u64 {
        let mut rng = instance_rng(a.seed, index);
        let g = random_graph(a.n as usize, e as usize, &mut rng);
        let found = find_ks3(&g, a.s as usize);
        tally.instances += 1;
        if found.is_none() {
            tally.failures += 1;
        }
        tally.reports.push(json!({
            "theorem": "kst",
            "hypothesis": true,
            "claims": [{
                "name": "contains_k_s3",
                "pass": found.is_some(),
                "witness": found.map(|(big, small)| json!({"s_side": big, "three_side": small})),
            }],
            "instance": {"n": a.n, "e": e, "s": a.s, "seed": a.seed, "index": index},
            "notes": [],
        }));
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> Res<u8> {
    check_eps(&a.common)?;
    let suite = match a.suite {
        Suite::Theorem1 => "theorem1",
        Suite::Schur => "schur",
        Suite::Cover => "cover",
        Suite::Kst => "kst",
        Suite::All => "all",
    };
    let uses_sweep = a.input.is_none() && a.suite != Suite::Kst;
    if uses_sweep {
        if !(5 <= a.n_min && a.n_min <= a.n_max && a.n_max <= SWEEP_MAX_N) {
            return Err(usage(format!(
                "need 5 <= n-min <= n-max <= {SWEEP_MAX_N}, got {}..{}",
                a.n_min, a.n_max
            )));
        }
        if !(a.r.is_finite() && a.r > 0.5 && a.r <= 1e6) {
            return Err(usage(format!("need 0.5 < r <= 1e6, got {}", a.r)));
        }
        if a.steps == 0 {
            return Err(usage("--steps must be positive"));
        }
    }
    let e = a.e.unwrap_or_else(|| (a.n * a.n).div_ceil(4));
    let cfg = config(
        "verify",
        &a.common,
        vec![
            ("suite", json!(suite)),
            ("input", a.input.as_deref().map_or(Value::Null, path_value)),
            ("trials", json!(a.trials)),
            ("n_min", json!(a.n_min)),
            ("n_max", json!(a.n_max)),
            ("r", num(a.r)),
            ("seed", json!(a.seed)),
            ("steps", json!(a.steps)),
            ("kst", json!({"n": a.n, "e": e, "s": a.s})),
        ],
    );

    let sweep = SweepConfig {
        trials: a.trials,
        n_min: a.n_min,
        n_max: a.n_max,
        r: a.r,
        seed: a.seed,
        eps: a.common.eps,
    };
    let input = a.input.as_deref().map(read_points).transpose()?;
    let run_t1 = matches!(a.suite, Suite::Theorem1 | Suite::Cover | Suite::All);
    let run_schur = matches!(a.suite, Suite::Schur | Suite::All);
    let mut tally = Tally::default();
    let mut rows: Vec<SweepRow> = Vec::new();
    let cover = a.suite == Suite::Cover;

    if run_t1 {
        match &input {
            Some(ps) => {
                let rep = verify_theorem1(ps, a.common.eps);
                tally.add(&if cover { cover_only(&rep) } else { rep });
            }
            None => {
                let mut t1 = theorem1_sweep(&sweep);
                if cover {
                    for row in &mut t1 {
                        row.reports = row.reports.iter().map(cover_only).collect();
                    }
                }
                tally.add_rows(&t1);
                rows.extend(t1);
            }
        }
    }
    if run_schur {
        match &input {
            Some(ps) => {
                tally.add(&verify_schur(ps, a.common.eps));
                tally.add(&verify_d5_cliques(ps, a.common.eps));
            }
            None => {
                let s = schur_sweep(&sweep, a.steps);
                tally.add_rows(&s);
                rows.extend(s);
            }
        }
    }
    if matches!(a.suite, Suite::Kst | Suite::All) {
        kst_suite(a, e, &mut tally)?;
    }
    if a.suite == Suite::All {
        tally.notes.push("cover claims are part of the theorem1 reports".into());
    }
    for rep in &tally.reports {
        if rep["hypothesis"] == json!(false) {
            if let Some(why) = rep["notes"].get(0).and_then(Value::as_str) {
                tally.notes.push(format!("{} skipped: {why}", rep["theorem"].as_str().unwrap_or("?")));
            }
        }
    }
    tally.notes.dedup();

    if let Some(p) = &a.csv {
        write(Some(p), &sweep_csv(&rows, &comment_lines(&cfg)))?;
    }
    let passed = tally.failures == 0;
    let report = stamped(
        cfg,
        vec![
            (
                "summary",
                json!({
                    "instances": tally.instances,
                    "checked": tally.instances - tally.skipped,
                    "skipped": tally.skipped,
                    "failures": tally.failures,
                    "passed": passed,
                }),
            ),
            ("notes", json!(tally.notes)),
            ("reports", Value::Array(tally.reports)),
        ],
    );
    write(a.common.output.as_deref(), &render(&report))?;
    Ok(if passed { 0 } else { 1 })
}

pub fn search(a: &SearchArgs) -> Res<u8> {
    let space = match (a.space, a.r) {
        (SpaceArg::R4, None) => Space::R4,
        (SpaceArg::R4, Some(_)) => return Err(usage("--r only applies to --space sphere")),
        (SpaceArg::Sphere, Some(r)) if r.is_finite() && r > 0.5 => Space::Sphere(r),
        (SpaceArg::Sphere, Some(r)) => return Err(usage(format!("sphere search needs r > 0.5, got {r}"))),
        (SpaceArg::Sphere, None) => return Err(usage("--space sphere needs --r")),
    };
    let init = a.init.as_deref().map(read_points).transpose()?;
    let st = anneal_search(a.n, a.l, space, Schedule::with_steps(a.steps), a.seed, init.as_ref())?;
    let cfg = config(
        "search",
        &a.common,
        vec![
            ("n", json!(a.n)),
            ("l", json!(a.l)),
            ("space", json!(if a.space == SpaceArg::R4 { "r4" } else { "sphere" })),
            ("r", a.r.map_or(Value::Null, num)),
            ("steps", json!(a.steps)),
            ("seed", json!(a.seed)),
            ("init", a.init.as_deref().map_or(Value::Null, path_value)),
        ],
    );
    let within = st.bound.is_none_or(|b| st.best_count <= b);
    let report = stamped(
        cfg,
        vec![
            ("best_count", json!(st.best_count)),
            ("bound", json!(st.bound)),
            ("within_bound", json!(within)),
            ("current_count", json!(st.current_count)),
            ("accepted", json!(st.accepted)),
            ("best", point_set_value(&st.best, Vec::new())),
        ],
    );
    write(a.common.output.as_deref(), &render(&report))?;
    Ok(if within { 0 } else { 1 })
}

pub fn cover(a: &CoverArgs) -> Res<u8> {
    check_eps(&a.common)?;
    let ps = read_points(&a.input)?;
    let out = cover_pipeline(&ps, a.common.eps)?;
    let cfg = config("cover", &a.common, vec![("input", path_value(&a.input))]);
    let drawing = out.drawing.as_ref().map_or(Value::Null, |d| {
        json!({
            "planar_ok": d.planar_ok,
            "crossings": d.crossings.iter().map(|c| json!([c.a, c.b])).collect::<Vec<_>>(),
            "cover_edges": d.cover_edges,
            "cover_edge_bound_ok": d.cover_edge_bound_ok,
            "base_edge_bound_ok": d.base_edge_bound_ok,
        })
    });
    let ok = out.ok();
    let report = stamped(
        cfg,
        vec![
            ("n", json!(ps.len())),
            ("radius", ps.sphere_radius().map_or(Value::Null, num)),
            ("edges", json!(out.graph.edge_count())),
            ("kept", json!(out.kept)),
            ("base_edges", json!(out.pruned.edge_count())),
            (
                "separation",
                json!({
                    "pairs_checked": out.separation.pairs_checked,
                    "violations": out.separation.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
                }),
            ),
            ("cover", out.cover.as_ref().map_or(Value::Null, |c| c.to_json_value())),
            ("drawing", drawing),
            ("ok", json!(ok)),
        ],
    );
    write(a.common.output.as_deref(), &render(&report))?;
    Ok(if ok { 0 } else { 1 })
}
