use rayon::prelude::*;

use super::anneal::{anneal_search, Schedule, Space};
use super::sample::{instance_rng, sphere_instance};
use super::{verify_d5_cliques, verify_schur, verify_theorem1, TheoremReport};
use crate::geometry::PointSet;
use crate::json::fmt_num;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub r: f64,
    pub seed: u64,
    pub eps: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            trials: 100,
            n_min: 5,
            n_max: 12,
            r: 0.8,
            seed: 0,
            eps: crate::geometry::DEFAULT_EPS,
        }
    }
}

/// One instance of a sweep with every report run on it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub r: Option<f64>,
    pub points: PointSet,
    pub reports: Vec<TheoremReport>,
}

impl SweepRow {
    pub fn hypothesis_ok(&self) -> bool {
        self.reports.iter().all(|r| r.hypothesis_ok)
    }

    pub fn failed(&self) -> bool {
        self.reports.iter().any(|r| r.failed())
    }
}

fn n_for(cfg: &SweepConfig, index: usize) -> usize {
    let mut rng = instance_rng(cfg.seed ^ 0x6e5f_5eed, index as u64);
    rng.random_range(cfg.n_min..=cfg.n_max.max(cfg.n_min))
}

/// [`verify_theorem1`] on `trials` random instances of `S^3_r`, in parallel,
/// ordered by instance index.
pub fn theorem1_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let n = n_for(cfg, index);
            let ps = sphere_instance(n, cfg.r, cfg.seed, index as u64);
            SweepRow {
                index,
                seed: cfg.seed,
                n,
                r: Some(cfg.r),
                reports: vec![verify_theorem1(&ps, cfg.eps).with_seed(cfg.seed)],
                points: ps,
            }
        })
        .collect()
}

/// [`verify_schur`] and [`verify_d5_cliques`] on the best states of short
/// 4-clique annealing runs in R^4.
pub fn schur_sweep(cfg: &SweepConfig, steps: usize) -> Vec<SweepRow> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let n = n_for(cfg, index);
            let chain_seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(index as u64);
            let st = anneal_search(n, 4, Space::R4, Schedule::with_steps(steps), chain_seed, None)
                .expect("valid search parameters");
            SweepRow {
                index,
                seed: chain_seed,
                n,
                r: None,
                reports: vec![
                    verify_schur(&st.best, cfg.eps).with_seed(chain_seed),
                    verify_d5_cliques(&st.best, cfg.eps).with_seed(chain_seed),
                ],
                points: st.best,
            }
        })
        .collect()
}

/// One CSV row per instance: `index,seed,n,r,hypothesis` then one boolean
/// column per claim (empty when not asserted).
pub fn sweep_csv(rows: &[SweepRow], comment: &[String]) -> String {
    let mut names: Vec<String> = Vec::new();
    for row in rows {
        for rep in &row.reports {
            for c in &rep.claims {
                if !names.contains(&c.name) {
                    names.push(c.name.clone());
                }
            }
        }
    }
    let mut out = String::new();
    for c in comment {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str("index,seed,n,r,hypothesis");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}",
            row.index,
            row.seed,
            row.n,
            row.r.map(fmt_num).unwrap_or_default(),
            row.hypothesis_ok()
        ));
        for name in &names {
            out.push(',');
            if let Some(c) = row.reports.iter().find_map(|r| r.get(name)) {
                out.push_str(if c.pass { "true" } else { "false" });
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes_and_is_ordered() {
        let cfg = SweepConfig {
            trials: 40,
            r: 1.0,
            seed: 4,
            ..SweepConfig::default()
        };
        let rows = theorem1_sweep(&cfg);
        assert_eq!(rows.iter().map(|r| r.index).collect::<Vec<_>>(), (0..40).collect::<Vec<_>>());
        for row in &rows {
            assert!(row.hypothesis_ok());
            assert!(!row.failed(), "{:?}", row.reports[0]);
        }
        assert_eq!(rows, theorem1_sweep(&cfg));
        let csv = sweep_csv(&rows, &["x".into()]);
        assert!(csv.starts_with("# x\nindex,seed,n,r,hypothesis,edges_at_most_2n_minus_2"));
        assert_eq!(csv.lines().count(), 42);
    }

    #[test]
    fn threshold_straddle_is_reported_not_failed() {
        let cfg = SweepConfig {
            trials: 6,
            r: 0.70,
            ..SweepConfig::default()
        };
        for row in theorem1_sweep(&cfg) {
            assert!(!row.hypothesis_ok() && !row.failed());
        }
    }

    #[test]
    fn schur_sweep_small() {
        let cfg = SweepConfig {
            trials: 8,
            n_max: 8,
            ..SweepConfig::default()
        };
        for row in schur_sweep(&cfg, 500) {
            assert!(row.reports.iter().all(|r| r.passed()), "{:?}", row.reports);
        }
    }
}
