//! Sweep execution: expand a plan, run each (instance, seed) job, and emit
//! a canonical CSV.
//!
//! Rows are computed in a worker pool (`MCC_THREADS`, default 1) and then
//! sorted by (n, instance, seed), so identical plans and seeds produce
//! identical bytes whenever `record_time` is off.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use mcc_core::exact::{exact_mcc_with, ExactConfig};
use mcc_core::fragment::t_color_via_separators;
use mcc_core::gen::{instantiate, InstanceSpec};
use mcc_core::graph::max_mono_component;
use mcc_core::separator::{
    FallbackProvider, PlanarProvider, SeparatorProfile, SeparatorProvider, TreewidthProvider,
};

use crate::plan::{Algorithm, ExperimentPlan, ProviderKind};

#[derive(Debug)]
pub struct RunError(pub String);

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RunError {}

/// One sweep result row. Optional cells stay empty in the CSV.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub instance: String,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub algorithm: String,
    pub t: u32,
    pub max_component: usize,
    pub separator_size: Option<usize>,
    pub threshold: Option<usize>,
    pub honored: Option<bool>,
    pub exact: Option<bool>,
    pub nodes: Option<u64>,
    pub time_ms: Option<u128>,
}

pub const CSV_HEADER: [&str; 13] = [
    "instance",
    "family",
    "n",
    "seed",
    "algorithm",
    "t",
    "max_component",
    "separator_size",
    "n0",
    "honored",
    "exact",
    "nodes",
    "time_ms",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        writer
            .write_record([
                r.instance.clone(),
                r.family.clone(),
                r.n.to_string(),
                r.seed.to_string(),
                r.algorithm.clone(),
                r.t.to_string(),
                r.max_component.to_string(),
                opt(&r.separator_size),
                opt(&r.threshold),
                opt(&r.honored),
                opt(&r.exact),
                opt(&r.nodes),
                opt(&r.time_ms),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8")
}

/// Runs one job; `instance` identity comes from the spec.
pub fn run_one(spec: &InstanceSpec, plan: &ExperimentPlan) -> Result<SweepRow, RunError> {
    let fail = |e: &dyn fmt::Display| RunError(format!("{spec}: {e}"));
    let inst = instantiate(spec).map_err(|e| fail(&e))?;
    let g = &inst.graph;
    let start = Instant::now();
    let mut row = SweepRow {
        instance: spec.to_string(),
        family: spec.family.name().to_string(),
        n: g.n(),
        seed: spec.seed,
        algorithm: plan.algorithm.name().to_string(),
        t: plan.t,
        max_component: 0,
        separator_size: None,
        threshold: None,
        honored: None,
        exact: None,
        nodes: None,
        time_ms: None,
    };
    match plan.algorithm {
        Algorithm::Separator => {
            let provider: Box<dyn SeparatorProvider> = match plan.provider {
                ProviderKind::Planar => Box::new(PlanarProvider),
                ProviderKind::Treewidth => {
                    let td = inst
                        .decomposition
                        .clone()
                        .ok_or_else(|| fail(&"family emits no tree decomposition"))?;
                    Box::new(TreewidthProvider::new(td))
                }
                ProviderKind::Fallback => Box::new(FallbackProvider::new(
                    SeparatorProfile::new(
                        plan.declared_coefficient,
                        plan.declared_exponent,
                        "fallback",
                    )
                    .map_err(|e| fail(&e))?,
                )),
            };
            let run = t_color_via_separators(g, plan.t, provider.as_ref()).map_err(|e| fail(&e))?;
            let report = max_mono_component(g, &run.coloring).map_err(|e| fail(&e))?;
            row.max_component = report.max_component_size;
            row.separator_size = Some(run.separator_vertices.len());
            row.threshold = Some(run.threshold);
            row.honored = Some(run.bound_certificate.honored);
        }
        Algorithm::Exact => {
            let config = ExactConfig {
                node_budget: plan.node_budget.unwrap_or(ExactConfig::default().node_budget),
            };
            let res = exact_mcc_with(g, plan.t, &config).map_err(|e| fail(&e))?;
            row.max_component = res.value;
            row.exact = Some(res.exact);
            row.nodes = Some(res.nodes_explored);
        }
    }
    if plan.record_time {
        row.time_ms = Some(start.elapsed().as_millis());
    }
    Ok(row)
}

/// Expands and runs the whole plan; rows come back canonically sorted.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<SweepRow>, RunError> {
    let specs = plan.expand().map_err(RunError)?;
    let threads: usize = std::env::var("MCC_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let threads = threads.max(1).min(specs.len().max(1));
    let mut rows: Vec<Option<SweepRow>> = vec![None; specs.len()];
    if threads <= 1 {
        for (slot, spec) in rows.iter_mut().zip(&specs) {
            *slot = Some(run_one(spec, plan)?);
        }
    } else {
        let next = AtomicUsize::new(0);
        let results: Vec<Mutex<Option<Result<SweepRow, RunError>>>> =
            specs.iter().map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= specs.len() {
                        break;
                    }
                    let out = run_one(&specs[i], plan);
                    *results[i].lock().unwrap() = Some(out);
                });
            }
        });
        for (slot, cell) in rows.iter_mut().zip(results) {
            *slot = Some(cell.into_inner().unwrap().expect("worker filled every slot")?);
        }
    }
    let mut rows: Vec<SweepRow> = rows.into_iter().map(Option::unwrap).collect();
    rows.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then_with(|| a.instance.cmp(&b.instance))
            .then_with(|| a.seed.cmp(&b.seed))
    });
    Ok(rows)
}
