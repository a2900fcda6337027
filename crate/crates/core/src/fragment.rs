//! Separator-driven colorings.
//!
//! The core routine maintains a list of induced subgraphs, repeatedly
//! separates any member larger than a threshold `n0`, collects the
//! separators into a set S, and colors the leftovers with one color. For
//! more colors, the separator set `G[S]` is colored recursively. Closed-form colorings for the
//! diagonal grid and the Hamming-cube line graph live here too.

use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gen::{gen_hamming_cube, GenError};
use crate::graph::{components, line_graph, Coloring, Graph, GraphError, LineGraph, Vertex};
use crate::separator::{verify_separator, SeparatorProfile, SeparatorProvider, SeparatorError};

#[derive(Debug, Error)]
pub enum FragmentError {
    #[error("need at least 2 colors, got {0}")]
    BadColorCount(u32),
    #[error("separator provider failed on a {}-vertex subgraph: {source}", subgraph.len())]
    Provider {
        source: SeparatorError,
        /// Vertices of the offending subgraph, in original ids.
        subgraph: Vec<Vertex>,
    },
    #[error("provider returned an invalid separator on a {}-vertex subgraph: {diagnostic}", subgraph.len())]
    InvalidSeparator {
        subgraph: Vec<Vertex>,
        diagnostic: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `n0 = ⌊n^(1/(t−(t−1)γ))⌋`, computed exactly: with `γ = p/q` this is the
/// integer `(tq−(t−1)p)`-th root of `n^q`.
pub fn threshold(n: usize, t: u32, exponent: Rational64) -> usize {
    assert!(t >= 2);
    let p = *exponent.numer() as u64;
    let q = *exponent.denom() as u64;
    let root = t as u64 * q - (t as u64 - 1) * p;
    debug_assert!(root > 0);
    BigUint::from(n)
        .pow(q as u32)
        .nth_root(root as u32)
        .to_usize()
        .unwrap_or(usize::MAX)
}

/// Exact check of `size ≤ K·n^γ` for rational K = a/b and γ = p/q:
/// `(size·b)^q ≤ a^q · n^p`.
fn meets_declared(size: usize, n: usize, profile: &SeparatorProfile) -> bool {
    let a = *profile.coefficient.numer() as u64;
    let b = *profile.coefficient.denom() as u64;
    let p = *profile.exponent.numer() as u64;
    let q = *profile.exponent.denom() as u64;
    let lhs = BigUint::from(size as u64 * b).pow(q as u32);
    let rhs = BigUint::from(a).pow(q as u32) * BigUint::from(n).pow(p as u32);
    lhs <= rhs
}

/// Certificate from the charging analysis: when every separator met the
/// declared profile, `|S| ≤ coefficient · n0`.
#[derive(Debug, Clone)]
pub struct BoundCertificate {
    pub coefficient: f64,
    /// `coefficient · n0`, the separator budget in vertices.
    pub budget: f64,
    /// True when the provider honored its declared profile on every split;
    /// otherwise the certificate is not claimed.
    pub honored: bool,
}

impl BoundCertificate {
    fn new(n: usize, n0: usize, profile: &SeparatorProfile, honored: bool) -> BoundCertificate {
        let k = rational_to_f64(profile.coefficient);
        let gamma = rational_to_f64(profile.exponent);
        // Per-vertex charges form a geometric series with ratio (2/3)^(1-γ),
        // so |S| ≤ K·n0^(γ-1)·n / (1 − (2/3)^(1-γ)).
        let budget =
            k * (n0 as f64).powf(gamma - 1.0) * (n as f64) / (1.0 - (2.0f64 / 3.0).powf(1.0 - gamma));
        BoundCertificate {
            coefficient: budget / n0 as f64,
            budget,
            honored,
        }
    }
}

fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Per-recursion-stage accounting of a t-coloring run.
#[derive(Debug, Clone)]
pub struct StageSummary {
    /// Colors available at this stage.
    pub colors: u32,
    pub subgraph_size: usize,
    pub threshold: usize,
    pub separator_size: usize,
    pub honored: bool,
}

/// Result of a separator-driven coloring run.
#[derive(Debug, Clone)]
pub struct FragmentationRun {
    pub coloring: Coloring,
    /// Top-level threshold n0.
    pub threshold: usize,
    /// Top-level separator set S, ascending.
    pub separator_vertices: Vec<Vertex>,
    /// Separator vertices collected per list depth; sums to |S|.
    pub charge_ledger: Vec<usize>,
    pub bound_certificate: BoundCertificate,
    /// One entry per recursion stage (t, t−1, ..., down to the last color).
    pub stages: Vec<StageSummary>,
    pub elapsed: Duration,
}

struct ListItem {
    verts: Vec<Vertex>, // local sorted
    depth: usize,
}

impl PartialEq for ListItem {
    fn eq(&self, other: &Self) -> bool {
        self.verts == other.verts
    }
}
impl Eq for ListItem {}
impl Ord for ListItem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Largest first; ties go to the smaller leading vertex so runs are
        // deterministic.
        self.verts
            .len()
            .cmp(&other.verts.len())
            .then_with(|| other.verts[0].cmp(&self.verts[0]))
    }
}
impl PartialOrd for ListItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct ListOutcome {
    separator: Vec<Vertex>, // local, sorted
    ledger: Vec<usize>,
    honored: bool,
}

/// The list algorithm on one graph: split every member larger than `n0`,
/// collecting separators. `ids` translate local vertices to the caller's
/// original ids (needed by structure-aware providers and error reports).
fn run_list(
    g: &Graph,
    ids: &[Vertex],
    n0: usize,
    provider: &dyn SeparatorProvider,
) -> Result<ListOutcome, FragmentError> {
    let all: Vec<Vertex> = (0..g.n() as Vertex).collect();
    let mut heap: BinaryHeap<ListItem> = components(g, &all)?
        .into_iter()
        .map(|verts| ListItem { verts, depth: 0 })
        .collect();
    let profile = provider.profile();
    let mut separator: Vec<Vertex> = Vec::new();
    let mut ledger: Vec<usize> = Vec::new();
    let mut honored = true;
    while heap.peek().is_some_and(|item| item.verts.len() > n0) {
        let item = heap.pop().unwrap();
        let (sub, _) = g.induced_subgraph(&item.verts)?;
        let original: Vec<Vertex> = item.verts.iter().map(|&v| ids[v as usize]).collect();
        let res = provider
            .separate(&sub, &original)
            .map_err(|source| FragmentError::Provider {
                source,
                subgraph: original.clone(),
            })?;
        let check = verify_separator(&sub, &res);
        if !check.ok {
            return Err(FragmentError::InvalidSeparator {
                subgraph: original,
                diagnostic: check.failure.unwrap_or_default(),
            });
        }
        honored &= meets_declared(res.size, sub.n(), &profile);
        if ledger.len() <= item.depth {
            ledger.resize(item.depth + 1, 0);
        }
        ledger[item.depth] += res.size;
        separator.extend(res.separator.iter().map(|&lv| item.verts[lv as usize]));
        for comp in &res.components {
            heap.push(ListItem {
                verts: comp.iter().map(|&lv| item.verts[lv as usize]).collect(),
                depth: item.depth + 1,
            });
        }
    }
    separator.sort_unstable();
    Ok(ListOutcome {
        separator,
        ledger,
        honored,
    })
}

/// The 2-coloring run: separators turn blue (color 1), everything else red
/// (color 0); no red component exceeds `n0 = ⌊n^(1/(2−γ))⌋`.
pub fn two_color_via_separators(
    g: &Graph,
    provider: &dyn SeparatorProvider,
) -> Result<FragmentationRun, FragmentError> {
    t_color_via_separators(g, 2, provider)
}

/// The t-coloring run: the residue keeps color 0 with components at most
/// `n0 = ⌊n^(1/(t−(t-1)γ))⌋`, and `G[S]` is colored recursively with the
/// remaining colors {1..t−1}.
pub fn t_color_via_separators(
    g: &Graph,
    t: u32,
    provider: &dyn SeparatorProvider,
) -> Result<FragmentationRun, FragmentError> {
    if t < 2 {
        return Err(FragmentError::BadColorCount(t));
    }
    g.ensure_simple()?;
    let start = Instant::now();
    let profile = provider.profile();
    let ids: Vec<Vertex> = (0..g.n() as Vertex).collect();
    let mut colors = vec![0u32; g.n()];
    let mut stages: Vec<StageSummary> = Vec::new();
    let mut top: Option<(usize, ListOutcome)> = None;

    // Iterative recursion over (subgraph, ids, colors left, base color).
    let mut current: Option<(Graph, Vec<Vertex>, u32, u32)> = Some((g.clone(), ids, t, 0));
    while let Some((sub, sub_ids, colors_left, base)) = current.take() {
        if colors_left == 1 {
            for &id in &sub_ids {
                colors[id as usize] = base;
            }
            stages.push(StageSummary {
                colors: 1,
                subgraph_size: sub_ids.len(),
                threshold: 0,
                separator_size: 0,
                honored: true,
            });
            break;
        }
        let n0 = threshold(sub.n(), colors_left, profile.exponent);
        let outcome = run_list(&sub, &sub_ids, n0, provider)?;
        for v in 0..sub.n() as Vertex {
            if outcome.separator.binary_search(&v).is_err() {
                colors[sub_ids[v as usize] as usize] = base;
            }
        }
        stages.push(StageSummary {
            colors: colors_left,
            subgraph_size: sub.n(),
            threshold: n0,
            separator_size: outcome.separator.len(),
            honored: outcome.honored,
        });
        let next = if outcome.separator.is_empty() {
            None
        } else {
            let (deeper, _) = sub.induced_subgraph(&outcome.separator)?;
            let deeper_ids: Vec<Vertex> = outcome
                .separator
                .iter()
                .map(|&v| sub_ids[v as usize])
                .collect();
            Some((deeper, deeper_ids, colors_left - 1, base + 1))
        };
        if top.is_none() {
            top = Some((n0, outcome));
        }
        current = next;
    }

    let (n0, outcome) = top.expect("t >= 2 always runs the top stage");
    let certificate = BoundCertificate::new(g.n(), n0, &profile, outcome.honored);
    Ok(FragmentationRun {
        coloring: Coloring::new(colors, t)?,
        threshold: n0,
        separator_vertices: outcome.separator,
        charge_ledger: outcome.ledger,
        bound_certificate: certificate,
        stages,
        elapsed: start.elapsed(),
    })
}

/// Layer-by-layer 2-coloring of the diagonal grid `D_m^d` (index layout of
/// `gen_grid_diag`): color = parity of the last coordinate. Every
/// monochromatic component is one full layer of `m^(d−1)` vertices.
pub fn layer_coloring(d: usize, m: usize) -> Result<Coloring, GenError> {
    if m < 1 || d < 1 {
        return Err(GenError::BadParams("layer coloring needs m, d >= 1".into()));
    }
    let n = m
        .checked_pow(d as u32)
        .ok_or_else(|| GenError::Overflow(format!("{m}^{d} vertices")))?;
    let layer_size = n / m;
    let colors = (0..n).map(|v| ((v / layer_size) % 2) as u32).collect();
    Ok(Coloring::new(colors, 2).expect("two colors"))
}

/// The subcube edge coloring of the Hamming cube: an edge of `Q_d` is red
/// iff its differing coordinate lies among the first d/2. Returns the line
/// graph of `Q_d` and the coloring of its vertices; every monochromatic
/// component is the edge set of a (d/2)-subcube with exactly
/// `(d/4)·2^(d/2)` vertices.
pub fn hamming_cube_edge_coloring(d: usize) -> Result<(LineGraph, Coloring), GenError> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(GenError::BadParams(format!(
            "subcube coloring needs even d >= 2, got {d}"
        )));
    }
    let cube = gen_hamming_cube(d)?;
    let lg = line_graph(&cube)?;
    let colors: Vec<u32> = lg
        .edge_of_vertex
        .iter()
        .map(|e| {
            let axis = (e.u() ^ e.v()).trailing_zeros() as usize;
            if axis < d / 2 {
                0
            } else {
                1
            }
        })
        .collect();
    let coloring = Coloring::new(colors, 2).expect("two colors");
    Ok((lg, coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::max_mono_component;
    use crate::separator::{FallbackProvider, PlanarProvider, TreewidthProvider};

    fn fallback() -> FallbackProvider {
        FallbackProvider::new(
            SeparatorProfile::new(Rational64::new(4, 1), Rational64::new(1, 2), "fallback")
                .unwrap(),
        )
    }

    #[test]
    fn threshold_values() {
        assert_eq!(threshold(400, 2, Rational64::new(1, 2)), 54);
        assert_eq!(threshold(1000, 3, Rational64::new(0, 1)), 10);
        assert_eq!(threshold(27, 3, Rational64::new(0, 1)), 3);
        assert_eq!(threshold(26, 3, Rational64::new(0, 1)), 2);
        assert_eq!(threshold(1, 2, Rational64::new(1, 2)), 1);
    }

    #[test]
    fn single_vertex_never_splits() {
        let g = Graph::from_edges(1, Vec::new()).unwrap();
        let run = two_color_via_separators(&g, &fallback()).unwrap();
        assert!(run.separator_vertices.is_empty());
        assert_eq!(run.coloring.colors(), &[0]);
    }

    #[test]
    fn grid_run_respects_threshold_and_budget() {
        let g = gen::gen_tri_grid(20).unwrap();
        let run = two_color_via_separators(&g, &PlanarProvider).unwrap();
        assert_eq!(run.threshold, 54); // floor(400^(2/3))
        let report = max_mono_component(&g, &run.coloring).unwrap();
        for comp in &report.per_color[0] {
            assert!(comp.len() <= run.threshold);
        }
        assert!(run.bound_certificate.honored);
        assert!(
            (run.separator_vertices.len() as f64) <= run.bound_certificate.budget,
            "|S| = {} over budget {}",
            run.separator_vertices.len(),
            run.bound_certificate.budget
        );
        let ledger_sum: usize = run.charge_ledger.iter().sum();
        assert_eq!(ledger_sum, run.separator_vertices.len());
    }

    #[test]
    fn rib_run_stays_in_n_two_thirds() {
        let rib = gen::gen_rib_planar(6).unwrap();
        let g = &rib.graph;
        let run = two_color_via_separators(g, &PlanarProvider).unwrap();
        assert!(run.bound_certificate.honored);
        let report = max_mono_component(g, &run.coloring).unwrap();
        for comp in &report.per_color[0] {
            assert!(comp.len() <= run.threshold);
        }
        // Blue is the separator pile; the analysis caps it by the budget.
        assert!((run.separator_vertices.len() as f64) <= run.bound_certificate.budget);
        assert!(report.max_component_size <= run.bound_certificate.budget.ceil() as usize);
    }

    #[test]
    fn t2_equals_two_color() {
        let g = gen::gen_tri_grid(9).unwrap();
        let a = two_color_via_separators(&g, &PlanarProvider).unwrap();
        let b = t_color_via_separators(&g, 2, &PlanarProvider).unwrap();
        assert_eq!(a.coloring, b.coloring);
        assert_eq!(a.separator_vertices, b.separator_vertices);
    }

    #[test]
    fn three_colors_on_fan_tower() {
        let (fan, fan_td) = gen::gen_fan(30);
        let g = gen::gen_cone(&fan, 12).unwrap();
        let td = gen::cone_decomposition(&fan_td, fan.n(), 12);
        let provider = TreewidthProvider::new(td);
        let run = t_color_via_separators(&g, 3, &provider).unwrap();
        assert!(run.coloring.colors().iter().all(|&c| c < 3));
        let report = max_mono_component(&g, &run.coloring).unwrap();
        for comp in &report.per_color[0] {
            assert!(comp.len() <= run.threshold);
        }
        assert!(run.bound_certificate.honored);
        assert_eq!(run.stages.len(), 3);
    }

    #[test]
    fn rejects_single_color() {
        let g = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        assert!(matches!(
            t_color_via_separators(&g, 1, &fallback()),
            Err(FragmentError::BadColorCount(1))
        ));
    }

    #[test]
    fn layer_coloring_examples() {
        // D_3^2: three layers of three vertices each.
        let g = gen::gen_grid_diag(3, 2).unwrap();
        let c = layer_coloring(2, 3).unwrap();
        let report = max_mono_component(&g, &c).unwrap();
        assert_eq!(report.max_component_size, 3);
        let total: usize = report.per_color.iter().map(Vec::len).sum();
        assert_eq!(total, 3);
        assert!(report
            .per_color
            .iter()
            .flatten()
            .all(|comp| comp.len() == 3));

        // D_2^1 is K_2, properly colored.
        let g = gen::gen_grid_diag(2, 1).unwrap();
        let c = layer_coloring(1, 2).unwrap();
        assert_eq!(max_mono_component(&g, &c).unwrap().max_component_size, 1);

        // D_4^3: four layers of 16.
        let g = gen::gen_grid_diag(4, 3).unwrap();
        let c = layer_coloring(3, 4).unwrap();
        let report = max_mono_component(&g, &c).unwrap();
        assert_eq!(report.max_component_size, 16);
        let total: usize = report.per_color.iter().map(Vec::len).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn hamming_coloring_exact_component_sizes() {
        for (d, expect) in [(2usize, 1usize), (4, 4), (6, 12)] {
            let (lg, coloring) = hamming_cube_edge_coloring(d).unwrap();
            let report = max_mono_component(&lg.graph, &coloring).unwrap();
            assert_eq!(report.max_component_size, expect, "d={d}");
            for comp in report.per_color.iter().flatten() {
                assert_eq!(comp.len(), expect, "d={d}: every component is a subcube");
            }
        }
    }

    #[test]
    fn hamming_coloring_rejects_odd() {
        assert!(hamming_cube_edge_coloring(3).is_err());
        assert!(hamming_cube_edge_coloring(0).is_err());
    }
}
