//! Exact `mcc_t` on small graphs, density lower-bound certificates, and
//! edge-coloring audits.
//!
//! The branch-and-bound solver is the working oracle; the naive full
//! enumeration is kept as ground truth for it. Both return the smallest
//! achievable maximum monochromatic component size together with a witness
//! coloring.

use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::graph::{avg_degree, Coloring, Edge, Graph, GraphError, UnionFind, Vertex};

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("search space {t}^{n} exceeds the naive enumeration guard")]
    TooLarge { n: usize, t: u32 },
    #[error("need at least one color")]
    NoColors,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exact (or budget-truncated) solver outcome.
#[derive(Debug, Clone)]
pub struct ExactResult {
    /// Smallest maximum monochromatic component size found; exact when
    /// `exact` is set, otherwise a best-known upper bound.
    pub value: usize,
    pub witness: Coloring,
    pub nodes_explored: u64,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct ExactConfig {
    /// Cap on explored branch-and-bound nodes; beyond it the incumbent is
    /// returned flagged inexact.
    pub node_budget: u64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            node_budget: 200_000_000,
        }
    }
}

fn eval_coloring(g: &Graph, colors: &[u32]) -> usize {
    let mut uf = UnionFind::new(g.n());
    for e in g.edges() {
        if colors[e.u() as usize] == colors[e.v() as usize] {
            uf.union(e.u(), e.v());
        }
    }
    (0..g.n() as u32)
        .map(|v| uf.component_size(v) as usize)
        .max()
        .unwrap_or(0)
}

/// Ground-truth oracle: full enumeration of all `t^n` colorings.
pub fn naive_mcc(g: &Graph, t: u32) -> Result<ExactResult, ExactError> {
    g.ensure_simple()?;
    if t == 0 {
        return Err(ExactError::NoColors);
    }
    let n = g.n();
    if n == 0 {
        return Err(ExactError::BadParams("empty graph".into()));
    }
    let space = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(t as u64).filter(|&x| x <= 1 << 24)
    });
    if space.is_none() {
        return Err(ExactError::TooLarge { n, t });
    }
    let mut colors = vec![0u32; n];
    let mut best = eval_coloring(g, &colors);
    let mut witness = colors.clone();
    let mut explored = 1u64;
    'outer: loop {
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            colors[i] += 1;
            if colors[i] < t {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
        explored += 1;
        let value = eval_coloring(g, &colors);
        if value < best {
            best = value;
            witness.copy_from_slice(&colors);
            if best == 1 {
                break;
            }
        }
    }
    Ok(ExactResult {
        value: best,
        witness: Coloring::new(witness, t)?,
        nodes_explored: explored,
        exact: true,
    })
}

/// Union-find with an undo trail (no path compression) for backtracking.
struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    trail: Vec<u32>, // roots that were attached, in order
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            trail: Vec::new(),
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.trail.push(small);
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn rollback_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let small = self.trail.pop().unwrap();
            let big = self.parent[small as usize];
            self.parent[small as usize] = small;
            self.size[big as usize] -= self.size[small as usize];
        }
    }

    fn component_size(&self, x: u32) -> u32 {
        self.size[self.find(x) as usize]
    }
}

fn bfs_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots: Vec<Vertex> = (0..n as Vertex).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for root in roots {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.adj(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Exact `mcc_t` by branch and bound: vertices in BFS order from a
/// max-degree root, one rollback union-find per color, pruning as soon as
/// any current component reaches the incumbent. Color symmetry is broken by
/// only allowing one fresh color per step.
pub fn exact_mcc(g: &Graph, t: u32) -> Result<ExactResult, ExactError> {
    exact_mcc_with(g, t, &ExactConfig::default())
}

pub fn exact_mcc_with(g: &Graph, t: u32, config: &ExactConfig) -> Result<ExactResult, ExactError> {
    g.ensure_simple()?;
    if t == 0 {
        return Err(ExactError::NoColors);
    }
    let n = g.n();
    if n == 0 {
        return Err(ExactError::BadParams("empty graph".into()));
    }
    let order = bfs_order(g);

    struct Search<'a> {
        g: &'a Graph,
        order: Vec<Vertex>,
        t: u32,
        colors: Vec<u32>,
        assigned: Vec<bool>,
        dsu: Vec<RollbackDsu>,
        incumbent: usize,
        witness: Vec<u32>,
        nodes: u64,
        budget: u64,
        aborted: bool,
    }

    impl Search<'_> {
        fn dfs(&mut self, pos: usize, max_used: u32, current_max: usize) {
            if pos == self.order.len() {
                // Pruning guarantees strict improvement here.
                self.incumbent = current_max;
                self.witness.copy_from_slice(&self.colors);
                return;
            }
            let v = self.order[pos];
            // max_used counts the distinct colors in use; one fresh color is
            // allowed per step, so the very first vertex is pinned to 0.
            let top = self.t.min(max_used + 1);
            for c in 0..top {
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.aborted = true;
                    return;
                }
                let dsu = &mut self.dsu[c as usize];
                let mark = dsu.mark();
                for &w in self.g.adj(v) {
                    if self.assigned[w as usize] && self.colors[w as usize] == c {
                        dsu.union(v, w);
                    }
                }
                let size = dsu.component_size(v) as usize;
                let new_max = current_max.max(size);
                if new_max < self.incumbent {
                    self.colors[v as usize] = c;
                    self.assigned[v as usize] = true;
                    self.dfs(pos + 1, max_used.max(c + 1).min(self.t), new_max);
                    self.assigned[v as usize] = false;
                }
                self.dsu[c as usize].rollback_to(mark);
                if self.aborted {
                    return;
                }
            }
        }
    }

    let all_zero = vec![0u32; n];
    let start_value = eval_coloring(g, &all_zero);
    let mut search = Search {
        g,
        order,
        t,
        colors: vec![0; n],
        assigned: vec![false; n],
        dsu: (0..t).map(|_| RollbackDsu::new(n)).collect(),
        incumbent: start_value + 1,
        witness: all_zero,
        nodes: 0,
        budget: config.node_budget,
        aborted: false,
    };
    search.dfs(0, 0, 0);
    let incumbent = search.incumbent.min(start_value);
    Ok(ExactResult {
        value: incumbent,
        witness: Coloring::new(search.witness, t)?,
        nodes_explored: search.nodes,
        exact: !search.aborted,
    })
}

// ---------------------------------------------------------------------------
// Density lower bounds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DensityConfig {
    /// Exhaustive enumeration stops (and falls back to sampling) beyond this
    /// many connected sets.
    pub exhaustive_cap: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            exhaustive_cap: 2_000_000,
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub enum DensityEvidence {
    /// Every connected set of at most p vertices was checked.
    Exhaustive { sets_checked: u64 },
    /// Enumeration was infeasible; a sampled search is attached.
    Sampled { samples: u64, violations: u64 },
}

/// Certificate for "every connected subgraph on ≤ p vertices has average
/// degree strictly below dbar/t", which forces `mcc_t(L(h)) ≥ p`.
#[derive(Debug, Clone)]
pub struct DensityCertificate {
    pub p: usize,
    /// Average degree of h (multiplicities count).
    pub dbar: Rational64,
    pub t: u32,
    /// True only when the exhaustive check passed.
    pub valid: bool,
    pub evidence: DensityEvidence,
    /// A connected set violating the strict inequality, when one was found.
    pub violation: Option<Vec<Vertex>>,
}

/// Enumerates connected induced vertex sets of size ≤ p exactly once each
/// (grow-from-anchor with exclusion), calling `visit(set, edge_count)`.
/// Returns false when the cap was hit.
fn enumerate_connected_sets<F>(g: &Graph, p: usize, cap: u64, visit: &mut F) -> (u64, bool)
where
    F: FnMut(&[Vertex], usize) -> bool,
{
    let n = g.n();
    let mut count = 0u64;
    let mut in_set = vec![false; n];
    let mut blocked = vec![false; n]; // in the extension list or discarded
    #[allow(clippy::too_many_arguments)]
    fn extend<F>(
        g: &Graph,
        anchor: Vertex,
        set: &mut Vec<Vertex>,
        edges: usize,
        ext: Vec<Vertex>,
        in_set: &mut [bool],
        blocked: &mut [bool],
        p: usize,
        cap: u64,
        count: &mut u64,
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[Vertex], usize) -> bool,
    {
        *count += 1;
        if *count > cap {
            return false;
        }
        if !visit(set, edges) {
            return false;
        }
        if set.len() == p {
            return true;
        }
        let mut rest = ext;
        while let Some(w) = rest.pop() {
            let gained: usize = set
                .iter()
                .map(|&u| {
                    if g.has_edge(u, w) {
                        g.multiplicity_of(Edge::new(u, w).unwrap()) as usize
                    } else {
                        0
                    }
                })
                .sum();
            let mut next_ext = rest.clone();
            let mut newly_blocked = Vec::new();
            for &x in g.adj(w) {
                if x > anchor && !in_set[x as usize] && !blocked[x as usize] {
                    blocked[x as usize] = true;
                    newly_blocked.push(x);
                    next_ext.push(x);
                }
            }
            set.push(w);
            in_set[w as usize] = true;
            let ok = extend(
                g, anchor, set, edges + gained, next_ext, in_set, blocked, p, cap, count, visit,
            );
            in_set[w as usize] = false;
            set.pop();
            for x in newly_blocked {
                blocked[x as usize] = false;
            }
            if !ok {
                return false;
            }
            // w stays blocked for the remaining choices at this level.
        }
        true
    }
    for anchor in 0..n as Vertex {
        let ext: Vec<Vertex> = g.adj(anchor).iter().copied().filter(|&w| w > anchor).collect();
        for &w in &ext {
            blocked[w as usize] = true;
        }
        let mut set = vec![anchor];
        in_set[anchor as usize] = true;
        let ok = extend(
            g, anchor, &mut set, 0, ext.clone(), &mut in_set, &mut blocked, p, cap, &mut count,
            visit,
        );
        in_set[anchor as usize] = false;
        for &w in &ext {
            blocked[w as usize] = false;
        }
        if !ok {
            return (count, false);
        }
    }
    (count, true)
}

/// Checks the density criterion for `h`, `t`, `p`. Exhaustive when feasible
/// under the configured cap, otherwise a sampled search with `valid = false`.
pub fn density_lower_bound(
    h: &Graph,
    t: u32,
    p: usize,
    config: &DensityConfig,
) -> Result<DensityCertificate, ExactError> {
    if t == 0 {
        return Err(ExactError::NoColors);
    }
    if p == 0 {
        return Err(ExactError::BadParams("p must be at least 1".into()));
    }
    let all: Vec<Vertex> = (0..h.n() as Vertex).collect();
    let dbar = avg_degree(h, &all)?;
    let target = dbar / Rational64::new(t as i64, 1);
    let mut violation: Option<Vec<Vertex>> = None;
    let strict_below = |edges: usize, verts: usize| {
        Rational64::new(2 * edges as i64, verts as i64) < target
    };
    let (checked, completed) = enumerate_connected_sets(h, p, config.exhaustive_cap, &mut |set, edges| {
        if strict_below(edges, set.len()) {
            true
        } else {
            violation = Some(set.to_vec());
            false
        }
    });
    if violation.is_some() {
        return Ok(DensityCertificate {
            p,
            dbar,
            t,
            valid: false,
            evidence: DensityEvidence::Exhaustive {
                sets_checked: checked,
            },
            violation,
        });
    }
    if completed {
        return Ok(DensityCertificate {
            p,
            dbar,
            t,
            valid: true,
            evidence: DensityEvidence::Exhaustive {
                sets_checked: checked,
            },
            violation: None,
        });
    }
    // Too many sets: sampled violation search, never a valid certificate.
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut violations = 0u64;
    for _ in 0..config.samples {
        let set = random_connected_set(h, p, &mut rng);
        let a = avg_degree(h, &set)?;
        if a >= target {
            violations += 1;
            if violation.is_none() {
                violation = Some(set);
            }
        }
    }
    Ok(DensityCertificate {
        p,
        dbar,
        t,
        valid: false,
        evidence: DensityEvidence::Sampled {
            samples: config.samples,
            violations,
        },
        violation,
    })
}

/// Uniform-ish random connected set: grow from a random start, picking a
/// random frontier vertex until the target size (drawn in 1..=max_size) or
/// the component is exhausted.
pub fn random_connected_set(g: &Graph, max_size: usize, rng: &mut impl Rng) -> Vec<Vertex> {
    let n = g.n();
    let target = if max_size <= 1 {
        1
    } else {
        rng.random_range(2..=max_size)
    };
    let start = rng.random_range(0..n) as Vertex;
    let mut in_set = vec![false; n];
    let mut in_frontier = vec![false; n];
    let mut set = vec![start];
    in_set[start as usize] = true;
    let mut frontier: Vec<Vertex> = Vec::new();
    for &w in g.adj(start) {
        in_frontier[w as usize] = true;
        frontier.push(w);
    }
    while set.len() < target && !frontier.is_empty() {
        let i = rng.random_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        in_frontier[v as usize] = false;
        in_set[v as usize] = true;
        set.push(v);
        for &w in g.adj(v) {
            if !in_set[w as usize] && !in_frontier[w as usize] {
                in_frontier[w as usize] = true;
                frontier.push(w);
            }
        }
    }
    set.sort_unstable();
    set
}

/// Average degrees of sampled connected sets of at most `max_size` vertices.
pub fn sample_connected_density(
    h: &Graph,
    max_size: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Rational64>, ExactError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let set = random_connected_set(h, max_size, &mut rng);
        out.push(avg_degree(h, &set)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Edge-coloring audits
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ComponentStats {
    pub vertices: Vec<Vertex>,
    pub edge_count: usize,
    pub avg_degree: Rational64,
}

/// What the majority color class of an edge coloring contains: its largest
/// component (by edges) and its densest one.
#[derive(Debug, Clone)]
pub struct AdversaryReport {
    pub majority_color: u32,
    pub class_edge_count: usize,
    pub largest: ComponentStats,
    pub densest: ComponentStats,
}

/// Audits a t-coloring of the edge instances of `h` (indexed as
/// `h.edge_instances()`): finds the majority color class F and decomposes
/// the spanning subgraph (V(h), F) into components.
pub fn coloring_adversary_report(
    h: &Graph,
    edge_coloring: &Coloring,
) -> Result<AdversaryReport, ExactError> {
    let instances = h.edge_instances();
    if instances.is_empty() {
        return Err(ExactError::BadParams("graph has no edges".into()));
    }
    if edge_coloring.len() != instances.len() {
        return Err(ExactError::Graph(GraphError::ColoringLength {
            expected: instances.len(),
            got: edge_coloring.len(),
        }));
    }
    let mut class_sizes = vec![0usize; edge_coloring.t() as usize];
    for i in 0..instances.len() {
        class_sizes[edge_coloring.color(i as Vertex) as usize] += 1;
    }
    let majority_color = class_sizes
        .iter()
        .enumerate()
        .max_by_key(|&(c, &s)| (s, std::cmp::Reverse(c)))
        .map(|(c, _)| c as u32)
        .unwrap();
    let mut uf = UnionFind::new(h.n());
    let mut edge_count: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    for (i, e) in instances.iter().enumerate() {
        if edge_coloring.color(i as Vertex) == majority_color {
            uf.union(e.u(), e.v());
        }
    }
    for (i, e) in instances.iter().enumerate() {
        if edge_coloring.color(i as Vertex) == majority_color {
            *edge_count.entry(uf.find(e.u())).or_insert(0) += 1;
        }
    }
    let mut members: std::collections::HashMap<u32, Vec<Vertex>> = std::collections::HashMap::new();
    for v in 0..h.n() as Vertex {
        let root = uf.find(v);
        if edge_count.contains_key(&root) {
            members.entry(root).or_default().push(v);
        }
    }
    let mut stats: Vec<ComponentStats> = members
        .into_iter()
        .map(|(root, vertices)| {
            let edges = edge_count[&root];
            ComponentStats {
                avg_degree: Rational64::new(2 * edges as i64, vertices.len() as i64),
                edge_count: edges,
                vertices,
            }
        })
        .collect();
    stats.sort_by_key(|s| s.vertices[0]);
    let largest = stats
        .iter()
        .max_by_key(|s| (s.edge_count, std::cmp::Reverse(s.vertices[0])))
        .unwrap()
        .clone();
    let densest = stats
        .iter()
        .max_by(|a, b| {
            a.avg_degree
                .cmp(&b.avg_degree)
                .then_with(|| b.vertices[0].cmp(&a.vertices[0]))
        })
        .unwrap()
        .clone();
    Ok(AdversaryReport {
        majority_color,
        class_edge_count: class_sizes[majority_color as usize],
        largest,
        densest,
    })
}

/// Uniform iid edge coloring.
pub fn random_edge_coloring(h: &Graph, t: u32, rng: &mut impl Rng) -> Coloring {
    let m = h.instance_count();
    let colors = (0..m).map(|_| rng.random_range(0..t)).collect();
    Coloring::new(colors, t).expect("colors in range")
}

/// Exactly balanced random edge coloring: shuffled instances dealt
/// round-robin over the colors.
pub fn random_balanced_edge_coloring(h: &Graph, t: u32, rng: &mut impl Rng) -> Coloring {
    let m = h.instance_count();
    let mut idx: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.random_range(0..=i);
        idx.swap(i, j);
    }
    let mut colors = vec![0u32; m];
    for (round, &i) in idx.iter().enumerate() {
        colors[i] = (round % t as usize) as u32;
    }
    Coloring::new(colors, t).expect("colors in range")
}

/// Edge processing order for the greedy colorer.
#[derive(Debug, Clone, Copy)]
pub enum GreedyOrder {
    Natural,
    Reverse,
    Shuffled(u64),
}

/// Greedy anti-component edge coloring: each edge takes the color minimizing
/// the edge count of the monochromatic component it lands in.
pub fn greedy_edge_coloring(h: &Graph, t: u32, order: GreedyOrder) -> Coloring {
    let instances = h.edge_instances();
    let m = instances.len();
    let mut idx: Vec<usize> = (0..m).collect();
    match order {
        GreedyOrder::Natural => {}
        GreedyOrder::Reverse => idx.reverse(),
        GreedyOrder::Shuffled(seed) => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for i in (1..m).rev() {
                let j = rng.random_range(0..=i);
                idx.swap(i, j);
            }
        }
    }
    let mut ufs: Vec<UnionFind> = (0..t).map(|_| UnionFind::new(h.n())).collect();
    let mut comp_edges: Vec<std::collections::HashMap<u32, usize>> =
        (0..t).map(|_| std::collections::HashMap::new()).collect();
    let mut class_size = vec![0usize; t as usize];
    let mut colors = vec![0u32; m];
    for &i in &idx {
        let e = instances[i];
        let mut best: Option<(usize, usize, u32)> = None;
        for c in 0..t {
            let (ru, rv) = (ufs[c as usize].find(e.u()), ufs[c as usize].find(e.v()));
            let merged = if ru == rv {
                comp_edges[c as usize].get(&ru).copied().unwrap_or(0) + 1
            } else {
                comp_edges[c as usize].get(&ru).copied().unwrap_or(0)
                    + comp_edges[c as usize].get(&rv).copied().unwrap_or(0)
                    + 1
            };
            let key = (merged, class_size[c as usize], c);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (merged, _, c) = best.unwrap();
        colors[i] = c;
        class_size[c as usize] += 1;
        let uf = &mut ufs[c as usize];
        let (ru, rv) = (uf.find(e.u()), uf.find(e.v()));
        comp_edges[c as usize].remove(&ru);
        comp_edges[c as usize].remove(&rv);
        uf.union(e.u(), e.v());
        comp_edges[c as usize].insert(uf.find(e.u()), merged);
    }
    Coloring::new(colors, t).expect("colors in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::{line_graph, max_mono_component};

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as Vertex {
            for j in i + 1..n as Vertex {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn naive_triangle() {
        let g = complete(3);
        assert_eq!(naive_mcc(&g, 2).unwrap().value, 2);
        assert_eq!(naive_mcc(&g, 3).unwrap().value, 1);
    }

    #[test]
    fn naive_fan4() {
        let (g, _) = gen::gen_fan(4);
        assert_eq!(naive_mcc(&g, 2).unwrap().value, 2);
    }

    #[test]
    fn fan_values_grow_like_sqrt() {
        let mut last = 0;
        for k in [9usize, 12, 16] {
            let (g, _) = gen::gen_fan(k);
            let value = exact_mcc(&g, 2).unwrap().value;
            assert!(value >= last, "mcc_2(F_k) must be nondecreasing in k");
            let ratio = value as f64 / (k as f64).sqrt();
            assert!((0.5..=2.5).contains(&ratio), "k={k}: ratio {ratio}");
            last = value;
        }
    }

    #[test]
    fn naive_guard() {
        let g = complete(30);
        assert!(matches!(
            naive_mcc(&g, 2),
            Err(ExactError::TooLarge { n: 30, t: 2 })
        ));
    }

    #[test]
    fn exact_bipartite_is_one() {
        let g = gen::gen_hamming_cube(3).unwrap();
        let res = exact_mcc(&g, 2).unwrap();
        assert_eq!(res.value, 1);
        assert!(res.witness.is_proper(&g));
    }

    #[test]
    fn exact_grid_diag_is_three() {
        let g = gen::gen_grid_diag(3, 2).unwrap();
        let res = exact_mcc(&g, 2).unwrap();
        assert_eq!(res.value, 3);
        assert_eq!(naive_mcc(&g, 2).unwrap().value, 3);
    }

    #[test]
    fn exact_matches_naive_on_random_corpus() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for case in 0..30 {
            let n = rng.random_range(4..=9);
            let mut edges = Vec::new();
            for i in 0..n as Vertex {
                for j in i + 1..n as Vertex {
                    if rng.random_range(0..100) < 40 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let t = if case % 2 == 0 { 2 } else { 3 };
            let a = exact_mcc(&g, t).unwrap();
            let b = naive_mcc(&g, t).unwrap();
            assert_eq!(a.value, b.value, "case {case}");
            let check = max_mono_component(&g, &a.witness).unwrap();
            assert_eq!(check.max_component_size, a.value);
        }
    }

    #[test]
    fn exact_nonincreasing_in_t() {
        let (g, _) = gen::gen_fan(7);
        let v2 = exact_mcc(&g, 2).unwrap().value;
        let v3 = exact_mcc(&g, 3).unwrap().value;
        let v4 = exact_mcc(&g, 4).unwrap().value;
        assert!(v2 >= v3 && v3 >= v4);
        assert!(v2 <= g.n());
    }

    #[test]
    fn exact_budget_truncation() {
        let g = complete(12);
        let res = exact_mcc_with(&g, 2, &ExactConfig { node_budget: 50 }).unwrap();
        assert!(!res.exact);
        let truth = exact_mcc(&g, 2).unwrap();
        assert!(truth.exact);
        assert!(res.value >= truth.value);
    }

    #[test]
    fn density_c6_strictness_fails() {
        let g = Graph::from_edges(6, (0..6).map(|i| (i as Vertex, ((i + 1) % 6) as Vertex)))
            .unwrap();
        let cert = density_lower_bound(&g, 2, 3, &DensityConfig::default()).unwrap();
        // dbar/t = 1 and a single edge has average degree exactly 1: the
        // strict inequality fails at two vertices.
        assert!(!cert.valid);
        assert_eq!(cert.violation.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn density_k4_certifies_two() {
        let g = complete(4);
        let cert = density_lower_bound(&g, 2, 2, &DensityConfig::default()).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.dbar, Rational64::new(3, 1));
        let lg = line_graph(&g).unwrap();
        let res = exact_mcc(&lg.graph, 2).unwrap();
        assert!(res.value >= 2);
    }

    #[test]
    fn density_sampled_mode_reports() {
        let g = gen::gen_config_bipartite(&[5; 40], &[5; 40], 3).unwrap();
        let config = DensityConfig {
            exhaustive_cap: 100,
            samples: 200,
            ..DensityConfig::default()
        };
        let cert = density_lower_bound(&g, 2, 6, &config).unwrap();
        assert!(!cert.valid);
        assert!(matches!(
            cert.evidence,
            DensityEvidence::Sampled { samples: 200, .. }
        ));
    }

    #[test]
    fn connected_set_enumeration_counts() {
        // P_3: sets {0},{1},{2},{01},{12},{012}.
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let mut seen = Vec::new();
        let (count, done) = enumerate_connected_sets(&g, 3, 1_000, &mut |s, _| {
            seen.push(s.to_vec());
            true
        });
        assert!(done);
        assert_eq!(count, 6);
        assert_eq!(seen.len(), 6);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6, "no duplicates");
    }

    #[test]
    fn adversary_alternating_square() {
        // Q_2 is C_4; alternate the two colors around the cycle.
        let g = gen::gen_hamming_cube(2).unwrap();
        let coloring = Coloring::new(vec![0, 1, 1, 0], 2).unwrap();
        let report = coloring_adversary_report(&g, &coloring).unwrap();
        assert_eq!(report.largest.edge_count, 1);
        assert_eq!(report.largest.avg_degree, Rational64::new(1, 1));
    }

    #[test]
    fn adversary_monochromatic_k4() {
        let g = complete(4);
        let coloring = Coloring::new(vec![0; 6], 2).unwrap();
        let report = coloring_adversary_report(&g, &coloring).unwrap();
        assert_eq!(report.majority_color, 0);
        assert_eq!(report.largest.edge_count, 6);
        assert_eq!(report.largest.avg_degree, Rational64::new(3, 1));
    }

    #[test]
    fn greedy_colorings_are_total() {
        let g = complete(5);
        for order in [GreedyOrder::Natural, GreedyOrder::Reverse, GreedyOrder::Shuffled(3)] {
            let c = greedy_edge_coloring(&g, 2, order);
            assert_eq!(c.len(), 10);
        }
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let c = random_balanced_edge_coloring(&g, 2, &mut rng);
        let zeros = c.colors().iter().filter(|&&x| x == 0).count();
        assert_eq!(zeros, 5);
    }
}
