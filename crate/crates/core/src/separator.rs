//! Balanced vertex separators.
//!
//! A separator is a vertex set whose removal leaves no connected component
//! with more than [`BALANCE`] (= 2/3) of the vertices. Providers here are
//! verified at runtime: every result is checked against the definition
//! before it is returned.

use num_rational::Rational64;
use thiserror::Error;

use crate::embed::{self, EmbedError};
use crate::graph::{components, Graph, GraphError, UnionFind, Vertex};

/// Maximum component fraction left by a separator, as (numerator, denominator).
pub const BALANCE: (u64, u64) = (2, 3);

/// Recorded size constant of the planar provider: phases A-C below emit at
/// most `4·√n + 1` vertices.
pub const PLANAR_SEPARATOR_COEFFICIENT: f64 = 4.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("graph must be connected")]
    Disconnected,
    #[error(transparent)]
    Embedding(#[from] EmbedError),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("separator search exhausted without a balanced candidate")]
    SearchExhausted,
}

/// `size ≤ (2/3)·whole`, exactly.
fn balanced(size: usize, whole: usize) -> bool {
    (size as u64) * BALANCE.1 <= (whole as u64) * BALANCE.0
}

/// A separator together with the components it leaves behind.
#[derive(Debug, Clone)]
pub struct SeparatorResult {
    /// Separator vertices, ascending.
    pub separator: Vec<Vertex>,
    /// Components of the graph minus the separator, canonical order.
    pub components: Vec<Vec<Vertex>>,
    /// Largest component size divided by n, exact.
    pub balance: Rational64,
    pub size: usize,
}

impl SeparatorResult {
    /// Computes components and balance for a separator set.
    pub fn from_separator(g: &Graph, mut separator: Vec<Vertex>) -> Result<Self, GraphError> {
        separator.sort_unstable();
        separator.dedup();
        for &v in &separator {
            g.check_vertex(v)?;
        }
        let rest: Vec<Vertex> = (0..g.n() as Vertex)
            .filter(|v| separator.binary_search(v).is_err())
            .collect();
        let comps = components(g, &rest)?;
        let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
        let balance = if g.n() == 0 {
            Rational64::new(0, 1)
        } else {
            Rational64::new(largest as i64, g.n() as i64)
        };
        Ok(SeparatorResult {
            size: separator.len(),
            separator,
            components: comps,
            balance,
        })
    }
}

/// Declared size guarantee of a separator strategy: every n-vertex member of
/// the class has a separator with at most `coefficient · n^exponent` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorProfile {
    pub coefficient: Rational64,
    pub exponent: Rational64,
    pub provider: String,
}

impl SeparatorProfile {
    pub fn new(
        coefficient: Rational64,
        exponent: Rational64,
        provider: &str,
    ) -> Result<Self, SeparatorError> {
        if coefficient <= Rational64::new(0, 1) {
            return Err(SeparatorError::InvalidDecomposition(
                "profile coefficient must be positive".into(),
            ));
        }
        if exponent < Rational64::new(0, 1) || exponent >= Rational64::new(1, 1) {
            return Err(SeparatorError::InvalidDecomposition(
                "profile exponent must lie in [0,1)".into(),
            ));
        }
        Ok(SeparatorProfile {
            coefficient,
            exponent,
            provider: provider.to_string(),
        })
    }
}

/// Outcome of [`verify_separator`]; `failure` names the first violated clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub failure: Option<String>,
}

impl Verification {
    fn pass() -> Self {
        Verification {
            ok: true,
            failure: None,
        }
    }

    fn fail(msg: String) -> Self {
        Verification {
            ok: false,
            failure: Some(msg),
        }
    }
}

/// Checks a [`SeparatorResult`] against the definition. Never errors on
/// well-formed input; all defects are reported as diagnostics.
pub fn verify_separator(g: &Graph, r: &SeparatorResult) -> Verification {
    let n = g.n();
    // Clause 1: vertex validity and field consistency.
    for &v in r
        .separator
        .iter()
        .chain(r.components.iter().flatten())
    {
        if v as usize >= n {
            return Verification::fail(format!("vertex {v} out of range for n={n}"));
        }
    }
    if r.size != r.separator.len() {
        return Verification::fail(format!(
            "size field {} does not match separator length {}",
            r.size,
            r.separator.len()
        ));
    }
    // Clause 2: separator and components partition V.
    let mut owner: Vec<Option<usize>> = vec![None; n]; // component index, or usize::MAX for separator
    for &v in &r.separator {
        if owner[v as usize].is_some() {
            return Verification::fail(format!("vertex {v} listed twice"));
        }
        owner[v as usize] = Some(usize::MAX);
    }
    for (ci, comp) in r.components.iter().enumerate() {
        for &v in comp {
            if owner[v as usize].is_some() {
                return Verification::fail(format!("vertex {v} listed twice"));
            }
            owner[v as usize] = Some(ci);
        }
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Verification::fail(format!(
            "vertex {v} belongs to neither the separator nor a component"
        ));
    }
    // Clause 3: removing the separator disconnects the listed components
    // pairwise.
    for e in g.edges() {
        let (a, b) = (owner[e.u() as usize].unwrap(), owner[e.v() as usize].unwrap());
        if a != usize::MAX && b != usize::MAX && a != b {
            return Verification::fail(format!(
                "edge {}-{} joins two different components",
                e.u(),
                e.v()
            ));
        }
    }
    // Clause 4: balance.
    for comp in &r.components {
        if !balanced(comp.len(), n) {
            return Verification::fail(format!(
                "component of size {} exceeds {}/{} of n={}",
                comp.len(),
                BALANCE.0,
                BALANCE.1,
                n
            ));
        }
    }
    Verification::pass()
}

// ---------------------------------------------------------------------------
// Tree decompositions
// ---------------------------------------------------------------------------

/// A tree decomposition: bags of vertices arranged on a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Each bag strictly ascending.
    pub bags: Vec<Vec<Vertex>>,
    /// Edges between bag indices; exactly `bags.len() - 1` of them.
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>, SeparatorError> {
        let b = self.bags.len();
        let mut adj = vec![Vec::new(); b];
        for &(i, j) in &self.tree_edges {
            if i >= b || j >= b || i == j {
                return Err(SeparatorError::InvalidDecomposition(format!(
                    "tree edge ({i},{j}) out of range"
                )));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(adj)
    }

    /// Full validity check against `g`: tree shape, bag contents, vertex and
    /// edge coverage, and subtree connectivity per vertex.
    pub fn validate(&self, g: &Graph) -> Result<(), SeparatorError> {
        let b = self.bags.len();
        if b == 0 {
            return Err(SeparatorError::InvalidDecomposition("no bags".into()));
        }
        if self.tree_edges.len() != b - 1 {
            return Err(SeparatorError::InvalidDecomposition(format!(
                "{} bags need {} tree edges, got {}",
                b,
                b - 1,
                self.tree_edges.len()
            )));
        }
        let adj = self.tree_adjacency()?;
        let mut uf = UnionFind::new(b);
        for &(i, j) in &self.tree_edges {
            uf.union(i as u32, j as u32);
        }
        if b > 0 && (uf.component_size(0) as usize) != b {
            return Err(SeparatorError::InvalidDecomposition(
                "bag tree is not connected".into(),
            ));
        }
        let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (bi, bag) in self.bags.iter().enumerate() {
            if !bag.windows(2).all(|w| w[0] < w[1]) {
                return Err(SeparatorError::InvalidDecomposition(format!(
                    "bag {bi} is not strictly ascending"
                )));
            }
            for &v in bag {
                g.check_vertex(v)?;
                bags_of[v as usize].push(bi);
            }
        }
        if let Some(v) = bags_of.iter().position(Vec::is_empty) {
            return Err(SeparatorError::InvalidDecomposition(format!(
                "vertex {v} is in no bag"
            )));
        }
        for e in g.edges() {
            let covered = bags_of[e.u() as usize]
                .iter()
                .any(|&bi| self.bags[bi].binary_search(&e.v()).is_ok());
            if !covered {
                return Err(SeparatorError::InvalidDecomposition(format!(
                    "edge {}-{} is in no bag",
                    e.u(),
                    e.v()
                )));
            }
        }
        // Bags containing any fixed vertex must form a subtree.
        for (v, ids) in bags_of.iter().enumerate() {
            if ids.len() <= 1 {
                continue;
            }
            let inside: std::collections::HashSet<usize> = ids.iter().copied().collect();
            let mut stack = vec![ids[0]];
            let mut seen = std::collections::HashSet::new();
            seen.insert(ids[0]);
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if inside.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if seen.len() != ids.len() {
                return Err(SeparatorError::InvalidDecomposition(format!(
                    "bags containing vertex {v} do not form a subtree"
                )));
            }
        }
        Ok(())
    }

    /// Restriction to an induced subgraph. `keep` is ascending; bag contents
    /// are relabeled to positions in `keep`. The tree shape is preserved, so
    /// validity and width carry over.
    pub fn restrict(&self, keep: &[Vertex]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|bag| {
                bag.iter()
                    .filter_map(|v| keep.binary_search(v).ok().map(|i| i as Vertex))
                    .collect()
            })
            .collect();
        TreeDecomposition {
            bags,
            tree_edges: self.tree_edges.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

/// A separator strategy usable by the fragmentation algorithm.
pub trait SeparatorProvider {
    fn profile(&self) -> SeparatorProfile;

    /// Separates a connected induced subgraph. `original_ids[i]` identifies
    /// local vertex `i` in the graph the provider was configured for; the
    /// result is in local indices.
    fn separate(
        &self,
        g: &Graph,
        original_ids: &[Vertex],
    ) -> Result<SeparatorResult, SeparatorError>;
}

/// BFS-level plus fundamental-cycle separator for embedded planar graphs.
pub struct PlanarProvider;

impl SeparatorProvider for PlanarProvider {
    fn profile(&self) -> SeparatorProfile {
        // Phases A-C emit at most 4√n + 1 ≤ 7√n vertices for every n ≥ 1.
        SeparatorProfile::new(Rational64::new(7, 1), Rational64::new(1, 2), "planar").unwrap()
    }

    fn separate(
        &self,
        g: &Graph,
        _original_ids: &[Vertex],
    ) -> Result<SeparatorResult, SeparatorError> {
        planar_separator(g)
    }
}

/// Centroid-bag separator driven by a tree decomposition of the original
/// graph; induced subgraphs use the restricted decomposition.
pub struct TreewidthProvider {
    decomposition: TreeDecomposition,
    width: usize,
}

impl TreewidthProvider {
    pub fn new(decomposition: TreeDecomposition) -> Self {
        let width = decomposition.width();
        TreewidthProvider {
            decomposition,
            width,
        }
    }
}

impl SeparatorProvider for TreewidthProvider {
    fn profile(&self) -> SeparatorProfile {
        SeparatorProfile::new(
            Rational64::new(self.width as i64 + 1, 1),
            Rational64::new(0, 1),
            "treewidth",
        )
        .unwrap()
    }

    fn separate(
        &self,
        g: &Graph,
        original_ids: &[Vertex],
    ) -> Result<SeparatorResult, SeparatorError> {
        let restricted = self.decomposition.restrict(original_ids);
        treewidth_separator(g, &restricted)
    }
}

/// Verified heuristic for graphs without structure hints; carries a declared
/// profile chosen by the caller (there is no size guarantee).
pub struct FallbackProvider {
    declared: SeparatorProfile,
}

impl FallbackProvider {
    pub fn new(declared: SeparatorProfile) -> Self {
        FallbackProvider { declared }
    }
}

impl SeparatorProvider for FallbackProvider {
    fn profile(&self) -> SeparatorProfile {
        self.declared.clone()
    }

    fn separate(
        &self,
        g: &Graph,
        _original_ids: &[Vertex],
    ) -> Result<SeparatorResult, SeparatorError> {
        fallback_separator(g)
    }
}

// ---------------------------------------------------------------------------
// BFS helpers
// ---------------------------------------------------------------------------

fn bfs_levels(adj: &[Vec<Vertex>], root: Vertex) -> (Vec<u32>, Vec<Vec<Vertex>>) {
    let n = adj.len();
    let mut level = vec![u32::MAX; n];
    let mut levels: Vec<Vec<Vertex>> = Vec::new();
    level[root as usize] = 0;
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        levels.push(frontier.clone());
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v as usize] {
                if level[w as usize] == u32::MAX {
                    level[w as usize] = level[v as usize] + 1;
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    (level, levels)
}

fn max_degree_vertex(adj: &[Vec<Vertex>]) -> Vertex {
    let mut best = 0;
    for (v, list) in adj.iter().enumerate() {
        if list.len() > adj[best].len() {
            best = v;
        }
    }
    best as Vertex
}

/// Builds the candidate into a full result if it balance-checks on `g`.
fn try_candidate(g: &Graph, cand: Vec<Vertex>) -> Option<SeparatorResult> {
    let res = SeparatorResult::from_separator(g, cand).ok()?;
    if res.components.iter().all(|c| balanced(c.len(), g.n())) {
        Some(res)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Planar separator
// ---------------------------------------------------------------------------

/// Balanced separator of a connected planar graph with an embedding.
///
/// Strategy: triangulate internally (fill edges are used for the search
/// only), then
///  A. the smallest balanced BFS level if it has at most `4⌊√n⌋` vertices,
///  B. the two sparse levels `L_a`, `L_b` around the median level if the
///     band between them is light,
///  C. otherwise a fundamental cycle of the band graph (upper levels
///     contracted to a super-root) combined with `L_a ∪ L_b`,
///  D. as a last resort, the smallest balanced BFS level without a size cap
///     (one always exists), keeping the result verified at the cost of the
///     size guarantee.
///
/// Phases A-C emit at most `4√n + 1` vertices. Every result is checked with
/// [`verify_separator`] before returning.
pub fn planar_separator(g: &Graph) -> Result<SeparatorResult, SeparatorError> {
    g.ensure_simple()?;
    let n = g.n();
    if n == 0 {
        return Err(SeparatorError::Disconnected);
    }
    if n <= 2 {
        let res = SeparatorResult::from_separator(g, vec![0])?;
        return finish(g, res);
    }
    let faces = embed::validate_embedding(g)?;

    // Triangulation chords are used only as extra cycle candidates in the
    // band phase; levels and trees live on the real graph.
    let fills = embed::triangulation_fill(g, &faces);
    let adj: Vec<Vec<Vertex>> = (0..n as Vertex).map(|v| g.adj(v).to_vec()).collect();
    let root = max_degree_vertex(&adj);
    let (level_of, levels) = bfs_levels(&adj, root);
    debug_assert!(level_of.iter().all(|&l| l != u32::MAX));

    let isqrt = num_integer::Roots::sqrt(&n);
    let prefix: Vec<usize> = levels
        .iter()
        .scan(0usize, |acc, l| {
            *acc += l.len();
            Some(*acc)
        })
        .collect();

    // Phase A: smallest level (by component check, so ring-shaped levels
    // whose removal leaves several small arms qualify) within the 4√n cap.
    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by_key(|&l| (levels[l].len(), l));
    for &l in &order {
        if levels[l].len() > 4 * isqrt {
            break;
        }
        if let Some(res) = try_candidate(g, levels[l].clone()) {
            return finish(g, res);
        }
    }

    // Phase B: sparse levels around the median.
    let median = (0..levels.len())
        .find(|&l| 2 * prefix[l] >= n)
        .unwrap_or(levels.len() - 1);
    let a = (0..=median)
        .rev()
        .find(|&l| levels[l].len() <= isqrt)
        .unwrap_or(0);
    let b = ((median + 1)..levels.len())
        .find(|&l| levels[l].len() <= isqrt)
        .unwrap_or(levels.len()); // the empty level past the last one
    let mut rim: Vec<Vertex> = levels[a].clone();
    if b < levels.len() {
        rim.extend_from_slice(&levels[b]);
    }
    let band: Vec<Vertex> = {
        let mut verts: Vec<Vertex> = (a + 1..b.min(levels.len()))
            .flat_map(|l| levels[l].iter().copied())
            .collect();
        verts.sort_unstable();
        verts
    };
    if balanced(band.len(), n) {
        if let Some(res) = try_candidate(g, rim.clone()) {
            return finish(g, res);
        }
    } else if let Some(res) = band_cycle_separator(g, &fills, &level_of, a, &band, &rim) {
        return finish(g, res);
    }

    // Phase D: smallest balanced level without the size cap (one always
    // exists for connected graphs), trading the size guarantee for a
    // verified result.
    for &l in &order {
        if let Some(res) = try_candidate(g, levels[l].clone()) {
            return finish(g, res);
        }
    }
    Err(SeparatorError::SearchExhausted)
}

/// Phase C: search the band graph (plus a super-root standing for everything
/// at or above level `a`) for a fundamental cycle whose removal, together
/// with the rim levels, balances the graph. Triangulation chords join the
/// candidate pool: a chord closing a cycle inside a face is exactly what the
/// construction needs, even though the chord itself is not a graph edge.
fn band_cycle_separator(
    g: &Graph,
    fills: &[(Vertex, Vertex)],
    level_of: &[u32],
    a: usize,
    band: &[Vertex],
    rim: &[Vertex],
) -> Option<SeparatorResult> {
    let bn = band.len();
    let local = |v: Vertex| band.binary_search(&v).ok();
    let s = bn; // super-root index
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); bn + 1];
    for (i, &v) in band.iter().enumerate() {
        let mut to_root = false;
        for &w in g.adj(v) {
            if let Some(j) = local(w) {
                if j > i {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            } else if (level_of[w as usize] as usize) <= a {
                to_root = true;
            }
        }
        if to_root {
            adj[i].push(s);
            adj[s].push(i);
        }
    }
    // BFS tree from the super-root.
    let mut parent = vec![usize::MAX; bn + 1];
    let mut depth = vec![u32::MAX; bn + 1];
    depth[s] = 0;
    parent[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if depth[w] == u32::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if depth.contains(&u32::MAX) {
        return None; // band not attached to the upper levels; give up
    }
    // Non-tree edges plus in-band triangulation chords, short fundamental
    // cycles first.
    let mut candidates: Vec<(u32, usize, usize)> = Vec::new();
    for x in 0..bn {
        for &y in &adj[x] {
            if y > x && y != s && parent[y] != x && parent[x] != y {
                candidates.push((depth[x] + depth[y], x, y));
            }
        }
    }
    for &(u, v) in fills {
        if let (Some(x), Some(y)) = (local(u), local(v)) {
            candidates.push((depth[x] + depth[y], x.min(y), x.max(y)));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    for (_, x, y) in candidates {
        let mut cycle: Vec<usize> = Vec::new();
        let (mut px, mut py) = (x, y);
        while depth[px] > depth[py] {
            cycle.push(px);
            px = parent[px];
        }
        while depth[py] > depth[px] {
            cycle.push(py);
            py = parent[py];
        }
        while px != py {
            cycle.push(px);
            cycle.push(py);
            px = parent[px];
            py = parent[py];
        }
        cycle.push(px); // the common ancestor (possibly the super-root)
        let mut cand: Vec<Vertex> = rim.to_vec();
        cand.extend(cycle.iter().filter(|&&u| u != s).map(|&u| band[u]));
        if let Some(res) = try_candidate(g, cand) {
            return Some(res);
        }
    }
    None
}

fn finish(g: &Graph, res: SeparatorResult) -> Result<SeparatorResult, SeparatorError> {
    let check = verify_separator(g, &res);
    if check.ok {
        Ok(res)
    } else {
        Err(SeparatorError::SearchExhausted)
    }
}

// ---------------------------------------------------------------------------
// Treewidth separator
// ---------------------------------------------------------------------------

/// Centroid-bag separator: picks the bag of a weighted centroid of the
/// decomposition tree, so every remaining component has at most n/2 vertices
/// and the separator has at most `width + 1` vertices.
pub fn treewidth_separator(
    g: &Graph,
    decomposition: &TreeDecomposition,
) -> Result<SeparatorResult, SeparatorError> {
    g.ensure_simple()?;
    decomposition.validate(g)?;
    let b = decomposition.bag_count();
    let adj = decomposition.tree_adjacency()?;

    // Each vertex is assigned to its first bag; bag weights drive the
    // centroid choice.
    let mut weight = vec![0u64; b];
    {
        let mut assigned = vec![false; g.n()];
        for (bi, bag) in decomposition.bags.iter().enumerate() {
            for &v in bag {
                if !assigned[v as usize] {
                    assigned[v as usize] = true;
                    weight[bi] += 1;
                }
            }
        }
    }
    let total: u64 = weight.iter().sum();

    // Subtree weights for the tree rooted at 0, children in BFS order.
    let mut parent = vec![usize::MAX; b];
    let mut order = Vec::with_capacity(b);
    let mut queue = std::collections::VecDeque::from([0usize]);
    parent[0] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut subtree = weight.clone();
    for &u in order.iter().rev() {
        if u != 0 {
            subtree[parent[u]] += subtree[u];
        }
    }
    // Descend from the root into any child whose subtree outweighs half.
    let mut cur = 0usize;
    loop {
        let heavy = adj[cur]
            .iter()
            .copied()
            .find(|&c| parent[c] == cur && 2 * subtree[c] > total);
        match heavy {
            Some(c) => cur = c,
            None => break,
        }
    }

    let res = SeparatorResult::from_separator(g, decomposition.bags[cur].clone())?;
    let check = verify_separator(g, &res);
    if !check.ok {
        return Err(SeparatorError::SearchExhausted);
    }
    debug_assert!(res.size <= decomposition.width() + 1);
    Ok(res)
}

// ---------------------------------------------------------------------------
// Fallback separator
// ---------------------------------------------------------------------------

/// BFS-level bisection with greedy refinement. No size guarantee; the size
/// is reported so callers can measure empirical profiles.
pub fn fallback_separator(g: &Graph) -> Result<SeparatorResult, SeparatorError> {
    g.ensure_simple()?;
    let n = g.n();
    if n == 0 {
        return Err(SeparatorError::Disconnected);
    }
    if !g.is_connected() {
        return Err(SeparatorError::Disconnected);
    }
    if n == 1 {
        return Ok(SeparatorResult::from_separator(g, vec![0])?);
    }
    let adj: Vec<Vec<Vertex>> = (0..n as Vertex).map(|v| g.adj(v).to_vec()).collect();
    let root = max_degree_vertex(&adj);
    let (_, levels) = bfs_levels(&adj, root);

    let mut best: Option<Vec<Vertex>> = None;
    for level in &levels {
        let rest: Vec<Vertex> = (0..n as Vertex)
            .filter(|v| level.binary_search(v).is_err())
            .collect();
        let comps = components(g, &rest)?;
        if !comps.iter().all(|c| balanced(c.len(), n)) {
            continue;
        }
        let refined = refine_level(g, level, n);
        if best.as_ref().is_none_or(|b| refined.len() < b.len()) {
            best = Some(refined);
        }
    }
    let separator = best.ok_or(SeparatorError::SearchExhausted)?;
    let res = SeparatorResult::from_separator(g, separator)?;
    let check = verify_separator(g, &res);
    if check.ok {
        Ok(res)
    } else {
        Err(SeparatorError::SearchExhausted)
    }
}

/// Greedily returns separator vertices to the components when the merge they
/// cause stays balanced.
fn refine_level(g: &Graph, level: &[Vertex], n: usize) -> Vec<Vertex> {
    let mut in_sep = vec![false; n];
    for &v in level {
        in_sep[v as usize] = true;
    }
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        if !in_sep[e.u() as usize] && !in_sep[e.v() as usize] {
            uf.union(e.u(), e.v());
        }
    }
    for &v in level {
        let mut roots: Vec<u32> = Vec::new();
        let mut merged = 1usize;
        for &w in g.adj(v) {
            if !in_sep[w as usize] {
                let r = uf.find(w);
                if !roots.contains(&r) {
                    merged += uf.component_size(r) as usize;
                    roots.push(r);
                }
            }
        }
        if balanced(merged, n) {
            in_sep[v as usize] = false;
            for r in roots {
                uf.union(v, r);
            }
        }
    }
    (0..n as Vertex).filter(|&v| in_sep[v as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as Vertex - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn verify_path_middle() {
        let g = path(3);
        let r = SeparatorResult::from_separator(&g, vec![1]).unwrap();
        assert_eq!(r.balance, Rational64::new(1, 3));
        assert!(verify_separator(&g, &r).ok);
    }

    #[test]
    fn verify_rejects_empty_separator_of_k4() {
        let g = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = SeparatorResult::from_separator(&g, vec![]).unwrap();
        let v = verify_separator(&g, &r);
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("size 4"));
    }

    #[test]
    fn verify_rejects_adjacent_components() {
        let g = path(4);
        let bogus = SeparatorResult {
            separator: vec![3],
            components: vec![vec![0], vec![1, 2]],
            balance: Rational64::new(2, 4),
            size: 1,
        };
        let v = verify_separator(&g, &bogus);
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("joins two different components"));
    }

    #[test]
    fn verify_rejects_partition_gap() {
        let g = path(3);
        let bogus = SeparatorResult {
            separator: vec![1],
            components: vec![vec![0]],
            balance: Rational64::new(1, 3),
            size: 1,
        };
        let v = verify_separator(&g, &bogus);
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("neither"));
    }

    #[test]
    fn verify_rib_column_top_separator() {
        let rib = gen::gen_rib_planar(3).unwrap();
        let r = SeparatorResult::from_separator(&rib.graph, rib.column_tops.clone()).unwrap();
        assert!(verify_separator(&rib.graph, &r).ok);
        // Two sides: the path-plus-apex part and the grid below the top row.
        assert_eq!(r.components.len(), 2);
    }

    #[test]
    fn planar_triangle() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .with_embedding(vec![vec![1, 2], vec![2, 0], vec![0, 1]])
            .unwrap();
        let r = planar_separator(&g).unwrap();
        assert!(verify_separator(&g, &r).ok);
        assert_eq!(r.size, 1);
        assert!(r.components.iter().all(|c| c.len() <= 2));
    }

    #[test]
    fn planar_grid_bound() {
        let g = gen::gen_tri_grid(10).unwrap();
        let r = planar_separator(&g).unwrap();
        assert!(verify_separator(&g, &r).ok);
        assert!(r.size <= 40, "separator of 10x10 grid has {} vertices", r.size);
    }

    #[test]
    fn planar_rib_bound() {
        let rib = gen::gen_rib_planar(4).unwrap();
        let g = &rib.graph;
        assert_eq!(g.n(), 129);
        let r = planar_separator(g).unwrap();
        assert!(verify_separator(g, &r).ok);
        let bound = 4.0 * (g.n() as f64).sqrt();
        assert!((r.size as f64) <= bound, "size {} > 4√129", r.size);
    }

    #[test]
    fn planar_corpus_ratio_under_constant() {
        let mut worst: f64 = 0.0;
        for m in [5, 9, 14, 20, 31] {
            let g = gen::gen_tri_grid(m).unwrap();
            let r = planar_separator(&g).unwrap();
            worst = worst.max(r.size as f64 / (g.n() as f64).sqrt());
        }
        for k in 2..=6 {
            let rib = gen::gen_rib_planar(k).unwrap();
            let r = planar_separator(&rib.graph).unwrap();
            worst = worst.max(r.size as f64 / (rib.graph.n() as f64).sqrt());
        }
        assert!(
            worst <= PLANAR_SEPARATOR_COEFFICIENT,
            "measured ratio {worst} exceeds the recorded constant"
        );
    }

    #[test]
    fn planar_requires_embedding() {
        let g = path(5);
        assert!(matches!(
            planar_separator(&g),
            Err(SeparatorError::Embedding(EmbedError::MissingEmbedding))
        ));
    }

    #[test]
    fn planar_requires_connected() {
        let g = Graph::from_edges(4, vec![(0, 1), (2, 3)])
            .unwrap()
            .with_embedding(vec![vec![1], vec![0], vec![3], vec![2]])
            .unwrap();
        assert!(matches!(
            planar_separator(&g),
            Err(SeparatorError::Embedding(EmbedError::Disconnected))
        ));
    }

    #[test]
    fn treewidth_fan() {
        let (g, td) = gen::gen_fan(9);
        let r = treewidth_separator(&g, &td).unwrap();
        assert!(verify_separator(&g, &r).ok);
        assert!(r.size <= 3);
    }

    #[test]
    fn treewidth_path_width_one() {
        let g = path(8);
        let td = TreeDecomposition {
            bags: (0..7).map(|i| vec![i as Vertex, i as Vertex + 1]).collect(),
            tree_edges: (0..6).map(|i| (i, i + 1)).collect(),
        };
        let r = treewidth_separator(&g, &td).unwrap();
        assert!(verify_separator(&g, &r).ok);
        assert!(r.size <= 2);
    }

    #[test]
    fn treewidth_cone_over_fans() {
        let (f4, f4td) = gen::gen_fan(4);
        let cone = gen::gen_cone(&f4, 2).unwrap();
        let td = gen::cone_decomposition(&f4td, f4.n(), 2);
        td.validate(&cone).unwrap();
        let r = treewidth_separator(&cone, &td).unwrap();
        assert!(verify_separator(&cone, &r).ok);
        assert!(r.size <= 4);
    }

    #[test]
    fn treewidth_rejects_bad_decomposition() {
        let g = path(3);
        // Edge 1-2 is in no bag.
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            tree_edges: vec![(0, 1)],
        };
        assert!(matches!(
            treewidth_separator(&g, &td),
            Err(SeparatorError::InvalidDecomposition(_))
        ));
        // Bags containing vertex 0 are not a subtree.
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert!(matches!(
            treewidth_separator(&g, &td),
            Err(SeparatorError::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn fallback_star_center() {
        let g = Graph::from_edges(10, (1..10).map(|i| (0, i))).unwrap();
        let r = fallback_separator(&g).unwrap();
        assert_eq!(r.separator, vec![0]);
        assert!(r.components.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn fallback_cycle_two_cut() {
        let g = Graph::from_edges(12, (0..12).map(|i| (i as Vertex, ((i + 1) % 12) as Vertex)))
            .unwrap();
        let r = fallback_separator(&g).unwrap();
        assert!(verify_separator(&g, &r).ok);
        assert_eq!(r.size, 2);
    }

    #[test]
    fn fallback_rejects_disconnected() {
        let g = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            fallback_separator(&g),
            Err(SeparatorError::Disconnected)
        ));
    }

    #[test]
    fn profile_validation() {
        assert!(SeparatorProfile::new(Rational64::new(1, 1), Rational64::new(1, 1), "x").is_err());
        assert!(SeparatorProfile::new(Rational64::new(0, 1), Rational64::new(1, 2), "x").is_err());
        assert!(SeparatorProfile::new(Rational64::new(4, 1), Rational64::new(1, 2), "x").is_ok());
    }
}
