//! Instance families: grids with diagonals, the rib construction, cones and
//! fans, Hamming cubes, and configuration-model bipartite graphs.
//!
//! All generators are deterministic given their parameters and seed; the
//! randomized ones draw from ChaCha12 seeded with the 64-bit seed and match
//! half-edges with an explicit Fisher–Yates shuffle.

use std::fmt;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::graph::{line_graph, Graph, GraphError, LineGraph, Vertex};
use crate::separator::TreeDecomposition;

/// Largest vertex degree accepted by the configuration model.
pub const MAX_CONFIG_DEGREE: u32 = 5;

/// Memory guard for generated instances.
const MAX_VERTICES: usize = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("instance too large: {0}")]
    Overflow(String),
    #[error("degree sums differ: side A has {a}, side B has {b}")]
    DegreeSumMismatch { a: u64, b: u64 },
    #[error("degree {0} outside 1..={MAX_CONFIG_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Deterministic families
// ---------------------------------------------------------------------------

/// The d-dimensional grid `{1..m}^d` with all diagonals: vertices adjacent
/// iff their coordinates differ by at most 1 in every position.
///
/// Index layout: coordinate `x` (0-based internally) maps to
/// `Σ x_i · m^i`, so the last coordinate is the most significant digit and
/// layer `j` occupies indices `j·m^(d-1) .. (j+1)·m^(d-1)`.
pub fn gen_grid_diag(m: usize, d: usize) -> Result<Graph, GenError> {
    if m < 1 || d < 1 {
        return Err(GenError::BadParams("grid needs m >= 1 and d >= 1".into()));
    }
    let n = m
        .checked_pow(d as u32)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| GenError::Overflow(format!("{m}^{d} vertices")))?;
    let deltas = 3usize
        .checked_pow(d as u32)
        .ok_or_else(|| GenError::Overflow(format!("3^{d} neighbor offsets")))?;
    let mut edges = Vec::new();
    let mut coords = vec![0usize; d];
    for v in 0..n {
        // Decode v into coordinates.
        let mut rest = v;
        for c in coords.iter_mut() {
            *c = rest % m;
            rest /= m;
        }
        'delta: for t in 1..deltas {
            let mut rest = t;
            let mut w = 0usize;
            let mut place = 1usize;
            for &c in &coords {
                let step = rest % 3;
                rest /= 3;
                let x = match step {
                    0 => c,
                    1 => {
                        if c + 1 >= m {
                            continue 'delta;
                        }
                        c + 1
                    }
                    _ => {
                        if c == 0 {
                            continue 'delta;
                        }
                        c - 1
                    }
                };
                w += x * place;
                place *= m;
            }
            if w > v {
                edges.push((v as Vertex, w as Vertex));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

fn rotations_by_angle(g: &Graph, pos: &[(f64, f64)]) -> Vec<Vec<Vertex>> {
    (0..g.n())
        .map(|v| {
            let (x0, y0) = pos[v];
            let mut rot = g.adj(v as Vertex).to_vec();
            rot.sort_by(|&a, &b| {
                let aa = (pos[a as usize].1 - y0).atan2(pos[a as usize].0 - x0);
                let ab = (pos[b as usize].1 - y0).atan2(pos[b as usize].0 - x0);
                aa.partial_cmp(&ab).unwrap()
            });
            rot
        })
        .collect()
}

/// The m×m grid triangulated with one diagonal per cell, with its planar
/// embedding. Vertex (row r, column c) is `r·m + c`.
pub fn gen_tri_grid(m: usize) -> Result<Graph, GenError> {
    if m < 2 {
        return Err(GenError::BadParams("triangulated grid needs m >= 2".into()));
    }
    let n = m
        .checked_mul(m)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| GenError::Overflow(format!("{m}x{m} vertices")))?;
    let at = |r: usize, c: usize| (r * m + c) as Vertex;
    let mut edges = Vec::new();
    for r in 0..m {
        for c in 0..m {
            if c + 1 < m {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < m {
                edges.push((at(r, c), at(r + 1, c)));
            }
            if r + 1 < m && c + 1 < m {
                edges.push((at(r, c), at(r + 1, c + 1)));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|v| ((v % m) as f64, -((v / m) as f64)))
        .collect();
    let rot = rotations_by_angle(&g, &pos);
    Ok(g.with_embedding(rot)?)
}

/// The rib construction on `2k³ + 1` vertices with its planar embedding.
///
/// Index layout: apex is vertex 0; the path occupies `1..=k³` with interval
/// `I_i` at `1 + i·k .. 1 + (i+1)·k`; grid vertex (row r, column c) is
/// `k³ + 1 + r·k² + c`, so the column tops `v_i` are row 0.
#[derive(Debug, Clone)]
pub struct RibPlanar {
    pub graph: Graph,
    pub k: usize,
    pub apex: Vertex,
    /// `column_tops[i]` is the top vertex of grid column i.
    pub column_tops: Vec<Vertex>,
}

impl RibPlanar {
    pub fn grid_vertex(&self, row: usize, col: usize) -> Vertex {
        let k = self.k;
        (k * k * k + 1 + row * k * k + col) as Vertex
    }

    /// Path vertices of interval `I_i`.
    pub fn interval(&self, i: usize) -> impl Iterator<Item = Vertex> {
        let k = self.k;
        ((1 + i * k) as Vertex)..((1 + (i + 1) * k) as Vertex)
    }

    /// Grid vertices of column `C_i`, top to bottom.
    pub fn column(&self, i: usize) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.k).map(move |r| self.grid_vertex(r, i))
    }

    pub fn path_vertices(&self) -> impl Iterator<Item = Vertex> {
        let k = self.k;
        (1 as Vertex)..((k * k * k + 1) as Vertex)
    }
}

pub fn gen_rib_planar(k: usize) -> Result<RibPlanar, GenError> {
    if k < 2 {
        return Err(GenError::BadParams("rib construction needs k >= 2".into()));
    }
    let (k2, k3) = (k * k, k * k * k);
    let n = 2 * k3 + 1;
    if n > MAX_VERTICES {
        return Err(GenError::Overflow(format!("{n} vertices")));
    }
    let apex: Vertex = 0;
    let path = |j: usize| (1 + j) as Vertex;
    let grid = |r: usize, c: usize| (k3 + 1 + r * k2 + c) as Vertex;

    let mut edges = Vec::new();
    // The path P and the apex fanned over it.
    for j in 0..k3 {
        if j + 1 < k3 {
            edges.push((path(j), path(j + 1)));
        }
        edges.push((apex, path(j)));
    }
    // Each interval I_i fanned from its column top v_i, plus the diagonal
    // closing the quadrilateral between consecutive ribs.
    for i in 0..k2 {
        for j in 0..k {
            edges.push((grid(0, i), path(i * k + j)));
        }
        if i + 1 < k2 {
            edges.push((grid(0, i), path((i + 1) * k)));
        }
    }
    // Grid rows, columns, and the cell diagonals.
    for r in 0..k {
        for c in 0..k2 {
            if c + 1 < k2 {
                edges.push((grid(r, c), grid(r, c + 1)));
            }
            if r + 1 < k {
                edges.push((grid(r, c), grid(r + 1, c)));
            }
            if r + 1 < k && c + 1 < k2 {
                edges.push((grid(r, c), grid(r + 1, c + 1)));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;

    // Straight-line drawing: grid at y <= 0, path at y = 1 with interval I_i
    // clustered over column i, apex above everything.
    let mut pos = vec![(0.0, 0.0); n];
    pos[apex as usize] = ((k2 as f64 - 1.0) / 2.0, 2.0);
    for i in 0..k2 {
        for j in 0..k {
            pos[path(i * k + j) as usize] =
                (i as f64 + (j as f64 + 0.5) / k as f64 - 0.5, 1.0);
        }
    }
    for r in 0..k {
        for c in 0..k2 {
            pos[grid(r, c) as usize] = (c as f64, -(r as f64));
        }
    }
    let rot = rotations_by_angle(&g, &pos);
    let graph = g.with_embedding(rot)?;
    let column_tops = (0..k2).map(|c| grid(0, c)).collect();
    Ok(RibPlanar {
        graph,
        k,
        apex,
        column_tops,
    })
}

/// `m` disjoint copies of `g` plus an apex adjacent to every copy vertex.
/// Copy `c` occupies `c·|V(g)| ..`, the apex is the last vertex.
pub fn gen_cone(g: &Graph, m: usize) -> Result<Graph, GenError> {
    if m < 1 {
        return Err(GenError::BadParams("cone needs at least one copy".into()));
    }
    g.ensure_simple()?;
    let base = g.n();
    let n = base
        .checked_mul(m)
        .and_then(|x| x.checked_add(1))
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| GenError::Overflow("cone".into()))?;
    let apex = (n - 1) as Vertex;
    let mut edges = Vec::new();
    for c in 0..m {
        let off = (c * base) as Vertex;
        for e in g.edges() {
            edges.push((e.u() + off, e.v() + off));
        }
        for v in 0..base as Vertex {
            edges.push((apex, v + off));
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Tree decomposition of `cone(m·g)` from a decomposition of `g`: the apex
/// joins every bag and the copy trees are chained at their first bags.
/// Width grows by one.
pub fn cone_decomposition(base: &TreeDecomposition, base_n: usize, m: usize) -> TreeDecomposition {
    let apex = (base_n * m) as Vertex;
    let b = base.bag_count();
    let mut bags = Vec::with_capacity(b * m);
    let mut tree_edges = Vec::new();
    for c in 0..m {
        let voff = (c * base_n) as Vertex;
        for bag in &base.bags {
            let mut shifted: Vec<Vertex> = bag.iter().map(|&v| v + voff).collect();
            shifted.push(apex);
            bags.push(shifted);
        }
        for &(i, j) in &base.tree_edges {
            tree_edges.push((c * b + i, c * b + j));
        }
        if c + 1 < m {
            tree_edges.push((c * b, (c + 1) * b));
        }
    }
    TreeDecomposition { bags, tree_edges }
}

/// The fan: a k-vertex path `0..k` plus a hub (vertex `k`) adjacent to every
/// path vertex, together with its natural tree decomposition (width 2, or 1
/// for k = 1).
pub fn gen_fan(k: usize) -> (Graph, TreeDecomposition) {
    assert!(k >= 1, "fan needs a nonempty path");
    let hub = k as Vertex;
    let mut edges = Vec::new();
    for v in 0..k as Vertex {
        if v + 1 < k as Vertex {
            edges.push((v, v + 1));
        }
        edges.push((v, hub));
    }
    let g = Graph::from_edges(k + 1, edges).unwrap();
    let td = if k == 1 {
        TreeDecomposition {
            bags: vec![vec![0, hub]],
            tree_edges: Vec::new(),
        }
    } else {
        TreeDecomposition {
            bags: (0..k - 1)
                .map(|i| vec![i as Vertex, i as Vertex + 1, hub])
                .collect(),
            tree_edges: (0..k.saturating_sub(2)).map(|i| (i, i + 1)).collect(),
        }
    };
    (g, td)
}

/// The d-dimensional Hamming cube on `2^d` vertices: bit strings adjacent
/// iff they differ in exactly one coordinate.
pub fn gen_hamming_cube(d: usize) -> Result<Graph, GenError> {
    if d < 1 {
        return Err(GenError::BadParams("cube needs d >= 1".into()));
    }
    if d >= 22 {
        return Err(GenError::Overflow(format!("2^{d} vertices")));
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(n * d / 2);
    for v in 0..n as u32 {
        for i in 0..d {
            let bit = 1u32 << i;
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

// ---------------------------------------------------------------------------
// Configuration model
// ---------------------------------------------------------------------------

fn fisher_yates<T>(xs: &mut [T], rng: &mut impl Rng) {
    for i in (1..xs.len()).rev() {
        let j = rng.random_range(0..=i);
        xs.swap(i, j);
    }
}

/// Random bipartite multigraph with the prescribed degree sequences: every
/// vertex gets its exact degree and the half-edges of side A are matched to
/// a uniformly random permutation of the half-edges of side B.
///
/// Side A occupies `0..deg_a.len()`, side B follows.
pub fn gen_config_bipartite(
    deg_a: &[u32],
    deg_b: &[u32],
    seed: u64,
) -> Result<Graph, GenError> {
    if deg_a.is_empty() || deg_b.is_empty() {
        return Err(GenError::BadParams("both sides must be nonempty".into()));
    }
    for &d in deg_a.iter().chain(deg_b) {
        if !(1..=MAX_CONFIG_DEGREE).contains(&d) {
            return Err(GenError::DegreeOutOfRange(d));
        }
    }
    let sum_a: u64 = deg_a.iter().map(|&d| d as u64).sum();
    let sum_b: u64 = deg_b.iter().map(|&d| d as u64).sum();
    if sum_a != sum_b {
        return Err(GenError::DegreeSumMismatch { a: sum_a, b: sum_b });
    }
    let n = deg_a.len() + deg_b.len();
    if n > MAX_VERTICES {
        return Err(GenError::Overflow(format!("{n} vertices")));
    }
    let mut stubs_a: Vec<Vertex> = Vec::with_capacity(sum_a as usize);
    for (v, &d) in deg_a.iter().enumerate() {
        stubs_a.extend(std::iter::repeat_n(v as Vertex, d as usize));
    }
    let mut stubs_b: Vec<Vertex> = Vec::with_capacity(sum_b as usize);
    for (v, &d) in deg_b.iter().enumerate() {
        stubs_b.extend(std::iter::repeat_n((deg_a.len() + v) as Vertex, d as usize));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    fisher_yates(&mut stubs_b, &mut rng);
    let pairs = stubs_a.into_iter().zip(stubs_b);
    Ok(Graph::multigraph_from_edges(n, pairs)?)
}

/// Counts the distinct neighbors of a random size-`s_size` subset S of side
/// A and reports whether `|N(S)| ≥ d(S) − (1+delta)·|S|`.
pub fn sample_expansion_event(
    h: &Graph,
    a_count: usize,
    s_size: usize,
    delta: f64,
    rng: &mut impl Rng,
) -> bool {
    let picks = rand::seq::index::sample(rng, a_count, s_size.min(a_count));
    let mut degree_sum = 0usize;
    let mut neighbors = std::collections::BTreeSet::new();
    for i in picks {
        let v = i as Vertex;
        degree_sum += h.degree_with_multiplicity(v);
        neighbors.extend(h.adj(v).iter().copied());
    }
    neighbors.len() as f64 >= degree_sum as f64 - (1.0 + delta) * s_size as f64
}

/// Fraction of `trials` random subsets satisfying the expansion event.
pub fn expansion_success_rate(
    h: &Graph,
    a_count: usize,
    s_size: usize,
    delta: f64,
    trials: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let hits = (0..trials)
        .filter(|_| sample_expansion_event(h, a_count, s_size, delta, &mut rng))
        .count();
    hits as f64 / trials.max(1) as f64
}

// ---------------------------------------------------------------------------
// Degree-(4,5) line-graph instances
// ---------------------------------------------------------------------------

/// A sampled instance: bipartite H with a sprinkling of degree-5 vertices on
/// side A, everything else degree 4, and its line graph.
#[derive(Debug, Clone)]
pub struct Deg45LineInstance {
    /// The base graph H (simple by construction).
    pub base: Graph,
    pub a_count: usize,
    /// Degree-5 vertices occupy `0..degree5_count` on side A.
    pub degree5_count: usize,
    pub line: LineGraph,
    /// Matchings discarded before a simple H appeared.
    pub attempts: u32,
}

/// Generates H with `4·⌊⌊rho·m_a⌋/4⌋` degree-5 vertices among `m_a` side-A
/// vertices (rounded so side B is uniformly degree 4), resampling the
/// matching until H is simple. The line graph then has every degree in
/// {6, 7} and maximum degree exactly 7 when any degree-5 vertex exists.
pub fn gen_deg45_line(
    m_a: usize,
    rho: Rational64,
    seed: u64,
) -> Result<Deg45LineInstance, GenError> {
    if m_a == 0 {
        return Err(GenError::BadParams("side A must be nonempty".into()));
    }
    if rho < Rational64::new(0, 1) || rho >= Rational64::new(1, 1) {
        return Err(GenError::BadParams("rho must lie in [0, 1)".into()));
    }
    let scaled = rho * Rational64::new(m_a as i64, 1);
    let raw5 = scaled.floor().to_integer() as usize;
    let n5 = raw5 - raw5 % 4;
    let deg_a: Vec<u32> = (0..m_a).map(|v| if v < n5 { 5 } else { 4 }).collect();
    let b_count = m_a + n5 / 4;
    let deg_b = vec![4u32; b_count];

    let mut seeder = ChaCha12Rng::seed_from_u64(seed);
    const MAX_ATTEMPTS: u32 = 50_000;
    for attempt in 0..MAX_ATTEMPTS {
        let sub_seed: u64 = seeder.random();
        let h = gen_config_bipartite(&deg_a, &deg_b, sub_seed)?;
        if h.is_multigraph() {
            continue;
        }
        let line = line_graph(&h)?;
        return Ok(Deg45LineInstance {
            base: h,
            a_count: m_a,
            degree5_count: n5,
            line,
            attempts: attempt,
        });
    }
    Err(GenError::SamplingFailed(format!(
        "no simple matching in {MAX_ATTEMPTS} attempts"
    )))
}

// ---------------------------------------------------------------------------
// Declarative instance specs
// ---------------------------------------------------------------------------

/// Family plus parameters; together with the seed this pins the instance
/// byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    GridDiag { m: usize, d: usize },
    TriGrid { m: usize },
    RibPlanar { k: usize },
    Fan { k: usize },
    /// `copies` disjoint fans F_k under one apex.
    Cone { k: usize, copies: usize },
    HammingCube { d: usize },
    /// Line graph of a deterministic base family.
    LineGraphOf(Box<Family>),
    ConfigBipartite { deg_a: Vec<u32>, deg_b: Vec<u32> },
    Deg45Line { m_a: usize, rho: Rational64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GridDiag { .. } => "grid_diag",
            Family::TriGrid { .. } => "tri_grid",
            Family::RibPlanar { .. } => "rib_planar",
            Family::Fan { .. } => "fan",
            Family::Cone { .. } => "cone",
            Family::HammingCube { .. } => "hamming_cube",
            Family::LineGraphOf(_) => "line_graph",
            Family::ConfigBipartite { .. } => "config_bipartite",
            Family::Deg45Line { .. } => "deg45_line",
        }
    }

    fn params(&self) -> String {
        match self {
            Family::GridDiag { m, d } => format!("m={m},d={d}"),
            Family::TriGrid { m } => format!("m={m}"),
            Family::RibPlanar { k } => format!("k={k}"),
            Family::Fan { k } => format!("k={k}"),
            Family::Cone { k, copies } => format!("k={k},copies={copies}"),
            Family::HammingCube { d } => format!("d={d}"),
            Family::LineGraphOf(base) => format!("base={base}"),
            Family::ConfigBipartite { deg_a, deg_b } => {
                format!("deg_a={},deg_b={}", compact_degrees(deg_a), compact_degrees(deg_b))
            }
            Family::Deg45Line { m_a, rho } => format!("m_a={m_a},rho={rho}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name(), self.params())
    }
}

/// Degree multiset in `count x degree` notation, e.g. `50x4,10x5`.
pub fn compact_degrees(degrees: &[u32]) -> String {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &d in degrees {
        match runs.last_mut() {
            Some((last, c)) if *last == d => *c += 1,
            _ => runs.push((d, 1)),
        }
    }
    runs.iter()
        .map(|(d, c)| format!("{c}x{d}"))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub seed: u64,
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#s{}", self.family, self.seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
    Exactly,
    Order,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Exactly => "=",
            Relation::Order => "~",
        };
        f.write_str(s)
    }
}

/// Whether a recorded bound is analytic (holds by construction) or measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    Analytic,
    Empirical,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Analytic => "analytic",
            BoundSource::Empirical => "empirical",
        })
    }
}

#[derive(Debug, Clone)]
pub struct KnownBound {
    pub quantity: String,
    pub relation: Relation,
    pub value: f64,
    pub source: BoundSource,
}

/// Analytic and measured facts emitted next to a generated instance.
#[derive(Debug, Clone, Default)]
pub struct FamilyMetadata {
    pub entries: Vec<KnownBound>,
}

impl FamilyMetadata {
    fn push(&mut self, quantity: &str, relation: Relation, value: f64, source: BoundSource) {
        self.entries.push(KnownBound {
            quantity: quantity.to_string(),
            relation,
            value,
            source,
        });
    }

    /// Sidecar serialization, one `bound.N=quantity|relation|value|source`
    /// line per entry.
    pub fn to_sidecar(&self, spec: &InstanceSpec, n: usize, edges: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance={spec}\n"));
        out.push_str(&format!("family={}\n", spec.family.name()));
        out.push_str(&format!("seed={}\n", spec.seed));
        out.push_str(&format!("n={n}\n"));
        out.push_str(&format!("edges={edges}\n"));
        for (i, b) in self.entries.iter().enumerate() {
            out.push_str(&format!(
                "bound.{i}={}|{}|{}|{}\n",
                b.quantity, b.relation, b.value, b.source
            ));
        }
        out
    }
}

/// A generated instance with everything a driver needs: the graph, a tree
/// decomposition when the family knows one, and analytic metadata.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub decomposition: Option<TreeDecomposition>,
    pub metadata: FamilyMetadata,
}

pub fn instantiate(spec: &InstanceSpec) -> Result<GeneratedInstance, GenError> {
    let mut meta = FamilyMetadata::default();
    let (graph, decomposition) = match &spec.family {
        Family::GridDiag { m, d } => {
            let g = gen_grid_diag(*m, *d)?;
            meta.push("mcc_d lower (HEX)", Relation::AtLeast, *m as f64, BoundSource::Analytic);
            meta.push(
                "mcc_2 upper (layer coloring)",
                Relation::AtMost,
                (*m as f64).powi(*d as i32 - 1),
                BoundSource::Analytic,
            );
            (g, None)
        }
        Family::TriGrid { m } => {
            let g = gen_tri_grid(*m)?;
            meta.push("mcc_2 order", Relation::Order, (g.n() as f64).sqrt(), BoundSource::Analytic);
            (g, None)
        }
        Family::RibPlanar { k } => {
            let rib = gen_rib_planar(*k)?;
            meta.push(
                "mcc_2 lower",
                Relation::AtLeast,
                (*k as f64) * (*k as f64) / 2.0,
                BoundSource::Analytic,
            );
            meta.push(
                "vertices",
                Relation::Exactly,
                2.0 * (*k as f64).powi(3) + 1.0,
                BoundSource::Analytic,
            );
            (rib.graph, None)
        }
        Family::Fan { k } => {
            let (g, td) = gen_fan(*k);
            meta.push("mcc_2 order", Relation::Order, (*k as f64).sqrt(), BoundSource::Analytic);
            (g, Some(td))
        }
        Family::Cone { k, copies } => {
            let (fan, fan_td) = gen_fan(*k);
            let g = gen_cone(&fan, *copies)?;
            let td = cone_decomposition(&fan_td, fan.n(), *copies);
            meta.push(
                "mcc_3 lower when copies = mcc_2(fan)",
                Relation::AtLeast,
                *copies as f64,
                BoundSource::Analytic,
            );
            (g, Some(td))
        }
        Family::HammingCube { d } => {
            let g = gen_hamming_cube(*d)?;
            meta.push(
                "edges",
                Relation::Exactly,
                (*d as f64) * 0.5 * (1u64 << *d) as f64,
                BoundSource::Analytic,
            );
            (g, None)
        }
        Family::LineGraphOf(base) => {
            let inner = instantiate(&InstanceSpec {
                family: (**base).clone(),
                seed: spec.seed,
            })?;
            let lg = line_graph(&inner.graph)?;
            if let Family::HammingCube { d } = **base {
                if d % 2 == 0 {
                    meta.push(
                        "mcc_2",
                        Relation::Exactly,
                        (d as f64 / 4.0) * ((1u64 << (d / 2)) as f64),
                        BoundSource::Analytic,
                    );
                }
            }
            (lg.graph, None)
        }
        Family::ConfigBipartite { deg_a, deg_b } => {
            let g = gen_config_bipartite(deg_a, deg_b, spec.seed)?;
            let sum: f64 = deg_a.iter().map(|&d| d as f64).sum();
            meta.push("degree sum per side", Relation::Exactly, sum, BoundSource::Analytic);
            (g, None)
        }
        Family::Deg45Line { m_a, rho } => {
            let inst = gen_deg45_line(*m_a, *rho, spec.seed)?;
            meta.push("max degree", Relation::AtMost, 7.0, BoundSource::Analytic);
            let all: Vec<Vertex> = (0..inst.line.graph.n() as Vertex).collect();
            let avg = crate::graph::avg_degree(&inst.line.graph, &all)?;
            meta.push(
                "avg degree",
                Relation::AtMost,
                avg.to_f64().unwrap_or(f64::NAN),
                BoundSource::Empirical,
            );
            (inst.line.graph, None)
        }
    };
    Ok(GeneratedInstance {
        graph,
        decomposition,
        metadata: meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed;
    use crate::graph::components;

    #[test]
    fn grid_diag_tiny_cases() {
        let g = gen_grid_diag(2, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let g = gen_grid_diag(2, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 28)); // K_8
    }

    #[test]
    fn grid_diag_matches_naive_count() {
        let m = 3;
        let d = 2;
        let g = gen_grid_diag(m, d).unwrap();
        assert_eq!(g.n(), 9);
        // Naive double loop over coordinate pairs.
        let coord = |v: usize| [v % m, v / m];
        let mut naive = 0;
        for v in 0..9 {
            for w in (v + 1)..9 {
                let (a, b) = (coord(v), coord(w));
                let cheb = (0..d)
                    .map(|i| (a[i] as i64 - b[i] as i64).unsigned_abs())
                    .max()
                    .unwrap();
                if cheb <= 1 {
                    naive += 1;
                }
            }
        }
        assert_eq!(naive, 20);
        assert_eq!(g.edge_count(), naive);
    }

    #[test]
    fn grid_diag_overflow_guard() {
        assert!(matches!(
            gen_grid_diag(1 << 12, 3),
            Err(GenError::Overflow(_))
        ));
    }

    #[test]
    fn tri_grid_is_planar_triangulation_inside() {
        let g = gen_tri_grid(5).unwrap();
        assert_eq!(g.n(), 25);
        let faces = embed::validate_embedding(&g).unwrap();
        let big: Vec<_> = faces.iter().filter(|f| f.len() > 3).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].len(), 16); // the outer face of a 5x5 grid
    }

    #[test]
    fn rib_vertex_counts() {
        assert_eq!(gen_rib_planar(2).unwrap().graph.n(), 17);
        assert_eq!(gen_rib_planar(3).unwrap().graph.n(), 55);
    }

    #[test]
    fn rib_is_triangulated_polygon() {
        for k in [2, 3, 4] {
            let rib = gen_rib_planar(k).unwrap();
            let g = &rib.graph;
            assert!(3 * g.n() >= g.edge_count() + 6); // Euler bound E <= 3V-6
            let faces = embed::validate_embedding(g).unwrap();
            let big: Vec<_> = faces.iter().filter(|f| f.len() > 3).collect();
            assert_eq!(big.len(), 1, "k={k}: every inner face must be a triangle");
            assert_eq!(big[0].len(), (k + 1) * (k + 1));
        }
    }

    #[test]
    fn rib_named_vertices() {
        let rib = gen_rib_planar(3).unwrap();
        let g = &rib.graph;
        assert_eq!(g.degree(rib.apex), 27); // apex sees all of P
        for i in 0..9 {
            let v = rib.column_tops[i];
            for p in rib.interval(i) {
                assert!(g.has_edge(v, p));
            }
        }
        // The path is a path.
        let p: Vec<Vertex> = rib.path_vertices().collect();
        assert_eq!(p.len(), 27);
        for w in p.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
    }

    #[test]
    fn cone_examples() {
        let k1 = Graph::from_edges(1, Vec::new()).unwrap();
        let c = gen_cone(&k1, 1).unwrap();
        assert_eq!((c.n(), c.edge_count()), (2, 1)); // K_2

        let k2 = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        let c = gen_cone(&k2, 3).unwrap();
        assert_eq!(c.n(), 7);
        assert_eq!(c.degree(6), 6);
    }

    #[test]
    fn fan_examples() {
        let (g, td) = gen_fan(1);
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        td.validate(&g).unwrap();
        let (g, td) = gen_fan(9);
        assert_eq!(g.degree(9), 9);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn hamming_cube_counts() {
        let g = gen_hamming_cube(1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let g = gen_hamming_cube(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 12));
        let g = gen_hamming_cube(4).unwrap();
        for v in 0..16 {
            assert_eq!(g.degree(v), 4);
        }
        // Bipartite: coloring by parity of popcount is proper.
        let colors: Vec<u32> = (0..16u32).map(|v| v.count_ones() % 2).collect();
        let c = crate::graph::Coloring::new(colors, 2).unwrap();
        assert!(c.is_proper(&g));
    }

    #[test]
    fn config_single_edge() {
        let g = gen_config_bipartite(&[1], &[1], 7).unwrap();
        assert_eq!((g.n(), g.instance_count()), (2, 1));
    }

    #[test]
    fn config_degrees_forced() {
        for seed in 0..5 {
            let g = gen_config_bipartite(&[2, 2], &[2, 2], seed).unwrap();
            for v in 0..4 {
                assert_eq!(g.degree_with_multiplicity(v), 2);
            }
        }
    }

    #[test]
    fn config_degree_sequence_preserved() {
        let deg_a = [5, 4, 4, 3, 1];
        let deg_b = [4, 4, 4, 4, 1];
        for seed in 0..20 {
            let g = gen_config_bipartite(&deg_a, &deg_b, seed).unwrap();
            for (v, &d) in deg_a.iter().enumerate() {
                assert_eq!(g.degree_with_multiplicity(v as Vertex), d as usize);
            }
            for (v, &d) in deg_b.iter().enumerate() {
                assert_eq!(g.degree_with_multiplicity((5 + v) as Vertex), d as usize);
            }
        }
    }

    #[test]
    fn config_rejects_bad_input() {
        assert!(matches!(
            gen_config_bipartite(&[2], &[1], 0),
            Err(GenError::DegreeSumMismatch { a: 2, b: 1 })
        ));
        assert!(matches!(
            gen_config_bipartite(&[6], &[6], 0),
            Err(GenError::DegreeOutOfRange(6))
        ));
    }

    #[test]
    fn config_is_deterministic() {
        let a = gen_config_bipartite(&[4; 20], &[4; 20], 42).unwrap();
        let b = gen_config_bipartite(&[4; 20], &[4; 20], 42).unwrap();
        assert_eq!(a.edge_instances(), b.edge_instances());
        let c = gen_config_bipartite(&[4; 20], &[4; 20], 43).unwrap();
        assert_ne!(a.edge_instances(), c.edge_instances());
    }

    #[test]
    fn deg45_zero_degree5_is_six_regular() {
        let inst = gen_deg45_line(12, Rational64::new(1, 100), 1).unwrap();
        assert_eq!(inst.degree5_count, 0);
        for v in 0..inst.line.graph.n() as Vertex {
            assert_eq!(inst.line.graph.degree(v), 6);
        }
    }

    #[test]
    fn deg45_degree_audit() {
        let inst = gen_deg45_line(100, Rational64::new(1, 20), 3).unwrap();
        assert_eq!(inst.degree5_count, 4); // floor(5) rounded down to a multiple of 4
        assert!(!inst.base.is_multigraph());
        let mut degree7 = 0;
        for v in 0..inst.line.graph.n() as Vertex {
            let d = inst.line.graph.degree(v);
            assert!(d == 6 || d == 7, "line-graph degree {d}");
            if d == 7 {
                degree7 += 1;
            }
        }
        // Each degree-5 vertex contributes its 5 incident edges.
        assert_eq!(degree7, 5 * inst.degree5_count);
    }

    #[test]
    fn expansion_rate_on_regular_samples() {
        // One neighbor-count event per sampled graph, across 200 seeds.
        use rand::SeedableRng;
        let mut hits = 0;
        for seed in 0..200u64 {
            let g = gen_config_bipartite(&[4; 50], &[4; 50], seed).unwrap();
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0xabcd);
            if sample_expansion_event(&g, 50, 5, 0.5, &mut rng) {
                hits += 1;
            }
        }
        let rate = hits as f64 / 200.0;
        assert!(rate >= 0.95, "expansion rate {rate}");
    }

    #[test]
    fn instantiate_is_deterministic() {
        let spec = InstanceSpec {
            family: Family::ConfigBipartite {
                deg_a: vec![4; 30],
                deg_b: vec![4; 30],
            },
            seed: 5,
        };
        let a = instantiate(&spec).unwrap();
        let b = instantiate(&spec).unwrap();
        assert_eq!(a.graph.edge_instances(), b.graph.edge_instances());
        assert_eq!(spec.to_string(), "config_bipartite[deg_a=30x4,deg_b=30x4]#s5");
    }

    #[test]
    fn rib_minus_apex_splits_nowhere() {
        // The rib graph stays connected without the apex (through the grid).
        let rib = gen_rib_planar(2).unwrap();
        let rest: Vec<Vertex> = (1..rib.graph.n() as Vertex).collect();
        assert_eq!(components(&rib.graph, &rest).unwrap().len(), 1);
    }
}
