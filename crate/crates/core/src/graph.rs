//! Immutable undirected graphs, connectivity, line graphs, and coloring
//! evaluation.
//!
//! Vertices are dense indices `0..n`. The simple view (sorted, duplicate-free
//! neighbor lists) is always maintained; parallel edges are carried as an
//! optional multiplicity vector and are only meaningful as line-graph input
//! and for degree accounting. An optional embedding stores one cyclic
//! neighbor order per vertex for planar-constructed graphs.

use num_rational::Rational64;
use thiserror::Error;

/// Dense vertex index.
pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} not present in graph")]
    EdgeNotInGraph(Vertex, Vertex),
    #[error("operation requires a simple graph but multiplicities exceed 1")]
    NotSimple,
    #[error("embedding must list a rotation for each of {expected} vertices, got {got}")]
    EmbeddingSize { expected: usize, got: usize },
    #[error("rotation of vertex {0} is not a permutation of its neighbors")]
    RotationMismatch(Vertex),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringLength { expected: usize, got: usize },
    #[error("color {color} out of range for {t} colors")]
    ColorOutOfRange { color: u32, t: u32 },
    #[error("color count must be at least 1")]
    NoColors,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("edge set must be nonempty")]
    EmptyEdgeSet,
}

/// Unordered vertex pair with `u() < v()`. Loops are rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(&self, w: Vertex) -> Vertex {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// Parallel to `edges`; `None` means the graph was built as simple.
    multiplicity: Option<Vec<u32>>,
    adj: Vec<Vec<Vertex>>,
    embedding: Option<Vec<Vec<Vertex>>>,
}

impl Graph {
    /// Builds a simple graph. Duplicate pairs and loops are errors.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges = Self::collect_edges(n, pairs)?;
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        Ok(Self::assemble(n, edges, None))
    }

    /// Builds a multigraph: repeated pairs become edge multiplicities.
    pub fn multigraph_from_edges<I>(n: usize, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let all = Self::collect_edges(n, pairs)?;
        let mut edges: Vec<Edge> = Vec::new();
        let mut mult: Vec<u32> = Vec::new();
        for e in all {
            if edges.last() == Some(&e) {
                *mult.last_mut().unwrap() += 1;
            } else {
                edges.push(e);
                mult.push(1);
            }
        }
        Ok(Self::assemble(n, edges, Some(mult)))
    }

    fn collect_edges<I>(n: usize, pairs: I) -> Result<Vec<Edge>, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for w in [a, b] {
                if (w as usize) >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            edges.push(Edge::new(a, b)?);
        }
        edges.sort_unstable();
        Ok(edges)
    }

    fn assemble(n: usize, edges: Vec<Edge>, multiplicity: Option<Vec<u32>>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u as usize].push(e.v);
            adj[e.v as usize].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            multiplicity,
            adj,
            embedding: None,
        }
    }

    /// Attaches a combinatorial embedding: one cyclic neighbor order per
    /// vertex. Each rotation must be a permutation of the neighbor list.
    pub fn with_embedding(mut self, rotations: Vec<Vec<Vertex>>) -> Result<Graph, GraphError> {
        if rotations.len() != self.n {
            return Err(GraphError::EmbeddingSize {
                expected: self.n,
                got: rotations.len(),
            });
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != self.adj[v] {
                return Err(GraphError::RotationMismatch(v as Vertex));
            }
        }
        self.embedding = Some(rotations);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct edges of the simple view.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of distinct edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge instances, counting multiplicity.
    pub fn instance_count(&self) -> usize {
        match &self.multiplicity {
            None => self.edges.len(),
            Some(m) => m.iter().map(|&c| c as usize).sum(),
        }
    }

    /// Edge instances in canonical order: edges sorted lexicographically,
    /// each repeated by its multiplicity.
    pub fn edge_instances(&self) -> Vec<Edge> {
        match &self.multiplicity {
            None => self.edges.clone(),
            Some(m) => self
                .edges
                .iter()
                .zip(m)
                .flat_map(|(e, &c)| std::iter::repeat_n(*e, c as usize))
                .collect(),
        }
    }

    pub fn multiplicity_of(&self, e: Edge) -> u32 {
        match self.edges.binary_search(&e) {
            Err(_) => 0,
            Ok(i) => self.multiplicity.as_ref().map_or(1, |m| m[i]),
        }
    }

    /// True when some edge has multiplicity greater than one.
    pub fn is_multigraph(&self) -> bool {
        self.multiplicity
            .as_ref()
            .is_some_and(|m| m.iter().any(|&c| c > 1))
    }

    pub fn adj(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    /// Degree in the simple view.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Degree counting edge multiplicity.
    pub fn degree_with_multiplicity(&self, v: Vertex) -> usize {
        match &self.multiplicity {
            None => self.degree(v),
            Some(_) => self.adj[v as usize]
                .iter()
                .map(|&w| self.multiplicity_of(Edge::new(v, w).unwrap()) as usize)
                .sum(),
        }
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        match Edge::new(a, b) {
            Err(_) => false,
            Ok(e) => self.edges.binary_search(&e).is_ok(),
        }
    }

    pub fn embedding(&self) -> Option<&Vec<Vec<Vertex>>> {
        self.embedding.as_ref()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn ensure_simple(&self) -> Result<(), GraphError> {
        if self.is_multigraph() {
            Err(GraphError::NotSimple)
        } else {
            Ok(())
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all: Vec<Vertex> = (0..self.n as Vertex).collect();
        components(self, &all).is_ok_and(|c| c.len() == 1)
    }

    /// Induced subgraph on `verts` (sorted, duplicate-free), relabeled to
    /// `0..verts.len()`. Embedding and multiplicities are restricted; the
    /// returned vector maps local index back to the original vertex.
    pub fn induced_subgraph(&self, verts: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        for &v in verts {
            self.check_vertex(v)?;
        }
        let local = |v: Vertex| verts.binary_search(&v).ok().map(|i| i as Vertex);
        let mut pairs = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(lu), Some(lv)) = (local(e.u), local(e.v)) {
                let count = self.multiplicity.as_ref().map_or(1, |m| m[i]);
                for _ in 0..count {
                    pairs.push((lu, lv));
                }
            }
        }
        let sub = if self.multiplicity.is_some() {
            Graph::multigraph_from_edges(verts.len(), pairs)?
        } else {
            Graph::from_edges(verts.len(), pairs)?
        };
        let sub = match &self.embedding {
            None => sub,
            Some(rot) => {
                let restricted: Vec<Vec<Vertex>> = verts
                    .iter()
                    .map(|&v| {
                        rot[v as usize]
                            .iter()
                            .filter_map(|&w| local(w))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                sub.with_embedding(restricted)?
            }
        };
        Ok((sub, verts.to_vec()))
    }
}

/// Total assignment of one of `t` colors to each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    t: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, t: u32) -> Result<Coloring, GraphError> {
        if t == 0 {
            return Err(GraphError::NoColors);
        }
        for &c in &colors {
            if c >= t {
                return Err(GraphError::ColorOutOfRange { color: c, t });
            }
        }
        Ok(Coloring { colors, t })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Vertices of one color class, ascending.
    pub fn class(&self, c: u32) -> Vec<Vertex> {
        (0..self.colors.len() as Vertex)
            .filter(|&v| self.colors[v as usize] == c)
            .collect()
    }

    /// True when no two adjacent vertices share a color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|e| self.colors[e.u as usize] != self.colors[e.v as usize])
    }
}

/// Per-color component decomposition of a coloring.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    /// `per_color[c]` lists the connected components of color class `c`.
    pub per_color: Vec<Vec<Vec<Vertex>>>,
    pub per_color_max: Vec<usize>,
    pub max_component_size: usize,
}

/// Disjoint-set forest with union by size and path compression.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Returns false when both were already in the same set.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }

    pub fn component_size(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

/// Connected components of the induced subgraph `g[s]`.
///
/// Output is canonical: each component ascending, components ordered by
/// their smallest vertex. `s` may be unsorted and contain duplicates.
pub fn components(g: &Graph, s: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let mut verts = s.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        g.check_vertex(v)?;
    }
    let mut uf = UnionFind::new(verts.len());
    for (i, &v) in verts.iter().enumerate() {
        for &w in g.adj(v) {
            if w > v {
                if let Ok(j) = verts.binary_search(&w) {
                    uf.union(i as u32, j as u32);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<u32, Vec<Vertex>> = std::collections::BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        groups.entry(uf.find(i as u32)).or_default().push(v);
    }
    let mut out: Vec<Vec<Vertex>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    Ok(out)
}

/// Decomposes each color class of `c` into connected components and reports
/// the largest monochromatic component size.
pub fn max_mono_component(g: &Graph, c: &Coloring) -> Result<ComponentReport, GraphError> {
    if c.len() != g.n() {
        return Err(GraphError::ColoringLength {
            expected: g.n(),
            got: c.len(),
        });
    }
    let mut per_color = Vec::with_capacity(c.t() as usize);
    let mut per_color_max = Vec::with_capacity(c.t() as usize);
    for color in 0..c.t() {
        let class = c.class(color);
        let comps = components(g, &class)?;
        per_color_max.push(comps.iter().map(Vec::len).max().unwrap_or(0));
        per_color.push(comps);
    }
    let max_component_size = per_color_max.iter().copied().max().unwrap_or(0);
    Ok(ComponentReport {
        per_color,
        per_color_max,
        max_component_size,
    })
}

/// A line graph together with the instance map back to the base graph.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edge_of_vertex[i]` is the base edge underlying line-graph vertex `i`,
    /// in the canonical instance order of the base graph.
    pub edge_of_vertex: Vec<Edge>,
}

impl LineGraph {
    /// Line-graph vertex of a base edge (first instance for parallel edges).
    pub fn vertex_of_edge(&self, e: Edge) -> Option<Vertex> {
        self.edge_of_vertex
            .iter()
            .position(|&f| f == e)
            .map(|i| i as Vertex)
    }
}

/// Line graph of `h`: one vertex per edge instance (counting multiplicity),
/// adjacent iff the underlying edges share an endpoint. The output is always
/// simple.
pub fn line_graph(h: &Graph) -> Result<LineGraph, GraphError> {
    let instances = h.edge_instances();
    if instances.is_empty() {
        return Err(GraphError::EmptyEdgeSet);
    }
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); h.n()];
    for (i, e) in instances.iter().enumerate() {
        incident[e.u as usize].push(i as u32);
        incident[e.v as usize].push(i as u32);
    }
    let mut pairs = std::collections::BTreeSet::new();
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                pairs.insert((i.min(j), i.max(j)));
            }
        }
    }
    let graph = Graph::from_edges(instances.len(), pairs)?;
    Ok(LineGraph {
        graph,
        edge_of_vertex: instances,
    })
}

/// Average degree of `g[s]` as an exact rational: `2·|E(g[s])| / |s|`.
/// Edge multiplicities count.
pub fn avg_degree(g: &Graph, s: &[Vertex]) -> Result<Rational64, GraphError> {
    let mut verts = s.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    for &v in &verts {
        g.check_vertex(v)?;
    }
    let mut edges: i64 = 0;
    for (i, e) in g.edges().iter().enumerate() {
        if verts.binary_search(&e.u).is_ok() && verts.binary_search(&e.v).is_ok() {
            edges += g.multiplicity.as_ref().map_or(1, |m| m[i]) as i64;
        }
    }
    Ok(Rational64::new(2 * edges, verts.len() as i64))
}

/// Average degree of the line graph of `K = (endpoints of f, f)` by the
/// degree formula `(1/|F|)·Σ_u deg_K(u)·(deg_K(u)−1)`, without building the
/// line graph.
///
/// `f` must be a set of distinct edges of `h` (one instance each); for such
/// `K` the value equals `avg_degree(line_graph(K), all)` exactly.
pub fn line_graph_avg_degree(h: &Graph, f: &[Edge]) -> Result<Rational64, GraphError> {
    if f.is_empty() {
        return Err(GraphError::EmptyEdgeSet);
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in f {
        if h.multiplicity_of(*e) == 0 {
            return Err(GraphError::EdgeNotInGraph(e.u, e.v));
        }
        if !seen.insert(*e) {
            return Err(GraphError::DuplicateEdge(e.u, e.v));
        }
    }
    let mut deg: std::collections::BTreeMap<Vertex, i64> = std::collections::BTreeMap::new();
    for e in f {
        *deg.entry(e.u).or_insert(0) += 1;
        *deg.entry(e.v).or_insert(0) += 1;
    }
    let total: i64 = deg.values().map(|&d| d * (d - 1)).sum();
    Ok(Rational64::new(total, f.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as Vertex - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as Vertex {
            for j in i + 1..n as Vertex {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    /// Independent recursive DFS used as an oracle for `components`.
    fn naive_components(g: &Graph, s: &[Vertex]) -> Vec<Vec<Vertex>> {
        fn dfs(g: &Graph, inside: &[bool], seen: &mut [bool], v: Vertex, acc: &mut Vec<Vertex>) {
            seen[v as usize] = true;
            acc.push(v);
            for &w in g.adj(v) {
                if inside[w as usize] && !seen[w as usize] {
                    dfs(g, inside, seen, w, acc);
                }
            }
        }
        let mut inside = vec![false; g.n()];
        for &v in s {
            inside[v as usize] = true;
        }
        let mut seen = vec![false; g.n()];
        let mut out = Vec::new();
        for &v in s {
            if !seen[v as usize] {
                let mut acc = Vec::new();
                dfs(g, &inside, &mut seen, v, &mut acc);
                acc.sort_unstable();
                out.push(acc);
            }
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    #[test]
    fn edge_rejects_loops_and_orders() {
        assert_eq!(Edge::new(3, 3), Err(GraphError::SelfLoop(3)));
        assert_eq!(Edge::new(5, 2).unwrap().endpoints(), (2, 5));
    }

    #[test]
    fn simple_rejects_duplicates() {
        let err = Graph::from_edges(3, vec![(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(0, 1));
    }

    #[test]
    fn multigraph_counts_parallels() {
        let g = Graph::multigraph_from_edges(2, vec![(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.instance_count(), 3);
        assert!(g.is_multigraph());
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree_with_multiplicity(0), 3);
        assert!(g.ensure_simple().is_err());
    }

    #[test]
    fn components_path_endpoints() {
        let g = path(3);
        let comps = components(&g, &[0, 2]).unwrap();
        assert_eq!(comps, vec![vec![0], vec![2]]);
    }

    #[test]
    fn components_complete() {
        let g = complete(3);
        assert_eq!(components(&g, &[0, 1, 2]).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn components_out_of_range() {
        let g = path(3);
        assert!(matches!(
            components(&g, &[0, 7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn components_match_naive_on_rib_minus_apex() {
        let rib = crate::gen::gen_rib_planar(2).unwrap();
        let s: Vec<Vertex> = (0..rib.graph.n() as Vertex)
            .filter(|&v| v != rib.apex)
            .collect();
        let fast = components(&rib.graph, &s).unwrap();
        let slow = naive_components(&rib.graph, &s);
        assert_eq!(fast, slow);
    }

    #[test]
    fn max_mono_single_vertex() {
        let g = Graph::from_edges(1, Vec::new()).unwrap();
        let c = Coloring::new(vec![0], 2).unwrap();
        assert_eq!(max_mono_component(&g, &c).unwrap().max_component_size, 1);
    }

    #[test]
    fn max_mono_c5_alternating() {
        let g = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = Coloring::new(vec![0, 1, 0, 1, 0], 2).unwrap();
        let report = max_mono_component(&g, &c).unwrap();
        // Color 0 is {0,2,4} with the single edge 4-0; hand enumeration gives
        // components {0,4},{2} and {1},{3}.
        assert_eq!(report.max_component_size, 2);
        assert_eq!(report.per_color[0], vec![vec![0, 4], vec![2]]);
        assert_eq!(report.per_color_max, vec![2, 1]);
    }

    #[test]
    fn max_mono_length_mismatch() {
        let g = path(3);
        let c = Coloring::new(vec![0, 1], 2).unwrap();
        assert!(matches!(
            max_mono_component(&g, &c),
            Err(GraphError::ColoringLength { .. })
        ));
    }

    #[test]
    fn proper_iff_max_one() {
        let g = complete(3);
        let proper = Coloring::new(vec![0, 1, 2], 3).unwrap();
        let improper = Coloring::new(vec![0, 0, 1], 3).unwrap();
        assert_eq!(max_mono_component(&g, &proper).unwrap().max_component_size, 1);
        assert!(proper.is_proper(&g));
        assert!(max_mono_component(&g, &improper).unwrap().max_component_size > 1);
        assert!(!improper.is_proper(&g));
    }

    #[test]
    fn line_graph_star_is_triangle() {
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let lg = line_graph(&star).unwrap();
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.edge_count(), 3);
    }

    #[test]
    fn line_graph_of_path() {
        let lg = line_graph(&path(4)).unwrap();
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.edge_count(), 2);
        assert_eq!(lg.graph.degree(1), 2);
    }

    #[test]
    fn line_graph_parallel_pair() {
        let h = Graph::multigraph_from_edges(2, vec![(0, 1), (0, 1)]).unwrap();
        let lg = line_graph(&h).unwrap();
        assert_eq!(lg.graph.n(), 2);
        assert_eq!(lg.graph.edge_count(), 1);
    }

    #[test]
    fn line_graph_empty_edge_set() {
        let g = Graph::from_edges(2, Vec::new()).unwrap();
        assert_eq!(line_graph(&g).unwrap_err(), GraphError::EmptyEdgeSet);
    }

    #[test]
    fn line_graph_q4_degrees() {
        let q4 = crate::gen::gen_hamming_cube(4).unwrap();
        let lg = line_graph(&q4).unwrap();
        assert_eq!(lg.graph.n(), 32);
        for v in 0..32 {
            assert_eq!(lg.graph.degree(v), 6); // 2(d-1) for d-regular input
        }
    }

    #[test]
    fn avg_degree_tree_and_clique() {
        let g = path(6);
        let all: Vec<Vertex> = (0..6).collect();
        assert_eq!(avg_degree(&g, &all).unwrap(), Rational64::new(10, 6));
        let k4 = complete(4);
        let all: Vec<Vertex> = (0..4).collect();
        assert_eq!(avg_degree(&k4, &all).unwrap(), Rational64::new(3, 1));
        assert_eq!(avg_degree(&k4, &[]).unwrap_err(), GraphError::EmptyVertexSet);
    }

    #[test]
    fn avg_degree_rib_column_matches_recount() {
        let rib = crate::gen::gen_rib_planar(3).unwrap();
        let r0: Vec<Vertex> = rib.column(0).chain(rib.interval(0)).collect();
        let got = avg_degree(&rib.graph, &r0).unwrap();
        // Naive recount over all edges.
        let inside: std::collections::BTreeSet<_> = r0.iter().copied().collect();
        let count = rib
            .graph
            .edges()
            .iter()
            .filter(|e| inside.contains(&e.u) && inside.contains(&e.v))
            .count() as i64;
        assert_eq!(got, Rational64::new(2 * count, r0.len() as i64));
    }

    #[test]
    fn line_graph_avg_degree_examples() {
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let f: Vec<Edge> = star.edges().to_vec();
        assert_eq!(line_graph_avg_degree(&star, &f).unwrap(), Rational64::new(2, 1));

        let p = path(3);
        let f: Vec<Edge> = p.edges().to_vec();
        assert_eq!(line_graph_avg_degree(&p, &f).unwrap(), Rational64::new(1, 1));

        assert_eq!(
            line_graph_avg_degree(&p, &[]).unwrap_err(),
            GraphError::EmptyEdgeSet
        );
    }

    #[test]
    fn line_graph_avg_degree_matches_construction() {
        let g = complete(5);
        let f: Vec<Edge> = g.edges().iter().copied().step_by(2).collect();
        let k_n = 5;
        let sub = Graph::from_edges(k_n, f.iter().map(|e| e.endpoints())).unwrap();
        let lg = line_graph(&sub).unwrap();
        let all: Vec<Vertex> = (0..lg.graph.n() as Vertex).collect();
        assert_eq!(
            line_graph_avg_degree(&g, &f).unwrap(),
            avg_degree(&lg.graph, &all).unwrap()
        );
    }

    #[test]
    fn line_graph_avg_degree_on_config_sample() {
        // A 4-regular configuration graph and a 20-edge subset of its
        // distinct edges: the formula matches the built line graph.
        let h = crate::gen::gen_config_bipartite(&[4; 25], &[4; 25], 17).unwrap();
        let f: Vec<Edge> = h.edges().iter().copied().take(20).collect();
        assert_eq!(f.len(), 20);
        let k = Graph::from_edges(h.n(), f.iter().map(|e| e.endpoints())).unwrap();
        let lg = line_graph(&k).unwrap();
        let all: Vec<Vertex> = (0..lg.graph.n() as Vertex).collect();
        assert_eq!(
            line_graph_avg_degree(&h, &f).unwrap(),
            avg_degree(&lg.graph, &all).unwrap()
        );
    }

    #[test]
    fn induced_subgraph_keeps_embedding() {
        let square = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap()
            .with_embedding(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]])
            .unwrap();
        let (sub, ids) = square.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(ids, vec![0, 1, 2]);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.embedding().unwrap()[1], vec![2, 0]);
    }

    #[test]
    fn embedding_must_be_permutation() {
        let g = path(3);
        let err = g
            .with_embedding(vec![vec![1], vec![0, 0], vec![1]])
            .unwrap_err();
        assert_eq!(err, GraphError::RotationMismatch(1));
    }
}
