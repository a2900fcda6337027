//! Byte-exact text formats.
//!
//! Edge list: a header `n m`, then `m` lines `u v` (0-based, `u < v`,
//! lexicographically sorted; parallel edges repeat the line). An optional
//! section opened by the literal line `# embedding` carries one line per
//! vertex with its cyclic neighbor order, space-separated (an isolated
//! vertex gets an empty line).
//!
//! Coloring: one line `vertex color` per vertex, sorted by vertex; the color
//! count is the largest color plus one.
//!
//! Tree decomposition: a header `b w` (bag count, width), then `b` bag lines
//! of space-separated vertices (possibly empty), then `b − 1` tree-edge
//! lines `i j`.
//!
//! Emitters produce exactly this canonical shape, so `emit(parse(f)) == f`
//! for every canonical file.

use thiserror::Error;

use crate::graph::{Coloring, Graph, Vertex};
use crate::separator::TreeDecomposition;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based line number the diagnostic refers to.
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| FormatError {
            line,
            message: format!("malformed {what}: {tok:?}"),
        })
}

pub fn emit_edge_list(g: &Graph) -> String {
    let instances = g.edge_instances();
    let mut out = format!("{} {}\n", g.n(), instances.len());
    for e in &instances {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    if let Some(rot) = g.embedding() {
        out.push_str("# embedding\n");
        for r in rot {
            let line: Vec<String> = r.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() {
        return fail(1, "missing `n m` header");
    }
    let header: Vec<&str> = lines[0].split_whitespace().collect();
    if header.len() != 2 {
        return fail(1, "header must be `n m`");
    }
    let n: usize = parse_num(header[0], 1, "vertex count")?;
    let m: usize = parse_num(header[1], 1, "edge count")?;
    let mut pairs = Vec::with_capacity(m);
    let mut idx = 1;
    while idx <= m {
        let Some(raw) = lines.get(idx) else {
            return fail(1, format!("header declares {m} edges but the file has {}", idx - 1));
        };
        if raw.trim_start().starts_with('#') {
            return fail(1, format!("header declares {m} edges but the file has {}", idx - 1));
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.len() != 2 {
            return fail(idx + 1, "edge line must be `u v`");
        }
        let u: Vertex = parse_num(toks[0], idx + 1, "vertex")?;
        let v: Vertex = parse_num(toks[1], idx + 1, "vertex")?;
        if u as usize >= n || v as usize >= n {
            return fail(idx + 1, format!("vertex out of range for n={n}"));
        }
        if u == v {
            return fail(idx + 1, format!("self-loop at vertex {u}"));
        }
        pairs.push((u, v));
        idx += 1;
    }
    let has_dup = {
        let mut sorted: Vec<(Vertex, Vertex)> =
            pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    };
    let g = if has_dup {
        Graph::multigraph_from_edges(n, pairs)
    } else {
        Graph::from_edges(n, pairs)
    }
    .map_err(|e| FormatError {
        line: 1,
        message: e.to_string(),
    })?;
    // Optional embedding section.
    if idx >= lines.len() {
        return Ok(g);
    }
    if lines[idx].trim() != "# embedding" {
        return fail(idx + 1, "expected `# embedding` or end of file");
    }
    idx += 1;
    let mut rotations = Vec::with_capacity(n);
    for v in 0..n {
        let Some(raw) = lines.get(idx) else {
            return fail(idx, format!("embedding section needs {n} rotation lines"));
        };
        let mut rot = Vec::new();
        for tok in raw.split_whitespace() {
            let w: Vertex = parse_num(tok, idx + 1, "vertex")?;
            if w as usize >= n {
                return fail(idx + 1, format!("vertex out of range for n={n}"));
            }
            rot.push(w);
        }
        let _ = v;
        rotations.push(rot);
        idx += 1;
    }
    if idx != lines.len() {
        return fail(idx + 1, "trailing content after embedding section");
    }
    g.with_embedding(rotations).map_err(|e| FormatError {
        line: 1,
        message: e.to_string(),
    })
}

pub fn emit_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for v in 0..c.len() {
        out.push_str(&format!("{} {}\n", v, c.color(v as Vertex)));
    }
    out
}

/// Parses a coloring; lines may be in any order but must cover `0..n`
/// exactly once. The color count is the largest color plus one.
pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    let n = lines.len();
    if n == 0 {
        return fail(1, "empty coloring");
    }
    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (i, raw) in lines.iter().enumerate() {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.len() != 2 {
            return fail(i + 1, "coloring line must be `vertex color`");
        }
        let v: usize = parse_num(toks[0], i + 1, "vertex")?;
        let c: u32 = parse_num(toks[1], i + 1, "color")?;
        if v >= n {
            return fail(i + 1, format!("vertex {v} out of range for {n} lines"));
        }
        if colors[v].is_some() {
            return fail(i + 1, format!("vertex {v} colored twice"));
        }
        colors[v] = Some(c);
    }
    let colors: Vec<u32> = colors.into_iter().map(Option::unwrap).collect();
    let t = colors.iter().copied().max().unwrap_or(0) + 1;
    Coloring::new(colors, t).map_err(|e| FormatError {
        line: 1,
        message: e.to_string(),
    })
}

pub fn emit_tree_decomposition(td: &TreeDecomposition) -> String {
    let mut out = format!("{} {}\n", td.bag_count(), td.width());
    for bag in &td.bags {
        let line: Vec<String> = bag.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    for &(i, j) in &td.tree_edges {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

pub fn parse_tree_decomposition(text: &str) -> Result<TreeDecomposition, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() {
        return fail(1, "missing `b w` header");
    }
    let header: Vec<&str> = lines[0].split_whitespace().collect();
    if header.len() != 2 {
        return fail(1, "header must be `b w`");
    }
    let b: usize = parse_num(header[0], 1, "bag count")?;
    let w: usize = parse_num(header[1], 1, "width")?;
    if b == 0 {
        return fail(1, "decomposition needs at least one bag");
    }
    let expected = 1 + b + (b - 1);
    if lines.len() != expected {
        return fail(
            1,
            format!("{b} bags need {expected} lines, file has {}", lines.len()),
        );
    }
    let mut bags = Vec::with_capacity(b);
    for i in 0..b {
        let mut bag = Vec::new();
        for tok in lines[1 + i].split_whitespace() {
            bag.push(parse_num::<Vertex>(tok, i + 2, "vertex")?);
        }
        if !bag.windows(2).all(|p| p[0] < p[1]) {
            return fail(i + 2, "bag must be strictly ascending");
        }
        bags.push(bag);
    }
    let mut tree_edges = Vec::with_capacity(b - 1);
    for i in 0..b - 1 {
        let line_no = 1 + b + i + 1;
        let toks: Vec<&str> = lines[b + 1 + i].split_whitespace().collect();
        if toks.len() != 2 {
            return fail(line_no, "tree edge line must be `i j`");
        }
        let x: usize = parse_num(toks[0], line_no, "bag index")?;
        let y: usize = parse_num(toks[1], line_no, "bag index")?;
        if x >= b || y >= b {
            return fail(line_no, format!("bag index out of range for {b} bags"));
        }
        tree_edges.push((x, y));
    }
    let td = TreeDecomposition { bags, tree_edges };
    if td.width() != w {
        return fail(1, format!("header width {w} but bags have width {}", td.width()));
    }
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn edge_list_round_trip_simple() {
        let g = gen::gen_grid_diag(3, 2).unwrap();
        let text = emit_edge_list(&g);
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(emit_edge_list(&parsed), text);
        assert_eq!(parsed.n(), 9);
        assert_eq!(parsed.edge_count(), 20);
    }

    #[test]
    fn edge_list_round_trip_with_embedding() {
        let rib = gen::gen_rib_planar(2).unwrap();
        let text = emit_edge_list(&rib.graph);
        assert!(text.contains("# embedding"));
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(emit_edge_list(&parsed), text);
        assert_eq!(parsed.embedding(), rib.graph.embedding());
    }

    #[test]
    fn edge_list_round_trip_multigraph() {
        let g = gen::gen_config_bipartite(&[3, 3], &[3, 3], 5).unwrap();
        let text = emit_edge_list(&g);
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(emit_edge_list(&parsed), text);
    }

    #[test]
    fn edge_list_header_mismatch_names_line_one() {
        let err = parse_edge_list("3 5\n0 1\n1 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("declares 5 edges"));
    }

    #[test]
    fn edge_list_bad_vertex_names_line() {
        let err = parse_edge_list("3 2\n0 1\n1 9\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::new(vec![0, 2, 1, 1], 3).unwrap();
        let text = emit_coloring(&c);
        let parsed = parse_coloring(&text).unwrap();
        assert_eq!(emit_coloring(&parsed), text);
        assert_eq!(parsed.t(), 3);
    }

    #[test]
    fn coloring_rejects_double_assignment() {
        let err = parse_coloring("0 1\n0 0\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn tree_decomposition_round_trip() {
        let (g, td) = gen::gen_fan(6);
        td.validate(&g).unwrap();
        let text = emit_tree_decomposition(&td);
        let parsed = parse_tree_decomposition(&text).unwrap();
        assert_eq!(parsed, td);
        assert_eq!(emit_tree_decomposition(&parsed), text);
    }

    #[test]
    fn tree_decomposition_width_mismatch() {
        let err = parse_tree_decomposition("1 5\n0 1 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("width"));
    }
}
