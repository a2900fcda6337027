//! Rotation-system utilities: face traversal, planarity validation, and
//! internal triangulation of embedded graphs.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph carries no embedding")]
    MissingEmbedding,
    #[error("embedded graph must be connected")]
    Disconnected,
    #[error("rotation system is not planar: V={vertices} E={edges} F={faces}")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

/// Closed face walks of the embedding, one per face, each listed as the
/// cyclic vertex sequence. Every directed edge appears in exactly one walk.
///
/// The walk rule: after entering `v` along `u -> v`, leave along the edge to
/// the neighbor following `u` in the rotation of `v`.
pub fn face_walks(g: &Graph) -> Result<Vec<Vec<Vertex>>, EmbedError> {
    let rot = g.embedding().ok_or(EmbedError::MissingEmbedding)?;
    let mut pos: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (v, list) in rot.iter().enumerate() {
        for (i, &w) in list.iter().enumerate() {
            pos.insert((v as Vertex, w), i);
        }
    }
    let mut seen: HashMap<(Vertex, Vertex), bool> = HashMap::new();
    let mut faces = Vec::new();
    for (v, list) in rot.iter().enumerate() {
        for &w in list {
            let start = (v as Vertex, w);
            if seen.contains_key(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = start;
            loop {
                seen.insert((a, b), true);
                walk.push(a);
                let i = pos[&(b, a)];
                let next = rot[b as usize][(i + 1) % rot[b as usize].len()];
                a = b;
                b = next;
                if (a, b) == start {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    Ok(faces)
}

/// Validates that the rotation system describes a planar embedding of a
/// connected graph (Euler: V − E + F = 2) and returns the face walks.
pub fn validate_embedding(g: &Graph) -> Result<Vec<Vec<Vertex>>, EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    let faces = face_walks(g)?;
    let (v, e, f) = (g.n(), g.edge_count(), faces.len());
    if g.n() > 0 && v + f != e + 2 {
        return Err(EmbedError::NotPlanar {
            vertices: v,
            edges: e,
            faces: f,
        });
    }
    Ok(faces)
}

/// Chords that triangulate the non-triangular faces, for separator search
/// only (they are never part of the reported graph).
///
/// Each face walk is reduced by ear clipping: a spur `a,b,a` drops `b`, and
/// an ear `a,b,c` with `a ≠ c` and chord `a-c` not yet present closes with
/// that chord. Faces that cannot be reduced further (every candidate chord
/// already exists elsewhere) are left as is; callers must verify any result
/// built on top of the filled graph.
pub fn triangulation_fill(g: &Graph, faces: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)> {
    let mut fills: Vec<(Vertex, Vertex)> = Vec::new();
    let mut added: std::collections::BTreeSet<(Vertex, Vertex)> = std::collections::BTreeSet::new();
    let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    for face in faces {
        let mut walk = face.clone();
        'reduce: while walk.len() > 3 {
            let len = walk.len();
            for i in 0..len {
                let prev = walk[(i + len - 1) % len];
                let next = walk[(i + 1) % len];
                if prev == next {
                    // Spur: the walk enters and leaves through the same edge.
                    let drop_at = i;
                    let dup = (i + 1) % len;
                    let mut reduced = Vec::with_capacity(len - 2);
                    for (j, &w) in walk.iter().enumerate() {
                        if j != drop_at && j != dup {
                            reduced.push(w);
                        }
                    }
                    walk = reduced;
                    continue 'reduce;
                }
                let k = key(prev, next);
                if !g.has_edge(prev, next) && !added.contains(&k) {
                    added.insert(k);
                    fills.push(k);
                    walk.remove(i);
                    continue 'reduce;
                }
            }
            break; // no clippable ear left
        }
    }
    fills
}
