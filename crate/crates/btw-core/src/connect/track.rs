//! Following cells of the input triangulation through a naked rewrite.

use crate::moves::naked::MoveResult;
use crate::skeleta::Skeleta;

/// Where face side (i, f) went. None if the face was consumed by the move.
pub fn transport_side(res: &MoveResult, side: (usize, u8)) -> Option<(usize, u8)> {
    if let Some(&(_, to, _)) = res.face_map.iter().find(|&&(from, _, _)| from == side) {
        return Some(to);
    }
    res.tet_map[side.0].map(|j| (j, side.1))
}

/// New index of edge class c: any surviving embedding pins it, either in a
/// kept tetrahedron or through a boundary face of a removed one. None if
/// every embedding vanished with the rewritten region.
pub fn transport_edge_class(
    sk_old: &Skeleta,
    c: usize,
    res: &MoveResult,
    sk_new: &Skeleta,
) -> Option<usize> {
    for &(i, a, b) in &sk_old.edge_classes[c].embeddings {
        if let Some(j) = res.tet_map[i] {
            return Some(sk_new.edge_class_of(j, a, b));
        }
        for &((ot, of), (nt, _), p) in &res.face_map {
            if ot == i && of != a && of != b {
                return Some(sk_new.edge_class_of(nt, p.apply(a), p.apply(b)));
            }
        }
    }
    None
}

/// New embedding of vertex (i, v). None if the vertex vanished.
pub fn transport_vertex(res: &MoveResult, i: usize, v: u8) -> Option<(usize, u8)> {
    if let Some(j) = res.tet_map[i] {
        return Some((j, v));
    }
    for &((ot, of), (nt, _), p) in &res.face_map {
        if ot == i && of != v {
            return Some((nt, p.apply(v)));
        }
    }
    None
}
