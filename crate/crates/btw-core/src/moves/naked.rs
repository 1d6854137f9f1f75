//! The naked (undecorated) moves: 2<->3, quadrilateral 0<->2, triangular
//! 0<->2, and stellar 1<->4, as combinatorial rewrites of gluing tables.

use crate::perm::Perm4;
use crate::skeleta::{edge_link, material_vertices, Skeleta};
use crate::tri::{Gluing, RawTriangulation, Triangulation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    M23,
    M32,
    M02Q,
    M20Q,
    M02T,
    M20T,
    M14,
    M41,
}

impl MoveKind {
    pub fn is_positive(self) -> bool {
        matches!(self, MoveKind::M23 | MoveKind::M02Q | MoveKind::M02T | MoveKind::M14)
    }

    pub fn tet_delta(self) -> i64 {
        match self {
            MoveKind::M23 => 1,
            MoveKind::M32 => -1,
            MoveKind::M02Q | MoveKind::M02T => 2,
            MoveKind::M20Q | MoveKind::M20T => -2,
            MoveKind::M14 => 3,
            MoveKind::M41 => -3,
        }
    }
}

impl std::fmt::Display for MoveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MoveKind::M23 => "2->3",
            MoveKind::M32 => "3->2",
            MoveKind::M02Q => "0->2q",
            MoveKind::M20Q => "2->0q",
            MoveKind::M02T => "0->2t",
            MoveKind::M20T => "2->0t",
            MoveKind::M14 => "1->4",
            MoveKind::M41 => "4->1",
        };
        f.write_str(s)
    }
}

/// Kind-specific locus, always anchored at an embedding so it survives
/// re-derivation of the skeleta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Site {
    /// a face side: M23 (two distinct tets across it) and M02T
    Face { tet: usize, face: u8 },
    /// an edge embedding: M32 (valence 3) and M20Q (valence 2)
    Edge { tet: usize, a: u8, b: u8 },
    /// an edge embedding with two exit positions p<q in its link walk,
    /// crossing two distinct face classes: M02Q
    Lune { tet: usize, a: u8, b: u8, p: usize, q: usize },
    /// a tetrahedron: M14
    Tet { tet: usize },
    /// a vertex embedding: M41 (material star of 4) and M20T (pillow apex)
    Vertex { tet: usize, v: u8 },
}

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("invalid site for {kind}: {msg}")]
    InvalidSite { kind: MoveKind, msg: String },
}

fn bad(kind: MoveKind, msg: impl Into<String>) -> MoveError {
    MoveError::InvalidSite { kind, msg: msg.into() }
}

/// Result of a naked move application.
pub struct MoveResult {
    pub tri: Triangulation,
    /// old tet index -> new index, None for removed tets
    pub tet_map: Vec<Option<usize>>,
    /// indices in the new triangulation of the created tets
    pub new_tets: Vec<usize>,
    /// external faces of the rewritten region: (old side) -> (new tet, new
    /// face), with the vertex perm old tet labels -> new tet labels.
    /// Identity-mapped kept faces are not listed.
    pub face_map: Vec<((usize, u8), (usize, u8), Perm4)>,
    /// for 2->0 moves: the two old external face sides that became directly
    /// glued to each other (their face classes merge in the output)
    pub merged_faces: Vec<((usize, u8), (usize, u8))>,
    /// site at which the inverse move applies in the new triangulation
    pub inverse: (MoveKind, Site),
}

struct Region<'a> {
    t: &'a Triangulation,
    removed: Vec<usize>,
    /// internal gluings among new tets, local indices
    internal: Vec<[Option<Gluing>; 4]>,
    /// ((old tet, old face), new local tet, perm old labels -> new labels)
    boundary: Vec<((usize, u8), usize, Perm4)>,
    /// ((old tet, old face), (old tet, old face), perm first -> second)
    pairs: Vec<((usize, u8), (usize, u8), Perm4)>,
}

impl<'a> Region<'a> {
    fn rewrite(&self, name: &str) -> (Triangulation, Vec<Option<usize>>, Vec<usize>) {
        let t = self.t;
        let n = t.n_tets();
        let mut tet_map: Vec<Option<usize>> = vec![None; n];
        let mut next = 0usize;
        for i in 0..n {
            if !self.removed.contains(&i) {
                tet_map[i] = Some(next);
                next += 1;
            }
        }
        let k = next;
        let m = self.internal.len();
        let lookup_boundary = |tf: (usize, u8)| -> Option<(usize, Perm4)> {
            self.boundary.iter().find(|&&(b, _, _)| b == tf).map(|&(_, j, p)| (j, p))
        };
        // resolve what a removed-side external face connects to after the
        // rewrite: (new tet, perm old-removed-labels -> new labels)
        let resolve = |tf: (usize, u8)| -> (usize, Perm4) {
            if let Some((j, p)) = lookup_boundary(tf) {
                return (k + j, p);
            }
            for &(a, b, pi) in &self.pairs {
                let (other, fwd) = if a == tf {
                    (b, pi)
                } else if b == tf {
                    (a, pi.inverse())
                } else {
                    continue;
                };
                let g = t.gluing(other.0, other.1);
                let nb = tet_map[g.tet].expect("pair neighbor must be kept");
                return (nb, g.perm.compose(&fwd));
            }
            panic!("unmapped region face {tf:?}");
        };
        let mut gluings = vec![[Gluing { tet: 0, perm: Perm4::IDENTITY }; 4]; k + m];
        for i in 0..n {
            let Some(ni) = tet_map[i] else { continue };
            for f in 0..4u8 {
                let g = t.gluing(i, f);
                gluings[ni][f as usize] = if let Some(ng) = tet_map[g.tet] {
                    Gluing { tet: ng, perm: g.perm }
                } else {
                    let rf = g.perm.apply(f);
                    let (nt, p) = resolve((g.tet, rf));
                    Gluing { tet: nt, perm: p.compose(&g.perm) }
                };
            }
        }
        for (j, faces) in self.internal.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(gl) = faces[f as usize] {
                    gluings[k + j][f as usize] = Gluing { tet: k + gl.tet, perm: gl.perm };
                    continue;
                }
                // a boundary face of the region: follow the old gluing out
                let &((ot, of), _, phi) = self
                    .boundary
                    .iter()
                    .find(|&&((_, of), jj, p)| jj == j && p.apply(of) == f)
                    .expect("every non-internal new face must appear in the boundary map");
                let g = t.gluing(ot, of);
                gluings[k + j][f as usize] = if let Some(ng) = tet_map[g.tet] {
                    Gluing { tet: ng, perm: g.perm.compose(&phi.inverse()) }
                } else {
                    // external gluing between two removed-region faces
                    let rf = g.perm.apply(of);
                    let (j2, psi) = lookup_boundary((g.tet, rf))
                        .expect("removed-to-removed external face must be in the boundary map");
                    Gluing { tet: k + j2, perm: psi.compose(&g.perm).compose(&phi.inverse()) }
                };
            }
        }
        let tri = Triangulation::validate(&RawTriangulation {
            name: name.to_string(),
            gluings,
        })
        .expect("rewritten table must be a valid triangulation");
        let new_tets = (k..k + m).collect();
        (tri, tet_map, new_tets)
    }

    fn face_map(&self, k: usize) -> Vec<((usize, u8), (usize, u8), Perm4)> {
        self.boundary
            .iter()
            .map(|&((ot, of), j, p)| ((ot, of), (k + j, p.apply(of)), p))
            .collect()
    }

}

/// perm with the given (source, target) vertex assignments
fn perm_from(pairs: [(u8, u8); 4]) -> Perm4 {
    let mut img = [0u8; 4];
    for (s, t) in pairs {
        img[s as usize] = t;
    }
    Perm4::new(img).expect("assignments must form a bijection")
}

const G23: [u8; 4] = [0, 1, 3, 2]; // model gluing between adjacent 2->3 tets

pub fn apply(t: &Triangulation, kind: MoveKind, site: Site) -> Result<MoveResult, MoveError> {
    match (kind, site) {
        (MoveKind::M23, Site::Face { tet, face }) => m23(t, tet, face),
        (MoveKind::M32, Site::Edge { tet, a, b }) => m32(t, tet, a, b),
        (MoveKind::M14, Site::Tet { tet }) => m14(t, tet),
        (MoveKind::M41, Site::Vertex { tet, v }) => m41(t, tet, v),
        (MoveKind::M02T, Site::Face { tet, face }) => m02t(t, tet, face),
        (MoveKind::M20T, Site::Vertex { tet, v }) => m20t(t, tet, v),
        (MoveKind::M02Q, Site::Lune { tet, a, b, p, q }) => m02q(t, tet, a, b, p, q),
        (MoveKind::M20Q, Site::Edge { tet, a, b }) => m20q(t, tet, a, b),
        (kind, site) => Err(bad(kind, format!("site shape {site:?} does not fit"))),
    }
}

fn m23(t: &Triangulation, a_tet: usize, f_a: u8) -> Result<MoveResult, MoveError> {
    let g = t.gluing(a_tet, f_a);
    let (b_tet, sigma) = (g.tet, g.perm);
    if a_tet == b_tet {
        return Err(bad(MoveKind::M23, "face must bound two distinct tetrahedra"));
    }
    let f_b = sigma.apply(f_a);
    let u: Vec<u8> = (0..4u8).filter(|&v| v != f_a).collect();
    let gperm = Perm4::new(G23).unwrap();
    let mut internal: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; 3];
    for k in 0..3 {
        internal[k][2] = Some(Gluing { tet: (k + 1) % 3, perm: gperm });
        internal[k][3] = Some(Gluing { tet: (k + 2) % 3, perm: gperm });
    }
    let mut boundary = Vec::new();
    for k in 0..3 {
        let (u0, u1, u2) = (u[k], u[(k + 1) % 3], u[(k + 2) % 3]);
        boundary.push((
            (a_tet, u0),
            k,
            perm_from([(f_a, 0), (u0, 1), (u1, 2), (u2, 3)]),
        ));
        boundary.push((
            (b_tet, sigma.apply(u0)),
            k,
            perm_from([
                (f_b, 1),
                (sigma.apply(u0), 0),
                (sigma.apply(u1), 2),
                (sigma.apply(u2), 3),
            ]),
        ));
    }
    let region = Region { t, removed: vec![a_tet, b_tet], internal, boundary, pairs: vec![] };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    let k = tet_map.iter().flatten().count();
    let inverse = (MoveKind::M32, Site::Edge { tet: new_tets[0], a: 0, b: 1 });
    Ok(MoveResult {
        face_map: region.face_map(k),
        merged_faces: vec![],
        tri,
        tet_map,
        new_tets,
        inverse,
    })
}

/// Standardizing maps for a valence-3 edge: one per link step, actual tet
/// labels -> model labels (edge = 01, exit vertex 2, entry vertex 3).
fn m32_frames(
    t: &Triangulation,
    tet: usize,
    a: u8,
    b: u8,
) -> Result<(Vec<usize>, Vec<Perm4>), MoveError> {
    let link = edge_link(t, (tet, a, b));
    if link.len() != 3 {
        return Err(bad(MoveKind::M32, format!("edge has valence {}", link.len())));
    }
    let tets: Vec<usize> = link.iter().map(|s| s.tet).collect();
    if tets[0] == tets[1] || tets[1] == tets[2] || tets[0] == tets[2] {
        return Err(bad(MoveKind::M32, "the three tetrahedra must be pairwise distinct"));
    }
    // orientation consistency: the carried edge direction must close up
    let last = &link[2];
    let gl = t.gluing(last.tet, last.exit_face);
    if (gl.perm.apply(last.edge.0), gl.perm.apply(last.edge.1)) != (a, b) {
        return Err(bad(MoveKind::M32, "edge class is orientation-inconsistent"));
    }
    let mut rhos = Vec::new();
    for step in &link {
        let (c, d) = step.edge;
        rhos.push(perm_from([(c, 0), (d, 1), (step.exit_face, 2), (step.entry_face, 3)]));
    }
    // the walked gluings must realize the 2->3 model pattern
    let gperm = Perm4::new(G23).unwrap();
    for k in 0..3 {
        let sigma = t.gluing(link[k].tet, link[k].exit_face).perm;
        let lhs = rhos[(k + 1) % 3].compose(&sigma);
        let rhs = gperm.compose(&rhos[k]);
        if lhs != rhs {
            return Err(bad(MoveKind::M32, "link gluings do not match the 2->3 pattern"));
        }
    }
    Ok((tets, rhos))
}

fn m32(t: &Triangulation, tet: usize, a: u8, b: u8) -> Result<MoveResult, MoveError> {
    let (tets, rhos) = m32_frames(t, tet, a, b)?;
    let internal: Vec<[Option<Gluing>; 4]> = vec![
        [None, None, None, Some(Gluing { tet: 1, perm: Perm4::IDENTITY })],
        [None, None, None, Some(Gluing { tet: 0, perm: Perm4::IDENTITY })],
    ];
    let mut boundary = Vec::new();
    for k in 0..3u8 {
        let rho = rhos[k as usize];
        let tk = tets[k as usize];
        // model face 1 of T_k (opposite the edge head) lands on face k of A
        let phi_a = perm_from([(0, 3), (1, k), (2, (k + 1) % 3), (3, (k + 2) % 3)]);
        boundary.push(((tk, rho.inverse().apply(1)), 0, phi_a.compose(&rho)));
        // model face 0 lands on face k of B
        let phi_b = perm_from([(1, 3), (0, k), (2, (k + 1) % 3), (3, (k + 2) % 3)]);
        boundary.push(((tk, rho.inverse().apply(0)), 1, phi_b.compose(&rho)));
    }
    let region = Region { t, removed: tets.clone(), internal, boundary, pairs: vec![] };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    let k = tet_map.iter().flatten().count();
    let inverse = (MoveKind::M23, Site::Face { tet: new_tets[0], face: 3 });
    Ok(MoveResult {
        face_map: region.face_map(k),
        merged_faces: vec![],
        tri,
        tet_map,
        new_tets,
        inverse,
    })
}

fn m14(t: &Triangulation, tet: usize) -> Result<MoveResult, MoveError> {
    if tet >= t.n_tets() {
        return Err(bad(MoveKind::M14, "no such tetrahedron"));
    }
    let mut internal: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; 4];
    for v in 0..4usize {
        for u in 0..4usize {
            if u != v {
                internal[v][u] = Some(Gluing {
                    tet: u,
                    perm: Perm4::transposition(u as u8, v as u8),
                });
            }
        }
    }
    let boundary = (0..4u8).map(|v| ((tet, v), v as usize, Perm4::IDENTITY)).collect();
    let region = Region { t, removed: vec![tet], internal, boundary, pairs: vec![] };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    let k = tet_map.iter().flatten().count();
    let inverse = (MoveKind::M41, Site::Vertex { tet: new_tets[0], v: 0 });
    Ok(MoveResult {
        face_map: region.face_map(k),
        merged_faces: vec![],
        tri,
        tet_map,
        new_tets,
        inverse,
    })
}

/// Standardizing maps for a 4->1 star: tets[v] plays the model child with the
/// interior vertex at slot v; rho[v] maps actual labels to model labels.
fn m41_frames(
    t: &Triangulation,
    t0: usize,
    s0: u8,
) -> Result<(Vec<usize>, Vec<Perm4>), MoveError> {
    let rest: Vec<u8> = (0..4u8).filter(|&x| x != s0).collect();
    let rho0 = perm_from([(s0, 0), (rest[0], 1), (rest[1], 2), (rest[2], 3)]);
    let mut tets = vec![t0, 0, 0, 0];
    let mut rhos = vec![rho0, Perm4::IDENTITY, Perm4::IDENTITY, Perm4::IDENTITY];
    for u in 1..4u8 {
        let g = t.gluing(t0, rho0.inverse().apply(u));
        tets[u as usize] = g.tet;
        rhos[u as usize] = Perm4::transposition(0, u).compose(&rho0).compose(&g.perm.inverse());
    }
    for u in 0..4 {
        for v in 0..4 {
            if u != v && tets[u] == tets[v] {
                return Err(bad(MoveKind::M41, "star tetrahedra must be pairwise distinct"));
            }
        }
    }
    for u in 0..4u8 {
        for v in 0..4u8 {
            if u == v {
                continue;
            }
            let g = t.gluing(tets[u as usize], rhos[u as usize].inverse().apply(v));
            let want = rhos[v as usize]
                .inverse()
                .compose(&Perm4::transposition(u, v))
                .compose(&rhos[u as usize]);
            if g.tet != tets[v as usize] || g.perm != want {
                return Err(bad(MoveKind::M41, "star gluings do not match the 1->4 pattern"));
            }
        }
    }
    Ok((tets, rhos))
}

fn m41(t: &Triangulation, t0: usize, s0: u8) -> Result<MoveResult, MoveError> {
    let (tets, rhos) = m41_frames(t, t0, s0)?;
    let internal: Vec<[Option<Gluing>; 4]> = vec![[None; 4]];
    let boundary = (0..4u8)
        .map(|v| {
            let tv = tets[v as usize];
            let rv = rhos[v as usize];
            ((tv, rv.inverse().apply(v)), 0, rv)
        })
        .collect();
    let region = Region { t, removed: tets.clone(), internal, boundary, pairs: vec![] };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    let k = tet_map.iter().flatten().count();
    let inverse = (MoveKind::M14, Site::Tet { tet: new_tets[0] });
    Ok(MoveResult {
        face_map: region.face_map(k),
        merged_faces: vec![],
        tri,
        tet_map,
        new_tets,
        inverse,
    })
}

fn m02t(t: &Triangulation, i: usize, f: u8) -> Result<MoveResult, MoveError> {
    if i >= t.n_tets() {
        return Err(bad(MoveKind::M02T, "no such face"));
    }
    let g = t.gluing(i, f);
    let (j, sigma) = (g.tet, g.perm);
    let fj = sigma.apply(f);
    let s: Vec<u8> = (0..4u8).filter(|&v| v != f).collect();
    let n = t.n_tets();
    let (p_idx, q_idx) = (n, n + 1);
    let phi = perm_from([(s[0], 0), (s[1], 1), (s[2], 2), (f, 3)]);
    let psi = perm_from([
        (sigma.apply(s[0]), 0),
        (sigma.apply(s[1]), 1),
        (sigma.apply(s[2]), 2),
        (fj, 3),
    ]);
    let mut gluings = t.gluings().to_vec();
    gluings[i][f as usize] = Gluing { tet: p_idx, perm: phi };
    gluings[j][fj as usize] = Gluing { tet: q_idx, perm: psi };
    let mut p_row = [Gluing { tet: q_idx, perm: Perm4::IDENTITY }; 4];
    p_row[3] = Gluing { tet: i, perm: phi.inverse() };
    let mut q_row = [Gluing { tet: p_idx, perm: Perm4::IDENTITY }; 4];
    q_row[3] = Gluing { tet: j, perm: psi.inverse() };
    gluings.push(p_row);
    gluings.push(q_row);
    let tri = Triangulation::validate(&RawTriangulation {
        name: t.name().to_string(),
        gluings,
    })
    .expect("triangular pillow insertion must stay valid");
    Ok(MoveResult {
        tri,
        tet_map: (0..n).map(Some).collect(),
        new_tets: vec![p_idx, q_idx],
        face_map: vec![((i, f), (p_idx, 3), phi), ((j, fj), (q_idx, 3), psi)],
        merged_faces: vec![],
        inverse: (MoveKind::M20T, Site::Vertex { tet: p_idx, v: 3 }),
    })
}

/// Standardize a triangular pillow around interior vertex (p, wp): returns
/// (p, q, rho_p, rho_q) with rho mapping actual labels to the model (pillow
/// faces 0,1,2 glued by the identity, outer faces 3).
fn m20t_frames(
    t: &Triangulation,
    p: usize,
    wp: u8,
) -> Result<(usize, Perm4, Perm4), MoveError> {
    let rest: Vec<u8> = (0..4u8).filter(|&v| v != wp).collect();
    let rho_p = perm_from([(rest[0], 0), (rest[1], 1), (rest[2], 2), (wp, 3)]);
    let g0 = t.gluing(p, rho_p.inverse().apply(0));
    let q = g0.tet;
    if q == p {
        return Err(bad(MoveKind::M20T, "pillow must consist of two distinct tets"));
    }
    let rho_q = rho_p.compose(&g0.perm.inverse());
    for k in 0..3u8 {
        let g = t.gluing(p, rho_p.inverse().apply(k));
        let want = rho_q.inverse().compose(&rho_p);
        if g.tet != q || g.perm != want {
            return Err(bad(MoveKind::M20T, "gluings do not match the triangular pillow"));
        }
    }
    // outer faces must attach to tets outside the pillow
    let outer_p = rho_p.inverse().apply(3);
    let outer_q = rho_q.inverse().apply(3);
    let np = t.gluing(p, outer_p);
    let nq = t.gluing(q, outer_q);
    if np.tet == p || np.tet == q || nq.tet == p || nq.tet == q {
        return Err(bad(MoveKind::M20T, "pillow outer faces glue back into the pillow"));
    }
    Ok((q, rho_p, rho_q))
}

fn m20t(t: &Triangulation, p: usize, wp: u8) -> Result<MoveResult, MoveError> {
    let (q, rho_p, rho_q) = m20t_frames(t, p, wp)?;
    let outer_p = rho_p.inverse().apply(3);
    let outer_q = rho_q.inverse().apply(3);
    let region = Region {
        t,
        removed: vec![p, q],
        internal: vec![],
        boundary: vec![],
        pairs: vec![((p, outer_p), (q, outer_q), rho_q.inverse().compose(&rho_p))],
    };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    let np = t.gluing(p, outer_p);
    let inv_tet = tet_map[np.tet].expect("outer neighbor is kept");
    let inv_face = np.perm.apply(outer_p);
    Ok(MoveResult {
        tri,
        tet_map,
        new_tets,
        face_map: vec![],
        merged_faces: vec![((p, outer_p), (q, outer_q))],
        inverse: (MoveKind::M02T, Site::Face { tet: inv_tet, face: inv_face }),
    })
}

/// Face side crossed while exiting link step `s`.
fn exit_side(step: &crate::skeleta::LinkStep) -> (usize, u8) {
    (step.tet, step.exit_face)
}

/// The two sides of the face class containing side (i, f).
fn face_sides(t: &Triangulation, i: usize, f: u8) -> [(usize, u8); 2] {
    let g = t.gluing(i, f);
    [(i, f), (g.tet, g.perm.apply(f))]
}

fn m02q(
    t: &Triangulation,
    tet: usize,
    a: u8,
    b: u8,
    p: usize,
    q: usize,
) -> Result<MoveResult, MoveError> {
    let link = edge_link(t, (tet, a, b));
    let l = link.len();
    if p >= l || q >= l || p == q {
        return Err(bad(MoveKind::M02Q, "positions must be distinct link indices"));
    }
    let last = &link[l - 1];
    let gl = t.gluing(last.tet, last.exit_face);
    if (gl.perm.apply(last.edge.0), gl.perm.apply(last.edge.1)) != (a, b) {
        return Err(bad(MoveKind::M02Q, "edge class is orientation-inconsistent"));
    }
    let f1 = face_sides(t, link[p].tet, link[p].exit_face);
    let f2 = face_sides(t, link[q].tet, link[q].exit_face);
    if f1.contains(&f2[0]) || f1.contains(&f2[1]) {
        return Err(bad(MoveKind::M02Q, "the two crossed faces must be distinct classes"));
    }
    let n = t.n_tets();
    let (a_idx, b_idx) = (n, n + 1);
    let sp = &link[p];
    let sp1 = &link[(p + 1) % l];
    let sq = &link[q];
    let sq1 = &link[(q + 1) % l];
    // pillow model: 0,1 = the central edge, 2 = apex of the p-face, 3 = apex
    // of the q-face; A takes the arc p+1..q, B the arc q+1..p
    let phi_a3 = perm_from([
        (sp1.edge.0, 0),
        (sp1.edge.1, 1),
        (sp1.exit_face, 2),
        (sp1.entry_face, 3),
    ]);
    let phi_a2 = perm_from([
        (sq.edge.0, 0),
        (sq.edge.1, 1),
        (sq.entry_face, 3),
        (sq.exit_face, 2),
    ]);
    let phi_b3 = perm_from([
        (sp.edge.0, 0),
        (sp.edge.1, 1),
        (sp.entry_face, 2),
        (sp.exit_face, 3),
    ]);
    let phi_b2 = perm_from([
        (sq1.edge.0, 0),
        (sq1.edge.1, 1),
        (sq1.exit_face, 3),
        (sq1.entry_face, 2),
    ]);
    let mut gluings = t.gluings().to_vec();
    let a_row: [Gluing; 4] = [
        Gluing { tet: b_idx, perm: Perm4::IDENTITY },
        Gluing { tet: b_idx, perm: Perm4::IDENTITY },
        Gluing { tet: sq.tet, perm: phi_a2.inverse() },
        Gluing { tet: sp1.tet, perm: phi_a3.inverse() },
    ];
    let b_row: [Gluing; 4] = [
        Gluing { tet: a_idx, perm: Perm4::IDENTITY },
        Gluing { tet: a_idx, perm: Perm4::IDENTITY },
        Gluing { tet: sq1.tet, perm: phi_b2.inverse() },
        Gluing { tet: sp.tet, perm: phi_b3.inverse() },
    ];
    gluings[sp1.tet][sp1.entry_face as usize] = Gluing { tet: a_idx, perm: phi_a3 };
    gluings[sq.tet][sq.exit_face as usize] = Gluing { tet: a_idx, perm: phi_a2 };
    gluings[sp.tet][sp.exit_face as usize] = Gluing { tet: b_idx, perm: phi_b3 };
    gluings[sq1.tet][sq1.entry_face as usize] = Gluing { tet: b_idx, perm: phi_b2 };
    gluings.push(a_row);
    gluings.push(b_row);
    let tri = Triangulation::validate(&RawTriangulation {
        name: t.name().to_string(),
        gluings,
    })
    .expect("lune insertion must stay valid");
    Ok(MoveResult {
        tri,
        tet_map: (0..n).map(Some).collect(),
        new_tets: vec![a_idx, b_idx],
        face_map: vec![
            ((sp1.tet, sp1.entry_face), (a_idx, 3), phi_a3),
            ((sq.tet, sq.exit_face), (a_idx, 2), phi_a2),
            ((sp.tet, sp.exit_face), (b_idx, 3), phi_b3),
            ((sq1.tet, sq1.entry_face), (b_idx, 2), phi_b2),
        ],
        merged_faces: vec![],
        inverse: (MoveKind::M20Q, Site::Edge { tet: a_idx, a: 2, b: 3 }),
    })
}

/// Standardize a lune (quadrilateral pillow) around the valence-2 edge
/// embedding (tet, a, b): returns (tet_a, tet_b, rho_a, rho_b) mapping actual
/// labels to the model where the edge is 23, internal faces 0,1.
fn m20q_frames(
    t: &Triangulation,
    tet: usize,
    a: u8,
    b: u8,
) -> Result<(usize, usize, Perm4, Perm4), MoveError> {
    let link = edge_link(t, (tet, a, b));
    if link.len() != 2 {
        return Err(bad(MoveKind::M20Q, format!("edge has valence {}", link.len())));
    }
    let (s0, s1) = (&link[0], &link[1]);
    if s0.tet == s1.tet {
        return Err(bad(MoveKind::M20Q, "pillow must consist of two distinct tets"));
    }
    let gl = t.gluing(s1.tet, s1.exit_face);
    if (gl.perm.apply(s1.edge.0), gl.perm.apply(s1.edge.1)) != (a, b) {
        return Err(bad(MoveKind::M20Q, "edge class is orientation-inconsistent"));
    }
    let rho_a = perm_from([
        (s0.edge.0, 2),
        (s0.edge.1, 3),
        (s0.exit_face, 0),
        (s0.entry_face, 1),
    ]);
    let rho_b = perm_from([
        (s1.edge.0, 2),
        (s1.edge.1, 3),
        (s1.exit_face, 1),
        (s1.entry_face, 0),
    ]);
    // both internal gluings must be the model identity
    let g0 = t.gluing(s0.tet, s0.exit_face);
    if g0.tet != s1.tet || rho_b.compose(&g0.perm) != rho_a {
        return Err(bad(MoveKind::M20Q, "gluings do not match the lune pattern"));
    }
    let g1 = t.gluing(s1.tet, s1.exit_face);
    if g1.tet != s0.tet || rho_a.compose(&g1.perm) != rho_b {
        return Err(bad(MoveKind::M20Q, "gluings do not match the lune pattern"));
    }
    // outer faces must attach outside the pillow
    for (tt, rho) in [(s0.tet, rho_a), (s1.tet, rho_b)] {
        for mf in [2u8, 3] {
            let g = t.gluing(tt, rho.inverse().apply(mf));
            if g.tet == s0.tet || g.tet == s1.tet {
                return Err(bad(MoveKind::M20Q, "lune outer faces glue back into the lune"));
            }
        }
    }
    Ok((s0.tet, s1.tet, rho_a, rho_b))
}

fn m20q(t: &Triangulation, tet: usize, a: u8, b: u8) -> Result<MoveResult, MoveError> {
    let (ta, tb, rho_a, rho_b) = m20q_frames(t, tet, a, b)?;
    let pair_perm = rho_b.inverse().compose(&rho_a);
    let (oa3, ob3) = (rho_a.inverse().apply(3), rho_b.inverse().apply(3));
    let (oa2, ob2) = (rho_a.inverse().apply(2), rho_b.inverse().apply(2));
    let region = Region {
        t,
        removed: vec![ta, tb],
        internal: vec![],
        boundary: vec![],
        pairs: vec![((ta, oa3), (tb, ob3), pair_perm), ((ta, oa2), (tb, ob2), pair_perm)],
    };
    let (tri, tet_map, new_tets) = region.rewrite(t.name());
    // inverse: re-create the lune from the merged faces. A crossing is pinned
    // by (neighbor side, oriented central edge in neighbor labels), because a
    // single face side can contain the central edge class twice.
    let flag = |pt: usize, pf: u8, rho: Perm4| -> ((usize, u8), (u8, u8)) {
        let g = t.gluing(pt, pf);
        let side = (tet_map[g.tet].expect("outer neighbor is kept"), g.perm.apply(pf));
        let e = (
            g.perm.apply(rho.inverse().apply(0)),
            g.perm.apply(rho.inverse().apply(1)),
        );
        (side, e)
    };
    let (side_a3, e_a3) = flag(ta, oa3, rho_a);
    let (side_b3, e_b3) = flag(tb, ob3, rho_b);
    let (side_a2, e_a2) = flag(ta, oa2, rho_a);
    let (side_b2, e_b2) = flag(tb, ob2, rho_b);
    let (nb, (ea, eb)) = (side_a3.0, e_a3);
    let new_link = edge_link(&tri, (nb, ea, eb));
    let find = |side: (usize, u8), e: (u8, u8)| {
        new_link
            .iter()
            .position(|s| exit_side(s) == side && s.edge == e)
    };
    // the rebuilt walk runs in one of the two rotational directions; pick the
    // flag pairing matching it
    let inverse_site = if let (Some(p), Some(q)) = (find(side_b3, e_b3), find(side_a2, e_a2)) {
        Site::Lune { tet: nb, a: ea, b: eb, p, q }
    } else if let (Some(p), Some(q)) = (find(side_a3, e_a3), find(side_b2, e_b2)) {
        Site::Lune { tet: nb, a: ea, b: eb, p, q }
    } else {
        panic!("merged faces must be crossed by the new link");
    };
    Ok(MoveResult {
        tri,
        tet_map,
        new_tets,
        face_map: vec![],
        merged_faces: vec![((ta, oa3), (tb, ob3)), ((ta, oa2), (tb, ob2))],
        inverse: (MoveKind::M02Q, inverse_site),
    })
}

/// All sites where `kind` applies, in a deterministic order.
pub fn enumerate_sites(t: &Triangulation, sk: &Skeleta, kind: MoveKind) -> Vec<Site> {
    let mut out = Vec::new();
    match kind {
        MoveKind::M23 => {
            for fc in &sk.face_classes {
                if fc.sides[0].0 != fc.sides[1].0 {
                    out.push(Site::Face { tet: fc.sides[0].0, face: fc.sides[0].1 });
                }
            }
        }
        MoveKind::M32 => {
            for ec in &sk.edge_classes {
                if ec.valence != 3 || !ec.orientation_consistent {
                    continue;
                }
                let (tet, a, b) = ec.embeddings[0];
                if m32_frames(t, tet, a, b).is_ok() {
                    out.push(Site::Edge { tet, a, b });
                }
            }
        }
        MoveKind::M14 => {
            for tet in 0..t.n_tets() {
                out.push(Site::Tet { tet });
            }
        }
        MoveKind::M41 => {
            let material = material_vertices(t, sk);
            for vc in &sk.vertex_classes {
                if vc.embeddings.len() != 4 || !material[vc.index] {
                    continue;
                }
                let (tet, v) = vc.embeddings[0];
                if m41_frames(t, tet, v).is_ok() {
                    out.push(Site::Vertex { tet, v });
                }
            }
        }
        MoveKind::M02T => {
            for fc in &sk.face_classes {
                out.push(Site::Face { tet: fc.sides[0].0, face: fc.sides[0].1 });
            }
        }
        MoveKind::M20T => {
            for vc in &sk.vertex_classes {
                if vc.embeddings.len() != 2 {
                    continue;
                }
                let (tet, v) = vc.embeddings[0];
                if m20t_frames(t, tet, v).is_ok() {
                    out.push(Site::Vertex { tet, v });
                }
            }
        }
        MoveKind::M02Q => {
            for ec in &sk.edge_classes {
                if !ec.orientation_consistent {
                    continue;
                }
                let (tet, a, b) = ec.embeddings[0];
                let link = edge_link(t, (tet, a, b));
                for p in 0..link.len() {
                    for q in p + 1..link.len() {
                        let cp = sk.face_class_of(link[p].tet, link[p].exit_face);
                        let cq = sk.face_class_of(link[q].tet, link[q].exit_face);
                        if cp != cq {
                            out.push(Site::Lune { tet, a, b, p, q });
                        }
                    }
                }
            }
        }
        MoveKind::M20Q => {
            for ec in &sk.edge_classes {
                if ec.valence != 2 || !ec.orientation_consistent {
                    continue;
                }
                let (tet, a, b) = ec.embeddings[0];
                if m20q_frames(t, tet, a, b).is_ok() {
                    out.push(Site::Edge { tet, a, b });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;
    use crate::sig::signature;

    #[test]
    fn m23_m32_round_trip_on_m004() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let sites = enumerate_sites(&t, &sk, MoveKind::M23);
        assert_eq!(sites.len(), 4, "all four face classes of m004 join two tets");
        let sig0 = signature(&t).to_string();
        for site in sites {
            let r = apply(&t, MoveKind::M23, site).unwrap();
            assert_eq!(r.tri.n_tets(), 3);
            let (ik, is) = r.inverse;
            assert_eq!(ik, MoveKind::M32);
            let back = apply(&r.tri, ik, is).unwrap();
            assert_eq!(signature(&back.tri).to_string(), sig0);
        }
    }

    #[test]
    fn m23_creates_valence_three_edge() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let site = enumerate_sites(&t, &sk, MoveKind::M23)[0];
        let r = apply(&t, MoveKind::M23, site).unwrap();
        let sk2 = Skeleta::compute(&r.tri);
        let e = sk2.edge_class_of(r.new_tets[0], 0, 1);
        assert_eq!(sk2.edge_classes[e].valence, 3);
        assert_eq!(sk2.n_edges(), sk.n_edges() + 1);
        assert_eq!(sk2.n_faces(), sk.n_faces() + 2);
    }

    #[test]
    fn m14_m41_round_trip() {
        let t = load_fixture("m004");
        let sig0 = signature(&t).to_string();
        let r = apply(&t, MoveKind::M14, Site::Tet { tet: 1 }).unwrap();
        assert_eq!(r.tri.n_tets(), 5);
        let sk2 = Skeleta::compute(&r.tri);
        // the new vertex is material with a 4-tet star
        let vc = sk2.vertex_class_of(r.new_tets[0], 0);
        assert_eq!(sk2.vertex_classes[vc].embeddings.len(), 4);
        assert!(material_vertices(&r.tri, &sk2)[vc]);
        assert_eq!(sk2.n_edges(), Skeleta::compute(&t).n_edges() + 4);
        let (ik, is) = r.inverse;
        assert_eq!(ik, MoveKind::M41);
        let back = apply(&r.tri, ik, is).unwrap();
        assert_eq!(signature(&back.tri).to_string(), sig0);
    }

    #[test]
    fn m41_sites_found_after_m14() {
        let t = load_fixture("m003");
        let r = apply(&t, MoveKind::M14, Site::Tet { tet: 0 }).unwrap();
        let sk2 = Skeleta::compute(&r.tri);
        let sites = enumerate_sites(&r.tri, &sk2, MoveKind::M41);
        assert_eq!(sites.len(), 1);
    }

    #[test]
    fn m02t_m20t_round_trip() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let sig0 = signature(&t).to_string();
        for site in enumerate_sites(&t, &sk, MoveKind::M02T) {
            let r = apply(&t, MoveKind::M02T, site).unwrap();
            assert_eq!(r.tri.n_tets(), 4);
            let sk2 = Skeleta::compute(&r.tri);
            // one new material vertex of valence 2
            let vc = sk2.vertex_class_of(r.new_tets[0], 3);
            assert_eq!(sk2.vertex_classes[vc].embeddings.len(), 2);
            assert!(material_vertices(&r.tri, &sk2)[vc]);
            // pillow detectable
            assert!(!enumerate_sites(&r.tri, &sk2, MoveKind::M20T).is_empty());
            let (ik, is) = r.inverse;
            assert_eq!(ik, MoveKind::M20T);
            let back = apply(&r.tri, ik, is).unwrap();
            assert_eq!(signature(&back.tri).to_string(), sig0);
        }
    }

    #[test]
    fn m02q_m20q_round_trip() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let sig0 = signature(&t).to_string();
        let sites = enumerate_sites(&t, &sk, MoveKind::M02Q);
        assert!(!sites.is_empty());
        for site in sites {
            let r = apply(&t, MoveKind::M02Q, site).unwrap();
            assert_eq!(r.tri.n_tets(), 4);
            let sk2 = Skeleta::compute(&r.tri);
            // the new central edge has valence 2
            let e = sk2.edge_class_of(r.new_tets[0], 2, 3);
            assert_eq!(sk2.edge_classes[e].valence, 2);
            let (ik, is) = r.inverse;
            assert_eq!(ik, MoveKind::M20Q);
            let back = apply(&r.tri, ik, is).unwrap();
            assert_eq!(signature(&back.tri).to_string(), sig0);
        }
    }

    #[test]
    fn m20q_then_m02q_round_trip() {
        // forward-and-back in the other order: create a lune, remove it via
        // the enumerated site, then replay the returned inverse lune site
        let t = load_fixture("m003");
        let sk = Skeleta::compute(&t);
        let site = enumerate_sites(&t, &sk, MoveKind::M02Q)[0];
        let r = apply(&t, MoveKind::M02Q, site).unwrap();
        let sk1 = Skeleta::compute(&r.tri);
        let sig1 = signature(&r.tri).to_string();
        let down_sites = enumerate_sites(&r.tri, &sk1, MoveKind::M20Q);
        assert!(!down_sites.is_empty());
        for ds in down_sites {
            let r2 = apply(&r.tri, MoveKind::M20Q, ds).unwrap();
            let (ik, is) = r2.inverse;
            assert_eq!(ik, MoveKind::M02Q);
            let back = apply(&r2.tri, ik, is).unwrap();
            assert_eq!(signature(&back.tri).to_string(), sig1);
        }
    }

    #[test]
    fn m23_rejects_one_tet_faces() {
        let t = load_fixture("t1-torsion");
        let sk = Skeleta::compute(&t);
        assert!(enumerate_sites(&t, &sk, MoveKind::M23).is_empty());
        assert!(apply(&t, MoveKind::M23, Site::Face { tet: 0, face: 0 }).is_err());
    }

    #[test]
    fn chained_moves_stay_valid() {
        // grow and shrink: 2->3 twice, then 3->2 at the second new edge
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let s1 = enumerate_sites(&t, &sk, MoveKind::M23)[1];
        let r1 = apply(&t, MoveKind::M23, s1).unwrap();
        let sk1 = Skeleta::compute(&r1.tri);
        let s2 = enumerate_sites(&r1.tri, &sk1, MoveKind::M23);
        assert!(!s2.is_empty());
        let r2 = apply(&r1.tri, MoveKind::M23, s2[0]).unwrap();
        assert_eq!(r2.tri.n_tets(), 4);
        let (ik, is) = r2.inverse;
        let back = apply(&r2.tri, ik, is).unwrap();
        assert_eq!(
            signature(&back.tri).to_string(),
            signature(&r1.tri).to_string()
        );
    }
}

