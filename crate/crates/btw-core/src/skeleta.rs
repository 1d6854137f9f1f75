use crate::tri::Triangulation;
use serde::Serialize;

/// Local edges of a tetrahedron, indexed 0..6.
pub const EDGE_VERTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_VERTS.iter().position(|&e| e == (a, b)).unwrap()
}

/// One step of the cyclic traversal of an edge link. The traversal sits in
/// `tet`, where the edge class is embedded as the ordered pair `edge`
/// (orientation carried around from the representative embedding), and leaves
/// through `exit_face`. The link arc traversed runs from vertex `arc.0` to
/// vertex `arc.1` (the opposite edge of `edge` in `tet`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkStep {
    pub tet: usize,
    pub edge: (u8, u8),
    pub entry_face: u8,
    pub exit_face: u8,
    pub arc: (u8, u8),
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub index: usize,
    /// (tet, a, b) with a<b; every embedding of the class.
    pub embeddings: Vec<(usize, u8, u8)>,
    pub valence: usize,
    /// False if some identification glues the edge to itself reversing it.
    pub orientation_consistent: bool,
    /// Cyclic link traversal; length == valence.
    pub link: Vec<LinkStep>,
}

#[derive(Clone, Debug)]
pub struct FaceClass {
    pub index: usize,
    /// The two (tet, face) sides, sorted; sides[0] <= sides[1].
    pub sides: [(usize, u8); 2],
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    pub index: usize,
    pub embeddings: Vec<(usize, u8)>,
}

#[derive(Clone, Debug)]
pub struct Skeleta {
    pub edge_classes: Vec<EdgeClass>,
    pub face_classes: Vec<FaceClass>,
    pub vertex_classes: Vec<VertexClass>,
    /// (tet, local edge 0..6) -> (edge class, sign); sign is +1 when the
    /// canonical low->high direction of the local edge agrees with the class
    /// reference orientation (the representative's low->high direction).
    edge_of: Vec<[(usize, i8); 6]>,
    face_of: Vec<[usize; 4]>,
    vertex_of: Vec<[usize; 4]>,
}

struct UnionFind {
    parent: Vec<usize>,
    /// sign relative to parent
    sign: Vec<i8>,
    conflict: Vec<bool>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), sign: vec![1; n], conflict: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (root, s) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.sign[x] *= s;
        (root, self.sign[x])
    }

    /// Declare x ~ y with relative sign `rel` (orientation of y = rel * orientation of x).
    fn union(&mut self, x: usize, y: usize, rel: i8) {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            if sx * rel != sy {
                self.conflict[rx] = true;
            }
            return;
        }
        // attach ry under rx: sign(ry -> rx) must satisfy sy' = sx * rel
        self.parent[ry] = rx;
        self.sign[ry] = sx * rel * sy;
        self.conflict[rx] = self.conflict[rx] || self.conflict[ry];
    }
}

impl Skeleta {
    pub fn compute(t: &Triangulation) -> Skeleta {
        let n = t.n_tets();

        // --- edge classes ---
        let mut uf = UnionFind::new(6 * n);
        for i in 0..n {
            for f in 0..4u8 {
                let g = t.gluing(i, f);
                for &(a, b) in EDGE_VERTS.iter() {
                    if a == f || b == f {
                        continue;
                    }
                    let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                    let rel = if ia < ib { 1 } else { -1 };
                    uf.union(6 * i + edge_index(a, b), 6 * g.tet + edge_index(ia, ib), rel);
                }
            }
        }
        let mut edge_of = vec![[(usize::MAX, 0i8); 6]; n];
        let mut edge_classes: Vec<EdgeClass> = Vec::new();
        let mut root_to_class = std::collections::HashMap::new();
        for i in 0..n {
            for e in 0..6 {
                let (root, sign) = uf.find(6 * i + e);
                let idx = *root_to_class.entry(root).or_insert_with(|| {
                    let idx = edge_classes.len();
                    edge_classes.push(EdgeClass {
                        index: idx,
                        embeddings: Vec::new(),
                        valence: 0,
                        orientation_consistent: !uf.conflict[root],
                        link: Vec::new(),
                    });
                    idx
                });
                let (a, b) = EDGE_VERTS[e];
                edge_classes[idx].embeddings.push((i, a, b));
                edge_of[i][e] = (idx, sign);
            }
        }
        // Normalize signs so the first embedding of each class has sign +1.
        for c in edge_classes.iter() {
            let (i0, a0, b0) = c.embeddings[0];
            let s0 = edge_of[i0][edge_index(a0, b0)].1;
            if s0 == -1 {
                for &(i, a, b) in &c.embeddings {
                    edge_of[i][edge_index(a, b)].1 *= -1;
                }
            }
        }
        for c in edge_classes.iter_mut() {
            c.valence = c.embeddings.len();
            c.link = edge_link(t, c.embeddings[0]);
            debug_assert_eq!(c.link.len(), c.valence);
        }

        // --- face classes ---
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut face_classes = Vec::new();
        for i in 0..n {
            for f in 0..4u8 {
                if face_of[i][f as usize] != usize::MAX {
                    continue;
                }
                let g = t.gluing(i, f);
                let other = (g.tet, g.perm.apply(f));
                let idx = face_classes.len();
                let mut sides = [(i, f), other];
                sides.sort();
                face_classes.push(FaceClass { index: idx, sides });
                face_of[i][f as usize] = idx;
                face_of[other.0][other.1 as usize] = idx;
            }
        }

        // --- vertex classes ---
        let mut vuf = UnionFind::new(4 * n);
        for i in 0..n {
            for f in 0..4u8 {
                let g = t.gluing(i, f);
                for v in 0..4u8 {
                    if v == f {
                        continue;
                    }
                    vuf.union(4 * i + v as usize, 4 * g.tet + g.perm.apply(v) as usize, 1);
                }
            }
        }
        let mut vertex_of = vec![[usize::MAX; 4]; n];
        let mut vertex_classes: Vec<VertexClass> = Vec::new();
        let mut vroot_to_class = std::collections::HashMap::new();
        for i in 0..n {
            for v in 0..4u8 {
                let (root, _) = vuf.find(4 * i + v as usize);
                let idx = *vroot_to_class.entry(root).or_insert_with(|| {
                    let idx = vertex_classes.len();
                    vertex_classes.push(VertexClass { index: idx, embeddings: Vec::new() });
                    idx
                });
                vertex_classes[idx].embeddings.push((i, v));
                vertex_of[i][v as usize] = idx;
            }
        }

        Skeleta { edge_classes, face_classes, vertex_classes, edge_of, face_of, vertex_of }
    }

    pub fn edge_class_of(&self, tet: usize, a: u8, b: u8) -> usize {
        self.edge_of[tet][edge_index(a, b)].0
    }

    /// Sign of the low->high direction of local edge (a,b) of `tet` relative
    /// to the class reference orientation.
    pub fn edge_sign_of(&self, tet: usize, a: u8, b: u8) -> i8 {
        self.edge_of[tet][edge_index(a, b)].1
    }

    pub fn face_class_of(&self, tet: usize, face: u8) -> usize {
        self.face_of[tet][face as usize]
    }

    pub fn vertex_class_of(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[tet][v as usize]
    }

    pub fn n_edges(&self) -> usize {
        self.edge_classes.len()
    }

    pub fn n_faces(&self) -> usize {
        self.face_classes.len()
    }

    /// Combinatorial Euler characteristic of the underlying compact manifold
    /// (ideal case): #edge classes - #tetrahedra.
    pub fn chi(&self, t: &Triangulation) -> i64 {
        self.n_edges() as i64 - t.n_tets() as i64
    }
}

/// Cyclic traversal of the link of the edge embedded in `start` = (tet, a, b),
/// carrying the a->b orientation around.
pub fn edge_link(t: &Triangulation, start: (usize, u8, u8)) -> Vec<LinkStep> {
    let (tet0, a0, b0) = start;
    let others = |a: u8, b: u8| -> (u8, u8) {
        let mut o = [0u8; 2];
        let mut k = 0;
        for v in 0..4u8 {
            if v != a && v != b {
                o[k] = v;
                k += 1;
            }
        }
        (o[0], o[1])
    };
    let (c0, d0) = others(a0, b0);
    let mut steps = Vec::new();
    let (mut tet, mut a, mut b) = (tet0, a0, b0);
    let mut exit = c0.min(d0);
    let mut entry = c0.max(d0);
    loop {
        let (c, d) = others(a, b);
        // arc runs from the entry-side vertex to the vertex lying on the exit
        // face: the vertex on face `exit` is the one in {c,d} that is not `exit`.
        let head = if c == exit { d } else { c };
        let tail = if c == exit { c } else { d };
        steps.push(LinkStep { tet, edge: (a, b), entry_face: entry, exit_face: exit, arc: (tail, head) });
        let g = t.gluing(tet, exit);
        let (ntet, na, nb) = (g.tet, g.perm.apply(a), g.perm.apply(b));
        let nentry = g.perm.apply(exit);
        let (nc, nd) = others(na, nb);
        let nexit = if nc == nentry { nd } else { nc };
        tet = ntet;
        a = na;
        b = nb;
        entry = nentry;
        exit = nexit;
        if tet == tet0 && ((a, b) == (a0, b0) || (b, a) == (a0, b0)) && exit == c0.min(d0) {
            break;
        }
        if steps.len() > 6 * t.n_tets() {
            panic!("edge link traversal failed to close");
        }
    }
    steps
}

#[derive(Clone, Debug, Serialize)]
pub struct NonOrientable {
    /// A cycle of tetrahedra witnessing the parity conflict.
    pub witness: Vec<usize>,
}

/// Assign per-tetrahedron orientation signs so that every face gluing is
/// orientation-reversing as a map of oriented boundary triangles, i.e.
/// eps_i * eps_j * sign(perm) == -1. Deterministic: eps_0 = +1.
pub fn orient(t: &Triangulation) -> Result<Vec<i8>, NonOrientable> {
    let n = t.n_tets();
    let mut eps: Vec<i8> = vec![0; n];
    let mut pred: Vec<usize> = (0..n).collect();
    eps[0] = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for f in 0..4u8 {
            let g = t.gluing(i, f);
            let want = -eps[i] * g.perm.sign();
            if eps[g.tet] == 0 {
                eps[g.tet] = want;
                pred[g.tet] = i;
                queue.push_back(g.tet);
            } else if eps[g.tet] != want {
                // reconstruct a cycle through i and g.tet for the report
                let mut witness = vec![g.tet];
                let mut x = i;
                while x != pred[x] {
                    witness.push(x);
                    x = pred[x];
                }
                witness.push(x);
                return Err(NonOrientable { witness });
            }
        }
    }
    Ok(eps)
}

/// The boundary surface: link triangles, one per (tet, vertex), assembled
/// into closed surfaces, one per vertex class.
#[derive(Clone, Debug)]
pub struct BoundarySurface {
    pub components: Vec<BoundaryComponent>,
}

#[derive(Clone, Debug)]
pub struct BoundaryComponent {
    pub vertex_class: usize,
    pub n_triangles: usize,
    pub n_sides: usize,
    pub n_corners: usize,
    pub chi: i64,
}

impl BoundarySurface {
    pub fn total_chi(&self) -> i64 {
        self.components.iter().map(|c| c.chi).sum()
    }
}

pub fn boundary_surface(t: &Triangulation, sk: &Skeleta) -> BoundarySurface {
    let n = t.n_tets();
    // corner (i, v, u): the corner of link triangle (i,v) on the edge (v,u).
    let corner_id = |i: usize, v: u8, u: u8| -> usize {
        let u_slot = if u < v { u } else { u - 1 };
        12 * i + 3 * v as usize + u_slot as usize
    };
    let mut uf = UnionFind::new(12 * n);
    for i in 0..n {
        for f in 0..4u8 {
            let g = t.gluing(i, f);
            for v in 0..4u8 {
                if v == f {
                    continue;
                }
                for u in 0..4u8 {
                    if u == v || u == f {
                        continue;
                    }
                    uf.union(
                        corner_id(i, v, u),
                        corner_id(g.tet, g.perm.apply(v), g.perm.apply(u)),
                        1,
                    );
                }
            }
        }
    }
    let mut corner_roots_per_class: Vec<std::collections::HashSet<usize>> =
        vec![Default::default(); sk.vertex_classes.len()];
    let mut tris_per_class = vec![0usize; sk.vertex_classes.len()];
    for i in 0..n {
        for v in 0..4u8 {
            let cls = sk.vertex_class_of(i, v);
            tris_per_class[cls] += 1;
            for u in 0..4u8 {
                if u != v {
                    let (r, _) = uf.find(corner_id(i, v, u));
                    corner_roots_per_class[cls].insert(r);
                }
            }
        }
    }
    let mut components = Vec::new();
    for vc in &sk.vertex_classes {
        let f = tris_per_class[vc.index];
        let e = 3 * f / 2;
        let v = corner_roots_per_class[vc.index].len();
        components.push(BoundaryComponent {
            vertex_class: vc.index,
            n_triangles: f,
            n_sides: e,
            n_corners: v,
            chi: v as i64 - e as i64 + f as i64,
        });
    }
    BoundarySurface { components }
}

/// A vertex class is material when its link is a 2-sphere (it is a genuine
/// interior point of the compact manifold rather than an ideal vertex).
pub fn material_vertices(t: &Triangulation, sk: &Skeleta) -> Vec<bool> {
    let bs = boundary_surface(t, sk);
    let mut out = vec![false; sk.vertex_classes.len()];
    for c in &bs.components {
        out[c.vertex_class] = c.chi == 2;
    }
    out
}
