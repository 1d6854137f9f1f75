//! The pre-branching induced by a branching: each 2-cell region of the dual
//! spine (dual to an edge) is oriented transversally by the branched edge, and
//! on every 1-cell (dual to a face) two of the three adjacent regions induce
//! the same direction. That prevailing direction is the induced pre-branching;
//! the odd germ out is the "maw" of the 1-cell at that end.
//!
//! Computed with an exact integer model of the tetrahedron: vertices at
//! (0,0,0),(12,0,0),(0,12,0),(0,0,12), region dual to edge e spanned by the
//! two adjacent face centroids, the barycenter, and the midpoint of e.

use super::branching::Branching;
use super::prebranching::PreBranching;
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

const MODEL: [[i64; 3]; 4] = [[0, 0, 0], [12, 0, 0], [0, 12, 0], [0, 0, 12]];

fn sub(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn face_centroid(f: u8) -> [i64; 3] {
    let mut c = [0i64; 3];
    for v in 0..4u8 {
        if v != f {
            for k in 0..3 {
                c[k] += MODEL[v as usize][k];
            }
        }
    }
    [c[0] / 3, c[1] / 3, c[2] / 3]
}

const CENT: [i64; 3] = [3, 3, 3];

/// For the region dual to edge {a,b} (a<b) in the model tet: the sign of the
/// quad (cent, m_x, mid, m_y) boundary cycle against the normal a->b, where
/// {x,y} (x<y) is the complementary pair. Positive means the region boundary
/// runs out of the tet at face x and into it at face y.
fn region_model_sign(a: u8, b: u8) -> i8 {
    let (x, _y) = {
        let mut c = (0..4u8).filter(|v| *v != a && *v != b);
        (c.next().unwrap(), c.next().unwrap())
    };
    let mid = {
        let (pa, pb) = (MODEL[a as usize], MODEL[b as usize]);
        [(pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2, (pa[2] + pb[2]) / 2]
    };
    let n = cross(sub(face_centroid(x), CENT), sub(mid, CENT));
    let u = sub(MODEL[b as usize], MODEL[a as usize]);
    let d = dot(n, u);
    assert!(d != 0);
    if d > 0 { 1 } else { -1 }
}

/// Votes at face f of a single tet with local edge directions `dirs` (called
/// with a < b, +1 meaning a -> b) and orientation sign `eps`: for each of the
/// three edges of f, whether that edge's region boundary runs out at f.
fn votes_at(dirs: &dyn Fn(u8, u8) -> i8, eps: i8, f: u8) -> [((u8, u8), bool); 3] {
    let verts: Vec<u8> = (0..4u8).filter(|v| *v != f).collect();
    let mut out = [((0u8, 0u8), false); 3];
    let mut k = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, bb) = (verts[i], verts[j]);
            let (x, y) = {
                let mut c = (0..4u8).filter(|v| *v != a && *v != bb);
                (c.next().unwrap(), c.next().unwrap())
            };
            let sign = region_model_sign(a, bb) * dirs(a, bb) * eps;
            let votes_out = if f == x { sign > 0 } else { sign < 0 };
            debug_assert!(f == x || f == y);
            out[k] = ((a, bb), votes_out);
            k += 1;
        }
    }
    out
}

/// Votes at face f of tet: for each of the three edges of f, whether that
/// edge's region boundary runs out of the tet at f.
pub fn face_votes(
    b: &Branching,
    sk: &Skeleta,
    eps: &[i8],
    tet: usize,
    f: u8,
) -> [((u8, u8), bool); 3] {
    votes_at(&|a, bb| b.local_dir(sk, tet, a, bb), eps[tet], f)
}

/// The in/out pattern of one branched tetrahedron in isolation: per face,
/// whether the prevailing direction is outgoing.
pub fn tet_pattern(dirs: &dyn Fn(u8, u8) -> i8, eps: i8) -> [bool; 4] {
    std::array::from_fn(|f| {
        let votes = votes_at(dirs, eps, f as u8);
        let outs = votes.iter().filter(|&&(_, o)| o).count();
        assert!(outs == 1 || outs == 2, "branched region votes must split 2-1");
        outs == 2
    })
}

/// The prevailing direction at face f of tet: true if outgoing, plus the maw
/// edge (the minority region). Panics unless the vote is 2 to 1, which holds
/// for every branching.
pub fn prevailing(
    b: &Branching,
    sk: &Skeleta,
    eps: &[i8],
    tet: usize,
    f: u8,
) -> (bool, (u8, u8)) {
    let votes = face_votes(b, sk, eps, tet, f);
    let outs = votes.iter().filter(|&&(_, o)| o).count();
    assert!(outs == 1 || outs == 2, "branched region votes must split 2-1");
    let majority_out = outs == 2;
    let maw = votes.iter().find(|&&(_, o)| o != majority_out).unwrap().0;
    (majority_out, maw)
}

/// The pre-branching induced by b. Panics if the two sides of a face class
/// disagree, which cannot happen for a branching on an oriented triangulation.
pub fn induced_prebranching(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
) -> PreBranching {
    let mut signs = vec![0i8; sk.n_faces()];
    for fc in &sk.face_classes {
        let (t0, f0) = fc.sides[0];
        let (t1, f1) = fc.sides[1];
        let (out0, _) = prevailing(b, sk, eps, t0, f0);
        let (out1, _) = prevailing(b, sk, eps, t1, f1);
        assert!(out0 != out1, "the two sides of a face must induce one direction");
        // +1 orients the dual 1-cell from sides[0] into sides[1]'s tet
        signs[fc.index] = if out0 { 1 } else { -1 };
    }
    let pb = PreBranching { signs };
    assert!(pb.is_valid(sk, t), "an induced pre-branching is always 2-in 2-out");
    pb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::perm::Perm4;
    use crate::skeleta::orient;
    use crate::tri::{Gluing, Triangulation};

    fn doubled_tet() -> Triangulation {
        let g: Vec<[Gluing; 4]> = vec![
            std::array::from_fn(|_| Gluing { tet: 1, perm: Perm4::IDENTITY }),
            std::array::from_fn(|_| Gluing { tet: 0, perm: Perm4::IDENTITY }),
        ];
        Triangulation::from_gluings("double", g)
    }

    #[test]
    fn every_branching_induces_a_prebranching() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        for b in enumerate_branchings(&t, &sk) {
            let pb = induced_prebranching(&t, &sk, &b, &eps);
            assert!(pb.is_valid(&sk, &t));
        }
    }

    #[test]
    fn reversing_the_branching_reverses_omega() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        for b in enumerate_branchings(&t, &sk) {
            let rev = Branching { signs: b.signs.iter().map(|s| -s).collect() };
            assert!(rev.is_valid(&sk, &t));
            let pb = induced_prebranching(&t, &sk, &b, &eps);
            let pbr = induced_prebranching(&t, &sk, &rev, &eps);
            let flipped: Vec<i8> = pb.signs.iter().map(|s| -s).collect();
            assert_eq!(pbr.signs, flipped);
        }
    }

    #[test]
    fn tet_pattern_depends_only_on_order_and_orientation() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        // the two tets carry the same vertex order but opposite ambient signs,
        // so their in/out patterns must be exact opposites face by face
        for b in enumerate_branchings(&t, &sk) {
            for f in 0..4u8 {
                let (o0, _) = prevailing(&b, &sk, &eps, 0, f);
                let (o1, _) = prevailing(&b, &sk, &eps, 1, f);
                assert_ne!(o0, o1);
            }
        }
    }
}
