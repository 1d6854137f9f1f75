//! Decorations as chains on the dual spine complex and on the triangulation:
//! a pre-branching is a 1-chain (one sign per 1-cell against the reference
//! orientation), a branching orients every region and so gives a ±1 2-chain,
//! and the signed tetrahedra of a branched oriented triangulation form the
//! fundamental simplicial 3-cycle.

use crate::decor::branching::Branching;
use crate::decor::omega::face_votes;
use crate::decor::prebranching::PreBranching;
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

/// The pre-branching as a 1-chain: its sign convention (+1 runs from sides[0]
/// into sides[1]'s tet) is exactly the spine complex's reference orientation.
pub fn omega_chain(pb: &PreBranching) -> Vec<i64> {
    pb.signs.iter().map(|&s| s as i64).collect()
}

/// The branching as a ±1 2-chain: +1 on region e when the tangential
/// orientation induced by the b-direction of edge e (and the ambient
/// orientation) agrees with the reference orientation of the 2-cell, which is
/// the link-walk direction. Evaluated at the first link step; coherence along
/// the whole walk is a consequence of orientability and is checked by the
/// boundary identity d2 * region_chain = omega_chain(omega_b) in tests.
pub fn region_chain(t: &Triangulation, sk: &Skeleta, b: &Branching, eps: &[i8]) -> Vec<i8> {
    let _ = t;
    sk.edge_classes
        .iter()
        .map(|ec| {
            let step = &ec.link[0];
            let (lo, hi) = {
                let (x, y) = step.edge;
                if x < y { (x, y) } else { (y, x) }
            };
            let votes = face_votes(b, sk, eps, step.tet, step.exit_face);
            let (_, out) = votes
                .iter()
                .find(|&&((a, bb), _)| (a, bb) == (lo, hi))
                .expect("the crossed edge germ is one of the face's three");
            // the link walk exits this tet here, so agreement means the
            // b-oriented region boundary also runs out
            if *out { 1 } else { -1 }
        })
        .collect()
}

/// Signed contribution of side (tet, f) of a face class to the simplicial
/// boundary, against the class reference side (sides[0] with ascending
/// labels): (-1)^f times the parity of the carried vertex listing.
fn side_incidence(t: &Triangulation, sk: &Skeleta, tet: usize, f: u8) -> i64 {
    let c = sk.face_class_of(tet, f);
    let reference = sk.face_classes[c].sides[0];
    let tau = if (tet, f) == reference {
        1
    } else {
        let g = t.gluing(tet, f);
        let imgs: Vec<u8> = (0..4u8).filter(|&v| v != f).map(|v| g.perm.apply(v)).collect();
        let mut inv = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if imgs[i] > imgs[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    };
    let face_sign = if f % 2 == 0 { 1 } else { -1 };
    face_sign * tau
}

/// The fundamental 3-chain Z(T,b): one sign per tetrahedron, the b-sign under
/// the ambient orientation. Its simplicial boundary vanishes; the caller gets
/// both the chain and the boundary (for assertions).
pub fn fundamental_cycle(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
) -> (Vec<i8>, Vec<i64>) {
    let z: Vec<i8> = (0..t.n_tets())
        .map(|i| b.tet_sign(sk, i, eps).expect("branching must be transitive"))
        .collect();
    let mut boundary = vec![0i64; sk.n_faces()];
    for i in 0..t.n_tets() {
        for f in 0..4u8 {
            let c = sk.face_class_of(i, f);
            boundary[c] += z[i] as i64 * side_incidence(t, sk, i, f);
        }
    }
    (z, boundary)
}
