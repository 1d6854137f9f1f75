//! Pre-branchings: an orientation of every 1-cell of the dual spine (one per
//! face class) such that each tetrahedron has exactly two ingoing and two
//! outgoing faces.

use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

/// One sign per face class: +1 orients the dual 1-cell from `sides[0]` into
/// the tet of `sides[1]`, -1 the other way.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreBranching {
    pub signs: Vec<i8>,
}

impl PreBranching {
    /// True if the dual 1-cell at face (tet, f) points into tet.
    pub fn ingoing(&self, sk: &Skeleta, tet: usize, f: u8) -> bool {
        let c = sk.face_class_of(tet, f);
        let fc = &sk.face_classes[c];
        let side1 = fc.sides[1] == (tet, f);
        (self.signs[c] > 0) == side1
    }

    /// Faces of tet with the dual 1-cell ingoing, ascending.
    pub fn ingoing_faces(&self, sk: &Skeleta, tet: usize) -> Vec<u8> {
        (0..4u8).filter(|&f| self.ingoing(sk, tet, f)).collect()
    }

    pub fn is_valid(&self, sk: &Skeleta, t: &Triangulation) -> bool {
        (0..t.n_tets()).all(|i| self.ingoing_faces(sk, i).len() == 2)
    }

    pub fn with_inverted(&self, c: usize) -> PreBranching {
        let mut signs = self.signs.clone();
        signs[c] = -signs[c];
        PreBranching { signs }
    }
}

/// All valid pre-branchings, lexicographic (+1 before -1).
pub fn enumerate_prebranchings(t: &Triangulation, sk: &Skeleta) -> Vec<PreBranching> {
    let n = sk.n_faces();
    let mut out = Vec::new();
    let mut signs = vec![1i8; n];
    backtrack(t, sk, &mut signs, 0, &mut out);
    out
}

fn backtrack(t: &Triangulation, sk: &Skeleta, signs: &mut Vec<i8>, c: usize, out: &mut Vec<PreBranching>) {
    let cand = PreBranching { signs: signs.clone() };
    for i in 0..t.n_tets() {
        let mut ins = 0;
        let mut outs = 0;
        for f in 0..4u8 {
            if sk.face_class_of(i, f) < c {
                if cand.ingoing(sk, i, f) {
                    ins += 1;
                } else {
                    outs += 1;
                }
            }
        }
        if ins > 2 || outs > 2 {
            return;
        }
    }
    if c == signs.len() {
        if cand.is_valid(sk, t) {
            out.push(cand);
        }
        return;
    }
    for s in [1i8, -1] {
        signs[c] = s;
        backtrack(t, sk, signs, c + 1, out);
    }
    signs[c] = 1;
}

/// The two oriented circuits through a tet pair the two ingoing with the two
/// outgoing germs. We fix the deterministic convention: the lowest-numbered
/// ingoing face pairs with the lowest-numbered outgoing face.
pub fn germ_pairing(pb: &PreBranching, sk: &Skeleta, tet: usize) -> [(u8, u8); 2] {
    let ins = pb.ingoing_faces(sk, tet);
    let outs: Vec<u8> = (0..4u8).filter(|f| !ins.contains(f)).collect();
    assert_eq!(ins.len(), 2, "germ_pairing needs a valid pre-branching");
    [(ins[0], outs[0]), (ins[1], outs[1])]
}

/// Oriented circuits of the pre-branched spine under the fixed pairing:
/// each circuit is a cyclic list of (tet, entry_face, exit_face).
pub fn circuits(pb: &PreBranching, sk: &Skeleta, t: &Triangulation) -> Vec<Vec<(usize, u8, u8)>> {
    let mut used = vec![false; 4 * t.n_tets()];
    let mut out = Vec::new();
    for i in 0..t.n_tets() {
        for f0 in 0..4u8 {
            if used[4 * i + f0 as usize] || !pb.ingoing(sk, i, f0) {
                continue;
            }
            let mut circuit = Vec::new();
            let (mut tet, mut entry) = (i, f0);
            loop {
                used[4 * tet + entry as usize] = true;
                let pairing = germ_pairing(pb, sk, tet);
                let exit = pairing
                    .iter()
                    .find(|&&(inn, _)| inn == entry)
                    .map(|&(_, out)| out)
                    .unwrap();
                circuit.push((tet, entry, exit));
                let g = t.gluing(tet, exit);
                tet = g.tet;
                entry = g.perm.apply(exit);
                if (tet, entry) == (i, f0) {
                    break;
                }
            }
            out.push(circuit);
        }
    }
    out
}

/// Swap the germ pairing at one tet: possible as a relation-preserving move
/// on pre-branched spines. Returns the circuits under the swapped pairing at
/// `tet` (pairing elsewhere unchanged). Purely diagnostic; the pre-branching
/// itself is unchanged by re-pairing.
pub fn circuits_with_swap(
    pb: &PreBranching,
    sk: &Skeleta,
    t: &Triangulation,
    swap_tet: usize,
) -> Vec<Vec<(usize, u8, u8)>> {
    let pairing_at = |tet: usize| -> [(u8, u8); 2] {
        let p = germ_pairing(pb, sk, tet);
        if tet == swap_tet {
            [(p[0].0, p[1].1), (p[1].0, p[0].1)]
        } else {
            p
        }
    };
    let mut used = vec![false; 4 * t.n_tets()];
    let mut out = Vec::new();
    for i in 0..t.n_tets() {
        for f0 in 0..4u8 {
            if used[4 * i + f0 as usize] || !pb.ingoing(sk, i, f0) {
                continue;
            }
            let mut circuit = Vec::new();
            let (mut tet, mut entry) = (i, f0);
            loop {
                used[4 * tet + entry as usize] = true;
                let pairing = pairing_at(tet);
                let exit = pairing
                    .iter()
                    .find(|&&(inn, _)| inn == entry)
                    .map(|&(_, out)| out)
                    .unwrap();
                circuit.push((tet, entry, exit));
                let g = t.gluing(tet, exit);
                tet = g.tet;
                entry = g.perm.apply(exit);
                if (tet, entry) == (i, f0) {
                    break;
                }
            }
            out.push(circuit);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::tri::{Gluing, Triangulation};

    fn doubled_tet() -> Triangulation {
        let g: Vec<[Gluing; 4]> = vec![
            std::array::from_fn(|_| Gluing { tet: 1, perm: Perm4::IDENTITY }),
            std::array::from_fn(|_| Gluing { tet: 0, perm: Perm4::IDENTITY }),
        ];
        Triangulation::from_gluings("double", g)
    }

    #[test]
    fn doubled_tet_prebranchings() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        assert_eq!(sk.n_faces(), 4);
        let pbs = enumerate_prebranchings(&t, &sk);
        // choose 2 of 4 dual edges to point into tet 1: C(4,2) = 6, and the
        // complementary condition at tet 0 is automatic here
        assert_eq!(pbs.len(), 6);
        for pb in &pbs {
            let circs = circuits(pb, &sk, &t);
            let total: usize = circs.iter().map(|c| c.len()).sum();
            assert_eq!(total, 4); // every germ traversed once
        }
    }

    #[test]
    fn brute_force_matches_backtracking() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let fast = enumerate_prebranchings(&t, &sk);
        let mut slow = Vec::new();
        for mask in 0..(1u32 << sk.n_faces()) {
            let signs: Vec<i8> =
                (0..sk.n_faces()).map(|c| if mask >> c & 1 == 0 { 1 } else { -1 }).collect();
            let pb = PreBranching { signs };
            if pb.is_valid(&sk, &t) {
                slow.push(pb);
            }
        }
        assert_eq!(fast.len(), slow.len());
    }
}
