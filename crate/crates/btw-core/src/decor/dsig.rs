//! Canonical signatures of decorated triangulations: the decoration is
//! relabeled alongside each candidate frame and takes part in the
//! lexicographic minimum.

use super::branching::Branching;
use super::prebranching::PreBranching;
use crate::sig::{signature_with, IsoSignature, Relabeling};
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

fn relabeled(t: &Triangulation, relab: &Relabeling) -> Triangulation {
    let perms: Vec<_> = relab.perm_of_old.clone();
    t.relabel(&relab.tet_of_old, &perms)
}

pub fn branched_signature(t: &Triangulation, sk: &Skeleta, b: &Branching) -> IsoSignature {
    signature_with(
        t,
        Some(&|relab: &Relabeling| {
            let t2 = relabeled(t, relab);
            let sk2 = Skeleta::compute(&t2);
            sk2.edge_classes
                .iter()
                .map(|ec| {
                    let (nt, na, nb) = ec.embeddings[0];
                    let ot = relab.old_of_new[nt];
                    let inv = relab.perm_of_old[ot].inverse();
                    let (x, y) = (inv.apply(na), inv.apply(nb));
                    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                    let d = b.local_dir(sk, ot, lo, hi); // +1: lo -> hi
                    // direction of the new reference edge na -> nb in old terms
                    let fwd = if x < y { d } else { -d };
                    if fwd > 0 { 1u16 } else { 0 }
                })
                .collect()
        }),
    )
}

pub fn prebranched_signature(t: &Triangulation, sk: &Skeleta, pb: &PreBranching) -> IsoSignature {
    signature_with(
        t,
        Some(&|relab: &Relabeling| {
            let t2 = relabeled(t, relab);
            let sk2 = Skeleta::compute(&t2);
            sk2.face_classes
                .iter()
                .map(|fc| {
                    let (nt, nf) = fc.sides[0];
                    let ot = relab.old_of_new[nt];
                    let of = relab.perm_of_old[ot].inverse().apply(nf);
                    if pb.ingoing(sk, ot, of) { 1u16 } else { 0 }
                })
                .collect()
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::decor::prebranching::enumerate_prebranchings;
    use crate::fixtures::load_fixture;
    use crate::perm::Perm4;

    #[test]
    fn decorated_signatures_are_relabeling_invariant_and_separating() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let bs = enumerate_branchings(&t, &sk);
        let sigs: Vec<_> = bs.iter().map(|b| branched_signature(&t, &sk, b)).collect();
        // a relabeled copy must reproduce each decorated signature
        let perms = [Perm4::new([2, 0, 3, 1]).unwrap(), Perm4::new([1, 3, 0, 2]).unwrap()];
        let t2 = t.relabel(&[1, 0], &perms);
        let sk2 = Skeleta::compute(&t2);
        let sigs2: Vec<_> = enumerate_branchings(&t2, &sk2)
            .iter()
            .map(|b| branched_signature(&t2, &sk2, b))
            .collect();
        let mut a = sigs.clone();
        let mut b = sigs2.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);

        let pbs = enumerate_prebranchings(&t, &sk);
        let psigs: Vec<_> = pbs.iter().map(|p| prebranched_signature(&t, &sk, p)).collect();
        let psigs2: Vec<_> = enumerate_prebranchings(&t2, &sk2)
            .iter()
            .map(|p| prebranched_signature(&t2, &sk2, p))
            .collect();
        let mut a = psigs.clone();
        let mut b = psigs2.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
