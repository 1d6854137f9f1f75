//! The Euler cochain of a branched spine: d(R) = 1 - t(R) per region, where
//! 2 t(R) counts the boundary tangencies of the maw foliation along the
//! region boundary. Convention for the tangency count (the local tile-level
//! analysis is not pinned down combinatorially anywhere, so this is a fixed
//! documented rule): walking the region boundary, a tangency pair is charged
//! at a corner exactly when the two faces the corner crosses are both
//! outgoing for the induced pre-branching - equivalently the corner sits on
//! the diagonal edge joining the two ingoing face labels. Each tetrahedron
//! has one such corner, so the values sum to (#edge classes - #tets) = chi(M)
//! structurally, and the rule is validated through that identity plus
//! transit-invariance of the total.

use crate::decor::branching::Branching;
use crate::decor::omega::induced_prebranching;
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCochain {
    /// d(R) per edge class region
    pub values: Vec<i64>,
    pub total: i64,
}

pub fn euler_cochain(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
) -> EulerCochain {
    let pb = induced_prebranching(t, sk, b, eps);
    let outgoing: Vec<[bool; 4]> =
        (0..t.n_tets()).map(|i| std::array::from_fn(|f| !pb.ingoing(sk, i, f as u8))).collect();
    let values: Vec<i64> = sk
        .edge_classes
        .iter()
        .map(|ec| {
            let tangency_pairs = ec
                .link
                .iter()
                .filter(|s| outgoing[s.tet][s.entry_face as usize] && outgoing[s.tet][s.exit_face as usize])
                .count() as i64;
            1 - tangency_pairs
        })
        .collect();
    let total = values.iter().sum();
    assert_eq!(total, sk.chi(t), "Euler cochain values must sum to chi(M)");
    EulerCochain { values, total }
}
