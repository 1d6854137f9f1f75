//! The branched boundary triangulation induced by a pre-branching.
//!
//! Per tetrahedron, the in/out face pattern together with the ambient sign
//! determines the vertex orders realizing it exactly up to cyclic rotation.
//! That cyclic class orients the equatorial square of the pre-branched
//! tetrahedron, and each link triangle t_v receives the total order
//! (predecessor of v, antipode of v, successor of v): the corner on the
//! incoming square edge is lowest, the corner on the diagonal edge is middle,
//! the corner on the outgoing square edge is highest. The orders agree across
//! all face gluings, giving a branching of the boundary triangulation that
//! depends only on the pre-branching.

use crate::decor::omega::tet_pattern;
use crate::decor::prebranching::PreBranching;
use crate::skeleta::{boundary_surface, Skeleta};
use crate::tri::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryBranching {
    /// per (tet, v): the other three labels in increasing boundary order
    pub orders: Vec<[[u8; 3]; 4]>,
}

impl BoundaryBranching {
    pub fn order(&self, tet: usize, v: u8) -> [u8; 3] {
        self.orders[tet][v as usize]
    }

    /// Rank (0, 1 or 2) of corner c_x inside triangle (tet, v).
    pub fn corner_rank(&self, tet: usize, v: u8, x: u8) -> usize {
        self.orders[tet][v as usize].iter().position(|&u| u == x).unwrap()
    }
}

/// The vertex orders of one tetrahedron realizing a given in/out pattern
/// under ambient sign eps: always exactly four, one cyclic class.
fn realizing_cycle(pattern: [bool; 4], eps: i8) -> [u8; 4] {
    let mut found: Vec<[u8; 4]> = Vec::new();
    // filter all tuples: 24 permutations among 256 candidates
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let perm = [a, b, c, d];
                    let mut s = perm;
                    s.sort();
                    if s != [0, 1, 2, 3] {
                        continue;
                    }
                    let mut rank = [0usize; 4];
                    for (pos, &v) in perm.iter().enumerate() {
                        rank[v as usize] = pos;
                    }
                    let dirs =
                        |x: u8, y: u8| -> i8 { if rank[x as usize] < rank[y as usize] { 1 } else { -1 } };
                    if tet_pattern(&dirs, eps) == pattern {
                        found.push(perm);
                    }
                }
            }
        }
    }
    assert_eq!(found.len(), 4, "each 2-2 pattern is realized by one cyclic class");
    let rep = found[0];
    for o in &found {
        let shift = o.iter().position(|&v| v == rep[0]).unwrap();
        assert!(
            (0..4).all(|k| o[(shift + k) % 4] == rep[k]),
            "realizing orders must be rotations of each other"
        );
    }
    rep
}

pub fn boundary_branching(
    t: &Triangulation,
    sk: &Skeleta,
    pb: &PreBranching,
    eps: &[i8],
) -> BoundaryBranching {
    let mut orders = Vec::with_capacity(t.n_tets());
    for i in 0..t.n_tets() {
        let pattern: [bool; 4] = std::array::from_fn(|f| !pb.ingoing(sk, i, f as u8));
        let cyc = realizing_cycle(pattern, eps[i]);
        let mut rank = [0usize; 4];
        for (pos, &v) in cyc.iter().enumerate() {
            rank[v as usize] = pos;
        }
        let tet_orders: [[u8; 3]; 4] = std::array::from_fn(|v| {
            let r = rank[v];
            [cyc[(r + 3) % 4], cyc[(r + 2) % 4], cyc[(r + 1) % 4]]
        });
        orders.push(tet_orders);
    }
    let bb = BoundaryBranching { orders };
    // the two sides of every boundary edge must carry one direction
    for i in 0..t.n_tets() {
        for f in 0..4u8 {
            let g = t.gluing(i, f);
            for v in 0..4u8 {
                if v == f {
                    continue;
                }
                let rest: Vec<u8> = (0..4u8).filter(|&u| u != f && u != v).collect();
                let (y, z) = (rest[0], rest[1]);
                let here = bb.corner_rank(i, v, y) < bb.corner_rank(i, v, z);
                let there = bb.corner_rank(g.tet, g.perm.apply(v), g.perm.apply(y))
                    < bb.corner_rank(g.tet, g.perm.apply(v), g.perm.apply(z));
                assert_eq!(here, there, "boundary edge directions must agree across gluings");
            }
        }
    }
    bb
}

/// Index of the boundary vertical foliation at each vertex of the branched
/// boundary triangulation (one vertex per end of each edge class): 1 - A/2
/// where A counts direction alternations of the incident boundary edges
/// around the star. Regular vertices have index 0; the indices of each
/// boundary component sum to its Euler characteristic (checked).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySingularities {
    /// per boundary component: ascending indices of the singular vertices
    pub per_component: Vec<Vec<i64>>,
}

pub fn boundary_singularities(
    t: &Triangulation,
    sk: &Skeleta,
    bb: &BoundaryBranching,
) -> BoundarySingularities {
    let bs = boundary_surface(t, sk);
    let mut per_component: Vec<Vec<i64>> = vec![Vec::new(); bs.components.len()];
    let mut chi_sum = vec![0i64; bs.components.len()];
    for ec in &sk.edge_classes {
        assert!(ec.orientation_consistent, "edge class glued to itself reversed");
        for end in 0..2 {
            // the star of the end-`end` vertex: one corner per link step; the
            // boundary edge after step k lies on its exit face and joins the
            // central corner to the arc head's corner
            let mut away = Vec::with_capacity(ec.link.len());
            for step in &ec.link {
                let (v, other) = if end == 0 { step.edge } else { (step.edge.1, step.edge.0) };
                let head = step.arc.1;
                away.push(bb.corner_rank(step.tet, v, other) < bb.corner_rank(step.tet, v, head));
            }
            let m = away.len();
            let alternations = (0..m).filter(|&k| away[k] != away[(k + 1) % m]).count();
            assert_eq!(alternations % 2, 0);
            let index = 1 - alternations as i64 / 2;
            let (i0, a0, b0) = ec.embeddings[0];
            let vtx = if end == 0 { a0 } else { b0 };
            let comp = sk.vertex_class_of(i0, vtx);
            let slot = bs.components.iter().position(|c| c.vertex_class == comp).unwrap();
            chi_sum[slot] += index;
            if index != 0 {
                per_component[slot].push(index);
            }
        }
    }
    for (slot, c) in bs.components.iter().enumerate() {
        assert_eq!(chi_sum[slot], c.chi, "vertex indices must sum to the component's chi");
        per_component[slot].sort();
    }
    BoundarySingularities { per_component }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::decor::omega::induced_prebranching;
    use crate::decor::prebranching::enumerate_prebranchings;
    use crate::fixtures::load_fixture;
    use crate::skeleta::orient;

    #[test]
    fn orders_from_omega_b_are_compatible_with_the_bicoloring_split() {
        // corner c_x of triangle (tet, v) is black when x precedes v in the
        // 3D order; the black corners always form a prefix of the boundary
        // order: rank-1 vertices show black = {minimum}, rank-2 vertices
        // black = {minimum, middle}, extremes are solid
        for name in ["m004", "t1-torsion"] {
            let t = load_fixture(name);
            let sk = Skeleta::compute(&t);
            let eps = orient(&t).unwrap();
            for b in enumerate_branchings(&t, &sk) {
                let pb = induced_prebranching(&t, &sk, &b, &eps);
                let bb = boundary_branching(&t, &sk, &pb, &eps);
                for i in 0..t.n_tets() {
                    for v in 0..4u8 {
                        let order = bb.order(i, v);
                        let black: Vec<bool> = order
                            .iter()
                            .map(|&x| b.local_dir(&sk, i, v.min(x), v.max(x)) == if x < v { 1 } else { -1 })
                            .collect();
                        let n_black = black.iter().filter(|&&c| c).count();
                        assert!(
                            black.iter().take(n_black).all(|&c| c),
                            "black corners must form a prefix of the boundary order"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_branching_is_defined_and_consistent_for_unbranchable_omegas() {
        // m003 pre-branchings bound no branching at all, yet the boundary
        // branching exists and its gluing consistency still holds (asserted
        // inside the constructor)
        let t = load_fixture("m003");
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        let pbs = enumerate_prebranchings(&t, &sk);
        assert!(!pbs.is_empty());
        for pb in &pbs {
            let bb = boundary_branching(&t, &sk, pb, &eps);
            let sing = boundary_singularities(&t, &sk, &bb);
            assert_eq!(sing.per_component.len(), 1);
            // torus boundary: the singular indices cancel
            let total: i64 = sing.per_component[0].iter().sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn non_ambiguous_transits_preserve_the_singularity_profile() {
        use crate::moves::classify::{classify_23, TransitClass};
        use crate::moves::enhance::{enhance_positive, Decoration};
        use crate::moves::naked::{enumerate_sites, MoveKind};

        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        let mut checked = 0;
        for b in enumerate_branchings(&t, &sk) {
            let pb = induced_prebranching(&t, &sk, &b, &eps);
            let before = boundary_singularities(&t, &sk, &boundary_branching(&t, &sk, &pb, &eps));
            for site in enumerate_sites(&t, &sk, MoveKind::M23) {
                if classify_23(&t, &sk, &b, site).unwrap().class != TransitClass::NonAmbiguous {
                    continue;
                }
                let pe =
                    enhance_positive(&t, MoveKind::M23, site, &Decoration::PreBranching(pb.clone()))
                        .unwrap();
                let t2 = &pe.result.tri;
                let sk2 = Skeleta::compute(t2);
                let eps2 = orient(t2).unwrap();
                let pb2 = pe.outputs[0].as_prebranching().unwrap();
                let after = boundary_singularities(t2, &sk2, &boundary_branching(t2, &sk2, pb2, &eps2));
                assert_eq!(before, after, "site {site:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn singularity_indices_sum_to_chi_on_every_fixture() {
        for name in ["m003", "m004", "t1-torsion"] {
            let t = load_fixture(name);
            let sk = Skeleta::compute(&t);
            let eps = orient(&t).unwrap();
            for pb in enumerate_prebranchings(&t, &sk) {
                let bb = boundary_branching(&t, &sk, &pb, &eps);
                // the sum identity is asserted inside
                boundary_singularities(&t, &sk, &bb);
            }
        }
    }
}
