//! The white/black decomposition of the boundary surface induced by a
//! branching: the link triangle of the lowest vertex of each tet is white,
//! that of the highest is black, and the two middle ones are split by an arc
//! of the tangency curve X. A corner of triangle (tet, v) at edge (v, x) is
//! black exactly when the edge runs x -> v, so the rank-1 triangle has one
//! black corner and the rank-2 triangle has two.

use crate::decor::branching::Branching;
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriColor {
    White,
    SplitT1,
    SplitT2,
    Black,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicoloring {
    /// per (tet, v): the color class of the link triangle, by b-rank of v
    pub colors: Vec<[TriColor; 4]>,
    /// Euler characteristic of the closed-up white part W-bar
    pub chi_white: i64,
    /// Euler characteristic of the closed-up black part B-bar
    pub chi_black: i64,
    /// number of components of the curve X separating the two parts
    pub x_components: usize,
}

/// Whether the side of triangle (tet, v) lying on face f is white, split or
/// black: the colors of its two corners, i.e. of the face's other two
/// vertices relative to v. 0 = both white, 1 = split, 2 = both black.
fn side_black_count(b: &Branching, sk: &Skeleta, tet: usize, f: u8, v: u8) -> usize {
    (0..4u8)
        .filter(|&x| x != f && x != v)
        .filter(|&x| b.local_dir(sk, tet, v.min(x), v.max(x)) == if x < v { 1 } else { -1 })
        .count()
}

pub fn bicoloring(t: &Triangulation, sk: &Skeleta, b: &Branching) -> Bicoloring {
    let n = t.n_tets();
    let colors: Vec<[TriColor; 4]> = (0..n)
        .map(|i| {
            let order = b.tet_order(sk, i).expect("branching must be transitive");
            let mut c = [TriColor::White; 4];
            for (rank, &v) in order.iter().enumerate() {
                c[v as usize] = match rank {
                    0 => TriColor::White,
                    1 => TriColor::SplitT1,
                    2 => TriColor::SplitT2,
                    _ => TriColor::Black,
                };
            }
            c
        })
        .collect();

    // classify every boundary edge (one per face class and face vertex) and
    // glue the split arcs across the split sides
    let mut white_sides = 0i64;
    let mut black_sides = 0i64;
    let mut split_sides = 0i64;
    // one arc per split triangle, indexed by 4*tet + v
    let mut arc_parent: Vec<usize> = (0..4 * n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for fc in &sk.face_classes {
        let (i, f) = fc.sides[0];
        let g = t.gluing(i, f);
        for v in (0..4u8).filter(|&v| v != f) {
            let here = side_black_count(b, sk, i, f, v);
            let there = side_black_count(b, sk, g.tet, g.perm.apply(f), g.perm.apply(v));
            assert_eq!(here, there, "side colors must agree across the gluing");
            match here {
                0 => white_sides += 1,
                2 => black_sides += 1,
                _ => {
                    split_sides += 1;
                    let a = find(&mut arc_parent, 4 * i + v as usize);
                    let bb = find(&mut arc_parent, 4 * g.tet + g.perm.apply(v) as usize);
                    arc_parent[a] = bb;
                }
            }
        }
    }

    // cell counts of the closed-up parts: 3n faces each (the full extreme
    // triangle plus the two split pieces per tet); sides split into whole
    // same-color edges, half-edges at split sides, and the 2n arcs; vertices
    // are the uniformly colored edge-class ends plus the arc-side crossings
    let n_edges = sk.n_edges() as i64;
    let chi_of = |same_sides: i64| -> i64 {
        let faces = 3 * n as i64;
        let edges = same_sides + split_sides + 2 * n as i64;
        let vertices = n_edges + split_sides;
        vertices - edges + faces
    };
    let chi_white = chi_of(white_sides);
    let chi_black = chi_of(black_sides);

    let mut roots = std::collections::BTreeSet::new();
    for i in 0..n {
        for v in 0..4u8 {
            if matches!(colors[i][v as usize], TriColor::SplitT1 | TriColor::SplitT2) {
                roots.insert(find(&mut arc_parent, 4 * i + v as usize));
            }
        }
    }

    Bicoloring { colors, chi_white, chi_black, x_components: roots.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::fixtures::load_fixture;
    use crate::skeleta::{boundary_surface, orient};

    #[test]
    fn both_parts_have_the_euler_characteristic_of_the_manifold() {
        for name in ["m004", "t1-torsion"] {
            let t = load_fixture(name);
            let sk = Skeleta::compute(&t);
            let chi = sk.chi(&t);
            assert_eq!(chi, boundary_surface(&t, &sk).total_chi() / 2);
            for b in enumerate_branchings(&t, &sk) {
                let bc = bicoloring(&t, &sk, &b);
                assert_eq!(bc.chi_white, chi);
                assert_eq!(bc.chi_black, chi);
                assert!(bc.x_components >= 1);
            }
        }
    }

    #[test]
    fn each_tet_has_one_triangle_of_each_color() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        for b in enumerate_branchings(&t, &sk) {
            let bc = bicoloring(&t, &sk, &b);
            for row in &bc.colors {
                for c in [TriColor::White, TriColor::SplitT1, TriColor::SplitT2, TriColor::Black] {
                    assert_eq!(row.iter().filter(|&&x| x == c).count(), 1);
                }
            }
        }
    }

    #[test]
    fn sliding_transits_preserve_the_bicoloring_shadow() {
        use crate::moves::classify::{classify_23, TransitClass};
        use crate::moves::enhance::{enhance_positive, Decoration};
        use crate::moves::naked::{enumerate_sites, MoveKind};

        use crate::perm::Perm4;
        use crate::tri::Gluing;

        // the doubled tet supplies sliding and bump transits, m004 the
        // non-ambiguous ones
        let doubled = Triangulation::from_gluings(
            "double",
            vec![
                std::array::from_fn(|_| Gluing { tet: 1, perm: Perm4::IDENTITY }),
                std::array::from_fn(|_| Gluing { tet: 0, perm: Perm4::IDENTITY }),
            ],
        );
        let (mut slidings, mut bumps) = (0, 0);
        for t in [doubled, load_fixture("m004")] {
            let sk = Skeleta::compute(&t);
            let _ = orient(&t).unwrap();
            for b in enumerate_branchings(&t, &sk) {
                let before = bicoloring(&t, &sk, &b);
                for site in enumerate_sites(&t, &sk, MoveKind::M23) {
                    let class = classify_23(&t, &sk, &b, site).unwrap().class;
                    let be =
                        enhance_positive(&t, MoveKind::M23, site, &Decoration::Branching(b.clone()))
                            .unwrap();
                    let t2 = &be.result.tri;
                    let sk2 = Skeleta::compute(t2);
                    let after = bicoloring(t2, &sk2, be.outputs[0].as_branching().unwrap());
                    // chi of both parts is preserved by every branched transit
                    assert_eq!(after.chi_white, before.chi_white);
                    assert_eq!(after.chi_black, before.chi_black);
                    if class == TransitClass::Bump {
                        bumps += 1;
                    } else {
                        // sliding transits keep the bicolored surface isotopic
                        assert_eq!(after.x_components, before.x_components, "site {site:?}");
                        slidings += 1;
                    }
                }
            }
        }
        assert!(slidings > 0 && bumps > 0);
    }
}
