//! Chain complex of the dual standard spine: 0-cells are tetrahedra, 1-cells
//! are face classes, 2-cells are edge classes.
//!
//! Reference orientations: a 1-cell runs from `sides[0]` into the tet of
//! `sides[1]`; a 2-cell is oriented by the link traversal stored in its edge
//! class (which starts at the first embedding).

use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

pub struct SpineComplex {
    /// n_tets x n_faces signed incidence of 1-cells on 0-cells
    pub d1: Vec<Vec<i64>>,
    /// n_faces x n_edges signed incidence of 2-cells on 1-cells
    pub d2: Vec<Vec<i64>>,
}

pub fn spine_complex(t: &Triangulation, sk: &Skeleta) -> SpineComplex {
    let mut d1 = vec![vec![0i64; sk.n_faces()]; t.n_tets()];
    for fc in &sk.face_classes {
        d1[fc.sides[1].0][fc.index] += 1;
        d1[fc.sides[0].0][fc.index] -= 1;
    }
    let mut d2 = vec![vec![0i64; sk.n_edges()]; sk.n_faces()];
    for ec in &sk.edge_classes {
        for step in &ec.link {
            let c = sk.face_class_of(step.tet, step.exit_face);
            let sign = if sk.face_classes[c].sides[0] == (step.tet, step.exit_face) {
                1
            } else {
                -1
            };
            d2[c][ec.index] += sign;
        }
    }
    SpineComplex { d1, d2 }
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
    fn boundary_squares_to_zero() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let sc = spine_complex(&t, &sk);
        for e in 0..sk.n_edges() {
            for i in 0..t.n_tets() {
                let v: i64 = (0..sk.n_faces()).map(|c| sc.d1[i][c] * sc.d2[c][e]).sum();
                assert_eq!(v, 0, "d1 d2 != 0 at tet {i}, edge {e}");
            }
        }
    }

    #[test]
    fn each_region_crosses_valence_many_one_cells() {
        let t = doubled_tet();
        let sk = Skeleta::compute(&t);
        let sc = spine_complex(&t, &sk);
        for ec in &sk.edge_classes {
            let total: i64 =
                (0..sk.n_faces()).map(|c| sc.d2[c][ec.index].abs()).sum();
            assert!(total as usize <= ec.valence);
        }
    }
}
