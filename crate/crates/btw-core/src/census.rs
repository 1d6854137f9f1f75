//! Exhaustive enumeration of small gluing tables, used to derive the frozen
//! fixtures and as a cross-check oracle.

use crate::perm::Perm4;
use crate::tri::{Gluing, RawTriangulation, Triangulation};

/// All valid connected 1-tet tables (faces paired among themselves).
pub fn one_tet_tables() -> Vec<Triangulation> {
    let pairings: [[(u8, u8); 2]; 3] = [
        [(0, 1), (2, 3)],
        [(0, 2), (1, 3)],
        [(0, 3), (1, 2)],
    ];
    let mut out = Vec::new();
    for pairing in pairings {
        for p0 in Perm4::all() {
            for p1 in Perm4::all() {
                // the gluing perm carries the opposite vertex of the source
                // face to the opposite vertex of the target face
                let mut g = [Gluing { tet: 0, perm: Perm4::IDENTITY }; 4];
                let mut ok = true;
                for (p, (a, b)) in [(p0, pairing[0]), (p1, pairing[1])] {
                    if p.apply(a) != b {
                        ok = false;
                        break;
                    }
                    g[a as usize] = Gluing { tet: 0, perm: p };
                    g[b as usize] = Gluing { tet: 0, perm: p.inverse() };
                }
                if !ok {
                    continue;
                }
                if let Ok(t) = Triangulation::validate(&RawTriangulation {
                    name: "t1".into(),
                    gluings: vec![g],
                }) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// All valid connected 2-tet tables, normalized so tet 0 face 0 glues to
/// tet 1 by the identity. Every connected 2-tet triangulation is isomorphic
/// to one of these.
pub fn two_tet_tables() -> Vec<Triangulation> {
    let mut free: Vec<(usize, u8)> = vec![(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3)];
    let mut out = Vec::new();
    let mut assignment: Vec<(usize, u8, usize, u8, Perm4)> = Vec::new();
    pair_faces(&mut free, &mut assignment, &mut out);
    out
}

fn pair_faces(
    free: &mut Vec<(usize, u8)>,
    assignment: &mut Vec<(usize, u8, usize, u8, Perm4)>,
    out: &mut Vec<Triangulation>,
) {
    if free.is_empty() {
        let mut g = vec![[Gluing { tet: 0, perm: Perm4::IDENTITY }; 4]; 2];
        g[0][0] = Gluing { tet: 1, perm: Perm4::IDENTITY };
        g[1][0] = Gluing { tet: 0, perm: Perm4::IDENTITY };
        for &(t1, f1, t2, f2, p) in assignment.iter() {
            g[t1][f1 as usize] = Gluing { tet: t2, perm: p };
            g[t2][f2 as usize] = Gluing { tet: t1, perm: p.inverse() };
        }
        if let Ok(t) = Triangulation::validate(&RawTriangulation {
            name: "t2".into(),
            gluings: g,
        }) {
            if t.is_connected() {
                out.push(t);
            }
        }
        return;
    }
    let (t1, f1) = free.remove(0);
    for idx in 0..free.len() {
        let (t2, f2) = free[idx];
        if (t1, f1) == (t2, f2) {
            continue;
        }
        free.remove(idx);
        for p in Perm4::all() {
            if p.apply(f1) != f2 {
                continue;
            }
            assignment.push((t1, f1, t2, f2, p));
            pair_faces(free, assignment, out);
            assignment.pop();
        }
        free.insert(idx, (t2, f2));
    }
    free.insert(0, (t1, f1));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tet_count() {
        // 3 pairings x (6 perms sending a to b)^2, minus tables rejected by
        // validation (a face glued to itself)
        let ts = one_tet_tables();
        assert!(!ts.is_empty());
        for t in &ts {
            assert_eq!(t.n_tets(), 1);
        }
    }

    #[test]
    fn two_tet_tables_are_valid_and_connected() {
        let ts = two_tet_tables();
        assert!(!ts.is_empty());
        for t in ts.iter().take(50) {
            assert!(t.is_connected());
        }
    }
}
