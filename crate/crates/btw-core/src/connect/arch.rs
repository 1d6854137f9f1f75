//! The arch construction: inserting one tetrahedron with self-identifications
//! along an internal triangle of a branched 1->4 star, merging the two
//! endpoints of the marked edge into one vertex.

use crate::decor::branching::Branching;
use crate::perm::Perm4;
use crate::skeleta::Skeleta;
use crate::tri::{Gluing, Triangulation};
use thiserror::Error;

/// A marking of the 1->4 star: the internal triangle shared by children
/// `pair.0` and `pair.1` (parent labels, ascending), and the end `end` of its
/// parent-edge; the marked edge joins the center to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchMarking {
    pub pair: (u8, u8),
    pub end: u8,
}

#[derive(Debug, Error)]
pub enum ArchError {
    #[error("the four tetrahedra do not form a pit-branched 1->4 star")]
    BadSite,
    #[error("the marked edge does not carry the prevailing orientation")]
    NotAdmissible,
}

/// All twelve naked markings.
pub fn enumerate_arch_markings() -> Vec<ArchMarking> {
    let mut out = Vec::new();
    for u in 0..4u8 {
        for w in (u + 1)..4 {
            for end in 0..4u8 {
                if end != u && end != w {
                    out.push(ArchMarking { pair: (u, w), end });
                }
            }
        }
    }
    out
}

fn check_star(t: &Triangulation, sk: &Skeleta, b: &Branching, children: &[usize; 4]) -> bool {
    for u in 0..4u8 {
        for w in 0..4u8 {
            if u == w {
                continue;
            }
            let g = t.gluing(children[u as usize], w);
            if g.tet != children[w as usize] || g.perm != Perm4::transposition(u, w) {
                return false;
            }
        }
    }
    // the common center vertex must be a pit of every child
    children.iter().enumerate().all(|(v, &c)| {
        b.tet_order(sk, c).is_some_and(|order| order[3] == v as u8)
    })
}

/// The marked edge carries the prevailing orientation of its triangle exactly
/// when `end` is the later of the triangle's two parent vertices.
pub fn is_admissible(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    children: &[usize; 4],
    m: &ArchMarking,
) -> Result<bool, ArchError> {
    if !check_star(t, sk, b, children) {
        return Err(ArchError::BadSite);
    }
    let (u, w) = m.pair;
    let x = m.end;
    let y = (0..4u8).find(|&v| v != u && v != w && v != x).unwrap();
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let dir = b.local_dir(sk, children[u as usize], lo, hi);
    Ok((dir > 0) == (hi == x))
}

/// Insert the arch tetrahedron along the marked triangle. The new tetrahedron
/// takes index n with labels (w', v0, v1, v2) = (0, 1, 2, 3): face 0 replaces
/// the child-u side of the triangle, face 1 the child-w side, and faces 2, 3
/// are glued to each other by the transposition (2 3), identifying the edges
/// w'v1 ~ w'v2 and v0v1 ~ v0v2 and thereby merging two vertices.
pub fn insert_arch(
    t: &Triangulation,
    b: &Branching,
    children: &[usize; 4],
    m: &ArchMarking,
) -> Result<(Triangulation, Branching), ArchError> {
    let sk = Skeleta::compute(t);
    if !is_admissible(t, &sk, b, children, m)? {
        return Err(ArchError::NotAdmissible);
    }
    let (u, w) = m.pair;
    let x = m.end;
    let y = (0..4u8).find(|&v| v != u && v != w && v != x).unwrap();
    let (cu, cw) = (children[u as usize], children[w as usize]);
    let n = t.n_tets();

    let perm_from = |pairs: [(u8, u8); 4]| {
        let mut img = [0u8; 4];
        for (a, bb) in pairs {
            img[a as usize] = bb;
        }
        Perm4::new(img).expect("marking labels are a bijection")
    };
    // arch labels -> child labels
    let p0 = perm_from([(0, w), (1, y), (2, x), (3, u)]);
    let p1 = perm_from([(0, y), (1, u), (2, x), (3, w)]);

    let mut g: Vec<[Gluing; 4]> = t.gluings().to_vec();
    g[cu][w as usize] = Gluing { tet: n, perm: p0.inverse() };
    g[cw][u as usize] = Gluing { tet: n, perm: p1.inverse() };
    let swap = Perm4::transposition(2, 3);
    g.push([
        Gluing { tet: cu, perm: p0 },
        Gluing { tet: cw, perm: p1 },
        Gluing { tet: n, perm: swap },
        Gluing { tet: n, perm: swap },
    ]);
    let t2 = Triangulation::from_gluings(t.name(), g);
    let sk2 = Skeleta::compute(&t2);

    // read each surviving class's orientation off any embedding in an old
    // tetrahedron (labels are unchanged there); classes seen only in the arch
    // tetrahedron are free
    let mut signs: Vec<Option<i8>> = vec![None; sk2.n_edges()];
    for (c, s) in signs.iter_mut().enumerate() {
        for &(i, a, bb) in &sk2.edge_classes[c].embeddings {
            if i >= n {
                continue;
            }
            let dir = b.local_dir(&sk, i, a, bb);
            let implied = dir * sk2.edge_sign_of(i, a, bb);
            match *s {
                None => *s = Some(implied),
                Some(prev) => assert_eq!(
                    prev, implied,
                    "an admissible marking merges coherently oriented edges"
                ),
            }
        }
    }
    let free: Vec<usize> = (0..signs.len()).filter(|&c| signs[c].is_none()).collect();
    let mut pick = vec![1i8; free.len()];
    loop {
        let mut full: Vec<i8> = signs.iter().map(|s| s.unwrap_or(0)).collect();
        for (k, &c) in free.iter().enumerate() {
            full[c] = pick[k];
        }
        let cand = Branching { signs: full };
        if cand.is_valid(&sk2, &t2) {
            return Ok((t2, cand));
        }
        // advance the +1/-1 counter over the free classes
        let mut k = 0;
        while k < pick.len() && pick[k] == -1 {
            pick[k] = 1;
            k += 1;
        }
        if k == pick.len() {
            unreachable!("an admissible arch extends to a valid branching");
        }
        pick[k] = -1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::fixtures::load_fixture;
    use crate::moves::{enhance_positive, Decoration, MoveKind, Site};

    // pit-branched 1->4 states over every branching and tetrahedron of m004
    fn sites() -> Vec<(Triangulation, Branching, [usize; 4])> {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let mut out = Vec::new();
        for b in enumerate_branchings(&t, &sk) {
            for tet in 0..t.n_tets() {
                let enh = enhance_positive(
                    &t,
                    MoveKind::M14,
                    Site::Tet { tet },
                    &Decoration::Branching(b.clone()),
                )
                .unwrap();
                let sk2 = Skeleta::compute(&enh.result.tri);
                let children: [usize; 4] = enh.result.new_tets.clone().try_into().unwrap();
                for out_b in &enh.outputs {
                    let Decoration::Branching(b2) = out_b else { unreachable!() };
                    if children
                        .iter()
                        .enumerate()
                        .all(|(v, &c)| b2.tet_order(&sk2, c).unwrap()[3] == v as u8)
                    {
                        out.push((enh.result.tri.clone(), b2.clone(), children));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn six_of_twelve_markings_are_admissible() {
        for (t, b, children) in sites() {
            let sk = Skeleta::compute(&t);
            let adm: Vec<ArchMarking> = enumerate_arch_markings()
                .into_iter()
                .filter(|m| is_admissible(&t, &sk, &b, &children, m).unwrap())
                .collect();
            assert_eq!(adm.len(), 6);
            // one admissible end per triangle
            for u in 0..4u8 {
                for w in (u + 1)..4 {
                    assert_eq!(adm.iter().filter(|m| m.pair == (u, w)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn insertion_validates_and_merges_one_vertex() {
        for (t, b, children) in sites() {
            let sk = Skeleta::compute(&t);
            for m in enumerate_arch_markings() {
                match insert_arch(&t, &b, &children, &m) {
                    Ok((t2, b2)) => {
                        assert!(is_admissible(&t, &sk, &b, &children, &m).unwrap());
                        let sk2 = Skeleta::compute(&t2);
                        assert!(b2.is_valid(&sk2, &t2));
                        assert_eq!(
                            sk2.vertex_classes.len(),
                            sk.vertex_classes.len() - 1
                        );
                    }
                    Err(ArchError::NotAdmissible) => {
                        assert!(!is_admissible(&t, &sk, &b, &children, &m).unwrap());
                    }
                    Err(err) => panic!("unexpected: {err}"),
                }
            }
        }
    }

    #[test]
    fn wrong_site_is_rejected() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let b = enumerate_branchings(&t, &sk).into_iter().next().unwrap();
        let m = enumerate_arch_markings()[0];
        assert!(matches!(
            is_admissible(&t, &sk, &b, &[0, 0, 1, 1], &m),
            Err(ArchError::BadSite)
        ));
    }
}
