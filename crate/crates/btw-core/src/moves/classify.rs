//! Classification of branched transits. A positive 2->3 site carries two
//! tetrahedra tau1, tau2 glued along a face t, with apexes v1, v2 opposite t.
//! A branching orders the 5 vertices involved, and the (non)ambiguous /
//! sliding / bump nature of the branched transit depends only on the couple
//! ((s1,a1),(s2,a2)), where s_j is the sign of (tau_j,b) under the local
//! auxiliary orientation with +1 on the tetrahedron containing v1, and a_j is
//! the order index of v_j among tau_j's four vertices. The full table is
//! rebuilt here from first principles over all 120 total orderings and
//! memoized; lookups on real sites go through the table.

use crate::decor::branching::Branching;
use crate::decor::omega::{induced_prebranching, tet_pattern};
use crate::moves::enhance::{enhance_positive, Decoration};
use crate::moves::naked::{enumerate_sites, MoveError, MoveKind, Site};
use crate::skeleta::{edge_link, Skeleta};
use crate::tri::Triangulation;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TransitClass {
    NonAmbiguous,
    ForcedAmbiguous,
    AmbiguousSliding,
    Bump,
}

/// ((s1, a1), (s2, a2)): sign and apex order index on each of the two tets.
pub type Couple = ((i8, u8), (i8, u8));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransitType {
    pub couple: Couple,
    pub class: TransitClass,
    /// all 5 tetrahedra occurring in the transit share the same sign
    pub schaeffer: bool,
}

/// One of the 120 initial configurations: a total order of the 5 vertices,
/// listed smallest first with 0 = v1, 1..=3 = u0..u2 (the shared face), 4 = v2.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub order: [u8; 5],
    pub couple: Couple,
    pub class: TransitClass,
    pub schaeffer: bool,
    /// number of branched enhancements (orientations of the new central edge)
    pub b_enhancements: u8,
    /// number of pre-branched enhancements of the induced pb-transit
    pub pb_enhancements: u8,
}

/// A type: the orbit of a configuration under cyclic permutation of the three
/// shared-face vertices.
#[derive(Debug, Clone, Serialize)]
pub struct CensusType {
    pub couple: Couple,
    pub class: TransitClass,
    pub schaeffer: bool,
    pub configs: Vec<[u8; 5]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub configs: Vec<Config>,
    pub types: Vec<CensusType>,
}

fn parity4(order: [u8; 4]) -> i8 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if order[i] > order[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

fn permutations5() -> Vec<[u8; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [0u8; 5];
    fn rec(depth: usize, used: &mut [bool; 5], cur: &mut [u8; 5], out: &mut Vec<[u8; 5]>) {
        if depth == 5 {
            out.push(*cur);
            return;
        }
        for v in 0..5u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                cur[depth] = v;
                rec(depth + 1, used, cur, out);
                used[v as usize] = false;
            }
        }
    }
    rec(0, &mut [false; 5], &mut cur, &mut out);
    out
}

/// Classify one abstract configuration, given as the 5-vertex order
/// (smallest first). The model site: tau1 has local labels v1=0, u_k=k+1,
/// tau2 likewise with v2 at 0, glued along face 0 by the identity; the local
/// auxiliary orientation is +1 on tau1, hence -1 on tau2.
pub fn classify_order(order: [u8; 5]) -> Config {
    let mut rank = [0usize; 5];
    for (pos, &e) in order.iter().enumerate() {
        rank[e as usize] = pos;
    }
    // local label -> 5-vertex element, per tet
    let elems = [[0u8, 1, 2, 3], [4, 1, 2, 3]];
    let eps = [1i8, -1];
    let dir = |j: usize, a: u8, b: u8| -> i8 {
        if rank[elems[j][a as usize] as usize] < rank[elems[j][b as usize] as usize] {
            1
        } else {
            -1
        }
    };
    let couple_half = |j: usize| -> (i8, u8) {
        let mut loc = [0u8, 1, 2, 3];
        loc.sort_by_key(|&l| rank[elems[j][l as usize] as usize]);
        let a = loc.iter().position(|&l| l == 0).unwrap() as u8;
        (parity4(loc) * eps[j], a)
    };
    let (half1, half2) = (couple_half(0), couple_half(1));
    let couple = (half1, half2);
    let bump = half1.1 == half2.1 && (half1.1 == 0 || half1.1 == 3);

    // the three output tets T_k have labels 0=v1, 1=v2, 2=u_{k+1}, 3=u_{k+2}
    // (indices mod 3) and inherit orientation sign +1; the edge v1v2 is new
    let t_elems = |k: usize| -> [u8; 4] {
        [0, 4, ((k + 1) % 3) as u8 + 1, ((k + 2) % 3) as u8 + 1]
    };
    let t_dir = |k: usize, c: i8, a: u8, b: u8| -> i8 {
        let (ea, eb) = (t_elems(k)[a as usize], t_elems(k)[b as usize]);
        if (ea, eb) == (0, 4) {
            c
        } else if (ea, eb) == (4, 0) {
            -c
        } else if rank[ea as usize] < rank[eb as usize] {
            1
        } else {
            -1
        }
    };
    let t_order = |k: usize, c: i8| -> Option<[u8; 4]> {
        let mut outdeg = [0usize; 4];
        for a in 0..4u8 {
            for b in a + 1..4 {
                if t_dir(k, c, a, b) > 0 {
                    outdeg[a as usize] += 1;
                } else {
                    outdeg[b as usize] += 1;
                }
            }
        }
        let mut ord = [4u8; 4];
        for v in 0..4 {
            let slot = 3 - outdeg[v];
            if ord[slot] != 4 {
                return None;
            }
            ord[slot] = v as u8;
        }
        Some(ord)
    };
    // branched enhancements: orientations c of the new edge v1 -> v2 keeping
    // every T_k transitive
    let valid_c: Vec<i8> =
        [1i8, -1].into_iter().filter(|&c| (0..3).all(|k| t_order(k, c).is_some())).collect();
    let b_enh = valid_c.len() as u8;
    assert!((1..=2).contains(&b_enh));

    // pre-branched enhancements: the boundary in/out statuses of the three
    // output tets are pinned by the input patterns (T_k face 1 replaces tau1's
    // face opposite u_k, face 0 replaces tau2's); the three internal face
    // classes (T_k face 2 glued to T_{k+1} face 3) are free, subject to
    // 2-in 2-out on each T_k
    let pat1 = tet_pattern(&|a, b| dir(0, a, b), 1);
    let pat2 = tet_pattern(&|a, b| dir(1, a, b), -1);
    let mut pb_enh = 0u8;
    for x in 0..8u8 {
        let ing = |k: usize| -> u8 {
            let x_k = (x >> k) & 1;
            let x_prev = (x >> ((k + 2) % 3)) & 1;
            u8::from(!pat2[k + 1]) + u8::from(!pat1[k + 1]) + x_k + (1 - x_prev)
        };
        if (0..3).all(|k| ing(k) == 2) {
            pb_enh += 1;
        }
    }
    assert!((1..=2).contains(&pb_enh));
    // non ambiguous implies forced
    assert!(pb_enh != 1 || b_enh == 1);

    let class = if bump {
        TransitClass::Bump
    } else if pb_enh == 1 {
        TransitClass::NonAmbiguous
    } else if b_enh == 1 {
        TransitClass::ForcedAmbiguous
    } else {
        TransitClass::AmbiguousSliding
    };

    let schaeffer = if b_enh == 1 {
        let c = valid_c[0];
        let news: Vec<i8> = (0..3).map(|k| parity4(t_order(k, c).unwrap())).collect();
        news.iter().all(|&s| s == half1.0) && half2.0 == half1.0
    } else {
        false
    };
    Config { order, couple, class, schaeffer, b_enhancements: b_enh, pb_enhancements: pb_enh }
}

/// The full census: all 120 configurations grouped into 40 types (orbits of
/// the cyclic rotation u0 -> u1 -> u2 of the shared face's vertices), with the
/// class checked constant per type and per couple.
pub fn census_types() -> Census {
    let configs: Vec<Config> = permutations5().into_iter().map(classify_order).collect();
    assert_eq!(configs.len(), 120);

    let rot = |o: [u8; 5]| -> [u8; 5] {
        o.map(|e| match e {
            1 => 2,
            2 => 3,
            3 => 1,
            other => other,
        })
    };
    let canon = |o: [u8; 5]| -> [u8; 5] { [o, rot(o), rot(rot(o))].into_iter().min().unwrap() };

    let mut orbits: BTreeMap<[u8; 5], Vec<&Config>> = BTreeMap::new();
    for c in &configs {
        orbits.entry(canon(c.order)).or_default().push(c);
    }
    let mut types = Vec::new();
    for members in orbits.values() {
        assert_eq!(members.len(), 3, "each type carries 3 configurations");
        let first = members[0];
        for m in members {
            assert_eq!(m.couple, first.couple);
            assert_eq!(m.class, first.class);
            assert_eq!(m.schaeffer, first.schaeffer);
        }
        types.push(CensusType {
            couple: first.couple,
            class: first.class,
            schaeffer: first.schaeffer,
            configs: members.iter().map(|m| m.order).collect(),
        });
    }
    assert_eq!(types.len(), 40);

    // the class is a function of the couple alone
    let mut by_couple: BTreeMap<Couple, (TransitClass, bool)> = BTreeMap::new();
    for c in &configs {
        let entry = by_couple.entry(c.couple).or_insert((c.class, c.schaeffer));
        assert_eq!(*entry, (c.class, c.schaeffer));
    }
    Census { configs, types }
}

fn couple_table() -> &'static BTreeMap<Couple, (TransitClass, bool)> {
    static TABLE: OnceLock<BTreeMap<Couple, (TransitClass, bool)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let census = census_types();
        census.configs.iter().map(|c| (c.couple, (c.class, c.schaeffer))).collect()
    })
}

/// Look up the type of a couple in the memoized census table.
pub fn classify_couple(couple: Couple) -> Option<TransitType> {
    couple_table().get(&couple).map(|&(class, schaeffer)| TransitType { couple, class, schaeffer })
}

/// Classify a branched 2->3 site of a real triangulation. The couple is read
/// off the two tet orders; the class comes from the census table.
pub fn classify_23(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    site: Site,
) -> Result<TransitType, MoveError> {
    let Site::Face { tet, face } = site else {
        return Err(MoveError::InvalidSite {
            kind: MoveKind::M23,
            msg: format!("site shape {site:?} does not fit"),
        });
    };
    let g = t.gluing(tet, face);
    if g.tet == tet {
        return Err(MoveError::InvalidSite {
            kind: MoveKind::M23,
            msg: "the two tetrahedra across the face must be distinct".into(),
        });
    }
    let bad_b = || MoveError::InvalidSite {
        kind: MoveKind::M23,
        msg: "branching is not transitive on a site tetrahedron".into(),
    };
    let o1 = b.tet_order(sk, tet).ok_or_else(bad_b)?;
    let o2 = b.tet_order(sk, g.tet).ok_or_else(bad_b)?;
    let a1 = o1.iter().position(|&v| v == face).unwrap() as u8;
    let a2 = o2.iter().position(|&v| v == g.perm.apply(face)).unwrap() as u8;
    // local auxiliary orientation: +1 on the tet containing v1
    let s1 = parity4(o1);
    let s2 = parity4(o2) * -g.perm.sign();
    let couple = ((s1, a1), (s2, a2));
    Ok(classify_couple(couple).expect("every branched site realizes a census couple"))
}

fn parity3(r: [usize; 3]) -> i8 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if r[i] > r[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// Classify a branched quadrilateral 0->2 site: the quadrilateral is the union
/// of the two crossed face sides, two triangles sharing the central edge, with
/// apexes v1 (position p) and v2 (position q). The pit/source rule applies to
/// the triangles (a_j in 0..=2); the sign s_j is the parity of the b-order of
/// triangle j against the reference listing (e0, e1, apex) at p and its
/// opposite at q, i.e. the 2-dimensional analogue of the auxiliary
/// orientation. Forcedness is decided on the actual enhancements, so an
/// ambient orientation is required.
pub fn classify_02q(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
    site: Site,
) -> Result<TransitType, MoveError> {
    let Site::Lune { tet, a, b: eb, p, q } = site else {
        return Err(MoveError::InvalidSite {
            kind: MoveKind::M02Q,
            msg: format!("site shape {site:?} does not fit"),
        });
    };
    let link = edge_link(t, (tet, a, eb));
    if p >= link.len() || q >= link.len() || p == q {
        return Err(MoveError::InvalidSite {
            kind: MoveKind::M02Q,
            msg: "positions must be distinct link indices".into(),
        });
    }
    let half = |pos: usize| -> (i8, u8) {
        let s = &link[pos];
        let (e0, e1) = s.edge;
        let apex = s.entry_face;
        // rank of a triangle vertex = number of edges pointing into it
        let into = |w: u8, v: u8| -> bool {
            let (lo, hi) = if w < v { (w, v) } else { (v, w) };
            let d = b.local_dir(sk, s.tet, lo, hi);
            (d > 0) == (hi == v)
        };
        let rank_of = |v: u8, others: [u8; 2]| -> usize {
            others.iter().filter(|&&w| into(w, v)).count()
        };
        let r = [rank_of(e0, [e1, apex]), rank_of(e1, [e0, apex]), rank_of(apex, [e0, e1])];
        (parity3(r), r[2] as u8)
    };
    let (s1, a1) = half(p);
    let (s2n, a2) = half(q);
    let s2 = -s2n; // the two triangles induce opposite sides of the shared edge
    let couple = ((s1, a1), (s2, a2));
    let bump = a1 == a2 && (a1 == 0 || a1 == 2);
    let class = if bump {
        TransitClass::Bump
    } else {
        let omega = induced_prebranching(t, sk, b, eps);
        let pb = enhance_positive(t, MoveKind::M02Q, site, &Decoration::PreBranching(omega))
            .map_err(|e| match e {
                crate::moves::enhance::EnhanceError::Move(m) => m,
                other => MoveError::InvalidSite { kind: MoveKind::M02Q, msg: other.to_string() },
            })?;
        if pb.forced {
            TransitClass::NonAmbiguous
        } else {
            let be = enhance_positive(t, MoveKind::M02Q, site, &Decoration::Branching(b.clone()))
                .expect("a branched lune insertion always enhances");
            if be.forced { TransitClass::ForcedAmbiguous } else { TransitClass::AmbiguousSliding }
        }
    };
    // the Schaeffer property is specific to 2->3 transits
    Ok(TransitType { couple, class, schaeffer: false })
}

/// The derived 0->2 census of a branched triangulation: every quadrilateral
/// site, classified.
pub fn census_02q(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
) -> Vec<(Site, TransitType)> {
    enumerate_sites(t, sk, MoveKind::M02Q)
        .into_iter()
        .map(|site| {
            let tt = classify_02q(t, sk, b, eps, site).expect("enumerated site must classify");
            (site, tt)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::fixtures::load_fixture;
    use crate::moves::enhance::transfer_orientation;
    use crate::perm::Perm4;
    use crate::skeleta::orient;
    use crate::tri::{Gluing, Triangulation};

    const NA_ROWS: [Couple; 10] = [
        ((-1, 1), (-1, 0)),
        ((1, 1), (1, 0)),
        ((1, 2), (1, 3)),
        ((-1, 2), (-1, 3)),
        ((1, 2), (-1, 0)),
        ((-1, 3), (1, 1)),
        ((-1, 2), (1, 0)),
        ((1, 3), (-1, 1)),
        ((1, 2), (1, 1)),
        ((-1, 2), (-1, 1)),
    ];
    const SCHAEFFER_ROWS: [Couple; 2] = [((1, 2), (1, 1)), ((-1, 2), (-1, 1))];
    const SLIDING_ROWS: [Couple; 6] = [
        ((-1, 1), (1, 1)),
        ((1, 1), (-1, 1)),
        ((1, 2), (-1, 2)),
        ((-1, 2), (1, 2)),
        ((-1, 3), (-1, 0)),
        ((1, 3), (1, 0)),
    ];
    const FORCED_AMB_ROWS: [Couple; 2] = [((-1, 3), (-1, 0)), ((1, 3), (1, 0))];
    const BUMP_ROWS: [Couple; 4] =
        [((1, 0), (-1, 0)), ((-1, 0), (1, 0)), ((1, 3), (-1, 3)), ((-1, 3), (1, 3))];

    fn swap(c: Couple) -> Couple {
        (c.1, c.0)
    }

    #[test]
    fn census_has_40_types_with_the_listed_distribution() {
        let census = census_types();
        assert_eq!(census.configs.len(), 120);
        assert_eq!(census.types.len(), 40);
        let count = |cl: TransitClass| census.types.iter().filter(|t| t.class == cl).count();
        assert_eq!(count(TransitClass::NonAmbiguous), 20);
        assert_eq!(count(TransitClass::ForcedAmbiguous), 4);
        assert_eq!(count(TransitClass::AmbiguousSliding), 8);
        assert_eq!(count(TransitClass::Bump), 8);
        assert_eq!(census.types.iter().filter(|t| t.schaeffer).count(), 4);
        for t in &census.types {
            assert!(t.schaeffer <= (t.class == TransitClass::NonAmbiguous));
        }
    }

    #[test]
    fn census_couples_match_the_listed_rows_up_to_entry_exchange() {
        let census = census_types();
        let expected = |c: Couple| -> Option<(TransitClass, bool)> {
            let hit = |rows: &[Couple]| rows.contains(&c) || rows.contains(&swap(c));
            if hit(&NA_ROWS) {
                Some((TransitClass::NonAmbiguous, hit(&SCHAEFFER_ROWS)))
            } else if hit(&FORCED_AMB_ROWS) {
                Some((TransitClass::ForcedAmbiguous, false))
            } else if hit(&SLIDING_ROWS) {
                Some((TransitClass::AmbiguousSliding, false))
            } else if hit(&BUMP_ROWS) {
                Some((TransitClass::Bump, false))
            } else {
                None
            }
        };
        let mut seen: BTreeMap<Couple, usize> = BTreeMap::new();
        for ty in &census.types {
            let (class, schaeffer) =
                expected(ty.couple).unwrap_or_else(|| panic!("couple {:?} not listed", ty.couple));
            assert_eq!(ty.class, class, "couple {:?}", ty.couple);
            assert_eq!(ty.schaeffer, schaeffer, "couple {:?}", ty.couple);
            *seen.entry(ty.couple).or_default() += 1;
        }
        // exchanging v1 and v2 re-anchors the auxiliary orientation on the
        // other tet, so the realized exchange symmetry flips both signs;
        // couples fixed by it carry two types each, others one
        let exchange = |c: Couple| -> Couple { ((-c.1 .0, c.1 .1), (-c.0 .0, c.0 .1)) };
        assert_eq!(seen.len(), 32);
        for (c, n) in &seen {
            let tie = *c == exchange(*c);
            assert_eq!(*n, if tie { 2 } else { 1 }, "couple {:?}", c);
        }
        assert_eq!(seen.keys().filter(|&&c| c == exchange(c)).count(), 8);
        // every listed couple and every exchanged one is realized
        for rows in [&NA_ROWS[..], &SLIDING_ROWS[..], &BUMP_ROWS[..]] {
            for &c in rows {
                assert!(seen.contains_key(&c));
                assert!(seen.contains_key(&swap(c)));
            }
        }
    }

    #[test]
    fn census_cross_checks_hold_on_all_120_configurations() {
        let census = census_types();
        for c in &census.configs {
            let mut rank = [0usize; 5];
            for (pos, &e) in c.order.iter().enumerate() {
                rank[e as usize] = pos;
            }
            // bump <=> both apexes pits or both sources
            let bump = c.couple.0 .1 == c.couple.1 .1 && matches!(c.couple.0 .1, 0 | 3);
            assert_eq!(c.class == TransitClass::Bump, bump);
            // a bump is in particular ambiguous
            assert!(!bump || c.pb_enhancements == 2);
            // forced <=> some shared-face vertex lies strictly between v1, v2
            let (lo, hi) = if rank[0] < rank[4] { (rank[0], rank[4]) } else { (rank[4], rank[0]) };
            let between = (1..4).any(|u| lo < rank[u] && rank[u] < hi);
            assert_eq!(c.b_enhancements == 1, between);
            // non ambiguous (pb-forced) implies forced
            assert!(c.pb_enhancements != 1 || c.b_enhancements == 1);
            // the class decided by the table agrees with the derived one
            let tt = classify_couple(c.couple).unwrap();
            assert_eq!(tt.class, c.class);
        }
    }

    fn doubled_tet() -> Triangulation {
        let g: Vec<[Gluing; 4]> = vec![
            std::array::from_fn(|_| Gluing { tet: 1, perm: Perm4::IDENTITY }),
            std::array::from_fn(|_| Gluing { tet: 0, perm: Perm4::IDENTITY }),
        ];
        Triangulation::from_gluings("double", g)
    }

    #[test]
    fn classify_23_agrees_with_real_enhancement_behavior() {
        for t in [doubled_tet(), load_fixture("m004")] {
            let sk = Skeleta::compute(&t);
            let eps = orient(&t).unwrap();
            for b in enumerate_branchings(&t, &sk) {
                let omega = induced_prebranching(&t, &sk, &b, &eps);
                for site in enumerate_sites(&t, &sk, MoveKind::M23) {
                    let tt = classify_23(&t, &sk, &b, site).unwrap();
                    let be =
                        enhance_positive(&t, MoveKind::M23, site, &Decoration::Branching(b.clone()))
                            .unwrap();
                    let pe = enhance_positive(
                        &t,
                        MoveKind::M23,
                        site,
                        &Decoration::PreBranching(omega.clone()),
                    )
                    .unwrap();
                    // the table's forcedness predictions hold on the real site
                    assert_eq!(
                        pe.forced,
                        tt.class == TransitClass::NonAmbiguous,
                        "couple {:?}",
                        tt.couple
                    );
                    assert_eq!(
                        be.forced,
                        matches!(tt.class, TransitClass::NonAmbiguous | TransitClass::ForcedAmbiguous),
                        "couple {:?}",
                        tt.couple
                    );
                    // bump <=> apexes both pits or both sources in the tet orders
                    let Site::Face { tet, face } = site else { unreachable!() };
                    let g = t.gluing(tet, face);
                    let a1 = b.tet_order(&sk, tet).unwrap().iter().position(|&v| v == face).unwrap();
                    let a2 = b
                        .tet_order(&sk, g.tet)
                        .unwrap()
                        .iter()
                        .position(|&v| v == g.perm.apply(face))
                        .unwrap();
                    let bump = a1 == a2 && matches!(a1, 0 | 3);
                    assert_eq!(tt.class == TransitClass::Bump, bump);
                    // Schaeffer: the 5 tets of the transit share one sign
                    if tt.schaeffer {
                        let b2 = be.outputs[0].as_branching().unwrap();
                        let sk2 = Skeleta::compute(&be.result.tri);
                        let eps2 =
                            transfer_orientation(&eps, &be.result, orient(&be.result.tri).unwrap());
                        let mut signs: Vec<i8> = be
                            .result
                            .new_tets
                            .iter()
                            .map(|&nt| b2.tet_sign(&sk2, nt, &eps2).unwrap())
                            .collect();
                        signs.push(b.tet_sign(&sk, tet, &eps).unwrap());
                        signs.push(b.tet_sign(&sk, g.tet, &eps).unwrap());
                        // the auxiliary orientation may be the ambient one or
                        // its opposite; equal signs are equal either way
                        assert!(signs.iter().all(|&s| s == signs[0]), "couple {:?}", tt.couple);
                    }
                }
            }
        }
    }

    #[test]
    fn quadrilateral_census_is_internally_consistent() {
        for t in [doubled_tet(), load_fixture("m004")] {
            let sk = Skeleta::compute(&t);
            let eps = orient(&t).unwrap();
            for b in enumerate_branchings(&t, &sk) {
                let mut classes = Vec::new();
                for (site, tt) in census_02q(&t, &sk, &b, &eps) {
                    // bump <=> not sliding, by the pit/source rule
                    let bump = tt.couple.0 .1 == tt.couple.1 .1 && matches!(tt.couple.0 .1, 0 | 2);
                    assert_eq!(tt.class == TransitClass::Bump, bump);
                    // non ambiguous implies forced
                    if tt.class == TransitClass::NonAmbiguous {
                        let be = enhance_positive(
                            &t,
                            MoveKind::M02Q,
                            site,
                            &Decoration::Branching(b.clone()),
                        )
                        .unwrap();
                        assert!(be.forced);
                    }
                    classes.push(tt.class);
                }
                assert!(!classes.is_empty());
            }
        }
    }
}
