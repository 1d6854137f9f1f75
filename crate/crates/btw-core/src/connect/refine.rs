//! Two-step branched refinement: a 1->4 in every tetrahedron, a 1->4 beside
//! every original face, then a 2->3 bump killing each original face. The
//! original edges persist with their orientations and become good ambiguous.

use crate::connect::sequence::{decorated_signature, MoveSequence, MoveStep};
use crate::connect::track::{transport_edge_class, transport_side};
use crate::decor::branching::Branching;
use crate::moves::{enhance_positive, Decoration, Enhancement, MoveKind, Site};
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;

pub struct Refined {
    pub tri: Triangulation,
    pub branching: Branching,
    pub steps: Vec<MoveStep>,
    /// original edge class -> its class in the refined triangulation
    pub edge_map: Vec<usize>,
    /// step counts of the three phases, in order
    pub n_phase1: usize,
    pub n_phase2: usize,
    pub n_phase3: usize,
}

impl Refined {
    pub fn certificate(&self, t0: &Triangulation, b0: &Branching) -> MoveSequence {
        MoveSequence {
            steps: self.steps.clone(),
            start: decorated_signature(t0, &Decoration::Branching(b0.clone())).to_string(),
            end: decorated_signature(&self.tri, &Decoration::Branching(self.branching.clone()))
                .to_string(),
        }
    }
}

fn as_branching(d: &Decoration) -> Branching {
    match d {
        Decoration::Branching(b) => b.clone(),
        Decoration::PreBranching(_) => unreachable!("branched enhancement yields branchings"),
    }
}

// the unique 1->4 enhancement making the fresh center vertex a sink (a pit)
// in all four children
fn pit_choice(enh: &Enhancement) -> usize {
    let sk = Skeleta::compute(&enh.result.tri);
    let hits: Vec<usize> = enh
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, out)| {
            let b = as_branching(out);
            enh.result.new_tets.iter().enumerate().all(|(v, &child)| {
                b.tet_order(&sk, child).expect("enhanced branchings are valid")[3] == v as u8
            })
        })
        .map(|(c, _)| c)
        .collect();
    assert_eq!(hits.len(), 1, "exactly one 1->4 enhancement has a pit center");
    hits[0]
}

pub fn refine_two_step(t0: &Triangulation, b0: &Branching) -> Refined {
    let sk0 = Skeleta::compute(t0);
    let n = t0.n_tets();
    let n_faces = sk0.n_faces();
    let mut t = t0.clone();
    let mut b = b0.clone();
    let mut sk = sk0.clone();
    let mut steps: Vec<MoveStep> = Vec::new();
    let mut edge_loc: Vec<usize> = (0..sk0.n_edges()).collect();
    let mut side0: Vec<Option<(usize, u8)>> =
        sk0.face_classes.iter().map(|fc| Some(fc.sides[0])).collect();
    let mut tet_loc: Vec<usize> = (0..n).collect();

    fn apply(
        t: &mut Triangulation,
        b: &mut Branching,
        sk: &mut Skeleta,
        edge_loc: &mut [usize],
        side0: &mut [Option<(usize, u8)>],
        tet_loc: &mut [usize],
        steps: &mut Vec<MoveStep>,
        kind: MoveKind,
        site: Site,
        pick: &dyn Fn(&Enhancement) -> usize,
    ) {
        let enh = enhance_positive(t, kind, site, &Decoration::Branching(b.clone()))
            .expect("refinement moves are positive transits");
        let choice = pick(&enh);
        let sk2 = Skeleta::compute(&enh.result.tri);
        for e in edge_loc.iter_mut() {
            *e = transport_edge_class(sk, *e, &enh.result, &sk2)
                .expect("original edges persist through the refinement");
        }
        for s in side0.iter_mut() {
            // a side vanishes exactly when its own killing 2->3 consumes it
            *s = s.and_then(|s| transport_side(&enh.result, s));
        }
        for loc in tet_loc.iter_mut() {
            if let Some(j) = enh.result.tet_map[*loc] {
                *loc = j;
            }
        }
        steps.push(MoveStep { kind, site, choice });
        *b = as_branching(&enh.outputs[choice]);
        *t = enh.result.tri;
        *sk = sk2;
    }

    // phase 1: subdivide every original tetrahedron
    for i in 0..n {
        let site = Site::Tet { tet: tet_loc[i] };
        apply(
            &mut t, &mut b, &mut sk, &mut edge_loc, &mut side0, &mut tet_loc, &mut steps,
            MoveKind::M14, site, &pit_choice,
        );
    }

    // phase 2: subdivide the side-0 child beside every original face
    for c in 0..n_faces {
        let site = Site::Tet { tet: side0[c].expect("sides live until phase 3").0 };
        apply(
            &mut t, &mut b, &mut sk, &mut edge_loc, &mut side0, &mut tet_loc, &mut steps,
            MoveKind::M14, site, &pit_choice,
        );
    }

    // phase 3: kill every original face with a bump 2->3, orienting the new
    // central edge into the phase-2 vertex (model vertex 0 of the site side)
    for c in 0..n_faces {
        let (ct, cf) = side0[c].expect("sides live until their killing move");
        let site = Site::Face { tet: ct, face: cf };
        apply(
            &mut t, &mut b, &mut sk, &mut edge_loc, &mut side0, &mut tet_loc, &mut steps,
            MoveKind::M23, site,
            &|enh: &Enhancement| {
                assert_eq!(enh.outputs.len(), 2, "the killing 2->3 is a bump transit");
                let sk2 = Skeleta::compute(&enh.result.tri);
                let hits: Vec<usize> = enh
                    .outputs
                    .iter()
                    .enumerate()
                    .filter(|(_, out)| {
                        as_branching(out).local_dir(&sk2, enh.result.new_tets[0], 0, 1) < 0
                    })
                    .map(|(ch, _)| ch)
                    .collect();
                assert_eq!(hits.len(), 1);
                hits[0]
            },
        );
    }

    Refined {
        tri: t,
        branching: b,
        steps,
        edge_map: edge_loc,
        n_phase1: n,
        n_phase2: n_faces,
        n_phase3: n_faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::sequence::certify;
    use crate::decor::branching::{good_ambiguous_edges, enumerate_branchings};
    use crate::fixtures::load_fixture;

    #[test]
    fn m004_refinement_counts_certify_and_persist() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let bs = enumerate_branchings(&t, &sk);
        let mut tables: Vec<_> = Vec::new();
        for b in &bs {
            let r = refine_two_step(&t, b);
            assert_eq!(r.tri.n_tets(), 12 * t.n_tets());
            assert_eq!(
                r.steps.len(),
                r.n_phase1 + r.n_phase2 + r.n_phase3
            );
            certify(&t, &Decoration::Branching(b.clone()), &r.certificate(&t, b)).unwrap();
            // the original edges keep their orientation and turn good ambiguous
            let skr = Skeleta::compute(&r.tri);
            let good = good_ambiguous_edges(&r.branching, &skr, &r.tri);
            for (e0, &er) in r.edge_map.iter().enumerate() {
                assert!(good.contains(&er), "original edge {e0} must be good ambiguous");
            }
            tables.push((r.tri.gluings().to_vec(), r.edge_map.clone()));
        }
        // the naked refinement does not depend on the branching
        for w in tables.windows(2) {
            assert_eq!(w[0], w[1]);
        }
    }

    #[test]
    fn added_vertices_are_pits_at_creation() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let b = enumerate_branchings(&t, &sk).into_iter().next().unwrap();
        let r = refine_two_step(&t, &b);
        // replay the certificate and re-check the pit property move by move
        let mut cur = (t.clone(), Decoration::Branching(b.clone()));
        for step in &r.steps {
            let enh =
                enhance_positive(&cur.0, step.kind, step.site, &cur.1).unwrap();
            if step.kind == MoveKind::M14 {
                assert_eq!(pit_choice(&enh), step.choice);
            }
            cur = (enh.result.tri, enh.outputs[step.choice].clone());
        }
    }
}
