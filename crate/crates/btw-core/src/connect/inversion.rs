//! Expanding the inversion of a good ambiguous edge into decorated moves: a
//! palindrome of 2->3 moves shrinking the star to valence two, a negative
//! then positive quadrilateral lune pair realizing the flip, and 3->2 undos.

use crate::connect::sequence::{decorated_signature, MoveSequence, MoveStep};
use crate::connect::track::transport_edge_class;
use crate::decor::branching::{good_ambiguous_edges, good_i, good_ii, is_ambiguous, Branching};
use crate::moves::{enhance_negative, enhance_positive, Decoration, MoveKind, MoveResult, Site};
use crate::skeleta::Skeleta;
use crate::tri::Triangulation;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InversionError {
    #[error("edge class {0} is not good ambiguous")]
    NotGoodAmbiguous(usize),
    /// the shrunk star's lune is not removable: its outer faces glue back
    /// into the lune, i.e. the lune is (almost) the whole triangulation
    #[error("the lune at edge class {0} cannot be removed")]
    Blocked(usize),
}

/// Result of an expanded inversion, with caller-supplied edge classes and the
/// inverted class itself followed through every move.
pub struct InversionOutcome {
    pub steps: Vec<MoveStep>,
    pub tri: Triangulation,
    pub branching: Branching,
    /// new index of the inverted class
    pub e_class: usize,
    /// new indices of the caller's tracked classes (None if consumed)
    pub tracked: Vec<Option<usize>>,
}

pub fn expand_good_inversion(
    t: &Triangulation,
    b: &Branching,
    e: usize,
) -> Result<MoveSequence, InversionError> {
    let out = expand_inversion_tracked(t, b, e, &[])?;
    Ok(MoveSequence {
        steps: out.steps,
        start: decorated_signature(t, &Decoration::Branching(b.clone())).to_string(),
        end: decorated_signature(t, &Decoration::Branching(b.with_inverted(e))).to_string(),
    })
}

fn as_branching(d: &Decoration) -> &Branching {
    match d {
        Decoration::Branching(b) => b,
        Decoration::PreBranching(_) => unreachable!("branched enhancement yields branchings"),
    }
}

fn still_good(t: &Triangulation, sk: &Skeleta, b: &Branching, e: usize) -> bool {
    is_ambiguous(b, sk, t, e) && good_i(sk, e) && good_ii(b, sk, e)
}

fn transport_all(
    sk_old: &Skeleta,
    classes: &[Option<usize>],
    res: &MoveResult,
    sk_new: &Skeleta,
) -> Vec<Option<usize>> {
    classes
        .iter()
        .map(|c| c.and_then(|c| transport_edge_class(sk_old, c, res, sk_new)))
        .collect()
}

pub fn expand_inversion_tracked(
    t0: &Triangulation,
    b0: &Branching,
    e0: usize,
    tracked0: &[usize],
) -> Result<InversionOutcome, InversionError> {
    let mut sk = Skeleta::compute(t0);
    if !good_ambiguous_edges(b0, &sk, t0).contains(&e0) {
        return Err(InversionError::NotGoodAmbiguous(e0));
    }
    let target = decorated_signature(t0, &Decoration::Branching(b0.with_inverted(e0))).to_string();
    let mut t = t0.clone();
    let mut b = b0.clone();
    let mut e = e0;
    let mut undo: Vec<usize> = Vec::new();
    let mut tracked: Vec<Option<usize>> = tracked0.iter().map(|&c| Some(c)).collect();
    let mut steps: Vec<MoveStep> = Vec::new();

    // shrink the star: a 2->3 at a face between link-consecutive star tets
    // whose arcs conflict drops the valence by one and keeps e good ambiguous
    while sk.edge_classes[e].valence > 2 {
        let link = sk.edge_classes[e].link.clone();
        let k = link.len();
        let agrees: Vec<bool> = link
            .iter()
            .map(|s| {
                let (tail, head) = s.arc;
                let (lo, hi) = if tail < head { (tail, head) } else { (head, tail) };
                (b.local_dir(&sk, s.tet, lo, hi) > 0) == (tail == lo)
            })
            .collect();
        let mut advanced = false;
        'pairs: for j in 0..k {
            if agrees[j] == agrees[(j + 1) % k] {
                continue;
            }
            let site = Site::Face { tet: link[j].tet, face: link[j].exit_face };
            let Ok(enh) =
                enhance_positive(&t, MoveKind::M23, site, &Decoration::Branching(b.clone()))
            else {
                continue;
            };
            let sk2 = Skeleta::compute(&enh.result.tri);
            let Some(e2) = transport_edge_class(&sk, e, &enh.result, &sk2) else { continue };
            for (c, out) in enh.outputs.iter().enumerate() {
                let b2 = as_branching(out);
                if !still_good(&enh.result.tri, &sk2, b2, e2) {
                    continue;
                }
                steps.push(MoveStep { kind: MoveKind::M23, site, choice: c });
                tracked = transport_all(&sk, &tracked, &enh.result, &sk2);
                undo = undo
                    .iter()
                    .map(|&u| transport_edge_class(&sk, u, &enh.result, &sk2))
                    .collect::<Option<_>>()
                    .expect("central classes persist until their 3->2 undo");
                let (MoveKind::M32, Site::Edge { tet, a, b: bb }) = enh.result.inverse else {
                    unreachable!("2->3 inverts through a 3->2 edge site")
                };
                undo.push(sk2.edge_class_of(tet, a, bb));
                t = enh.result.tri;
                b = b2.clone();
                sk = sk2;
                e = e2;
                advanced = true;
                break 'pairs;
            }
        }
        assert!(
            advanced,
            "a good ambiguous edge admits a star-shrinking transit at some conflicting pair"
        );
    }

    // valence two: remove the quadrilateral lune at e, then re-create it with
    // the opposite prevailing orientation
    let (et, ea, eb) = sk.edge_classes[e].embeddings[0];
    let site_neg = Site::Edge { tet: et, a: ea, b: eb };
    let mid_target =
        decorated_signature(&t, &Decoration::Branching(b.with_inverted(e))).to_string();
    let Ok(enh_neg) =
        enhance_negative(&t, MoveKind::M20Q, site_neg, &Decoration::Branching(b.clone()))
    else {
        return Err(InversionError::Blocked(e0));
    };
    let (MoveKind::M02Q, lune_site) = enh_neg.result.inverse else {
        unreachable!("2->0 lune inverts through a 0->2 lune site")
    };
    for (c1, out1) in enh_neg.outputs.iter().enumerate() {
        let Ok(enh_pos) =
            enhance_positive(&enh_neg.result.tri, MoveKind::M02Q, lune_site, out1)
        else {
            continue;
        };
        let sk_back = Skeleta::compute(&enh_pos.result.tri);
        for (c2, out2) in enh_pos.outputs.iter().enumerate() {
            let b_back = as_branching(out2);
            if decorated_signature(&enh_pos.result.tri, &Decoration::Branching(b_back.clone()))
                .to_string()
                != mid_target
            {
                continue;
            }
            // the flip succeeded. Removing the lune merges edge classes, so
            // cells cannot be followed through the pair move by move; instead
            // carry them across by the decorated isomorphism from the flipped
            // pre-flip state onto the re-created one.
            let flipped = Decoration::Branching(b.with_inverted(e));
            let psi = crate::connect::sequence::find_decorated_iso(
                &t,
                &flipped,
                &enh_pos.result.tri,
                out2,
            )
            .expect("matching decorated signatures witness an isomorphism");
            let map_class = |c: usize| -> usize {
                let (i, a, bb) = sk.edge_classes[c].embeddings[0];
                sk_back.edge_class_of(psi.tet[i], psi.perm[i].apply(a), psi.perm[i].apply(bb))
            };
            let tracked_back: Vec<Option<usize>> =
                tracked.iter().map(|c| c.map(map_class)).collect();
            let undo_back: Vec<usize> = undo.iter().map(|&u| map_class(u)).collect();
            let e_back = map_class(e);
            let mut acc = steps.clone();
            acc.push(MoveStep { kind: MoveKind::M20Q, site: site_neg, choice: c1 });
            acc.push(MoveStep { kind: MoveKind::M02Q, site: lune_site, choice: c2 });
            if let Some(out) = undo_dfs(
                &enh_pos.result.tri,
                b_back,
                &undo_back,
                &tracked_back,
                e_back,
                acc,
                &target,
            ) {
                return Ok(out);
            }
        }
    }
    unreachable!("the quadrilateral flip of a good ambiguous valence-two edge always completes")
}

// unwind pending 3->2 moves in LIFO order, searching enhancement choices for
// the branch whose endpoint matches the inverted-branching signature
fn undo_dfs(
    t: &Triangulation,
    b: &Branching,
    undo: &[usize],
    tracked: &[Option<usize>],
    e: usize,
    steps: Vec<MoveStep>,
    target: &str,
) -> Option<InversionOutcome> {
    let sk = Skeleta::compute(t);
    if undo.is_empty() {
        let got = decorated_signature(t, &Decoration::Branching(b.clone())).to_string();
        if got == target {
            return Some(InversionOutcome {
                steps,
                tri: t.clone(),
                branching: b.clone(),
                e_class: e,
                tracked: tracked.to_vec(),
            });
        }
        return None;
    }
    let c = *undo.last().unwrap();
    let (ct, ca, cb) = sk.edge_classes[c].embeddings[0];
    let site = Site::Edge { tet: ct, a: ca, b: cb };
    let enh = enhance_negative(t, MoveKind::M32, site, &Decoration::Branching(b.clone())).ok()?;
    let sk2 = Skeleta::compute(&enh.result.tri);
    let rest: Vec<usize> = undo[..undo.len() - 1]
        .iter()
        .map(|&u| {
            transport_edge_class(&sk, u, &enh.result, &sk2)
                .expect("central classes persist until their 3->2 undo")
        })
        .collect();
    let tracked2 = transport_all(&sk, tracked, &enh.result, &sk2);
    let e2 = transport_edge_class(&sk, e, &enh.result, &sk2)
        .expect("the inverted class survives the 3->2 undos");
    for (ch, out) in enh.outputs.iter().enumerate() {
        let mut acc = steps.clone();
        acc.push(MoveStep { kind: MoveKind::M32, site, choice: ch });
        if let Some(res) =
            undo_dfs(&enh.result.tri, as_branching(out), &rest, &tracked2, e2, acc, target)
        {
            return Some(res);
        }
    }
    None
}
