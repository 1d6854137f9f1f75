//! Replayable move certificates and the isomorphism transport used to stitch
//! them together. A certificate records naked sites plus enhancement choices;
//! correctness of any construction that emits one reduces to replaying it.

use crate::decor::{branched_signature, prebranched_signature};
use crate::io::{IoError, MOVES_FORMAT};
use crate::moves::{enhance_negative, enhance_positive, Decoration, EnhanceError, Enhancement};
use crate::moves::{MoveKind, MoveResult, Site};
use crate::perm::Perm4;
use crate::sig::IsoSignature;
use crate::skeleta::{edge_link, Skeleta, EDGE_VERTS};
use crate::tri::Triangulation;
use serde_json::{json, Value};
use thiserror::Error;

/// One decorated move: the naked site plus the index of the chosen output in
/// the deterministic enhancement order (+1 before -1 at each free class).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveStep {
    pub kind: MoveKind,
    pub site: Site,
    pub choice: usize,
}

/// A replayable certificate between two decorated triangulations, with the
/// decorated signatures of its endpoints frozen in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub steps: Vec<MoveStep>,
    pub start: String,
    pub end: String,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Enhance { step: usize, source: EnhanceError },
    #[error("step {step}: choice {choice} out of {available} outputs")]
    BadChoice { step: usize, choice: usize, available: usize },
    #[error("step {step}: no output matches the transported decoration")]
    NoMatchingOutput { step: usize },
    #[error("replayed state signature {got} differs from the recorded {want}")]
    EndpointMismatch { want: String, got: String },
}

pub fn decorated_signature(t: &Triangulation, d: &Decoration) -> IsoSignature {
    let sk = Skeleta::compute(t);
    match d {
        Decoration::Branching(b) => branched_signature(t, &sk, b),
        Decoration::PreBranching(p) => prebranched_signature(t, &sk, p),
    }
}

fn enhance_any(
    t: &Triangulation,
    kind: MoveKind,
    site: Site,
    d: &Decoration,
) -> Result<Enhancement, EnhanceError> {
    if kind.is_positive() {
        enhance_positive(t, kind, site, d)
    } else {
        enhance_negative(t, kind, site, d)
    }
}

/// Apply one decorated step.
pub fn apply_step(
    t: &Triangulation,
    d: &Decoration,
    step: &MoveStep,
    index: usize,
) -> Result<(Triangulation, Decoration), ReplayError> {
    let enh = enhance_any(t, step.kind, step.site, d)
        .map_err(|source| ReplayError::Enhance { step: index, source })?;
    let out = enh.outputs.get(step.choice).ok_or(ReplayError::BadChoice {
        step: index,
        choice: step.choice,
        available: enh.outputs.len(),
    })?;
    Ok((enh.result.tri, out.clone()))
}

pub fn replay(
    t0: &Triangulation,
    d0: &Decoration,
    steps: &[MoveStep],
) -> Result<(Triangulation, Decoration), ReplayError> {
    let mut t = t0.clone();
    let mut d = d0.clone();
    for (i, step) in steps.iter().enumerate() {
        (t, d) = apply_step(&t, &d, step, i)?;
    }
    Ok((t, d))
}

/// Replay a full certificate and verify both endpoint signatures.
pub fn certify(
    t0: &Triangulation,
    d0: &Decoration,
    seq: &MoveSequence,
) -> Result<(Triangulation, Decoration), ReplayError> {
    let start = decorated_signature(t0, d0).to_string();
    if start != seq.start {
        return Err(ReplayError::EndpointMismatch { want: seq.start.clone(), got: start });
    }
    let (t, d) = replay(t0, d0, &seq.steps)?;
    let end = decorated_signature(&t, &d).to_string();
    if end != seq.end {
        return Err(ReplayError::EndpointMismatch { want: seq.end.clone(), got: end });
    }
    Ok((t, d))
}

/// Forward replay keeping every intermediate state and the recorded inverse
/// of each step (anchored in the labels of the following state).
pub struct Trace {
    pub states: Vec<(Triangulation, Decoration)>,
    pub inverses: Vec<(MoveKind, Site)>,
}

pub fn replay_trace(
    t0: &Triangulation,
    d0: &Decoration,
    steps: &[MoveStep],
) -> Result<Trace, ReplayError> {
    let mut states = vec![(t0.clone(), d0.clone())];
    let mut inverses = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let (t, d) = states.last().unwrap();
        let enh = enhance_any(t, step.kind, step.site, d)
            .map_err(|source| ReplayError::Enhance { step: i, source })?;
        let out = enh.outputs.get(step.choice).ok_or(ReplayError::BadChoice {
            step: i,
            choice: step.choice,
            available: enh.outputs.len(),
        })?;
        inverses.push(enh.result.inverse);
        states.push((enh.result.tri, out.clone()));
    }
    Ok(Trace { states, inverses })
}

/// A label-level isomorphism between two triangulations: tetrahedron `i` of
/// the source becomes `tet[i]` with vertex relabeling `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iso {
    pub tet: Vec<usize>,
    pub perm: Vec<Perm4>,
}

impl Iso {
    pub fn identity(n: usize) -> Iso {
        Iso { tet: (0..n).collect(), perm: vec![Perm4::IDENTITY; n] }
    }

    /// Image of a site. Lune positions are re-derived by walking both links,
    /// because the deterministic walk may start elsewhere or run reversed on
    /// the image side.
    pub fn map_site(&self, t1: &Triangulation, t2: &Triangulation, site: Site) -> Site {
        match site {
            Site::Face { tet, face } => {
                Site::Face { tet: self.tet[tet], face: self.perm[tet].apply(face) }
            }
            Site::Edge { tet, a, b } => Site::Edge {
                tet: self.tet[tet],
                a: self.perm[tet].apply(a),
                b: self.perm[tet].apply(b),
            },
            Site::Tet { tet } => Site::Tet { tet: self.tet[tet] },
            Site::Vertex { tet, v } => {
                Site::Vertex { tet: self.tet[tet], v: self.perm[tet].apply(v) }
            }
            Site::Lune { tet, a, b, p, q } => {
                let link1 = edge_link(t1, (tet, a, b));
                let (j, x, y) =
                    (self.tet[tet], self.perm[tet].apply(a), self.perm[tet].apply(b));
                let link2 = edge_link(t2, (j, x, y));
                let map_pos = |pos: usize| -> usize {
                    let s = &link1[pos];
                    let img = (self.tet[s.tet], self.perm[s.tet].apply(s.exit_face));
                    let g = t2.gluing(img.0, img.1);
                    let partner = (g.tet, g.perm.apply(img.1));
                    let e = (
                        self.perm[s.tet].apply(s.edge.0),
                        self.perm[s.tet].apply(s.edge.1),
                    );
                    link2
                        .iter()
                        .position(|s2| {
                            let ex = (s2.tet, s2.exit_face);
                            (ex == img && (s2.edge == e || s2.edge == (e.1, e.0)))
                                || ex == partner
                        })
                        .expect("image link must cross the image of a crossed face")
                };
                let (p2, q2) = (map_pos(p), map_pos(q));
                assert_ne!(p2, q2, "lune positions must stay distinct under transport");
                Site::Lune { tet: j, a: x, b: y, p: p2, q: q2 }
            }
        }
    }
}

/// Grow an isomorphism from one seeded tetrahedron; an iso of a connected
/// triangulation is determined by the image of a single frame.
pub fn extend_iso(
    t1: &Triangulation,
    t2: &Triangulation,
    seed: usize,
    img: usize,
    perm: Perm4,
) -> Option<Iso> {
    let n = t1.n_tets();
    if t2.n_tets() != n {
        return None;
    }
    let mut tet = vec![usize::MAX; n];
    let mut pm = vec![Perm4::IDENTITY; n];
    tet[seed] = img;
    pm[seed] = perm;
    let mut queue = vec![seed];
    let mut k = 0;
    while k < queue.len() {
        let i = queue[k];
        k += 1;
        let (j, p) = (tet[i], pm[i]);
        for f in 0..4u8 {
            let g1 = t1.gluing(i, f);
            let g2 = t2.gluing(j, p.apply(f));
            let q = g2.perm.compose(&p).compose(&g1.perm.inverse());
            if tet[g1.tet] == usize::MAX {
                tet[g1.tet] = g2.tet;
                pm[g1.tet] = q;
                queue.push(g1.tet);
            } else if tet[g1.tet] != g2.tet || pm[g1.tet] != q {
                return None;
            }
        }
    }
    if queue.len() != n {
        return None;
    }
    let mut seen = vec![false; n];
    for &j in &tet {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(Iso { tet, perm: pm })
}

/// Whether `iso` carries decoration d1 to d2.
pub fn decoration_maps(
    sk1: &Skeleta,
    d1: &Decoration,
    sk2: &Skeleta,
    d2: &Decoration,
    iso: &Iso,
) -> bool {
    match (d1, d2) {
        (Decoration::Branching(b1), Decoration::Branching(b2)) => {
            iso.tet.iter().enumerate().all(|(i, &j)| {
                EDGE_VERTS.iter().all(|&(a, b)| {
                    let (x, y) = (iso.perm[i].apply(a), iso.perm[i].apply(b));
                    // +1 means x -> y on the image side
                    let dir2 = if x < y {
                        b2.local_dir(sk2, j, x, y)
                    } else {
                        -b2.local_dir(sk2, j, y, x)
                    };
                    b1.local_dir(sk1, i, a, b) == dir2
                })
            })
        }
        (Decoration::PreBranching(p1), Decoration::PreBranching(p2)) => {
            iso.tet.iter().enumerate().all(|(i, &j)| {
                (0..4u8).all(|f| p1.ingoing(sk1, i, f) == p2.ingoing(sk2, j, iso.perm[i].apply(f)))
            })
        }
        _ => false,
    }
}

/// Search for a decorated isomorphism by seeding every frame of tet 0.
pub fn find_decorated_iso(
    t1: &Triangulation,
    d1: &Decoration,
    t2: &Triangulation,
    d2: &Decoration,
) -> Option<Iso> {
    if t1.n_tets() != t2.n_tets() {
        return None;
    }
    let sk1 = Skeleta::compute(t1);
    let sk2 = Skeleta::compute(t2);
    for img in 0..t2.n_tets() {
        for p in Perm4::all() {
            if let Some(iso) = extend_iso(t1, t2, 0, img, p) {
                if decoration_maps(&sk1, d1, &sk2, d2, &iso) {
                    return Some(iso);
                }
            }
        }
    }
    None
}

/// Isomorphism between the results of corresponding moves, seeded at a kept
/// tetrahedron (kept tets keep their vertex labels through the rewrite).
pub fn recover_iso(rec: &MoveResult, act: &MoveResult, before: &Iso) -> Iso {
    let seed = if let Some((i, j)) = rec.tet_map.iter().enumerate().find_map(|(i, m)| m.map(|j| (i, j)))
    {
        let j_act = act.tet_map[before.tet[i]].expect("the corresponding tetrahedron is kept");
        (j, j_act, before.perm[i])
    } else {
        // nothing kept: seed from a region boundary side, present in both
        // face maps since the rewritten regions correspond under `before`
        let &((i, f), (nt, _), p) = rec
            .face_map
            .first()
            .expect("a move that keeps no tetrahedron still has boundary faces");
        let act_side = (before.tet[i], before.perm[i].apply(f));
        let &(_, (nt2, _), p2) = act
            .face_map
            .iter()
            .find(|&&(from, _, _)| from == act_side)
            .expect("the corresponding boundary side survives the corresponding move");
        (nt, nt2, p2.compose(&before.perm[i]).compose(&p.inverse()))
    };
    extend_iso(&rec.tri, &act.tri, seed.0, seed.1, seed.2)
        .expect("corresponding moves on isomorphic states yield isomorphic results")
}

/// Replay recorded steps against an isomorphic actual state, translating
/// sites through the running isomorphism and re-resolving each enhancement
/// choice on the actual side.
pub fn transport_replay(
    rec_t0: &Triangulation,
    rec_d0: &Decoration,
    steps: &[MoveStep],
    act_t0: &Triangulation,
    act_d0: &Decoration,
    iso0: Iso,
) -> Result<(Vec<MoveStep>, Triangulation, Decoration, Iso), ReplayError> {
    let mut rec_t = rec_t0.clone();
    let mut rec_d = rec_d0.clone();
    let mut act_t = act_t0.clone();
    let mut act_d = act_d0.clone();
    let mut iso = iso0;
    let mut out = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let rec_enh = enhance_any(&rec_t, step.kind, step.site, &rec_d)
            .map_err(|source| ReplayError::Enhance { step: i, source })?;
        let rec_out = rec_enh.outputs.get(step.choice).ok_or(ReplayError::BadChoice {
            step: i,
            choice: step.choice,
            available: rec_enh.outputs.len(),
        })?;
        let act_site = iso.map_site(&rec_t, &act_t, step.site);
        let act_enh = enhance_any(&act_t, step.kind, act_site, &act_d)
            .map_err(|source| ReplayError::Enhance { step: i, source })?;
        let iso2 = recover_iso(&rec_enh.result, &act_enh.result, &iso);
        let sk_r = Skeleta::compute(&rec_enh.result.tri);
        let sk_a = Skeleta::compute(&act_enh.result.tri);
        let choice = act_enh
            .outputs
            .iter()
            .position(|o| decoration_maps(&sk_r, rec_out, &sk_a, o, &iso2))
            .ok_or(ReplayError::NoMatchingOutput { step: i })?;
        out.push(MoveStep { kind: step.kind, site: act_site, choice });
        rec_t = rec_enh.result.tri;
        rec_d = rec_out.clone();
        act_t = act_enh.result.tri;
        act_d = act_enh.outputs[choice].clone();
        iso = iso2;
    }
    Ok((out, act_t, act_d, iso))
}

/// Replay a forward trace backwards from an actual state isomorphic to its
/// final state. Each recorded inverse is translated through the running
/// isomorphism, and the output matching the earlier recorded state (up to
/// decorated isomorphism) is selected. Returns the actual steps, the final
/// actual state, and an isomorphism from the trace's initial state onto it.
pub fn reverse_transported(
    trace: &Trace,
    act_t0: &Triangulation,
    act_d0: &Decoration,
    iso_fin: Iso,
) -> Result<(Vec<MoveStep>, Triangulation, Decoration, Iso), ReplayError> {
    let k = trace.inverses.len();
    let mut act_t = act_t0.clone();
    let mut act_d = act_d0.clone();
    let mut iso = iso_fin; // from trace.states[j+1].0 onto act_t
    let mut out = Vec::new();
    for j in (0..k).rev() {
        let (ik, is) = trace.inverses[j];
        let (rec_t_next, _) = &trace.states[j + 1];
        let (rec_t_prev, rec_d_prev) = &trace.states[j];
        let act_site = iso.map_site(rec_t_next, &act_t, is);
        let enh = enhance_any(&act_t, ik, act_site, &act_d)
            .map_err(|source| ReplayError::Enhance { step: j, source })?;
        let mut chosen = None;
        for (c, o) in enh.outputs.iter().enumerate() {
            if let Some(iso2) = find_decorated_iso(rec_t_prev, rec_d_prev, &enh.result.tri, o) {
                chosen = Some((c, o.clone(), iso2));
                break;
            }
        }
        let (choice, o, iso2) = chosen.ok_or(ReplayError::NoMatchingOutput { step: j })?;
        out.push(MoveStep { kind: ik, site: act_site, choice });
        act_t = enh.result.tri;
        act_d = o;
        iso = iso2;
    }
    Ok((out, act_t, act_d, iso))
}

fn kind_to_str(k: MoveKind) -> String {
    k.to_string()
}

fn kind_from_str(s: &str) -> Option<MoveKind> {
    Some(match s {
        "2->3" => MoveKind::M23,
        "3->2" => MoveKind::M32,
        "0->2q" => MoveKind::M02Q,
        "2->0q" => MoveKind::M20Q,
        "0->2t" => MoveKind::M02T,
        "2->0t" => MoveKind::M20T,
        "1->4" => MoveKind::M14,
        "4->1" => MoveKind::M41,
        _ => return None,
    })
}

pub fn sequence_to_json(seq: &MoveSequence) -> Value {
    let steps: Vec<Value> = seq
        .steps
        .iter()
        .map(|s| {
            json!({
                "kind": kind_to_str(s.kind),
                "site": serde_json::to_value(s.site).unwrap(),
                "choice": s.choice,
            })
        })
        .collect();
    json!({
        "format": MOVES_FORMAT,
        "start": seq.start,
        "end": seq.end,
        "steps": steps,
    })
}

pub fn sequence_from_json(v: &Value) -> Result<MoveSequence, IoError> {
    let fmt = v["format"].as_str().unwrap_or("");
    if fmt != MOVES_FORMAT {
        return Err(IoError::BadFormat(fmt.to_string()));
    }
    let parse = |line: usize, msg: &str| IoError::Parse { line, msg: msg.to_string() };
    let start = v["start"].as_str().ok_or_else(|| parse(0, "missing start"))?.to_string();
    let end = v["end"].as_str().ok_or_else(|| parse(0, "missing end"))?.to_string();
    let arr = v["steps"].as_array().ok_or_else(|| parse(0, "missing steps"))?;
    let mut steps = Vec::new();
    for (i, sv) in arr.iter().enumerate() {
        let ks = sv["kind"].as_str().ok_or_else(|| parse(i, "missing kind"))?;
        let kind = kind_from_str(ks).ok_or_else(|| parse(i, "unknown move kind"))?;
        let site: Site = serde_json::from_value(sv["site"].clone())?;
        let choice = sv["choice"].as_u64().ok_or_else(|| parse(i, "missing choice"))? as usize;
        steps.push(MoveStep { kind, site, choice });
    }
    Ok(MoveSequence { steps, start, end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::fixtures::load_fixture;
    use crate::moves::enumerate_sites;

    #[test]
    fn sequence_json_round_trips() {
        let seq = MoveSequence {
            steps: vec![
                MoveStep { kind: MoveKind::M23, site: Site::Face { tet: 0, face: 2 }, choice: 1 },
                MoveStep {
                    kind: MoveKind::M02Q,
                    site: Site::Lune { tet: 3, a: 1, b: 2, p: 0, q: 4 },
                    choice: 0,
                },
            ],
            start: "a.b".into(),
            end: "c.d".into(),
        };
        let v = sequence_to_json(&seq);
        assert_eq!(v["format"], MOVES_FORMAT);
        assert_eq!(sequence_from_json(&v).unwrap(), seq);
    }

    #[test]
    fn certify_detects_endpoint_mismatch() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let b = enumerate_branchings(&t, &sk).into_iter().next().unwrap();
        let d = Decoration::Branching(b);
        let good = MoveSequence {
            steps: vec![],
            start: decorated_signature(&t, &d).to_string(),
            end: decorated_signature(&t, &d).to_string(),
        };
        assert!(certify(&t, &d, &good).is_ok());
        let bad = MoveSequence { end: "0".into(), ..good };
        assert!(matches!(certify(&t, &d, &bad), Err(ReplayError::EndpointMismatch { .. })));
    }

    #[test]
    fn extend_iso_finds_relabelings_and_rejects_wrong_seeds() {
        let t = load_fixture("m004");
        let perms = [Perm4::new([2, 0, 3, 1]).unwrap(), Perm4::new([1, 3, 0, 2]).unwrap()];
        let t2 = t.relabel(&[1, 0], &perms);
        let iso = extend_iso(&t, &t2, 0, 1, perms[0]).unwrap();
        assert_eq!(iso.tet, vec![1, 0]);
        assert_eq!(iso.perm[0], perms[0]);
        assert_eq!(iso.perm[1], perms[1]);
        // a decorated iso exists for each branching onto its relabeled copy
        let sk = Skeleta::compute(&t);
        for b in enumerate_branchings(&t, &sk) {
            let d = Decoration::Branching(b);
            let sk2 = Skeleta::compute(&t2);
            let found = (0..t2.n_tets())
                .flat_map(|img| Perm4::all().map(move |p| (img, p)))
                .filter_map(|(img, p)| extend_iso(&t, &t2, 0, img, p))
                .any(|iso| {
                    let d2 = transport_decoration(&sk, &d, &sk2, &iso);
                    decoration_maps(&sk, &d, &sk2, &d2, &iso)
                });
            assert!(found);
        }
    }

    // push a decoration through an iso by reading it off the image cells
    fn transport_decoration(
        sk1: &Skeleta,
        d1: &Decoration,
        sk2: &Skeleta,
        iso: &Iso,
    ) -> Decoration {
        match d1 {
            Decoration::Branching(b1) => {
                let mut signs = vec![0i8; sk2.n_edges()];
                for (i, &j) in iso.tet.iter().enumerate() {
                    for &(a, b) in EDGE_VERTS.iter() {
                        let (x, y) = (iso.perm[i].apply(a), iso.perm[i].apply(b));
                        let dir = b1.local_dir(sk1, i, a, b);
                        let (lo, hi, d) = if x < y { (x, y, dir) } else { (y, x, -dir) };
                        let c = sk2.edge_class_of(j, lo, hi);
                        signs[c] = d * sk2.edge_sign_of(j, lo, hi);
                    }
                }
                Decoration::Branching(crate::decor::Branching { signs })
            }
            Decoration::PreBranching(p1) => {
                let mut signs = vec![0i8; sk2.n_faces()];
                for (i, &j) in iso.tet.iter().enumerate() {
                    for f in 0..4u8 {
                        let nf = iso.perm[i].apply(f);
                        let c = sk2.face_class_of(j, nf);
                        let side1 = sk2.face_classes[c].sides[1] == (j, nf);
                        signs[c] = if p1.ingoing(sk1, i, f) == side1 { 1 } else { -1 };
                    }
                }
                Decoration::PreBranching(crate::decor::PreBranching { signs })
            }
        }
    }

    #[test]
    fn transported_and_reversed_replays_return_home() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let b = enumerate_branchings(&t, &sk).into_iter().next().unwrap();
        let d = Decoration::Branching(b);
        let site = enumerate_sites(&t, &sk, MoveKind::M23)[0];
        let steps = vec![MoveStep { kind: MoveKind::M23, site, choice: 0 }];

        // transported replay against a relabeled copy reproduces the result
        let perms = [Perm4::new([2, 0, 3, 1]).unwrap(), Perm4::new([1, 3, 0, 2]).unwrap()];
        let t2 = t.relabel(&[1, 0], &perms);
        let sk2 = Skeleta::compute(&t2);
        let d2 = transport_decoration(&sk, &d, &sk2, &Iso {
            tet: vec![1, 0],
            perm: perms.to_vec(),
        });
        let iso0 = find_decorated_iso(&t, &d, &t2, &d2).unwrap();
        let (act_steps, act_t, act_d, _) =
            transport_replay(&t, &d, &steps, &t2, &d2, iso0).unwrap();
        assert_eq!(act_steps.len(), 1);
        let (rec_t, rec_d) = replay(&t, &d, &steps).unwrap();
        assert_eq!(
            decorated_signature(&act_t, &act_d),
            decorated_signature(&rec_t, &rec_d)
        );

        // reversing the trace from its own endpoint returns to the start
        let trace = replay_trace(&t, &d, &steps).unwrap();
        let (last_t, last_d) = trace.states.last().unwrap().clone();
        let n = last_t.n_tets();
        let (rev, back_t, back_d, _) =
            reverse_transported(&trace, &last_t, &last_d, Iso::identity(n)).unwrap();
        assert_eq!(rev.len(), 1);
        assert_eq!(decorated_signature(&back_t, &back_d), decorated_signature(&t, &d));
    }
}
