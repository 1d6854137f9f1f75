//! Decorated enhancements of the naked moves: given a decoration on the input
//! triangulation, enumerate the decorations on the output that agree with it
//! on the persistent part. Positive moves always admit at least one; negative
//! moves can be blocked.

use super::naked::{apply, MoveError, MoveKind, MoveResult, Site};
use crate::decor::{Branching, PreBranching};
use crate::skeleta::{Skeleta, EDGE_VERTS};
use crate::tri::Triangulation;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoration {
    Branching(Branching),
    PreBranching(PreBranching),
}

impl Decoration {
    pub fn as_branching(&self) -> Option<&Branching> {
        match self {
            Decoration::Branching(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_prebranching(&self) -> Option<&PreBranching> {
        match self {
            Decoration::PreBranching(p) => Some(p),
            _ => None,
        }
    }
}

/// A decorated move: the naked rewrite plus all output decorations that extend
/// the persistent part of the input, in deterministic order (+1 before -1 at
/// each free class, ascending class index).
pub struct Enhancement {
    pub result: MoveResult,
    pub outputs: Vec<Decoration>,
    /// exactly one enhancement exists
    pub forced: bool,
}

#[derive(Debug, Error)]
pub enum EnhanceError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("blocked: {reason}")]
    Blocked { reason: String },
}

/// Enhance a positive naked move. The returned list is never empty.
pub fn enhance_positive(
    t: &Triangulation,
    kind: MoveKind,
    site: Site,
    d: &Decoration,
) -> Result<Enhancement, EnhanceError> {
    if !kind.is_positive() {
        return Err(MoveError::InvalidSite { kind, msg: "not a positive move".into() }.into());
    }
    let enh = enhance(t, kind, site, d)?;
    assert!(
        !enh.outputs.is_empty(),
        "a positive move always admits a decorated enhancement"
    );
    Ok(enh)
}

/// Enhance a negative naked move: succeeds iff the decoration restricted to
/// the disappearing region is an admissible output of the corresponding
/// positive move. `outputs[0]` is the canonical decorated inverse.
pub fn enhance_negative(
    t: &Triangulation,
    kind: MoveKind,
    site: Site,
    d: &Decoration,
) -> Result<Enhancement, EnhanceError> {
    if kind.is_positive() {
        return Err(MoveError::InvalidSite { kind, msg: "not a negative move".into() }.into());
    }
    let enh = enhance(t, kind, site, d)?;
    if enh.outputs.is_empty() {
        return Err(EnhanceError::Blocked {
            reason: "no decoration on the reduced triangulation extends the persistent part"
                .into(),
        });
    }
    Ok(enh)
}

fn enhance(
    t: &Triangulation,
    kind: MoveKind,
    site: Site,
    d: &Decoration,
) -> Result<Enhancement, EnhanceError> {
    let sk = Skeleta::compute(t);
    let result = apply(t, kind, site)?;
    let sk2 = Skeleta::compute(&result.tri);
    let outputs: Vec<Decoration> = match d {
        Decoration::Branching(b) => match branching_constraints(t, &sk, b, &result, &sk2) {
            Ok(partial) => complete(&partial, |signs| {
                Branching { signs: signs.to_vec() }.is_valid(&sk2, &result.tri)
            })
            .into_iter()
            .map(|signs| Decoration::Branching(Branching { signs }))
            .collect(),
            Err(reason) => return Err(EnhanceError::Blocked { reason }),
        },
        Decoration::PreBranching(pb) => match pb_constraints(&sk, pb, &result, &sk2) {
            Ok(partial) => complete(&partial, |signs| {
                PreBranching { signs: signs.to_vec() }.is_valid(&sk2, &result.tri)
            })
            .into_iter()
            .map(|signs| Decoration::PreBranching(PreBranching { signs }))
            .collect(),
            Err(reason) => return Err(EnhanceError::Blocked { reason }),
        },
    };
    let forced = outputs.len() == 1;
    Ok(Enhancement { result, outputs, forced })
}

/// Align an orientation of the output triangulation with the input's: orient()
/// normalizes its first sign arbitrarily, so the result may be the globally
/// reversed orientation. Anchored at a kept tet, or failing that at a region
/// boundary face (the replacing tet sits on the same side of that face, so its
/// sign transfers through the relabeling perm's parity).
pub fn transfer_orientation(eps: &[i8], res: &MoveResult, mut eps2: Vec<i8>) -> Vec<i8> {
    let anchor = res
        .tet_map
        .iter()
        .enumerate()
        .find_map(|(ot, n)| n.map(|nt| (eps[ot], eps2[nt])));
    let (want, have) = anchor.unwrap_or_else(|| {
        let &((ot, _), (nt, _), p) = res
            .face_map
            .iter()
            .find(|e| res.tet_map[e.0 .0].is_none())
            .expect("a move with no kept tets maps some removed boundary face");
        (eps[ot] * p.sign(), eps2[nt])
    });
    if want != have {
        for s in &mut eps2 {
            *s = -*s;
        }
    }
    eps2
}

fn constrain(signs: &mut [Option<i8>], c: usize, s: i8, what: &str) -> Result<(), String> {
    match signs[c] {
        None => {
            signs[c] = Some(s);
            Ok(())
        }
        Some(prev) if prev == s => Ok(()),
        Some(_) => Err(format!("conflicting persistence constraints at {what} {c}")),
    }
}

/// Per-edge-class signs forced by persistence: kept tetrahedra keep their
/// decorated edges verbatim, and region-boundary faces of removed tetrahedra
/// carry their edges onto the new tetrahedra through the recorded face maps.
fn branching_constraints(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    res: &MoveResult,
    sk2: &Skeleta,
) -> Result<Vec<Option<i8>>, String> {
    let mut signs = vec![None; sk2.n_edges()];
    let mut want = |nt: usize, nx: u8, ny: u8, dir: i8| -> Result<(), String> {
        // dir: +1 means nx -> ny
        let c = sk2.edge_class_of(nt, nx, ny);
        if !sk2.edge_classes[c].orientation_consistent {
            return Err(format!("edge class {c} became orientation-inconsistent"));
        }
        let sorted_dir = if nx < ny { dir } else { -dir };
        constrain(&mut signs, c, sorted_dir * sk2.edge_sign_of(nt, nx, ny), "edge class")
    };
    for ot in 0..t.n_tets() {
        let Some(nt) = res.tet_map[ot] else { continue };
        for &(x, y) in EDGE_VERTS.iter() {
            want(nt, x, y, b.local_dir(sk, ot, x, y))?;
        }
    }
    for &((ot, of), (nt, _), p) in &res.face_map {
        if res.tet_map[ot].is_some() {
            continue; // kept side, already covered above through its own tet
        }
        for &(x, y) in EDGE_VERTS.iter() {
            if x == of || y == of {
                continue;
            }
            want(nt, p.apply(x), p.apply(y), b.local_dir(sk, ot, x, y))?;
        }
    }
    Ok(signs)
}

/// Per-face-class signs forced by persistence of the transverse orientations.
fn pb_constraints(
    sk: &Skeleta,
    pb: &PreBranching,
    res: &MoveResult,
    sk2: &Skeleta,
) -> Result<Vec<Option<i8>>, String> {
    let mut signs = vec![None; sk2.n_faces()];
    let mut want = |side: (usize, u8), ingoing: bool| -> Result<(), String> {
        let c = sk2.face_class_of(side.0, side.1);
        let s = if (sk2.face_classes[c].sides[1] == side) == ingoing { 1 } else { -1 };
        constrain(&mut signs, c, s, "face class")
    };
    for (ot, nt) in res.tet_map.iter().enumerate().filter_map(|(o, n)| n.map(|n| (o, n))) {
        for f in 0..4u8 {
            want((nt, f), pb.ingoing(sk, ot, f))?;
        }
    }
    for &((ot, of), (nt, nf), _) in &res.face_map {
        let ing = pb.ingoing(sk, ot, of);
        if res.tet_map[ot].is_some() {
            // a kept side re-glued onto a new tet: the new side faces it across
            // the same geometric face, so its status is the opposite
            want((nt, nf), !ing)?;
        } else {
            want((nt, nf), ing)?;
        }
    }
    Ok(signs)
}

/// All completions of a partially constrained sign vector passing `valid`,
/// in lexicographic order over the free classes (+1 before -1).
fn complete(partial: &[Option<i8>], valid: impl Fn(&[i8]) -> bool) -> Vec<Vec<i8>> {
    let free: Vec<usize> = (0..partial.len()).filter(|&c| partial[c].is_none()).collect();
    assert!(free.len() < 20, "free-class count stays small for all moves");
    let mut out = Vec::new();
    for mask in 0..1u32 << free.len() {
        let mut signs: Vec<i8> = partial.iter().map(|s| s.unwrap_or(1)).collect();
        for (k, &c) in free.iter().enumerate() {
            // bit 0 of the high position first keeps +1 before -1 per class
            if mask >> (free.len() - 1 - k) & 1 == 1 {
                signs[c] = -1;
            }
        }
        if valid(&signs) {
            out.push(signs);
        }
    }
    out
}
