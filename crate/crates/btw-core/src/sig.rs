use crate::perm::Perm4;
use crate::tri::Triangulation;

/// Canonical byte string identifying a triangulation (optionally with
/// decoration data) up to combinatorial isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoSignature {
    words: Vec<u16>,
}

impl std::fmt::Debug for IsoSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sig:{}", self)
    }
}

impl std::fmt::Display for IsoSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.words.iter().map(|w| format!("{:x}", w)).collect();
        write!(f, "{}", s.join("."))
    }
}

/// The relabeling produced by one BFS pass: old tetrahedron `i` becomes
/// `tet_of_old[i]` with vertex relabeling `perm_of_old[i]` (old label ->
/// new label).
#[derive(Clone, Debug)]
pub struct Relabeling {
    pub tet_of_old: Vec<usize>,
    pub perm_of_old: Vec<Perm4>,
    pub old_of_new: Vec<usize>,
}

fn bfs_encoding(t: &Triangulation, start: usize, start_perm: Perm4) -> (Vec<u16>, Relabeling) {
    let n = t.n_tets();
    let mut tet_of_old = vec![usize::MAX; n];
    let mut perm_of_old = vec![Perm4::IDENTITY; n];
    let mut old_of_new = Vec::with_capacity(n);
    tet_of_old[start] = 0;
    perm_of_old[start] = start_perm;
    old_of_new.push(start);
    let mut words = Vec::with_capacity(8 * n);
    let mut k = 0;
    while k < old_of_new.len() {
        let o = old_of_new[k];
        let po = perm_of_old[o];
        for nf in 0..4u8 {
            let of = po.inverse().apply(nf);
            let g = t.gluing(o, of);
            if tet_of_old[g.tet] == usize::MAX {
                tet_of_old[g.tet] = old_of_new.len();
                // choose the new labels of the discovered tet so the gluing
                // permutation becomes the identity
                perm_of_old[g.tet] = po.compose(&g.perm.inverse());
                old_of_new.push(g.tet);
            }
            let new_perm = perm_of_old[g.tet].compose(&g.perm).compose(&po.inverse());
            words.push(tet_of_old[g.tet] as u16);
            words.push(new_perm.index() as u16);
        }
        k += 1;
    }
    assert_eq!(old_of_new.len(), n, "signature requires a connected triangulation");
    (words, Relabeling { tet_of_old, perm_of_old, old_of_new })
}

/// Canonical signature: lexicographic minimum of the BFS encoding over all
/// 24 * n starting frames. The optional `decorate` callback appends
/// canonically-relabeled decoration words which take part in the
/// lexicographic comparison.
pub fn signature_with(
    t: &Triangulation,
    decorate: Option<&dyn Fn(&Relabeling) -> Vec<u16>>,
) -> IsoSignature {
    let mut best: Option<Vec<u16>> = None;
    for start in 0..t.n_tets() {
        for p in Perm4::all() {
            let (mut words, relab) = bfs_encoding(t, start, p);
            if let Some(f) = decorate {
                words.extend(f(&relab));
            }
            if best.as_ref().map_or(true, |b| words < *b) {
                best = Some(words);
            }
        }
    }
    IsoSignature { words: best.unwrap() }
}

pub fn signature(t: &Triangulation) -> IsoSignature {
    signature_with(t, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::tri::{Gluing, Triangulation};

    fn one_tet_example() -> Triangulation {
        let p = Perm4::new([3, 2, 1, 0]).unwrap();
        let r = Perm4::new([0, 2, 1, 3]).unwrap();
        Triangulation::from_gluings(
            "one-tet",
            vec![[
                Gluing { tet: 0, perm: p },
                Gluing { tet: 0, perm: r },
                Gluing { tet: 0, perm: r },
                Gluing { tet: 0, perm: p },
            ]],
        )
    }

    #[test]
    fn relabeling_invariance() {
        let t = one_tet_example();
        let s1 = signature(&t);
        for p in Perm4::all() {
            let t2 = t.relabel(&[0], &[p]);
            assert_eq!(s1, signature(&t2));
        }
    }
}
