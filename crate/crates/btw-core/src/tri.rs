use crate::perm::Perm4;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One face gluing: face `f` of some tetrahedron is glued to tetrahedron
/// `tet`, with `perm` carrying all four vertex labels across; `perm(f)` is the
/// matched face of `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A raw gluing table as read from a file, before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawTriangulation {
    pub name: String,
    pub gluings: Vec<[Gluing; 4]>,
}

/// A validated ideal triangulation: every face of every abstract tetrahedron
/// is glued to a face of another (or the same) tetrahedron, and the gluing is
/// a fixed-point-free involution on (tet, face) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    name: String,
    gluings: Vec<[Gluing; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum ValidationError {
    #[error("gluing of tet {tet} face {face} is not matched by an inverse gluing")]
    NonInvolutive { tet: usize, face: u8 },
    #[error("tet {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: u8 },
    #[error("gluing of tet {tet} face {face} references tetrahedron {target} out of range")]
    BadTarget { tet: usize, face: u8, target: usize },
    #[error("empty gluing table")]
    Empty,
}

impl Triangulation {
    pub fn validate(raw: &RawTriangulation) -> Result<Triangulation, Vec<ValidationError>> {
        let n = raw.gluings.len();
        let mut errors = Vec::new();
        if n == 0 {
            return Err(vec![ValidationError::Empty]);
        }
        for (i, faces) in raw.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                if g.tet >= n {
                    errors.push(ValidationError::BadTarget { tet: i, face: f, target: g.tet });
                    continue;
                }
                let f2 = g.perm.apply(f);
                if g.tet == i && f2 == f {
                    errors.push(ValidationError::SelfGluedFace { tet: i, face: f });
                    continue;
                }
                let back = raw.gluings[g.tet][f2 as usize];
                if back.tet != i || back.perm != g.perm.inverse() {
                    errors.push(ValidationError::NonInvolutive { tet: i, face: f });
                }
            }
        }
        if errors.is_empty() {
            Ok(Triangulation { name: raw.name.clone(), gluings: raw.gluings.clone() })
        } else {
            Err(errors)
        }
    }

    /// Build directly from a gluing table, panicking on an invalid one.
    /// Intended for tables produced by code that guarantees validity.
    pub fn from_gluings(name: &str, gluings: Vec<[Gluing; 4]>) -> Triangulation {
        Triangulation::validate(&RawTriangulation { name: name.to_string(), gluings })
            .unwrap_or_else(|e| panic!("invalid gluing table: {:?}", e))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: &str) -> Triangulation {
        Triangulation { name: name.to_string(), gluings: self.gluings.clone() }
    }

    pub fn n_tets(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.gluings[tet][face as usize]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn raw(&self) -> RawTriangulation {
        RawTriangulation { name: self.name.clone(), gluings: self.gluings.clone() }
    }

    /// Relabel tetrahedra and vertices: tetrahedron `i` becomes `tet_map[i]`
    /// and its labels are carried by `vert_maps[i]`. Used by tests to probe
    /// isomorphism invariance.
    pub fn relabel(&self, tet_map: &[usize], vert_maps: &[Perm4]) -> Triangulation {
        let n = self.n_tets();
        let mut gluings = vec![
            [Gluing { tet: 0, perm: Perm4::IDENTITY }; 4];
            n
        ];
        for i in 0..n {
            for f in 0..4u8 {
                let g = self.gluings[i][f as usize];
                // old gluing: i --(perm)--> g.tet; new labels via vert_maps
                let new_perm = vert_maps[g.tet].compose(&g.perm).compose(&vert_maps[i].inverse());
                gluings[tet_map[i]][vert_maps[i].apply(f) as usize] =
                    Gluing { tet: tet_map[g.tet], perm: new_perm };
            }
        }
        Triangulation { name: self.name.clone(), gluings }
    }

    /// True if every tetrahedron is reachable from tetrahedron 0 through
    /// face gluings.
    pub fn is_connected(&self) -> bool {
        let n = self.n_tets();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for f in 0..4u8 {
                let j = self.gluing(i, f).tet;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One tetrahedron: face 0 glued to face 3 by (03)(12), face 1 to face 2
    /// by (12); both perms are involutions.
    pub fn one_tet_example() -> Triangulation {
        let p = Perm4::new([3, 2, 1, 0]).unwrap(); // swaps 0<->3, 1<->2
        let r = Perm4::new([0, 2, 1, 3]).unwrap(); // swaps 1<->2
        let gl = vec![[
            Gluing { tet: 0, perm: p },
            Gluing { tet: 0, perm: r },
            Gluing { tet: 0, perm: r },
            Gluing { tet: 0, perm: p },
        ]];
        Triangulation::from_gluings("one-tet", gl)
    }

    #[test]
    fn one_tet_valid() {
        let t = one_tet_example();
        assert_eq!(t.n_tets(), 1);
    }

    #[test]
    fn broken_involution_rejected() {
        let p = Perm4::new([3, 2, 1, 0]).unwrap();
        let r = Perm4::new([0, 2, 1, 3]).unwrap();
        let bad = RawTriangulation {
            name: "bad".into(),
            gluings: vec![[
                Gluing { tet: 0, perm: p },
                Gluing { tet: 0, perm: r },
                Gluing { tet: 0, perm: p }, // wrong: face 2 claims to glue via p
                Gluing { tet: 0, perm: p },
            ]],
        };
        let errs = Triangulation::validate(&bad).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ValidationError::NonInvolutive { .. })));
    }

    #[test]
    fn self_glued_face_rejected() {
        // A perm fixing face 0 glues face 0 to itself.
        let fix = Perm4::new([0, 2, 3, 1]).unwrap();
        let bad = RawTriangulation {
            name: "bad".into(),
            gluings: vec![[
                Gluing { tet: 0, perm: fix },
                Gluing { tet: 0, perm: fix },
                Gluing { tet: 0, perm: fix },
                Gluing { tet: 0, perm: fix },
            ]],
        };
        let errs = Triangulation::validate(&bad).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ValidationError::SelfGluedFace { .. })));
    }

    #[test]
    fn relabel_preserves_validity() {
        let t = one_tet_example();
        let t2 = t.relabel(&[0], &[Perm4::new([2, 0, 3, 1]).unwrap()]);
        assert_eq!(t2.n_tets(), 1);
    }
}
