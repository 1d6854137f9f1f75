//! Integer and mod-2 homology of the dual spine, which carries the homology
//! of the underlying compact manifold-with-boundary.

use super::spine::{spine_complex, SpineComplex};
use crate::skeleta::Skeleta;
use crate::snf::{mat_from_i64, smith_normal_form};
use crate::tri::Triangulation;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub h2_rank: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<BigInt>,
    pub h2_mod2_dim: usize,
    pub h1_mod2_dim: usize,
}

impl std::fmt::Display for Homology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.h1_rank > 0 {
            parts.push(if self.h1_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.h1_rank)
            });
        }
        for t in &self.h1_torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "H1 = {}", parts.join(" + "))
    }
}

fn gf2_rank(a: &[Vec<i64>]) -> usize {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    let mut rows: Vec<Vec<u8>> = a
        .iter()
        .map(|r| r.iter().map(|&x| (x.rem_euclid(2)) as u8).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        if let Some(r) = (rank..m).find(|&r| rows[r][col] == 1) {
            rows.swap(rank, r);
            for r2 in 0..m {
                if r2 != rank && rows[r2][col] == 1 {
                    for j in 0..n {
                        let x = rows[rank][j];
                        rows[r2][j] ^= x;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

pub fn homology(t: &Triangulation, sk: &Skeleta) -> Homology {
    let sc = spine_complex(t, sk);
    homology_of_complex(&sc, sk.n_faces(), sk.n_edges())
}

pub fn homology_of_complex(sc: &SpineComplex, n_faces: usize, n_edges: usize) -> Homology {
    let d1 = mat_from_i64(&sc.d1);
    let d2 = mat_from_i64(&sc.d2);
    let s1 = smith_normal_form(&d1);
    let s2 = smith_normal_form(&d2);
    let h2_rank = n_edges - s2.rank;
    let h1_rank = n_faces - s1.rank - s2.rank;
    let h1_torsion = s2.torsion();
    let r1_2 = gf2_rank(&sc.d1);
    let r2_2 = gf2_rank(&sc.d2);
    Homology {
        h2_rank,
        h1_rank,
        h1_torsion,
        h2_mod2_dim: n_edges - r2_2,
        h1_mod2_dim: n_faces - r1_2 - r2_2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::tri::{Gluing, Triangulation};

    #[test]
    fn doubled_tet_homology() {
        // the double of a tetrahedron along its boundary: ideal triangulation
        // whose spine is the 2-skeleton dual; sanity-check rank arithmetic
        let g: Vec<[Gluing; 4]> = vec![
            std::array::from_fn(|_| Gluing { tet: 1, perm: Perm4::IDENTITY }),
            std::array::from_fn(|_| Gluing { tet: 0, perm: Perm4::IDENTITY }),
        ];
        let t = Triangulation::from_gluings("double", g);
        let sk = Skeleta::compute(&t);
        let h = homology(&t, &sk);
        // chi(spine) = T - F + E = 2 - 4 + 6 = 4 = 1 - h1 + h2
        assert_eq!(1 + h.h2_rank - h.h1_rank, 4);
        // universal coefficients mod 2: dims can only grow by torsion
        let odd_torsion = h.h1_torsion.iter().filter(|t| (*t % 2u8) == BigInt::from(0)).count();
        assert_eq!(h.h1_mod2_dim, h.h1_rank + odd_torsion);
    }
}
