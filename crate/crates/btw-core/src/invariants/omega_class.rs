//! The homology class of a pre-branching and reconstruction of a branching
//! bounding it.
//!
//! [omega] lives in H1 = ker d1 / im d2 of the spine complex. Since every
//! 1-cell is crossed by exactly three region germs, the all-ones 2-chain has
//! odd boundary everywhere, so z_omega - d2*1 is even: its half is an exact
//! evenness witness alpha with 2[alpha] = [omega] (and the mod-2 class is
//! zero). Because isomorphism classes of (group, element) pairs are what
//! survives a transit, the class is reported through invariant factors of H1
//! and of H1 / <[omega]>.

use super::spine::spine_complex;
use crate::decor::branching::Branching;
use crate::decor::omega::induced_prebranching;
use crate::decor::prebranching::PreBranching;
use crate::skeleta::Skeleta;
use crate::snf::{
    kernel_basis, mat_from_i64, mat_vec, smith_normal_form, solve_gf2, solve_integer, Mat,
};
use crate::tri::Triangulation;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaClass {
    pub h1_rank: usize,
    pub h1_torsion: Vec<BigInt>,
    /// invariant factors of H1 / <[omega]>; together with H1 this pins the
    /// class up to isomorphism of the pair
    pub quotient_rank: usize,
    pub quotient_torsion: Vec<BigInt>,
    /// [omega] = 0, i.e. z_omega is an integral boundary
    pub is_zero: bool,
    /// 1-chain with 2[alpha] = [omega]: alpha = (z_omega - d2*1)/2
    pub alpha: Vec<BigInt>,
}

impl OmegaClass {
    /// The transit-invariant profile used to compare classes across
    /// triangulations.
    pub fn profile(&self) -> (usize, Vec<BigInt>, usize, Vec<BigInt>, bool) {
        (
            self.h1_rank,
            self.h1_torsion.clone(),
            self.quotient_rank,
            self.quotient_torsion.clone(),
            self.is_zero,
        )
    }
}

/// Invariant factors (rank deficit, torsion > 1) of Z^m / columns(a).
fn cokernel_invariants(a: &Mat, m: usize) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(a);
    (m - snf.rank, snf.torsion())
}

pub fn omega_class(t: &Triangulation, sk: &Skeleta, pb: &PreBranching) -> OmegaClass {
    let sc = spine_complex(t, sk);
    let d1 = mat_from_i64(&sc.d1);
    let d2 = mat_from_i64(&sc.d2);
    let z: Vec<BigInt> = pb.signs.iter().map(|&s| BigInt::from(s)).collect();
    assert!(mat_vec(&d1, &z).iter().all(|x| x.is_zero()), "omega is always a cycle");

    // express im d2 and z in a basis of ker d1
    let kernel = kernel_basis(&d1);
    let m = kernel.len();
    let n_faces = sk.n_faces();
    let k_mat: Mat = (0..n_faces).map(|i| kernel.iter().map(|k| k[i].clone()).collect()).collect();
    let col = |v: &[BigInt]| -> Vec<BigInt> {
        solve_integer(&k_mat, v).expect("a cycle lies in the kernel lattice")
    };
    let cols_x: Vec<Vec<BigInt>> =
        (0..sk.n_edges()).map(|e| col(&d2.iter().map(|r| r[e].clone()).collect::<Vec<_>>())).collect();
    let y = col(&z);
    let x_mat: Mat = (0..m).map(|i| cols_x.iter().map(|c| c[i].clone()).collect()).collect();
    let xy_mat: Mat = (0..m)
        .map(|i| {
            let mut row: Vec<BigInt> = cols_x.iter().map(|c| c[i].clone()).collect();
            row.push(y[i].clone());
            row
        })
        .collect();
    let (h1_rank, h1_torsion) = cokernel_invariants(&x_mat, m);
    let (quotient_rank, quotient_torsion) = cokernel_invariants(&xy_mat, m);

    let is_zero = solve_integer(&d2, &z).is_some();

    // evenness witness: the all-ones 2-chain has odd boundary at every 1-cell
    let ones = vec![BigInt::one(); sk.n_edges()];
    let d2_ones = mat_vec(&d2, &ones);
    let alpha: Vec<BigInt> = z
        .iter()
        .zip(&d2_ones)
        .map(|(zi, bi)| {
            let diff = zi - bi;
            assert!((&diff % 2u8).is_zero(), "the mod-2 class always vanishes");
            diff / 2
        })
        .collect();
    assert!(mat_vec(&d1, &alpha).iter().all(|x| x.is_zero()), "alpha is a cycle");
    // 2*alpha differs from z by d2*1, so 2[alpha] = [omega] holds exactly

    OmegaClass { h1_rank, h1_torsion, quotient_rank, quotient_torsion, is_zero, alpha }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("omega bounds no integral 2-chain (its class is nonzero)")]
    NoIntegralSolution,
    #[error("every integral 2-chain bounding omega has an even coefficient")]
    ParityObstruction,
}

/// Find a branching b with omega_b = omega: solve d2 beta = z_omega over Z,
/// adjust beta by the kernel to make every coefficient odd, and orient each
/// region by sign(beta). When H2(M;Z/2) = 0 and [omega] = 0 this always
/// succeeds; the two error cases are the two obstructions.
pub fn branching_from_prebranching(
    t: &Triangulation,
    sk: &Skeleta,
    pb: &PreBranching,
    eps: &[i8],
) -> Result<Branching, ReconstructError> {
    let sc = spine_complex(t, sk);
    let d2 = mat_from_i64(&sc.d2);
    let z: Vec<BigInt> = pb.signs.iter().map(|&s| BigInt::from(s)).collect();
    let beta0 = solve_integer(&d2, &z).ok_or(ReconstructError::NoIntegralSolution)?;
    let kernel = kernel_basis(&d2);
    let n = sk.n_edges();
    // beta0 + sum x_j k_j must be odd everywhere: a GF(2) system in x
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|e| kernel.iter().map(|k| (&k[e] % 2u8 != BigInt::zero()) as u8).collect())
        .collect();
    let target: Vec<u8> = beta0.iter().map(|b| (&(b + 1) % 2u8 != BigInt::zero()) as u8).collect();
    let (x, _) = solve_gf2(&rows, &target).ok_or(ReconstructError::ParityObstruction)?;
    let mut beta = beta0;
    for (j, k) in kernel.iter().enumerate() {
        if x[j] == 1 {
            for e in 0..n {
                beta[e] += &k[e];
            }
        }
    }
    assert!(beta.iter().all(|b| !(b % 2u8).is_zero()), "adjusted chain is odd everywhere");
    // sign(beta) orients each region; recover the edge orientations through
    // the walk-aligned baseline region chain
    let all_plus = Branching { signs: vec![1; n] };
    let baseline = super::chains::region_chain(t, sk, &all_plus, eps);
    let signs: Vec<i8> = (0..n)
        .map(|e| {
            let r = if beta[e] > BigInt::zero() { 1i8 } else { -1 };
            r * baseline[e]
        })
        .collect();
    let b = Branching { signs };
    assert!(b.is_valid(sk, t), "an odd bounding chain always signs to a branching");
    assert_eq!(
        induced_prebranching(t, sk, &b, eps).signs,
        pb.signs,
        "the reconstructed branching bounds omega"
    );
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decor::branching::enumerate_branchings;
    use crate::decor::prebranching::enumerate_prebranchings;
    use crate::fixtures::load_fixture;
    use crate::invariants::homology::homology;
    use crate::skeleta::orient;

    #[test]
    fn induced_prebranchings_have_zero_class() {
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        for b in enumerate_branchings(&t, &sk) {
            let pb = induced_prebranching(&t, &sk, &b, &eps);
            let oc = omega_class(&t, &sk, &pb);
            assert!(oc.is_zero);
            // zero class: the quotient is all of H1
            assert_eq!(oc.quotient_rank, oc.h1_rank);
            assert_eq!(oc.quotient_torsion, oc.h1_torsion);
        }
    }

    #[test]
    fn h1_invariants_agree_with_homology() {
        for name in ["m003", "m004", "t1-torsion"] {
            let t = load_fixture(name);
            let sk = Skeleta::compute(&t);
            let h = homology(&t, &sk);
            for pb in enumerate_prebranchings(&t, &sk) {
                let oc = omega_class(&t, &sk, &pb);
                assert_eq!(oc.h1_rank, h.h1_rank);
                assert_eq!(oc.h1_torsion, h.h1_torsion);
            }
        }
    }

    #[test]
    fn no_m003_prebranching_has_zero_class() {
        let t = load_fixture("m003");
        let sk = Skeleta::compute(&t);
        let pbs = enumerate_prebranchings(&t, &sk);
        assert!(!pbs.is_empty());
        for pb in pbs {
            let oc = omega_class(&t, &sk, &pb);
            assert!(!oc.is_zero);
            let err = branching_from_prebranching(&t, &sk, &pb, &orient(&t).unwrap());
            assert_eq!(err.unwrap_err(), ReconstructError::NoIntegralSolution);
        }
    }

    #[test]
    fn reconstruction_round_trips_on_m004() {
        // H2(M;Z) = 0 here, so the bounding branching is unique: b' = b
        let t = load_fixture("m004");
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        let h = homology(&t, &sk);
        assert_eq!(h.h2_rank, 0);
        for b in enumerate_branchings(&t, &sk) {
            let pb = induced_prebranching(&t, &sk, &b, &eps);
            let b2 = branching_from_prebranching(&t, &sk, &pb, &eps).unwrap();
            assert_eq!(b2.signs, b.signs);
        }
    }

    #[test]
    fn parity_obstruction_appears_on_the_torsion_example() {
        // H2(M;Z/2) = Z/2 here: some omega bounds integrally but admits no
        // all-odd bounding chain
        let t = load_fixture("t1-torsion");
        let sk = Skeleta::compute(&t);
        let eps = orient(&t).unwrap();
        let h = homology(&t, &sk);
        assert_eq!(h.h2_rank, 0);
        assert_eq!(h.h2_mod2_dim, 1);
        let mut outcomes = std::collections::BTreeMap::new();
        for pb in enumerate_prebranchings(&t, &sk) {
            let key = match branching_from_prebranching(&t, &sk, &pb, &eps) {
                Ok(_) => "ok",
                Err(ReconstructError::NoIntegralSolution) => "nosol",
                Err(ReconstructError::ParityObstruction) => "parity",
            };
            *outcomes.entry(key).or_insert(0usize) += 1;
        }
        assert!(
            outcomes.get("parity").copied().unwrap_or(0) > 0,
            "expected a parity-obstructed omega, outcomes: {outcomes:?}"
        );
    }
}
