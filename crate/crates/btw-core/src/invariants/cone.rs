//! Transverse measures on the branched spine: a weight per region subject to
//! the switching condition z(e0) = z(e1) + z(e2) at every 1-cell, where e0 is
//! the maw germ (the one inducing the non-prevailing orientation). The
//! solution space is isomorphic to H2(M; R); the cone of strictly positive
//! solutions is decided by exact rational Fourier-Motzkin elimination, and
//! measures transport along decorated transits through the persistent-region
//! identification.

use crate::decor::branching::Branching;
use crate::decor::omega::face_votes;
use crate::moves::enhance::Enhancement;
use crate::skeleta::Skeleta;
use crate::snf::{kernel_basis, mat_from_i64};
use crate::tri::Triangulation;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureCone {
    /// one switching row per face class, over edge-class weights
    pub system: Vec<Vec<i64>>,
    /// integral basis of the solution space
    pub basis: Vec<Vec<BigInt>>,
    pub dim: usize,
    /// whether a strictly positive solution exists
    pub positive: bool,
}

/// The maw germ at a face class: the local edge whose region votes against
/// the prevailing direction, identical from both sides.
fn maw_class(
    t: &Triangulation,
    sk: &Skeleta,
    b: &Branching,
    eps: &[i8],
    fc_index: usize,
) -> (usize, [usize; 2]) {
    let fc = &sk.face_classes[fc_index];
    let mut per_side = Vec::new();
    for &(tet, f) in &fc.sides {
        let votes = face_votes(b, sk, eps, tet, f);
        let outs = votes.iter().filter(|&&(_, o)| o).count();
        let majority_out = outs == 2;
        let mut maw = None;
        let mut rest = Vec::new();
        for &((a, bb), o) in &votes {
            let c = sk.edge_class_of(tet, a, bb);
            if o != majority_out {
                maw = Some(c);
            } else {
                rest.push(c);
            }
        }
        per_side.push((maw.unwrap(), [rest[0], rest[1]]));
    }
    let _ = t;
    assert_eq!(per_side[0].0, per_side[1].0, "the maw germ is side-independent");
    per_side[0]
}

pub fn measure_cone(t: &Triangulation, sk: &Skeleta, b: &Branching, eps: &[i8]) -> MeasureCone {
    let n = sk.n_edges();
    let mut system = vec![vec![0i64; n]; sk.n_faces()];
    for c in 0..sk.n_faces() {
        let (maw, rest) = maw_class(t, sk, b, eps, c);
        system[c][maw] += 1;
        for r in rest {
            system[c][r] -= 1;
        }
    }
    let basis = kernel_basis(&mat_from_i64(&system));
    let dim = basis.len();
    let positive = has_strictly_positive_combination(&basis, n);
    MeasureCone { system, basis, dim, positive }
}

/// Does some combination of the basis vectors have every coordinate > 0?
/// Exact homogeneous Fourier-Motzkin over the combination coefficients.
fn has_strictly_positive_combination(basis: &[Vec<BigInt>], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let dim = basis.len();
    // constraints sum_j c[j] x_j > 0, normalized by gcd for deduplication
    let normalize = |mut c: Vec<BigInt>| -> Option<Vec<BigInt>> {
        let mut g = BigInt::zero();
        for v in &c {
            g = num_integer::gcd(g, v.abs());
        }
        if g.is_zero() {
            return None; // 0 > 0: contradiction
        }
        for v in c.iter_mut() {
            *v = &*v / &g;
        }
        Some(c)
    };
    let mut constraints: std::collections::BTreeSet<Vec<BigInt>> = std::collections::BTreeSet::new();
    for e in 0..n {
        let row: Vec<BigInt> = (0..dim).map(|j| basis[j][e].clone()).collect();
        match normalize(row) {
            Some(r) => {
                constraints.insert(r);
            }
            None => return false,
        }
    }
    for k in 0..dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = std::collections::BTreeSet::new();
        for c in constraints {
            match c[k].sign() {
                num_bigint::Sign::Plus => pos.push(c),
                num_bigint::Sign::Minus => neg.push(c),
                num_bigint::Sign::NoSign => {
                    rest.insert(c);
                }
            }
        }
        for p in &pos {
            for q in &neg {
                // eliminate x_k: (-q_k) * p + p_k * q
                let combined: Vec<BigInt> =
                    (0..dim).map(|j| -&q[k] * &p[j] + &p[k] * &q[j]).collect();
                debug_assert!(combined[k].is_zero());
                match normalize(combined) {
                    Some(r) => {
                        rest.insert(r);
                    }
                    None => return false,
                }
            }
        }
        constraints = rest;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("persistent regions received conflicting weights")]
    Inconsistent,
    #[error("the new switching system does not determine the created regions")]
    Underdetermined,
}

/// Carry a measure across a decorated transit: persistent regions keep their
/// weight (matched through the surviving embeddings), and the weights of the
/// created regions are the unique solution of the new switching system.
pub fn transport_measure(
    t: &Triangulation,
    sk: &Skeleta,
    z: &[BigRational],
    enh: &Enhancement,
    sk2: &Skeleta,
    b2: &Branching,
    eps2: &[i8],
) -> Result<Vec<BigRational>, TransportError> {
    let t2 = &enh.result.tri;
    let mut assigned: Vec<Option<BigRational>> = vec![None; sk2.n_edges()];
    let set = |slot: usize, v: &BigRational, assigned: &mut Vec<Option<BigRational>>| {
        match &assigned[slot] {
            Some(w) if w != v => Err(TransportError::Inconsistent),
            _ => {
                assigned[slot] = Some(v.clone());
                Ok(())
            }
        }
    };
    for ec in &sk.edge_classes {
        for &(i, a, b) in &ec.embeddings {
            if let Some(j) = enh.result.tet_map[i] {
                set(sk2.edge_class_of(j, a, b), &z[ec.index], &mut assigned)?;
                continue;
            }
            for f in (0..4u8).filter(|&f| f != a && f != b) {
                if let Some(&(_, (nt, _), p)) =
                    enh.result.face_map.iter().find(|&&(old, _, _)| old == (i, f))
                {
                    set(sk2.edge_class_of(nt, p.apply(a), p.apply(b)), &z[ec.index], &mut assigned)?;
                }
            }
        }
    }
    // solve the new switching system for the unknown created regions
    let cone2 = {
        let n2 = sk2.n_edges();
        let mut system = vec![vec![0i64; n2]; sk2.n_faces()];
        for c in 0..sk2.n_faces() {
            let (maw, rest) = maw_class(t2, sk2, b2, eps2, c);
            system[c][maw] += 1;
            for r in rest {
                system[c][r] -= 1;
            }
        }
        system
    };
    let unknowns: Vec<usize> =
        (0..sk2.n_edges()).filter(|&e| assigned[e].is_none()).collect();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for r in &cone2 {
        let coeffs: Vec<BigRational> =
            unknowns.iter().map(|&u| BigRational::from(BigInt::from(r[u]))).collect();
        let mut rhs = BigRational::zero();
        for (e, v) in assigned.iter().enumerate() {
            if let Some(v) = v {
                rhs -= BigRational::from(BigInt::from(r[e])) * v;
            }
        }
        rows.push((coeffs, rhs));
    }
    let sol = solve_rational(&mut rows, unknowns.len())?;
    let mut out: Vec<BigRational> = Vec::with_capacity(sk2.n_edges());
    for (e, v) in assigned.iter().enumerate() {
        match v {
            Some(v) => out.push(v.clone()),
            None => out.push(sol[unknowns.iter().position(|&u| u == e).unwrap()].clone()),
        }
    }
    // the result satisfies every new switching condition
    for r in &cone2 {
        let s: BigRational =
            r.iter().zip(&out).map(|(&c, v)| BigRational::from(BigInt::from(c)) * v).sum();
        assert!(s.is_zero(), "transported measure must satisfy the switching conditions");
    }
    let _ = t;
    Ok(out)
}

/// Gaussian elimination over Q; requires a unique solution.
fn solve_rational(
    rows: &mut Vec<(Vec<BigRational>, BigRational)>,
    n: usize,
) -> Result<Vec<BigRational>, TransportError> {
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; rows.len()];
    for col in 0..n {
        let Some(pr) = (0..rows.len()).find(|&r| !used[r] && !rows[r].0[col].is_zero()) else {
            continue;
        };
        used[pr] = true;
        pivots[col] = Some(pr);
        let inv = rows[pr].0[col].recip();
        for c in 0..n {
            rows[pr].0[c] = &rows[pr].0[c] * &inv;
        }
        rows[pr].1 = &rows[pr].1 * &inv;
        for r in 0..rows.len() {
            if r != pr && !rows[r].0[col].is_zero() {
                let f = rows[r].0[col].clone();
                for c in 0..n {
                    let d = &rows[pr].0[c] * &f;
                    rows[r].0[c] -= d;
                }
                let d = &rows[pr].1 * &f;
                rows[r].1 -= d;
            }
        }
    }
    if pivots.iter().any(|p| p.is_none()) {
        return Err(TransportError::Underdetermined);
    }
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && (!row.1.is_zero() || row.0.iter().any(|c| !c.is_zero())) {
            if row.0.iter().all(|c| c.is_zero()) && !row.1.is_zero() {
                return Err(TransportError::Inconsistent);
            }
        }
    }
    Ok(pivots.iter().map(|p| rows[p.unwrap()].1.clone()).collect())
}
