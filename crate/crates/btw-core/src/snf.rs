//! Exact integer matrix routines: Smith normal form, integer linear solving,
//! kernels, and a small GF(2) solver. All arithmetic is arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn mat_from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn zeros(m: usize, n: usize) -> Mat {
    vec![vec![BigInt::zero(); n]; m]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    a
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let m = a.len();
    let k = if m > 0 { a[0].len() } else { 0 };
    let n = if b.is_empty() { 0 } else { b[0].len() };
    let mut c = zeros(m, n);
    for i in 0..m {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][l] * &b[l][j];
                c[i][j] += t;
            }
        }
    }
    c
}

pub fn mat_vec(a: &Mat, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Smith normal form: returns (u, s, v) with u*a*v = s, u and v unimodular,
/// s diagonal with s[0][0] | s[1][1] | ... and nonnegative diagonal.
pub struct Snf {
    pub u: Mat,
    pub s: Mat,
    pub v: Mat,
    pub rank: usize,
}

pub fn smith_normal_form(a: &Mat) -> Snf {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    let mut s = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    let mut t = 0usize;
    while t < m && t < n {
        // find a pivot of minimal absolute value in the submatrix
        let mut piv: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero()
                    && piv.map_or(true, |(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        // clear row and column t
        let mut again = true;
        while again {
            again = false;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&s[i][t], &s[t][t]);
                if !q.is_zero() {
                    for j in 0..n {
                        let x = &q * &s[t][j];
                        s[i][j] -= x;
                    }
                    for j in 0..m {
                        let x = &q * &u[t][j];
                        u[i][j] -= x;
                    }
                }
                if !s[i][t].is_zero() {
                    // remainder is strictly smaller: swap up and restart
                    s.swap(t, i);
                    u.swap(t, i);
                    again = true;
                }
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&s[t][j], &s[t][t]);
                if !q.is_zero() {
                    for i in 0..m {
                        let x = &q * &s[i][t];
                        s[i][j] -= x;
                    }
                    for i in 0..n {
                        let x = &q * &v[i][t];
                        v[i][j] -= x;
                    }
                }
                if !s[t][j].is_zero() {
                    for row in s.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    again = true;
                }
            }
        }
        t += 1;
    }
    // ensure divisibility chain
    let r = (0..m.min(n)).take_while(|&i| !s[i][i].is_zero()).count();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..r.saturating_sub(1) {
            let (a1, b1) = (s[i][i].clone(), s[i + 1][i + 1].clone());
            if (&b1 % &a1).is_zero() {
                continue;
            }
            changed = true;
            // standard 2x2 fixup: add col i+1 to col i, then re-reduce block
            for row in s.iter_mut() {
                let x = row[i + 1].clone();
                row[i] += x;
            }
            for row in v.iter_mut() {
                let x = row[i + 1].clone();
                row[i] += x;
            }
            reduce_block(&mut s, &mut u, &mut v, i);
        }
    }
    for i in 0..r {
        if s[i][i].is_negative() {
            for j in 0..n {
                let x = -s[i][j].clone();
                s[i][j] = x;
            }
            for j in 0..m {
                let x = -u[i][j].clone();
                u[i][j] = x;
            }
        }
    }
    Snf { u, s, v, rank: r }
}

/// restart elimination at position t (used by the divisibility fixup)
fn reduce_block(s: &mut Mat, u: &mut Mat, v: &mut Mat, t: usize) {
    let m = s.len();
    let n = s[0].len();
    loop {
        // pick minimal pivot in the 2-column area starting at t
        let mut piv: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero()
                    && piv.map_or(true, |(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { return };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if s[i][t].is_zero() {
                continue;
            }
            let q = div_round(&s[i][t], &s[t][t]);
            for j in 0..n {
                let x = &q * &s[t][j];
                s[i][j] -= x;
            }
            for j in 0..m {
                let x = &q * &u[t][j];
                u[i][j] -= x;
            }
            if !s[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if s[t][j].is_zero() {
                continue;
            }
            let q = div_round(&s[t][j], &s[t][t]);
            for i in 0..m {
                let x = &q * &s[i][t];
                s[i][j] -= x;
            }
            for i in 0..n {
                let x = &q * &v[i][t];
                v[i][j] -= x;
            }
            if !s[t][j].is_zero() {
                clean = false;
            }
        }
        if clean {
            return;
        }
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // truncating division is fine for the elimination loop
    a / b
}

impl Snf {
    /// Nontrivial invariant factors (diagonal entries > 1).
    pub fn torsion(&self) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| self.s[i][i].clone())
            .filter(|d| *d > BigInt::one())
            .collect()
    }
}

/// Solve a*x = b over the integers. Returns one solution if any exists.
pub fn solve_integer(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    let ub = mat_vec(&snf.u, b);
    let mut y = vec![BigInt::zero(); n];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            if (ubi % &snf.s[i][i]).is_zero() {
                y[i] = ubi / &snf.s[i][i];
            } else {
                return None;
            }
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(mat_vec(&snf.v, &y))
}

/// Basis of the integer kernel of a (as column vectors).
pub fn kernel_basis(a: &Mat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let n = if a.is_empty() { return Vec::new() } else { a[0].len() };
    (snf.rank..n)
        .map(|j| (0..n).map(|i| snf.v[i][j].clone()).collect())
        .collect()
}

/// Solve a*x = b over GF(2). a is given as rows of bits, b as bits.
/// Returns (one solution, basis of kernel) if consistent.
pub fn solve_gf2(a: &[Vec<u8>], b: &[u8]) -> Option<(Vec<u8>, Vec<Vec<u8>>)> {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    let mut rows: Vec<(Vec<u8>, u8)> =
        a.iter().cloned().zip(b.iter().cloned()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0;
    for col in 0..n {
        if let Some(r) = (rank..m).find(|&r| rows[r].0[col] == 1) {
            rows.swap(rank, r);
            for r2 in 0..m {
                if r2 != rank && rows[r2].0[col] == 1 {
                    let (head, tail) = rows.split_at_mut(rank.max(r2));
                    let (src, dst) = if rank < r2 {
                        (&head[rank], &mut tail[0])
                    } else {
                        (&tail[0], &mut head[r2])
                    };
                    for j in 0..n {
                        dst.0[j] ^= src.0[j];
                    }
                    dst.1 ^= src.1;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
    }
    for r in rank..m {
        if rows[r].1 == 1 {
            return None;
        }
    }
    let mut x = vec![0u8; n];
    for &(r, c) in &pivots {
        x[c] = rows[r].1;
    }
    let pivot_cols: std::collections::HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut k = vec![0u8; n];
        k[free] = 1;
        for &(r, c) in &pivots {
            k[c] = rows[r].0[free];
        }
        kernel.push(k);
    }
    Some((x, kernel))
}
