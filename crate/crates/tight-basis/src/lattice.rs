//! Exact integer linear algebra: Bareiss rank and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Columns `cols` (each of length `m`) as an `m × k` matrix.
pub fn columns(cols: &[Vec<i64>], m: usize) -> Matrix {
    (0..m).map(|i| cols.iter().map(|c| BigInt::from(c[i])).collect()).collect()
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(a: &Matrix) -> usize {
    let mut a = a.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank modulo a prime `p`.
pub fn rank_mod_p(a: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    let inv = |x: i64| -> i64 {
        let (mut base, mut e, mut acc) = (x as i128, (p - 2) as i128, 1i128);
        let pp = p as i128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % pp;
            }
            base = base * base % pp;
            e >>= 1;
        }
        acc as i64
    };
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let iv = inv(a[r][c]);
        for i in r + 1..rows {
            if a[i][c] != 0 {
                let f = (a[i][c] as i128 * iv as i128 % p as i128) as i64;
                for j in c..cols {
                    a[i][j] = ((a[i][j] as i128 - f as i128 * a[r][j] as i128).rem_euclid(p as i128)) as i64;
                }
            }
        }
        r += 1;
    }
    r
}

/// `U A V = diag(d)` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn smith(a: &Matrix) -> Smith {
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let mut a = a.clone();
    let mut u = identity(m);
    let mut v = identity(k);
    let mut t = 0;
    while t < m.min(k) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..k {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..k {
                    let x = &q * &a[t][j];
                    a[i][j] -= x;
                }
                for j in 0..m {
                    let x = &q * &u[t][j];
                    u[i][j] -= x;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..k {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..m {
                    let x = &q * &a[i][t];
                    a[i][j] -= x;
                }
                for i in 0..k {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // bring the smallest remainder to the pivot
                let mut best = (t, t);
                for i in t..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..k {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // divisibility of the trailing block
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..k {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..k {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                    for j in 0..m {
                        let x = u[i][j].clone();
                        u[t][j] += x;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in t..k {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    Smith { rank: diag.len(), diag, u, v }
}

impl Smith {
    /// Integer `λ` with `A λ = x`, if one exists.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.u.len();
        let k = self.v.len();
        let ux: Vec<BigInt> = (0..m).map(|i| (0..m).map(|j| &self.u[i][j] * &x[j]).sum()).collect();
        let mut mu = vec![BigInt::zero(); k];
        for i in 0..m {
            if i < self.rank {
                let (q, r) = ux[i].div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                mu[i] = q;
            } else if !ux[i].is_zero() {
                return None;
            }
        }
        Some((0..k).map(|i| (0..k).map(|j| &self.v[i][j] * &mu[j]).sum()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        let (m, k, n) = (a.len(), b.len(), b[0].len());
        (0..m).map(|i| (0..n).map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum()).collect()).collect()
    }

    #[test]
    fn doubled_column_has_factor_two() {
        let a = from_i64(&[vec![2], vec![0], vec![2]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![BigInt::from(2)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn smith_is_a_factorisation(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-4i64..5, 36)) {
            let raw: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let a = from_i64(&raw);
            let s = smith(&a);
            let d = mul(&mul(&s.u, &a), &s.v);
            for i in 0..rows {
                for j in 0..cols {
                    let want = if i == j && i < s.rank { s.diag[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&d[i][j], &want);
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert_eq!(s.rank, rank(&a));
            prop_assert_eq!(rank_mod_p(&raw, 1_000_000_007), rank(&a));
            // A times a random integer vector solves back
            let lam: Vec<BigInt> = (0..cols).map(|j| BigInt::from(seed[30 + j % 6])).collect();
            let x: Vec<BigInt> = (0..rows).map(|i| (0..cols).map(|j| &a[i][j] * &lam[j]).sum()).collect();
            let sol = s.solve(&x).unwrap();
            let back: Vec<BigInt> = (0..rows).map(|i| (0..cols).map(|j| &a[i][j] * &sol[j]).sum()).collect();
            prop_assert_eq!(back, x);
        }
    }
}
