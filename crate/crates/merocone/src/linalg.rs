//! Small exact linear-algebra kernel over arbitrary-precision rationals,
//! plus Hermite normal forms for integer row lattices.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Reduced row echelon form in place. Returns the pivot column indices.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solves `sum_j x_j * cols[j] = target`; `None` when inconsistent.
/// The columns need not be independent; any particular solution is returned,
/// with free coefficients set to zero.
pub fn solve_combination(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = target.len();
    let k = cols.len();
    if k == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    // Augmented system rows: one row per coordinate.
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Basis of the right null space `{ x in Q^n : rows[i] . x = 0 }`.
pub fn nullspace(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn invert(mat: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = mat.len();
    let mut rows: Vec<Vec<Rat>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert: matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    if n == 0 {
        return Rat::one();
    }
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &inv;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[i][k] = &m[i][k] - &sub;
            }
        }
    }
    det
}

/// Canonical Hermite normal form basis of the lattice spanned by the given
/// integer rows: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped. The result depends only on the row
/// lattice, not on the generating set.
pub fn row_hnf(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        // Combine rows below r until at most one has a nonzero entry in c.
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let (i, j) = (nz[0], nz[1]);
            let a = m[i][c].clone();
            let b = m[j][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            for k in 0..ncols {
                let mi = m[i][k].clone();
                let mj = m[j][k].clone();
                m[i][k] = &x * &mi + &y * &mj;
                m[j][k] = &ag * &mj - &bg * &mi;
            }
        }
        if let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, i);
            if m[r][c].is_negative() {
                for k in 0..ncols {
                    m[r][k] = -m[r][k].clone();
                }
            }
            let pivot = m[r][c].clone();
            for t in 0..r {
                let q = m[t][c].div_floor(&pivot);
                if !q.is_zero() {
                    for k in 0..ncols {
                        let sub = &q * &m[r][k];
                        m[t][k] = &m[t][k] - &sub;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Basis of the integer kernel `{ x in Z^n : M x = 0 }` for an integer matrix
/// given as `rows` (each of length `n`).
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // Rows of [M^T | I]; unimodular row reduction of the first block tracks
    // the combinations in the second.
    let aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..m).map(|j| rows[j][i].clone()).collect();
            row.extend((0..n).map(|j| BigInt::from(u8::from(i == j))));
            row
        })
        .collect();
    let h = row_hnf(aug);
    h.into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rref_rank_and_nullspace() {
        let rows = vec![rv(&[1, 2, 3]), rv(&[2, 4, 6]), rv(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_combination_finds_coordinates() {
        let cols = vec![rv(&[1, 1]), rv(&[1, -1])];
        let x = solve_combination(&cols, &rv(&[0, 2])).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(-1)]);
        assert!(solve_combination(&[rv(&[1, 0])], &rv(&[0, 1])).is_none());
    }

    #[test]
    fn invert_round_trips() {
        let m = vec![rv(&[1, 2]), rv(&[3, 5])];
        let inv = invert(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let s: Rat = (0..2).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(s, rat_int(i64::from(i == j)));
            }
        }
        assert!(invert(&[rv(&[1, 2]), rv(&[2, 4])]).is_none());
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = vec![rv(&[1, 2]), rv(&[3, 4])];
        assert_eq!(determinant(&m), rat_int(-2));
        assert_eq!(determinant(&[]), rat_int(1));
    }

    #[test]
    fn hnf_is_canonical_for_the_row_lattice() {
        let m1 = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        // Same row lattice, different generating set.
        let m1b = vec![
            vec![BigInt::from(3), BigInt::from(1)],
            vec![BigInt::from(2), BigInt::from(0)],
        ];
        assert_eq!(row_hnf(m1.clone()), row_hnf(m1b));
        let full = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_ne!(row_hnf(m1), row_hnf(full));
    }

    #[test]
    fn integer_kernel_of_projection() {
        let rows = vec![vec![BigInt::from(1), BigInt::from(2), BigInt::from(-1)]];
        let kern = integer_kernel(&rows, 3);
        assert_eq!(kern.len(), 2);
        for v in &kern {
            let dot: BigInt = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
