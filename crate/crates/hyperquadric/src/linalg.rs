//! Exact linear algebra over a [`Scalar`] field: small dense inverses and a
//! deterministic sparse solver.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Inverse of a square matrix by Gauss–Jordan elimination, `None` if singular.
pub fn inverse<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = a[col][c].clone() * f.clone();
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<S: Scalar>(m: &[Vec<S>], v: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
        .collect()
}

/// A sparse row: column index → coefficient.
pub type SparseRow<S> = BTreeMap<usize, S>;

/// Solve `rows · x = rhs` exactly.
///
/// Rows are processed in the given order and each new pivot is the smallest
/// column index left in the reduced row; the system is kept in reduced echelon
/// form and every free variable is set to zero. The result therefore depends
/// only on the order of rows and columns. Returns the index of the first
/// inconsistent row on failure.
pub fn solve_sparse<S: Scalar>(rows: &[(SparseRow<S>, S)], ncols: usize) -> Result<Vec<S>, usize> {
    // pivot column → (row, rhs), rows normalized so the pivot entry is 1
    let mut piv: BTreeMap<usize, (SparseRow<S>, S)> = BTreeMap::new();
    for (idx, (row, b)) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut rhs = b.clone();
        r.retain(|_, v| !v.is_zero());
        // reduce by existing pivots
        let cols: Vec<usize> = r.keys().copied().filter(|c| piv.contains_key(c)).collect();
        for c in cols {
            let f = match r.get(&c) {
                Some(f) => f.clone(),
                None => continue,
            };
            let (pr, pb) = &piv[&c];
            axpy(&mut r, &-f.clone(), pr);
            rhs -= f * pb.clone();
        }
        let Some((&pc, pv)) = r.iter().next() else {
            if rhs.is_zero() {
                continue;
            }
            return Err(idx);
        };
        let inv = pv.inv().expect("nonzero pivot");
        for v in r.values_mut() {
            *v = v.clone() * inv.clone();
        }
        rhs = rhs * inv;
        // keep the echelon form reduced
        for (pr, pb) in piv.values_mut() {
            if let Some(f) = pr.get(&pc).cloned() {
                axpy(pr, &-f.clone(), &r);
                *pb -= f * rhs.clone();
            }
        }
        piv.insert(pc, (r, rhs));
    }
    let mut x = vec![S::zero(); ncols];
    for (c, (_, b)) in piv {
        x[c] = b;
    }
    Ok(x)
}

fn axpy<S: Scalar>(r: &mut SparseRow<S>, f: &S, p: &SparseRow<S>) {
    for (c, v) in p {
        let t = v.clone() * f.clone();
        match r.get_mut(c) {
            Some(x) => {
                *x += t;
                if x.is_zero() {
                    r.remove(c);
                }
            }
            None => {
                r.insert(*c, t);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn g(n: i64) -> Gaussian {
        Gaussian::from_i64(n)
    }

    #[test]
    fn dense_inverse() {
        let m = vec![vec![g(2), g(1)], vec![Gaussian::i(), g(3)]];
        let inv = inverse(&m).unwrap();
        let e = mat_vec(&m, &[inv[0][0].clone(), inv[1][0].clone()]);
        assert_eq!(e, vec![g(1), g(0)]);
        assert!(inverse(&[vec![g(1), g(2)], vec![g(2), g(4)]]).is_none());
    }

    #[test]
    fn sparse_solver_sets_free_variables_to_zero() {
        // x0 + x1 = 3, x1 + x2 = 1, (x0 + 2x1 + x2 = 4 is dependent)
        let row = |e: &[(usize, i64)], b: i64| (e.iter().map(|&(c, v)| (c, g(v))).collect::<SparseRow<_>>(), g(b));
        let rows = vec![row(&[(0, 1), (1, 1)], 3), row(&[(1, 1), (2, 1)], 1), row(&[(0, 1), (1, 2), (2, 1)], 4)];
        let x = solve_sparse(&rows, 3).unwrap();
        assert_eq!(x, vec![g(2), g(1), g(0)]);
        let bad = vec![row(&[(0, 1)], 1), row(&[(0, 2)], 3)];
        assert_eq!(solve_sparse(&bad, 1), Err(1));
    }
}
