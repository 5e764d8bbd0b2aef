//! Dense linear algebra over a [`FieldSpec`], rows as `Vec<u32>`.

use crate::galois::FieldSpec;

pub type Matrix = Vec<Vec<u32>>;

/// Reduced row-echelon form with zero rows dropped. Pivots are 1.
pub fn rref(f: &FieldSpec, rows: &[Vec<u32>]) -> Matrix {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == m.len() {
            break;
        }
        let Some(sel) = (pivot_row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = f.inv(m[pivot_row][col]);
        for x in m[pivot_row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(factor, pv));
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

pub fn rank(f: &FieldSpec, rows: &[Vec<u32>]) -> usize {
    rref(f, rows).len()
}

/// Pivot column of each row of a matrix already in RREF.
pub fn pivots(rref_rows: &[Vec<u32>]) -> Vec<usize> {
    rref_rows
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("zero row in RREF"))
        .collect()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` is in the row space.
pub fn reduce(f: &FieldSpec, rref_rows: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    let mut out = v.to_vec();
    for row in rref_rows {
        let pc = row.iter().position(|&x| x != 0).expect("zero row in RREF");
        let c = out[pc];
        if c != 0 {
            for (x, &rv) in out.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, rv));
            }
        }
    }
    out
}

pub fn in_row_space(f: &FieldSpec, rref_rows: &[Vec<u32>], v: &[u32]) -> bool {
    reduce(f, rref_rows, v).iter().all(|&x| x == 0)
}

/// Basis of `{x : r . x = 0 for every row r}`, in RREF.
pub fn nullspace(f: &FieldSpec, rows: &[Vec<u32>], ncols: usize) -> Matrix {
    let r = rref(f, rows);
    let piv = pivots(&r);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&piv) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    rref(f, &basis)
}

pub fn mat_mul(f: &FieldSpec, a: &[Vec<u32>], b: &[Vec<u32>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0u32, |acc, k| f.add(acc, f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// `m . v` with `v` a column vector.
pub fn mat_vec(f: &FieldSpec, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

pub fn transpose(m: &[Vec<u32>]) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(f: &FieldSpec, m: &[Vec<u32>]) -> Option<Matrix> {
    let n = m.len();
    let augmented: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let red = rref(f, &augmented);
    if red.len() < n || pivots(&red).iter().any(|&p| p >= n) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients `c` with `Σ c_i basis_i = v`, if `v` is in the span and the
/// basis rows are independent.
pub fn coordinates(f: &FieldSpec, basis: &[Vec<u32>], v: &[u32]) -> Option<Vec<u32>> {
    // solve basis^T c = v
    let k = basis.len();
    let cols = v.len();
    let augmented: Matrix = (0..cols)
        .map(|j| {
            let mut r: Vec<u32> = basis.iter().map(|b| b[j]).collect();
            r.push(v[j]);
            r
        })
        .collect();
    let red = rref(f, &augmented);
    let piv = pivots(&red);
    if piv.contains(&k) || piv.len() < k {
        return None;
    }
    let mut c = vec![0u32; k];
    for (row, &pc) in red.iter().zip(&piv) {
        c[pc] = row[k];
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace_are_complementary() {
        let f = FieldSpec::new(3, 1).unwrap();
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]];
        let r = rref(&f, &rows);
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(r.len() + ns.len(), 4);
        for v in &ns {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = FieldSpec::new(2, 2).unwrap();
        let m = vec![vec![1, 2, 0], vec![0, 3, 1], vec![1, 0, 1]];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(3));
        let singular = vec![vec![1, 2], vec![1, 2]];
        assert!(inverse(&f, &singular).is_none());
    }

    #[test]
    fn coordinates_solve_combinations() {
        let f = FieldSpec::new(5, 1).unwrap();
        let basis = vec![vec![1, 0, 2], vec![0, 1, 3]];
        let v = vec![3, 4, f.add(f.mul(3, 2), f.mul(4, 3))];
        assert_eq!(coordinates(&f, &basis, &v), Some(vec![3, 4]));
        assert_eq!(coordinates(&f, &basis, &[0, 0, 1]), None);
    }
}
