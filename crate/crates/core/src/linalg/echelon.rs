use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::content_gcd;
use super::{Matrix, Scalar};

/// Reduced row-echelon form of a matrix together with its rank and pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

fn strip_content(row: &mut [BigInt]) {
    let g = content_gcd(row);
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Reduced row-echelon form by fraction-free Gauss-Jordan elimination.
///
/// Rows are scaled to integers once; elimination uses cross-multiplication
/// followed by removal of the row content, and division by the pivot happens
/// only when the final rational form is produced.
pub fn rref(m: &Matrix) -> Echelon {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = integer_rows(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pick = (r..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
        let Some(p) = pick else { continue };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let piv = &pivot_row[col];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let g = piv.gcd(&row[col]);
            let mr = piv / &g;
            let mp = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &mr - y * &mp;
            }
            strip_content(row);
        }
        pivots.push(col);
        r += 1;
    }
    let mut out = Matrix::zero(rows, cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let piv = a[i][pc].clone();
        for j in 0..cols {
            if !a[i][j].is_zero() {
                out[(i, j)] = Scalar::new(a[i][j].clone(), piv.clone());
            }
        }
    }
    Echelon {
        matrix: out,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let e = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); cols];
            x[f] = Scalar::one();
            for (i, &pc) in e.pivots.iter().enumerate() {
                x[pc] = -e.matrix[(i, f)].clone();
            }
            x
        })
        .collect()
}

/// One solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows(), b.len());
    let cols = m.cols();
    let augmented = Matrix::from_rows(
        (0..m.rows())
            .map(|i| {
                let mut row = m.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect(),
    );
    if m.rows() == 0 {
        return Some(vec![Scalar::zero(); cols]);
    }
    let e = rref(&augmented);
    if e.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.matrix[(i, cols)].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let e = rref(&Matrix::identity(2));
        assert_eq!(e.matrix, Matrix::identity(2));
        assert_eq!(e.rank, 2);
    }

    #[test]
    fn zero_matrix_rank_zero() {
        let z = Matrix::zero(3, 3);
        let e = rref(&z);
        assert_eq!(e.rank, 0);
        assert_eq!(e.matrix, z);
    }

    #[test]
    fn proportional_rows() {
        let e = rref(&Matrix::from_i64(2, 2, &[1, 2, 2, 4]));
        assert_eq!(e.matrix, Matrix::from_i64(2, 2, &[1, 2, 0, 0]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(1.into(), 2.into()), Scalar::new(1.into(), 3.into())],
            vec![Scalar::from_integer(3.into()), Scalar::from_integer(2.into())],
        ]);
        let e = rref(&m);
        assert_eq!(e.rank, 1);
        assert_eq!(e.matrix[(0, 1)], Scalar::new(2.into(), 3.into()));
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::from_i64(2, 3, &[1, 1, 0, 0, 1, 1]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let col = Matrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect());
            assert!(m.mul(&col).is_zero());
        }
        let b = vec![Scalar::from_integer(1.into()), Scalar::from_integer(2.into())];
        let x = solve(&m, &b).unwrap();
        let col = Matrix::from_rows(x.iter().map(|v| vec![v.clone()]).collect());
        assert_eq!(m.mul(&col).entries().to_vec(), b);
        let inconsistent = Matrix::from_i64(2, 1, &[1, 1]);
        assert!(solve(&inconsistent, &b).is_none());
    }
}
