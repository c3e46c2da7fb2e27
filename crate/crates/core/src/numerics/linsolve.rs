use super::matrix::{norm2, Matrix};
use super::NumericsError;

/// Pivots below this fraction of ‖A‖_F mark a free variable.
pub const RANK_TOL: f64 = 1e-10;
/// Required bound on ‖A·v‖₂ / ‖A‖_F for an accepted null vector.
pub const NULL_RESIDUAL_TOL: f64 = 1e-8;

/// Unit vector spanning the (numerical) null space of a square matrix.
///
/// Gaussian elimination with partial pivoting; a column whose best pivot
/// falls below `RANK_TOL·‖A‖_F` becomes free. The first free variable is set
/// to one, any others to zero, and the pivot variables are back-substituted.
/// The result is normalized with its first nonzero component positive.
pub fn null_vector(a: &Matrix) -> Result<Vec<f64>, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Err(NumericsError::Empty);
    }
    let fro = a.frobenius_norm();
    if fro == 0.0 {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        return Ok(v);
    }
    let threshold = RANK_TOL * fro;

    let mut m = a.clone();
    // pivot_cols[r] is the column eliminated by row r
    let mut pivot_cols = Vec::with_capacity(n);
    let mut free_cols = Vec::new();
    let mut smallest_pivot = f64::INFINITY;
    let mut row = 0;
    for col in 0..n {
        let (best, best_abs) = (row..n)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if row >= n || best_abs < threshold {
            free_cols.push(col);
            continue;
        }
        smallest_pivot = smallest_pivot.min(best_abs);
        if best != row {
            for j in 0..n {
                let tmp = m[(row, j)];
                m[(row, j)] = m[(best, j)];
                m[(best, j)] = tmp;
            }
        }
        let piv = m[(row, col)];
        for r in (row + 1)..n {
            let factor = m[(r, col)] / piv;
            if factor == 0.0 {
                continue;
            }
            m[(r, col)] = 0.0;
            for j in (col + 1)..n {
                m[(r, j)] -= factor * m[(row, j)];
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    let Some(&free) = free_cols.first() else {
        return Err(NumericsError::FullRank {
            smallest_pivot,
            threshold,
        });
    };

    let mut v = vec![0.0; n];
    v[free] = 1.0;
    for (r, &col) in pivot_cols.iter().enumerate().rev() {
        let mut s = 0.0;
        for j in (col + 1)..n {
            s += m[(r, j)] * v[j];
        }
        v[col] = -s / m[(r, col)];
    }

    let norm = norm2(&v);
    for x in v.iter_mut() {
        *x /= norm;
    }
    let vmax = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * vmax) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }

    let residual = norm2(&a.matvec(&v));
    if residual > NULL_RESIDUAL_TOL * fro {
        return Err(NumericsError::NullResidual {
            residual,
            bound: NULL_RESIDUAL_TOL * fro,
        });
    }
    Ok(v)
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(a: &Matrix) -> Result<f64, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let best = (col..n)
            .max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs()))
            .unwrap_or(col);
        if m[(best, col)] == 0.0 {
            return Ok(0.0);
        }
        if best != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(best, j)];
                m[(best, j)] = tmp;
            }
            det = -det;
        }
        let piv = m[(col, col)];
        det *= piv;
        for r in (col + 1)..n {
            let factor = m[(r, col)] / piv;
            if factor == 0.0 {
                continue;
            }
            for j in (col + 1)..n {
                m[(r, j)] -= factor * m[(col, j)];
            }
        }
    }
    Ok(det)
}
