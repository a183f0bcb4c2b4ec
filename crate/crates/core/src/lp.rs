//! Exact feasibility of linear programs over ℚ by a phase-one simplex with
//! Bland's rule (smallest-index entering and leaving variables), so it never cycles.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Finds `x ≥ 0` with `A x = b`, or `None` when infeasible.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged constraint matrix");
        let neg = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if neg { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::from_integer(1.into());
        row[rhs] = if neg { -&b[i] } else { b[i].clone() };
        t.push(row);
    }
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase-one objective is bounded below by zero, so a leaving row exists
        let (r, _) = leave.expect("phase one is bounded");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, pr) in row.iter_mut().zip(&pivot_row) {
            if !pr.is_zero() {
                *x -= &f * pr;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn finds_feasible_point() {
        // x + y = 2, x - y = 0
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = feasible(&a, &[q(2), q(0)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = -1 with x, y ≥ 0
        assert!(feasible(&[vec![q(1), q(1)]], &[q(-1)]).is_none());
        // x = 1 and x = 2
        assert!(feasible(&[vec![q(1)], vec![q(1)]], &[q(1), q(2)]).is_none());
    }

    #[test]
    fn degenerate_system_terminates() {
        let a = vec![vec![q(1), q(1), q(0)], vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let x = feasible(&a, &[q(0), q(0), q(0)]).unwrap();
        assert!(x.iter().all(Zero::is_zero));
    }
}
