//! Revised simplex over exact rationals with Bland's pivoting rule.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Sparse column: `(row, coefficient)` pairs.
pub type Column = Vec<(usize, Q)>;

#[derive(Clone, Debug)]
pub struct LpSolution {
    /// Optimal primal values, one per column.
    pub x: Vec<Q>,
    /// Optimal dual values, one per row; `yᵀA ≥ c`, `y ≥ 0`.
    pub y: Vec<Q>,
    pub value: Q,
    pub pivots: usize,
}

/// Maximizes `cᵀx` subject to `Ax ≤ b`, `x ≥ 0`, for `b ≥ 0`.
pub fn maximize(rows: usize, cols: &[Column], c: &[Q], b: &[Q]) -> Result<LpSolution> {
    assert_eq!(cols.len(), c.len(), "one cost per column");
    assert_eq!(b.len(), rows, "one bound per row");
    if b.iter().any(Signed::is_negative) {
        return Err(Error::invalid("right-hand side must be nonnegative"));
    }
    let n = cols.len();
    let zero = Q::zero();
    let one = Q::from_integer(1.into());
    let mut basis: Vec<usize> = (n..n + rows).collect();
    let mut binv: Vec<Vec<Q>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let mut xb: Vec<Q> = b.to_vec();
    let cost = |j: usize| if j < n { c[j].clone() } else { Q::zero() };
    let mut pivots = 0;
    loop {
        let mut y = vec![Q::zero(); rows];
        for (r, &bv) in basis.iter().enumerate() {
            let cb = cost(bv);
            if cb.is_zero() {
                continue;
            }
            for i in 0..rows {
                if !binv[r][i].is_zero() {
                    y[i] += &cb * &binv[r][i];
                }
            }
        }
        let entering = (0..n + rows).find(|&j| {
            if j < n {
                let mut d = c[j].clone();
                for (i, a) in &cols[j] {
                    d -= &y[*i] * a;
                }
                d.is_positive()
            } else {
                y[j - n].is_negative()
            }
        });
        let Some(j) = entering else {
            let mut x = vec![Q::zero(); n];
            for (r, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = xb[r].clone();
                }
            }
            let value = x.iter().zip(c).fold(Q::zero(), |acc, (xi, ci)| acc + xi * ci);
            return Ok(LpSolution { x, y, value, pivots });
        };
        let u: Vec<Q> = (0..rows)
            .map(|r| {
                if j < n {
                    cols[j].iter().fold(Q::zero(), |acc, (i, a)| acc + &binv[r][*i] * a)
                } else {
                    binv[r][j - n].clone()
                }
            })
            .collect();
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..rows {
            if !u[r].is_positive() {
                continue;
            }
            let ratio = &xb[r] / &u[r];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::infeasible("linear program is unbounded"));
        };
        let piv = u[r].clone();
        for v in binv[r].iter_mut() {
            *v /= &piv;
        }
        xb[r] /= &piv;
        let pivot_row = binv[r].clone();
        let pivot_x = xb[r].clone();
        for s in 0..rows {
            if s == r || u[s].is_zero() {
                continue;
            }
            let f = &u[s];
            for (i, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    binv[s][i] -= f * pv;
                }
            }
            xb[s] -= f * &pivot_x;
        }
        basis[r] = j;
        pivots += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn col(entries: &[(usize, i64)]) -> Column {
        entries.iter().map(|&(i, a)| (i, qi(a))).collect()
    }

    #[test]
    fn small_textbook_program() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3: optimum (3,1) value 11.
        let cols = vec![col(&[(0, 1), (1, 1), (2, 1)]), col(&[(0, 1), (1, 3)])];
        let sol = maximize(3, &cols, &[qi(3), qi(2)], &[qi(4), qi(6), qi(3)]).unwrap();
        assert_eq!(sol.value, qi(11));
        assert_eq!(sol.x, vec![qi(3), qi(1)]);
        let dual: Q = sol.y.iter().zip([qi(4), qi(6), qi(3)]).map(|(a, b)| a * b).sum();
        assert_eq!(dual, qi(11));
    }

    #[test]
    fn fractional_optimum() {
        // Triangle matching: each vertex load ≤ 1.
        let cols = vec![col(&[(0, 1), (1, 1)]), col(&[(0, 1), (2, 1)]), col(&[(1, 1), (2, 1)])];
        let sol = maximize(3, &cols, &[qi(1), qi(1), qi(1)], &[qi(1), qi(1), qi(1)]).unwrap();
        assert_eq!(sol.value, q(3, 2));
    }

    #[test]
    fn unbounded_detected() {
        let cols = vec![col(&[])];
        assert!(maximize(1, &cols, &[qi(1)], &[qi(1)]).is_err());
    }
}
