//! Exact rational phase-1 simplex for the feasibility problem
//! `{ y >= 0 : A y >= b }`, with Bland's rule so no cycling occurs.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Find `y >= 0` with `A y >= b`, or `None` if infeasible.
pub fn feasible_nonneg(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(vec![]);
    }

    // Equality form: rows with b_i <= 0 are negated so the slack can start
    // basic; rows with b_i > 0 get an artificial variable.
    // Columns: [ y (n) | slacks (m) | artificials (k) ]
    let artificial_rows: Vec<usize> =
        (0..m).filter(|&i| b[i].is_positive()).collect();
    let k = artificial_rows.len();
    let cols = n + m + k;

    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = 0usize;
    for i in 0..m {
        let mut row = vec![Rational::zero(); cols];
        if b[i].is_positive() {
            for j in 0..n {
                row[j] = a[i][j].clone();
            }
            row[n + i] = -Rational::one();
            row[n + m + next_art] = Rational::one();
            basis.push(n + m + next_art);
            next_art += 1;
            rhs.push(b[i].clone());
        } else {
            for j in 0..n {
                row[j] = -a[i][j].clone();
            }
            row[n + i] = Rational::one();
            basis.push(n + i);
            rhs.push(-b[i].clone());
        }
        t.push(row);
    }

    let cost = |j: usize| -> Rational {
        if j >= n + m {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    // artificials that left the basis are never allowed back in
    let mut banned = vec![false; cols];

    loop {
        // reduced costs; Bland: enter the smallest eligible column
        let mut enter = None;
        for j in 0..cols {
            if banned[j] || basis.contains(&j) {
                continue;
            }
            let mut red = cost(j);
            for i in 0..m {
                if cost(basis[i]).is_one() {
                    red -= &t[i][j];
                }
            }
            if red.is_negative() {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else {
            // optimal: feasible iff the artificial total is zero
            let w: Rational = (0..m)
                .filter(|&i| basis[i] >= n + m)
                .map(|i| rhs[i].clone())
                .sum();
            if !w.is_zero() {
                return None;
            }
            let mut y = vec![Rational::zero(); n];
            for i in 0..m {
                if basis[i] < n {
                    y[basis[i]] = rhs[i].clone();
                }
            }
            return Some(y);
        };

        // ratio test, tie-break on smallest basic index (Bland)
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &rhs[i] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // the phase-1 objective is bounded below by zero, so a pivot row
        // always exists while a negative reduced cost does
        let leave = leave.expect("phase-1 simplex cannot be unbounded");

        // pivot
        let piv = t[leave][enter].clone();
        for j in 0..cols {
            t[leave][j] /= &piv;
        }
        rhs[leave] /= &piv;
        for i in 0..m {
            if i == leave || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for j in 0..cols {
                let d = &f * &t[leave][j];
                t[i][j] -= d;
            }
            let d = &f * &rhs[leave];
            rhs[i] -= d;
        }
        if basis[leave] >= n + m {
            banned[basis[leave]] = true;
        }
        basis[leave] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) {
        for (row, bi) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(y).map(|(c, yi)| c * yi).sum();
            assert!(lhs >= *bi, "constraint violated");
        }
        assert!(y.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn trivially_feasible() {
        let a = rows(&[&[1]]);
        let b = vec![rat(-5)];
        let y = feasible_nonneg(&a, &b).unwrap();
        check(&a, &b, &y);
    }

    #[test]
    fn needs_pivoting() {
        let a = rows(&[&[1, 1], &[-1, 2]]);
        let b = vec![rat(2), rat(1)];
        let y = feasible_nonneg(&a, &b).unwrap();
        check(&a, &b, &y);
    }

    #[test]
    fn infeasible_system() {
        // y1 >= 1 and -y1 >= 0 cannot both hold with y1 >= 0
        let a = rows(&[&[1], &[-1]]);
        let b = vec![rat(1), rat(0)];
        assert!(feasible_nonneg(&a, &b).is_none());
    }

    #[test]
    fn negative_definite_is_infeasible_for_growth() {
        // -2 y >= 1 with y >= 0 is infeasible
        let a = rows(&[&[-2]]);
        let b = vec![rat(1)];
        assert!(feasible_nonneg(&a, &b).is_none());
    }
}
