//! Hermite and Smith normal forms over the integers.
//!
//! Both routines are deterministic: the Smith form always pivots on the
//! smallest nonzero entry by absolute value, scanning row-major so the
//! topmost (then leftmost) entry wins ties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form of the row module of `m`.
///
/// Zero rows are dropped, so the result has exactly `rank(m)` rows. Pivots are
/// positive, pivot columns strictly increase, and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| !a[(i, col)].is_zero())
                .min_by(|&i, &j| a[(i, col)].abs().cmp(&a[(j, col)].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in (r + 1)..rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = a[(i, col)].div_floor(&a[(r, col)]);
                a.add_row_multiple(i, r, &-q);
                if !a[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, col)].is_zero() {
            continue;
        }
        if a[(r, col)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, col)].div_floor(&a[(r, col)]);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    if kept.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(kept).expect("rows share a length")
}

/// Result of [`smith_normal_form`]: `u · m · v = d`, with `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    v_inverse: IntMatrix,
}

impl SnfResult {
    /// The diagonal of `d` (length `min(rows, cols)`), nonnegative and in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Diagonal entries other than 1 and 0.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }

    /// Exact inverse of `v`, tracked alongside the column operations.
    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inverse
    }
}

struct SnfCalc {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if x.abs() >= self.a[(bi, bj)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn process(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.smallest_in_block(t) else {
                    return;
                };
                self.row_swap(t, pi);
                self.col_swap(t, pj);
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in (t + 1)..rows {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&pivot);
                        self.row_add(i, t, &-q);
                        clean &= self.a[(i, t)].is_zero();
                    }
                }
                for j in (t + 1)..cols {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&pivot);
                        self.col_add(j, t, &-q);
                        clean &= self.a[(t, j)].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // Enforce pivot | every remaining entry.
                let offender = ((t + 1)..rows)
                    .find(|&i| ((t + 1)..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                self.u.negate_row(t);
            }
        }
    }
}

/// Smith normal form with unimodular change-of-basis certificates.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut calc = SnfCalc {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    calc.process();
    SnfResult {
        u: calc.u,
        v: calc.v,
        d: calc.a,
        v_inverse: calc.v_inv,
    }
}

/// Basis (as rows) of the integer kernel {x : m·x = 0}; always saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let rows: Vec<Vec<BigInt>> = (r..n).map(|j| snf.v.column_vector(j).0).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    hermite_normal_form(&IntMatrix::from_rows(rows).expect("uniform columns"))
}
