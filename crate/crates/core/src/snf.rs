//! Smith normal form over the integers and the lattice computations built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ZMat;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal, d₁ | d₂ | … ≥ 0.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: ZMat,
    pub s: ZMat,
    pub v: ZMat,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.s.nrows().min(self.s.ncols());
        (0..n).map(|i| self.s.get(i, i).clone()).filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

fn row_axpy(m: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    for c in 0..m.ncols() {
        let v = m.get(dst, c) - f * m.get(src, c);
        m.set(dst, c, v);
    }
}

fn col_axpy(m: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    for r in 0..m.nrows() {
        let v = m.get(r, dst) - f * m.get(r, src);
        m.set(r, dst, v);
    }
}

fn min_abs_in(s: &ZMat, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (r, c) in cells {
        let v = s.get(r, c);
        if v.is_zero() {
            continue;
        }
        let a = v.abs();
        if best.as_ref().is_none_or(|(_, b)| &a < b) {
            best = Some(((r, c), a));
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(m: &ZMat) -> Snf {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut s = m.clone();
    let mut u = ZMat::identity(rows);
    let mut v = ZMat::identity(cols);
    for t in 0..rows.min(cols) {
        let cells = (t..rows).flat_map(|r| (t..cols).map(move |c| (r, c)));
        let Some((pr, pc)) = min_abs_in(&s, cells) else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            let p = s.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..rows {
                let (qt, rem) = s.get(r, t).div_rem(&p);
                if !qt.is_zero() {
                    row_axpy(&mut s, r, t, &qt);
                    row_axpy(&mut u, r, t, &qt);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                let (qt, rem) = s.get(t, c).div_rem(&p);
                if !qt.is_zero() {
                    col_axpy(&mut s, c, t, &qt);
                    col_axpy(&mut v, c, t, &qt);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A smaller remainder sits in row or column t; make it the pivot.
                let cells = (t..rows).map(|r| (r, t)).chain((t + 1..cols).map(|c| (t, c)));
                let (pr, pc) = min_abs_in(&s, cells).expect("pivot row is nonzero");
                s.swap_rows(t, pr);
                u.swap_rows(t, pr);
                s.swap_cols(t, pc);
                v.swap_cols(t, pc);
                continue;
            }
            // Row and column t are cleared; enforce divisibility of the rest.
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !s.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, r, &minus_one);
                    row_axpy(&mut u, t, r, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            for c in 0..cols {
                let x = -s.get(t, c);
                s.set(t, c, x);
            }
            for c in 0..rows {
                let x = -u.get(t, c);
                u.set(t, c, x);
            }
        }
    }
    Snf { u, s, v }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &ZMat) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// An integer solution of `x * w = c`, or `None` if there is none.
pub fn integer_solve(x: &ZMat, c: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(x.nrows(), c.len(), "right-hand side length");
    let snf = smith_normal_form(x);
    let uc = snf.u.mul_vec(c);
    let mut y = vec![BigInt::zero(); x.ncols()];
    for (i, val) in uc.iter().enumerate() {
        let d = if i < x.ncols() { snf.s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            let (qt, rem) = val.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = qt;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Index of the lattice spanned by the columns of `m` inside `Z^rows`,
/// or `None` when the columns do not have full rank.
pub fn lattice_index(m: &ZMat) -> Option<BigInt> {
    let snf = smith_normal_form(m);
    if snf.rank() < m.nrows() {
        return None;
    }
    Some(snf.divisors().iter().product())
}
