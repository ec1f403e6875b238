//! Two-phase dense simplex with Bland's rule.
//!
//! Exact over rationals; over floats the scalar's zero band is used for sign tests.

use crate::scalar::Scalar;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
struct Constraint<T> {
    coeffs: Vec<T>,
    rel: Relation,
    rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T> LpOutcome<T> {
    pub fn optimal(self) -> Option<(Vec<T>, T)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

/// Maximize `objective · x` subject to linear constraints. Variables are
/// nonnegative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    n: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(n: usize) -> Self {
        LinearProgram { n, free: vec![false; n], constraints: Vec::new() }
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn constrain(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.n, "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    /// Sparse form of `constrain`: `(variable, coefficient)` pairs.
    pub fn constrain_sparse(&mut self, terms: &[(usize, T)], rel: Relation, rhs: T) {
        let mut coeffs = vec![T::zero(); self.n];
        for (v, c) in terms {
            coeffs[*v] = coeffs[*v].clone() + c.clone();
        }
        self.constrain(coeffs, rel, rhs);
    }

    pub fn feasible_point(&self) -> Option<Vec<T>> {
        self.maximize(&vec![T::zero(); self.n]).optimal().map(|(x, _)| x)
    }

    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.n, "objective width");
        // Column layout: split free variables, then slacks, then artificials.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n);
        let mut ncols = 0;
        for i in 0..self.n {
            if self.free[i] {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;
        let nslack = self.constraints.iter().filter(|c| c.rel != Relation::Eq).count();
        let first_art = structural + nslack;
        let rows = self.constraints.len();
        let width = first_art + rows + 1;
        let mut tab: Vec<Vec<T>> = Vec::with_capacity(rows);
        let mut basis = Vec::with_capacity(rows);
        let mut slack = structural;
        for (r, c) in self.constraints.iter().enumerate() {
            let mut row = vec![T::zero(); width];
            for (i, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (p, n) = col_of[i];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
            }
            match c.rel {
                Relation::Le => {
                    row[slack] = T::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width - 1] = c.rhs.clone();
            if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[first_art + r] = T::one();
            tab.push(row);
            basis.push(first_art + r);
        }

        // Phase I: maximize minus the sum of artificials.
        let mut cost = vec![T::zero(); width - 1];
        for j in first_art..width - 1 {
            cost[j] = -T::one();
        }
        let mut obj = objective_row(&tab, &basis, &cost, width);
        if run_simplex(&mut tab, &mut basis, &mut obj, width - 1) == Phase::Unbounded {
            unreachable!("phase one is bounded");
        }
        // The last entry holds minus the phase-one value, i.e. the artificial sum.
        if !obj[width - 1].is_negligible() {
            return LpOutcome::Infeasible;
        }

        // Drive artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.len() {
            if basis[r] >= first_art {
                match (0..first_art).find(|&j| !tab[r][j].is_negligible()) {
                    Some(j) => pivot(&mut tab, &mut basis, &mut obj, r, j),
                    None => {
                        tab.remove(r);
                        basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        // Phase II on the structural and slack columns.
        let mut cost = vec![T::zero(); width - 1];
        for (i, (p, n)) in col_of.iter().enumerate() {
            cost[*p] = objective[i].clone();
            if let Some(n) = n {
                cost[*n] = -objective[i].clone();
            }
        }
        let mut obj = objective_row(&tab, &basis, &cost, width);
        if run_simplex(&mut tab, &mut basis, &mut obj, first_art) == Phase::Unbounded {
            return LpOutcome::Unbounded;
        }
        let mut col_val = vec![T::zero(); first_art];
        for (r, &b) in basis.iter().enumerate() {
            if b < first_art {
                col_val[b] = tab[r][width - 1].clone();
            }
        }
        let x: Vec<T> = col_of
            .iter()
            .map(|(p, n)| match n {
                Some(n) => col_val[*p].clone() - col_val[*n].clone(),
                None => col_val[*p].clone(),
            })
            .collect();
        let value = x.iter().zip(objective).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        LpOutcome::Optimal { x, value }
    }
}

#[derive(PartialEq)]
enum Phase {
    Optimal,
    Unbounded,
}

fn objective_row<T: Scalar>(tab: &[Vec<T>], basis: &[usize], cost: &[T], width: usize) -> Vec<T> {
    let mut obj = vec![T::zero(); width];
    obj[..width - 1].clone_from_slice(cost);
    for (r, &b) in basis.iter().enumerate() {
        let cb = &cost[b];
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            if !tab[r][j].is_zero() {
                obj[j] = obj[j].clone() - cb.clone() * tab[r][j].clone();
            }
        }
    }
    obj
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], basis: &mut [usize], obj: &mut [T], r: usize, e: usize) {
    let inv = T::one() / tab[r][e].clone();
    for v in tab[r].iter_mut() {
        if !v.is_zero() {
            *v = v.clone() * inv.clone();
        }
    }
    let prow = tab[r].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut Vec<T>| {
        let f = row[e].clone();
        if f.is_zero() {
            return;
        }
        for &j in &nz {
            row[j] = row[j].clone() - f.clone() * prow[j].clone();
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut o = obj.to_vec();
    eliminate(&mut o);
    obj.clone_from_slice(&o);
    basis[r] = e;
}

/// Bland's rule: lowest-index improving column, lowest-index leaving variable on ties.
fn run_simplex<T: Scalar>(tab: &mut [Vec<T>], basis: &mut [usize], obj: &mut [T], ncand: usize) -> Phase {
    let last = obj.len() - 1;
    loop {
        let Some(e) = (0..ncand).find(|&j| obj[j].is_pos()) else {
            return Phase::Optimal;
        };
        let mut leave: Option<(usize, T)> = None;
        for (r, row) in tab.iter().enumerate() {
            if !row[e].is_pos() {
                continue;
            }
            let ratio = row[last].clone() / row[e].clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Phase::Unbounded;
        };
        pivot(tab, basis, obj, r, e);
    }
}

/// Strictly positive coefficients λ with Σ λ_i g_i = target, if any exist.
pub fn positive_combination(gens: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    use num_traits::{One, Zero};
    let p = gens.len();
    if p == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    // λ_i = s + μ_i with μ ≥ 0; maximize s ≤ 1.
    let d = target.len();
    let mut lp = LinearProgram::<Rat>::new(p + 1);
    for k in 0..d {
        let mut row: Vec<Rat> = gens.iter().map(|g| g[k].clone()).collect();
        let sum = row.iter().fold(Rat::zero(), |a, b| a + b);
        row.push(sum);
        lp.constrain(row, Relation::Eq, target[k].clone());
    }
    lp.constrain_sparse(&[(p, Rat::one())], Relation::Le, Rat::one());
    let mut obj = vec![Rat::zero(); p + 1];
    obj[p] = Rat::one();
    let (x, s) = lp.maximize(&obj).optimal()?;
    if !s.is_pos() {
        return None;
    }
    Some(x[..p].iter().map(|mu| mu + &s).collect())
}

/// Nonnegative coefficients λ with Σ λ_i g_i = target, if any exist.
pub fn nonnegative_combination(gens: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    use num_traits::Zero;
    let p = gens.len();
    if p == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut lp = LinearProgram::<Rat>::new(p);
    for (k, t) in target.iter().enumerate() {
        lp.constrain(gens.iter().map(|g| g[k].clone()).collect(), Relation::Eq, t.clone());
    }
    lp.feasible_point()
}
