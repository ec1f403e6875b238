//! Finitely generated rational cones.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gale::VectorConfiguration;
use crate::lp::{nonnegative_combination, positive_combination, LinearProgram, Relation};
use crate::rational::{dot, primitive};
use crate::{IndexSet, QMat, Rat};

/// Largest dimension handled by facet enumeration.
pub const FACET_DIM_LIMIT: usize = 6;

/// The set of nonnegative combinations of the generators; `{0}` when there are none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<Vec<Rat>>,
}

/// The closed halfspace `{x : ⟨normal, x⟩ ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
}

/// `{x : ⟨e, x⟩ = 0 for e in equations, ⟨h, x⟩ ≥ 0 for h in inequalities}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub equations: Vec<Vec<Rat>>,
    pub inequalities: Vec<Vec<Rat>>,
}

impl Cone {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<Rat>>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient_dim, "generator length");
        }
        Cone { ambient_dim, generators }
    }

    /// The cone over the configuration vectors indexed by `s`.
    pub fn of(cfg: &VectorConfiguration, s: IndexSet) -> Self {
        Cone { ambient_dim: cfg.dim(), generators: cfg.select(s) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    fn matrix(&self) -> QMat {
        QMat::from_columns(self.ambient_dim, &self.generators)
    }

    /// The sum of the generators, which lies in the relative interior.
    pub fn relint_point(&self) -> Vec<Rat> {
        let mut s = vec![Rat::zero(); self.ambient_dim];
        for g in &self.generators {
            for (a, b) in s.iter_mut().zip(g) {
                *a += b;
            }
        }
        s
    }

    fn nonzero_generators(&self) -> Vec<Vec<Rat>> {
        self.generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect()
    }
}

pub fn contains(c: &Cone, x: &[Rat]) -> bool {
    nonnegative_combination(c.generators(), x).is_some()
}

pub fn relint_contains(c: &Cone, x: &[Rat]) -> bool {
    positive_combination(c.generators(), x).is_some()
}

/// A primitive integer point in both relative interiors, if they meet.
pub fn relints_intersect(c1: &Cone, c2: &Cone) -> Option<Vec<Rat>> {
    assert_eq!(c1.ambient_dim, c2.ambient_dim, "cone dimensions");
    let (p1, p2, d) = (c1.generators.len(), c2.generators.len(), c1.ambient_dim);
    // Coefficients s + μ_i and s + ν_j; maximize s ≤ 1.
    let s = p1 + p2;
    let mut lp = LinearProgram::<Rat>::new(s + 1);
    for k in 0..d {
        let mut row = Vec::with_capacity(s + 1);
        let mut total = Rat::zero();
        for g in &c1.generators {
            total += &g[k];
            row.push(g[k].clone());
        }
        for h in &c2.generators {
            total -= &h[k];
            row.push(-h[k].clone());
        }
        row.push(total);
        lp.constrain(row, Relation::Eq, Rat::zero());
    }
    lp.constrain_sparse(&[(s, Rat::one())], Relation::Le, Rat::one());
    let mut obj = vec![Rat::zero(); s + 1];
    obj[s] = Rat::one();
    let (x, t) = lp.maximize(&obj).optimal()?;
    if t <= Rat::zero() {
        return None;
    }
    let mut w = vec![Rat::zero(); d];
    for (i, g) in c1.generators.iter().enumerate() {
        let lam = &x[i] + &t;
        for (a, b) in w.iter_mut().zip(g) {
            *a += &lam * b;
        }
    }
    Some(primitive(&w))
}

/// Whether the cone contains no line.
pub fn is_strongly_convex(c: &Cone) -> bool {
    let gens = c.nonzero_generators();
    let p = gens.len();
    if p == 0 {
        return true;
    }
    // A nonzero nonnegative relation among nonzero generators yields a line.
    let mut lp = LinearProgram::<Rat>::new(p);
    for k in 0..c.ambient_dim {
        lp.constrain(gens.iter().map(|g| g[k].clone()).collect(), Relation::Eq, Rat::zero());
    }
    for i in 0..p {
        lp.constrain_sparse(&[(i, Rat::one())], Relation::Le, Rat::one());
    }
    let (_, v) = lp.maximize(&vec![Rat::one(); p]).optimal().expect("bounded feasible program");
    v.is_zero()
}

pub fn cone_dim(c: &Cone) -> usize {
    c.matrix().rank()
}

/// Facet normals of a full-dimensional cone.
pub fn facets(c: &Cone) -> Result<Vec<Halfspace>> {
    let d = c.ambient_dim;
    if cone_dim(c) != d {
        return Err(Error::NotFullDim(format!("cone of dimension {} in ambient dimension {d}", cone_dim(c))));
    }
    if d > FACET_DIM_LIMIT {
        return Err(Error::DimLimit(d, FACET_DIM_LIMIT));
    }
    Ok(facet_normals(d, &c.nonzero_generators()).into_iter().map(|normal| Halfspace { normal }).collect())
}

/// Brute force over (d−1)-subsets of a full-rank generator list.
fn facet_normals(d: usize, gens: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for s in IndexSet::k_subsets(gens.len(), d - 1) {
        let sub: Vec<Vec<Rat>> = s.iter().map(|i| gens[i].clone()).collect();
        let m = QMat::from_rows(&sub);
        let m = if sub.is_empty() { QMat::zeros(0, d) } else { m };
        if m.rank() != d - 1 {
            continue;
        }
        let normal = m.kernel_basis().column(0);
        let signs: Vec<Rat> = gens.iter().map(|g| dot(g, &normal)).collect();
        let normal = if signs.iter().all(|x| x >= &Rat::zero()) {
            normal
        } else if signs.iter().all(|x| x <= &Rat::zero()) {
            normal.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let normal = primitive(&normal);
        if !out.contains(&normal) {
            out.push(normal);
        }
    }
    out.sort();
    out
}

/// Equations and facet inequalities for a cone of any dimension ≤ the facet limit.
pub fn h_representation(c: &Cone) -> Result<HRep> {
    let d = c.ambient_dim;
    let gens = c.nonzero_generators();
    let r = cone_dim(c);
    if r > FACET_DIM_LIMIT {
        return Err(Error::DimLimit(r, FACET_DIM_LIMIT));
    }
    if r == 0 {
        let equations = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        return Ok(HRep { dim: d, equations, inequalities: vec![] });
    }
    // Rows of `basis` span the linear hull of the cone.
    let rref = QMat::from_rows(&gens).rref();
    let basis = rref.reduced.select_rows(&(0..r).collect::<Vec<_>>());
    let equations = basis.kernel_basis().columns().iter().map(|e| primitive(e)).collect();
    let coords: Vec<Vec<Rat>> =
        gens.iter().map(|g| basis.transpose().solve(g).expect("generator lies in its span")).collect();
    let gram = basis.mul(&basis.transpose());
    let inequalities = facet_normals(r, &coords)
        .iter()
        .map(|u| {
            let y = gram.solve(u).expect("Gram matrix is invertible");
            primitive(&basis.transpose().mul_vec(&y))
        })
        .collect();
    Ok(HRep { dim: d, equations, inequalities })
}

/// Whether `h` is implied by the equations and the other inequalities.
fn implied(h: &[Rat], equations: &[Vec<Rat>], others: &[Vec<Rat>]) -> bool {
    let mut gens: Vec<Vec<Rat>> = others.to_vec();
    for e in equations {
        gens.push(e.clone());
        gens.push(e.iter().map(|x| -x).collect());
    }
    nonnegative_combination(&gens, h).is_some()
}

impl HRep {
    /// Concatenation of constraint systems, i.e. the intersection of the cones.
    pub fn intersect(parts: &[HRep], dim: usize) -> HRep {
        let mut equations = Vec::new();
        let mut inequalities = Vec::new();
        for p in parts {
            assert_eq!(p.dim, dim, "constraint dimension");
            equations.extend(p.equations.iter().cloned());
            inequalities.extend(p.inequalities.iter().cloned());
        }
        HRep { dim, equations, inequalities }.reduced()
    }

    /// Removes duplicate, zero and implied constraints; equations are reduced to a basis.
    pub fn reduced(&self) -> HRep {
        let equations: Vec<Vec<Rat>> = if self.equations.is_empty() {
            vec![]
        } else {
            let m = QMat::from_rows(&self.equations).rref();
            (0..m.pivots.len()).map(|r| primitive(m.reduced.row(r))).collect()
        };
        let mut ineq: Vec<Vec<Rat>> = Vec::new();
        for h in &self.inequalities {
            let h = primitive(h);
            if h.iter().all(Zero::is_zero) || ineq.contains(&h) {
                continue;
            }
            ineq.push(h);
        }
        ineq.sort();
        let mut i = 0;
        while i < ineq.len() {
            let others: Vec<Vec<Rat>> = ineq.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            if implied(&ineq[i], &equations, &others) {
                ineq.remove(i);
            } else {
                i += 1;
            }
        }
        HRep { dim: self.dim, equations, inequalities: ineq }
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero()) && self.inequalities.iter().all(|h| dot(h, x) >= Rat::zero())
    }

    /// Generators of the described cone: extreme rays plus both directions of
    /// a lineality basis.
    pub fn generators(&self) -> Result<Cone> {
        let d = self.dim;
        if d > FACET_DIM_LIMIT {
            return Err(Error::DimLimit(d, FACET_DIM_LIMIT));
        }
        let mut all_rows = self.equations.clone();
        all_rows.extend(self.inequalities.iter().cloned());
        let lineality = if all_rows.is_empty() { QMat::identity(d) } else { QMat::from_rows(&all_rows).kernel_basis() };
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        let mut eqs = self.equations.clone();
        for l in lineality.columns() {
            let l = primitive(&l);
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
            eqs.push(l);
        }
        let e = if eqs.is_empty() { 0 } else { QMat::from_rows(&eqs).rank() };
        if e < d {
            let t = d - 1 - e;
            let mut rays: Vec<Vec<Rat>> = Vec::new();
            for s in IndexSet::k_subsets(self.inequalities.len(), t) {
                let mut rows = eqs.clone();
                rows.extend(s.iter().map(|i| self.inequalities[i].clone()));
                let m = if rows.is_empty() { QMat::zeros(0, d) } else { QMat::from_rows(&rows) };
                let k = m.kernel_basis();
                if k.ncols() != 1 {
                    continue;
                }
                let r = k.column(0);
                let neg: Vec<Rat> = r.iter().map(|x| -x).collect();
                for cand in [r, neg] {
                    if self.inequalities.iter().all(|h| dot(h, &cand) >= Rat::zero()) {
                        let cand = primitive(&cand);
                        if !rays.contains(&cand) {
                            rays.push(cand);
                        }
                    }
                }
            }
            rays.sort();
            gens.extend(rays);
        }
        Ok(Cone::new(d, gens))
    }
}

/// Whether `sub` is a face of `sup`. Assumes the generators of `sub` lie in `sup`.
pub fn is_face(sub: &Cone, sup: &Cone) -> bool {
    let d = sup.ambient_dim;
    let p = sup.generators.len();
    // Variables: w (free, d) then slack s_h ≤ 1 per generator of sup with ⟨h,w⟩ ≥ s_h.
    let mut lp = LinearProgram::<Rat>::new(d + p);
    for j in 0..d {
        lp.set_free(j);
    }
    for g in &sub.generators {
        let mut row = g.clone();
        row.extend(std::iter::repeat_n(Rat::zero(), p));
        lp.constrain(row, Relation::Eq, Rat::zero());
    }
    for (i, h) in sup.generators.iter().enumerate() {
        let mut row = h.clone();
        row.extend(std::iter::repeat_n(Rat::zero(), p));
        row[d + i] = -Rat::one();
        lp.constrain(row, Relation::Ge, Rat::zero());
        lp.constrain_sparse(&[(d + i, Rat::one())], Relation::Le, Rat::one());
    }
    let mut obj = vec![Rat::zero(); d + p];
    for i in 0..p {
        obj[d + i] = Rat::one();
    }
    let (x, _) = lp.maximize(&obj).optimal().expect("w = 0 is feasible and the program is bounded");
    let w = &x[..d];
    // The face cut out by w is generated by the generators of sup it vanishes on.
    sup.generators.iter().filter(|h| dot(h, w).is_zero()).all(|h| contains(sub, h))
}

/// A functional w ≥ 0 on `c1`, ≤ 0 on `c2`, with `c1 ∩ {w = 0} = c1 ∩ c2 = c2 ∩ {w = 0}`.
pub fn separating_functional(c1: &Cone, c2: &Cone) -> Option<Vec<Rat>> {
    let d = c1.ambient_dim;
    let gens: Vec<(Vec<Rat>, bool)> = c1
        .generators
        .iter()
        .map(|g| (g.clone(), true))
        .chain(c2.generators.iter().map(|h| (h.clone(), false)))
        .collect();
    let p = gens.len();
    let mut lp = LinearProgram::<Rat>::new(d + p);
    for j in 0..d {
        lp.set_free(j);
    }
    for (i, (g, first)) in gens.iter().enumerate() {
        let mut row: Vec<Rat> = if *first { g.clone() } else { g.iter().map(|x| -x).collect() };
        row.extend(std::iter::repeat_n(Rat::zero(), p));
        row[d + i] = -Rat::one();
        lp.constrain(row, Relation::Ge, Rat::zero());
        lp.constrain_sparse(&[(d + i, Rat::one())], Relation::Le, Rat::one());
    }
    let mut obj = vec![Rat::zero(); d + p];
    for i in 0..p {
        obj[d + i] = Rat::one();
    }
    let (x, _) = lp.maximize(&obj).optimal()?;
    let w = primitive(&x[..d]);
    let ok1 = c1.generators.iter().filter(|g| dot(g, &w).is_zero()).all(|g| contains(c2, g));
    let ok2 = c2.generators.iter().filter(|h| dot(h, &w).is_zero()).all(|h| contains(c1, h));
    (ok1 && ok2).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn cone(d: usize, gens: &[&[i64]]) -> Cone {
        Cone::new(d, gens.iter().map(|g| qvec(g)).collect())
    }

    #[test]
    fn membership() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(contains(&c, &qvec(&[2, 3])));
        assert!(!contains(&c, &qvec(&[-1, 0])));
        assert!(relint_contains(&c, &qvec(&[1, 1])));
        assert!(!relint_contains(&c, &qvec(&[1, 0])));
        let g23 = cone(2, &[&[0, 1], &[1, 0]]);
        assert!(contains(&g23, &qvec(&[1, 2])));
        assert!(relint_contains(&g23, &qvec(&[1, 2])));
        let zero = cone(2, &[]);
        assert!(relint_contains(&zero, &qvec(&[0, 0])));
        assert!(!contains(&zero, &qvec(&[1, 0])));
    }

    #[test]
    fn relint_intersections() {
        let ray = cone(2, &[&[1, 0]]);
        let wedge = cone(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(relints_intersect(&ray, &wedge), Some(qvec(&[1, 0])));
        assert_eq!(relints_intersect(&ray, &cone(2, &[&[0, 1]])), None);
        let one = cone(1, &[&[1]]);
        assert_eq!(relints_intersect(&one, &one), Some(qvec(&[1])));
        assert_eq!(relints_intersect(&cone(1, &[]), &cone(1, &[])), Some(qvec(&[0])));
        assert_eq!(relints_intersect(&cone(1, &[]), &one), None);
        assert_eq!(relints_intersect(&cone(1, &[]), &cone(1, &[&[1], &[-1]])), Some(qvec(&[0])));
    }

    #[test]
    fn strong_convexity() {
        assert!(is_strongly_convex(&cone(2, &[&[1, 0], &[0, 1]])));
        assert!(!is_strongly_convex(&cone(1, &[&[1], &[-1]])));
        assert!(!is_strongly_convex(&cone(2, &[&[1, 0], &[0, 1], &[-1, 0], &[-1, -1]])));
        assert!(is_strongly_convex(&cone(2, &[&[0, 0], &[1, 0]])));
    }

    #[test]
    fn facet_lists() {
        let f = facets(&cone(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(f, vec![Halfspace { normal: qvec(&[0, 1]) }, Halfspace { normal: qvec(&[1, 0]) }]);
        let f2 = facets(&cone(2, &[&[1, 0], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(f, f2);
        assert!(matches!(facets(&cone(2, &[&[1, 0]])), Err(Error::NotFullDim(_))));
        let big = Cone::new(7, (0..7).map(|i| (0..7).map(|j| Rat::from_integer((i == j).into())).collect()).collect());
        assert!(matches!(facets(&big), Err(Error::DimLimit(7, 6))));
        assert_eq!(facets(&cone(1, &[&[2]])).unwrap(), vec![Halfspace { normal: qvec(&[1]) }]);
        assert!(facets(&cone(1, &[&[2], &[-1]])).unwrap().is_empty());
    }

    #[test]
    fn dimensions() {
        assert_eq!(cone_dim(&cone(2, &[])), 0);
        assert_eq!(cone_dim(&cone(2, &[&[1, 0], &[2, 0]])), 1);
    }

    #[test]
    fn faces() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(is_face(&cone(2, &[&[1, 0]]), &q));
        assert!(!is_face(&cone(2, &[&[1, 1]]), &q));
        assert!(is_face(&cone(2, &[]), &q));
        assert!(is_face(&q, &q));
        assert!(!is_face(&cone(2, &[]), &cone(1 + 1, &[&[1, 0], &[-1, 0]])));
    }

    #[test]
    fn h_rep_of_lower_dimensional_cone() {
        let c = cone(3, &[&[1, 0, 1], &[-1, 0, 1]]);
        let h = h_representation(&c).unwrap();
        assert_eq!(h.equations.len(), 1);
        assert_eq!(h.inequalities.len(), 2);
        assert!(h.satisfied_by(&qvec(&[0, 0, 1])));
        assert!(!h.satisfied_by(&qvec(&[0, 1, 1])));
        assert!(!h.satisfied_by(&qvec(&[2, 0, 1])));
        let back = h.generators().unwrap();
        let mut gens = back.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![qvec(&[-1, 0, 1]), qvec(&[1, 0, 1])]);
    }

    #[test]
    fn h_rep_with_lineality() {
        let c = cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let h = h_representation(&c).unwrap();
        assert_eq!(h.inequalities, vec![qvec(&[0, 1])]);
        let g = h.generators().unwrap();
        for v in [qvec(&[5, 1]), qvec(&[-3, 0])] {
            assert!(contains(&g, &v));
        }
        assert!(!contains(&g, &qvec(&[0, -1])));
    }

    #[test]
    fn separation() {
        let a = cone(2, &[&[1, 0], &[1, 1]]);
        let b = cone(2, &[&[1, 1], &[0, 1]]);
        let w = separating_functional(&a, &b).unwrap();
        assert!(dot(&w, &qvec(&[1, 1])).is_zero());
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(separating_functional(&a, &c).is_none());
    }
}
