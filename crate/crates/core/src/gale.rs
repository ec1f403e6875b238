//! Vector and point configurations and their linear and affine Gale transforms.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{positive_combination, LinearProgram, Relation};
use crate::rational::dot;
use crate::{IndexSet, QMat, Rat};

/// m vectors spanning a `dim`-dimensional rational space. Repeated and zero
/// columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfiguration {
    dim: usize,
    columns: Vec<Vec<Rat>>,
    label: String,
}

impl VectorConfiguration {
    pub fn new(dim: usize, columns: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::Shape(format!("column of length {} in dimension {dim}", c.len())));
        }
        let cfg = VectorConfiguration { dim, columns, label: String::new() };
        let r = cfg.matrix().rank();
        if r != dim {
            return Err(Error::NotSpanning(format!("rank {r} < dimension {dim}")));
        }
        Ok(cfg)
    }

    /// Columns of a `dim × m` matrix.
    pub fn from_matrix(m: &QMat) -> Result<Self> {
        Self::new(m.nrows(), m.columns())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors m.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, i: usize) -> &[Rat] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vec<Rat>] {
        &self.columns
    }

    pub fn matrix(&self) -> QMat {
        QMat::from_columns(self.dim, &self.columns)
    }

    /// The vectors indexed by `s`, in increasing index order.
    pub fn select(&self, s: IndexSet) -> Vec<Vec<Rat>> {
        s.iter().map(|i| self.columns[i].clone()).collect()
    }

    pub fn rank_of(&self, s: IndexSet) -> usize {
        QMat::from_columns(self.dim, &self.select(s)).rank()
    }

    /// Whether the vectors indexed by `s` span the ambient space.
    pub fn spans_with(&self, s: IndexSet) -> bool {
        self.rank_of(s) == self.dim
    }

    pub fn independent(&self, s: IndexSet) -> bool {
        self.rank_of(s) == s.len()
    }

    /// The configuration with one more vector appended.
    pub fn extended(&self, v: Vec<Rat>) -> Result<Self> {
        let mut cols = self.columns.clone();
        cols.push(v);
        Ok(Self::new(self.dim, cols)?.with_label(self.label.clone()))
    }

    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.len())
    }
}

/// The linear Gale transform, canonicalized as the reduced row echelon form
/// of a kernel basis.
pub fn gale_dual(cfg: &VectorConfiguration) -> VectorConfiguration {
    let m = cfg.len();
    let kernel = cfg.matrix().kernel_basis();
    let rows = kernel.transpose().rref().reduced;
    let n = rows.nrows();
    debug_assert_eq!(n, m - cfg.dim());
    VectorConfiguration { dim: n, columns: rows.columns(), label: format!("gale dual of {}", cfg.label) }
}

/// Whether the two configurations are Gale dual to each other.
pub fn is_gale_pair(c1: &VectorConfiguration, c2: &VectorConfiguration) -> bool {
    if c1.len() != c2.len() {
        return false;
    }
    let (m1, m2) = (c1.matrix(), c2.matrix());
    m1.mul(&m2.transpose()).is_zero() && m1.rank() + m2.rank() == c1.len()
}

/// For `a` the A-side configuration: whether `a_I` is independent, and whether
/// the complementary dual vectors span. The two always agree.
pub fn dual_span_check(a: &VectorConfiguration, i: IndexSet) -> (bool, bool) {
    let gamma = gale_dual(a);
    (a.independent(i), gamma.spans_with(i.complement(a.len())))
}

/// Strictly positive coefficients of a linear relation among all vectors.
pub fn has_positive_relation(cfg: &VectorConfiguration) -> Option<Vec<Rat>> {
    positive_combination(cfg.columns(), &vec![Rat::zero(); cfg.dim()])
}

/// A functional taking values ≥ 1 on every vector, if one exists.
pub fn positive_functional(cfg: &VectorConfiguration) -> Option<Vec<Rat>> {
    let k = cfg.dim();
    let mut lp = LinearProgram::<Rat>::new(k);
    for j in 0..k {
        lp.set_free(j);
    }
    for c in cfg.columns() {
        lp.constrain(c.clone(), Relation::Ge, Rat::one());
    }
    lp.feasible_point()
}

/// Positively rescales every vector onto a common affine hyperplane.
/// Returns the rescaled configuration and the scale factors.
pub fn rescale_to_hyperplane(cfg: &VectorConfiguration) -> Option<(VectorConfiguration, Vec<Rat>)> {
    let v = positive_functional(cfg)?;
    let scales: Vec<Rat> = cfg.columns().iter().map(|c| Rat::one() / dot(c, &v)).collect();
    let cols = cfg.columns().iter().zip(&scales).map(|(c, s)| c.iter().map(|x| x * s).collect()).collect();
    let out = VectorConfiguration { dim: cfg.dim(), columns: cols, label: cfg.label.clone() };
    Some((out, scales))
}

/// m points affinely spanning a `dim`-dimensional affine space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Shape(format!("point of length {} in dimension {dim}", p.len())));
        }
        let pc = PointConfiguration { dim, points };
        let h = homogenize(&pc.points);
        if QMat::from_columns(dim + 1, &h).rank() != dim + 1 {
            return Err(Error::NotSpanning("points do not affinely span".into()));
        }
        Ok(pc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }
}

fn homogenize(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .map(|p| {
            let mut c = p.clone();
            c.push(Rat::one());
            c
        })
        .collect()
}

/// Appends a constant coordinate 1 to every point.
pub fn vector_from_affine(pc: &PointConfiguration) -> VectorConfiguration {
    VectorConfiguration { dim: pc.dim + 1, columns: homogenize(&pc.points), label: String::new() }
}

/// Dehomogenizes a configuration lying on an affine hyperplane ⟨·, v₁⟩ = 1.
/// When the last coordinate is already 1 everywhere, the result is the
/// configuration with that coordinate dropped.
pub fn affine_from_vector(cfg: &VectorConfiguration) -> Result<PointConfiguration> {
    let k = cfg.dim();
    if k == 0 {
        return Err(Error::NoCommonHyperplane);
    }
    let ones = vec![Rat::one(); cfg.len()];
    let v1 = cfg.matrix().transpose().solve(&ones).ok_or(Error::NoCommonHyperplane)?;
    let annihilator = QMat::from_rows(std::slice::from_ref(&v1)).kernel_basis();
    let p = (0..k).rev().find(|&i| !v1[i].is_zero()).expect("v1 is nonzero");
    let mut offset = vec![Rat::zero(); k];
    offset[p] = Rat::one() / &v1[p];
    let points = cfg
        .columns()
        .iter()
        .map(|g| {
            let shifted: Vec<Rat> = g.iter().zip(&offset).map(|(a, b)| a - b).collect();
            annihilator.solve(&shifted).expect("shifted vector lies in the annihilator")
        })
        .collect();
    PointConfiguration::new(k - 1, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qmat, qvec};
    use crate::iset;

    fn cfg(rows: &[&[i64]]) -> VectorConfiguration {
        VectorConfiguration::from_matrix(&qmat(rows)).unwrap()
    }

    #[test]
    fn dual_of_trapezoid_gamma() {
        let gamma = cfg(&[&[1, 0, 1, 0], &[1, 1, 0, 1]]);
        let a = gale_dual(&gamma);
        assert_eq!(a.matrix(), qmat(&[&[1, 0, -1, -1], &[0, 1, 0, -1]]));
        assert!(is_gale_pair(&gamma, &a));
    }

    #[test]
    fn dual_of_pentagon_a() {
        let a = cfg(&[&[2, 0, -2, -1, 1], &[1, 4, 1, -3, -3]]);
        let gamma = gale_dual(&a);
        let expected = qmat(&[&[1, 0, -1, 2, -2], &[1, -2, 1, -1, -1], &[1, 1, 1, 1, 1]]);
        assert_eq!(gamma.matrix().rref().reduced, expected.rref().reduced);
    }

    #[test]
    fn dual_of_basis_is_zero_dimensional() {
        let id = VectorConfiguration::from_matrix(&QMat::identity(3)).unwrap();
        let d = gale_dual(&id);
        assert_eq!(d.dim(), 0);
        assert_eq!(d.len(), 3);
        assert!(is_gale_pair(&id, &d));
    }

    #[test]
    fn gale_pair_rejects_self_pair() {
        let g = cfg(&[&[1, 1]]);
        assert!(!is_gale_pair(&g, &g));
    }

    #[test]
    fn span_check_examples() {
        let a = cfg(&[&[1, 0, -1, -1], &[0, 1, 0, -1]]);
        assert_eq!(dual_span_check(&a, iset(&[1, 2])), (true, true));
        assert_eq!(dual_span_check(&a, IndexSet::EMPTY), (true, true));
        assert_eq!(dual_span_check(&a, iset(&[2, 4])), (true, true));
        assert_eq!(dual_span_check(&a, iset(&[1, 3])), (false, false));
    }

    #[test]
    fn positive_relations() {
        let a = cfg(&[&[2, 0, -2, -1, 1], &[1, 4, 1, -3, -3]]);
        let r = has_positive_relation(&a).unwrap();
        assert!(r.iter().all(|x| x > &Rat::zero()));
        assert!(has_positive_relation(&cfg(&[&[1, 0], &[0, 1]])).is_none());
        let a8 = cfg(&[&[1, 0, -1, -1], &[0, 1, 0, -1]]);
        assert!(has_positive_relation(&a8).is_some());
        assert!(positive_functional(&gale_dual(&a8)).is_some());
    }

    #[test]
    fn affine_round_trip() {
        let gamma = cfg(&[&[1, 0, -1, 2, -2], &[1, -2, 1, -1, -1], &[1, 1, 1, 1, 1]]);
        let pts = affine_from_vector(&gamma).unwrap();
        assert_eq!(QMat::from_columns(2, pts.points()), qmat(&[&[1, 0, -1, 2, -2], &[1, -2, 1, -1, -1]]));
        assert_eq!(vector_from_affine(&pts), gamma);
        assert_eq!(affine_from_vector(&cfg(&[&[1, -1]])), Err(Error::NoCommonHyperplane));
        let origin = PointConfiguration::new(0, vec![vec![]]).unwrap();
        assert_eq!(vector_from_affine(&origin).columns(), &[qvec(&[1])]);
    }

    #[test]
    fn rescale_puts_vectors_on_hyperplane() {
        let g = cfg(&[&[2, 0, 1], &[0, 3, 1]]);
        let (scaled, s) = rescale_to_hyperplane(&g).unwrap();
        assert!(s.iter().all(|x| x > &Rat::zero()));
        assert!(affine_from_vector(&scaled).is_ok());
    }
}
