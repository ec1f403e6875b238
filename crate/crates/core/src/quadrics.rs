//! Intersections of quadrics γ₁x₁² + ⋯ + γ_m x_m² = δ and the complexes they determine.

use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::cone::{contains, Cone};
use crate::error::{Error, Result};
use crate::gale::{vector_from_affine, PointConfiguration, VectorConfiguration};
use crate::polyhedron::Polyhedron;
use crate::rational::fmt_rat;
use crate::{IndexSet, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Real,
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem {
    pub gamma: VectorConfiguration,
    pub delta: Vec<Rat>,
    pub nondegenerate: bool,
    pub flavor: Flavor,
}

impl QuadricSystem {
    /// One rendered equation per coordinate of δ.
    pub fn equations(&self) -> Vec<String> {
        let g = self.gamma.matrix();
        (0..g.nrows()).map(|r| render_equation(g.row(r), &self.delta[r], self.flavor)).collect()
    }

    /// Coefficient rows followed by the right-hand side.
    pub fn augmented_rows(&self) -> Vec<Vec<Rat>> {
        let g = self.gamma.matrix();
        (0..g.nrows())
            .map(|r| {
                let mut row = g.row(r).to_vec();
                row.push(self.delta[r].clone());
                row
            })
            .collect()
    }
}

fn render_equation(coeffs: &[Rat], rhs: &Rat, flavor: Flavor) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = match flavor {
            Flavor::Real => format!("x{}^2", i + 1),
            Flavor::Hermitian => format!("|z{}|^2", i + 1),
        };
        let mag = c.abs();
        let coef = if mag.is_one() {
            String::new()
        } else if mag.is_integer() {
            fmt_rat(&mag)
        } else {
            format!("({})", fmt_rat(&mag))
        };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&coef);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} = {}", fmt_rat(rhs))
}

/// A (k−1)-subset whose cone contains δ, if any.
fn small_subset_containing(gamma: &VectorConfiguration, delta: &[Rat]) -> Option<IndexSet> {
    let k = gamma.dim();
    if k == 0 {
        return None;
    }
    IndexSet::k_subsets(gamma.len(), k - 1).into_iter().find(|s| contains(&Cone::of(gamma, *s), delta))
}

/// The system for (Γ, δ) with its nondegeneracy certificate: δ ∈ cone Γ and
/// no cone on fewer than k vectors contains δ.
pub fn build_quadrics(gamma: &VectorConfiguration, delta: &[Rat], flavor: Flavor) -> Result<QuadricSystem> {
    if delta.len() != gamma.dim() {
        return Err(Error::Shape(format!("δ has length {}, Γ has dimension {}", delta.len(), gamma.dim())));
    }
    let nondegenerate =
        contains(&Cone::of(gamma, gamma.all()), delta) && small_subset_containing(gamma, delta).is_none();
    Ok(QuadricSystem { gamma: gamma.clone(), delta: delta.to_vec(), nondegenerate, flavor })
}

/// K = {I : δ ∈ cone Γ_Î} for a nondegenerate system.
pub fn complex_from_delta(gamma: &VectorConfiguration, delta: &[Rat]) -> Result<SimplicialComplex> {
    let sys = build_quadrics(gamma, delta, Flavor::Real)?;
    if !sys.nondegenerate {
        return Err(Error::Degenerate);
    }
    let (m, k) = (gamma.len(), gamma.dim());
    let tops: Vec<IndexSet> = IndexSet::k_subsets(m, m - k)
        .into_iter()
        .filter(|i| contains(&Cone::of(gamma, i.complement(m)), delta))
        .collect();
    SimplicialComplex::from_facets(m, &tops)
}

/// The link system Σγ′_i x_i² = 0, Σx_i² = 1 of a point configuration.
pub fn link_system(points: &PointConfiguration, flavor: Flavor) -> Result<QuadricSystem> {
    let gamma = vector_from_affine(points);
    let k = gamma.dim();
    let mut delta = vec![Rat::zero(); k];
    delta[k - 1] = Rat::one();
    if !contains(&Cone::of(&gamma, gamma.all()), &delta) {
        return Err(Error::SiegelFail);
    }
    if let Some(s) = small_subset_containing(&gamma, &delta) {
        return Err(Error::WeakHypFail(format!("the origin lies in the hull of points {s}")));
    }
    build_quadrics(&gamma, &delta, flavor)
}

/// Checks that y = (⟨a_i, w⟩ + b_i) is nonnegative with Γ·y = δ at every sample.
pub fn slice_check(p: &Polyhedron, gamma: &VectorConfiguration, delta: &[Rat], samples: &[Vec<Rat>]) -> bool {
    let g = gamma.matrix();
    samples.iter().all(|w| {
        let y = p.slacks(w);
        y.iter().all(|v| !v.is_negative()) && g.mul_vec(&y) == delta
    })
}

/// Deterministic sample points of P: an interior point, optima along the
/// coordinate directions when bounded, and their midpoints with the interior point.
pub fn sample_points(p: &Polyhedron) -> Vec<Vec<Rat>> {
    let n = p.a().dim();
    let Some(centre) = p.interior_point().or_else(|| p.optimum(&vec![Rat::zero(); n])) else {
        return vec![];
    };
    let mut out = vec![centre.clone()];
    for j in 0..n {
        for sign in [1, -1] {
            let mut obj = vec![Rat::zero(); n];
            obj[j] = Rat::from_integer(sign.into());
            if let Some(x) = p.optimum(&obj) {
                let half = Rat::new(1.into(), 2.into());
                out.push(x.iter().zip(&centre).map(|(a, b)| (a + b) * &half).collect());
                out.push(x);
            }
        }
    }
    out
}

/// Euler characteristic of the real moment-angle complex: Σ_{I∈K} (−1)^{|I|} 2^{m−|I|}.
pub fn euler_characteristic_rk(k: &SimplicialComplex) -> i128 {
    let m = k.m() as u32;
    k.faces()
        .iter()
        .map(|f| {
            let s = f.len() as u32;
            let v = 1i128 << (m - s);
            if s.is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{iset, qmat, qvec};

    fn pentagon_gamma() -> VectorConfiguration {
        VectorConfiguration::from_matrix(&qmat(&[&[1, 0, -1, 2, -2], &[1, -2, 1, -1, -1], &[1, 1, 1, 1, 1]])).unwrap()
    }

    #[test]
    fn rendering() {
        let g = VectorConfiguration::from_matrix(&qmat(&[&[1, 0, 1, 0], &[1, 1, 0, 1]])).unwrap();
        let sys = build_quadrics(&g, &qvec(&[1, 2]), Flavor::Real).unwrap();
        assert!(sys.nondegenerate);
        assert_eq!(sys.equations(), vec!["x1^2 + x3^2 = 1", "x1^2 + x2^2 + x4^2 = 2"]);
        let h = build_quadrics(&g, &qvec(&[1, 2]), Flavor::Hermitian).unwrap();
        assert_eq!(h.equations()[0], "|z1|^2 + |z3|^2 = 1");
        let f = VectorConfiguration::from_matrix(&crate::QMat::from_rows(&[vec![crate::qf(-1, 2), crate::q(3)]])).unwrap();
        assert_eq!(build_quadrics(&f, &qvec(&[0]), Flavor::Real).unwrap().equations(), vec!["-(1/2)x1^2 + 3x2^2 = 0"]);
    }

    #[test]
    fn pentagon_link() {
        let pts = crate::gale::affine_from_vector(&pentagon_gamma()).unwrap();
        let sys = link_system(&pts, Flavor::Real).unwrap();
        assert_eq!(
            sys.equations(),
            vec![
                "x1^2 - x3^2 + 2x4^2 - 2x5^2 = 0",
                "x1^2 - 2x2^2 + x3^2 - x4^2 - x5^2 = 0",
                "x1^2 + x2^2 + x3^2 + x4^2 + x5^2 = 1"
            ]
        );
        let k = complex_from_delta(&pentagon_gamma(), &qvec(&[0, 0, 1])).unwrap();
        assert_eq!(k.facets_one_based(), vec![vec![1, 2], vec![1, 5], vec![2, 3], vec![3, 4], vec![4, 5]]);
        assert_eq!(euler_characteristic_rk(&k), -8);
        let shifted = complex_from_delta(&pentagon_gamma(), &qvec(&[1, 0, 1])).unwrap();
        assert_eq!(shifted.facets(), &[iset(&[2, 3]), iset(&[2, 5]), iset(&[3, 5])]);
        assert_eq!(shifted.ghost_vertices(), iset(&[1, 4]));
        assert_eq!(euler_characteristic_rk(&shifted), 8);
    }

    #[test]
    fn link_failures() {
        let one_sided = PointConfiguration::new(1, vec![qvec(&[1]), qvec(&[2])]).unwrap();
        assert_eq!(link_system(&one_sided, Flavor::Real), Err(Error::SiegelFail));
        let through_origin = PointConfiguration::new(1, vec![qvec(&[0]), qvec(&[1])]).unwrap();
        assert!(matches!(link_system(&through_origin, Flavor::Real), Err(Error::WeakHypFail(_))));
        let pair = PointConfiguration::new(1, vec![qvec(&[1]), qvec(&[-1])]).unwrap();
        assert_eq!(link_system(&pair, Flavor::Real).unwrap().equations(), vec!["x1^2 - x2^2 = 0", "x1^2 + x2^2 = 1"]);
    }

    #[test]
    fn degenerate_delta() {
        let g = pentagon_gamma();
        let gamma1 = g.column(0).to_vec();
        assert!(!build_quadrics(&g, &gamma1, Flavor::Real).unwrap().nondegenerate);
        assert_eq!(complex_from_delta(&g, &gamma1), Err(Error::Degenerate));
    }

    #[test]
    fn small_euler_characteristics() {
        let k = SimplicialComplex::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(euler_characteristic_rk(&k), 0);
    }

    #[test]
    fn slices() {
        let a = VectorConfiguration::from_matrix(&qmat(&[&[1, 0, -1, -1], &[0, 1, 0, -1]])).unwrap();
        let g = VectorConfiguration::from_matrix(&qmat(&[&[1, 0, 1, 0], &[1, 1, 0, 1]])).unwrap();
        let p = Polyhedron::new(a, qvec(&[0, 0, 1, 2])).unwrap();
        let samples = sample_points(&p);
        assert!(samples.len() > 1);
        assert!(slice_check(&p, &g, &qvec(&[1, 2]), &samples));
        assert!(slice_check(&p, &g, &qvec(&[1, 2]), &[qvec(&[0, 0])]));
        assert!(!slice_check(&p, &g, &qvec(&[1, 3]), &samples));
    }
}
