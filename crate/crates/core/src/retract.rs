//! Floating-point retraction of points of U(K) onto the real and complex
//! moment-angle complexes along orbits of the exponential action.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fan::{is_complete, FanData};
use crate::gale::VectorConfiguration;
use crate::{FMat, IndexSet, QMat, Rat, Scalar};

/// Coordinates whose modulus is at most this are exact zeros.
pub const ZERO_TOL: f64 = 1e-12;
/// Slack accepted on located cone coefficients.
pub const LOCATE_TOL: f64 = 1e-12;

/// A scalar with a modulus that can be rescaled keeping its sign or phase.
pub trait Coordinate: Copy + std::fmt::Debug {
    fn modulus(&self) -> f64;
    /// The value with the same sign or phase and modulus `r`.
    fn with_modulus(&self, r: f64) -> Self;
    fn zero() -> Self;
}

impl Coordinate for f64 {
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn with_modulus(&self, r: f64) -> Self {
        r.copysign(*self)
    }
    fn zero() -> Self {
        0.0
    }
}

impl Coordinate for Complex64 {
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn with_modulus(&self, r: f64) -> Self {
        self * (r / self.norm())
    }
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// ℓ(x) = Σ a_i log|x_i|.
pub fn ell<C: Coordinate>(a: &VectorConfiguration, x: &[C]) -> Result<Vec<f64>> {
    if x.len() != a.len() {
        return Err(Error::Shape(format!("point has {} coordinates, expected {}", x.len(), a.len())));
    }
    if let Some(i) = x.iter().position(|c| c.modulus() <= ZERO_TOL) {
        return Err(Error::ZeroCoordinate(i + 1));
    }
    Ok(partial_ell(&float_columns(a), x, IndexSet::EMPTY))
}

fn float_columns(a: &VectorConfiguration) -> Vec<Vec<f64>> {
    a.columns().iter().map(|c| c.iter().map(|r| r.to_f64_lossy()).collect()).collect()
}

/// Σ over j ∉ `zeros` of a_j log|x_j|.
fn partial_ell<C: Coordinate>(cols: &[Vec<f64>], x: &[C], zeros: IndexSet) -> Vec<f64> {
    let n = cols.first().map_or(0, Vec::len);
    let mut out = vec![0.0; n];
    for (j, (col, xj)) in cols.iter().zip(x).enumerate() {
        if zeros.contains(j) {
            continue;
        }
        let l = xj.modulus().ln();
        for (o, a) in out.iter_mut().zip(col) {
            *o += a * l;
        }
    }
    out
}

/// A retracted point: coordinates, zero set, and the face σ with
/// |x_i| = 1 off σ and |x_i| ≤ 1 on σ.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentAnglePoint<C> {
    pub coords: Vec<C>,
    pub zero_set: IndexSet,
    pub cone: IndexSet,
}

/// Retraction onto R_K or Z_K for a complete simplicial fan.
#[derive(Clone, Debug)]
pub struct Retractor {
    complex: SimplicialComplex,
    a: VectorConfiguration,
    cols: Vec<Vec<f64>>,
    facets: Vec<IndexSet>,
}

impl Retractor {
    pub fn new(fd: &FanData) -> Result<Self> {
        let complex = fd.complex().ok_or_else(|| Error::Shape("retraction needs a simplicial fan".into()))?.clone();
        if !is_complete(fd)? {
            return Err(Error::NotComplete);
        }
        let facets = complex.facets().to_vec();
        Ok(Retractor { complex, a: fd.a().clone(), cols: float_columns(fd.a()), facets })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Coefficients c with A_σ c = target, σ listed in increasing order.
    fn solve_float(&self, sigma: IndexSet, target: &[f64]) -> Option<Vec<f64>> {
        let cols: Vec<Vec<f64>> = sigma.iter().map(|i| self.cols[i].clone()).collect();
        FMat::from_columns(target.len(), &cols).solve(target)
    }

    fn solve_exact(&self, sigma: IndexSet, target: &[Rat]) -> Option<Vec<Rat>> {
        QMat::from_columns(target.len(), &self.a.select(sigma)).solve(target)
    }

    /// A maximal σ ⊇ I0 with target ∈ cone A_σ modulo span A_I0, and its coefficients.
    fn locate(&self, i0: IndexSet, target: &[f64]) -> Result<(IndexSet, Vec<f64>)> {
        let candidates: Vec<IndexSet> = self.facets.iter().copied().filter(|f| i0.is_subset(*f)).collect();
        let free = |sigma: IndexSet| sigma.iter().enumerate().filter(move |(_, i)| !i0.contains(*i)).map(|(p, _)| p);
        for &sigma in &candidates {
            if let Some(c) = self.solve_float(sigma, target) {
                if free(sigma).all(|p| c[p] >= -LOCATE_TOL) {
                    return Ok((sigma, c));
                }
            }
        }
        // Rounding pushed the point off every cone: redo the sign test exactly.
        let exact: Vec<Rat> = target
            .iter()
            .map(|&t| BigRational::from_float(t).ok_or(Error::LocationAmbiguous))
            .collect::<Result<_>>()?;
        for &sigma in &candidates {
            if let Some(c) = self.solve_exact(sigma, &exact) {
                if free(sigma).all(|p| !c[p].is_negative()) {
                    return Ok((sigma, c.iter().map(|r| r.to_f64_lossy()).collect()));
                }
            }
        }
        Err(Error::LocationAmbiguous)
    }

    /// The unique point of R_K (real) or Z_K (complex) on the orbit of x.
    pub fn retract<C: Coordinate>(&self, x: &[C]) -> Result<MomentAnglePoint<C>> {
        let m = self.complex.m();
        if x.len() != m {
            return Err(Error::Shape(format!("point has {} coordinates, expected {m}", x.len())));
        }
        let zero_set = IndexSet::from_indices((0..m).filter(|&i| x[i].modulus() <= ZERO_TOL));
        if !self.complex.contains(zero_set) {
            return Err(Error::PointNotInUk(zero_set.to_string()));
        }
        let target: Vec<f64> = partial_ell(&self.cols, x, zero_set).iter().map(|v| -v).collect();
        let (sigma, c) = self.locate(zero_set, &target)?;
        let mut coords = Vec::with_capacity(m);
        let mut pos = sigma.iter().zip(c.iter());
        let mut next = pos.next();
        for (i, xi) in x.iter().enumerate() {
            let mut log_mod = 0.0;
            if let Some((j, cj)) = next {
                if j == i {
                    log_mod = -cj.max(0.0);
                    next = pos.next();
                }
            }
            coords.push(if zero_set.contains(i) { C::zero() } else { xi.with_modulus(log_mod.exp()) });
        }
        Ok(MomentAnglePoint { coords, zero_set, cone: sigma })
    }
}

/// Whether the point satisfies the R_K / Z_K pattern up to `tol`.
pub fn in_moment_angle_complex<C: Coordinate>(k: &SimplicialComplex, x: &[C], tol: f64) -> bool {
    let below = IndexSet::from_indices((0..x.len()).filter(|&i| x[i].modulus() < 1.0 - tol));
    k.contains(below) && x.iter().all(|c| c.modulus() <= 1.0 + tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat;

    fn square() -> FanData {
        let a = VectorConfiguration::from_matrix(&qmat(&[&[1, 0, -1, -1], &[0, 1, 0, -1]])).unwrap();
        let k = SimplicialComplex::from_one_based(4, &[vec![3, 4], vec![4, 1], vec![1, 2], vec![2, 3]]).unwrap();
        FanData::simplicial(k, a).unwrap()
    }

    #[test]
    fn ell_values() {
        let fd = square();
        assert_eq!(ell(fd.a(), &[1.0, 1.0, 1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        let l = ell(fd.a(), &[std::f64::consts::E, 1.0, 1.0, 1.0]).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-15 && l[1].abs() < 1e-15);
        assert_eq!(ell(fd.a(), &[1.0, 0.0, 1.0, 1.0]), Err(Error::ZeroCoordinate(2)));
    }

    #[test]
    fn fixed_points_and_patterns() {
        let r = Retractor::new(&square()).unwrap();
        let p = r.retract(&[1.0, -1.0, 1.0, 1.0]).unwrap();
        assert_eq!(p.coords, vec![1.0, -1.0, 1.0, 1.0]);
        let p = r.retract(&[2.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(in_moment_angle_complex(r.complex(), &p.coords, 1e-12));
        assert!(p.coords.iter().all(|c| *c > 0.0));
        let again = r.retract(&p.coords).unwrap();
        for (a, b) in again.coords.iter().zip(&p.coords) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coordinates() {
        let r = Retractor::new(&square()).unwrap();
        let p = r.retract(&[2.0, 0.5, 0.0, -3.0]).unwrap();
        assert_eq!(p.zero_set, crate::iset(&[3]));
        assert!(in_moment_angle_complex(r.complex(), &p.coords, 1e-12));
        assert!(p.coords[3] < 0.0);
        assert!(matches!(r.retract(&[0.0, 1.0, 0.0, 1.0]), Err(Error::PointNotInUk(_))));
    }

    #[test]
    fn complex_phases() {
        let r = Retractor::new(&square()).unwrap();
        let z = [Complex64::from_polar(3.0, 0.4), Complex64::from_polar(0.2, -1.0), Complex64::from_polar(1.5, 2.0), Complex64::from_polar(1.0, 0.0)];
        let p = r.retract(&z).unwrap();
        assert!(in_moment_angle_complex(r.complex(), &p.coords, 1e-12));
        for (a, b) in p.coords.iter().zip(&z) {
            assert!((a.arg() - b.arg()).abs() < 1e-12);
        }
    }
}
