//! Lattice data: the lattice N spanned by A, primitivity, nonsingularity,
//! stabiliser orders, Cartier divisors, the class group, nef and ample cones.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cone::{h_representation, relint_contains, HRep};
use crate::error::{Error, Result};
use crate::fan::{is_complete, is_polytopal, FanData};
use crate::gale::VectorConfiguration;
use crate::polyhedron::{check_delta, Chamber};
use crate::rational::to_bigints;
use crate::snf::{lattice_index, smith_normal_form};
use crate::{IndexSet, QMat, Rat, ZMat};

/// Largest multiple tried by [`cartier_multiple`] by default.
pub const CARTIER_SEARCH_LIMIT: u32 = 12;

fn to_zmat(m: &QMat) -> Result<ZMat> {
    let rows = m.rows_vec().iter().map(|r| to_bigints(r)).collect::<Result<Vec<_>>>()?;
    Ok(if rows.is_empty() { ZMat::zeros(0, m.ncols()) } else { ZMat::from_rows(&rows) })
}

fn to_qmat(m: &ZMat) -> QMat {
    m.map(|x| Rat::from_integer(x.clone()))
}

/// A with integer entries, a basis of a lattice N containing every a_i, and
/// the coordinates of A in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    config: VectorConfiguration,
    n_basis: ZMat,
    coords: ZMat,
}

impl LatticeData {
    /// N = Z⟨a₁,…,a_m⟩.
    pub fn new(a: &VectorConfiguration) -> Result<Self> {
        let am = to_zmat(&a.matrix())?;
        let n = a.dim();
        let snf = smith_normal_form(&am);
        // A = U⁻¹ S V⁻¹, so the columns of U⁻¹·diag(d) span the same lattice.
        let u_inv = to_zmat(&to_qmat(&snf.u).inverse().expect("unimodular"))?;
        let mut basis = ZMat::zeros(n, n);
        for c in 0..n {
            let d = snf.s.get(c, c);
            for r in 0..n {
                basis.set(r, c, u_inv.get(r, c) * d);
            }
        }
        Self::with_basis(a, basis)
    }

    /// An explicit lattice N given by basis columns; A must lie in it.
    pub fn with_basis(a: &VectorConfiguration, basis: ZMat) -> Result<Self> {
        let n = a.dim();
        if basis.nrows() != n || basis.ncols() != n {
            return Err(Error::Shape(format!("lattice basis must be {n}×{n}")));
        }
        let inv = to_qmat(&basis).inverse().ok_or_else(|| Error::Shape("lattice basis is singular".into()))?;
        to_zmat(&a.matrix())?;
        let coords = to_zmat(&inv.mul(&a.matrix()))
            .map_err(|e| Error::NotIntegral(format!("configuration is not inside the lattice ({e})")))?;
        Ok(LatticeData { config: a.clone(), n_basis: basis, coords })
    }

    pub fn config(&self) -> &VectorConfiguration {
        &self.config
    }

    /// Basis of N as columns.
    pub fn n_basis(&self) -> &ZMat {
        &self.n_basis
    }

    /// A in N-coordinates (n×m).
    pub fn coords(&self) -> &ZMat {
        &self.coords
    }

    fn coord_columns(&self, s: IndexSet) -> ZMat {
        let cols: Vec<Vec<BigInt>> = s.iter().map(|i| self.coords.column(i)).collect();
        ZMat::from_columns(self.coords.nrows(), &cols)
    }

    /// An integer Gale dual: rows form a basis of the integer relations among A.
    pub fn integer_gale_dual(&self) -> ZMat {
        let (n, m) = (self.coords.nrows(), self.coords.ncols());
        let v = smith_normal_form(&self.coords).v;
        let cols: Vec<Vec<BigInt>> = (n..m).map(|c| v.column(c)).collect();
        ZMat::from_columns(m, &cols).transpose()
    }
}

/// Whether {a_i : i ∈ I} extends to a basis of N.
pub fn is_part_of_basis(ld: &LatticeData, i: IndexSet) -> bool {
    if i.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&ld.coord_columns(i));
    snf.rank() == i.len() && snf.divisors().iter().all(|d| d.is_one())
}

/// Whether the integer Gale dual columns off I span the whole dual lattice.
/// Agrees with [`is_part_of_basis`].
pub fn dual_spans_lattice(ld: &LatticeData, i: IndexSet) -> bool {
    let g = ld.integer_gale_dual();
    let hat = i.complement(ld.config.len());
    if g.nrows() == 0 {
        return true;
    }
    let cols: Vec<Vec<BigInt>> = hat.iter().map(|j| g.column(j)).collect();
    let sub = ZMat::from_columns(g.nrows(), &cols);
    lattice_index(&sub).is_some_and(|d| d.is_one())
}

/// Every cone of the fan is generated by part of a basis of N.
pub fn is_nonsingular(fd: &FanData, ld: &LatticeData) -> Result<bool> {
    fd.ensure_fan()?;
    Ok(fd.members().iter().all(|&i| is_part_of_basis(ld, i)))
}

/// Order of the stabiliser at a point with zero set I: the index of the
/// lattice spanned by Γ_Î relative to that spanned by all of Γ.
pub fn stabilizer_order(gamma: &VectorConfiguration, i: IndexSet) -> Result<BigInt> {
    let g = to_zmat(&gamma.matrix())?;
    let hat = i.complement(gamma.len());
    let cols: Vec<Vec<BigInt>> = hat.iter().map(|j| g.column(j)).collect();
    let sub = ZMat::from_columns(g.nrows(), &cols);
    let part = lattice_index(&sub).ok_or(Error::Infinite)?;
    let whole = lattice_index(&g).expect("Γ spans");
    Ok(part / whole)
}

/// Whether Σ b_i D_i is Cartier: on every maximal cone some w ∈ M has
/// ⟨a_i, w⟩ = −b_i for the generators of that cone.
pub fn is_cartier(fd: &FanData, ld: &LatticeData, b: &[BigInt]) -> Result<bool> {
    fd.ensure_fan()?;
    if b.len() != fd.m() {
        return Err(Error::Shape(format!("divisor of length {} on {} rays", b.len(), fd.m())));
    }
    Ok(fd.maximal().iter().all(|&s| {
        let x = ld.coord_columns(s).transpose();
        let c: Vec<BigInt> = s.iter().map(|i| -&b[i]).collect();
        crate::snf::integer_solve(&x, &c).is_some()
    }))
}

/// Smallest j ≤ limit with j·b Cartier.
pub fn cartier_multiple(fd: &FanData, ld: &LatticeData, b: &[BigInt], limit: u32) -> Result<Option<u32>> {
    for j in 1..=limit {
        let jb: Vec<BigInt> = b.iter().map(|x| x * BigInt::from(j)).collect();
        if is_cartier(fd, ld, &jb)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Z^m modulo the image of M: free rank and invariant factors above 1.
pub fn class_group(ld: &LatticeData) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(&ld.coords.transpose());
    let m = ld.coords.ncols();
    let torsion = snf.divisors().into_iter().filter(|d| d.abs() > BigInt::one()).collect();
    (m - snf.rank(), torsion)
}

/// The intersection of cone Γ_Î over maximal I, in the coordinates of `fd.gamma()`.
pub fn nef_cone(fd: &FanData) -> Result<Chamber> {
    if !is_complete(fd)? {
        return Err(Error::NotComplete);
    }
    let k = fd.gamma().dim();
    let parts = fd.maximal().iter().map(|&s| h_representation(&fd.cone_gamma_hat(s))).collect::<Result<Vec<_>>>()?;
    let hrep = HRep::intersect(&parts, k);
    let cone = hrep.generators()?;
    Ok(Chamber { cone, hrep })
}

/// Whether δ lies in relint cone Γ_Î for every member I.
pub fn ample_contains(fd: &FanData, delta: &[Rat]) -> Result<bool> {
    check_delta(fd.gamma(), delta)?;
    if !is_complete(fd)? {
        return Err(Error::NotComplete);
    }
    Ok(fd.members().iter().all(|&s| relint_contains(&fd.cone_gamma_hat(s), delta)))
}

/// A complete fan is projective when some δ is ample; returns that δ.
pub fn projective_witness(fd: &FanData) -> Result<Option<Vec<Rat>>> {
    if !is_complete(fd)? {
        return Err(Error::NotComplete);
    }
    is_polytopal(fd)
}

pub fn is_projective(fd: &FanData) -> Result<bool> {
    Ok(projective_witness(fd)?.is_some())
}

/// Convenience: integer vector from machine integers.
pub fn zvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::fan::SetFamily;
    use crate::{iset, qmat, qvec};

    fn cfg(rows: &[&[i64]]) -> VectorConfiguration {
        VectorConfiguration::from_matrix(&qmat(rows)).unwrap()
    }

    fn square_fan() -> FanData {
        let a = cfg(&[&[1, 0, -1, -1], &[0, 1, 0, -1]]);
        let k = SimplicialComplex::from_one_based(4, &[vec![3, 4], vec![4, 1], vec![1, 2], vec![2, 3]]).unwrap();
        FanData::simplicial(k, a).unwrap()
    }

    fn prism_fan() -> FanData {
        let a = cfg(&[&[1, 0, -1, 1, 0, -1], &[0, 1, -1, 0, 1, -1], &[1, 1, 1, -1, -1, -1]]);
        let gamma = cfg(&[&[1, -1, 0, -1, 1, 0], &[0, 1, -1, 0, -1, 1], &[1, 1, 1, 1, 1, 1]]);
        let maximal = [iset(&[1, 2, 3]), iset(&[4, 5, 6]), iset(&[1, 2, 4]), iset(&[2, 4, 5]), iset(&[1, 3, 4, 6]), iset(&[2, 3, 5, 6])];
        let c = SetFamily::face_closure(&maximal, &a).unwrap();
        FanData::general(c, a).unwrap().with_gamma(gamma).unwrap()
    }

    #[test]
    fn lattice_spans() {
        let ld = LatticeData::new(&cfg(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(crate::snf::determinant(ld.n_basis()).abs(), BigInt::from(4));
        let ld = LatticeData::new(&cfg(&[&[1, 0, -1, -1], &[0, 1, 0, -1]])).unwrap();
        assert_eq!(crate::snf::determinant(ld.n_basis()).abs(), BigInt::one());
        assert!(LatticeData::new(&VectorConfiguration::from_matrix(&crate::QMat::from_rows(&[vec![crate::qf(1, 2)]])).unwrap()).is_err());
    }

    #[test]
    fn basis_parts() {
        let ld = LatticeData::new(&cfg(&[&[2, 0], &[1, 1]])).unwrap();
        assert!(is_part_of_basis(&ld, IndexSet::EMPTY));
        assert!(is_part_of_basis(&ld, iset(&[1])));
        assert!(is_part_of_basis(&ld, iset(&[1, 2])));
        let ld = LatticeData::new(&cfg(&[&[2, -1]])).unwrap();
        assert!(!is_part_of_basis(&ld, iset(&[1])));
        assert!(is_part_of_basis(&ld, iset(&[2])));
        for s in IndexSet::full(2).subsets() {
            assert_eq!(is_part_of_basis(&ld, s), dual_spans_lattice(&ld, s));
        }
    }

    #[test]
    fn nonsingularity_and_stabilisers() {
        let fd = square_fan();
        let ld = LatticeData::new(fd.a()).unwrap();
        assert!(is_nonsingular(&fd, &ld).unwrap());
        let a = cfg(&[&[2, -1]]);
        let k = SimplicialComplex::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        let line = FanData::simplicial(k, a.clone()).unwrap();
        assert!(!is_nonsingular(&line, &LatticeData::new(&a).unwrap()).unwrap());
        let gamma = cfg(&[&[1, 2]]);
        assert_eq!(stabilizer_order(&gamma, IndexSet::EMPTY).unwrap(), BigInt::one());
        assert_eq!(stabilizer_order(&gamma, iset(&[1])).unwrap(), BigInt::from(2));
        assert_eq!(stabilizer_order(&gamma, iset(&[1, 2])), Err(Error::Infinite));
    }

    #[test]
    fn class_groups() {
        let ld = LatticeData::new(&cfg(&[&[1, 0, -1, -1], &[0, 1, 0, -1]])).unwrap();
        assert_eq!(class_group(&ld), (2, vec![]));
        let ld = LatticeData::new(&cfg(&[&[2, -1]])).unwrap();
        assert_eq!(class_group(&ld), (1, vec![]));
        let ld = LatticeData::new(&VectorConfiguration::from_matrix(&crate::QMat::identity(3)).unwrap()).unwrap();
        assert_eq!(class_group(&ld), (0, vec![]));
        let overlattice = LatticeData::with_basis(&cfg(&[&[2, -2]]), ZMat::from_rows(&[vec![BigInt::one()]])).unwrap();
        assert_eq!(class_group(&overlattice), (1, vec![BigInt::from(2)]));
    }

    #[test]
    fn non_simplicial_prism_fan() {
        let fd = prism_fan();
        assert!(fd.ensure_fan().is_ok());
        assert!(is_complete(&fd).unwrap());
        let nef = nef_cone(&fd).unwrap();
        assert_eq!(nef.cone.generators(), &[qvec(&[0, 0, 1])]);
        assert!(!ample_contains(&fd, &qvec(&[0, 0, 2])).unwrap());
        assert!(!is_projective(&fd).unwrap());
        let ld = LatticeData::new(fd.a()).unwrap();
        assert!(!is_cartier(&fd, &ld, &zvec(&[1, 0, 0, 1, 0, 0])).unwrap());
        assert!(!is_cartier(&fd, &ld, &zvec(&[2, 0, 0, 2, 0, 0])).unwrap());
        assert!(is_cartier(&fd, &ld, &zvec(&[3, 0, 0, 3, 0, 0])).unwrap());
        assert_eq!(cartier_multiple(&fd, &ld, &zvec(&[1, 0, 0, 1, 0, 0]), CARTIER_SEARCH_LIMIT).unwrap(), Some(3));
        assert!(is_cartier(&fd, &ld, &zvec(&[0; 6])).unwrap());
    }

    #[test]
    fn square_nef_and_ample() {
        let fd = square_fan().with_gamma(cfg(&[&[1, 0, 1, 0], &[1, 1, 0, 1]])).unwrap();
        let nef = nef_cone(&fd).unwrap();
        let mut gens = nef.cone.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![qvec(&[0, 1]), qvec(&[1, 1])]);
        assert!(ample_contains(&fd, &qvec(&[1, 2])).unwrap());
        assert!(!ample_contains(&fd, &qvec(&[1, 1])).unwrap());
        assert!(is_projective(&fd).unwrap());
    }

    #[test]
    fn incomplete_fans_are_rejected() {
        let a = cfg(&[&[1]]);
        let k = SimplicialComplex::from_one_based(1, &[vec![1]]).unwrap();
        let half = FanData::simplicial(k, a).unwrap();
        assert_eq!(nef_cone(&half), Err(Error::NotComplete));
    }
}
