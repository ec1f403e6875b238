//! LVMB data (E, Γ′): validation, conversion to and from simplicial
//! complexes, and LVM detection.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::cone::{contains, relints_intersect, Cone};
use crate::error::{Error, Result};
use crate::fan::{common_relint_point, is_complete, is_fan_data, is_polytopal, substitute_existence, FanData};
use crate::gale::{gale_dual, vector_from_affine, PointConfiguration, VectorConfiguration};
use crate::rational::fmt_rat;
use crate::{IndexSet, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LvmbDatum {
    m: usize,
    k: usize,
    e: BTreeSet<IndexSet>,
    points: PointConfiguration,
}

impl LvmbDatum {
    pub fn new(e: BTreeSet<IndexSet>, points: PointConfiguration) -> Result<Self> {
        let m = points.len();
        let k = points.dim() + 1;
        if e.is_empty() {
            return Err(Error::Shape("E is empty".into()));
        }
        let full = IndexSet::full(m);
        if let Some(j) = e.iter().find(|j| j.len() != k || !j.is_subset(full)) {
            return Err(Error::Shape(format!("{j} is not a {k}-subset of [{m}]")));
        }
        Ok(LvmbDatum { m, k, e, points })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn e(&self) -> &BTreeSet<IndexSet> {
        &self.e
    }

    pub fn points(&self) -> &PointConfiguration {
        &self.points
    }

    fn homogenized(&self) -> VectorConfiguration {
        vector_from_affine(&self.points)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LvmbReport {
    pub minimal_gen: bool,
    pub imbrication: bool,
    pub substitute_existence: bool,
}

impl LvmbReport {
    pub fn all(&self) -> bool {
        self.minimal_gen && self.imbrication && self.substitute_existence
    }
}

pub fn validate_lvmb(d: &LvmbDatum) -> LvmbReport {
    let g = d.homogenized();
    let minimal_gen = d.e.iter().all(|&j| g.rank_of(j) == d.k);
    let cones: Vec<Cone> = d.e.iter().map(|&j| Cone::of(&g, j)).collect();
    let imbrication =
        (0..cones.len()).all(|x| (x + 1..cones.len()).all(|y| relints_intersect(&cones[x], &cones[y]).is_some()));
    LvmbReport { minimal_gen, imbrication, substitute_existence: substitute_existence(&d.e, d.m) }
}

/// K with facets Ĵ for J ∈ E.
pub fn complex_from_e(e: &BTreeSet<IndexSet>, m: usize) -> Result<SimplicialComplex> {
    let facets: Vec<IndexSet> = e.iter().map(|j| j.complement(m)).collect();
    SimplicialComplex::from_facets(m, &facets)
}

/// Complements of the facets of a pure complex.
pub fn e_from_complex(k: &SimplicialComplex) -> Result<BTreeSet<IndexSet>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(k.facets().iter().map(|f| f.complement(k.m())).collect())
}

/// Elements lying in every J ∈ E.
pub fn indispensable(e: &BTreeSet<IndexSet>, m: usize) -> IndexSet {
    e.iter().fold(IndexSet::full(m), |acc, j| acc.intersection(*j))
}

/// The fan data Gale dual to the datum.
pub fn fan_data(d: &LvmbDatum) -> Result<FanData> {
    let g = d.homogenized();
    FanData::simplicial(complex_from_e(&d.e, d.m)?, gale_dual(&g))?.with_gamma(g)
}

/// Decides the datum both directly and as a complete fan; the answers must agree.
pub fn lvmb_fan_crosscheck(d: &LvmbDatum) -> Result<bool> {
    let lvmb = validate_lvmb(d).all();
    let fd = fan_data(d)?;
    let complete_fan = match is_fan_data(&fd) {
        Err(Error::DependentSimplex(_)) => false,
        Err(e) => return Err(e),
        Ok(v) => v.is_fan() && is_complete(&fd)?,
    };
    if lvmb != complete_fan {
        return Err(Error::GaleMismatch(format!("LVMB conditions {lvmb}, complete fan {complete_fan}")));
    }
    Ok(lvmb)
}

/// {J : |J| = k, Γ′_J affinely independent, p ∈ conv Γ′_J}.
pub fn e_of_point(d: &LvmbDatum, p: &[Rat]) -> BTreeSet<IndexSet> {
    let g = d.homogenized();
    let mut target = p.to_vec();
    target.push(Rat::from_integer(1.into()));
    IndexSet::k_subsets(d.m, d.k)
        .into_iter()
        .filter(|&j| g.rank_of(j) == d.k && contains(&Cone::of(&g, j), &target))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LvmVerdict {
    pub lvm: bool,
    /// A point p with E = E(p), when one exists.
    pub center: Option<Vec<Rat>>,
    /// Whether E = E(0) for the points as given.
    pub origin_lvm: bool,
}

/// A common interior point of every conv Γ′_J, J ∈ E, in affine coordinates.
fn common_interior_point(d: &LvmbDatum) -> Option<Vec<Rat>> {
    let g = d.homogenized();
    let hats: Vec<IndexSet> = d.e.iter().map(|j| j.complement(d.m)).collect();
    let delta = common_relint_point(&g, &hats)?;
    let last = delta[d.k - 1].clone();
    debug_assert!(!last.is_zero());
    Some(delta[..d.k - 1].iter().map(|x| x / &last).collect())
}

/// Whether E arises from a point: decided by polytopality of the fan and by
/// the point configuration directly, which must agree.
pub fn is_lvm(d: &LvmbDatum) -> Result<LvmVerdict> {
    if !validate_lvmb(d).all() {
        return Err(Error::NotLvmb);
    }
    let fd = fan_data(d)?;
    let polytopal = is_polytopal(&fd)?;
    let center = common_interior_point(d).filter(|p| e_of_point(d, p) == d.e);
    if polytopal.is_some() != center.is_some() {
        return Err(Error::GaleMismatch(format!(
            "fan polytopal {}, point configuration {}",
            polytopal.is_some(),
            center.as_ref().map(|p| p.iter().map(fmt_rat).collect::<Vec<_>>().join(",")).unwrap_or_default()
        )));
    }
    let origin = vec![Rat::zero(); d.k - 1];
    Ok(LvmVerdict { lvm: center.is_some(), center, origin_lvm: e_of_point(d, &origin) == d.e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{iset, qvec};

    fn pentagon() -> LvmbDatum {
        let pts = PointConfiguration::new(
            2,
            vec![qvec(&[1, 1]), qvec(&[0, -2]), qvec(&[-1, 1]), qvec(&[2, -1]), qvec(&[-2, -1])],
        )
        .unwrap();
        let e = [iset(&[3, 4, 5]), iset(&[4, 5, 1]), iset(&[5, 1, 2]), iset(&[1, 2, 3]), iset(&[2, 3, 4])].into();
        LvmbDatum::new(e, pts).unwrap()
    }

    #[test]
    fn pentagon_is_lvm() {
        let d = pentagon();
        assert!(validate_lvmb(&d).all());
        assert!(lvmb_fan_crosscheck(&d).unwrap());
        let v = is_lvm(&d).unwrap();
        assert!(v.lvm && v.origin_lvm);
        assert!(indispensable(d.e(), 5).is_empty());
        let k = complex_from_e(d.e(), 5).unwrap();
        assert_eq!(k.facets().len(), 5);
        assert_eq!(&e_from_complex(&k).unwrap(), d.e());
    }

    #[test]
    fn broken_data() {
        let d = pentagon();
        let mut e = d.e().clone();
        e.remove(&iset(&[1, 2, 3]));
        let broken = LvmbDatum::new(e, d.points().clone()).unwrap();
        assert!(!validate_lvmb(&broken).substitute_existence);
        assert!(!lvmb_fan_crosscheck(&broken).unwrap());
        assert_eq!(is_lvm(&broken), Err(Error::NotLvmb));
    }

    #[test]
    fn single_simplex() {
        let pts = PointConfiguration::new(2, vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        let d = LvmbDatum::new([iset(&[1, 2, 3])].into(), pts).unwrap();
        assert!(validate_lvmb(&d).all());
        assert!(lvmb_fan_crosscheck(&d).unwrap());
        assert_eq!(indispensable(d.e(), 3), iset(&[1, 2, 3]));
        let k = complex_from_e(d.e(), 3).unwrap();
        assert_eq!(k.faces(), &[IndexSet::EMPTY]);
        assert_eq!(k.ghost_vertices(), iset(&[1, 2, 3]));
    }

    #[test]
    fn ghost_indispensable() {
        let k = SimplicialComplex::from_one_based(5, &[vec![2, 3], vec![3, 5], vec![2, 5]]).unwrap();
        let e = e_from_complex(&k).unwrap();
        assert_eq!(indispensable(&e, 5), iset(&[1, 4]));
        let mixed = SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(e_from_complex(&mixed), Err(Error::NotPure));
    }
}
