//! Polyhedra {w : ⟨a_i, w⟩ + b_i ≥ 0}, their normal fans, and GKZ chambers.

use num_traits::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::cone::{contains, h_representation, relint_contains, Cone, HRep, FACET_DIM_LIMIT};
use crate::error::{Error, Result};
use crate::fan::{FanData, SetFamily};
use crate::gale::{gale_dual, has_positive_relation, is_gale_pair, VectorConfiguration};
use crate::lp::{LinearProgram, Relation};
use crate::rational::dot;
use crate::{IndexSet, Rat};

/// Largest ground set for subset enumeration.
pub const SUBSET_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    a: VectorConfiguration,
    b: Vec<Rat>,
}

impl Polyhedron {
    pub fn new(a: VectorConfiguration, b: Vec<Rat>) -> Result<Self> {
        if b.len() != a.len() {
            return Err(Error::Shape(format!("{} offsets for {} inequalities", b.len(), a.len())));
        }
        let p = Polyhedron { a, b };
        if p.feasibility_program().feasible_point().is_none() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(p)
    }

    pub fn a(&self) -> &VectorConfiguration {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    fn feasibility_program(&self) -> LinearProgram<Rat> {
        let n = self.a.dim();
        let mut lp = LinearProgram::new(n);
        for j in 0..n {
            lp.set_free(j);
        }
        for (a, b) in self.a.columns().iter().zip(&self.b) {
            lp.constrain(a.clone(), Relation::Ge, -b.clone());
        }
        lp
    }

    /// y_i = ⟨a_i, w⟩ + b_i.
    pub fn slacks(&self, w: &[Rat]) -> Vec<Rat> {
        self.a.columns().iter().zip(&self.b).map(|(a, b)| dot(a, w) + b).collect()
    }

    pub fn contains(&self, w: &[Rat]) -> bool {
        self.slacks(w).iter().all(|y| y >= &Rat::zero())
    }

    /// A point strictly inside every inequality with nonzero normal.
    pub fn interior_point(&self) -> Option<Vec<Rat>> {
        let n = self.a.dim();
        let mut lp = LinearProgram::<Rat>::new(n + 1);
        for j in 0..=n {
            lp.set_free(j);
        }
        for (a, b) in self.a.columns().iter().zip(&self.b) {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            let mut row = a.clone();
            row.push(-Rat::one());
            lp.constrain(row, Relation::Ge, -b.clone());
        }
        lp.constrain_sparse(&[(n, Rat::one())], Relation::Le, Rat::one());
        let mut obj = vec![Rat::zero(); n + 1];
        obj[n] = Rat::one();
        let (x, t) = lp.maximize(&obj).optimal()?;
        (t > Rat::zero()).then(|| x[..n].to_vec())
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.interior_point().is_some()
    }

    /// An optimal point for the objective, if bounded in that direction.
    pub fn optimum(&self, objective: &[Rat]) -> Option<Vec<Rat>> {
        self.feasibility_program().maximize(objective).optimal().map(|(x, _)| x)
    }

    /// Bounded iff the normals positively span.
    pub fn is_bounded(&self) -> bool {
        has_positive_relation(&self.a).is_some()
    }

    /// δ = Σ b_i γ_i for the given Gale dual.
    pub fn delta(&self, gamma: &VectorConfiguration) -> Vec<Rat> {
        gamma.matrix().mul_vec(&self.b)
    }
}

/// Index sets I with δ ∈ relint cone Γ_Î, over all subsets of [m].
fn delta_family(gamma: &VectorConfiguration, delta: &[Rat]) -> Vec<IndexSet> {
    let m = gamma.len();
    IndexSet::full(m)
        .subsets()
        .filter(|i| relint_contains(&Cone::of(gamma, i.complement(m)), delta))
        .collect()
}

/// The normal fan of a full-dimensional polyhedron and whether it is simplicial.
pub fn normal_fan(p: &Polyhedron) -> Result<(FanData, bool)> {
    let m = p.a.len();
    if m > SUBSET_LIMIT {
        return Err(Error::SizeLimit(m, SUBSET_LIMIT));
    }
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDim("polyhedron has empty interior".into()));
    }
    let gamma = gale_dual(&p.a);
    let delta = p.delta(&gamma);
    let mut family = delta_family(&gamma, &delta);
    family.sort();
    let generic = family.iter().all(|&i| p.a.independent(i));
    let fd = if generic {
        let k = SimplicialComplex::from_facets(m, &family)?;
        debug_assert_eq!(k.faces(), &family[..]);
        FanData::simplicial(k, p.a.clone())?
    } else {
        FanData::general(SetFamily::new(m, &family)?, p.a.clone())?
    };
    Ok((fd, generic))
}

/// K_P for a generic polyhedron; redundant inequalities are ghost vertices.
pub fn dual_complex(p: &Polyhedron) -> Result<SimplicialComplex> {
    let (fd, generic) = normal_fan(p)?;
    if !generic {
        return Err(Error::NotGeneric);
    }
    Ok(fd.complex().expect("generic normal fans are simplicial").clone())
}

/// The polyhedron with offsets b solving Γ b = δ (free variables zero).
pub(crate) fn check_delta(gamma: &VectorConfiguration, delta: &[Rat]) -> Result<()> {
    if delta.len() != gamma.dim() {
        return Err(Error::Shape(format!("δ has length {}, Γ has dimension {}", delta.len(), gamma.dim())));
    }
    Ok(())
}

pub fn polyhedron_from_delta(gamma: &VectorConfiguration, a: &VectorConfiguration, delta: &[Rat]) -> Result<Polyhedron> {
    check_delta(gamma, delta)?;
    if !is_gale_pair(gamma, a) {
        return Err(Error::GaleMismatch("Γ and A are not Gale dual".into()));
    }
    if !relint_contains(&Cone::of(gamma, gamma.all()), delta) {
        return Err(Error::DeltaNotInterior);
    }
    let b = gamma.matrix().solve(delta).expect("Γ spans");
    Polyhedron::new(a.clone(), b)
}

/// A GKZ chamber as generators plus constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone,
    pub hrep: HRep,
}

/// C(δ): the intersection of cone Γ_S over all S with δ ∈ relint cone Γ_S.
pub fn gkz_chamber(gamma: &VectorConfiguration, delta: &[Rat]) -> Result<Chamber> {
    check_delta(gamma, delta)?;
    let (m, k) = (gamma.len(), gamma.dim());
    if m > SUBSET_LIMIT {
        return Err(Error::SizeLimit(m, SUBSET_LIMIT));
    }
    if k > FACET_DIM_LIMIT {
        return Err(Error::DimLimit(k, FACET_DIM_LIMIT));
    }
    if !contains(&Cone::of(gamma, gamma.all()), delta) {
        return Err(Error::DeltaOutside);
    }
    let sets: Vec<IndexSet> = IndexSet::full(m)
        .subsets()
        .filter(|s| relint_contains(&Cone::of(gamma, *s), delta))
        .collect();
    // Cones only grow with S, so inclusion-minimal members determine the intersection.
    let minimal: Vec<IndexSet> =
        sets.iter().copied().filter(|s| !sets.iter().any(|t| t != s && t.is_subset(*s))).collect();
    let parts = minimal.iter().map(|&s| h_representation(&Cone::of(gamma, s))).collect::<Result<Vec<_>>>()?;
    let hrep = HRep::intersect(&parts, k);
    let cone = hrep.generators()?;
    debug_assert!(relint_contains(&cone, delta));
    Ok(Chamber { cone, hrep })
}

/// Whether δ1 and δ2 lie in the relative interiors of the same cones Γ_S.
pub fn same_chamber(gamma: &VectorConfiguration, d1: &[Rat], d2: &[Rat]) -> Result<bool> {
    check_delta(gamma, d1)?;
    check_delta(gamma, d2)?;
    let m = gamma.len();
    if m > SUBSET_LIMIT {
        return Err(Error::SizeLimit(m, SUBSET_LIMIT));
    }
    Ok(IndexSet::full(m).subsets().all(|s| {
        let c = Cone::of(gamma, s);
        relint_contains(&c, d1) == relint_contains(&c, d2)
    }))
}
