//! Simplicial complexes on a ground set [m], ghost vertices allowed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gale::VectorConfiguration;
use crate::index_set::MAX_GROUND;
use crate::IndexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    faces: Vec<IndexSet>,
    facets: Vec<IndexSet>,
}

impl SimplicialComplex {
    /// The downward closure of the given sets. The empty set is always a face.
    pub fn from_facets(m: usize, generators: &[IndexSet]) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(Error::SizeLimit(m, MAX_GROUND));
        }
        let full = IndexSet::full(m);
        let mut faces = BTreeSet::new();
        faces.insert(IndexSet::EMPTY);
        for g in generators {
            if !g.is_subset(full) {
                return Err(Error::Parse(format!("face {g} is not a subset of [{m}]")));
            }
            if faces.contains(g) {
                continue;
            }
            faces.extend(g.subsets());
        }
        Ok(Self::from_face_set(m, faces))
    }

    /// 1-based facet lists, as in input files.
    pub fn from_one_based(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let sets = facets.iter().map(|f| IndexSet::from_one_based(f, m)).collect::<Result<Vec<_>>>()?;
        Self::from_facets(m, &sets)
    }

    fn from_face_set(m: usize, faces: BTreeSet<IndexSet>) -> Self {
        let faces: Vec<IndexSet> = faces.into_iter().collect();
        let facets = faces
            .iter()
            .copied()
            .filter(|f| (0..m).all(|i| f.contains(i) || !faces.binary_search(&f.insert(i)).is_ok()))
            .collect();
        SimplicialComplex { m, faces, facets }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// All faces, including ∅, ordered by size then members.
    pub fn faces(&self) -> &[IndexSet] {
        &self.faces
    }

    /// Maximal faces.
    pub fn facets(&self) -> &[IndexSet] {
        &self.facets
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        self.faces.binary_search(&s).is_ok()
    }

    pub fn faces_of_size(&self, k: usize) -> impl Iterator<Item = IndexSet> + '_ {
        self.faces.iter().copied().filter(move |f| f.len() == k)
    }

    pub fn vertices(&self) -> IndexSet {
        self.faces_of_size(1).fold(IndexSet::EMPTY, IndexSet::union)
    }

    /// Elements i of [m] with {i} not a face.
    pub fn ghost_vertices(&self) -> IndexSet {
        self.vertices().complement(self.m)
    }

    /// Largest face size minus one; −1 for the complex {∅}.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets.first().map(|f| f.len());
        self.facets.iter().all(|f| Some(f.len()) == d)
    }

    /// Faces I with I ∩ J = ∅ and I ∪ J a face, on the same ground set.
    pub fn link(&self, j: IndexSet) -> SimplicialComplex {
        let faces = self.faces.iter().copied().filter(|f| f.intersection(j).is_empty() && self.contains(f.union(j))).collect();
        Self::from_face_set(self.m, faces)
    }

    /// The same faces on a larger ground set; the new elements are ghosts.
    pub fn with_ground_set(&self, m: usize) -> Result<SimplicialComplex> {
        if m < self.m {
            return Err(Error::Shape(format!("cannot shrink ground set from {} to {m}", self.m)));
        }
        if m > MAX_GROUND {
            return Err(Error::SizeLimit(m, MAX_GROUND));
        }
        Ok(SimplicialComplex { m, faces: self.faces.clone(), facets: self.facets.clone() })
    }

    /// Number of faces of each size 0, 1, 2, ….
    pub fn f_vector(&self) -> Vec<usize> {
        let top = (self.dimension() + 1) as usize;
        (0..=top).map(|k| self.faces_of_size(k).count()).collect()
    }

    pub fn facets_one_based(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_one_based()).collect()
    }
}

/// K(Γ): index sets whose complement spans.
pub fn universal_complex(gamma: &VectorConfiguration) -> SimplicialComplex {
    let (m, k) = (gamma.len(), gamma.dim());
    let tops: Vec<IndexSet> = IndexSet::k_subsets(m, m - k)
        .into_iter()
        .filter(|i| gamma.spans_with(i.complement(m)))
        .collect();
    SimplicialComplex::from_facets(m, &tops).expect("subsets of the ground set")
}

/// Dimension of the stabiliser of a point with zero set `i`: k − rank Γ_Î.
pub fn stabilizer_dim(gamma: &VectorConfiguration, i: IndexSet) -> usize {
    gamma.dim() - gamma.rank_of(i.complement(gamma.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{iset, qmat};

    fn pentagon() -> SimplicialComplex {
        SimplicialComplex::from_one_based(5, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]).unwrap()
    }

    #[test]
    fn closure_and_facets() {
        let k = pentagon();
        assert_eq!(k.f_vector(), vec![1, 5, 5]);
        assert_eq!(k.facets().len(), 5);
        assert!(k.is_pure());
        assert_eq!(k.dimension(), 1);
        assert!(k.ghost_vertices().is_empty());
        let with_ghost = SimplicialComplex::from_one_based(4, &[vec![1, 2], vec![2, 4], vec![4, 1]]).unwrap();
        assert_eq!(with_ghost.ghost_vertices(), iset(&[3]));
        let empty = SimplicialComplex::from_facets(3, &[]).unwrap();
        assert_eq!(empty.faces(), &[IndexSet::EMPTY]);
        assert_eq!(empty.dimension(), -1);
        assert!(SimplicialComplex::from_one_based(3, &[vec![4]]).is_err());
    }

    #[test]
    fn links() {
        let k = pentagon();
        let l = k.link(iset(&[1]));
        assert_eq!(l.facets(), &[iset(&[2]), iset(&[5])]);
        assert_eq!(k.link(IndexSet::EMPTY), k);
    }

    #[test]
    fn universal_complexes() {
        let g = crate::gale::VectorConfiguration::from_matrix(&qmat(&[&[1, 1]])).unwrap();
        let k = universal_complex(&g);
        assert_eq!(k.faces(), &[IndexSet::EMPTY, iset(&[1]), iset(&[2])]);
        let id = crate::gale::VectorConfiguration::from_matrix(&crate::QMat::identity(2)).unwrap();
        assert_eq!(universal_complex(&id).faces(), &[IndexSet::EMPTY]);
    }

    #[test]
    fn stabilizer_dimensions() {
        let g = crate::gale::VectorConfiguration::from_matrix(&qmat(&[&[1, 2]])).unwrap();
        assert_eq!(stabilizer_dim(&g, IndexSet::EMPTY), 0);
        assert_eq!(stabilizer_dim(&g, iset(&[2])), 0);
        assert_eq!(stabilizer_dim(&g, iset(&[1, 2])), 1);
    }
}
