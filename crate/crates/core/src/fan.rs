//! Fan data {K, A} and {C, A}: validation through both Gale-dual criteria,
//! completeness and polytopality.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::cone::{contains, is_face, is_strongly_convex, relint_contains, relints_intersect, Cone};
use crate::error::{Error, Result};
use crate::gale::{gale_dual, is_gale_pair, VectorConfiguration};
use crate::lp::{LinearProgram, Relation};
use crate::rational::primitive;
use crate::{IndexSet, Rat};

/// An explicit family of index sets; ∅ is always included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    m: usize,
    sets: Vec<IndexSet>,
}

impl SetFamily {
    /// The family exactly as given (plus ∅).
    pub fn new(m: usize, sets: &[IndexSet]) -> Result<Self> {
        let full = IndexSet::full(m);
        let mut all: BTreeSet<IndexSet> = BTreeSet::from([IndexSet::EMPTY]);
        for s in sets {
            if !s.is_subset(full) {
                return Err(Error::Parse(format!("set {s} is not a subset of [{m}]")));
            }
            all.insert(*s);
        }
        Ok(SetFamily { m, sets: all.into_iter().collect() })
    }

    /// The given sets together with every J ⊂ I for which cone A_J is a face of cone A_I.
    pub fn face_closure(maximal: &[IndexSet], a: &VectorConfiguration) -> Result<Self> {
        let mut all = Vec::new();
        for &i in maximal {
            let sup = Cone::of(a, i);
            for j in i.subsets() {
                if is_face(&Cone::of(a, j), &sup) {
                    all.push(saturation(a, i, j));
                }
            }
        }
        Self::new(a.len(), &all)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn maximal(&self) -> Vec<IndexSet> {
        self.sets.iter().copied().filter(|s| !self.sets.iter().any(|t| t != s && s.is_subset(*t))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Collection {
    Simplicial(SimplicialComplex),
    General(SetFamily),
}

/// Why a collection fails to be a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Two members whose cones have overlapping relative interiors.
    Overlap { first: IndexSet, second: IndexSet, witness: Vec<Rat> },
    NotStronglyConvex { set: IndexSet },
    /// `face` spans a face of cone A_`set` but is not a member.
    NotClosed { set: IndexSet, face: IndexSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Fan,
    NotFan(Certificate),
}

impl Verdict {
    pub fn is_fan(&self) -> bool {
        matches!(self, Verdict::Fan)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Unknown,
    Known(Verdict),
}

/// A collection of index sets together with the configuration A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    collection: Collection,
    a: VectorConfiguration,
    gamma: VectorConfiguration,
    validated: Validation,
}

impl FanData {
    pub fn simplicial(k: SimplicialComplex, a: VectorConfiguration) -> Result<Self> {
        if k.m() != a.len() {
            return Err(Error::Shape(format!("complex on {} elements, configuration of {}", k.m(), a.len())));
        }
        let gamma = gale_dual(&a);
        Ok(FanData { collection: Collection::Simplicial(k), a, gamma, validated: Validation::Unknown })
    }

    pub fn general(c: SetFamily, a: VectorConfiguration) -> Result<Self> {
        if c.m() != a.len() {
            return Err(Error::Shape(format!("family on {} elements, configuration of {}", c.m(), a.len())));
        }
        let gamma = gale_dual(&a);
        Ok(FanData { collection: Collection::General(c), a, gamma, validated: Validation::Unknown })
    }

    /// Uses the given Gale dual instead of the canonical one, so that
    /// Γ-side outputs are expressed in its coordinates.
    pub fn with_gamma(mut self, gamma: VectorConfiguration) -> Result<Self> {
        if !is_gale_pair(&self.a, &gamma) {
            return Err(Error::GaleMismatch("supplied Γ is not a Gale dual of A".into()));
        }
        self.gamma = gamma;
        Ok(self)
    }

    /// Runs validation once and records the verdict.
    pub fn validated(mut self) -> Result<Self> {
        let v = is_fan_data(&self)?;
        self.validated = Validation::Known(v);
        Ok(self)
    }

    pub fn validation(&self) -> &Validation {
        &self.validated
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match &self.collection {
            Collection::Simplicial(k) => Some(k),
            Collection::General(_) => None,
        }
    }

    pub fn a(&self) -> &VectorConfiguration {
        &self.a
    }

    pub fn gamma(&self) -> &VectorConfiguration {
        &self.gamma
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// dim W*.
    pub fn n(&self) -> usize {
        self.a.dim()
    }

    /// Every member of the collection.
    pub fn members(&self) -> Vec<IndexSet> {
        match &self.collection {
            Collection::Simplicial(k) => k.faces().to_vec(),
            Collection::General(c) => c.sets().to_vec(),
        }
    }

    pub fn maximal(&self) -> Vec<IndexSet> {
        match &self.collection {
            Collection::Simplicial(k) => k.facets().to_vec(),
            Collection::General(c) => c.maximal(),
        }
    }

    pub fn cone_a(&self, s: IndexSet) -> Cone {
        Cone::of(&self.a, s)
    }

    /// cone Γ_Î.
    pub fn cone_gamma_hat(&self, s: IndexSet) -> Cone {
        Cone::of(&self.gamma, s.complement(self.m()))
    }

    /// Errors with NOT_A_FAN unless the collection is a fan.
    pub fn ensure_fan(&self) -> Result<()> {
        let verdict = match &self.validated {
            Validation::Known(v) => v.clone(),
            Validation::Unknown => is_fan_data(self)?,
        };
        if verdict.is_fan() {
            Ok(())
        } else {
            Err(Error::NotAFan)
        }
    }
}

/// The elements of `s` whose vectors lie in cone A_`j`. For a face this is
/// the index set that represents it inside cone A_`s`.
fn saturation(a: &VectorConfiguration, s: IndexSet, j: IndexSet) -> IndexSet {
    let cone = Cone::of(a, j);
    IndexSet::from_indices(s.iter().filter(|&i| j.contains(i) || contains(&cone, a.column(i))))
}

/// Pairs of distinct members to compare. In a simplicial complex a face and
/// a simplex containing it never overlap on the A side and always meet on the
/// Γ side, so nested pairs are skipped there.
fn member_pairs(members: &[IndexSet], skip_nested: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..members.len() {
        for y in x + 1..members.len() {
            let (s, t) = (members[x], members[y]);
            if !(skip_nested && (s.is_subset(t) || t.is_subset(s))) {
                out.push((x, y));
            }
        }
    }
    out
}

/// First pair of distinct members whose A-cones have overlapping relative interiors.
fn a_side_overlap(fd: &FanData, members: &[IndexSet], pairs: &[(usize, usize)]) -> Option<Certificate> {
    let cones: Vec<Cone> = members.iter().map(|&s| fd.cone_a(s)).collect();
    pairs.iter().find_map(|&(x, y)| {
        relints_intersect(&cones[x], &cones[y]).map(|witness| Certificate::Overlap { first: members[x], second: members[y], witness })
    })
}

/// Whether every pair has overlapping Γ-side relative interiors.
fn gamma_side_overlaps(fd: &FanData, members: &[IndexSet], pairs: &[(usize, usize)]) -> bool {
    let cones: Vec<Cone> = members.iter().map(|&s| fd.cone_gamma_hat(s)).collect();
    pairs.iter().all(|&(x, y)| relints_intersect(&cones[x], &cones[y]).is_some())
}

fn cross_check(fd: &FanData, members: &[IndexSet], pairs: &[(usize, usize)], verdict: Verdict) -> Result<Verdict> {
    let dual = gamma_side_overlaps(fd, members, pairs);
    if dual != verdict.is_fan() {
        return Err(Error::GaleMismatch(format!("A side says fan = {}, Γ side says {}", verdict.is_fan(), dual)));
    }
    Ok(verdict)
}

/// Decides whether the collection is a fan. For the simplicial flavor every
/// face must span a simplicial cone; both Gale-dual criteria are evaluated
/// and must agree.
pub fn is_fan_data(fd: &FanData) -> Result<Verdict> {
    match &fd.collection {
        Collection::Simplicial(k) => {
            if let Some(bad) = k.faces().iter().find(|&&f| !fd.a.independent(f)) {
                return Err(Error::DependentSimplex(bad.to_string()));
            }
            let members = k.faces();
            let pairs = member_pairs(members, true);
            let verdict = match a_side_overlap(fd, members, &pairs) {
                Some(c) => Verdict::NotFan(c),
                None => Verdict::Fan,
            };
            cross_check(fd, members, &pairs, verdict)
        }
        Collection::General(c) => is_fan_data_general_inner(fd, c),
    }
}

/// Decides whether {cone A_I : I ∈ C} is a fan: strong convexity,
/// closure under faces, and pairwise disjoint relative interiors.
pub fn is_fan_data_general(c: &SetFamily, a: &VectorConfiguration) -> Result<Verdict> {
    let fd = FanData::general(c.clone(), a.clone())?;
    is_fan_data_general_inner(&fd, c)
}

fn is_fan_data_general_inner(fd: &FanData, c: &SetFamily) -> Result<Verdict> {
    for &s in c.sets() {
        if !is_strongly_convex(&fd.cone_a(s)) {
            return Ok(Verdict::NotFan(Certificate::NotStronglyConvex { set: s }));
        }
    }
    for &s in c.sets() {
        let sup = fd.cone_a(s);
        for j in s.subsets() {
            if !c.contains(j) && is_face(&fd.cone_a(j), &sup) {
                let face = saturation(&fd.a, s, j);
                if !c.contains(face) {
                    return Ok(Verdict::NotFan(Certificate::NotClosed { set: s, face }));
                }
            }
        }
    }
    let pairs = member_pairs(c.sets(), false);
    let verdict = match a_side_overlap(fd, c.sets(), &pairs) {
        Some(cert) => Verdict::NotFan(cert),
        None => Verdict::Fan,
    };
    cross_check(fd, c.sets(), &pairs, verdict)
}

/// Ridge condition: some n-simplex exists and each (n−1)-simplex lies in exactly two.
fn complete_by_ridges(k: &SimplicialComplex, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let tops: Vec<IndexSet> = k.faces_of_size(n).collect();
    if tops.is_empty() {
        return false;
    }
    k.faces_of_size(n - 1).all(|r| tops.iter().filter(|t| r.is_subset(**t)).count() == 2)
}

/// Substitute existence on E = {Ĵ complements of n-simplices}.
fn complete_by_substitution(k: &SimplicialComplex, n: usize) -> bool {
    let m = k.m();
    let e: BTreeSet<IndexSet> = k.faces_of_size(n).map(|t| t.complement(m)).collect();
    !e.is_empty() && substitute_existence(&e, m)
}

/// For every J ∈ E and i ∈ [m] some j ∈ J has (J ∖ {j}) ∪ {i} ∈ E.
pub fn substitute_existence(e: &BTreeSet<IndexSet>, m: usize) -> bool {
    e.iter().all(|&j| (0..m).all(|i| j.contains(i) || j.iter().any(|x| e.contains(&j.remove(x).insert(i)))))
}

/// Whether the fan covers W*. Both combinatorial criteria are evaluated for
/// simplicial fans and must agree.
pub fn is_complete(fd: &FanData) -> Result<bool> {
    fd.ensure_fan()?;
    let n = fd.n();
    match &fd.collection {
        Collection::Simplicial(k) => {
            let a = complete_by_ridges(k, n);
            let b = complete_by_substitution(k, n);
            if a != b {
                return Err(Error::GaleMismatch(format!("ridge criterion {a}, substitution criterion {b}")));
            }
            Ok(a)
        }
        Collection::General(c) => Ok(complete_general(fd, c)),
    }
}

/// Ridge condition with cone dimensions in place of simplex sizes.
fn complete_general(fd: &FanData, c: &SetFamily) -> bool {
    let n = fd.n();
    if n == 0 {
        return true;
    }
    let dims: Vec<(IndexSet, usize)> = c.sets().iter().map(|&s| (s, fd.a.rank_of(s))).collect();
    let tops: Vec<IndexSet> = dims.iter().filter(|(_, d)| *d == n).map(|(s, _)| *s).collect();
    if tops.is_empty() {
        return false;
    }
    dims.iter()
        .filter(|(_, d)| *d + 1 == n)
        .all(|(w, _)| tops.iter().filter(|t| w.is_subset(**t)).count() == 2)
}

/// Jointly solves δ ∈ relint cone Γ_Î for every I in `sets`; returns a primitive δ.
pub fn common_relint_point(gamma: &VectorConfiguration, sets: &[IndexSet]) -> Option<Vec<Rat>> {
    let (k, m) = (gamma.dim(), gamma.len());
    let hats: Vec<IndexSet> = sets.iter().map(|s| s.complement(m)).collect();
    let nmu: usize = hats.iter().map(|h| h.len()).sum();
    // Variables: δ (free, k), μ per (I, j ∈ Î), shared s.
    let s_var = k + nmu;
    let mut lp = LinearProgram::<Rat>::new(s_var + 1);
    for j in 0..k {
        lp.set_free(j);
    }
    let mut offset = k;
    for h in &hats {
        for row in 0..k {
            let mut terms = vec![(row, -Rat::one())];
            let mut total = Rat::zero();
            for (t, j) in h.iter().enumerate() {
                let g = &gamma.column(j)[row];
                if !g.is_zero() {
                    terms.push((offset + t, g.clone()));
                    total += g;
                }
            }
            terms.push((s_var, total));
            lp.constrain_sparse(&terms, Relation::Eq, Rat::zero());
        }
        offset += h.len();
    }
    lp.constrain_sparse(&[(s_var, Rat::one())], Relation::Le, Rat::one());
    let mut obj = vec![Rat::zero(); s_var + 1];
    obj[s_var] = Rat::one();
    let (x, s) = lp.maximize(&obj).optimal()?;
    if s <= Rat::zero() {
        return None;
    }
    Some(primitive(&x[..k]))
}

/// A δ in the relative interior of every cone Γ_Î, I in the fan, if one exists.
/// δ is expressed in the coordinates of `fd.gamma()`.
pub fn is_polytopal(fd: &FanData) -> Result<Option<Vec<Rat>>> {
    fd.ensure_fan()?;
    let members = fd.members();
    let holds = |d: &Vec<Rat>| members.iter().all(|&s| relint_contains(&fd.cone_gamma_hat(s), d));
    // Maximal members usually suffice; confirm on every member and fall back otherwise.
    if let Some(d) = common_relint_point(&fd.gamma, &fd.maximal()) {
        if holds(&d) {
            return Ok(Some(d));
        }
    }
    let d = common_relint_point(&fd.gamma, &members);
    debug_assert!(d.as_ref().is_none_or(holds));
    Ok(d)
}

/// The same faces on [m+1] with an extra vector; m+1 is a ghost vertex.
pub fn add_ghost_vertex(fd: &FanData, a_new: Vec<Rat>) -> Result<FanData> {
    let k = fd.complex().ok_or_else(|| Error::Shape("ghost vertices need the simplicial flavor".into()))?;
    let k = k.with_ground_set(fd.m() + 1)?;
    FanData::simplicial(k, fd.a.extended(a_new)?)
}

/// Whether m − n is even.
pub fn parity_check_for_complex_structure(fd: &FanData) -> bool {
    (fd.m() - fd.n()).is_multiple_of(2)
}
