//! Cohomology of a minimal algebra, degree by degree, and its refinement by
//! word length when the differential has homogeneous length.
//!
//! Each group H^i (or H^i_k) is computed from three monomial bases: the
//! degree-i cochains, their images under d, and the boundaries coming from
//! degree i−1. Cocycle representatives are put in a canonical form: first
//! reduced against the boundary space in reduced row echelon form, then
//! brought into reduced row echelon form among themselves. The coordinates of
//! any cocycle are then read off at the pivot columns.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial};
use crate::linalg::{kernel_basis, Echelon, RatMatrix, Rational};
use crate::model::{LengthProfile, SullivanModel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the differential is not of homogeneous length ({0}); use the ungraded computation")]
    NotHomogeneous(LengthProfile),
    #[error("the model has a zero differential and no word-length grading was supplied")]
    UngradedZero,
    #[error("the element is not a cocycle")]
    NotACocycle,
    #[error("the element does not live in degree {degree}{}", .length.map(|k| format!(", length {k}")).unwrap_or_default())]
    WrongSlot { degree: u32, length: Option<u32> },
    #[error("dim H^{degree} = {dimension}, expected a one-dimensional top class")]
    NoFundamentalClass { degree: u32, dimension: usize },
    #[error("the formal dimension formula gives {0}, so the model is not elliptic")]
    NegativeFormalDimension(i64),
    #[error("the zero class has no Toomer invariant")]
    ZeroClass,
    #[error("model is not validated")]
    NotValidated,
}

/// A cochain position: topological degree, and word length when the
/// computation is bigraded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub degree: u32,
    pub length: Option<u32>,
}

impl Slot {
    pub fn ungraded(degree: u32) -> Self {
        Slot { degree, length: None }
    }

    pub fn bigraded(degree: u32, length: u32) -> Self {
        Slot {
            degree,
            length: Some(length),
        }
    }
}

/// An ordered monomial basis with a reverse index.
#[derive(Debug)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; `None` if some term lies outside the basis.
    pub fn vectorize(&self, p: &Polynomial) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, v: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in self.monomials.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// One degree of the cochain complex together with its differential.
#[derive(Debug)]
pub struct CochainSlice {
    pub slot: Slot,
    pub basis: Arc<Basis>,
    pub target: Arc<Basis>,
    /// Columns indexed by `basis`, rows by `target`.
    pub d_matrix: RatMatrix,
}

/// A cohomology class given by a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: u32,
    pub representative: Polynomial,
    pub length: Option<u32>,
}

/// H at one slot, with canonical representatives.
#[derive(Debug)]
pub struct CohomologyGroup {
    slot: Slot,
    basis: Arc<Basis>,
    boundaries: Echelon,
    representatives: Echelon,
    cocycle_dimension: usize,
}

impl CohomologyGroup {
    pub fn slot(&self) -> Slot {
        self.slot
    }

    pub fn dim(&self) -> usize {
        self.representatives.rank()
    }

    pub fn cocycle_dimension(&self) -> usize {
        self.cocycle_dimension
    }

    pub fn boundary_dimension(&self) -> usize {
        self.boundaries.rank()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn representative(&self, j: usize) -> Polynomial {
        self.basis.polynomial(&self.representatives.row(j))
    }

    pub fn representatives(&self) -> Vec<Polynomial> {
        (0..self.dim()).map(|j| self.representative(j)).collect()
    }

    pub fn classes(&self) -> Vec<CohomologyClass> {
        self.representatives()
            .into_iter()
            .map(|representative| CohomologyClass {
                degree: self.slot.degree,
                representative,
                length: self.slot.length,
            })
            .collect()
    }

    /// The cocycle `Σ c_j rep_j`.
    pub fn class_polynomial(&self, coordinates: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (j, c) in coordinates.iter().enumerate() {
            p.add_scaled(c, &self.representative(j));
        }
        p
    }

    /// Coordinates of the class of the cocycle `p` in the representative basis.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>, CohomologyError> {
        let v = self.basis.vectorize(p).ok_or(CohomologyError::WrongSlot {
            degree: self.slot.degree,
            length: self.slot.length,
        })?;
        let mut reduced = self.boundaries.reduce(&v);
        let coords: Vec<Rational> = self
            .representatives
            .pivots()
            .iter()
            .map(|&p| reduced[p].clone())
            .collect();
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.representatives.row(j);
            for (r, x) in reduced.iter_mut().zip(&row) {
                *r -= c * x;
            }
        }
        if reduced.iter().any(|x| !x.is_zero()) {
            return Err(CohomologyError::NotACocycle);
        }
        Ok(coords)
    }

    /// Whether `p` (assumed to live in this slot) is a coboundary.
    pub fn is_coboundary(&self, p: &Polynomial) -> bool {
        self.basis
            .vectorize(p)
            .is_some_and(|v| self.boundaries.contains(&v))
    }
}

/// Outcome of the ellipticity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Ellipticity {
    /// H vanishes in the window above the formula's formal dimension, the top
    /// class is one-dimensional and the duality pairing is nondegenerate.
    /// This is a heuristic certificate: only finitely many degrees are checked.
    Certified {
        formal_dimension: u32,
        window: u32,
        heuristic: bool,
    },
    /// Definitely not elliptic; the witness says why.
    Refuted { witness: EllipticityWitness },
    /// The checks that ran passed, but they do not amount to a certificate.
    Inconclusive { reason: String },
}

impl Ellipticity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Ellipticity::Certified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EllipticityWitness {
    NegativeFormalDimension { value: i64, nonzero_degree: u32 },
    NonzeroAboveTop { degree: u32, dimension: usize },
    TopDimension { degree: u32, dimension: usize },
    DegeneratePairing { degree: u32 },
}

/// Betti numbers in degrees `0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub betti: Vec<usize>,
    /// Largest degree with nonzero cohomology inside the computed range.
    pub top_degree: u32,
    pub total: usize,
}

impl CohomologyTable {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// The matrix of `H^i × H^{N−i} → H^N ≅ ℚ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    pub degree: u32,
    pub matrix: RatMatrix,
    pub nondegenerate: bool,
}

/// Dimensions of H^i_k and the extremal degrees per word length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedTable {
    /// `h[i][k] = dim H^i_k` for `0 ≤ i ≤ N`.
    pub h: Vec<Vec<usize>>,
    pub formal_dimension: u32,
    /// Largest word length with nonzero cohomology.
    pub e: u32,
    /// `n_k` = smallest degree with `H^i_k ≠ 0` (`None` if the strand vanishes).
    pub n: Vec<Option<u32>>,
    /// `N_k` = largest such degree.
    pub big_n: Vec<Option<u32>>,
}

impl BigradedTable {
    /// `Σ_i h[i][k]`.
    pub fn length_dimension(&self, k: u32) -> usize {
        self.h.iter().map(|row| row.get(k as usize).copied().unwrap_or(0)).sum()
    }

    pub fn degree_dimension(&self, i: u32) -> usize {
        self.h.get(i as usize).map_or(0, |row| row.iter().sum())
    }
}

/// Cohomology computations for one model, with per-slot memoization.
///
/// The memo tables are write-once per key: racing computations of the same
/// slot produce identical values and the first stored one wins.
pub struct CohomologyEngine {
    model: SullivanModel,
    grading: Option<u32>,
    bases: Mutex<HashMap<Slot, Arc<Basis>>>,
    groups: Mutex<HashMap<Slot, Arc<CohomologyGroup>>>,
}

impl CohomologyEngine {
    /// An engine for a validated model. Bigraded queries are available when
    /// the differential has homogeneous length (or is zero, graded as l = 2).
    pub fn new(model: SullivanModel) -> Self {
        let grading = match model.length_profile() {
            LengthProfile::Homogeneous(l) => Some(l),
            LengthProfile::Zero => Some(2),
            LengthProfile::BoundedBelow(_) => None,
        };
        CohomologyEngine {
            model,
            grading,
            bases: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
        }
    }

    /// An engine using word length with the given homogeneous length `l`.
    pub fn with_grading(model: SullivanModel, l: u32) -> Result<Self, CohomologyError> {
        let profile = model.length_profile();
        if !profile.admits_homogeneous(l) {
            return Err(CohomologyError::NotHomogeneous(profile));
        }
        let mut engine = Self::new(model);
        engine.grading = Some(l);
        Ok(engine)
    }

    pub fn model(&self) -> &SullivanModel {
        &self.model
    }

    /// The homogeneous length used for bigraded queries.
    pub fn grading(&self) -> Option<u32> {
        self.grading
    }

    fn require_grading(&self) -> Result<u32, CohomologyError> {
        self.grading
            .ok_or(CohomologyError::NotHomogeneous(self.model.length_profile()))
    }

    pub fn basis(&self, slot: Slot) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().unwrap().get(&slot) {
            return Arc::clone(b);
        }
        let algebra = self.model.algebra();
        let monomials = match slot.length {
            None => algebra.monomial_basis(slot.degree, None),
            Some(k) => algebra.monomial_basis_of_length(slot.degree, k),
        };
        let basis = Arc::new(Basis::new(monomials));
        Arc::clone(self.bases.lock().unwrap().entry(slot).or_insert(basis))
    }

    /// Where d sends a slot.
    fn target_slot(&self, slot: Slot) -> Slot {
        let l = self.grading.unwrap_or(2);
        Slot {
            degree: slot.degree + 1,
            length: slot.length.map(|k| k + l - 1),
        }
    }

    /// The slot whose image under d lands in `slot`, if any.
    fn source_slot(&self, slot: Slot) -> Option<Slot> {
        let l = self.grading.unwrap_or(2);
        let degree = slot.degree.checked_sub(1)?;
        match slot.length {
            None => Some(Slot::ungraded(degree)),
            Some(k) => k.checked_sub(l - 1).map(|k| Slot::bigraded(degree, k)),
        }
    }

    /// d on one slot as a matrix.
    pub fn cochain_slice(&self, slot: Slot) -> CochainSlice {
        let basis = self.basis(slot);
        let target = self.basis(self.target_slot(slot));
        let mut triplets = Vec::new();
        for (col, m) in basis.monomials().iter().enumerate() {
            let dm = self.model.d(&Polynomial::term(m.clone(), Rational::one()));
            for (tm, c) in dm.terms() {
                let row = target
                    .position(tm)
                    .expect("d maps a slot into its target slot");
                triplets.push((row, col, c.clone()));
            }
        }
        let d_matrix = RatMatrix::from_triplets(target.len(), basis.len(), triplets);
        CochainSlice {
            slot,
            basis,
            target,
            d_matrix,
        }
    }

    fn check_slot(&self, slot: Slot) -> Result<(), CohomologyError> {
        if !self.model.is_validated() {
            return Err(CohomologyError::NotValidated);
        }
        if slot.length.is_some() {
            self.require_grading()?;
        }
        Ok(())
    }

    /// H at a slot.
    pub fn group(&self, slot: Slot) -> Result<Arc<CohomologyGroup>, CohomologyError> {
        self.check_slot(slot)?;
        if let Some(g) = self.groups.lock().unwrap().get(&slot) {
            return Ok(Arc::clone(g));
        }
        let group = Arc::new(self.compute_group(slot));
        Ok(Arc::clone(self.groups.lock().unwrap().entry(slot).or_insert(group)))
    }

    fn compute_group(&self, slot: Slot) -> CohomologyGroup {
        let slice = self.cochain_slice(slot);
        let width = slice.basis.len();
        let cocycles = kernel_basis(&slice.d_matrix);
        let boundary_vectors: Vec<Vec<Rational>> = match self.source_slot(slot) {
            Some(src) => {
                let incoming = self.cochain_slice(src);
                debug_assert_eq!(incoming.target.len(), width);
                (0..incoming.d_matrix.cols())
                    .map(|c| incoming.d_matrix.column(c))
                    .collect()
            }
            None => Vec::new(),
        };
        let boundaries = Echelon::from_vectors(width, &boundary_vectors);
        let reduced: Vec<Vec<Rational>> = cocycles.iter().map(|z| boundaries.reduce(z)).collect();
        let representatives = Echelon::from_vectors(width, &reduced);
        CohomologyGroup {
            slot,
            basis: slice.basis,
            boundaries,
            representatives,
            cocycle_dimension: cocycles.len(),
        }
    }

    /// H^i with its class basis.
    pub fn cohomology(&self, degree: u32) -> Result<Arc<CohomologyGroup>, CohomologyError> {
        self.group(Slot::ungraded(degree))
    }

    /// H^i_k, the classes represented by cocycles of word length k.
    pub fn bigraded_cohomology(&self, degree: u32, length: u32) -> Result<Arc<CohomologyGroup>, CohomologyError> {
        self.require_grading()?;
        self.group(Slot::bigraded(degree, length))
    }

    pub fn betti(&self, degree: u32) -> Result<usize, CohomologyError> {
        Ok(self.cohomology(degree)?.dim())
    }

    pub fn table(&self, max_degree: u32) -> Result<CohomologyTable, CohomologyError> {
        let betti = (0..=max_degree)
            .map(|i| self.betti(i))
            .collect::<Result<Vec<_>, _>>()?;
        let top_degree = betti.iter().rposition(|&b| b > 0).unwrap_or(0) as u32;
        let total = betti.iter().sum();
        Ok(CohomologyTable {
            betti,
            top_degree,
            total,
        })
    }

    /// `Σ_odd |v| − Σ_even (|v| − 1)`.
    pub fn formal_dimension_formula(&self) -> i64 {
        self.model.formal_dimension_formula()
    }

    fn formal_dimension(&self) -> Result<u32, CohomologyError> {
        let n = self.formal_dimension_formula();
        u32::try_from(n).map_err(|_| CohomologyError::NegativeFormalDimension(n))
    }

    /// The vanishing-window ellipticity check. `window` defaults to the
    /// formal dimension (at least 2).
    pub fn certify_elliptic(&self, window: Option<u32>) -> Result<Ellipticity, CohomologyError> {
        let formula = self.formal_dimension_formula();
        let base = formula.max(0) as u32;
        let window = window.unwrap_or_else(|| base.max(2));
        if formula < 0 {
            // H^0 = ℚ already sits above a negative formal dimension.
            return Ok(Ellipticity::Refuted {
                witness: EllipticityWitness::NegativeFormalDimension {
                    value: formula,
                    nonzero_degree: 0,
                },
            });
        }
        let top = base;
        for i in top + 1..=top + window {
            let dim = self.betti(i)?;
            if dim > 0 {
                return Ok(Ellipticity::Refuted {
                    witness: EllipticityWitness::NonzeroAboveTop { degree: i, dimension: dim },
                });
            }
        }
        let top_dim = self.betti(top)?;
        if top_dim != 1 {
            return Ok(Ellipticity::Refuted {
                witness: EllipticityWitness::TopDimension {
                    degree: top,
                    dimension: top_dim,
                },
            });
        }
        for i in 0..=top {
            if !self.pd_pairing_unchecked(top, i)?.nondegenerate {
                return Ok(Ellipticity::Refuted {
                    witness: EllipticityWitness::DegeneratePairing { degree: i },
                });
            }
        }
        if window == 0 {
            return Ok(Ellipticity::Inconclusive {
                reason: "empty vanishing window; only duality was checked".into(),
            });
        }
        Ok(Ellipticity::Certified {
            formal_dimension: top,
            window,
            heuristic: true,
        })
    }

    /// The generator of H^N, normalized so that its first nonzero
    /// coefficient (in basis order) is 1.
    pub fn fundamental_class(&self) -> Result<CohomologyClass, CohomologyError> {
        let top = self.formal_dimension()?;
        let group = self.cohomology(top)?;
        if group.dim() != 1 {
            return Err(CohomologyError::NoFundamentalClass {
                degree: top,
                dimension: group.dim(),
            });
        }
        Ok(CohomologyClass {
            degree: top,
            representative: group.representative(0),
            length: None,
        })
    }

    /// Pairing `H^i × H^{N−i} → H^N`, read off through the fundamental class.
    pub fn pd_pairing(&self, degree: u32) -> Result<Pairing, CohomologyError> {
        let top = self.formal_dimension()?;
        self.pd_pairing_unchecked(top, degree)
    }

    fn pd_pairing_unchecked(&self, top: u32, degree: u32) -> Result<Pairing, CohomologyError> {
        let Some(dual) = top.checked_sub(degree) else {
            return Ok(Pairing {
                degree,
                matrix: RatMatrix::zeros(0, 0),
                nondegenerate: true,
            });
        };
        let left = self.cohomology(degree)?;
        let right = self.cohomology(dual)?;
        let top_group = self.cohomology(top)?;
        if top_group.dim() != 1 {
            return Err(CohomologyError::NoFundamentalClass {
                degree: top,
                dimension: top_group.dim(),
            });
        }
        let mut rows = Vec::with_capacity(left.dim());
        for a in left.representatives() {
            let mut row = Vec::with_capacity(right.dim());
            for b in right.representatives() {
                let product = self.model.multiply(&a, &b);
                let coords = top_group.coordinates(&product)?;
                row.push(coords[0].clone());
            }
            rows.push(row);
        }
        let matrix = RatMatrix::from_rows(right.dim(), &rows);
        let nondegenerate = left.dim() == right.dim() && crate::linalg::rank(&matrix) == left.dim();
        Ok(Pairing {
            degree,
            matrix,
            nondegenerate,
        })
    }

    /// The full grid of H^i_k for `0 ≤ i ≤ N`.
    pub fn bigraded_profile(&self) -> Result<BigradedTable, CohomologyError> {
        self.require_grading()?;
        let top = self.formal_dimension()?;
        let min_degree = self.model.min_degree().unwrap_or(1).max(1);
        let max_length = top / min_degree;
        let mut h = Vec::with_capacity(top as usize + 1);
        for i in 0..=top {
            let row = (0..=max_length)
                .map(|k| self.bigraded_cohomology(i, k).map(|g| g.dim()))
                .collect::<Result<Vec<_>, _>>()?;
            h.push(row);
        }
        let e = (0..=max_length)
            .rev()
            .find(|&k| h.iter().any(|row| row[k as usize] > 0))
            .unwrap_or(0);
        let mut n = Vec::new();
        let mut big_n = Vec::new();
        for k in 0..=e as usize {
            let degrees: Vec<u32> = (0..=top).filter(|&i| h[i as usize][k] > 0).collect();
            n.push(degrees.first().copied());
            big_n.push(degrees.last().copied());
        }
        Ok(BigradedTable {
            h,
            formal_dimension: top,
            e,
            n,
            big_n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_model;

    fn engine(text: &str) -> CohomologyEngine {
        CohomologyEngine::new(parse_model(text).unwrap())
    }

    #[test]
    fn odd_sphere() {
        let e = engine("gen u 3");
        let h3 = e.cohomology(3).unwrap();
        assert_eq!(h3.dim(), 1);
        assert_eq!(h3.representative(0), e.model().gen(0));
    }

    #[test]
    fn cp2_betti() {
        let e = engine("gen x 2\ngen y 5\nd y = x^3");
        assert_eq!(e.table(8).unwrap().betti, vec![1, 0, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn even_sphere_bigraded() {
        let e = engine("gen x 2\ngen y 3\nd y = x^2");
        let h21 = e.bigraded_cohomology(2, 1).unwrap();
        assert_eq!(h21.dim(), 1);
        assert_eq!(h21.representative(0), e.model().gen(0));
        for i in 0..8 {
            assert_eq!(e.bigraded_cohomology(i, 2).unwrap().dim(), 0);
        }
    }

    #[test]
    fn bigraded_refuses_mixed_models() {
        let e = engine("gen x 2\ngen y1 3\ngen y2 5\nd y1 = x^2\nd y2 = x^3");
        assert!(matches!(e.bigraded_cohomology(2, 1), Err(CohomologyError::NotHomogeneous(_))));
    }

    #[test]
    fn certification() {
        assert!(engine("gen u 3").certify_elliptic(None).unwrap().is_certified());
        let poly = engine("gen x 2").certify_elliptic(None).unwrap();
        assert!(matches!(poly, Ellipticity::Refuted { .. }));
        // Λ(x:2, u:3) with d = 0: formula gives 2, but x^k survives forever.
        let wide = engine("gen x 2\ngen u 3").certify_elliptic(None).unwrap();
        assert!(matches!(
            wide,
            Ellipticity::Refuted {
                witness: EllipticityWitness::NonzeroAboveTop { degree: 3, .. }
            }
        ));
    }

    #[test]
    fn fundamental_classes() {
        let s = engine("gen u 5");
        assert_eq!(s.fundamental_class().unwrap().representative, s.model().gen(0));
        let cp2 = engine("gen x 2\ngen y 5\nd y = x^3");
        let mu = cp2.fundamental_class().unwrap();
        assert_eq!(mu.degree, 4);
        assert_eq!(mu.representative, cp2.model().algebra().power(&cp2.model().gen(0), 2));
        let h = engine("option non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = a*b");
        let mu = h.fundamental_class().unwrap();
        let abc = h.model().multiply(&h.model().multiply(&h.model().gen(0), &h.model().gen(1)), &h.model().gen(2));
        assert_eq!(mu.representative, abc);
    }

    #[test]
    fn pairings() {
        let s2 = engine("gen x 2\ngen y 3\nd y = x^2");
        let p0 = s2.pd_pairing(0).unwrap();
        assert_eq!(p0.matrix, RatMatrix::identity(1));
        assert!(s2.pd_pairing(2).unwrap().nondegenerate);
    }

    #[test]
    fn coordinates_reject_non_cocycles() {
        let e = engine("gen x 2\ngen y 3\nd y = x^2");
        let h3 = e.cohomology(3).unwrap();
        assert_eq!(h3.coordinates(&e.model().gen(1)), Err(CohomologyError::NotACocycle));
        let h2 = e.cohomology(2).unwrap();
        assert!(matches!(h2.coordinates(&e.model().gen(1)), Err(CohomologyError::WrongSlot { .. })));
    }

    #[test]
    fn d_squared_on_slices() {
        let e = engine("gen x1 2\ngen x2 2\ngen y1 3\ngen y2 3\ngen y3 3\nd y1 = x1^2\nd y2 = x1*x2\nd y3 = x2^2");
        for i in 0..12 {
            let a = e.cochain_slice(Slot::ungraded(i));
            let b = e.cochain_slice(Slot::ungraded(i + 1));
            assert!(b.d_matrix.mul(&a.d_matrix).unwrap().is_zero());
        }
    }
}
