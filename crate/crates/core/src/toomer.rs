//! The rational Toomer invariant, computed from the word-length filtration.
//!
//! `p_n : ΛV → ΛV/Λ^{>n}V` is the projection that forgets monomials of word
//! length above `n`. The Toomer invariant of a nonzero class is the least `n`
//! with `p_n(x) ≠ 0` in the cohomology of the quotient, and that of the
//! algebra is the least `n` for which `p_n` is injective on cohomology.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Polynomial;
use crate::cohomology::{CohomologyClass, CohomologyEngine, CohomologyError, Ellipticity, EllipticityWitness, Slot};
use crate::linalg::{rank, solve_membership, Echelon, RatMatrix, Rational};
use crate::parse::print_model;
use crate::random::{random_elliptic_model, RandomError, RandomParams};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ToomerError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("the model is not elliptic: {0:?}")]
    NotElliptic(EllipticityWitness),
    #[error("ellipticity could not be certified: {0}")]
    Uncertified(String),
}

/// The quotient complex `ΛV/Λ^{>n}V` in one degree.
pub struct QuotientComplex<'a> {
    engine: &'a CohomologyEngine,
    cutoff: u32,
}

impl<'a> QuotientComplex<'a> {
    pub fn new(engine: &'a CohomologyEngine, cutoff: u32) -> Self {
        QuotientComplex { engine, cutoff }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Columns `p_n(d m)` for the degree-`(i−1)` monomials `m` of length ≤ n,
    /// written in the full degree-`i` monomial basis.
    pub fn boundary_vectors(&self, degree: u32) -> Vec<Vec<Rational>> {
        let Some(below) = degree.checked_sub(1) else {
            return Vec::new();
        };
        let target = self.engine.basis(Slot::ungraded(degree));
        let source = self.engine.basis(Slot::ungraded(below));
        let model = self.engine.model();
        source
            .monomials()
            .iter()
            .filter(|m| m.word_length() <= self.cutoff)
            .map(|m| {
                let image = model
                    .d(&Polynomial::term(m.clone(), num_traits::One::one()))
                    .truncate_length(self.cutoff);
                target.vectorize(&image).expect("d preserves degree bookkeeping")
            })
            .collect()
    }

    pub fn boundary_matrix(&self, degree: u32) -> RatMatrix {
        let rows = self.engine.basis(Slot::ungraded(degree)).len();
        RatMatrix::from_columns(rows, &self.boundary_vectors(degree))
    }

    /// Whether `p_n(z)` is a boundary in the quotient, by solving for a preimage.
    pub fn kills(&self, z: &Polynomial, degree: u32) -> bool {
        let target = self.engine.basis(Slot::ungraded(degree));
        let v = target
            .vectorize(&z.truncate_length(self.cutoff))
            .expect("class lives in its degree");
        let m = self.boundary_matrix(degree);
        solve_membership(&m, &v)
            .expect("dimensions agree")
            .is_some()
    }
}

/// `dim ker(p_n)` on `H^i` for `n = 0, 1, …` until it reaches zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeFiltration {
    pub degree: u32,
    pub betti: usize,
    /// `kernel_dims[n] = dim ker(p_n : H^i → H^i(ΛV/Λ^{>n}V))`, ending in 0.
    pub kernel_dims: Vec<usize>,
}

impl DegreeFiltration {
    /// Least `n` with `p_n` injective in this degree.
    pub fn injective_from(&self) -> u32 {
        self.kernel_dims.iter().position(|&d| d == 0).unwrap_or(self.kernel_dims.len()) as u32
    }

    /// Number of classes (in a suitable basis) with Toomer invariant `k`.
    pub fn count(&self, k: u32) -> usize {
        let before = match k {
            0 => self.betti,
            _ => self.kernel_dims.get(k as usize - 1).copied().unwrap_or(0),
        };
        before - self.kernel_dims.get(k as usize).copied().unwrap_or(0)
    }
}

/// The kernel filtration of `p_n` on `H^i`.
pub fn degree_filtration(engine: &CohomologyEngine, degree: u32) -> Result<DegreeFiltration, ToomerError> {
    let group = engine.cohomology(degree)?;
    let betti = group.dim();
    let representatives: Vec<Vec<Rational>> = (0..betti)
        .map(|j| {
            group
                .basis()
                .vectorize(&group.representative(j))
                .expect("representative lives in its slot")
        })
        .collect();
    let width = group.basis().len();
    let max_length = group
        .basis()
        .monomials()
        .iter()
        .map(|m| m.word_length())
        .max()
        .unwrap_or(0);
    let mut kernel_dims = Vec::new();
    let mut kernel = betti;
    let mut n = 0;
    while kernel > 0 {
        assert!(n <= max_length, "p_n is the identity once n reaches every word length");
        let quotient = QuotientComplex::new(engine, n);
        let boundaries = Echelon::from_vectors(width, &quotient.boundary_vectors(degree));
        let reduced: Vec<Vec<Rational>> = representatives
            .iter()
            .map(|z| {
                let truncated: Vec<Rational> = z
                    .iter()
                    .zip(group.basis().monomials())
                    .map(|(c, m)| if m.word_length() <= n { c.clone() } else { Rational::zero() })
                    .collect();
                boundaries.reduce(&truncated)
            })
            .collect();
        kernel = betti - rank(&RatMatrix::from_rows(width, &reduced));
        kernel_dims.push(kernel);
        n += 1;
    }
    if kernel_dims.is_empty() {
        kernel_dims.push(0);
    }
    Ok(DegreeFiltration {
        degree,
        betti,
        kernel_dims,
    })
}

/// Toomer invariant of a single class, by testing `p_n(z)` against the
/// boundaries of each quotient until it survives.
pub fn toomer_of_class(engine: &CohomologyEngine, class: &CohomologyClass) -> Result<u32, ToomerError> {
    let group = engine.cohomology(class.degree)?;
    let coords = group.coordinates(&class.representative)?;
    if coords.iter().all(|c| c.is_zero()) {
        return Err(CohomologyError::ZeroClass.into());
    }
    let mut n = 0;
    loop {
        if !QuotientComplex::new(engine, n).kills(&class.representative, class.degree) {
            return Ok(n);
        }
        n += 1;
    }
}

/// Run the vanishing-window certificate and turn its verdict into an error
/// unless it certifies.
pub fn require_elliptic(engine: &CohomologyEngine) -> Result<u32, ToomerError> {
    match engine.certify_elliptic(None)? {
        Ellipticity::Certified { formal_dimension, .. } => Ok(formal_dimension),
        Ellipticity::Refuted { witness } => Err(ToomerError::NotElliptic(witness)),
        Ellipticity::Inconclusive { reason } => Err(ToomerError::Uncertified(reason)),
    }
}

/// `e₀(ΛV)`: the least `n` with `p_n` injective on all of `H`.
pub fn toomer_of_algebra(engine: &CohomologyEngine) -> Result<u32, ToomerError> {
    let top = require_elliptic(engine)?;
    let mut e0 = 0;
    for i in 0..=top {
        e0 = e0.max(degree_filtration(engine, i)?.injective_from());
    }
    Ok(e0)
}

/// `e₀` of the fundamental class.
pub fn toomer_via_fundamental_class(engine: &CohomologyEngine) -> Result<u32, ToomerError> {
    require_elliptic(engine)?;
    let mu = engine.fundamental_class()?;
    toomer_of_class(engine, &mu)
}

/// The Toomer invariant of one basis class of `H^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    pub degree: u32,
    pub index: usize,
    pub representative: String,
    pub value: u32,
}

/// Which Toomer values occur, and how often.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToomerReport {
    pub e0: u32,
    /// Equal to `e0`: rational category and the Toomer invariant agree on
    /// elliptic algebras, and the report is only produced for certified ones.
    pub cat0: u32,
    pub formal_dimension: u32,
    /// `mu[k]` = dimension of `ker p_{k−1} / ker p_k`, summed over degrees.
    pub mu: Vec<usize>,
    /// Values `0 < k < e0` realized by no class.
    pub gaps: Vec<u32>,
    pub filtrations: Vec<DegreeFiltration>,
    /// Per basis class, computed independently of the filtration.
    pub class_values: Vec<ClassValue>,
    pub total_dimension: usize,
}

impl ToomerReport {
    pub fn max_class_value(&self) -> Option<u32> {
        self.class_values.iter().map(|c| c.value).max()
    }
}

/// The full spectrum of Toomer values for a certified elliptic model.
pub fn e0_spectrum(engine: &CohomologyEngine) -> Result<ToomerReport, ToomerError> {
    let top = require_elliptic(engine)?;
    let filtrations = (0..=top)
        .map(|i| degree_filtration(engine, i))
        .collect::<Result<Vec<_>, _>>()?;
    let e0 = filtrations.iter().map(|f| f.injective_from()).max().unwrap_or(0);
    let mu: Vec<usize> = (0..=e0).map(|k| filtrations.iter().map(|f| f.count(k)).sum()).collect();
    let gaps = (1..e0).filter(|&k| mu[k as usize] == 0).collect();
    let mut class_values = Vec::new();
    for i in 0..=top {
        let group = engine.cohomology(i)?;
        for (index, class) in group.classes().into_iter().enumerate() {
            let value = toomer_of_class(engine, &class)?;
            class_values.push(ClassValue {
                degree: i,
                index,
                representative: engine.model().algebra().display(&class.representative),
                value,
            });
        }
    }
    let total_dimension = filtrations.iter().map(|f| f.betti).sum();
    Ok(ToomerReport {
        e0,
        cat0: e0,
        formal_dimension: top,
        mu,
        gaps,
        filtrations,
        class_values,
        total_dimension,
    })
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Random(#[from] RandomError),
    #[error(transparent)]
    Toomer(#[from] ToomerError),
}

/// One model of a gap scan.
#[derive(Clone, Debug, Serialize)]
pub struct GapScanEntry {
    pub seed: u64,
    pub model: String,
    pub report: ToomerReport,
}

impl GapScanEntry {
    pub fn has_gaps(&self) -> bool {
        !self.report.gaps.is_empty()
    }
}

/// Toomer spectrum of the random model for one seed.
pub fn scan_seed(seed: u64, params: &RandomParams) -> Result<GapScanEntry, ScanError> {
    let generated = random_elliptic_model(seed, params)?;
    let engine = CohomologyEngine::new(generated.model);
    let report = e0_spectrum(&engine)?;
    Ok(GapScanEntry {
        seed,
        model: print_model(engine.model()),
        report,
    })
}

/// Scan a range of seeds, in order.
pub fn gap_scan(seeds: std::ops::Range<u64>, params: &RandomParams) -> Result<Vec<GapScanEntry>, ScanError> {
    seeds.map(|seed| scan_seed(seed, params)).collect()
}

/// Histogram of gap counts over a list of reports.
pub fn gap_histogram<'a>(reports: impl IntoIterator<Item = &'a ToomerReport>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        *out.entry(r.gaps.len()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{example_five_generator, heisenberg, lookup};

    #[test]
    fn five_generator_example() {
        let e = CohomologyEngine::new(example_five_generator());
        let r = e0_spectrum(&e).unwrap();
        assert_eq!(r.e0, 3);
        assert_eq!(r.mu, vec![1, 2, 2, 1]);
        assert!(r.gaps.is_empty());
        assert_eq!(r.total_dimension, 6);
        assert_eq!(r.formal_dimension, 7);
        assert_eq!(toomer_via_fundamental_class(&e).unwrap(), 3);
    }

    #[test]
    fn spheres_and_projective_spaces() {
        for (name, e0) in [("sphere:3", 1), ("sphere:4", 1), ("cp:1", 1), ("cp:4", 4)] {
            let e = CohomologyEngine::new(lookup(name).unwrap());
            assert_eq!(toomer_of_algebra(&e).unwrap(), e0, "{name}");
        }
    }

    #[test]
    fn heisenberg_values_are_degrees() {
        let e = CohomologyEngine::new(heisenberg());
        let r = e0_spectrum(&e).unwrap();
        assert_eq!(r.e0, 3);
        assert_eq!(r.mu, vec![1, 2, 2, 1]);
        for c in &r.class_values {
            assert_eq!(c.value, c.degree);
        }
    }

    #[test]
    fn non_elliptic_models_are_refused() {
        let e = CohomologyEngine::new(crate::parse_model("gen x 2").unwrap());
        assert!(matches!(toomer_of_algebra(&e), Err(ToomerError::NotElliptic(_))));
    }

    #[test]
    fn seeded_scan_has_no_gaps() {
        let entries = gap_scan(0..4, &RandomParams::new(2, 2, 2)).unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| !e.has_gaps()));
        assert_eq!(gap_histogram(entries.iter().map(|e| &e.report)).get(&0), Some(&4));
    }

    #[test]
    fn zero_class_has_no_value() {
        let e = CohomologyEngine::new(lookup("sphere:3").unwrap());
        let zero = CohomologyClass {
            degree: 3,
            representative: Polynomial::zero(),
            length: None,
        };
        assert!(matches!(toomer_of_class(&e, &zero), Err(ToomerError::Cohomology(CohomologyError::ZeroClass))));
    }
}
