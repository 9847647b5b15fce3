//! Checkers for the structural results about Toomer invariants and bigraded
//! cohomology. Each produces a [`VerificationReport`] whose verdict is pass,
//! fail (with a concrete witness) or not applicable (naming the hypothesis
//! that failed).

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{BigradedTable, CohomologyEngine, CohomologyError, Ellipticity};
use crate::linalg::{kernel_basis, RatMatrix};
use crate::model::{LengthProfile, SullivanModel};
use crate::toomer::{e0_spectrum, toomer_of_algebra, ToomerError, ToomerReport};
use crate::{Polynomial, Slot};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Toomer(#[from] ToomerError),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

/// The available checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `e₀ = e`, no empty lengths, and the degree spacing of `n_k`/`N_k`.
    Homogeneous,
    /// `n_k = N − N_{e−k}`, and the two spacing conditions agree.
    Duality,
    /// `dim H_k ≥ 2` for `0 < k < e` when an odd generator is a cocycle.
    OddCocycle,
    /// `dim H ≥ 2 e₀` under the same hypothesis.
    TotalDimension,
    /// `e₀ ≥ dim V^odd + (l−2) dim V^even` for differentials of length ≥ l.
    LengthBound,
    /// Betti numbers of nilmanifold models.
    Nilmanifold,
    /// Either `dim H_k ≥ 2` for `0 < k < e`, or `H` is a truncated
    /// polynomial algebra on one generator.
    TruncatedOrTwo,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Homogeneous,
        Check::Duality,
        Check::OddCocycle,
        Check::TotalDimension,
        Check::LengthBound,
        Check::Nilmanifold,
        Check::TruncatedOrTwo,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Homogeneous => "homogeneous",
            Check::Duality => "duality",
            Check::OddCocycle => "odd-cocycle",
            Check::TotalDimension => "total-dimension",
            Check::LengthBound => "length-bound",
            Check::Nilmanifold => "nilmanifold",
            Check::TruncatedOrTwo => "truncated-or-two",
        }
    }

    pub fn parse(id: &str) -> Result<Check, VerifyError> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// A violated (or, for informational entries, observed) property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: String,
    pub index: Option<u32>,
    pub expected: String,
    pub found: String,
}

impl Witness {
    fn new(property: &str, index: Option<u32>, expected: impl ToString, found: impl ToString) -> Self {
        Witness {
            property: property.to_string(),
            index,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

/// Quantities computed along the way; absent when not needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Quantities {
    pub l: Option<u32>,
    pub e: Option<i64>,
    pub p: Option<u32>,
    pub e0: Option<u32>,
    pub formal_dimension: Option<u32>,
    pub total_dimension: Option<usize>,
    pub n: Option<Vec<Option<u32>>>,
    pub big_n: Option<Vec<Option<u32>>>,
    pub mu: Option<Vec<usize>>,
    pub length_dimensions: Option<Vec<usize>>,
    pub betti: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Every middle length has at least two classes.
    AtLeastTwo,
    /// Truncated polynomial algebra on one generator.
    Truncated,
    /// Neither: a counterexample.
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub model: String,
    pub verdict: Verdict,
    /// Why the check does not apply, or a note on a passing check.
    pub note: Option<String>,
    pub witnesses: Vec<Witness>,
    pub quantities: Quantities,
    /// Set when an inequality holds with equality.
    pub sharp: Option<bool>,
    pub branch: Option<Branch>,
}

impl VerificationReport {
    fn new(check: Check, model: &str) -> Self {
        VerificationReport {
            check,
            model: model.to_string(),
            verdict: Verdict::Pass,
            note: None,
            witnesses: Vec::new(),
            quantities: Quantities::default(),
            sharp: None,
            branch: None,
        }
    }

    fn not_applicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::NotApplicable;
        self.note = Some(reason.into());
        self
    }

    fn fail(&mut self, witness: Witness) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(witness);
    }

    fn expect<T: PartialEq + ToString>(&mut self, property: &str, index: Option<u32>, expected: T, found: T) {
        if expected != found {
            self.fail(Witness::new(property, index, expected, found));
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A model under verification, with shared intermediate results.
pub struct Subject {
    name: String,
    engine: CohomologyEngine,
    certificate: OnceLock<Result<Ellipticity, CohomologyError>>,
    spectrum: OnceLock<Result<ToomerReport, ToomerError>>,
    bigraded: OnceLock<Result<BigradedTable, CohomologyError>>,
}

impl Subject {
    pub fn new(name: impl Into<String>, model: SullivanModel) -> Self {
        Subject {
            name: name.into(),
            engine: CohomologyEngine::new(model),
            certificate: OnceLock::new(),
            spectrum: OnceLock::new(),
            bigraded: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn engine(&self) -> &CohomologyEngine {
        &self.engine
    }

    pub fn model(&self) -> &SullivanModel {
        self.engine.model()
    }

    pub fn certificate(&self) -> Result<&Ellipticity, VerifyError> {
        self.certificate
            .get_or_init(|| self.engine.certify_elliptic(None))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn spectrum(&self) -> Result<&ToomerReport, VerifyError> {
        self.spectrum
            .get_or_init(|| e0_spectrum(&self.engine))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn bigraded(&self) -> Result<&BigradedTable, VerifyError> {
        self.bigraded
            .get_or_init(|| self.engine.bigraded_profile())
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// `None` when certified, otherwise the reason it is not.
    fn ellipticity_gap(&self) -> Result<Option<String>, VerifyError> {
        Ok(match self.certificate()? {
            Ellipticity::Certified { .. } => None,
            Ellipticity::Refuted { witness } => Some(format!("not elliptic: {witness:?}")),
            Ellipticity::Inconclusive { reason } => Some(format!("ellipticity not certified: {reason}")),
        })
    }

    fn homogeneous_length(&self) -> Option<u32> {
        self.engine.grading()
    }

    /// Smallest generator degree; 1 for nilmanifold models.
    fn connectivity(&self) -> u32 {
        self.model().min_degree().unwrap_or(1)
    }

    /// Whether `d` restricted to some degree of `V^odd` has a kernel.
    pub fn odd_cocycle_degree(&self) -> Option<u32> {
        let model = self.model();
        let mut degrees: Vec<u32> = model
            .generators()
            .iter()
            .filter(|g| g.is_odd())
            .map(|g| g.degree)
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().find(|&q| {
            let indices: Vec<usize> = (0..model.len()).filter(|&i| model.generators()[i].degree == q).collect();
            let target = self.engine.basis(Slot::ungraded(q + 1));
            let columns: Vec<_> = indices
                .iter()
                .map(|&i| target.vectorize(model.d_generator(i)).expect("d raises degree by one"))
                .collect();
            !kernel_basis(&RatMatrix::from_columns(target.len(), &columns)).is_empty()
        })
    }
}

fn fill_homogeneous_quantities(report: &mut VerificationReport, subject: &Subject, l: u32) -> Result<(), VerifyError> {
    let table = subject.bigraded()?;
    let spectrum = subject.spectrum()?;
    let q = &mut report.quantities;
    q.l = Some(l);
    q.e = Some(subject.model().length_formula(l));
    q.p = Some(subject.connectivity());
    q.e0 = Some(spectrum.e0);
    q.formal_dimension = Some(table.formal_dimension);
    q.total_dimension = Some(spectrum.total_dimension);
    q.n = Some(table.n.clone());
    q.big_n = Some(table.big_n.clone());
    q.mu = Some(spectrum.mu.clone());
    q.length_dimensions = Some((0..=table.e).map(|k| table.length_dimension(k)).collect());
    Ok(())
}

/// Gate on a homogeneous, certified elliptic model. Returns `l`.
fn homogeneous_elliptic(subject: &Subject) -> Result<Result<u32, String>, VerifyError> {
    let Some(l) = subject.homogeneous_length() else {
        return Ok(Err(format!(
            "differential is not of homogeneous length ({})",
            subject.model().length_profile()
        )));
    };
    if let Some(reason) = subject.ellipticity_gap()? {
        return Ok(Err(reason));
    }
    Ok(Ok(l))
}

/// Spacing conditions on `n_k` (a) and `N_k` (b) for a given `p`.
fn spacing(table: &BigradedTable, p: u32) -> (Vec<Witness>, Vec<Witness>) {
    let e = table.e;
    let n = |k: u32| table.n.get(k as usize).copied().flatten();
    let big = |k: u32| table.big_n.get(k as usize).copied().flatten();
    let mut a = Vec::new();
    if e >= 1 && n(1) != Some(p) {
        a.push(Witness::new("n_1 = p", Some(1), p, fmt_opt(n(1))));
    }
    for k in 1..e {
        match (n(k), n(k + 1)) {
            (Some(x), Some(y)) if y >= x + p => {}
            (x, y) => a.push(Witness::new(
                "n_{k+1} ≥ n_k + p",
                Some(k),
                format!("≥ {}", fmt_opt(x.map(|x| x + p))),
                fmt_opt(y),
            )),
        }
    }
    let mut b = Vec::new();
    for k in 0..e.saturating_sub(1) {
        match (big(k), big(k + 1)) {
            (Some(x), Some(y)) if y >= x + p => {}
            (x, y) => b.push(Witness::new(
                "N_{k+1} ≥ N_k + p",
                Some(k),
                format!("≥ {}", fmt_opt(x.map(|x| x + p))),
                fmt_opt(y),
            )),
        }
    }
    if e >= 1 {
        let top = big(e);
        let below = big(e - 1).map(|x| x + p);
        if top != Some(table.formal_dimension) || top != below {
            b.push(Witness::new(
                "N = N_e = N_{e−1} + p",
                Some(e),
                format!("{} = {}", table.formal_dimension, fmt_opt(below)),
                fmt_opt(top),
            ));
        }
    }
    (a, b)
}

fn fmt_opt(x: Option<u32>) -> String {
    x.map_or_else(|| "none".to_string(), |x| x.to_string())
}

/// `e₀ = cat₀ = e`, `H_k ≠ 0` for `0 ≤ k ≤ e`, and the spacing conditions
/// with `p` the smallest generator degree.
pub fn verify_homogeneous(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::Homogeneous, subject.name());
    let l = match homogeneous_elliptic(subject)? {
        Ok(l) => l,
        Err(reason) => return Ok(report.not_applicable(reason)),
    };
    let mut report = report;
    fill_homogeneous_quantities(&mut report, subject, l)?;
    let e = subject.model().length_formula(l);
    let spectrum = subject.spectrum()?;
    let table = subject.bigraded()?;
    report.expect("e₀ = e", None, e, spectrum.e0 as i64);
    report.expect("cat₀ = e", None, e, spectrum.cat0 as i64);
    for k in 0..=e.max(0) as u32 {
        let dim = table.length_dimension(k);
        if dim == 0 {
            report.fail(Witness::new("H_k ≠ 0", Some(k), "> 0", dim));
        }
        let mu = spectrum.mu.get(k as usize).copied().unwrap_or(0);
        if mu == 0 {
            report.fail(Witness::new("μ_k > 0", Some(k), "> 0", mu));
        }
    }
    let (a, b) = spacing(table, subject.connectivity());
    for w in a.into_iter().chain(b) {
        report.fail(w);
    }
    Ok(report)
}

/// `n_k = N − N_{e−k}` for `0 < k < e`, and conditions (a), (b) on the
/// spacing of `n_k`, `N_k` hold or fail together.
pub fn verify_duality(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::Duality, subject.name());
    let l = match homogeneous_elliptic(subject)? {
        Ok(l) => l,
        Err(reason) => return Ok(report.not_applicable(reason)),
    };
    let table = subject.bigraded()?;
    if let Some(k) = (1..table.e).find(|&k| table.length_dimension(k) == 0) {
        return Ok(report.not_applicable(format!("H_{k} = 0")));
    }
    let mut report = report;
    fill_homogeneous_quantities(&mut report, subject, l)?;
    let e = table.e;
    let big_n = table.formal_dimension;
    for k in 1..e {
        let n_k = table.n[k as usize];
        let dual = table.big_n[(e - k) as usize].map(|x| big_n - x);
        if n_k != dual {
            report.fail(Witness::new("n_k = N − N_{e−k}", Some(k), fmt_opt(dual), fmt_opt(n_k)));
        }
    }
    let (a, b) = spacing(table, subject.connectivity());
    if a.is_empty() != b.is_empty() {
        report.fail(Witness::new(
            "(a) ⇔ (b)",
            None,
            "both or neither",
            format!("(a) {}, (b) {}", a.is_empty(), b.is_empty()),
        ));
        report.witnesses.extend(a.into_iter().chain(b));
    }
    Ok(report)
}

fn odd_cocycle_gate(subject: &Subject) -> Result<Result<(u32, u32), String>, VerifyError> {
    let l = match homogeneous_elliptic(subject)? {
        Ok(l) => l,
        Err(reason) => return Ok(Err(reason)),
    };
    match subject.odd_cocycle_degree() {
        Some(q) => Ok(Ok((l, q))),
        None => Ok(Err("d is injective on V^odd".to_string())),
    }
}

/// `dim H_k ≥ 2` for `0 < k < e` when `d` has a kernel on `V^odd`.
pub fn verify_odd_cocycle(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(Check::OddCocycle, subject.name());
    let l = match odd_cocycle_gate(subject)? {
        Ok((l, q)) => {
            report.note = Some(format!("odd cocycle in degree {q}"));
            l
        }
        Err(reason) => {
            let informative = subject.homogeneous_length().is_some() && subject.ellipticity_gap()?.is_none();
            let mut r = report.not_applicable(reason);
            if informative {
                let l = subject.homogeneous_length().expect("checked");
                fill_homogeneous_quantities(&mut r, subject, l)?;
            }
            return Ok(r);
        }
    };
    fill_homogeneous_quantities(&mut report, subject, l)?;
    let table = subject.bigraded()?;
    let e = subject.model().length_formula(l).max(0) as u32;
    for k in 1..e {
        let dim = table.length_dimension(k);
        if dim < 2 {
            report.fail(Witness::new("dim H_k ≥ 2", Some(k), "≥ 2", dim));
        }
    }
    Ok(report)
}

/// `dim H ≥ 2 e₀` under the odd-cocycle hypothesis; equality is flagged.
pub fn verify_total_dimension(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::TotalDimension, subject.name());
    let l = match odd_cocycle_gate(subject)? {
        Ok((l, _)) => l,
        Err(reason) => return Ok(report.not_applicable(reason)),
    };
    let mut report = report;
    fill_homogeneous_quantities(&mut report, subject, l)?;
    let spectrum = subject.spectrum()?;
    let total = spectrum.total_dimension;
    let bound = 2 * spectrum.e0 as usize;
    if total < bound {
        report.fail(Witness::new("dim H ≥ 2 e₀", None, format!("≥ {bound}"), total));
    }
    report.sharp = Some(total == bound);
    Ok(report)
}

/// `e₀ ≥ dim V^odd + (l−2) dim V^even` when every differential has length ≥ l.
pub fn verify_length_bound(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::LengthBound, subject.name());
    let l = match subject.model().length_profile() {
        LengthProfile::Homogeneous(l) | LengthProfile::BoundedBelow(l) => l,
        LengthProfile::Zero => 2,
    };
    if let Some(reason) = subject.ellipticity_gap()? {
        return Ok(report.not_applicable(reason));
    }
    let mut report = report;
    let e0 = toomer_of_algebra(subject.engine())?;
    let e = subject.model().length_formula(l);
    report.quantities.l = Some(l);
    report.quantities.e = Some(e);
    report.quantities.e0 = Some(e0);
    if (e0 as i64) < e {
        report.fail(Witness::new("e₀ ≥ e", None, format!("≥ {e}"), e0));
    }
    report.sharp = Some(e0 as i64 == e);
    Ok(report)
}

/// For a model on `n` degree-one generators: `b_i ≥ 2` for `0 < i < n`,
/// `dim H ≥ 2n`, and `e₀ = n`.
pub fn verify_nilmanifold(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::Nilmanifold, subject.name());
    let model = subject.model();
    if model.is_empty() || model.generators().iter().any(|g| g.degree != 1) {
        return Ok(report.not_applicable("not every generator has degree 1"));
    }
    if let Some(reason) = subject.ellipticity_gap()? {
        return Ok(report.not_applicable(reason));
    }
    let mut report = report;
    let n = model.len() as u32;
    let table = subject.engine().table(n)?;
    let spectrum = subject.spectrum()?;
    for i in 1..n {
        let b = table.betti[i as usize];
        if b < 2 {
            report.fail(Witness::new("b_i ≥ 2", Some(i), "≥ 2", b));
        }
    }
    if table.total < 2 * n as usize {
        report.fail(Witness::new("dim H ≥ 2 dim", None, format!("≥ {}", 2 * n), table.total));
    }
    report.expect("e₀ = dim", None, n, spectrum.e0);
    for c in &spectrum.class_values {
        if c.value != c.degree {
            report.fail(Witness::new("e₀(x) = |x|", Some(c.degree), c.degree, c.value));
        }
    }
    report.sharp = Some(table.total == 2 * n as usize);
    report.quantities.betti = Some(table.betti.clone());
    report.quantities.total_dimension = Some(table.total);
    report.quantities.e0 = Some(spectrum.e0);
    report.quantities.formal_dimension = Some(n);
    Ok(report)
}

/// Whether `H` is `ℚ[g]/(g^{m+1})` for a single class `g`.
pub fn is_truncated_polynomial(subject: &Subject) -> Result<bool, VerifyError> {
    let engine = subject.engine();
    let spectrum = subject.spectrum()?;
    let top = spectrum.formal_dimension;
    let betti: Vec<usize> = spectrum.filtrations.iter().map(|f| f.betti).collect();
    if betti.iter().any(|&b| b > 1) {
        return Ok(false);
    }
    let Some(q) = (1..=top).find(|&i| betti[i as usize] == 1) else {
        return Ok(top == 0);
    };
    if top % q != 0 || (0..=top).any(|i| (betti[i as usize] == 1) != (i % q == 0)) {
        return Ok(false);
    }
    let g = engine.cohomology(q)?.representative(0);
    let mut power = Polynomial::constant(subject.model().len(), crate::linalg::rat(1));
    for j in 1..=top / q {
        power = subject.model().multiply(&power, &g);
        let group = engine.cohomology(j * q)?;
        if group.coordinates(&power)?.iter().all(num_traits::Zero::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classify a homogeneous elliptic model: at least two classes in every
/// middle length, a truncated polynomial algebra, or neither (a failure).
pub fn verify_truncated_or_two(subject: &Subject) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new(Check::TruncatedOrTwo, subject.name());
    let l = match homogeneous_elliptic(subject)? {
        Ok(l) => l,
        Err(reason) => return Ok(report.not_applicable(reason)),
    };
    let mut report = report;
    fill_homogeneous_quantities(&mut report, subject, l)?;
    let table = subject.bigraded()?;
    let thin: Vec<u32> = (1..table.e).filter(|&k| table.length_dimension(k) < 2).collect();
    if thin.is_empty() {
        report.branch = Some(Branch::AtLeastTwo);
    } else if is_truncated_polynomial(subject)? {
        report.branch = Some(Branch::Truncated);
    } else {
        report.branch = Some(Branch::Neither);
        for k in thin {
            report.fail(Witness::new(
                "dim H_k ≥ 2 or truncated polynomial",
                Some(k),
                "≥ 2",
                table.length_dimension(k),
            ));
        }
    }
    Ok(report)
}

pub fn verify(check: Check, subject: &Subject) -> Result<VerificationReport, VerifyError> {
    match check {
        Check::Homogeneous => verify_homogeneous(subject),
        Check::Duality => verify_duality(subject),
        Check::OddCocycle => verify_odd_cocycle(subject),
        Check::TotalDimension => verify_total_dimension(subject),
        Check::LengthBound => verify_length_bound(subject),
        Check::Nilmanifold => verify_nilmanifold(subject),
        Check::TruncatedOrTwo => verify_truncated_or_two(subject),
    }
}

pub fn verify_all(subject: &Subject) -> Result<Vec<VerificationReport>, VerifyError> {
    Check::ALL.into_iter().map(|c| verify(c, subject)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::lookup;

    fn subject(name: &str) -> Subject {
        Subject::new(name, lookup(name).unwrap())
    }

    #[test]
    fn five_generator_example() {
        let s = subject("example-5gen");
        let r = verify_homogeneous(&s).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        assert_eq!(r.quantities.n, Some(vec![Some(0), Some(2), Some(5), Some(7)]));
        assert_eq!(r.quantities.mu, Some(vec![1, 2, 2, 1]));
        assert!(verify_duality(&s).unwrap().passed());
        let odd = verify_odd_cocycle(&s).unwrap();
        assert_eq!(odd.verdict, Verdict::NotApplicable);
        assert_eq!(odd.quantities.length_dimensions, Some(vec![1, 2, 2, 1]));
        assert_eq!(verify_truncated_or_two(&s).unwrap().branch, Some(Branch::AtLeastTwo));
    }

    #[test]
    fn product_with_sphere_is_sharp() {
        let s = subject("cpl-sphere:4,1");
        let r = verify_total_dimension(&s).unwrap();
        assert!(r.passed());
        assert_eq!(r.sharp, Some(true));
        assert!(verify_odd_cocycle(&s).unwrap().passed());
        for r in verify_all(&s).unwrap() {
            assert_ne!(r.verdict, Verdict::Fail, "{r:?}");
        }
    }

    #[test]
    fn projective_space_is_truncated() {
        let r = verify_truncated_or_two(&subject("cp:3")).unwrap();
        assert_eq!(r.branch, Some(Branch::Truncated));
        assert!(r.passed());
    }

    #[test]
    fn nilmanifolds() {
        for name in ["heisenberg", "nil5", "heisenberg5"] {
            let r = verify_nilmanifold(&subject(name)).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.witnesses);
        }
        assert_eq!(verify_nilmanifold(&subject("cp:2")).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn mixed_models_only_get_the_bound() {
        let s = subject("mixed-1");
        assert_eq!(verify_homogeneous(&s).unwrap().verdict, Verdict::NotApplicable);
        assert!(verify_length_bound(&s).unwrap().passed());
    }

    #[test]
    fn non_elliptic_is_not_applicable() {
        let s = Subject::new("poly", crate::parse_model("gen x 2\ngen y 5").unwrap());
        for r in verify_all(&s).unwrap() {
            assert_eq!(r.verdict, Verdict::NotApplicable, "{r:?}");
        }
    }

    #[test]
    fn check_ids_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.id()).unwrap(), c);
        }
        assert!(Check::parse("nope").is_err());
    }
}
