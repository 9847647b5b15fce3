//! Seeded random pure models: even cocycle generators, and odd generators
//! whose differentials are random polynomials of one word length in the
//! evens. Candidates are drawn until one passes the ellipticity certificate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Generator, Monomial, Polynomial};
use crate::cohomology::{CohomologyEngine, CohomologyError};
use crate::linalg::rat;
use crate::model::{ModelError, SullivanModel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RandomError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("no elliptic model found for seed {seed} after {attempts} attempts")]
    BudgetExhausted { seed: u64, attempts: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub evens: usize,
    pub odds: usize,
    /// Inclusive range for the even degrees; odd values are skipped.
    pub even_degrees: (u32, u32),
    /// Word length of every odd generator's differential.
    pub length: u32,
    /// Coefficients are drawn from `−bound..=bound`.
    pub coefficient_bound: i64,
    /// Candidates tried before giving up.
    pub budget: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            evens: 2,
            odds: 2,
            even_degrees: (2, 2),
            length: 2,
            coefficient_bound: 3,
            budget: 200,
        }
    }
}

impl RandomParams {
    pub fn new(evens: usize, odds: usize, length: u32) -> Self {
        RandomParams {
            evens,
            odds,
            length,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<Vec<u32>, RandomError> {
        if self.evens == 0 {
            return Err(RandomError::Infeasible("need at least one even generator".into()));
        }
        if self.odds < self.evens {
            return Err(RandomError::Infeasible(format!(
                "{} odd generators cannot cut down {} even ones to a finite-dimensional algebra",
                self.odds, self.evens
            )));
        }
        if self.length < 2 {
            return Err(RandomError::Infeasible("length must be at least 2".into()));
        }
        if self.coefficient_bound < 1 {
            return Err(RandomError::Infeasible("coefficient bound must be positive".into()));
        }
        let (lo, hi) = self.even_degrees;
        let degrees: Vec<u32> = (lo.max(2)..=hi).filter(|d| d % 2 == 0).collect();
        if degrees.is_empty() {
            return Err(RandomError::Infeasible(format!("no even degree in {lo}..={hi}")));
        }
        Ok(degrees)
    }
}

/// A generated model together with how it was obtained.
#[derive(Clone, Debug)]
pub struct GeneratedModel {
    pub model: SullivanModel,
    pub seed: u64,
    pub params: RandomParams,
    /// 1-based index of the accepted candidate.
    pub attempts: usize,
}

/// All exponent vectors over `n` variables summing to `length`.
fn compositions(n: usize, length: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if length == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=length).rev() {
        for mut rest in compositions(n - 1, length - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Degree of an odd generator and the terms of its differential.
type OddSpec = (u32, Vec<(Vec<u32>, i64)>);

fn candidate(rng: &mut ChaCha8Rng, params: &RandomParams, degrees: &[u32]) -> Result<SullivanModel, RandomError> {
    let m = params.evens;
    let mut even_degrees: Vec<u32> = (0..m).map(|_| *degrees.choose(rng).expect("nonempty")).collect();
    even_degrees.sort_unstable();
    let shapes = compositions(m, params.length);
    let degree_of = |e: &[u32]| -> u32 { e.iter().zip(&even_degrees).map(|(a, b)| a * b).sum() };

    let mut odd: Vec<OddSpec> = Vec::with_capacity(params.odds);
    for _ in 0..params.odds {
        let chosen = shapes.choose(rng).expect("nonempty");
        let target = degree_of(chosen);
        let mut terms = Vec::new();
        for shape in shapes.iter().filter(|s| degree_of(s) == target) {
            let mut c = rng.gen_range(-params.coefficient_bound..=params.coefficient_bound);
            if shape == chosen && c == 0 {
                c = 1;
            }
            if c != 0 {
                terms.push((shape.clone(), c));
            }
        }
        odd.push((target - 1, terms));
    }
    odd.sort_by_key(|(deg, _)| *deg);

    let n = m + params.odds;
    let mut generators: Vec<Generator> = even_degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Generator::new(format!("x{}", i + 1), d))
        .collect();
    generators.extend(odd.iter().enumerate().map(|(j, (d, _))| Generator::new(format!("y{}", j + 1), *d)));
    let mut differential = vec![Polynomial::zero(); m];
    for (_, terms) in &odd {
        let mut p = Polynomial::zero();
        for (shape, c) in terms {
            let mut exponents = shape.clone();
            exponents.resize(n, 0);
            p.add_term(Monomial::from_exponents(exponents), rat(*c));
        }
        differential.push(p);
    }
    Ok(SullivanModel::new(generators, differential, true)?)
}

/// A seeded random pure model with homogeneous length `params.length` that
/// passes the ellipticity certificate.
pub fn random_elliptic_model(seed: u64, params: &RandomParams) -> Result<GeneratedModel, RandomError> {
    let degrees = params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=params.budget {
        let model = candidate(&mut rng, params, &degrees)?;
        let engine = CohomologyEngine::new(model);
        if engine.certify_elliptic(None)?.is_certified() {
            return Ok(GeneratedModel {
                model: engine.model().clone(),
                seed,
                params: params.clone(),
                attempts: attempt,
            });
        }
    }
    Err(RandomError::BudgetExhausted {
        seed,
        attempts: params.budget,
    })
}
