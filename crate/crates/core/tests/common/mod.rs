#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use sullivan::algebra::{FreeAlgebra, Generator, Monomial, Polynomial};
use sullivan::library::{library, lookup, Shape};
use sullivan::linalg::rat;
use sullivan::random::{random_elliptic_model, RandomParams};
use sullivan::SullivanModel;

/// Shapes `(evens, odds, length, even degrees)` of the seeded random corpus.
pub const RANDOM_SHAPES: [(usize, usize, u32, (u32, u32)); 10] = [
    (1, 1, 2, (2, 2)),
    (1, 1, 3, (2, 4)),
    (1, 2, 2, (2, 2)),
    (2, 2, 2, (2, 4)),
    (2, 3, 2, (2, 2)),
    (2, 2, 3, (2, 4)),
    (1, 1, 4, (2, 2)),
    (2, 2, 4, (2, 2)),
    (3, 3, 2, (2, 2)),
    (2, 3, 3, (2, 2)),
];

pub const SEEDS_PER_SHAPE: u64 = 6;

/// Sixty seeded random pure homogeneous elliptic models.
pub fn random_corpus() -> &'static [(String, SullivanModel)] {
    static CORPUS: OnceLock<Vec<(String, SullivanModel)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for (evens, odds, length, degrees) in RANDOM_SHAPES {
            for seed in 0..SEEDS_PER_SHAPE {
                let mut params = RandomParams::new(evens, odds, length);
                params.even_degrees = degrees;
                let generated = random_elliptic_model(seed, &params).expect("corpus parameters are feasible");
                out.push((format!("random({evens},{odds},l={length},seed={seed})"), generated.model));
            }
        }
        out
    })
}

/// X_l for l in 2..=6, r in 1..=3; CP^n for n ≤ 6; spheres of dimension 1..=7.
pub fn named_sweep() -> Vec<(String, SullivanModel)> {
    let mut names = Vec::new();
    for l in 2..=6 {
        for r in 1..=3 {
            names.push(format!("cpl-sphere:{l},{r}"));
        }
    }
    for n in 1..=6 {
        names.push(format!("cp:{n}"));
    }
    for n in 1..=7 {
        names.push(format!("sphere:{n}"));
    }
    names
        .into_iter()
        .map(|n| {
            let m = lookup(&n).unwrap();
            (n, m)
        })
        .collect()
}

/// The corpus of the homogeneous sweep: named families plus the random corpus.
pub fn sweep_corpus() -> Vec<(String, SullivanModel)> {
    let mut out = named_sweep();
    out.extend(random_corpus().iter().cloned());
    out
}

pub fn homogeneous_library() -> Vec<(String, SullivanModel)> {
    library()
        .into_iter()
        .filter(|e| e.shape == Shape::Homogeneous)
        .map(|e| {
            let m = e.model();
            (e.name, m)
        })
        .collect()
}

pub fn mixed_library() -> Vec<(String, SullivanModel)> {
    library()
        .into_iter()
        .filter(|e| e.shape == Shape::Mixed)
        .map(|e| {
            let m = e.model();
            (e.name, m)
        })
        .collect()
}

/// Valid models used for the differential properties.
pub fn model_pool() -> &'static [SullivanModel] {
    static POOL: OnceLock<Vec<SullivanModel>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out: Vec<SullivanModel> = library().into_iter().map(|e| e.model()).collect();
        out.extend(random_corpus().iter().step_by(3).map(|(_, m)| m.clone()));
        out
    })
}

/// Terms `(exponents, coefficient)` before they are fitted to an algebra.
pub type RawPolynomial = Vec<(Vec<u32>, i64)>;

pub fn generators() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(1u32..=6, 1..=4).prop_map(|degrees| {
        degrees
            .into_iter()
            .enumerate()
            .map(|(i, d)| Generator::new(format!("g{i}"), d))
            .collect()
    })
}

/// A random exponent vector that respects `odd exponents ≤ 1`.
pub fn monomial(algebra: &FreeAlgebra, raw: &[u32]) -> Monomial {
    let exponents = raw
        .iter()
        .enumerate()
        .map(|(i, &e)| if algebra.is_odd(i) { e % 2 } else { e % 3 })
        .collect();
    Monomial::from_exponents(exponents)
}

/// Up to four terms with coefficients in −3..=3.
pub fn polynomial(algebra: &FreeAlgebra, raw: &RawPolynomial) -> Polynomial {
    let mut p = Polynomial::zero();
    for (exponents, c) in raw {
        let mut e = exponents.clone();
        e.resize(algebra.len(), 0);
        p.add_term(monomial(algebra, &e), rat(*c));
    }
    p
}

/// Keep only the terms of the same degree as the first term.
pub fn homogeneous_part(algebra: &FreeAlgebra, p: &Polynomial) -> Polynomial {
    let Some((first, _)) = p.terms().next() else {
        return Polynomial::zero();
    };
    let degree = algebra.degree(first);
    p.filter(|m| algebra.degree(m) == degree)
}

pub fn raw_polynomial() -> impl Strategy<Value = RawPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, 8), -3i64..=3), 0..=4)
}

/// Sign of `a·b` against the canonical order, counted directly: write both
/// monomials out as words of generator indices, concatenate, and bubble
/// sort, flipping the sign on every swap of two odd letters. A repeated odd
/// letter makes the product zero.
pub fn koszul_oracle(algebra: &FreeAlgebra, a: &Monomial, b: &Monomial) -> i32 {
    let mut word = Vec::new();
    for m in [a, b] {
        for (i, &e) in m.exponents().iter().enumerate() {
            word.extend(std::iter::repeat_n(i, e as usize));
        }
    }
    for i in 0..algebra.len() {
        if algebra.is_odd(i) && word.iter().filter(|&&x| x == i).count() > 1 {
            return 0;
        }
    }
    let mut sign = 1;
    for end in (1..word.len()).rev() {
        for j in 0..end {
            if word[j] > word[j + 1] {
                if algebra.is_odd(word[j]) && algebra.is_odd(word[j + 1]) {
                    sign = -sign;
                }
                word.swap(j, j + 1);
            }
        }
    }
    sign
}
