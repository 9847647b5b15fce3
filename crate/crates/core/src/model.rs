//! Minimal Sullivan algebras (ΛV, d): validation, length profiles, the
//! quotient by a first cocycle generator and the Wang derivation.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Derivation, FreeAlgebra, Generator, Polynomial};

/// What went wrong with one generator of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Generators must have positive degree.
    ZeroDegree,
    /// Degree-1 generators need the non-simply-connected flag.
    DegreeOneNotAllowed,
    /// Some term of `d(v)` does not have degree `|v| + 1`.
    WrongDegree { expected: u32, found: Vec<u32> },
    /// `d(v)` has a constant or linear term.
    NotDecomposable,
    /// `d(v)` involves `v` itself or a later generator.
    NotTriangular { references: Vec<String> },
    /// `d(d(v)) ≠ 0`.
    DSquaredNonzero,
    /// The differential list does not match the generator list.
    MissingDifferential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub generator: String,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.generator;
        match &self.kind {
            ViolationKind::ZeroDegree => write!(f, "generator {g} has degree 0"),
            ViolationKind::DegreeOneNotAllowed => write!(
                f,
                "generator {g} has degree 1 but the model is not flagged non-simply-connected"
            ),
            ViolationKind::WrongDegree { expected, found } => {
                write!(f, "d({g}) should have degree {expected}, found terms of degree {found:?}")
            }
            ViolationKind::NotDecomposable => write!(f, "d({g}) is not decomposable"),
            ViolationKind::NotTriangular { references } => write!(
                f,
                "d({g}) refers to {} which is not declared before {g}",
                references.join(", ")
            ),
            ViolationKind::DSquaredNonzero => write!(f, "d(d({g})) is not zero"),
            ViolationKind::MissingDifferential => write!(f, "no differential slot for {g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("generator {0} is not the first generator")]
    NotFirst(String),
    #[error("generator {0} is not a cocycle")]
    NotCocycle(String),
    #[error("generator {name} has degree {degree}, expected {expected} degree")]
    WrongParity {
        name: String,
        degree: u32,
        expected: &'static str,
    },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

/// How the word length of the differential behaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "l", rename_all = "kebab-case")]
pub enum LengthProfile {
    /// `d = 0`; compatible with every homogeneous length.
    Zero,
    /// Every `d(v)` is zero or of pure word length `l`.
    Homogeneous(u32),
    /// Not homogeneous; every term of every `d(v)` has length at least `l`,
    /// with `l` as large as possible.
    BoundedBelow(u32),
}

impl LengthProfile {
    /// The homogeneous length, if any. A zero differential reports `None`.
    pub fn homogeneous_length(self) -> Option<u32> {
        match self {
            LengthProfile::Homogeneous(l) => Some(l),
            _ => None,
        }
    }

    /// Whether the differential maps `V` into `Λ^l V`.
    pub fn admits_homogeneous(self, l: u32) -> bool {
        match self {
            LengthProfile::Zero => true,
            LengthProfile::Homogeneous(h) => h == l,
            LengthProfile::BoundedBelow(_) => false,
        }
    }

    /// Lower bound on the word length of every differential term.
    pub fn lower_bound(self) -> Option<u32> {
        match self {
            LengthProfile::Zero => None,
            LengthProfile::Homogeneous(l) | LengthProfile::BoundedBelow(l) => Some(l),
        }
    }

    pub fn is_homogeneous_or_zero(self) -> bool {
        !matches!(self, LengthProfile::BoundedBelow(_))
    }
}

impl fmt::Display for LengthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthProfile::Zero => write!(f, "zero differential"),
            LengthProfile::Homogeneous(l) => write!(f, "homogeneous({l})"),
            LengthProfile::BoundedBelow(l) => write!(f, "bounded_below({l})"),
        }
    }
}

/// A minimal Sullivan algebra on an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    algebra: FreeAlgebra,
    differential: Derivation,
    simply_connected: bool,
    validated: bool,
}

impl SullivanModel {
    /// Builds and validates a model. `differential[i]` is `d` of generator `i`.
    pub fn new(
        generators: Vec<Generator>,
        differential: Vec<Polynomial>,
        simply_connected: bool,
    ) -> Result<Self, ModelError> {
        Self::unchecked(generators, differential, simply_connected).validate()
    }

    /// Builds a model without validating it.
    pub fn unchecked(generators: Vec<Generator>, differential: Vec<Polynomial>, simply_connected: bool) -> Self {
        SullivanModel {
            algebra: FreeAlgebra::new(generators),
            differential: Derivation {
                shift: 1,
                values: differential,
            },
            simply_connected,
            validated: false,
        }
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebra.is_empty()
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    /// `d` of generator `index`.
    pub fn d_generator(&self, index: usize) -> &Polynomial {
        &self.differential.values[index]
    }

    pub fn simply_connected(&self) -> bool {
        self.simply_connected
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        self.algebra.apply_derivation(&self.differential, p)
    }

    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.algebra.multiply(a, b)
    }

    pub fn gen(&self, index: usize) -> Polynomial {
        self.algebra.gen(index)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ModelError> {
        self.algebra
            .index_of(name)
            .ok_or_else(|| ModelError::UnknownGenerator(name.to_string()))
    }

    pub fn odd_count(&self) -> usize {
        self.generators().iter().filter(|g| g.is_odd()).count()
    }

    pub fn even_count(&self) -> usize {
        self.len() - self.odd_count()
    }

    /// Smallest generator degree (the `p` with V (p−1)-connected).
    pub fn min_degree(&self) -> Option<u32> {
        self.generators().iter().map(|g| g.degree).min()
    }

    /// `dim V^odd + (l − 2) dim V^even`.
    pub fn length_formula(&self, l: u32) -> i64 {
        self.odd_count() as i64 + (i64::from(l) - 2) * self.even_count() as i64
    }

    /// Collects every violation of the minimal-algebra axioms.
    pub fn violations(&self) -> Vec<Violation> {
        let gens = self.generators();
        let mut out = Vec::new();
        let push = |out: &mut Vec<Violation>, i: usize, kind| {
            out.push(Violation {
                generator: gens[i].name.clone(),
                kind,
            })
        };
        if self.differential.values.len() != gens.len() {
            for i in self.differential.values.len()..gens.len() {
                push(&mut out, i, ViolationKind::MissingDifferential);
            }
            return out;
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree == 0 {
                push(&mut out, i, ViolationKind::ZeroDegree);
            } else if g.degree == 1 && self.simply_connected {
                push(&mut out, i, ViolationKind::DegreeOneNotAllowed);
            }
        }
        for (i, g) in gens.iter().enumerate() {
            let dv = &self.differential.values[i];
            if dv.is_zero() {
                continue;
            }
            let mut wrong: Vec<u32> = dv
                .terms()
                .map(|(m, _)| self.algebra.degree(m))
                .filter(|&deg| deg != g.degree + 1)
                .collect();
            wrong.sort_unstable();
            wrong.dedup();
            if !wrong.is_empty() {
                push(
                    &mut out,
                    i,
                    ViolationKind::WrongDegree {
                        expected: g.degree + 1,
                        found: wrong,
                    },
                );
            }
            if dv.min_length().is_some_and(|len| len < 2) {
                push(&mut out, i, ViolationKind::NotDecomposable);
            }
            let mut late: Vec<String> = (i..gens.len())
                .filter(|&j| dv.terms().any(|(m, _)| m.exponent(j) > 0))
                .map(|j| gens[j].name.clone())
                .collect();
            late.dedup();
            if !late.is_empty() {
                push(&mut out, i, ViolationKind::NotTriangular { references: late });
            }
        }
        // d² is only meaningful once d is a well-formed degree +1 derivation.
        if out.is_empty() {
            for i in 0..gens.len() {
                let dv = &self.differential.values[i];
                if !self.d(dv).is_zero() {
                    push(&mut out, i, ViolationKind::DSquaredNonzero);
                }
            }
        }
        out
    }

    /// Checks the model and marks it validated.
    pub fn validate(mut self) -> Result<Self, ModelError> {
        let violations = self.violations();
        if violations.is_empty() {
            self.validated = true;
            Ok(self)
        } else {
            Err(ModelError::Invalid(violations))
        }
    }

    pub fn length_profile(&self) -> LengthProfile {
        let mut min = u32::MAX;
        let mut max = 0;
        for dv in &self.differential.values {
            if let (Some(lo), Some(hi)) = (dv.min_length(), dv.max_length()) {
                min = min.min(lo);
                max = max.max(hi);
            }
        }
        if max == 0 {
            LengthProfile::Zero
        } else if min == max {
            LengthProfile::Homogeneous(min)
        } else {
            LengthProfile::BoundedBelow(min)
        }
    }

    /// Formal dimension predicted by the generator degrees:
    /// `Σ_odd |v| − Σ_even (|v| − 1)`.
    pub fn formal_dimension_formula(&self) -> i64 {
        self.generators()
            .iter()
            .map(|g| {
                let deg = i64::from(g.degree);
                if g.is_odd() {
                    deg
                } else {
                    -(deg - 1)
                }
            })
            .sum()
    }

    /// Indices of generators with `d(v) = 0`.
    pub fn cocycle_generators(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.differential.values[i].is_zero())
            .collect()
    }

    /// The same model with the cocycle generator `index` moved to the front.
    /// Triangularity is preserved because `d(v) = 0`.
    pub fn with_first(&self, index: usize) -> Result<SullivanModel, ModelError> {
        if !self.differential.values[index].is_zero() {
            return Err(ModelError::NotCocycle(self.generators()[index].name.clone()));
        }
        let n = self.len();
        let order: Vec<usize> = std::iter::once(index).chain((0..n).filter(|&j| j != index)).collect();
        let reordered = FreeAlgebra::new(order.iter().map(|&j| self.generators()[j].clone()).collect());
        let new_index: Vec<usize> = (0..n).map(|old| order.iter().position(|&o| o == old).unwrap()).collect();
        // Each term is rebuilt by multiplying its factors in the old order so
        // that the Koszul signs of the new canonical order are picked up.
        let differential = order
            .iter()
            .map(|&j| {
                let mut out = Polynomial::zero();
                for (m, c) in self.differential.values[j].terms() {
                    let mut prod = reordered.one();
                    for old in 0..n {
                        let e = m.exponent(old);
                        if e > 0 {
                            let factor = reordered.power(&reordered.gen(new_index[old]), e);
                            prod = reordered.multiply(&prod, &factor);
                        }
                    }
                    out.add_scaled(c, &prod);
                }
                out
            })
            .collect();
        SullivanModel::new(reordered.generators().to_vec(), differential, self.simply_connected)
    }

    /// `ΛW = ΛV / (x₁)`: drops the first generator and every term containing it.
    pub fn quotient_model(&self, generator: usize) -> Result<SullivanModel, ModelError> {
        self.check_first_cocycle(generator)?;
        let generators = self.generators()[1..].to_vec();
        let differential = self.differential.values[1..]
            .iter()
            .map(|dv| {
                dv.filter(|m| m.exponent(0) == 0)
                    .map_monomials(|m| m.drop_generator(0))
            })
            .collect();
        SullivanModel::new(generators, differential, self.simply_connected)
    }

    /// The derivation θ of ΛW defined by `d χ = d̄ χ + x₁ θ(χ)` for an odd
    /// first generator `x₁`. Its degree shift is `−(|x₁| − 1)`.
    pub fn wang_derivation(&self, generator: usize) -> Result<Derivation, ModelError> {
        self.check_first_cocycle(generator)?;
        let x1 = &self.generators()[0];
        if !x1.is_odd() {
            return Err(ModelError::WrongParity {
                name: x1.name.clone(),
                degree: x1.degree,
                expected: "odd",
            });
        }
        // x₁ comes first in canonical order, so a term x₁·m' is stored with
        // exactly the sign of x₁ · m'.
        let values = self.differential.values[1..]
            .iter()
            .map(|dv| {
                dv.filter(|m| m.exponent(0) == 1)
                    .map_monomials(|m| m.with_exponent(0, 0).drop_generator(0))
            })
            .collect();
        Ok(Derivation {
            shift: -(x1.degree as i32 - 1),
            values,
        })
    }

    fn check_first_cocycle(&self, generator: usize) -> Result<(), ModelError> {
        let name = self
            .generators()
            .get(generator)
            .map(|g| g.name.clone())
            .unwrap_or_else(|| format!("#{generator}"));
        if generator != 0 {
            return Err(ModelError::NotFirst(name));
        }
        if !self.differential.values[0].is_zero() {
            return Err(ModelError::NotCocycle(name));
        }
        Ok(())
    }

    /// Embeds a polynomial of ΛW (the quotient by the first generator) into ΛV.
    pub fn lift_from_quotient(&self, p: &Polynomial) -> Polynomial {
        p.map_monomials(|m| m.insert_generator(0, 0))
    }

    /// Sets the first generator to zero and views the result in ΛW.
    pub fn project_to_quotient(&self, p: &Polynomial) -> Polynomial {
        p.filter(|m| m.exponent(0) == 0)
            .map_monomials(|m| m.drop_generator(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_model;

    #[test]
    fn validate_examples() {
        assert!(parse_model("gen x 2\ngen y 3\nd y = x^2").is_ok());
        assert!(parse_model("option non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = a*b").is_ok());
    }

    #[test]
    fn validate_reports_structural_violations() {
        let x = Generator::new("x", 2);
        let y = Generator::new("y", 3);
        let dy = Polynomial::generator(2, 1);
        let err = SullivanModel::new(vec![x, y], vec![Polynomial::zero(), dy], true).unwrap_err();
        let ModelError::Invalid(v) = err else { panic!() };
        let kinds: Vec<_> = v.iter().map(|v| &v.kind).collect();
        assert!(kinds.contains(&&ViolationKind::NotDecomposable));
        assert!(kinds.iter().any(|k| matches!(k, ViolationKind::WrongDegree { .. })));
        assert!(kinds.iter().any(|k| matches!(k, ViolationKind::NotTriangular { .. })));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn degree_one_needs_flag() {
        let gens = vec![Generator::new("a", 1)];
        assert!(SullivanModel::new(gens.clone(), vec![Polynomial::zero()], true).is_err());
        assert!(SullivanModel::new(gens, vec![Polynomial::zero()], false).is_ok());
    }

    #[test]
    fn d_squared_violation() {
        // dv = x·u gives d²v = x·x² ≠ 0.
        let m = parse_model_unchecked("gen x 2\ngen u 3\ngen v 4\nd u = x^2\nd v = x*u");
        let v = m.violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].generator, "v");
        assert_eq!(v[0].kind, ViolationKind::DSquaredNonzero);
    }

    fn parse_model_unchecked(text: &str) -> SullivanModel {
        crate::parse::parse_model_unvalidated(text).unwrap()
    }

    #[test]
    fn length_profiles() {
        let s2 = parse_model("gen x 2\ngen y 3\nd y = x^2").unwrap();
        assert_eq!(s2.length_profile(), LengthProfile::Homogeneous(2));
        let cp3 = parse_model("gen x 2\ngen y 7\nd y = x^4").unwrap();
        assert_eq!(cp3.length_profile(), LengthProfile::Homogeneous(4));
        let mixed = parse_model("gen x 2\ngen y1 3\ngen y2 5\nd y1 = x^2\nd y2 = x^3").unwrap();
        assert_eq!(mixed.length_profile(), LengthProfile::BoundedBelow(2));
    }

    #[test]
    fn quotient_examples() {
        let m = parse_model("gen x1 3\ngen x2 3\ngen x3 3").unwrap();
        let q = m.quotient_model(0).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.generators()[0].name, "x2");
        assert!(q.differential().is_zero());

        let h = parse_model("option non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = a*b").unwrap();
        let q = h.quotient_model(0).unwrap();
        assert_eq!(q.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>(), ["b", "c"]);
        assert!(q.differential().is_zero());
        assert!(matches!(h.quotient_model(1), Err(ModelError::NotFirst(_))));

        let five = crate::library::example_five_generator();
        let y1 = five.index_of("y1").unwrap();
        assert!(five.quotient_model(y1).is_err());
    }

    #[test]
    fn quotient_rejects_non_cocycle_first_generator() {
        // A first generator always has d = 0 in a validated model; exercise
        // the check on an unvalidated one.
        let x = Generator::new("x", 2);
        let y = Generator::new("y", 3);
        let bad = SullivanModel::unchecked(
            vec![y, x],
            vec![Polynomial::term(crate::algebra::Monomial::from_exponents(vec![0, 2]), crate::linalg::rat(1)), Polynomial::zero()],
            true,
        );
        assert!(matches!(bad.quotient_model(0), Err(ModelError::NotCocycle(_))));
    }

    #[test]
    fn heisenberg_wang_derivation() {
        let h = parse_model("option non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = a*b").unwrap();
        let theta = h.wang_derivation(0).unwrap();
        assert_eq!(theta.shift, 0);
        assert!(theta.values[0].is_zero());
        assert_eq!(theta.values[1], Polynomial::generator(2, 0));
    }

    #[test]
    fn wang_derivation_rejects_even_generator() {
        let m = parse_model("gen x 2\ngen y 3\nd y = x^2").unwrap();
        assert!(matches!(m.wang_derivation(0), Err(ModelError::WrongParity { .. })));
    }

    #[test]
    fn moving_a_cocycle_to_the_front() {
        let m = parse_model("gen x 2\ngen y 3\ngen u 3\nd y = x^2").unwrap();
        let moved = m.with_first(2).unwrap();
        assert_eq!(moved.generators()[0].name, "u");
        assert_eq!(moved.d_generator(2), &moved.algebra().power(&moved.gen(1), 2));
        assert!(m.with_first(1).is_err());
    }
}
