//! The free graded-commutative algebra ΛV on a finite list of generators.
//!
//! A monomial is its exponent vector in the fixed generator order; that
//! vector is the canonical form. Signs only appear when two monomials are
//! multiplied and the odd generators have to be shuffled back into order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{rat, Rational};

/// A graded generator of V. Its index is its position in the generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over the generators. Odd generators have exponent 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n_generators: usize) -> Self {
        Monomial(vec![0; n_generators])
    }

    pub fn generator(n_generators: usize, index: usize) -> Self {
        let mut e = vec![0; n_generators];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    /// Number of generator factors.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn n_generators(&self) -> usize {
        self.0.len()
    }

    /// The monomial with generator `index` removed from the variable list.
    /// The exponent of that generator must be zero.
    pub fn drop_generator(&self, index: usize) -> Monomial {
        debug_assert_eq!(self.0[index], 0);
        let mut e = self.0.clone();
        e.remove(index);
        Monomial(e)
    }

    /// The monomial with a new generator inserted at `index` with exponent `exp`.
    pub fn insert_generator(&self, index: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e.insert(index, exp);
        Monomial(e)
    }

    pub(crate) fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[index] = exp;
        Monomial(e)
    }
}

/// A finite ℚ-linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn term(monomial: Monomial, coefficient: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(monomial, coefficient);
        p
    }

    pub fn constant(n_generators: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n_generators), c)
    }

    pub fn generator(n_generators: usize, index: usize) -> Self {
        Self::term(Monomial::generator(n_generators, index), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, monomial: Monomial, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in other.terms() {
            self.add_term(m.clone(), factor * c);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_scaled(factor, self);
        p
    }

    pub fn neg(&self) -> Polynomial {
        self.scaled(&rat(-1))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(&rat(-1), other);
        p
    }

    pub fn plus(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    /// Smallest word length among the terms.
    pub fn min_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).min()
    }

    pub fn max_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).max()
    }

    /// Keeps only the terms of word length at most `n` (the projection onto
    /// ΛV / Λ^{>n} V).
    pub fn truncate_length(&self, n: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in self.terms() {
            p.add_term(f(m), c.clone());
        }
        p
    }
}

/// A derivation of ΛV: its values on generators, extended by the graded
/// Leibniz rule `D(ab) = D(a) b + (-1)^{shift·|a|} a D(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub shift: i32,
    pub values: Vec<Polynomial>,
}

impl Derivation {
    pub fn zero(shift: i32, n_generators: usize) -> Self {
        Derivation {
            shift,
            values: vec![Polynomial::zero(); n_generators],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }
}

/// The free graded-commutative algebra on an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
}

impl FreeAlgebra {
    pub fn new(generators: Vec<Generator>) -> Self {
        FreeAlgebra { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_odd(&self, index: usize) -> bool {
        self.generators[index].is_odd()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Degree of a polynomial whose terms all share one degree; `None` for
    /// zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<u32> {
        let mut degrees = p.terms().map(|(m, _)| self.degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.len(), Rational::one())
    }

    pub fn gen(&self, index: usize) -> Polynomial {
        Polynomial::generator(self.len(), index)
    }

    /// Sign picked up when the product `a·b` is rewritten in canonical order,
    /// or 0 when the product vanishes because an odd generator repeats.
    pub fn koszul_sign(&self, a: &Monomial, b: &Monomial) -> i32 {
        let mut odd_in_b_before = 0u32;
        let mut swaps = 0u32;
        for (i, g) in self.generators.iter().enumerate() {
            if !g.is_odd() {
                continue;
            }
            let (ea, eb) = (a.exponent(i), b.exponent(i));
            if ea > 0 && eb > 0 {
                return 0;
            }
            if ea > 0 {
                swaps += odd_in_b_before;
            }
            if eb > 0 {
                odd_in_b_before += 1;
            }
        }
        if swaps.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Product of two monomials as `(sign, canonical monomial)`, or `None`
    /// when it vanishes.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(i32, Monomial)> {
        let sign = self.koszul_sign(a, b);
        if sign == 0 {
            return None;
        }
        let exps = a.exponents().iter().zip(b.exponents()).map(|(x, y)| x + y).collect();
        Some((sign, Monomial(exps)))
    }

    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((sign, m)) = self.multiply_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn power(&self, p: &Polynomial, exp: u32) -> Polynomial {
        let mut out = self.one();
        for _ in 0..exp {
            out = self.multiply(&out, p);
        }
        out
    }

    /// Applies a derivation, monomial by monomial.
    ///
    /// For `m = A · g^e · B` (generators before, at and after position `g`),
    /// the contribution of `g` is `(-1)^{shift·|A|} A · e D(g) g^{e-1} · B`.
    pub fn apply_derivation(&self, d: &Derivation, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let dm = self.derive_monomial(d, m);
            out.add_scaled(c, &dm);
        }
        out
    }

    fn derive_monomial(&self, d: &Derivation, m: &Monomial) -> Polynomial {
        let n = self.len();
        let mut out = Polynomial::zero();
        let mut prefix_degree = 0u32;
        for (j, g) in self.generators.iter().enumerate() {
            let e = m.exponent(j);
            if e == 0 {
                continue;
            }
            if !d.values[j].is_zero() {
                let mut before = Monomial::one(n);
                let mut after = Monomial::one(n);
                for i in 0..n {
                    if i < j {
                        before.0[i] = m.exponent(i);
                    } else if i > j {
                        after.0[i] = m.exponent(i);
                    }
                }
                let mut middle = Polynomial::zero();
                let rest = Monomial::one(n).with_exponent(j, e - 1);
                for (vm, vc) in d.values[j].terms() {
                    if let Some((s, prod)) = self.multiply_monomials(vm, &rest) {
                        middle.add_term(prod, vc * rat(i64::from(s) * i64::from(e)));
                    }
                }
                let left = self.multiply(&Polynomial::term(before, Rational::one()), &middle);
                let full = self.multiply(&left, &Polynomial::term(after, Rational::one()));
                let sign_odd = (i64::from(d.shift) * i64::from(prefix_degree)).rem_euclid(2) == 1;
                out.add_scaled(&rat(if sign_odd { -1 } else { 1 }), &full);
            }
            prefix_degree += e * g.degree;
        }
        out
    }

    /// All monomials of total degree `degree` (and word length at most
    /// `max_length` when given), in increasing lexicographic order of their
    /// exponent vectors.
    pub fn monomial_basis(&self, degree: u32, max_length: Option<u32>) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.len()];
        self.enumerate(0, degree, max_length.unwrap_or(u32::MAX), &mut current, &mut out);
        out
    }

    /// Monomials of total degree `degree` and word length exactly `length`.
    pub fn monomial_basis_of_length(&self, degree: u32, length: u32) -> Vec<Monomial> {
        self.monomial_basis(degree, Some(length))
            .into_iter()
            .filter(|m| m.word_length() == length)
            .collect()
    }

    fn enumerate(
        &self,
        index: usize,
        remaining: u32,
        length_left: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if index == self.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let g = &self.generators[index];
        let mut max_exp = remaining / g.degree;
        if g.is_odd() {
            max_exp = max_exp.min(1);
        }
        max_exp = max_exp.min(length_left);
        for e in 0..=max_exp {
            current[index] = e;
            self.enumerate(index + 1, remaining - e * g.degree, length_left - e, current, out);
        }
        current[index] = 0;
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (g, &e) in self.generators.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }

    /// Renders a polynomial in the model-file syntax.
    pub fn display(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = self.display_monomial(m);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{abs}*{body}"));
            }
        }
        out
    }
}

/// `Display` adapter pairing a polynomial with its algebra.
pub struct Shown<'a>(pub &'a FreeAlgebra, pub &'a Polynomial);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display(self.1))
    }
}
