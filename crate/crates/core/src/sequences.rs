//! The long exact sequences obtained by splitting off a cocycle generator
//! `x₁`, with `ΛW = ΛV/(x₁)`.
//!
//! For odd `|x₁| = q` (Wang):
//! `H^{i−q}_{k−1}(ΛW) →j* H^i_k(ΛV) →p* H^i_k(ΛW) →θ* H^{i+1−q}_{k+l−2}(ΛW) → …`
//! where `θ` is the derivation with `dχ = d̄χ + x₁θ(χ)`.
//!
//! For even `|x₁| = q` (Gysin):
//! `H^{i−q}_{k−1}(ΛV) →·x₁ H^i_k(ΛV) →p* H^i_k(ΛW) →∂* H^{i+1−q}_{k+l−2}(ΛV) → …`
//! where `∂*[χ] = [χ']` for `dχ = x₁χ'`.
//!
//! Every (degree, length) position carries three groups, labelled A (the
//! shifted copy), B (`H(ΛV)`) and C (`H(ΛW)`), and the maps
//! `A(i,k) → B(i,k) → C(i,k) → A(i+1, k+l−1)`. The same sequence with the
//! length grading forgotten is checked alongside.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Derivation, Polynomial};
use crate::cohomology::{CohomologyEngine, CohomologyError, CohomologyGroup, Slot};
use crate::linalg::{kernel_basis, rank, Echelon, RatMatrix, Rational};
use crate::model::{LengthProfile, ModelError, SullivanModel};
use crate::toomer::{require_elliptic, ToomerError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("the differential must have homogeneous length, found {0}")]
    NotHomogeneous(LengthProfile),
    #[error("`{name}` has degree {degree}; the {kind:?} sequence needs an {expected} generator")]
    WrongParity {
        name: String,
        degree: u32,
        kind: SequenceKind,
        expected: &'static str,
    },
    #[error("internal error: d of a lifted cocycle is not divisible by the first generator")]
    NotDivisible,
    #[error("image of a class left its target slot: {0}")]
    Bookkeeping(CohomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    Wang,
    Gysin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Position {
    A,
    B,
    C,
}

/// Where the sequence is checked: `0 ≤ i ≤ max_degree`, `0 ≤ k ≤ max_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub max_degree: u32,
    pub max_length: u32,
}

/// A group of the sequence that may lie outside the nonnegative quadrant.
#[derive(Clone)]
struct Node {
    group: Option<Arc<CohomologyGroup>>,
}

impl Node {
    fn dim(&self) -> usize {
        self.group.as_ref().map_or(0, |g| g.dim())
    }

    fn representatives(&self) -> Vec<Polynomial> {
        self.group.as_ref().map_or_else(Vec::new, |g| g.representatives())
    }

    fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>, SequenceError> {
        match &self.group {
            Some(g) => g.coordinates(p).map_err(SequenceError::Bookkeeping),
            None if p.is_zero() => Ok(Vec::new()),
            None => Err(SequenceError::Bookkeeping(CohomologyError::WrongSlot {
                degree: 0,
                length: None,
            })),
        }
    }
}

/// The data of one long exact sequence, with groups computed on demand.
pub struct Les {
    kind: SequenceKind,
    generator: String,
    generator_degree: u32,
    length: u32,
    total: CohomologyEngine,
    quotient: CohomologyEngine,
    theta: Option<Derivation>,
}

fn shifted(slot: Slot, degree: u32, length: u32) -> Option<Slot> {
    Some(Slot {
        degree: slot.degree.checked_sub(degree)?,
        length: match slot.length {
            Some(k) => Some(k.checked_sub(length)?),
            None => None,
        },
    })
}

fn prepare(model: &SullivanModel, generator: &str) -> Result<(SullivanModel, u32), SequenceError> {
    let profile = model.length_profile();
    let l = match profile {
        LengthProfile::Homogeneous(l) => l,
        LengthProfile::Zero => 2,
        LengthProfile::BoundedBelow(_) => return Err(SequenceError::NotHomogeneous(profile)),
    };
    let index = model.index_of(generator)?;
    Ok((model.with_first(index)?, l))
}

/// The Wang sequence for an odd cocycle generator.
pub fn build_wang(model: &SullivanModel, generator: &str) -> Result<Les, SequenceError> {
    let (total, l) = prepare(model, generator)?;
    let x1 = total.generators()[0].clone();
    if !x1.is_odd() {
        return Err(SequenceError::WrongParity {
            name: x1.name,
            degree: x1.degree,
            kind: SequenceKind::Wang,
            expected: "odd",
        });
    }
    let theta = total.wang_derivation(0)?;
    let quotient = total.quotient_model(0)?;
    Ok(Les {
        kind: SequenceKind::Wang,
        generator: x1.name,
        generator_degree: x1.degree,
        length: l,
        quotient: CohomologyEngine::with_grading(quotient, l)?,
        total: CohomologyEngine::with_grading(total, l)?,
        theta: Some(theta),
    })
}

/// The Gysin sequence for an even cocycle generator.
pub fn build_gysin(model: &SullivanModel, generator: &str) -> Result<Les, SequenceError> {
    let (total, l) = prepare(model, generator)?;
    let x1 = total.generators()[0].clone();
    if x1.is_odd() {
        return Err(SequenceError::WrongParity {
            name: x1.name,
            degree: x1.degree,
            kind: SequenceKind::Gysin,
            expected: "even",
        });
    }
    let quotient = total.quotient_model(0)?;
    Ok(Les {
        kind: SequenceKind::Gysin,
        generator: x1.name,
        generator_degree: x1.degree,
        length: l,
        quotient: CohomologyEngine::with_grading(quotient, l)?,
        total: CohomologyEngine::with_grading(total, l)?,
        theta: None,
    })
}

/// Every applicable sequence of a model: one per cocycle generator.
pub fn build_all(model: &SullivanModel) -> Result<Vec<Les>, SequenceError> {
    model
        .cocycle_generators()
        .into_iter()
        .map(|i| {
            let g = &model.generators()[i];
            if g.is_odd() {
                build_wang(model, &g.name)
            } else {
                build_gysin(model, &g.name)
            }
        })
        .collect()
}

impl Les {
    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    /// `ΛV` with `x₁` moved to the front.
    pub fn total(&self) -> &CohomologyEngine {
        &self.total
    }

    /// `ΛW = ΛV/(x₁)`.
    pub fn quotient(&self) -> &CohomologyEngine {
        &self.quotient
    }

    pub fn theta(&self) -> Option<&Derivation> {
        self.theta.as_ref()
    }

    /// Replace `θ(v)` by `−θ(v)` for one generator `v` of `ΛW`. Used as a
    /// negative control: the resulting maps need not form an exact sequence.
    pub fn corrupt_theta(&mut self, generator: usize) {
        if let Some(theta) = &mut self.theta {
            theta.values[generator] = theta.values[generator].neg();
        }
    }

    fn node(&self, position: Position, slot: Slot) -> Result<Node, SequenceError> {
        let group = match position {
            Position::A => {
                let engine = match self.kind {
                    SequenceKind::Wang => &self.quotient,
                    SequenceKind::Gysin => &self.total,
                };
                match shifted(slot, self.generator_degree, 1) {
                    Some(s) => Some(engine.group(s)?),
                    None => None,
                }
            }
            Position::B => Some(self.total.group(slot)?),
            Position::C => Some(self.quotient.group(slot)?),
        };
        Ok(Node { group })
    }

    /// Position reached by the connecting map from `slot`.
    fn after(&self, slot: Slot) -> Slot {
        Slot {
            degree: slot.degree + 1,
            length: slot.length.map(|k| k + self.length - 1),
        }
    }

    /// Position whose connecting map lands in `slot`.
    fn before(&self, slot: Slot) -> Option<Slot> {
        Some(Slot {
            degree: slot.degree.checked_sub(1)?,
            length: match slot.length {
                Some(k) => Some(k.checked_sub(self.length - 1)?),
                None => None,
            },
        })
    }

    fn image_matrix(
        &self,
        source: &Node,
        target: &Node,
        map: impl Fn(&Polynomial) -> Result<Polynomial, SequenceError>,
    ) -> Result<RatMatrix, SequenceError> {
        let columns = source
            .representatives()
            .iter()
            .map(|p| target.coordinates(&map(p)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatMatrix::from_columns(target.dim(), &columns))
    }

    fn j(&self, chi: &Polynomial) -> Polynomial {
        let v = self.total.model();
        let x1 = v.gen(0);
        match self.kind {
            SequenceKind::Wang => {
                let lifted = v.lift_from_quotient(chi);
                let degree = v.algebra().homogeneous_degree(&lifted).unwrap_or(0);
                let product = v.multiply(&x1, &lifted);
                if degree % 2 == 1 {
                    product.neg()
                } else {
                    product
                }
            }
            SequenceKind::Gysin => v.multiply(&x1, chi),
        }
    }

    fn p(&self, chi: &Polynomial) -> Polynomial {
        self.total.model().project_to_quotient(chi)
    }

    fn delta(&self, chi: &Polynomial) -> Result<Polynomial, SequenceError> {
        match self.kind {
            SequenceKind::Wang => {
                let theta = self.theta.as_ref().expect("Wang sequences carry θ");
                Ok(self.quotient.model().algebra().apply_derivation(theta, chi))
            }
            SequenceKind::Gysin => {
                let v = self.total.model();
                let d = v.d(&v.lift_from_quotient(chi));
                let mut out = Polynomial::zero();
                for (m, c) in d.terms() {
                    let e = m.exponent(0);
                    if e == 0 {
                        return Err(SequenceError::NotDivisible);
                    }
                    out.add_term(m.with_exponent(0, e - 1), c.clone());
                }
                Ok(out)
            }
        }
    }

    /// `j*: A(slot) → B(slot)`.
    pub fn j_matrix(&self, slot: Slot) -> Result<RatMatrix, SequenceError> {
        let (a, b) = (self.node(Position::A, slot)?, self.node(Position::B, slot)?);
        self.image_matrix(&a, &b, |p| Ok(self.j(p)))
    }

    /// `p*: B(slot) → C(slot)`.
    pub fn p_matrix(&self, slot: Slot) -> Result<RatMatrix, SequenceError> {
        let (b, c) = (self.node(Position::B, slot)?, self.node(Position::C, slot)?);
        self.image_matrix(&b, &c, |p| Ok(self.p(p)))
    }

    /// The connecting map `C(slot) → A(next slot)`: `θ*` or `∂*`.
    pub fn connecting_matrix(&self, slot: Slot) -> Result<RatMatrix, SequenceError> {
        let c = self.node(Position::C, slot)?;
        let a = self.node(Position::A, self.after(slot))?;
        self.image_matrix(&c, &a, |p| self.delta(p))
    }

    fn incoming(&self, position: Position, slot: Slot) -> Result<(RatMatrix, Node), SequenceError> {
        Ok(match position {
            Position::A => match self.before(slot) {
                Some(prev) => (self.connecting_matrix(prev)?, self.node(Position::C, prev)?),
                None => {
                    let dim = self.node(Position::A, slot)?.dim();
                    (RatMatrix::zeros(dim, 0), Node { group: None })
                }
            },
            Position::B => (self.j_matrix(slot)?, self.node(Position::A, slot)?),
            Position::C => (self.p_matrix(slot)?, self.node(Position::B, slot)?),
        })
    }

    fn outgoing(&self, position: Position, slot: Slot) -> Result<RatMatrix, SequenceError> {
        match position {
            Position::A => self.j_matrix(slot),
            Position::B => self.p_matrix(slot),
            Position::C => self.connecting_matrix(slot),
        }
    }

    fn label(&self, position: Position, slot: Slot) -> String {
        let (space, shift) = match (position, self.kind) {
            (Position::A, SequenceKind::Wang) => ("ΛW", true),
            (Position::A, SequenceKind::Gysin) => ("ΛV", true),
            (Position::B, _) => ("ΛV", false),
            (Position::C, _) => ("ΛW", false),
        };
        let (i, k) = if shift {
            (
                slot.degree as i64 - self.generator_degree as i64,
                slot.length.map(|k| k as i64 - 1),
            )
        } else {
            (slot.degree as i64, slot.length.map(i64::from))
        };
        match k {
            Some(k) => format!("H^{i}_{k}({space})"),
            None => format!("H^{i}({space})"),
        }
    }

    /// Check exactness at one group.
    pub fn check_node(&self, position: Position, slot: Slot) -> Result<NodeReport, SequenceError> {
        let node = self.node(position, slot)?;
        let (incoming, source) = self.incoming(position, slot)?;
        let outgoing = self.outgoing(position, slot)?;
        let dimension = node.dim();
        let rank_in = rank(&incoming);
        let rank_out = rank(&outgoing);
        let composite = outgoing.mul(&incoming).expect("composable");
        let composite_zero = composite.is_zero();
        let exact = composite_zero && rank_in + rank_out == dimension;
        let witness = if exact {
            None
        } else if !composite_zero {
            let col = (0..composite.cols())
                .find(|&c| composite.column(c).iter().any(|x| !x.is_zero()))
                .expect("nonzero composite has a nonzero column");
            Some(Witness {
                kind: WitnessKind::CompositeNonzero,
                class: self.display(position_before(position), &source.representatives()[col]),
                coordinates: unit(source.dim(), col),
            })
        } else {
            let image = Echelon::from_vectors(dimension, &(0..incoming.cols()).map(|c| incoming.column(c)).collect::<Vec<_>>());
            kernel_basis(&outgoing)
                .into_iter()
                .find(|v| !image.contains(v))
                .map(|v| Witness {
                    kind: WitnessKind::KernelNotImage,
                    class: self.display(
                        position,
                        &node
                            .group
                            .as_ref()
                            .map_or_else(Polynomial::zero, |g| g.class_polynomial(&v)),
                    ),
                    coordinates: v.iter().map(|x| x.to_string()).collect(),
                })
        };
        Ok(NodeReport {
            position,
            degree: slot.degree,
            length: slot.length,
            group: self.label(position, slot),
            dimension,
            rank_in,
            rank_out,
            composite_zero,
            exact,
            witness,
        })
    }

    fn display(&self, position: Position, p: &Polynomial) -> String {
        let engine = match (position, self.kind) {
            (Position::A, SequenceKind::Wang) | (Position::C, _) => &self.quotient,
            _ => &self.total,
        };
        engine.model().algebra().display(p)
    }

    /// The window used by default: `i ≤ N + |x₁| + 1`, `k ≤ e + l`, where `N`
    /// and `e` come from the closed formulas for `ΛV`.
    pub fn default_window(&self) -> Window {
        let model = self.total.model();
        let n = model.formal_dimension_formula().max(0) as u32;
        let e = model.length_formula(self.length).max(0) as u32;
        Window {
            max_degree: n + self.generator_degree + 1,
            max_length: e + self.length,
        }
    }

    /// Exactness at every group of the window, graded and ungraded.
    pub fn check_exactness(&self, window: Option<Window>) -> Result<LesReport, SequenceError> {
        let window = window.unwrap_or_else(|| self.default_window());
        let mut nodes = Vec::new();
        for i in 0..=window.max_degree {
            for k in 0..=window.max_length {
                for position in [Position::A, Position::B, Position::C] {
                    nodes.push(self.check_node(position, Slot::bigraded(i, k))?);
                }
            }
        }
        let mut ungraded = Vec::new();
        for i in 0..=window.max_degree {
            for position in [Position::A, Position::B, Position::C] {
                ungraded.push(self.check_node(position, Slot::ungraded(i))?);
            }
        }
        let exact = nodes.iter().chain(&ungraded).all(|n| n.exact);
        Ok(LesReport {
            kind: self.kind,
            generator: self.generator.clone(),
            generator_degree: self.generator_degree,
            length: self.length,
            window,
            exact,
            nodes,
            ungraded,
        })
    }

    /// `N = M + q` for odd `q = |x₁|`, `N = M − q + 1` for even `q`, with
    /// `N` and `M` the certified formal dimensions of `ΛV` and `ΛW`.
    pub fn formal_dimension_relation(&self) -> Result<FormalDimensionRelation, ToomerError> {
        let n = require_elliptic(&self.total)?;
        let m = require_elliptic(&self.quotient)?;
        let q = self.generator_degree as i64;
        let expected = match self.kind {
            SequenceKind::Wang => m as i64 + q,
            SequenceKind::Gysin => m as i64 - q + 1,
        };
        Ok(FormalDimensionRelation {
            total: n,
            quotient: m,
            expected,
            holds: n as i64 == expected,
        })
    }

    /// The top-degree isomorphisms: `j*: H^M_k(ΛW) → H^N_{k+1}(ΛV)` for
    /// Wang and `∂*: H^M_k(ΛW) → H^N_{k+l−2}(ΛV)` for Gysin, for every k.
    pub fn top_isomorphisms(&self) -> Result<bool, SequenceError> {
        let m = match require_elliptic(&self.quotient) {
            Ok(m) => m,
            Err(ToomerError::Cohomology(e)) => return Err(e.into()),
            Err(_) => return Ok(false),
        };
        let top_length = m / self.quotient.model().min_degree().unwrap_or(1).max(1) + 1;
        for k in 0..=top_length {
            let (matrix, source_dim, target_dim) = match self.kind {
                SequenceKind::Wang => {
                    let slot = Slot::bigraded(m + self.generator_degree, k + 1);
                    let matrix = self.j_matrix(slot)?;
                    (matrix, self.node(Position::A, slot)?.dim(), self.node(Position::B, slot)?.dim())
                }
                SequenceKind::Gysin => {
                    let slot = Slot::bigraded(m, k);
                    let matrix = self.connecting_matrix(slot)?;
                    let target = self.node(Position::A, self.after(slot))?.dim();
                    (matrix, self.node(Position::C, slot)?.dim(), target)
                }
            };
            if source_dim != target_dim || rank(&matrix) != source_dim {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn position_before(position: Position) -> Position {
    match position {
        Position::A => Position::C,
        Position::B => Position::A,
        Position::C => Position::B,
    }
}

fn unit(n: usize, i: usize) -> Vec<String> {
    (0..n)
        .map(|j| if i == j { Rational::one() } else { Rational::zero() }.to_string())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// A class whose image under two consecutive maps is nonzero.
    CompositeNonzero,
    /// A class killed by the outgoing map but not hit by the incoming one.
    KernelNotImage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub class: String,
    /// Coordinates in the representative basis of the group.
    pub coordinates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub position: Position,
    pub degree: u32,
    pub length: Option<u32>,
    pub group: String,
    pub dimension: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub kind: SequenceKind,
    pub generator: String,
    pub generator_degree: u32,
    pub length: u32,
    pub window: Window,
    pub exact: bool,
    pub nodes: Vec<NodeReport>,
    pub ungraded: Vec<NodeReport>,
}

impl LesReport {
    pub fn failures(&self) -> impl Iterator<Item = &NodeReport> {
        self.nodes.iter().chain(&self.ungraded).filter(|n| !n.exact)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalDimensionRelation {
    pub total: u32,
    pub quotient: u32,
    pub expected: i64,
    pub holds: bool,
}
