//! Discrete Γ-rings presented levelwise: a pointed carrier `R[n]` for every
//! level, the action of pointed maps, a unit in `R[1]` and products
//! `R[n] ∧ R[m] -> R[nm]` placed by the colexicographic smash identification.

use std::fmt;
use std::sync::Arc;

use rand::RngCore;
use serde::Serialize;

use crate::error::{GammaError, Result};
use crate::skeleton::{Generator, PointedMap};

pub mod axioms;
pub mod finite_ring;
pub mod integers;
pub mod monoid;
pub mod ring_model;
pub mod spec;
pub mod sphere;
pub mod table;

pub use axioms::{check_axioms, AxiomConfig, AxiomMode};
pub use finite_ring::{end_ring, zmod, FiniteRing};
pub use integers::IntegerModel;
pub use monoid::{Monoid, MonoidModel};
pub use ring_model::RingModel;
pub use spec::{make_model, ModelSpec};
pub use sphere::SphereModel;
pub use table::{load_table_model, TableDocument, TableModel};

/// The model-specific content of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// `hn` / `hz`: one integer per nonbasepoint point.
    Integers(Vec<i64>),
    /// Ring models: indices into the ring's element list.
    Ring(Vec<u32>),
    /// Monoid models: `None` is the basepoint, otherwise (monoid element, position).
    Monoid(Option<(u32, usize)>),
    /// The sphere: a point of `[n]`.
    Point(usize),
    /// Table models: a carrier index, `0` being the basepoint.
    Cell(u32),
}

/// A member of the carrier `R[level]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    level: usize,
    payload: Payload,
}

impl Element {
    pub fn new(level: usize, payload: Payload) -> Self {
        Element { level, payload }
    }

    /// An `hn`/`hz` vector.
    pub fn integers(values: Vec<i64>) -> Self {
        Element {
            level: values.len(),
            payload: Payload::Integers(values),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }
}

/// How large `R[n]` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarrierSize {
    Finite(u128),
    /// Finite, but too large to count in 128 bits.
    Huge,
    Unbounded,
    /// Beyond the levels a bounded model defines.
    OutOfRange,
}

impl CarrierSize {
    pub fn finite(self) -> Option<u128> {
        match self {
            CarrierSize::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, CarrierSize::Finite(_) | CarrierSize::Huge)
    }
}

/// A serialisable rendering of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementView {
    pub level: usize,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<u64>>,
}

/// A discrete Γ-ring.
///
/// Implementations must be functorial in the pointed map argument of
/// [`GammaRing::induce`], natural and associative in [`GammaRing::mult`] and
/// unital; [`check_axioms`] verifies all of this on bounded data.
pub trait GammaRing: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;

    /// Highest level the model can compute at, if bounded.
    fn max_level(&self) -> Option<usize> {
        None
    }

    fn carrier_size(&self, n: usize) -> CarrierSize;

    /// All elements of `R[n]`, basepoint first.
    fn enumerate(&self, n: usize) -> Result<Vec<Element>>;

    fn basepoint(&self, n: usize) -> Element;

    /// The image of `1 ∈ S[1]` under the unit.
    fn unit(&self) -> Element;

    /// The action of `f : [n] -> [m]` on `x ∈ R[n]`.
    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element>;

    /// The product `R[n] ∧ R[m] -> R[nm]`.
    fn mult(&self, x: &Element, y: &Element) -> Result<Element>;

    /// Reads an element literal at the given level (or at the level implied by
    /// the literal when `level` is `None`).
    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element>;

    fn view(&self, x: &Element) -> ElementView;

    /// Elements used for checks when `R[n]` cannot be enumerated: for `hn`/`hz`
    /// the vectors with entries bounded by `bound`. Finite models return
    /// their full carrier.
    fn generated_elements(&self, n: usize, bound: i64) -> Result<Vec<Element>> {
        let _ = bound;
        self.enumerate(n)
    }

    /// A pseudo-random element of `R[n]`; `bound` limits unbounded payloads.
    fn random_element(&self, n: usize, bound: i64, rng: &mut dyn RngCore) -> Element;

    /// The image of an integer vector under the unique unital ring map
    /// `Z -> R[1]`, applied coordinatewise. `None` for models that are not
    /// linear over a ring.
    fn scalar_vector(&self, values: &[i64]) -> Option<Result<Element>> {
        let _ = values;
        None
    }

    /// Whether `R[2]` is determined by the two coordinates of a ring vector,
    /// so that the first law condition forces a unique candidate.
    fn is_ring_model(&self) -> bool {
        false
    }

    /// For table-backed models, the stored action of a generator on `x`
    /// (which [`GammaRing::induce`] only consults through factorisations).
    fn tabulated_action(&self, g: &Generator, x: &Element) -> Option<Result<Element>> {
        let _ = (g, x);
        None
    }

    fn render(&self, x: &Element) -> String {
        self.view(x).text
    }
}

pub type Model = Arc<dyn GammaRing>;

pub(crate) fn expect_level(x: &Element, level: usize) -> Result<()> {
    if x.level != level {
        return Err(GammaError::LevelMismatch {
            expected: level,
            found: x.level,
        });
    }
    Ok(())
}

pub(crate) fn check_bound(model: &dyn GammaRing, level: usize) -> Result<()> {
    match model.max_level() {
        Some(max) if level > max => Err(GammaError::LevelOverflow { level, max }),
        _ => Ok(()),
    }
}

pub(crate) fn foreign(model: &dyn GammaRing, x: &Element) -> GammaError {
    GammaError::input(format!(
        "element {:?} does not belong to model {}",
        x.payload,
        model.name()
    ))
}

pub fn induce(model: &dyn GammaRing, f: &PointedMap, x: &Element) -> Result<Element> {
    model.induce(f, x)
}

pub fn mult(model: &dyn GammaRing, x: &Element, y: &Element) -> Result<Element> {
    model.mult(x, y)
}

/// Left-associated power `((x x) x) ...`; `power(x, 0)` is the unit.
pub fn power(model: &dyn GammaRing, x: &Element, k: u32) -> Result<Element> {
    if k == 0 {
        return Ok(model.unit());
    }
    let level = x
        .level
        .checked_pow(k)
        .ok_or(GammaError::Overflow("power level"))?;
    check_bound(model, level)?;
    let mut acc = x.clone();
    for _ in 1..k {
        acc = model.mult(&acc, x)?;
    }
    Ok(acc)
}

/// Parses a bracketed list of comma-separated items, e.g. `[1,-1]`.
pub(crate) fn split_list(text: &str) -> Result<Vec<&str>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| GammaError::input(format!("expected a bracketed list, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

pub(crate) fn parse_integers(text: &str) -> Result<Vec<i64>> {
    split_list(text)?
        .into_iter()
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| GammaError::input(format!("not an integer: {s:?}")))
        })
        .collect()
}
