//! `H(E)` for a finite ring `E`: `R[k] = E^k`, maps act by summing over
//! fibres and the product of `x ∈ R[n]`, `y ∈ R[m]` is the outer product
//! `x_i · y_j` placed at the colexicographic position of `(i, j)`.
//!
//! With `E = End(X)` for a finite abelian group `X` this is the endomorphism
//! Γ-ring of `X` in finite abelian groups: `Hom(X, X^k) = End(X)^k`, and the
//! composition product `(f ∧ [l]) ∘ g` has components `f_i ∘ g_j`.

use std::sync::Arc;

use rand::{Rng, RngCore};

use super::finite_ring::FiniteRing;
use super::{
    expect_level, foreign, split_list, CarrierSize, Element, ElementView, GammaRing, Payload,
};
use crate::error::{GammaError, Result};
use crate::skeleton::{colex, PointedMap};

/// Enumeration refuses carriers larger than this.
const MAX_ENUMERATION: u128 = 1 << 22;

#[derive(Debug, Clone)]
pub struct RingModel {
    name: String,
    ring: Arc<FiniteRing>,
}

impl RingModel {
    pub fn new(name: impl Into<String>, ring: FiniteRing) -> Self {
        RingModel {
            name: name.into(),
            ring: Arc::new(ring),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    fn entries<'a>(&self, x: &'a Element) -> Result<&'a [u32]> {
        match x.payload() {
            Payload::Ring(v) => Ok(v),
            _ => Err(foreign(self, x)),
        }
    }

    pub fn element(&self, entries: Vec<u32>) -> Element {
        Element::new(entries.len(), Payload::Ring(entries))
    }

    fn parse_item(&self, item: &str) -> Result<u32> {
        if let Ok(k) = item.parse::<i64>() {
            if self.ring.index_of(item).is_none() {
                return Ok(self.ring.from_integer(k));
            }
        }
        self.ring.index_of(item).ok_or_else(|| {
            GammaError::input(format!("unknown element {item:?} of {}", self.ring.name()))
        })
    }
}

impl GammaRing for RingModel {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier_size(&self, n: usize) -> CarrierSize {
        match (self.ring.size() as u128).checked_pow(n as u32) {
            Some(s) => CarrierSize::Finite(s),
            None => CarrierSize::Huge,
        }
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Element>> {
        let total = self
            .carrier_size(n)
            .finite()
            .filter(|&t| t <= MAX_ENUMERATION)
            .ok_or_else(|| {
                GammaError::unsupported(format!("{}: R[{n}] is too large to enumerate", self.name))
            })?;
        let zero = self.ring.zero();
        let order: Vec<u32> = std::iter::once(zero)
            .chain((0..self.ring.size() as u32).filter(|&e| e != zero))
            .collect();
        let size = order.len();
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0usize; n];
        loop {
            out.push(self.element(digits.iter().map(|&d| order[d]).collect()));
            let Some(pos) = digits.iter().position(|&d| d + 1 < size) else {
                return Ok(out);
            };
            for d in &mut digits[..pos] {
                *d = 0;
            }
            digits[pos] += 1;
        }
    }

    fn basepoint(&self, n: usize) -> Element {
        self.element(vec![self.ring.zero(); n])
    }

    fn unit(&self) -> Element {
        self.element(vec![self.ring.one()])
    }

    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element> {
        expect_level(x, f.source())?;
        let entries = self.entries(x)?;
        let mut out = vec![self.ring.zero(); f.target()];
        for (i, &v) in entries.iter().enumerate() {
            let t = f.apply(i + 1);
            if t != 0 {
                out[t - 1] = self.ring.add(out[t - 1], v);
            }
        }
        Ok(self.element(out))
    }

    fn mult(&self, x: &Element, y: &Element) -> Result<Element> {
        let (a, b) = (self.entries(x)?, self.entries(y)?);
        let n = a.len();
        let mut out = vec![self.ring.zero(); n * b.len()];
        for (j, &bj) in b.iter().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                out[colex(n, i + 1, j + 1) - 1] = self.ring.mul(ai, bj);
            }
        }
        Ok(self.element(out))
    }

    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element> {
        let entries = split_list(text)?
            .into_iter()
            .map(|item| self.parse_item(item))
            .collect::<Result<Vec<u32>>>()?;
        if let Some(level) = level {
            if entries.len() != level {
                return Err(GammaError::LevelMismatch {
                    expected: level,
                    found: entries.len(),
                });
            }
        }
        Ok(self.element(entries))
    }

    fn view(&self, x: &Element) -> ElementView {
        let entries = self.entries(x).map(<[u32]>::to_vec).unwrap_or_default();
        let names: Vec<&str> = entries.iter().map(|&e| self.ring.name_of(e)).collect();
        ElementView {
            level: x.level(),
            text: format!("[{}]", names.join(",")),
            values: None,
            indices: Some(entries.iter().map(|&e| u64::from(e)).collect()),
        }
    }

    fn random_element(&self, n: usize, _bound: i64, rng: &mut dyn RngCore) -> Element {
        let size = self.ring.size() as u32;
        self.element((0..n).map(|_| rng.gen_range(0..size)).collect())
    }

    fn scalar_vector(&self, values: &[i64]) -> Option<Result<Element>> {
        Some(Ok(self.element(
            values.iter().map(|&k| self.ring.from_integer(k)).collect(),
        )))
    }

    fn is_ring_model(&self) -> bool {
        true
    }
}
