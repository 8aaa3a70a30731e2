//! The sphere `S`, the identity Γ-space: `S[n] = [n]`.

use rand::{Rng, RngCore};

use super::{expect_level, foreign, CarrierSize, Element, ElementView, GammaRing, Payload};
use crate::error::{GammaError, Result};
use crate::skeleton::{colex, PointedMap};

#[derive(Debug, Clone, Copy, Default)]
pub struct SphereModel;

impl SphereModel {
    pub fn point(&self, level: usize, i: usize) -> Element {
        debug_assert!(i <= level);
        Element::new(level, Payload::Point(i))
    }

    fn position(&self, x: &Element) -> Result<usize> {
        match x.payload() {
            Payload::Point(i) => Ok(*i),
            _ => Err(foreign(self, x)),
        }
    }
}

impl GammaRing for SphereModel {
    fn name(&self) -> &str {
        "sphere"
    }

    fn carrier_size(&self, n: usize) -> CarrierSize {
        CarrierSize::Finite(n as u128 + 1)
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Element>> {
        Ok((0..=n).map(|i| self.point(n, i)).collect())
    }

    fn basepoint(&self, n: usize) -> Element {
        self.point(n, 0)
    }

    fn unit(&self) -> Element {
        self.point(1, 1)
    }

    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element> {
        expect_level(x, f.source())?;
        Ok(self.point(f.target(), f.apply(self.position(x)?)))
    }

    fn mult(&self, x: &Element, y: &Element) -> Result<Element> {
        let (i, j) = (self.position(x)?, self.position(y)?);
        let level = x.level() * y.level();
        Ok(if i == 0 || j == 0 {
            self.basepoint(level)
        } else {
            self.point(level, colex(x.level(), i, j))
        })
    }

    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element> {
        let level =
            level.ok_or_else(|| GammaError::input("sphere literals need an explicit level"))?;
        let trimmed = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        let i: usize = trimmed.parse().map_err(|_| {
            GammaError::input(format!("expected a point of [{level}], got {text:?}"))
        })?;
        if i > level {
            return Err(GammaError::input(format!("point {i} outside [{level}]")));
        }
        Ok(self.point(level, i))
    }

    fn view(&self, x: &Element) -> ElementView {
        let i = self.position(x).unwrap_or(0);
        ElementView {
            level: x.level(),
            text: i.to_string(),
            values: None,
            indices: Some(vec![i as u64]),
        }
    }

    fn random_element(&self, n: usize, _bound: i64, rng: &mut dyn RngCore) -> Element {
        self.point(n, rng.gen_range(0..=n))
    }
}
