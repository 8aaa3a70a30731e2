//! The monoid Γ-ring of a finite monoid `M`: `R[k] = M × {1..k}` plus a
//! basepoint, maps relabel the position, and `(m, i) · (m', j) = (m m', i ∧ j)`.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::{expect_level, foreign, CarrierSize, Element, ElementView, GammaRing, Payload};
use crate::error::{GammaError, Result};
use crate::skeleton::{colex, PointedMap};

pub const MONOID_FORMAT: &str = "gammaring.monoid/1";

/// A finite monoid with a materialised multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    names: Vec<String>,
    table: Vec<u32>,
    unit: u32,
}

/// On-disk form of a monoid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDocument {
    pub format: String,
    pub elements: Vec<String>,
    pub unit: String,
    /// `table[a][b]` is the name of `a · b`.
    pub table: Vec<Vec<String>>,
}

impl Monoid {
    pub fn new(names: Vec<String>, table: Vec<u32>, unit: u32) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(GammaError::input("a monoid needs at least one element"));
        }
        if table.len() != size * size || table.iter().any(|&v| v as usize >= size) {
            return Err(GammaError::input(format!(
                "monoid table must be {size}x{size} with valid entries"
            )));
        }
        if unit as usize >= size {
            return Err(GammaError::input("monoid unit out of range"));
        }
        let monoid = Monoid { names, table, unit };
        let n = size as u32;
        for a in 0..n {
            if monoid.mul(a, unit) != a || monoid.mul(unit, a) != a {
                return Err(GammaError::input(format!(
                    "monoid unit law fails at {}",
                    monoid.names[a as usize]
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if monoid.mul(monoid.mul(a, b), c) != monoid.mul(a, monoid.mul(b, c)) {
                        return Err(GammaError::input(format!(
                            "monoid associativity fails at ({}, {}, {})",
                            monoid.names[a as usize],
                            monoid.names[b as usize],
                            monoid.names[c as usize]
                        )));
                    }
                }
            }
        }
        Ok(monoid)
    }

    /// The two-element group `{1, m}` written multiplicatively.
    pub fn cyclic_two() -> Self {
        Monoid::new(vec!["1".into(), "m".into()], vec![0, 1, 1, 0], 0).expect("Z/2 is a monoid")
    }

    pub fn from_document(doc: &MonoidDocument) -> Result<Self> {
        if doc.format != MONOID_FORMAT {
            return Err(GammaError::input(format!(
                "monoid file format {:?}, expected {MONOID_FORMAT:?}",
                doc.format
            )));
        }
        let index = |name: &str| -> Result<u32> {
            doc.elements
                .iter()
                .position(|e| e == name)
                .map(|i| i as u32)
                .ok_or_else(|| GammaError::input(format!("unknown monoid element {name:?}")))
        };
        let size = doc.elements.len();
        if doc.table.len() != size || doc.table.iter().any(|row| row.len() != size) {
            return Err(GammaError::input(format!(
                "monoid table must be {size}x{size}"
            )));
        }
        let table = doc
            .table
            .iter()
            .flatten()
            .map(|name| index(name))
            .collect::<Result<Vec<_>>>()?;
        Monoid::new(doc.elements.clone(), table, index(&doc.unit)?)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: MonoidDocument =
            toml::from_str(text).map_err(|e| GammaError::input(format!("monoid file: {e}")))?;
        Monoid::from_document(&doc)
    }

    pub fn to_document(&self) -> MonoidDocument {
        let size = self.size();
        MonoidDocument {
            format: MONOID_FORMAT.to_string(),
            elements: self.names.clone(),
            unit: self.names[self.unit as usize].clone(),
            table: (0..size)
                .map(|a| {
                    (0..size)
                        .map(|b| self.names[self.table[a * size + b] as usize].clone())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.size() + b as usize]
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn name_of(&self, a: u32) -> &str {
        &self.names[a as usize]
    }
}

#[derive(Debug, Clone)]
pub struct MonoidModel {
    name: String,
    monoid: Monoid,
}

impl MonoidModel {
    pub fn new(name: impl Into<String>, monoid: Monoid) -> Self {
        MonoidModel {
            name: name.into(),
            monoid,
        }
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    /// The element `(m, position)` of `R[level]`.
    pub fn element(&self, level: usize, m: u32, position: usize) -> Element {
        Element::new(level, Payload::Monoid(Some((m, position))))
    }

    fn cell(&self, x: &Element) -> Result<Option<(u32, usize)>> {
        match x.payload() {
            Payload::Monoid(c) => Ok(*c),
            _ => Err(foreign(self, x)),
        }
    }
}

impl GammaRing for MonoidModel {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier_size(&self, n: usize) -> CarrierSize {
        CarrierSize::Finite(1 + (self.monoid.size() * n) as u128)
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Element>> {
        let mut out = vec![self.basepoint(n)];
        for position in 1..=n {
            for m in 0..self.monoid.size() as u32 {
                out.push(self.element(n, m, position));
            }
        }
        Ok(out)
    }

    fn basepoint(&self, n: usize) -> Element {
        Element::new(n, Payload::Monoid(None))
    }

    fn unit(&self) -> Element {
        self.element(1, self.monoid.unit(), 1)
    }

    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element> {
        expect_level(x, f.source())?;
        Ok(match self.cell(x)? {
            Some((m, i)) if f.apply(i) != 0 => self.element(f.target(), m, f.apply(i)),
            _ => self.basepoint(f.target()),
        })
    }

    fn mult(&self, x: &Element, y: &Element) -> Result<Element> {
        let level = x.level() * y.level();
        Ok(match (self.cell(x)?, self.cell(y)?) {
            (Some((a, i)), Some((b, j))) => {
                self.element(level, self.monoid.mul(a, b), colex(x.level(), i, j))
            }
            _ => self.basepoint(level),
        })
    }

    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element> {
        let level = level
            .ok_or_else(|| GammaError::input("monoid element literals need an explicit level"))?;
        let text = text.trim();
        if text == "*" {
            return Ok(self.basepoint(level));
        }
        let (name, pos) = text.split_once('@').ok_or_else(|| {
            GammaError::input(format!("expected `name@position` or `*`, got {text:?}"))
        })?;
        let m = self
            .monoid
            .index_of(name.trim())
            .ok_or_else(|| GammaError::input(format!("unknown monoid element {name:?}")))?;
        let position: usize = pos
            .trim()
            .parse()
            .map_err(|_| GammaError::input(format!("bad position {pos:?}")))?;
        if position == 0 || position > level {
            return Err(GammaError::input(format!(
                "position {position} outside 1..={level}"
            )));
        }
        Ok(self.element(level, m, position))
    }

    fn view(&self, x: &Element) -> ElementView {
        let (text, indices) = match self.cell(x) {
            Ok(Some((m, i))) => (
                format!("{}@{}", self.monoid.name_of(m), i),
                Some(vec![u64::from(m), i as u64]),
            ),
            _ => ("*".to_string(), None),
        };
        ElementView {
            level: x.level(),
            text,
            values: None,
            indices,
        }
    }

    fn random_element(&self, n: usize, _bound: i64, rng: &mut dyn RngCore) -> Element {
        let choices = self.monoid.size() * n;
        let pick = rng.gen_range(0..=choices);
        if pick == 0 {
            self.basepoint(n)
        } else {
            let m = ((pick - 1) % self.monoid.size()) as u32;
            self.element(n, m, (pick - 1) / self.monoid.size() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_example() {
        let model = MonoidModel::new("monoid", Monoid::cyclic_two());
        let m = model.monoid().index_of("m").unwrap();
        let x = model.element(2, m, 1);
        let y = model.element(2, m, 2);
        assert_eq!(model.mult(&x, &y).unwrap(), model.element(4, 0, 3));
    }

    #[test]
    fn document_round_trip() {
        let monoid = Monoid::cyclic_two();
        let text = toml::to_string(&monoid.to_document()).unwrap();
        assert_eq!(Monoid::from_toml(&text).unwrap(), monoid);
    }

    #[test]
    fn rejects_non_monoids() {
        // left zero semigroup without unit
        let doc = MonoidDocument {
            format: MONOID_FORMAT.into(),
            elements: vec!["a".into(), "b".into()],
            unit: "a".into(),
            table: vec![vec!["a".into(), "a".into()], vec!["b".into(), "b".into()]],
        };
        assert!(Monoid::from_document(&doc).is_err());
    }

    #[test]
    fn parse_and_render() {
        let model = MonoidModel::new("monoid", Monoid::cyclic_two());
        let x = model.parse_element(Some(2), "m@2").unwrap();
        assert_eq!(model.render(&x), "m@2");
        assert_eq!(
            model.parse_element(Some(2), "*").unwrap(),
            model.basepoint(2)
        );
        assert!(model.parse_element(Some(2), "m@3").is_err());
        assert!(model.parse_element(None, "m@1").is_err());
        assert_eq!(model.enumerate(2).unwrap().len(), 5);
    }
}
