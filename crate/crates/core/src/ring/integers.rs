//! The Eilenberg–MacLane models `HN` and `HZ`: `R[k]` is the reduced free
//! commutative monoid (resp. abelian group) on `[k]`, i.e. `k`-vectors of
//! naturals (resp. integers).

use rand::{Rng, RngCore};

use super::{
    expect_level, foreign, parse_integers, CarrierSize, Element, ElementView, GammaRing, Payload,
};
use crate::error::{GammaError, Result};
use crate::skeleton::{colex, PointedMap};

/// Bounded vectors are only materialised up to this many; callers sample beyond.
pub const GENERATED_LIMIT: u128 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerModel {
    natural: bool,
}

impl IntegerModel {
    pub fn hn() -> Self {
        IntegerModel { natural: true }
    }

    pub fn hz() -> Self {
        IntegerModel { natural: false }
    }

    pub fn is_natural(&self) -> bool {
        self.natural
    }

    fn entries<'a>(&self, x: &'a Element) -> Result<&'a [i64]> {
        match x.payload() {
            Payload::Integers(v) => Ok(v),
            _ => Err(foreign(self, x)),
        }
    }

    fn lower(&self, bound: i64) -> i64 {
        if self.natural {
            0
        } else {
            -bound
        }
    }
}

impl GammaRing for IntegerModel {
    fn name(&self) -> &str {
        if self.natural {
            "hn"
        } else {
            "hz"
        }
    }

    fn carrier_size(&self, n: usize) -> CarrierSize {
        if n == 0 {
            CarrierSize::Finite(1)
        } else {
            CarrierSize::Unbounded
        }
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Element>> {
        if n == 0 {
            return Ok(vec![self.basepoint(0)]);
        }
        Err(GammaError::unsupported(format!(
            "{} has an infinite carrier at level {n}",
            self.name()
        )))
    }

    fn basepoint(&self, n: usize) -> Element {
        Element::integers(vec![0; n])
    }

    fn unit(&self) -> Element {
        Element::integers(vec![1])
    }

    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element> {
        expect_level(x, f.source())?;
        let entries = self.entries(x)?;
        let mut out = vec![0i64; f.target()];
        for (i, &v) in entries.iter().enumerate() {
            let t = f.apply(i + 1);
            if t != 0 {
                out[t - 1] = out[t - 1]
                    .checked_add(v)
                    .ok_or(GammaError::Overflow("fibre sum"))?;
            }
        }
        Ok(Element::integers(out))
    }

    fn mult(&self, x: &Element, y: &Element) -> Result<Element> {
        let (a, b) = (self.entries(x)?, self.entries(y)?);
        let n = a.len();
        let mut out = vec![0i64; n * b.len()];
        for (j, &bj) in b.iter().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                out[colex(n, i + 1, j + 1) - 1] = ai
                    .checked_mul(bj)
                    .ok_or(GammaError::Overflow("outer product"))?;
            }
        }
        Ok(Element::integers(out))
    }

    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element> {
        let values = parse_integers(text)?;
        if let Some(level) = level {
            if values.len() != level {
                return Err(GammaError::LevelMismatch {
                    expected: level,
                    found: values.len(),
                });
            }
        }
        if self.natural && values.iter().any(|&v| v < 0) {
            return Err(GammaError::input(format!(
                "hn entries must be non-negative: {text}"
            )));
        }
        Ok(Element::integers(values))
    }

    fn view(&self, x: &Element) -> ElementView {
        let values = self.entries(x).map(<[i64]>::to_vec).unwrap_or_default();
        let text = format!(
            "[{}]",
            values
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        ElementView {
            level: x.level(),
            text,
            values: Some(values),
            indices: None,
        }
    }

    fn generated_elements(&self, n: usize, bound: i64) -> Result<Vec<Element>> {
        let lo = self.lower(bound);
        let width = (bound - lo + 1) as u128;
        let total = width
            .checked_pow(n as u32)
            .filter(|&t| t <= GENERATED_LIMIT)
            .ok_or_else(|| {
                GammaError::unsupported(format!(
                    "{} generated elements at level {n} with bound {bound} exceed the limit",
                    self.name()
                ))
            })?;
        let mut out = Vec::with_capacity(total as usize);
        let mut current = vec![lo; n];
        loop {
            out.push(Element::integers(current.clone()));
            let Some(pos) = current.iter().position(|&v| v < bound) else {
                return Ok(out);
            };
            for v in &mut current[..pos] {
                *v = lo;
            }
            current[pos] += 1;
        }
    }

    fn random_element(&self, n: usize, bound: i64, rng: &mut dyn RngCore) -> Element {
        let lo = self.lower(bound);
        Element::integers((0..n).map(|_| rng.gen_range(lo..=bound)).collect())
    }

    fn scalar_vector(&self, values: &[i64]) -> Option<Result<Element>> {
        if self.natural && values.iter().any(|&v| v < 0) {
            return Some(Err(GammaError::input("hn has no negative scalars")));
        }
        Some(Ok(Element::integers(values.to_vec())))
    }

    fn is_ring_model(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::power;

    #[test]
    fn fibre_sum_examples() {
        let hz = IntegerModel::hz();
        let p21 = PointedMap::restriction(2, 1).unwrap();
        let got = hz.induce(&p21, &Element::integers(vec![3, 5])).unwrap();
        assert_eq!(got, Element::integers(vec![5]));

        let hn = IntegerModel::hn();
        let s = PointedMap::summing(2, 1, 2, 1).unwrap();
        let got = hn.induce(&s, &Element::integers(vec![2, 3])).unwrap();
        assert_eq!(got, Element::integers(vec![5]));
    }

    #[test]
    fn outer_product_is_colex() {
        let hz = IntegerModel::hz();
        let r = Element::integers(vec![1, -1]);
        assert_eq!(
            hz.mult(&r, &r).unwrap(),
            Element::integers(vec![1, -1, -1, 1])
        );
        assert_eq!(
            power(&hz, &r, 2).unwrap(),
            Element::integers(vec![1, -1, -1, 1])
        );
        let x = Element::integers(vec![1, 2]);
        let y = Element::integers(vec![10, 20, 30]);
        assert_eq!(
            hz.mult(&x, &y).unwrap(),
            Element::integers(vec![10, 20, 20, 40, 30, 60])
        );
    }

    #[test]
    fn overflow_is_an_error() {
        let hz = IntegerModel::hz();
        let big = Element::integers(vec![i64::MAX, 1]);
        let s = PointedMap::summing(2, 1, 2, 1).unwrap();
        assert_eq!(hz.induce(&s, &big), Err(GammaError::Overflow("fibre sum")));
        let two = Element::integers(vec![2]);
        assert!(hz.mult(&big, &two).is_err());
    }

    #[test]
    fn generated_counts() {
        assert_eq!(
            IntegerModel::hz().generated_elements(3, 3).unwrap().len(),
            343
        );
        assert_eq!(
            IntegerModel::hn().generated_elements(2, 3).unwrap().len(),
            16
        );
        assert_eq!(
            IntegerModel::hz().generated_elements(0, 3).unwrap().len(),
            1
        );
    }

    #[test]
    fn parse_checks_sign_and_level() {
        let hn = IntegerModel::hn();
        assert!(hn.parse_element(Some(2), "[1,-1]").is_err());
        assert!(IntegerModel::hz().parse_element(Some(3), "[1,-1]").is_err());
        assert_eq!(
            IntegerModel::hz().parse_element(None, "[1,-1]").unwrap(),
            Element::integers(vec![1, -1])
        );
    }
}
