//! Finite rings given by addition and multiplication tables, including the
//! integers mod `n` and endomorphism rings of finite abelian groups.

use num_integer::gcd;
use serde::Deserialize;

use crate::error::{GammaError, Result};

/// Largest ring the workbench materialises tables for.
pub const MAX_RING_SIZE: usize = 1024;

/// Rings up to this size have their axioms checked exhaustively on construction.
const MAX_VALIDATED_SIZE: usize = 256;

pub const RING_FORMAT: &str = "gammaring.ring/1";

/// A finite ring with materialised tables.
///
/// Elements are indices `0..size`; `names[i]` is the canonical name of element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    names: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDocument {
    format: String,
    name: Option<String>,
    elements: Vec<String>,
    zero: String,
    one: String,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
}

impl FiniteRing {
    /// Builds a ring from row-major tables, checking the ring axioms.
    pub fn from_tables(
        name: impl Into<String>,
        names: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: u32,
        one: u32,
    ) -> Result<Self> {
        let ring = FiniteRing::assemble(name.into(), names, add, mul, zero, one)?;
        if ring.size() > MAX_VALIDATED_SIZE {
            return Err(GammaError::input(format!(
                "ring tables of size {} exceed the validation limit {MAX_VALIDATED_SIZE}",
                ring.size()
            )));
        }
        ring.validate()?;
        Ok(ring)
    }

    fn assemble(
        name: String,
        names: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: u32,
        one: u32,
    ) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(GammaError::input("a ring needs at least one element"));
        }
        if size > MAX_RING_SIZE {
            return Err(GammaError::input(format!(
                "ring of size {size} exceeds the limit {MAX_RING_SIZE}"
            )));
        }
        for (label, table) in [("addition", &add), ("multiplication", &mul)] {
            if table.len() != size * size {
                return Err(GammaError::input(format!(
                    "{label} table has {} entries, expected {}",
                    table.len(),
                    size * size
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
                return Err(GammaError::input(format!(
                    "{label} table entry {bad} out of range"
                )));
            }
        }
        if zero as usize >= size || one as usize >= size {
            return Err(GammaError::input("zero/one index out of range"));
        }
        let mut neg = vec![u32::MAX; size];
        for a in 0..size {
            if let Some(b) = (0..size).find(|&b| add[a * size + b] == zero) {
                neg[a] = b as u32;
            } else {
                return Err(GammaError::input(format!(
                    "element {} has no additive inverse",
                    names[a]
                )));
            }
        }
        Ok(FiniteRing {
            name,
            names,
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    fn validate(&self) -> Result<()> {
        let n = self.size() as u32;
        let fail = |what: &str, els: &[u32]| {
            let names: Vec<&str> = els.iter().map(|&e| self.name_of(e)).collect();
            Err(GammaError::input(format!(
                "ring {}: {what} fails at {names:?}",
                self.name
            )))
        };
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", &[a]);
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return fail("multiplicative identity", &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("commutativity of addition", &[a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("associativity of addition", &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity of multiplication", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("left distributivity", &[a, b, c]);
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return fail("right distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses a ring document (TOML).
    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: RingDocument =
            toml::from_str(text).map_err(|e| GammaError::input(format!("ring file: {e}")))?;
        if doc.format != RING_FORMAT {
            return Err(GammaError::input(format!(
                "ring file format {:?}, expected {RING_FORMAT:?}",
                doc.format
            )));
        }
        let index = |name: &str| -> Result<u32> {
            doc.elements
                .iter()
                .position(|e| e == name)
                .map(|i| i as u32)
                .ok_or_else(|| GammaError::input(format!("unknown ring element {name:?}")))
        };
        let (zero, one) = (index(&doc.zero)?, index(&doc.one)?);
        let flatten = |label: &str, rows: &[Vec<u32>]| -> Result<Vec<u32>> {
            if rows.len() != doc.elements.len()
                || rows.iter().any(|r| r.len() != doc.elements.len())
            {
                return Err(GammaError::input(format!(
                    "{label} table must be {0}x{0}",
                    doc.elements.len()
                )));
            }
            Ok(rows.concat())
        };
        let add = flatten("add", &doc.add)?;
        let mul = flatten("mul", &doc.mul)?;
        FiniteRing::from_tables(
            doc.name.unwrap_or_else(|| "ring".to_string()),
            doc.elements.clone(),
            add,
            mul,
            zero,
            one,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn name_of(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// `k · 1`.
    pub fn from_integer(&self, k: i64) -> u32 {
        let mut acc = self.zero;
        let mut base = self.one;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            e >>= 1;
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, a: u32) -> Option<u32> {
        (0..self.size() as u32).find(|&b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }

    /// The additive table, row-major.
    pub fn addition_table(&self) -> &[u32] {
        &self.add
    }

    pub fn multiplication_table(&self) -> &[u32] {
        &self.mul
    }
}

/// The integers mod `n`, element `i` being the residue `i`.
pub fn zmod(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(GammaError::input(format!(
            "hmod:{n}: modulus must be at least 2"
        )));
    }
    if n as usize > MAX_RING_SIZE {
        return Err(GammaError::input(format!(
            "modulus {n} exceeds the limit {MAX_RING_SIZE}"
        )));
    }
    let size = n as usize;
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u32);
            mul.push(((a * b) % n) as u32);
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    let ring = FiniteRing::assemble(format!("Z/{n}"), names, add, mul, 0, 1 % n as u32)?;
    if size <= MAX_VALIDATED_SIZE / 4 {
        ring.validate()?;
    }
    Ok(ring)
}

/// The endomorphism ring of `X = Z/d_1 ⊕ ... ⊕ Z/d_t`.
///
/// An endomorphism is a `t×t` matrix whose entry `(a, b)` is the image in
/// `Z/d_a` of the generator of `Z/d_b`; it is a multiple of `d_a / gcd(d_a, d_b)`.
/// Entries are stored as residues in `0..d_a` and elements are listed in
/// row-major lexicographic order of `entry / (d_a / gcd(d_a, d_b))`, so that for
/// `t = 1` element `i` is multiplication by `i`. Product is composition: `(MN)x = M(Nx)`.
pub fn end_ring(orders: &[u64]) -> Result<FiniteRing> {
    if orders.is_empty() {
        return Err(GammaError::input("end: needs at least one cyclic factor"));
    }
    if let Some(d) = orders.iter().find(|&&d| d < 2) {
        return Err(GammaError::input(format!(
            "end: cyclic order {d} must be at least 2"
        )));
    }
    let t = orders.len();
    // step[a][b] is the generator of the allowed subgroup, radix[a][b] its order
    let mut step = vec![0u64; t * t];
    let mut radix = vec![0u64; t * t];
    let mut size: u128 = 1;
    for a in 0..t {
        for b in 0..t {
            let g = gcd(orders[a], orders[b]);
            step[a * t + b] = orders[a] / g;
            radix[a * t + b] = g;
            size *= g as u128;
            if size > MAX_RING_SIZE as u128 {
                return Err(GammaError::input(format!(
                    "End of {orders:?} has more than {MAX_RING_SIZE} elements"
                )));
            }
        }
    }
    let size = size as usize;
    let decode = |mut idx: usize| -> Vec<u64> {
        let mut entries = vec![0u64; t * t];
        for p in (0..t * t).rev() {
            let r = radix[p] as usize;
            entries[p] = (idx % r) as u64 * step[p];
            idx /= r;
        }
        entries
    };
    let encode = |entries: &[u64]| -> u32 {
        let mut idx = 0usize;
        for p in 0..t * t {
            debug_assert_eq!(entries[p] % step[p], 0, "entry outside the hom group");
            idx = idx * radix[p] as usize + (entries[p] / step[p]) as usize;
        }
        idx as u32
    };
    let matrices: Vec<Vec<u64>> = (0..size).map(decode).collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for m in &matrices {
        for n in &matrices {
            let sum: Vec<u64> = (0..t * t).map(|p| (m[p] + n[p]) % orders[p / t]).collect();
            add.push(encode(&sum));
            let prod: Vec<u64> = (0..t * t)
                .map(|p| {
                    let (a, b) = (p / t, p % t);
                    (0..t).map(|c| m[a * t + c] * n[c * t + b]).sum::<u64>() % orders[a]
                })
                .collect();
            mul.push(encode(&prod));
        }
    }
    let identity: Vec<u64> = (0..t * t).map(|p| u64::from(p / t == p % t)).collect();
    let names = matrices
        .iter()
        .map(|m| {
            if t == 1 {
                m[0].to_string()
            } else {
                let rows: Vec<String> = m
                    .chunks(t)
                    .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("({})", rows.join(";"))
            }
        })
        .collect();
    let label = orders
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let ring = FiniteRing::assemble(
        format!("End({label})"),
        names,
        add,
        mul,
        0,
        encode(&identity),
    )?;
    if size <= MAX_VALIDATED_SIZE / 4 {
        ring.validate()?;
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_ring_sizes() {
        assert_eq!(end_ring(&[2]).unwrap().size(), 2);
        assert_eq!(end_ring(&[2, 2]).unwrap().size(), 16);
        assert_eq!(end_ring(&[4]).unwrap().size(), 4);
        assert_eq!(end_ring(&[6]).unwrap().size(), 6);
        // Hom(Z/2, Z/4) = Z/2 both ways, End(Z/2) = Z/2, End(Z/4) = Z/4
        assert_eq!(end_ring(&[2, 4]).unwrap().size(), 2 * 2 * 2 * 4);
        assert!(end_ring(&[1]).is_err());
        assert!(end_ring(&[]).is_err());
        assert!(end_ring(&[7, 7, 7]).is_err());
    }

    #[test]
    fn end_of_cyclic_is_zmod() {
        for d in [2u64, 3, 4, 5, 6] {
            let e = end_ring(&[d]).unwrap();
            let z = zmod(d).unwrap();
            assert_eq!(e.addition_table(), z.addition_table());
            assert_eq!(e.multiplication_table(), z.multiplication_table());
            assert_eq!(e.one(), z.one());
        }
    }

    #[test]
    fn end_2_2_units_are_gl2() {
        let e = end_ring(&[2, 2]).unwrap();
        let units = (0..16).filter(|&a| e.inverse(a).is_some()).count();
        assert_eq!(units, 6);
        assert_eq!(e.name_of(e.one()), "(1 0;0 1)");
        // noncommutative
        let a = e.index_of("(1 1;0 1)").unwrap();
        let b = e.index_of("(1 0;1 1)").unwrap();
        assert_ne!(e.mul(a, b), e.mul(b, a));
    }

    #[test]
    fn end_mixed_orders_validate() {
        let e = end_ring(&[2, 4]).unwrap();
        e.validate().unwrap();
        assert_eq!(e.from_integer(-1), e.index_of("(1 0;0 3)").unwrap());
    }

    #[test]
    fn integer_images() {
        let z6 = zmod(6).unwrap();
        assert_eq!(z6.from_integer(4), 4);
        assert_eq!(z6.from_integer(-7), 5);
        assert_eq!(z6.from_integer(0), 0);
        let e3 = end_ring(&[3]).unwrap();
        assert_eq!(e3.from_integer(-1), 2);
    }

    #[test]
    fn toml_ring_round_trip_checks_axioms() {
        let f2 = r#"
format = "gammaring.ring/1"
name = "F2"
elements = ["0", "1"]
zero = "0"
one = "1"
add = [[0, 1], [1, 0]]
mul = [[0, 0], [0, 1]]
"#;
        let ring = FiniteRing::from_toml(f2).unwrap();
        assert_eq!(ring.size(), 2);
        let broken = f2.replace("mul = [[0, 0], [0, 1]]", "mul = [[0, 1], [1, 1]]");
        let err = FiniteRing::from_toml(&broken).unwrap_err();
        assert!(err.to_string().contains("identity") || err.to_string().contains("distributivity"));
        let bad_format = f2.replace("gammaring.ring/1", "other/1");
        assert!(FiniteRing::from_toml(&bad_format).is_err());
    }
}
