//! Finite pointed sets `[n] = {0, 1, ..., n}` with basepoint `0` and the
//! basepoint-preserving maps between them.
//!
//! Besides general maps this module provides the named generators (adjacent
//! transpositions, restrictions, summing maps and degeneracies), the smash
//! product of maps under the colexicographic identification `[n] ∧ [m] = [nm]`,
//! the parity splitting of `[2^k]` and the special permutations that act on the
//! two parity classes separately.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GammaError, Result};

/// A basepoint-preserving map `[source] -> [target]`.
///
/// `images[i - 1]` is the image of `i`; the image of `0` is always `0`.
/// Permutations are stored as pointed maps as well.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMap {
    source: usize,
    target: usize,
    images: Vec<usize>,
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] {:?}", self.source, self.target, self.images)
    }
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PointedMap {
    /// Builds a map `[images.len()] -> [target]`.
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|&&v| v > target) {
            return Err(GammaError::input(format!(
                "image {bad} does not lie in [{target}]"
            )));
        }
        Ok(PointedMap {
            source: images.len(),
            target,
            images,
        })
    }

    pub(crate) fn from_parts_unchecked(target: usize, images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&v| v <= target));
        PointedMap {
            source: images.len(),
            target,
            images,
        }
    }

    pub fn identity(n: usize) -> Self {
        PointedMap::from_parts_unchecked(n, (1..=n).collect())
    }

    /// The constant map onto the basepoint.
    pub fn zero(n: usize, m: usize) -> Self {
        PointedMap::from_parts_unchecked(m, vec![0; n])
    }

    /// The inclusion `[1] -> [n]` sending `1` to `i`.
    pub fn inclusion(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(GammaError::input(format!(
                "inclusion point {i} not in 1..={n}"
            )));
        }
        Ok(PointedMap::from_parts_unchecked(n, vec![i]))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Value at `i`; `0` maps to `0`.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PointedMap) -> Result<PointedMap> {
        if inner.target != self.source {
            return Err(GammaError::LevelMismatch {
                expected: self.source,
                found: inner.target,
            });
        }
        Ok(PointedMap::from_parts_unchecked(
            self.target,
            inner.images.iter().map(|&v| self.apply(v)).collect(),
        ))
    }

    pub fn is_bijection(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let mut seen = vec![false; self.source + 1];
        for &v in &self.images {
            if v == 0 || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// The inverse of a permutation.
    pub fn inverse(&self) -> Result<PointedMap> {
        if !self.is_bijection() {
            return Err(GammaError::input("map is not a permutation"));
        }
        let mut inv = vec![0; self.source];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Ok(PointedMap::from_parts_unchecked(self.source, inv))
    }

    /// The restriction `p^n_i : [n] -> [n-1]`, killing `i` and closing the gap.
    pub fn restriction(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(GammaError::input(format!(
                "restriction p{n}_{i}: need 1 <= i <= n"
            )));
        }
        let images = (1..=n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => j,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => j - 1,
            })
            .collect();
        Ok(PointedMap::from_parts_unchecked(n - 1, images))
    }

    /// The summing map `s^n_{i,j,k} : [n] -> [n-1]`: `i` and `j` go to `k`, the
    /// other points go order-preservingly onto `[n-1] \ {k}`.
    pub fn summing(n: usize, i: usize, j: usize, k: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= n) || k == 0 || k > n - 1 {
            return Err(GammaError::input(format!(
                "summing s{n}_({i},{j},{k}): need 1 <= i < j <= n and 1 <= k <= n-1"
            )));
        }
        let mut rest = (1..n).filter(|&v| v != k);
        let images = (1..=n)
            .map(|a| {
                if a == i || a == j {
                    k
                } else {
                    rest.next().expect("n-2 remaining targets")
                }
            })
            .collect();
        Ok(PointedMap::from_parts_unchecked(n - 1, images))
    }

    /// The degeneracy `d^n_j : [n-1] -> [n]`, the order-preserving injection missing `j`.
    pub fn degeneracy(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(GammaError::input(format!(
                "degeneracy d{n}_{j}: need 1 <= j <= n"
            )));
        }
        let images = (1..n).map(|a| if a < j { a } else { a + 1 }).collect();
        Ok(PointedMap::from_parts_unchecked(n, images))
    }

    /// The adjacent transposition `t^n_i` swapping `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(GammaError::input(format!(
                "transposition t{n}_{i}: need 1 <= i < n"
            )));
        }
        PointedMap::swap(n, i, i + 1)
    }

    /// The transposition of `[n]` exchanging `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(GammaError::input(format!("swap ({a} {b}) outside 1..={n}")));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(PointedMap::from_parts_unchecked(n, images))
    }

    /// A permutation of `{1, ..., n}` given by its images.
    pub fn permutation(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let map = PointedMap::new(n, images)?;
        if !map.is_bijection() {
            return Err(GammaError::input(format!(
                "{:?} is not a permutation of 1..={n}",
                map.images
            )));
        }
        Ok(map)
    }

    /// `self ∧ other : [n m] -> [n' m']` under the colexicographic identification.
    pub fn smash(&self, other: &PointedMap) -> PointedMap {
        let (n, m) = (self.source, other.source);
        let n_out = self.target;
        let mut images = Vec::with_capacity(n * m);
        for j in 1..=m {
            for i in 1..=n {
                let (a, b) = (self.apply(i), other.apply(j));
                images.push(if a == 0 || b == 0 {
                    0
                } else {
                    colex(n_out, a, b)
                });
            }
        }
        PointedMap::from_parts_unchecked(self.target * other.target, images)
    }
}

/// Which named generator [`make_generator`] should build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Restriction,
    Summing,
    Degeneracy,
    Transposition,
    Permutation,
}

/// Builds a named generator at level `n`.
///
/// Parameters: restriction `[i]`, summing `[i, j, k]`, degeneracy `[j]`,
/// transposition `[i]` (swapping `i`, `i + 1`), permutation the `n` images.
pub fn make_generator(kind: GeneratorKind, n: usize, params: &[usize]) -> Result<PointedMap> {
    let want = |count: usize| {
        if params.len() == count {
            Ok(())
        } else {
            Err(GammaError::input(format!(
                "{kind:?} takes {count} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match kind {
        GeneratorKind::Restriction => {
            want(1)?;
            PointedMap::restriction(n, params[0])
        }
        GeneratorKind::Summing => {
            want(3)?;
            PointedMap::summing(n, params[0], params[1], params[2])
        }
        GeneratorKind::Degeneracy => {
            want(1)?;
            PointedMap::degeneracy(n, params[0])
        }
        GeneratorKind::Transposition => {
            want(1)?;
            PointedMap::transposition(n, params[0])
        }
        GeneratorKind::Permutation => {
            want(n)?;
            PointedMap::permutation(params.to_vec())
        }
    }
}

#[inline]
pub(crate) fn colex(n: usize, i: usize, j: usize) -> usize {
    (j - 1) * n + i
}

/// Position of the pair `(i, j)` in `[n] ∧ [m] = [nm]`: pairs are ordered by `j`
/// first, then by `i`.
pub fn smash_index(n: usize, m: usize, i: usize, j: usize) -> Result<usize> {
    if i == 0 || i > n || j == 0 || j > m {
        return Err(GammaError::input(format!(
            "smash index ({i}, {j}) outside [{n}] x [{m}]"
        )));
    }
    Ok(colex(n, i, j))
}

/// Inverse of [`smash_index`].
pub fn smash_coords(n: usize, m: usize, p: usize) -> Result<(usize, usize)> {
    if n == 0 || p == 0 || p > n * m {
        return Err(GammaError::input(format!(
            "position {p} outside [{n}] ∧ [{m}]"
        )));
    }
    Ok(((p - 1) % n + 1, (p - 1) / n + 1))
}

/// The splitting `[2^k] = A_+ ∨ A_-` by parity of the number of ones in the
/// binary expansion of `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySplit {
    pub k: u32,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl ParitySplit {
    pub fn is_plus(i: usize) -> bool {
        (i - 1).count_ones().is_multiple_of(2)
    }

    pub fn size(&self) -> usize {
        1 << self.k
    }
}

pub fn parity_split(k: u32) -> ParitySplit {
    let (plus, minus) = (1..=1usize << k).partition(|&i| ParitySplit::is_plus(i));
    ParitySplit { k, plus, minus }
}

/// The permutation of `[2^k]` acting by `a` on `A_+` and by `b` on `A_-`.
///
/// `a` and `b` are 1-based permutations of the positions in the ordered lists
/// `A_+` and `A_-`: the `t`-th element of `A_+` goes to the `a[t]`-th.
pub fn special_perm(k: u32, a: &[usize], b: &[usize]) -> Result<PointedMap> {
    if k == 0 {
        return Err(GammaError::input("special permutations need k >= 1"));
    }
    let split = parity_split(k);
    let a = PointedMap::permutation(a.to_vec())?;
    let b = PointedMap::permutation(b.to_vec())?;
    if a.source() != split.plus.len() || b.source() != split.minus.len() {
        return Err(GammaError::input(format!(
            "special permutation factors must permute {} points each",
            split.plus.len()
        )));
    }
    let mut images = vec![0; split.size()];
    for (t, &p) in split.plus.iter().enumerate() {
        images[p - 1] = split.plus[a.apply(t + 1) - 1];
    }
    for (t, &p) in split.minus.iter().enumerate() {
        images[p - 1] = split.minus[b.apply(t + 1) - 1];
    }
    Ok(PointedMap::from_parts_unchecked(split.size(), images))
}

/// Transpositions of neighbours within `A_+` and within `A_-`; together they
/// generate the special action group `Σ_{2^{k-1}} × Σ_{2^{k-1}}`.
pub fn special_generators(k: u32) -> Vec<PointedMap> {
    let split = parity_split(k);
    let n = split.size();
    let neighbours = |class: &[usize]| -> Vec<PointedMap> {
        class
            .windows(2)
            .map(|w| PointedMap::swap(n, w[0], w[1]).expect("positions lie in [2^k]"))
            .collect()
    };
    let mut gens = neighbours(&split.plus);
    gens.extend(neighbours(&split.minus));
    gens
}

/// All adjacent transpositions of `[n]`.
pub fn adjacent_transpositions(n: usize) -> Vec<PointedMap> {
    (1..n)
        .map(|i| PointedMap::transposition(n, i).expect("1 <= i < n"))
        .collect()
}

/// Closure of a set of permutations of `[n]` under composition.
pub fn group_closure(n: usize, generators: &[PointedMap]) -> Vec<PointedMap> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let id = PointedMap::identity(n);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g).expect("generators act on [n]");
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

/// All permutations of `[n]`, in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<PointedMap> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![PointedMap::from_parts_unchecked(n, current.clone())];
    loop {
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            return out;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot has a larger successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(PointedMap::from_parts_unchecked(n, current.clone()));
    }
}

/// The generators a [`GeneratorWord`] is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `t^n_i : [n] -> [n]`.
    Transposition { n: usize, i: usize },
    /// `p^n_i : [n] -> [n-1]`.
    Restriction { n: usize, i: usize },
    /// `s^n_{i,i+1,i} : [n] -> [n-1]`.
    Summing { n: usize, i: usize },
    /// `d^n_j : [n-1] -> [n]`.
    Degeneracy { n: usize, j: usize },
}

impl Generator {
    pub fn source(&self) -> usize {
        match *self {
            Generator::Transposition { n, .. }
            | Generator::Restriction { n, .. }
            | Generator::Summing { n, .. } => n,
            Generator::Degeneracy { n, .. } => n - 1,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Generator::Transposition { n, .. } | Generator::Degeneracy { n, .. } => n,
            Generator::Restriction { n, .. } | Generator::Summing { n, .. } => n - 1,
        }
    }

    pub fn to_map(&self) -> Result<PointedMap> {
        match *self {
            Generator::Transposition { n, i } => PointedMap::transposition(n, i),
            Generator::Restriction { n, i } => PointedMap::restriction(n, i),
            Generator::Summing { n, i } => PointedMap::summing(n, i, i + 1, i),
            Generator::Degeneracy { n, j } => PointedMap::degeneracy(n, j),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Transposition { n, i } => write!(f, "t{n}_{i}"),
            Generator::Restriction { n, i } => write!(f, "p{n}_{i}"),
            Generator::Summing { n, i } => write!(f, "s{n}_{i}"),
            Generator::Degeneracy { n, j } => write!(f, "d{n}_{j}"),
        }
    }
}

/// A factorisation of a pointed map into generators, listed in order of
/// application (the first generator is applied first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    source: usize,
    target: usize,
    steps: Vec<Generator>,
}

impl GeneratorWord {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn steps(&self) -> &[Generator] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Composes the generators.
    pub fn evaluate(&self) -> PointedMap {
        self.steps
            .iter()
            .fold(PointedMap::identity(self.source), |acc, g| {
                g.to_map()
                    .and_then(|m| m.compose(&acc))
                    .expect("words are composable by construction")
            })
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "id{}", self.source);
        }
        for (idx, g) in self.steps.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Factors `f` as transpositions, then adjacent summings, then restrictions,
/// then degeneracies.
///
/// The transpositions stably sort the domain by target with the `0`-fibre
/// last, so each nonzero fibre becomes a contiguous block.
pub fn factor_map(f: &PointedMap) -> GeneratorWord {
    let n = f.source();
    let m = f.target();
    let mut steps = Vec::new();

    // Rank of each original position after sorting by (is zero, target, position).
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&q| (f.apply(q) == 0, f.apply(q), q));
    let mut rank = vec![0; n + 1];
    for (r, &q) in order.iter().enumerate() {
        rank[q] = r + 1;
    }
    // Bubble sort the arrangement; every swap at (a, a+1) is the generator t^n_a.
    let mut arrangement: Vec<usize> = (1..=n).map(|q| rank[q]).collect();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for a in 0..n.saturating_sub(1) {
            if arrangement[a] > arrangement[a + 1] {
                arrangement.swap(a, a + 1);
                steps.push(Generator::Transposition { n, i: a + 1 });
                swapped = true;
            }
        }
    }

    // Sorted images, e.g. (1, 1, 2, 3, 3, 0, 0).
    let mut sorted: Vec<usize> = order.iter().map(|&q| f.apply(q)).collect();
    let mut level = n;
    let mut a = 0;
    while a + 1 < sorted.len() {
        if sorted[a] != 0 && sorted[a] == sorted[a + 1] {
            steps.push(Generator::Summing { n: level, i: a + 1 });
            sorted.remove(a + 1);
            level -= 1;
        } else {
            a += 1;
        }
    }
    while sorted.last() == Some(&0) {
        steps.push(Generator::Restriction { n: level, i: level });
        sorted.pop();
        level -= 1;
    }
    // `sorted` is now a strictly increasing injection [level] -> [m].
    let hit: BTreeSet<usize> = sorted.iter().copied().collect();
    for missed in (1..=m).filter(|t| !hit.contains(t)) {
        level += 1;
        steps.push(Generator::Degeneracy {
            n: level,
            j: missed,
        });
    }
    debug_assert_eq!(level, m);

    GeneratorWord {
        source: n,
        target: m,
        steps,
    }
}

/// Iterator over all `(m + 1)^n` maps `[n] -> [m]`.
pub struct AllMaps {
    target: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = PointedMap;

    fn next(&mut self) -> Option<PointedMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for v in succ.iter_mut() {
            if *v < self.target {
                *v += 1;
                carried = false;
                break;
            }
            *v = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(PointedMap::from_parts_unchecked(self.target, current))
    }
}

pub fn all_maps(n: usize, m: usize) -> AllMaps {
    AllMaps {
        target: m,
        next: Some(vec![0; n]),
    }
}

/// `count` maps `[n] -> [m]` drawn uniformly; deterministic in `seed`.
pub fn sample_maps(n: usize, m: usize, count: usize, seed: u64) -> Vec<PointedMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            PointedMap::from_parts_unchecked(m, (0..n).map(|_| rng.gen_range(0..=m)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(target: usize, images: &[usize]) -> PointedMap {
        PointedMap::new(target, images.to_vec()).unwrap()
    }

    #[test]
    fn named_generators() {
        assert_eq!(PointedMap::restriction(2, 1).unwrap(), map(1, &[0, 1]));
        assert_eq!(PointedMap::summing(2, 1, 2, 1).unwrap(), map(1, &[1, 1]));
        assert_eq!(PointedMap::summing(3, 1, 3, 2).unwrap(), map(2, &[2, 1, 2]));
        assert_eq!(PointedMap::degeneracy(3, 2).unwrap(), map(3, &[1, 3]));
        assert_eq!(PointedMap::degeneracy(2, 2).unwrap(), map(2, &[1]));
        assert_eq!(
            make_generator(GeneratorKind::Permutation, 3, &[2, 3, 1]).unwrap(),
            map(3, &[2, 3, 1])
        );
    }

    #[test]
    fn generator_parameter_errors() {
        assert!(PointedMap::restriction(2, 3).is_err());
        assert!(PointedMap::restriction(2, 0).is_err());
        assert!(PointedMap::summing(3, 2, 2, 1).is_err());
        assert!(PointedMap::summing(3, 1, 2, 3).is_err());
        assert!(PointedMap::degeneracy(2, 3).is_err());
        assert!(PointedMap::transposition(2, 2).is_err());
        assert!(make_generator(GeneratorKind::Permutation, 3, &[1, 1, 2]).is_err());
        assert!(make_generator(GeneratorKind::Summing, 3, &[1, 2]).is_err());
        assert!(PointedMap::new(1, vec![2]).is_err());
    }

    #[test]
    fn composition_examples() {
        let p21 = PointedMap::restriction(2, 1).unwrap();
        let p22 = PointedMap::restriction(2, 2).unwrap();
        let d21 = PointedMap::degeneracy(2, 1).unwrap();
        let d22 = PointedMap::degeneracy(2, 2).unwrap();
        assert_eq!(p22.compose(&d22).unwrap(), PointedMap::identity(1));
        assert_eq!(p21.compose(&d21).unwrap(), PointedMap::identity(1));
        // d^2_2 keeps 1 where p^2_1 kills it
        assert_eq!(p21.compose(&d22).unwrap(), PointedMap::zero(1, 1));

        let s = PointedMap::summing(2, 1, 2, 1).unwrap();
        assert!(matches!(
            p22.compose(&s),
            Err(GammaError::LevelMismatch {
                expected: 2,
                found: 1
            })
        ));

        let t = PointedMap::transposition(2, 1).unwrap();
        assert_eq!(s.compose(&t).unwrap(), s);
    }

    #[test]
    fn smash_index_examples() {
        assert_eq!(smash_index(2, 2, 1, 1).unwrap(), 1);
        assert_eq!(smash_index(2, 2, 2, 1).unwrap(), 2);
        assert_eq!(smash_index(2, 2, 1, 2).unwrap(), 3);
        assert_eq!(smash_index(2, 2, 2, 2).unwrap(), 4);
        assert!(smash_index(2, 2, 3, 1).is_err());
        assert_eq!(smash_coords(2, 2, 3).unwrap(), (1, 2));
    }

    #[test]
    fn smash_with_unit_factor() {
        let p22 = PointedMap::restriction(2, 2).unwrap();
        assert_eq!(p22.smash(&PointedMap::identity(1)), p22);
        assert_eq!(PointedMap::identity(1).smash(&p22), p22);
    }

    #[test]
    fn smash_index_is_bijective_and_associative() {
        for n in 1..=3 {
            for m in 1..=3 {
                let mut seen = BTreeSet::new();
                for i in 1..=n {
                    for j in 1..=m {
                        assert!(seen.insert(smash_index(n, m, i, j).unwrap()));
                    }
                }
                assert_eq!(seen, (1..=n * m).collect());
                for l in 1..=3 {
                    for i in 1..=n {
                        for j in 1..=m {
                            for k in 1..=l {
                                let left =
                                    smash_index(n * m, l, smash_index(n, m, i, j).unwrap(), k);
                                let right =
                                    smash_index(n, m * l, i, smash_index(m, l, j, k).unwrap());
                                assert_eq!(left.unwrap(), right.unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn smash_is_functorial() {
        let maps: Vec<Vec<PointedMap>> = (0..=2)
            .map(|n| (0..=2).flat_map(|m| all_maps(n, m)).collect())
            .collect();
        for f_in in maps.iter().flatten() {
            for f_out in maps[f_in.target()].iter() {
                for g_in in maps.iter().flatten().filter(|g| g.source() <= 2) {
                    for g_out in maps[g_in.target()].iter() {
                        let lhs = f_out
                            .compose(f_in)
                            .unwrap()
                            .smash(&g_out.compose(g_in).unwrap());
                        let rhs = f_out.smash(g_out).compose(&f_in.smash(g_in)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn parity_examples() {
        let s0 = parity_split(0);
        assert_eq!((s0.plus, s0.minus), (vec![1], vec![]));
        let s1 = parity_split(1);
        assert_eq!((s1.plus, s1.minus), (vec![1], vec![2]));
        let s2 = parity_split(2);
        assert_eq!((s2.plus, s2.minus), (vec![1, 4], vec![2, 3]));
    }

    #[test]
    fn parity_matches_even_subsets() {
        for k in 1..=5u32 {
            let split = parity_split(k);
            assert_eq!(split.plus.len(), 1 << (k - 1));
            assert_eq!(split.minus.len(), 1 << (k - 1));
            for i in 1..=split.size() {
                // i - 1 read as the indicator of a subset of {1..k}
                let order = (0..k).filter(|b| (i - 1) >> b & 1 == 1).count();
                assert_eq!(split.plus.contains(&i), order % 2 == 0);
                assert_ne!(split.plus.contains(&i), split.minus.contains(&i));
            }
        }
    }

    #[test]
    fn special_perm_examples() {
        assert_eq!(
            special_perm(2, &[2, 1], &[1, 2]).unwrap(),
            map(4, &[4, 2, 3, 1])
        );
        assert!(special_generators(1).is_empty());
        assert_eq!(special_generators(2).len(), 2);
        assert_eq!(special_generators(4).len(), 14);
        assert!(special_perm(2, &[1, 1], &[1, 2]).is_err());
        assert!(special_perm(2, &[1, 2, 3], &[1, 2]).is_err());
    }

    #[test]
    fn special_perms_preserve_classes() {
        for k in 1..=3u32 {
            let split = parity_split(k);
            let half = split.plus.len();
            for a in all_permutations(half) {
                for b in all_permutations(half).into_iter().take(3) {
                    let p = special_perm(k, a.images(), b.images()).unwrap();
                    assert!(split.plus.iter().all(|&i| split.plus.contains(&p.apply(i))));
                    assert!(split
                        .minus
                        .iter()
                        .all(|&i| split.minus.contains(&p.apply(i))));
                }
            }
        }
    }

    #[test]
    fn special_group_order() {
        for k in 1..=3u32 {
            let half: usize = (1..=1usize << (k - 1)).product();
            let group = group_closure(1 << k, &special_generators(k));
            assert_eq!(group.len(), half * half, "k = {k}");
        }
    }

    #[test]
    fn all_maps_counts() {
        let one: Vec<_> = all_maps(1, 1).collect();
        assert_eq!(one, vec![map(1, &[0]), map(1, &[1])]);
        assert_eq!(all_maps(2, 2).count(), 9);
        assert_eq!(all_maps(0, 3).count(), 1);
        assert_eq!(all_maps(3, 0).count(), 1);
        let distinct: BTreeSet<_> = all_maps(3, 2).collect();
        assert_eq!(distinct.len(), 27);
    }

    #[test]
    fn sample_maps_is_deterministic() {
        assert_eq!(sample_maps(4, 3, 10, 7), sample_maps(4, 3, 10, 7));
        assert_ne!(sample_maps(4, 3, 10, 7), sample_maps(4, 3, 10, 8));
    }

    #[test]
    fn composition_laws_small_levels() {
        let maps: Vec<Vec<PointedMap>> = (0..=3)
            .map(|n| (0..=3).flat_map(|m| all_maps(n, m)).collect())
            .collect();
        for f in maps.iter().flatten() {
            assert_eq!(f.compose(&PointedMap::identity(f.source())).unwrap(), *f);
            assert_eq!(PointedMap::identity(f.target()).compose(f).unwrap(), *f);
            for g in &maps[f.target()] {
                for h in &maps[g.target()] {
                    let left = h.compose(g).unwrap().compose(f).unwrap();
                    let right = h.compose(&g.compose(f).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert!(factor_map(&PointedMap::identity(3)).is_empty());
        let s = PointedMap::summing(2, 1, 2, 1).unwrap();
        assert_eq!(factor_map(&s).to_string(), "s2_1");

        let f = map(2, &[2, 0, 2]);
        let word = factor_map(&f);
        assert_eq!(word.to_string(), "t3_2; s3_1; p2_2; d2_1");
        assert_eq!(word.evaluate(), f);
    }

    #[test]
    fn factor_is_sound_up_to_level_four() {
        for n in 0..=4 {
            for m in 0..=4 {
                for f in all_maps(n, m) {
                    let word = factor_map(&f);
                    assert_eq!(word.evaluate(), f, "word {word}");
                    assert_eq!((word.source(), word.target()), (n, m));
                }
            }
        }
    }
}
