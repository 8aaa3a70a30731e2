//! Multiplicative maps `HN -> R` and `HZ -> R` determined by a formal sum or
//! difference law, evaluated through canonical witnesses.
//!
//! A witness for a target `v ∈ HZ[k]` is an exponent `n` and a pointed map
//! `f : [2^n] -> [k]` carrying `±1_n = (1,-1)^n` to `v`; the value of the map is
//! then `f_*(r^n)`. For `HN` the source element is `1_{2^n}` and the law is a
//! sum law `w`.

use std::fmt;
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GammaError, Result};
use crate::laws::{check_law, sum_from_difference, LawCertificate, LawKind};
use crate::report::CheckResult;
use crate::ring::{check_bound, Element, ElementView, GammaRing, Model};
use crate::skeleton::{all_maps, parity_split, smash_index, ParitySplit, PointedMap};

/// Largest exponent a witness may use; `2^MAX_EXPONENT` is the largest level touched.
pub const MAX_EXPONENT: u32 = 20;

/// Powers of a certified law beyond its certificate are checked on demand up
/// to this exponent; larger ones are refused.
pub const ON_DEMAND_MAX_K: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Hn,
    Hz,
}

impl Variant {
    pub fn law_kind(self) -> LawKind {
        match self {
            Variant::Hn => LawKind::Sum,
            Variant::Hz => LawKind::Difference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub n: u32,
    pub f: PointedMap,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.f.images().iter().map(usize::to_string).collect();
        write!(f, "n={} f=({})", self.n, images.join(","))
    }
}

impl Witness {
    /// The vector `f_*(1_{2^n})` (hn) or `f_*(±1_n)` (hz) in the source ring.
    pub fn source_value(&self, variant: Variant) -> Vec<i64> {
        let mut out = vec![0i64; self.f.target()];
        for (pos, &image) in (1..).zip(self.f.images()) {
            if image == 0 {
                continue;
            }
            let sign = match variant {
                Variant::Hn => 1,
                Variant::Hz if ParitySplit::is_plus(pos) => 1,
                Variant::Hz => -1,
            };
            out[image - 1] += sign;
        }
        out
    }
}

fn exponent_for(needed: u64, hz: bool) -> Result<u32> {
    // hz uses half of [2^n] for each sign, and n >= 1
    let mut n = u32::from(hz);
    loop {
        let room = if hz { 1u64 << (n - 1) } else { 1u64 << n };
        if room >= needed {
            return Ok(n);
        }
        n += 1;
        if n > MAX_EXPONENT {
            return Err(GammaError::LevelOverflow {
                level: usize::try_from(needed).unwrap_or(usize::MAX),
                max: 1 << MAX_EXPONENT,
            });
        }
    }
}

fn nonzero(target: &[i64]) -> Result<()> {
    if target.is_empty() {
        return Err(GammaError::input(
            "target vector must have at least one entry",
        ));
    }
    if target.iter().all(|&t| t == 0) {
        return Err(GammaError::input("the zero vector has no witness"));
    }
    Ok(())
}

fn magnitude(target: &[i64], keep: impl Fn(i64) -> bool) -> Result<u64> {
    target
        .iter()
        .filter(|&&t| keep(t))
        .try_fold(0u64, |acc, t| acc.checked_add(t.unsigned_abs()))
        .ok_or(GammaError::Overflow("target sum"))
}

/// The block witness for a nonnegative target: the first `t_1` positions go to
/// 1, the next `t_2` to 2, and so on, with `n` minimal.
pub fn canonical_witness_hn(target: &[i64]) -> Result<Witness> {
    nonzero(target)?;
    if let Some(t) = target.iter().find(|&&t| t < 0) {
        return Err(GammaError::input(format!(
            "hn targets are nonnegative, found {t}"
        )));
    }
    let n = exponent_for(magnitude(target, |_| true)?, false)?;
    let mut images = vec![0; 1 << n];
    let mut slots = images.iter_mut();
    for (j, &t) in (1..).zip(target) {
        for slot in slots.by_ref().take(t as usize) {
            *slot = j;
        }
    }
    Ok(Witness {
        n,
        f: PointedMap::new(target.len(), images)?,
    })
}

/// The parity witness for an integer target: positive entries take the next
/// unused elements of `A_+`, negative entries those of `A_-`, the rest go to 0.
pub fn canonical_witness_hz(target: &[i64]) -> Result<Witness> {
    nonzero(target)?;
    let plus_total = magnitude(target, |t| t > 0)?;
    let minus_total = magnitude(target, |t| t < 0)?;
    let n = exponent_for(plus_total.max(minus_total), true)?;
    let split = parity_split(n);
    let mut images = vec![0; split.size()];
    let (mut plus, mut minus) = (split.plus.iter(), split.minus.iter());
    for (j, &t) in (1..).zip(target) {
        let pool = if t > 0 { &mut plus } else { &mut minus };
        for &pos in pool.by_ref().take(t.unsigned_abs() as usize) {
            images[pos - 1] = j;
        }
    }
    Ok(Witness {
        n,
        f: PointedMap::new(target.len(), images)?,
    })
}

pub fn canonical_witness(variant: Variant, target: &[i64]) -> Result<Witness> {
    match variant {
        Variant::Hn => canonical_witness_hn(target),
        Variant::Hz => canonical_witness_hz(target),
    }
}

/// A random witness for `target` at exponent `n`, or `None` if `[2^n]` is too small.
///
/// Positions are drawn in random order from each parity class (hn: from all of
/// `[2^n]`); for hz a random number of cancelling `(+, -)` pairs is routed to
/// random coordinates.
pub fn random_witness(
    variant: Variant,
    target: &[i64],
    n: u32,
    rng: &mut impl Rng,
) -> Result<Option<Witness>> {
    nonzero(target)?;
    if n > MAX_EXPONENT {
        return Ok(None);
    }
    let size = 1usize << n;
    let mut images = vec![0; size];
    match variant {
        Variant::Hn => {
            if magnitude(target, |_| true)? > size as u64 || target.iter().any(|&t| t < 0) {
                return Ok(None);
            }
            let mut order: Vec<usize> = (0..size).collect();
            order.shuffle(rng);
            let mut next = order.into_iter();
            for (j, &t) in (1..).zip(target) {
                for pos in next.by_ref().take(t as usize) {
                    images[pos] = j;
                }
            }
        }
        Variant::Hz => {
            if n == 0 {
                return Ok(None);
            }
            let half = (size / 2) as u64;
            if magnitude(target, |t| t > 0)? > half || magnitude(target, |t| t < 0)? > half {
                return Ok(None);
            }
            let split = parity_split(n);
            let (mut plus, mut minus) = (split.plus, split.minus);
            plus.shuffle(rng);
            minus.shuffle(rng);
            let (mut plus, mut minus) = (plus.into_iter(), minus.into_iter());
            for (j, &t) in (1..).zip(target) {
                let pool = if t > 0 { &mut plus } else { &mut minus };
                for pos in pool.by_ref().take(t.unsigned_abs() as usize) {
                    images[pos - 1] = j;
                }
            }
            let spare = plus.len().min(minus.len());
            let pairs = rng.gen_range(0..=spare);
            for (a, b) in plus.by_ref().zip(minus.by_ref()).take(pairs) {
                let j = rng.gen_range(1..=target.len());
                images[a - 1] = j;
                images[b - 1] = j;
            }
        }
    }
    Ok(Some(Witness {
        n,
        f: PointedMap::new(target.len(), images)?,
    }))
}

/// The map `HN -> R` or `HZ -> R` attached to a law.
#[derive(Debug)]
pub struct MultiplicativeMap {
    model: Model,
    law: Element,
    variant: Variant,
    certificate: Option<LawCertificate>,
    state: Mutex<PowerState>,
}

#[derive(Debug)]
struct PowerState {
    /// `powers[k]` is the left-associated `law^k`; `powers[0]` is the unit.
    powers: Vec<Element>,
    /// Exponent up to which the law has been certified, `None` when unchecked.
    certified: Option<u32>,
}

/// The largest exponent `<= k_max` whose level `2^k` the model can reach.
pub fn reachable_k(model: &dyn GammaRing, k_max: u32) -> u32 {
    match model.max_level() {
        Some(max) => (usize::BITS - 1 - max.max(1).leading_zeros()).min(k_max),
        None => k_max,
    }
}

/// Certifies `law` up to `k_max` (capped by the model's level bound) and
/// returns its map. Refuses laws that fail any condition.
pub fn build_map(
    model: Model,
    law: Element,
    variant: Variant,
    k_max: u32,
) -> Result<MultiplicativeMap> {
    let reachable = reachable_k(model.as_ref(), k_max);
    if reachable == 0 {
        return Err(GammaError::unsupported(format!(
            "model {} does not reach level 2",
            model.name()
        )));
    }
    let certificate = check_law(model.as_ref(), variant.law_kind(), &law, reachable)?;
    MultiplicativeMap::from_certificate(model, certificate, variant)
}

impl MultiplicativeMap {
    /// The map of a certified law.
    pub fn from_certificate(
        model: Model,
        certificate: LawCertificate,
        variant: Variant,
    ) -> Result<Self> {
        if certificate.kind != variant.law_kind() {
            return Err(GammaError::input(
                "certificate is for the other kind of law",
            ));
        }
        if !certificate.passed() {
            return Err(GammaError::Uncertified(format!(
                "{} is not a {} law in {}: failing conditions {:?}",
                model.render(&certificate.law),
                match variant {
                    Variant::Hn => "sum",
                    Variant::Hz => "difference",
                },
                model.name(),
                certificate.failed_conditions()
            )));
        }
        let law = certificate.law.clone();
        Ok(MultiplicativeMap::assemble(
            model,
            law,
            variant,
            Some(certificate),
        ))
    }

    /// A map built from `law` without certifying it. Used to exhibit what goes
    /// wrong for elements that are not laws.
    pub fn unchecked(model: Model, law: Element, variant: Variant) -> Result<Self> {
        if law.level() != 2 {
            return Err(GammaError::LevelMismatch {
                expected: 2,
                found: law.level(),
            });
        }
        Ok(MultiplicativeMap::assemble(model, law, variant, None))
    }

    fn assemble(
        model: Model,
        law: Element,
        variant: Variant,
        certificate: Option<LawCertificate>,
    ) -> Self {
        let state = PowerState {
            powers: vec![model.unit(), law.clone()],
            certified: certificate.as_ref().map(|c| c.k_max),
        };
        MultiplicativeMap {
            model,
            law,
            variant,
            certificate,
            state: Mutex::new(state),
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn law(&self) -> &Element {
        &self.law
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn certificate(&self) -> Option<&LawCertificate> {
        self.certificate.as_ref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    /// `law^k`, cached. Certified maps extend their certificate to `k` first.
    pub fn power(&self, k: u32) -> Result<Element> {
        let level = 1usize
            .checked_shl(k)
            .filter(|_| k <= MAX_EXPONENT)
            .ok_or(GammaError::Overflow("power exponent"))?;
        check_bound(self.model.as_ref(), level)?;
        let mut state = self.state.lock().expect("power cache poisoned");
        if let Some(done) = state.certified {
            if k > done {
                if k > ON_DEMAND_MAX_K {
                    return Err(GammaError::Uncertified(format!(
                        "power {k} lies beyond the certifiable range (at most {ON_DEMAND_MAX_K})"
                    )));
                }
                let cert = check_law(self.model.as_ref(), self.variant.law_kind(), &self.law, k)?;
                if !cert.passed() {
                    return Err(GammaError::Uncertified(format!(
                        "{} fails conditions {:?} at exponent {k}",
                        self.model.render(&self.law),
                        cert.failed_conditions()
                    )));
                }
                state.certified = Some(k);
            }
        }
        while state.powers.len() <= k as usize {
            let next = self
                .model
                .mult(state.powers.last().expect("nonempty"), &self.law)?;
            state.powers.push(next);
        }
        Ok(state.powers[k as usize].clone())
    }

    /// `f_*(law^n)` for an arbitrary witness, valid or not.
    pub fn eval_with(&self, witness: &Witness) -> Result<Element> {
        check_bound(self.model.as_ref(), witness.f.target())?;
        let x = self.power(witness.n)?;
        self.model.induce(&witness.f, &x)
    }

    /// The value at a source vector, via its canonical witness.
    pub fn eval(&self, target: &[i64]) -> Result<Element> {
        if target.is_empty() {
            return Err(GammaError::input(
                "target vector must have at least one entry",
            ));
        }
        if target.iter().all(|&t| t == 0) {
            check_bound(self.model.as_ref(), target.len())?;
            return Ok(self.model.basepoint(target.len()));
        }
        self.eval_with(&canonical_witness(self.variant, target)?)
    }
}

/// `φ(±1_2)`, which recovers the difference law of an hz map.
pub fn law_from_map(map: &MultiplicativeMap) -> Result<Element> {
    match map.variant {
        Variant::Hz => map.eval(&[1, -1]),
        Variant::Hn => Err(GammaError::unsupported(
            "only maps out of HZ are determined by a difference law",
        )),
    }
}

/// All source vectors of length `1..=max_len` with entries in `[0, B]` (hn) or `[-B, B]` (hz).
pub fn targets(variant: Variant, bound: i64, max_len: usize) -> Vec<Vec<i64>> {
    let lo = match variant {
        Variant::Hn => 0,
        Variant::Hz => -bound,
    };
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|v| {
                (lo..=bound).map(move |t| {
                    let mut w = v.clone();
                    w.push(t);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The induced map of `f` on the source ring: sums over fibres.
pub fn source_induce(f: &PointedMap, x: &[i64]) -> Vec<i64> {
    let mut out = vec![0; f.target()];
    for (&image, &value) in f.images().iter().zip(x) {
        if image != 0 {
            out[image - 1] += value;
        }
    }
    out
}

/// The product in the source ring, `(x y)_{idx(i,j)} = x_i y_j`.
pub fn source_mult(x: &[i64], y: &[i64]) -> Vec<i64> {
    let (n, m) = (x.len(), y.len());
    let mut out = vec![0; n * m];
    for j in 1..=m {
        for i in 1..=n {
            let p = smash_index(n, m, i, j).expect("in range");
            out[p - 1] = x[i - 1] * y[j - 1];
        }
    }
    out
}

fn show_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub entry_bound: i64,
    pub max_len: usize,
    pub witness_trials: usize,
    pub seed: u64,
    /// Alternative witnesses at an exponent are enumerated exhaustively when
    /// there are at most this many maps `[2^n'] -> [k]`.
    pub exhaustive_limit: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            entry_bound: 3,
            max_len: 3,
            witness_trials: 8,
            seed: 0,
            exhaustive_limit: 8192,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub model: String,
    pub law: ElementView,
    pub variant: Variant,
    pub certified: bool,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl MapReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }
}

const WITNESS_CAP: usize = 16;

/// Evaluation errors that only mean "out of reach" become skips.
fn reachable(value: Result<Element>, skipped: &mut u64) -> Result<Option<Element>> {
    match value {
        Ok(x) => Ok(Some(x)),
        Err(GammaError::LevelOverflow { .. }) | Err(GammaError::Uncertified(_)) => {
            *skipped += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn note_skips(mut check: CheckResult, skipped: u64) -> CheckResult {
    if skipped > 0 {
        check.note = Some(format!(
            "{skipped} evaluations beyond the reachable levels were skipped"
        ));
    }
    check
}

fn exponents_to_try(map: &MultiplicativeMap, canonical: u32) -> Vec<u32> {
    let mut out = vec![canonical, canonical + 1];
    if map.variant == Variant::Hn && canonical == 0 {
        out.push(2);
    }
    out.retain(|&n| n <= MAX_EXPONENT && check_bound(map.model.as_ref(), 1 << n).is_ok());
    out
}

fn witness_independence(
    map: &MultiplicativeMap,
    index: usize,
    target: &[i64],
    config: &VerifyConfig,
) -> Result<(CheckResult, u64)> {
    let mut check = CheckResult::capped("witness independence", WITNESS_CAP);
    let mut skipped = 0;
    let canonical = canonical_witness(map.variant, target)?;
    let Some(expected) = reachable(map.eval_with(&canonical), &mut skipped)? else {
        return Ok((check, skipped));
    };
    let show = |x: &Element| map.model.render(x);
    let k = target.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (index as u64).wrapping_mul(0x9e37_79b9));
    for n in exponents_to_try(map, canonical.n) {
        let size = 1usize << n;
        let space = (k as u64 + 1).checked_pow(size as u32);
        let mut candidates = Vec::new();
        if space.is_some_and(|s| s <= config.exhaustive_limit) {
            for f in all_maps(size, k) {
                let w = Witness { n, f };
                if w.source_value(map.variant) == target {
                    candidates.push(w);
                }
            }
        } else {
            for _ in 0..config.witness_trials {
                if let Some(w) = random_witness(map.variant, target, n, &mut rng)? {
                    candidates.push(w);
                }
            }
        }
        for w in candidates {
            if w == canonical {
                continue;
            }
            let Some(value) = reachable(map.eval_with(&w), &mut skipped)? else {
                continue;
            };
            check.record(value == expected, || {
                format!(
                    "target {}, witness {w}: value {} but canonical witness {canonical} gives {}",
                    show_vec(target),
                    show(&value),
                    show(&expected)
                )
            });
        }
    }
    Ok((check, skipped))
}

fn naturality(
    map: &MultiplicativeMap,
    target: &[i64],
    config: &VerifyConfig,
) -> Result<(CheckResult, u64)> {
    let mut check = CheckResult::capped("naturality", WITNESS_CAP);
    let mut skipped = 0;
    let Some(value) = reachable(map.eval(target), &mut skipped)? else {
        return Ok((check, skipped));
    };
    let show = |x: &Element| map.model.render(x);
    for m in 1..=config.max_len {
        for f in all_maps(target.len(), m) {
            let pushed = source_induce(&f, target);
            let Some(direct) = reachable(map.eval(&pushed), &mut skipped)? else {
                continue;
            };
            let moved = map.model.induce(&f, &value)?;
            check.record(moved == direct, || {
                format!(
                    "target {}, f = {f}: f_*(φ(x)) = {} but φ(f_* x) = {}",
                    show_vec(target),
                    show(&moved),
                    show(&direct)
                )
            });
        }
    }
    Ok((check, skipped))
}

fn multiplicativity(map: &MultiplicativeMap, x: &[i64], y: &[i64]) -> Result<(CheckResult, u64)> {
    let mut check = CheckResult::capped("multiplicativity", WITNESS_CAP);
    let mut skipped = 0;
    let values = (
        reachable(map.eval(x), &mut skipped)?,
        reachable(map.eval(y), &mut skipped)?,
        reachable(map.eval(&source_mult(x, y)), &mut skipped)?,
    );
    if let (Some(a), Some(b), Some(ab)) = values {
        let product = map.model.mult(&a, &b)?;
        check.record(product == ab, || {
            format!(
                "x = {}, y = {}: φ(x)φ(y) = {} but φ(xy) = {}",
                show_vec(x),
                show_vec(y),
                map.model.render(&product),
                map.model.render(&ab)
            )
        });
    }
    Ok((check, skipped))
}

fn merge(name: &str, parts: Vec<(CheckResult, u64)>) -> CheckResult {
    let mut total = CheckResult::capped(name, WITNESS_CAP);
    let mut skipped = 0;
    for (part, s) in parts {
        total.absorb(part);
        skipped += s;
    }
    note_skips(total, skipped)
}

/// Checks witness independence, naturality, multiplicativity, the unit and
/// (for hz) the round trip to the law, over all bounded targets.
///
/// Multiplicativity runs over all pairs when `max_len <= 2` and the bound is
/// at most 2; otherwise over the pairs whose product has length at most
/// `max_len`, plus `witness_trials` random pairs.
pub fn verify_map(map: &MultiplicativeMap, config: &VerifyConfig) -> Result<MapReport> {
    let all = targets(map.variant, config.entry_bound, config.max_len);
    let nonzero: Vec<(usize, &Vec<i64>)> = all
        .iter()
        .enumerate()
        .filter(|(_, t)| t.iter().any(|&v| v != 0))
        .collect();

    let independence = nonzero
        .par_iter()
        .map(|&(i, t)| witness_independence(map, i, t, config))
        .collect::<Result<Vec<_>>>()?;
    let natural = all
        .par_iter()
        .map(|t| naturality(map, t, config))
        .collect::<Result<Vec<_>>>()?;

    let mut pairs: Vec<(&Vec<i64>, &Vec<i64>)> = Vec::new();
    let everything = config.max_len <= 2 && config.entry_bound <= 2;
    for x in &all {
        for y in &all {
            if everything || x.len() * y.len() <= config.max_len {
                pairs.push((x, y));
            }
        }
    }
    if !everything && !all.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.witness_trials {
            pairs.push((all.choose(&mut rng).unwrap(), all.choose(&mut rng).unwrap()));
        }
    }
    let products = pairs
        .par_iter()
        .map(|(x, y)| multiplicativity(map, x, y))
        .collect::<Result<Vec<_>>>()?;

    let mut unit = CheckResult::new("unit");
    let one = map.eval(&[1])?;
    let expected = map.model.unit();
    unit.record(one == expected, || {
        format!(
            "φ((1)) = {} but the unit is {}",
            map.model.render(&one),
            map.model.render(&expected)
        )
    });

    let mut checks = vec![
        merge("witness independence", independence),
        merge("naturality", natural),
        merge("multiplicativity", products),
        unit,
    ];
    match map.variant {
        Variant::Hz => {
            let mut round = CheckResult::new("round trip");
            let back = law_from_map(map)?;
            round.record(&back == map.law(), || {
                format!(
                    "φ(±1_2) = {} but the law is {}",
                    map.model.render(&back),
                    map.model.render(map.law())
                )
            });
            checks.push(round);
        }
        Variant::Hn => checks.push(CheckResult::skipped(
            "round trip",
            "maps out of HN are not recovered from ±1_2",
        )),
    }

    Ok(MapReport {
        model: map.model.name().to_string(),
        law: map.model.view(map.law()),
        variant: map.variant,
        certified: map.is_certified(),
        config: config.clone(),
        checks,
    })
}

/// The transformation `f_a : S -> R` picked out by `a ∈ R[1]`, listed on
/// levels `1..=n_max`: entry `[n-1][i-1]` is `f_a(i) = ι_*(a)` for the
/// inclusion `ι : [1] -> [n]` hitting `i`.
#[derive(Debug, Clone)]
pub struct UnitTransformation {
    pub a: Element,
    pub levels: Vec<Vec<Element>>,
}

impl UnitTransformation {
    /// `f_a(i)` on level `n`, with `f_a(0)` the basepoint.
    pub fn at(&self, model: &dyn GammaRing, n: usize, i: usize) -> Element {
        if i == 0 {
            model.basepoint(n)
        } else {
            self.levels[n - 1][i - 1].clone()
        }
    }
}

pub fn unit_transformation(
    model: &dyn GammaRing,
    a: &Element,
    n_max: usize,
) -> Result<UnitTransformation> {
    if a.level() != 1 {
        return Err(GammaError::LevelMismatch {
            expected: 1,
            found: a.level(),
        });
    }
    check_bound(model, n_max)?;
    let levels = (1..=n_max)
        .map(|n| {
            (1..=n)
                .map(|i| model.induce(&PointedMap::inclusion(n, i)?, a))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitTransformation {
        a: a.clone(),
        levels,
    })
}

/// Checks that `f_a` is natural on all maps between levels `<= n_max` and that
/// left multiplication `m_a(x) = a x` stays on the level of `x` and commutes
/// with the induced maps, on up to `samples` elements per level.
pub fn left_mult_check(
    model: &dyn GammaRing,
    a: &Element,
    n_max: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckResult>> {
    let fa = unit_transformation(model, a, n_max)?;
    let show = |x: &Element| model.render(x);

    let mut natural = CheckResult::capped("naturality of f_a", WITNESS_CAP);
    for n in 1..=n_max {
        for m in 1..=n_max {
            for g in all_maps(n, m) {
                for i in 1..=n {
                    let moved = model.induce(&g, &fa.at(model, n, i))?;
                    let direct = fa.at(model, m, g.apply(i));
                    natural.record(moved == direct, || {
                        format!(
                            "g = {g}, i = {i}: g_*(f_a({i})) = {} but f_a(g({i})) = {}",
                            show(&moved),
                            show(&direct)
                        )
                    });
                }
            }
        }
    }

    let mut left = CheckResult::capped("left multiplication", WITNESS_CAP);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=n_max {
        let mut xs = model.generated_elements(n, 2)?;
        if xs.len() > samples {
            xs.shuffle(&mut rng);
            xs.truncate(samples);
        }
        for x in &xs {
            let ax = model.mult(a, x)?;
            left.record(ax.level() == n, || {
                format!("a {} lands on level {}", show(x), ax.level())
            });
            for m in 1..=n_max {
                for g in all_maps(n, m) {
                    let lhs = model.mult(a, &model.induce(&g, x)?)?;
                    let rhs = model.induce(&g, &ax)?;
                    left.record(lhs == rhs, || {
                        format!(
                            "x = {}, g = {g}: a g_*(x) = {} but g_*(a x) = {}",
                            show(x),
                            show(&lhs),
                            show(&rhs)
                        )
                    });
                }
            }
        }
    }
    Ok(vec![natural, left])
}

/// A two-sided inverse of `a ∈ R[1]`, searched among the enumerable (or, for
/// integer models, small) elements of `R[1]`.
pub fn two_sided_inverse(model: &dyn GammaRing, a: &Element) -> Result<Option<Element>> {
    let unit = model.unit();
    for b in model.generated_elements(1, 2)? {
        if model.mult(a, &b)? == unit && model.mult(&b, a)? == unit {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// For an invertible `a` and `r_2 = a r_1 a^{-1}`, checks
/// `φ_2(x) = a φ_1(x) a^{-1}` on the given targets.
pub fn conjugation_transport(
    phi1: &MultiplicativeMap,
    a: &Element,
    k_max: u32,
    targets: &[Vec<i64>],
) -> Result<CheckResult> {
    let model = phi1.model();
    let inverse = two_sided_inverse(model.as_ref(), a)?.ok_or_else(|| {
        GammaError::input(format!("{} is not invertible in R[1]", model.render(a)))
    })?;
    let r2 = model.mult(&model.mult(a, phi1.law())?, &inverse)?;
    let phi2 = build_map(model.clone(), r2, phi1.variant(), k_max)?;
    let mut check = CheckResult::capped("conjugation transport", WITNESS_CAP);
    let mut skipped = 0;
    for x in targets {
        let (Some(v1), Some(v2)) = (
            reachable(phi1.eval(x), &mut skipped)?,
            reachable(phi2.eval(x), &mut skipped)?,
        ) else {
            continue;
        };
        let conj = model.mult(&model.mult(a, &v1)?, &inverse)?;
        check.record(conj == v2, || {
            format!(
                "x = {}: a φ_1(x) a^-1 = {} but φ_2(x) = {}",
                show_vec(x),
                model.render(&conj),
                model.render(&v2)
            )
        });
    }
    Ok(note_skips(check, skipped))
}

/// For `a r_1 = r_2 a`, checks `a φ_1(x) = φ_2(x) a` on the given targets.
pub fn intertwiner_check(
    phi1: &MultiplicativeMap,
    phi2: &MultiplicativeMap,
    a: &Element,
    targets: &[Vec<i64>],
) -> Result<CheckResult> {
    let model = phi1.model();
    if model.mult(a, phi1.law())? != model.mult(phi2.law(), a)? {
        return Err(GammaError::input(format!(
            "{} does not intertwine the two laws",
            model.render(a)
        )));
    }
    let mut check = CheckResult::capped("intertwiner transport", WITNESS_CAP);
    let mut skipped = 0;
    for x in targets {
        let (Some(v1), Some(v2)) = (
            reachable(phi1.eval(x), &mut skipped)?,
            reachable(phi2.eval(x), &mut skipped)?,
        ) else {
            continue;
        };
        let lhs = model.mult(a, &v1)?;
        let rhs = model.mult(&v2, a)?;
        check.record(lhs == rhs, || {
            format!(
                "x = {}: a φ_1(x) = {} but φ_2(x) a = {}",
                show_vec(x),
                model.render(&lhs),
                model.render(&rhs)
            )
        });
    }
    Ok(note_skips(check, skipped))
}

/// For a difference law `r` with derived sum law `w`, checks that the hn map
/// of `w` agrees with the hz map of `r` on the nonnegative targets given.
pub fn hn_factorization(
    model: Model,
    r: &Element,
    k_max: u32,
    targets: &[Vec<i64>],
) -> Result<CheckResult> {
    let w = sum_from_difference(model.as_ref(), r)?;
    let phi_r = build_map(model.clone(), r.clone(), Variant::Hz, k_max)?;
    let phi_w = build_map(model.clone(), w, Variant::Hn, k_max)?;
    let mut check = CheckResult::capped("hn factorization", WITNESS_CAP);
    let mut skipped = 0;
    for x in targets.iter().filter(|x| x.iter().all(|&t| t >= 0)) {
        let (Some(vw), Some(vr)) = (
            reachable(phi_w.eval(x), &mut skipped)?,
            reachable(phi_r.eval(x), &mut skipped)?,
        ) else {
            continue;
        };
        check.record(vw == vr, || {
            format!(
                "x = {}: φ_w(x) = {} but φ_r(x) = {}",
                show_vec(x),
                model.render(&vw),
                model.render(&vr)
            )
        });
    }
    Ok(note_skips(check, skipped))
}
