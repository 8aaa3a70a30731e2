//! Decision procedures for formal sum laws and formal difference laws in a
//! discrete Γ-ring, and exhaustive search for them.
//!
//! A formal sum law is `w ∈ R[2]` with `p^2_1(w) = p^2_2(w) = 1` whose powers
//! `w^k ∈ R[2^k]` are fixed by all of `Σ_{2^k}`. A formal difference law is
//! `r ∈ R[2]` with
//!
//! 1. `p^2_2(r) = 1` and `s^2_{1,2,1}(r) = 0`;
//! 2. `p^2_1(r) r = r p^2_1(r) = σ(r)` for the transposition `σ` of `[2]`;
//! 3. every power `r^k` fixed by the special action of `Σ_{2^{k-1}} × Σ_{2^{k-1}}`;
//! 4. `s^{2^k}_{i,j,l}(r^k) = d^{2^k-1}_l p^{2^k-1}_i p^{2^k}_j (r^k)` whenever
//!    `i < j` lie in opposite parity classes.
//!
//! Symmetric-group invariance is checked on generators only: adjacent
//! transpositions for `Σ_{2^k}`, neighbour swaps within each parity class
//! for the special action.

use serde::Serialize;

use crate::error::{GammaError, Result};
use crate::report::{CheckResult, Status};
use crate::ring::{check_bound, Element, ElementView, GammaRing};
use crate::skeleton::{adjacent_transpositions, parity_split, special_generators, PointedMap};

pub const DEFAULT_K_MAX: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    Sum,
    Difference,
}

impl std::str::FromStr for LawKind {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(LawKind::Sum),
            "diff" | "difference" => Ok(LawKind::Difference),
            _ => Err(GammaError::input(format!(
                "unknown law kind {s:?} (sum|diff)"
            ))),
        }
    }
}

/// The outcome of checking one candidate law up to `k_max`.
#[derive(Debug, Clone, Serialize)]
pub struct LawCertificate {
    pub model: String,
    #[serde(skip)]
    pub law: Element,
    #[serde(rename = "law")]
    pub law_view: ElementView,
    pub kind: LawKind,
    pub k_max: u32,
    pub verdict: Status,
    pub conditions: Vec<CheckResult>,
    pub checked_counts: u64,
}

impl LawCertificate {
    fn assemble(
        model: &dyn GammaRing,
        law: &Element,
        kind: LawKind,
        k_max: u32,
        conditions: Vec<CheckResult>,
    ) -> Self {
        let verdict = if conditions.iter().all(CheckResult::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        LawCertificate {
            model: model.name().to_string(),
            law: law.clone(),
            law_view: model.view(law),
            kind,
            k_max,
            verdict,
            checked_counts: conditions.iter().map(|c| c.count).sum(),
            conditions,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn condition(&self, number: usize) -> &CheckResult {
        &self.conditions[number - 1]
    }

    /// Numbers of the failing conditions.
    pub fn failed_conditions(&self) -> Vec<usize> {
        self.conditions
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.passed())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

fn preflight(model: &dyn GammaRing, law: &Element, k_max: u32) -> Result<()> {
    if law.level() != 2 {
        return Err(GammaError::LevelMismatch {
            expected: 2,
            found: law.level(),
        });
    }
    if k_max == 0 {
        return Err(GammaError::input("k_max must be at least 1"));
    }
    let top = 1usize
        .checked_shl(k_max)
        .filter(|&t| t > 0)
        .ok_or(GammaError::Overflow("2^k_max"))?;
    check_bound(model, top)
}

fn apply(model: &dyn GammaRing, f: &PointedMap, x: &Element) -> Result<Element> {
    model.induce(f, x)
}

/// Successive powers `x, x^2, ..., x^k_max`, each the previous times `x`.
fn powers(model: &dyn GammaRing, x: &Element, k_max: u32) -> Result<Vec<Element>> {
    let mut out = vec![x.clone()];
    for _ in 1..k_max {
        let next = model.mult(out.last().expect("nonempty"), x)?;
        out.push(next);
    }
    Ok(out)
}

/// Checks `w` against the definition of a formal sum law, powers up to `w^k_max`.
pub fn check_sum_law(model: &dyn GammaRing, w: &Element, k_max: u32) -> Result<LawCertificate> {
    preflight(model, w, k_max)?;
    let show = |x: &Element| model.render(x);
    let unit = model.unit();

    let mut restrictions = CheckResult::new("condition 1: p2_1(w) = p2_2(w) = 1");
    for i in 1..=2 {
        let image = apply(model, &PointedMap::restriction(2, i)?, w)?;
        restrictions.record(image == unit, || {
            format!("p2_{i}(w) = {} but 1 = {}", show(&image), show(&unit))
        });
    }

    let mut symmetric = CheckResult::new("condition 2: w^k fixed by the symmetric group");
    for (k, wk) in (1..=k_max).zip(powers(model, w, k_max)?) {
        for t in adjacent_transpositions(1 << k) {
            let moved = apply(model, &t, &wk)?;
            symmetric.record(moved == wk, || {
                format!(
                    "k = {k}, {t}: moves w^k = {} to {}",
                    show(&wk),
                    show(&moved)
                )
            });
        }
    }

    Ok(LawCertificate::assemble(
        model,
        w,
        LawKind::Sum,
        k_max,
        vec![restrictions, symmetric],
    ))
}

/// The triples `(i, j, l)` of the fourth difference-law condition at exponent
/// `k`: `1 <= i < j <= 2^k` in opposite parity classes and `1 <= l <= 2^k - 1`,
/// in lexicographic order.
pub fn condition4_triples(k: u32) -> Vec<(usize, usize, usize)> {
    let n = 1usize << k;
    let split = parity_split(k);
    let plus = |i: usize| split.plus.binary_search(&i).is_ok();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if plus(i) != plus(j) {
                for l in 1..n {
                    out.push((i, j, l));
                }
            }
        }
    }
    out
}

fn condition_one_difference(model: &dyn GammaRing, r: &Element) -> Result<CheckResult> {
    let show = |x: &Element| model.render(x);
    let mut check = CheckResult::new("condition 1: p2_2(r) = 1, s2_(1,2,1)(r) = 0");
    let unit = model.unit();
    let restricted = apply(model, &PointedMap::restriction(2, 2)?, r)?;
    check.record(restricted == unit, || {
        format!("p2_2(r) = {} but 1 = {}", show(&restricted), show(&unit))
    });
    let zero = model.basepoint(1);
    let summed = apply(model, &PointedMap::summing(2, 1, 2, 1)?, r)?;
    check.record(summed == zero, || {
        format!("s2_(1,2,1)(r) = {} but 0 = {}", show(&summed), show(&zero))
    });
    Ok(check)
}

/// Checks `r` against the four conditions of a formal difference law, powers up to `r^k_max`.
pub fn check_difference_law(
    model: &dyn GammaRing,
    r: &Element,
    k_max: u32,
) -> Result<LawCertificate> {
    preflight(model, r, k_max)?;
    let show = |x: &Element| model.render(x);

    let first = condition_one_difference(model, r)?;

    let mut second = CheckResult::new("condition 2: p2_1(r) r = r p2_1(r) = σ(r)");
    let minus_one = apply(model, &PointedMap::restriction(2, 1)?, r)?;
    let swapped = apply(model, &PointedMap::transposition(2, 1)?, r)?;
    let left = model.mult(&minus_one, r)?;
    second.record(left == swapped, || {
        format!("p2_1(r) r = {} but σ(r) = {}", show(&left), show(&swapped))
    });
    let right = model.mult(r, &minus_one)?;
    second.record(right == swapped, || {
        format!("r p2_1(r) = {} but σ(r) = {}", show(&right), show(&swapped))
    });

    let rk = powers(model, r, k_max)?;

    let mut third = CheckResult::new("condition 3: r^k fixed by the special action");
    for (k, x) in (1..=k_max).zip(&rk) {
        for g in special_generators(k) {
            let moved = apply(model, &g, x)?;
            third.record(&moved == x, || {
                format!("k = {k}, {g}: moves r^k = {} to {}", show(x), show(&moved))
            });
        }
    }

    let mut fourth = CheckResult::new("condition 4: s_(i,j,l)(r^k) = d_l p_i p_j(r^k)");
    for (k, x) in (1..=k_max).zip(&rk) {
        let n = 1usize << k;
        for (i, j, l) in condition4_triples(k) {
            let summing = PointedMap::summing(n, i, j, l)?;
            let killing = PointedMap::degeneracy(n - 1, l)?
                .compose(&PointedMap::restriction(n - 1, i)?)?
                .compose(&PointedMap::restriction(n, j)?)?;
            let lhs = apply(model, &summing, x)?;
            let rhs = apply(model, &killing, x)?;
            fourth.record(lhs == rhs, || {
                format!(
                    "k = {k}, (i,j,l) = ({i},{j},{l}): s(r^k) = {} but d p p(r^k) = {}",
                    show(&lhs),
                    show(&rhs)
                )
            });
        }
    }

    Ok(LawCertificate::assemble(
        model,
        r,
        LawKind::Difference,
        k_max,
        vec![first, second, third, fourth],
    ))
}

pub fn check_law(
    model: &dyn GammaRing,
    kind: LawKind,
    law: &Element,
    k_max: u32,
) -> Result<LawCertificate> {
    match kind {
        LawKind::Sum => check_sum_law(model, law, k_max),
        LawKind::Difference => check_difference_law(model, law, k_max),
    }
}

/// `p^2_1(r)`, the element playing the role of `-1` in `R[1]`.
#[derive(Debug, Clone, Serialize)]
pub struct NegUnit {
    #[serde(skip)]
    pub element: Element,
    #[serde(rename = "element")]
    pub view: ElementView,
    /// Whether `p^2_1(r) · p^2_1(r)` is the unit.
    pub squares_to_unit: bool,
}

/// Returns `p^2_1(r)` after confirming the first difference-law condition, and
/// evaluates whether it squares to the unit.
pub fn neg_unit(model: &dyn GammaRing, r: &Element) -> Result<NegUnit> {
    if r.level() != 2 {
        return Err(GammaError::LevelMismatch {
            expected: 2,
            found: r.level(),
        });
    }
    let first = condition_one_difference(model, r)?;
    if !first.passed() {
        return Err(GammaError::Uncertified(format!(
            "{} fails {}: {}",
            model.render(r),
            first.check,
            first.witnesses.join("; ")
        )));
    }
    let element = apply(model, &PointedMap::restriction(2, 1)?, r)?;
    let square = model.mult(&element, &element)?;
    Ok(NegUnit {
        view: model.view(&element),
        squares_to_unit: square == model.unit(),
        element,
    })
}

/// `p^3_2 p^4_2 (r^2)`, the sum law attached to a difference law.
pub fn sum_from_difference(model: &dyn GammaRing, r: &Element) -> Result<Element> {
    if r.level() != 2 {
        return Err(GammaError::LevelMismatch {
            expected: 2,
            found: r.level(),
        });
    }
    check_bound(model, 4)?;
    let square = model.mult(r, r)?;
    let once = apply(model, &PointedMap::restriction(4, 2)?, &square)?;
    apply(model, &PointedMap::restriction(3, 2)?, &once)
}

/// All laws of the given kind in `R[2]`, each with its passing certificate.
///
/// Finite carriers are searched exhaustively. For ring models with an infinite
/// carrier the first condition leaves only the candidate `(1, 1)` (sum) or
/// `(1, -1)` (difference), which is then fully checked.
pub fn enumerate_laws(
    model: &dyn GammaRing,
    kind: LawKind,
    k_max: u32,
) -> Result<Vec<(Element, LawCertificate)>> {
    let candidates = match model.enumerate(2) {
        Ok(all) => all,
        Err(_) if model.is_ring_model() => {
            let forced: &[i64] = match kind {
                LawKind::Sum => &[1, 1],
                LawKind::Difference => &[1, -1],
            };
            match model.scalar_vector(forced) {
                Some(Ok(x)) => vec![x],
                // e.g. hn has no -1
                Some(Err(_)) => Vec::new(),
                None => unreachable!("ring models provide scalar vectors"),
            }
        }
        Err(e) => {
            return Err(GammaError::unsupported(format!(
                "law search needs a finite R[2] or a ring model: {e}"
            )))
        }
    };
    let mut out = Vec::new();
    for x in candidates {
        let quick = match kind {
            LawKind::Sum => {
                let unit = model.unit();
                apply(model, &PointedMap::restriction(2, 1)?, &x)? == unit
                    && apply(model, &PointedMap::restriction(2, 2)?, &x)? == unit
            }
            LawKind::Difference => condition_one_difference(model, &x)?.passed(),
        };
        if !quick {
            continue;
        }
        let certificate = check_law(model, kind, &x, k_max)?;
        if certificate.passed() {
            out.push((x, certificate));
        }
    }
    Ok(out)
}
