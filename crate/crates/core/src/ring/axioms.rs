//! Bounded verification of the Γ-ring axioms: functoriality, naturality of the
//! product, associativity and the unit laws.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::table::required_generators;
use super::{Element, GammaRing};
use crate::error::Result;
use crate::report::CheckResult;
use crate::skeleton::{all_maps, all_permutations, sample_maps, PointedMap};

const WITNESS_CAP: usize = 16;
/// Per-level element lists larger than this are sampled for composition checks.
const COMPOSITION_CAP: usize = 5000;
/// Per-level element lists larger than this are sampled for product checks.
const PRODUCT_CAP: usize = 64;
/// Associativity is checked for all level triples with product up to this.
const ASSOCIATIVITY_LEVEL: usize = 16;
/// Naturality uses maps between levels up to this.
const NATURALITY_LEVEL: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomMode {
    /// All maps between levels `<= n_max`, all (or generated) elements.
    Exhaustive,
    /// Seeded samples of maps and elements.
    Sample,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomConfig {
    pub n_max: usize,
    pub mode: AxiomMode,
    pub seed: u64,
    /// Entry bound for generated `hn`/`hz` elements.
    pub bound: i64,
    /// Samples per level combination (maps, elements, triples).
    pub samples: usize,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig {
            n_max: 3,
            mode: AxiomMode::Exhaustive,
            seed: 0,
            bound: 3,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub model: String,
    pub config: AxiomConfig,
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }
}

struct Checker<'a> {
    model: &'a dyn GammaRing,
    config: &'a AxiomConfig,
    rng: ChaCha8Rng,
    top: usize,
}

impl Checker<'_> {
    fn within(&self, level: usize) -> bool {
        self.model.max_level().is_none_or(|max| level <= max)
    }

    fn elements(&mut self, n: usize, cap: usize) -> Result<Vec<Element>> {
        let full = match self.config.mode {
            AxiomMode::Exhaustive => self.model.generated_elements(n, self.config.bound).ok(),
            AxiomMode::Sample => None,
        };
        let mut els = match full {
            Some(els) if els.len() <= cap => return Ok(els),
            Some(mut els) => {
                els.shuffle(&mut self.rng);
                els.truncate(cap);
                els
            }
            None => (0..cap.min(self.config.samples))
                .map(|_| {
                    self.model
                        .random_element(n, self.config.bound, &mut self.rng)
                })
                .collect(),
        };
        let base = self.model.basepoint(n);
        if !els.contains(&base) {
            els.push(base);
        }
        if n == 1 && !els.contains(&self.model.unit()) {
            els.push(self.model.unit());
        }
        Ok(els)
    }

    fn maps(&mut self, n: usize, m: usize) -> Vec<PointedMap> {
        match self.config.mode {
            AxiomMode::Exhaustive => all_maps(n, m).collect(),
            AxiomMode::Sample => {
                let total = (m as u128 + 1).checked_pow(n as u32);
                if total.is_some_and(|t| t <= self.config.samples as u128) {
                    all_maps(n, m).collect()
                } else {
                    let seed = rand::Rng::gen(&mut self.rng);
                    sample_maps(n, m, self.config.samples, seed)
                }
            }
        }
    }

    fn run(mut self) -> Result<Vec<CheckResult>> {
        let model = self.model;
        let top = self.top;
        let show = |x: &Element| model.render(x);

        let mut basepoint = CheckResult::capped("basepoint", WITNESS_CAP);
        let mut identity = CheckResult::capped("identity", WITNESS_CAP);
        let mut composition = CheckResult::capped("composition", WITNESS_CAP);
        let mut unit = CheckResult::capped("unit", WITNESS_CAP);
        let mut sampled_levels = Vec::new();

        for n in 0..=top {
            let els = self.elements(n, COMPOSITION_CAP)?;
            if self.config.mode == AxiomMode::Exhaustive
                && self
                    .model
                    .generated_elements(n, self.config.bound)
                    .map(|e| e.len())
                    .unwrap_or(0)
                    > COMPOSITION_CAP
            {
                sampled_levels.push(n);
            }
            let id = PointedMap::identity(n);
            for x in &els {
                let y = model.induce(&id, x)?;
                identity.record(&y == x, || format!("id{n}({}) = {}", show(x), show(&y)));
                let left = model.mult(&model.unit(), x)?;
                unit.record(&left == x, || format!("1 · {} = {}", show(x), show(&left)));
                let right = model.mult(x, &model.unit())?;
                unit.record(&right == x, || {
                    format!("{} · 1 = {}", show(x), show(&right))
                });
            }
            for m in 0..=top {
                let firsts = self.maps(n, m);
                for f in &firsts {
                    let b = model.induce(f, &model.basepoint(n))?;
                    basepoint.record(b == model.basepoint(m), || {
                        format!("{f} sends the basepoint to {}", show(&b))
                    });
                }
                let images: Vec<Vec<Element>> = firsts
                    .iter()
                    .map(|f| {
                        els.iter()
                            .map(|x| model.induce(f, x))
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?;
                for l in 0..=top {
                    let seconds = self.maps(m, l);
                    let parts = firsts
                        .par_iter()
                        .zip(&images)
                        .map(|(f, fx)| -> Result<CheckResult> {
                            let mut part = CheckResult::capped("composition", WITNESS_CAP);
                            for g in &seconds {
                                let gf = g.compose(f)?;
                                for (x, y) in els.iter().zip(fx) {
                                    let direct = model.induce(&gf, x)?;
                                    let stepwise = model.induce(g, y)?;
                                    part.record(direct == stepwise, || {
                                        format!(
                                            "x = {}, f = {f}, g = {g}: (g∘f)(x) = {} but g(f(x)) = {}",
                                            show(x),
                                            show(&direct),
                                            show(&stepwise)
                                        )
                                    });
                                }
                            }
                            Ok(part)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    for part in parts {
                        composition.absorb(part);
                    }
                }
            }
        }
        if !sampled_levels.is_empty() {
            composition = composition.with_note(format!(
                "elements sampled ({COMPOSITION_CAP} per level) at levels {sampled_levels:?}"
            ));
        }

        let generators = self.generator_tables()?;
        let naturality = self.naturality()?;
        let associativity = self.associativity()?;
        let permutations = self.permutations()?;

        Ok(vec![
            basepoint,
            identity,
            composition,
            naturality,
            associativity,
            unit,
            permutations,
            generators,
        ])
    }

    /// Stored generator tables agree with the action computed through factorisations.
    fn generator_tables(&mut self) -> Result<CheckResult> {
        let model = self.model;
        let mut check = CheckResult::capped("generator tables", WITNESS_CAP);
        let mut any = false;
        for g in required_generators(self.top) {
            let f = g.to_map()?;
            for x in self.elements(g.source(), COMPOSITION_CAP)? {
                let Some(stored) = model.tabulated_action(&g, &x) else {
                    continue;
                };
                any = true;
                let stored = stored?;
                let computed = model.induce(&f, &x)?;
                check.record(stored == computed, || {
                    format!(
                        "{g} on {}: table gives {}, factorisation gives {}",
                        model.render(&x),
                        model.render(&stored),
                        model.render(&computed)
                    )
                });
            }
        }
        Ok(if any {
            check
        } else {
            CheckResult::skipped("generator tables", "model has no generator tables")
        })
    }

    fn naturality(&mut self) -> Result<CheckResult> {
        let model = self.model;
        let show = |x: &Element| model.render(x);
        let top = self.top.min(NATURALITY_LEVEL);
        let mut check = CheckResult::capped("naturality", WITNESS_CAP);
        let elements: Vec<Vec<Element>> = (0..=top)
            .map(|n| self.elements(n, PRODUCT_CAP))
            .collect::<Result<_>>()?;
        let maps: Vec<Vec<PointedMap>> = (0..=top)
            .map(|n| (0..=top).flat_map(|m| self.maps(n, m)).collect())
            .collect();
        for n in 0..=top {
            for m in 0..=top {
                if !self.within(n * m) {
                    continue;
                }
                let products: Vec<(usize, usize, Element)> = elements[n]
                    .iter()
                    .enumerate()
                    .flat_map(|(a, x)| {
                        elements[m]
                            .iter()
                            .enumerate()
                            .map(move |(b, y)| model.mult(x, y).map(|p| (a, b, p)))
                    })
                    .collect::<Result<_>>()?;
                for f in &maps[n] {
                    let fx: Vec<Element> = elements[n]
                        .iter()
                        .map(|x| model.induce(f, x))
                        .collect::<Result<_>>()?;
                    for g in &maps[m] {
                        if !self.within(f.target() * g.target()) {
                            continue;
                        }
                        let gy: Vec<Element> = elements[m]
                            .iter()
                            .map(|y| model.induce(g, y))
                            .collect::<Result<_>>()?;
                        let fg = f.smash(g);
                        for (a, b, p) in &products {
                            let lhs = model.induce(&fg, p)?;
                            let rhs = model.mult(&fx[*a], &gy[*b])?;
                            check.record(lhs == rhs, || {
                                format!(
                                    "x = {}, y = {}, f = {f}, g = {g}: (f∧g)(xy) = {} but f(x)g(y) = {}",
                                    show(&elements[n][*a]),
                                    show(&elements[m][*b]),
                                    show(&lhs),
                                    show(&rhs)
                                )
                            });
                        }
                    }
                }
            }
        }
        Ok(check)
    }

    fn associativity(&mut self) -> Result<CheckResult> {
        let model = self.model;
        let show = |x: &Element| model.render(x);
        let mut check = CheckResult::capped("associativity", WITNESS_CAP);
        let limit = ASSOCIATIVITY_LEVEL.min(self.model.max_level().unwrap_or(usize::MAX));
        for n in 1..=limit {
            for m in 1..=limit / n {
                for l in 1..=limit / (n * m) {
                    let triples = self.triples(n, m, l)?;
                    for (x, y, z) in triples {
                        let left = model.mult(&model.mult(&x, &y)?, &z)?;
                        let right = model.mult(&x, &model.mult(&y, &z)?)?;
                        check.record(left == right, || {
                            format!(
                                "({} {}) {} = {} but {} ({} {}) = {}",
                                show(&x),
                                show(&y),
                                show(&z),
                                show(&left),
                                show(&x),
                                show(&y),
                                show(&z),
                                show(&right)
                            )
                        });
                    }
                }
            }
        }
        Ok(check)
    }

    fn triples(
        &mut self,
        n: usize,
        m: usize,
        l: usize,
    ) -> Result<Vec<(Element, Element, Element)>> {
        let finite = |k: usize| -> Option<Vec<Element>> {
            self.model
                .generated_elements(k, self.config.bound)
                .ok()
                .filter(|e| e.len() <= 16)
        };
        if self.config.mode == AxiomMode::Exhaustive {
            if let (Some(a), Some(b), Some(c)) = (finite(n), finite(m), finite(l)) {
                let mut out = Vec::new();
                for x in &a {
                    for y in &b {
                        for z in &c {
                            out.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
                return Ok(out);
            }
        }
        let bound = self.config.bound;
        Ok((0..self.config.samples)
            .map(|_| {
                (
                    self.model.random_element(n, bound, &mut self.rng),
                    self.model.random_element(m, bound, &mut self.rng),
                    self.model.random_element(l, bound, &mut self.rng),
                )
            })
            .collect())
    }

    fn permutations(&mut self) -> Result<CheckResult> {
        let model = self.model;
        let mut check = CheckResult::capped("permutation action", WITNESS_CAP);
        let mut any = false;
        for n in 1..=self.top.min(3) {
            let Ok(els) = model.enumerate(n) else {
                continue;
            };
            any = true;
            for p in all_permutations(n) {
                let mut images = els
                    .iter()
                    .map(|x| model.induce(&p, x))
                    .collect::<Result<Vec<_>>>()?;
                images.sort();
                images.dedup();
                check.record(images.len() == els.len(), || {
                    format!("{p} is not injective on R[{n}]")
                });
            }
        }
        Ok(if any {
            check
        } else {
            CheckResult::skipped("permutation action", "carriers are not enumerable")
        })
    }
}

/// Checks the Γ-ring axioms of `model` on levels up to `config.n_max`.
///
/// Composition and unit laws use all elements (or the generated elements of
/// `hn`/`hz`), naturality uses maps between levels `<= 2`, associativity all
/// level triples with product `<= 16`. Failures are report entries.
pub fn check_axioms(model: &dyn GammaRing, config: &AxiomConfig) -> Result<AxiomReport> {
    let top = config.n_max.min(model.max_level().unwrap_or(usize::MAX));
    let checker = Checker {
        model,
        config,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        top,
    };
    Ok(AxiomReport {
        model: model.name().to_string(),
        config: config.clone(),
        checks: checker.run()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::table::{load_table_model, tabulate};
    use crate::ring::{IntegerModel, SphereModel};

    #[test]
    fn hz_sample_passes() {
        let config = AxiomConfig {
            mode: AxiomMode::Sample,
            seed: 7,
            ..AxiomConfig::default()
        };
        let report = check_axioms(&IntegerModel::hz(), &config).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn sphere_exhaustive_passes() {
        let report = check_axioms(&SphereModel, &AxiomConfig::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
        assert!(report.check("composition").unwrap().count > 0);
    }

    #[test]
    fn corrupted_summing_row_is_detected() {
        let mut doc = tabulate(&SphereModel, 4).unwrap();
        // s^2_{1,2,1} should send the point 2 to 1
        doc.generator_mut("s2_1").unwrap()[2] = 0;
        let model = load_table_model(&doc).unwrap();
        let report = check_axioms(&model, &AxiomConfig::default()).unwrap();
        assert!(!report.passed());
        let composition = report.check("composition").unwrap();
        assert!(composition.violations > 0);
        assert!(!composition.witnesses.is_empty());
    }

    #[test]
    fn corrupted_induced_entry_is_detected() {
        let mut doc = tabulate(&SphereModel, 4).unwrap();
        doc.generator_mut("p3_1").unwrap()[3] = 1;
        let model = load_table_model(&doc).unwrap();
        let report = check_axioms(&model, &AxiomConfig::default()).unwrap();
        assert!(!report.passed());
    }
}
