//! π₀ of a finite discrete Γ-ring and the classification of its formal
//! difference laws up to (strict) isomorphism.
//!
//! π₀R is the cokernel of `Z̃R[2] -> Z̃R[1]`, `x ↦ [p^2_2 x] + [p^2_1 x] - [s^2_{1,2,1} x]`,
//! where `Z̃X` is the free abelian group on `X` with the basepoint set to zero.

pub mod snf;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GammaError, Result};
use crate::laws::{enumerate_laws, LawKind};
use crate::maps::{build_map, conjugation_transport, law_from_map, targets, Variant};
use crate::report::CheckResult;
use crate::ring::{Element, ElementView, GammaRing};
use crate::skeleton::PointedMap;
use snf::{smith_normal_form, SmithForm};

/// Presentations larger than this many relation entries are refused.
pub const MAX_PRESENTATION_ENTRIES: usize = 1 << 22;

#[derive(Debug, Clone)]
pub struct AbelianPresentation {
    /// The nonbasepoint elements of `R[1]`, in enumeration order.
    pub generators: Vec<Element>,
    pub relations: Vec<Vec<i128>>,
    pub snf: SmithForm,
}

/// The class of an element of `R[1]` in π₀R: one coordinate per nontrivial
/// invariant factor, reduced modulo it (unreduced for a free summand).
pub type Class = Vec<i128>;

impl AbelianPresentation {
    /// The invariant factors of π₀R with the 1s dropped; `0` is a copy of `Z`.
    pub fn invariant_factors(&self) -> Vec<i128> {
        self.coordinate_factors()
            .into_iter()
            .map(|(_, d)| d)
            .collect()
    }

    fn coordinate_factors(&self) -> Vec<(usize, i128)> {
        (0..self.generators.len())
            .map(|i| (i, self.snf.factors.get(i).copied().unwrap_or(0)))
            .filter(|&(_, d)| d != 1)
            .collect()
    }

    /// The class of an integer combination of generators.
    pub fn class_of_vector(&self, v: &[i128]) -> Result<Class> {
        self.coordinate_factors()
            .into_iter()
            .map(|(i, d)| {
                let raw = v
                    .iter()
                    .zip(&self.snf.right)
                    .try_fold(0i128, |acc, (&c, row)| {
                        c.checked_mul(row[i])
                            .and_then(|p| acc.checked_add(p))
                            .ok_or(GammaError::Overflow("class coordinates"))
                    })?;
                Ok(if d == 0 { raw } else { raw.rem_euclid(d) })
            })
            .collect()
    }

    pub fn index_of(&self, a: &Element) -> Option<usize> {
        self.generators.iter().position(|g| g == a)
    }

    /// The class of `a ∈ R[1]`; the basepoint has class zero.
    pub fn class_of(&self, a: &Element) -> Result<Class> {
        let mut v = vec![0i128; self.generators.len()];
        if a.level() != 1 {
            return Err(GammaError::LevelMismatch {
                expected: 1,
                found: a.level(),
            });
        }
        // anything that is not a generator is the basepoint
        if let Some(i) = self.index_of(a) {
            v[i] = 1;
        }
        self.class_of_vector(&v)
    }
}

fn finite_carrier(model: &dyn GammaRing, n: usize) -> Result<Vec<Element>> {
    if !model.carrier_size(n).is_finite() {
        return Err(GammaError::unsupported(format!(
            "R[{n}] of {} is not finite",
            model.name()
        )));
    }
    model.enumerate(n)
}

pub fn pi0(model: &dyn GammaRing) -> Result<AbelianPresentation> {
    let level_one = finite_carrier(model, 1)?;
    let level_two = finite_carrier(model, 2)?;
    let basepoint = model.basepoint(1);
    let generators: Vec<Element> = level_one.into_iter().filter(|x| *x != basepoint).collect();
    let cols = generators.len();
    if cols.saturating_mul(level_two.len()) > MAX_PRESENTATION_ENTRIES {
        return Err(GammaError::unsupported(format!(
            "π₀ presentation of {} is too large ({} × {})",
            model.name(),
            level_two.len(),
            cols
        )));
    }
    let index = |x: &Element| -> Result<Option<usize>> {
        if *x == basepoint {
            return Ok(None);
        }
        generators
            .iter()
            .position(|g| g == x)
            .map(Some)
            .ok_or_else(|| GammaError::input(format!("{} is not in R[1]", model.render(x))))
    };
    let p22 = PointedMap::restriction(2, 2)?;
    let p21 = PointedMap::restriction(2, 1)?;
    let s = PointedMap::summing(2, 1, 2, 1)?;
    let base_two = model.basepoint(2);
    let mut relations = Vec::new();
    for x in level_two.iter().filter(|x| **x != base_two) {
        let mut row = vec![0i128; cols];
        for (f, sign) in [(&p22, 1), (&p21, 1), (&s, -1)] {
            if let Some(i) = index(&model.induce(f, x)?)? {
                row[i] += sign;
            }
        }
        relations.push(row);
    }
    let snf = smith_normal_form(&relations, cols)?;
    Ok(AbelianPresentation {
        generators,
        relations,
        snf,
    })
}

/// Whether `a ∈ R[1]` lies in the unit component.
pub fn is_strict(model: &dyn GammaRing, pres: &AbelianPresentation, a: &Element) -> Result<bool> {
    Ok(pres.class_of(a)? == pres.class_of(&model.unit())?)
}

/// Whether π₀R is degenerate in the sense that the basepoint and the unit share a class.
pub fn unit_is_trivial(model: &dyn GammaRing, pres: &AbelianPresentation) -> Result<bool> {
    Ok(pres.class_of(&model.unit())?.iter().all(|&c| c == 0))
}

#[derive(Debug, Clone, Serialize)]
pub struct Inverses {
    pub left: bool,
    pub right: bool,
    pub two_sided: bool,
}

/// Exhaustive inverse search in a finite `R[1]`.
pub fn inverses(model: &dyn GammaRing, a: &Element) -> Result<Inverses> {
    let unit = model.unit();
    let mut out = Inverses {
        left: false,
        right: false,
        two_sided: false,
    };
    for b in finite_carrier(model, 1)? {
        let l = model.mult(&b, a)? == unit;
        let r = model.mult(a, &b)? == unit;
        out.left |= l;
        out.right |= r;
        out.two_sided |= l && r;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Homomorphism {
    #[serde(skip)]
    pub a: Element,
    #[serde(rename = "a")]
    pub view: ElementView,
    pub invertible: bool,
    pub inverses: Inverses,
    pub strict: bool,
}

/// All `a ∈ R[1]` with `a r_1 = r_2 a`.
pub fn law_homomorphisms(
    model: &dyn GammaRing,
    pres: &AbelianPresentation,
    r1: &Element,
    r2: &Element,
) -> Result<Vec<Homomorphism>> {
    for r in [r1, r2] {
        if r.level() != 2 {
            return Err(GammaError::LevelMismatch {
                expected: 2,
                found: r.level(),
            });
        }
    }
    let candidates = finite_carrier(model, 1)?;
    let found = candidates
        .par_iter()
        .map(|a| -> Result<Option<Homomorphism>> {
            if model.mult(a, r1)? != model.mult(r2, a)? {
                return Ok(None);
            }
            let inv = inverses(model, a)?;
            Ok(Some(Homomorphism {
                a: a.clone(),
                view: model.view(a),
                invertible: inv.two_sided,
                inverses: inv,
                strict: is_strict(model, pres, a)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct Pi0Summary {
    pub invariant_factors: Vec<i128>,
    pub generators: usize,
    pub relations: usize,
    pub unit_class: Class,
    pub unit_is_trivial: bool,
    pub classes: Vec<ClassEntry>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub element: ElementView,
    pub class: Class,
}

pub fn summarize(model: &dyn GammaRing, pres: &AbelianPresentation) -> Result<Pi0Summary> {
    let mut classes = vec![ClassEntry {
        element: model.view(&model.basepoint(1)),
        class: pres.class_of(&model.basepoint(1))?,
    }];
    for g in &pres.generators {
        classes.push(ClassEntry {
            element: model.view(g),
            class: pres.class_of(g)?,
        });
    }
    Ok(Pi0Summary {
        invariant_factors: pres.invariant_factors(),
        generators: pres.generators.len(),
        relations: pres.relations.len(),
        unit_class: pres.class_of(&model.unit())?,
        unit_is_trivial: unit_is_trivial(model, pres)?,
        classes,
        verified: pres.snf.verify(&pres.relations)?,
    })
}

/// Checks that every relation row maps to the zero class.
pub fn relation_soundness(
    model: &dyn GammaRing,
    pres: &AbelianPresentation,
) -> Result<CheckResult> {
    let mut check = CheckResult::capped("relation soundness", 16);
    let zero = pres.class_of(&model.basepoint(1))?;
    for (k, row) in pres.relations.iter().enumerate() {
        let class = pres.class_of_vector(row)?;
        check.record(class == zero, || {
            format!("relation {k} has class {class:?}")
        });
    }
    Ok(check)
}

#[derive(Debug, Clone, Serialize)]
pub struct Connection {
    pub from: usize,
    pub to: usize,
    pub a: ElementView,
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bijection {
    pub laws: usize,
    pub maps: usize,
    pub round_trip: CheckResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawClassification {
    pub model: String,
    pub k_max: u32,
    pub pi0: Pi0Summary,
    #[serde(skip)]
    pub law_elements: Vec<Element>,
    pub laws: Vec<ElementView>,
    pub units: Vec<ElementView>,
    pub strict_units: Vec<ElementView>,
    /// Units with an inverse on one side only.
    pub one_sided_units: Vec<ElementView>,
    pub iso_classes: Vec<Vec<usize>>,
    pub strict_classes: Vec<Vec<usize>>,
    pub connections: Vec<Connection>,
    pub bijection: Bijection,
    pub transport: CheckResult,
}

fn partition(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    classes
}

/// Enumerates the difference laws of a finite model, sorts them into
/// isomorphism and strict isomorphism classes, and checks that law ↦ map ↦
/// `φ(±1_2)` is the identity and that conjugation transports the maps.
pub fn classify(model: &crate::ring::Model, k_max: u32) -> Result<LawClassification> {
    let m = model.as_ref();
    let pres = pi0(m)?;
    let summary = summarize(m, &pres)?;
    let found = enumerate_laws(m, LawKind::Difference, k_max)?;
    let laws: Vec<Element> = found.into_iter().map(|(x, _)| x).collect();

    let mut units = Vec::new();
    let mut one_sided = Vec::new();
    for a in finite_carrier(m, 1)? {
        let inv = inverses(m, &a)?;
        if inv.two_sided {
            units.push(a);
        } else if inv.left || inv.right {
            one_sided.push(a);
        }
    }
    let strict_units: Vec<Element> = units
        .iter()
        .filter(|a| is_strict(m, &pres, a).unwrap_or(false))
        .cloned()
        .collect();

    let pairs: Vec<(usize, usize)> = (0..laws.len())
        .flat_map(|i| (i..laws.len()).map(move |j| (i, j)))
        .collect();
    let connections: Vec<(usize, usize, Element, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<(usize, usize, Element, bool)>> {
            let mut out = Vec::new();
            for a in &units {
                if m.mult(a, &laws[i])? == m.mult(&laws[j], a)? {
                    out.push((i, j, a.clone(), strict_units.contains(a)));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let iso_edges: Vec<(usize, usize)> = connections.iter().map(|c| (c.0, c.1)).collect();
    let strict_edges: Vec<(usize, usize)> = connections
        .iter()
        .filter(|c| c.3)
        .map(|c| (c.0, c.1))
        .collect();

    let mut round_trip = CheckResult::new("round trip");
    let mut maps = Vec::new();
    for r in &laws {
        let phi = build_map(model.clone(), r.clone(), Variant::Hz, k_max)?;
        let back = law_from_map(&phi)?;
        round_trip.record(&back == r, || {
            format!(
                "φ(±1_2) = {} but the law is {}",
                m.render(&back),
                m.render(r)
            )
        });
        maps.push(phi);
    }
    let recovered: std::collections::BTreeSet<Element> =
        maps.iter().map(law_from_map).collect::<Result<_>>()?;
    round_trip.record(recovered.len() == laws.len(), || {
        format!(
            "{} laws give only {} distinct maps",
            laws.len(),
            recovered.len()
        )
    });

    let sample = targets(Variant::Hz, 2, 2);
    let mut transport = CheckResult::capped("conjugation transport", 16);
    for (i, j, a, _) in &connections {
        let step = conjugation_transport(&maps[*i], a, k_max, &sample)?;
        transport.absorb(step);
        // the conjugated law must be r_j itself
        let inverse = units
            .iter()
            .find(|b| m.mult(a, b).ok() == Some(m.unit()))
            .expect("units have inverses");
        let conj = m.mult(&m.mult(a, &laws[*i])?, inverse)?;
        transport.record(conj == laws[*j], || {
            format!("a r_{i} a^-1 = {} is not r_{j}", m.render(&conj))
        });
    }

    Ok(LawClassification {
        model: m.name().to_string(),
        k_max,
        pi0: summary,
        laws: laws.iter().map(|r| m.view(r)).collect(),
        units: units.iter().map(|a| m.view(a)).collect(),
        strict_units: strict_units.iter().map(|a| m.view(a)).collect(),
        one_sided_units: one_sided.iter().map(|a| m.view(a)).collect(),
        iso_classes: partition(laws.len(), &iso_edges),
        strict_classes: partition(laws.len(), &strict_edges),
        connections: connections
            .iter()
            .map(|(i, j, a, strict)| Connection {
                from: *i,
                to: *j,
                a: m.view(a),
                strict: *strict,
            })
            .collect(),
        bijection: Bijection {
            laws: laws.len(),
            maps: maps.len(),
            round_trip,
        },
        law_elements: laws,
        transport,
    })
}
