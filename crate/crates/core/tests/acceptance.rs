//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Built with `harness = false`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use gammaring_core::laws::{
    check_difference_law, check_sum_law, enumerate_laws, sum_from_difference, LawKind,
};
use gammaring_core::maps::{
    build_map, hn_factorization, targets, verify_map, MultiplicativeMap, Variant, VerifyConfig,
};
use gammaring_core::pi0::{classify, pi0};
use gammaring_core::ring::table::tabulate;
use gammaring_core::ring::{
    check_axioms, load_table_model, AxiomConfig, IntegerModel, Monoid, MonoidModel, RingModel,
};
use gammaring_core::skeleton::{parity_split, special_generators};
use gammaring_core::{make_model, Element, GammaRing, Model};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(spec: &str) -> Model {
    make_model(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn monoid() -> Model {
    Arc::new(MonoidModel::new("monoid:m2", Monoid::cyclic_two()))
}

fn minus_law(m: &Model) -> Element {
    m.scalar_vector(&[1, -1])
        .expect("ring model")
        .expect("has -1")
}

const CERTIFIED: [&str; 9] = [
    "hz", "hmod:2", "hmod:3", "hmod:4", "hmod:6", "end:2", "end:3", "end:4", "end:2,2",
];

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let mut models: Vec<Model> = [
        "hn", "hz", "sphere", "hmod:2", "hmod:3", "hmod:4", "hmod:6", "end:2", "end:3", "end:4",
        "end:2,2", "end:6",
    ]
    .iter()
    .map(|s| model(s))
    .collect();
    models.push(monoid());
    let config = AxiomConfig::default();
    for m in &models {
        let report = check_axioms(m.as_ref(), &config).map_err(|e| e.to_string())?;
        for c in &report.checks {
            ensure(c.violations == 0, || {
                format!(
                    "{}: {} has {} violations: {:?}",
                    m.name(),
                    c.check,
                    c.violations,
                    c.witnesses
                )
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })
}

fn certification() -> Outcome {
    let start = Instant::now();
    for spec in CERTIFIED {
        let m = model(spec);
        let cert =
            check_difference_law(m.as_ref(), &minus_law(&m), 3).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || {
            format!("{spec}: fails {:?}", cert.failed_conditions())
        })?;
    }
    ensure(special_generators(4).len() == 14, || {
        "special generators at k = 4".into()
    })?;
    for spec in ["hz", "hmod:2"] {
        let m = model(spec);
        let cert =
            check_difference_law(m.as_ref(), &minus_law(&m), 4).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || {
            format!("{spec} at k = 4: fails {:?}", cert.failed_conditions())
        })?;
        ensure(cert.condition(4).count == 1 + 12 + 112 + 960, || {
            format!(
                "{spec}: {} condition-4 evaluations",
                cert.condition(4).count
            )
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })
}

fn identity_map() -> Outcome {
    let hz = model("hz");
    let phi =
        build_map(hz, Element::integers(vec![1, -1]), Variant::Hz, 3).map_err(|e| e.to_string())?;
    for t in targets(Variant::Hz, 3, 3) {
        let value = phi.eval(&t).map_err(|e| e.to_string())?;
        ensure(value == Element::integers(t.clone()), || {
            format!("hz: φ({t:?}) = {value:?}")
        })?;
    }
    let hn = model("hn");
    let phi =
        build_map(hn, Element::integers(vec![1, 1]), Variant::Hn, 3).map_err(|e| e.to_string())?;
    for t in targets(Variant::Hn, 3, 3) {
        let value = phi.eval(&t).map_err(|e| e.to_string())?;
        ensure(value == Element::integers(t.clone()), || {
            format!("hn: φ({t:?}) = {value:?}")
        })?;
    }
    Ok(())
}

fn small_config() -> VerifyConfig {
    VerifyConfig {
        entry_bound: 2,
        max_len: 2,
        witness_trials: 10,
        seed: 2024,
        ..VerifyConfig::default()
    }
}

fn verified_maps(names: &[&str]) -> Outcome {
    for spec in CERTIFIED {
        let m = model(spec);
        let phi = build_map(m.clone(), minus_law(&m), Variant::Hz, 3).map_err(|e| e.to_string())?;
        let report = verify_map(&phi, &small_config()).map_err(|e| e.to_string())?;
        for name in names {
            let c = report
                .check(name)
                .ok_or_else(|| format!("no check {name}"))?;
            ensure(c.count > 0 && c.violations == 0, || {
                format!(
                    "{spec}: {name}: {} of {} fail: {:?}",
                    c.violations, c.count, c.witnesses
                )
            })?;
        }
    }
    Ok(())
}

fn derived_sum_law() -> Outcome {
    for spec in CERTIFIED {
        let m = model(spec);
        let r = minus_law(&m);
        let w = sum_from_difference(m.as_ref(), &r).map_err(|e| e.to_string())?;
        let ones = m
            .scalar_vector(&[1, 1])
            .expect("ring model")
            .map_err(|e| e.to_string())?;
        ensure(w == ones, || format!("{spec}: w = {}", m.render(&w)))?;
        let cert = check_sum_law(m.as_ref(), &w, 3).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || {
            format!("{spec}: w fails {:?}", cert.failed_conditions())
        })?;
        let check = hn_factorization(m.clone(), &r, 3, &targets(Variant::Hn, 3, 3))
            .map_err(|e| e.to_string())?;
        ensure(check.count > 0 && check.passed(), || {
            format!("{spec}: {check:?}")
        })?;
    }
    Ok(())
}

fn negative_searches() -> Outcome {
    for m in [model("sphere"), monoid()] {
        for kind in [LawKind::Sum, LawKind::Difference] {
            let found = enumerate_laws(m.as_ref(), kind, 3).map_err(|e| e.to_string())?;
            ensure(found.is_empty(), || {
                format!("{}: {kind:?} laws found", m.name())
            })?;
        }
    }
    Ok(())
}

fn pi0_groups() -> Outcome {
    let cases: Vec<(String, Vec<i128>)> = [2i128, 3, 4, 5, 6]
        .iter()
        .map(|n| (format!("hmod:{n}"), vec![*n]))
        .chain([
            ("end:2,2".to_string(), vec![2, 2, 2, 2]),
            ("sphere".to_string(), vec![0]),
        ])
        .collect();
    for (spec, expected) in cases {
        let pres = pi0(model(&spec).as_ref()).map_err(|e| e.to_string())?;
        ensure(pres.invariant_factors() == expected, || {
            format!("{spec}: {:?}", pres.invariant_factors())
        })?;
        let verified = pres
            .snf
            .verify(&pres.relations)
            .map_err(|e| e.to_string())?;
        ensure(verified, || format!("{spec}: SNF does not verify"))?;
    }
    Ok(())
}

fn classification() -> Outcome {
    for spec in ["hmod:5", "end:2,2"] {
        let m = model(spec);
        let c = classify(&m, 3).map_err(|e| e.to_string())?;
        ensure(c.laws.len() == 1, || {
            format!("{spec}: {} laws", c.laws.len())
        })?;
        ensure(
            c.strict_classes.len() == 1 && c.iso_classes.len() == 1,
            || {
                format!(
                    "{spec}: classes {:?} / {:?}",
                    c.iso_classes, c.strict_classes
                )
            },
        )?;
        ensure(c.bijection.laws == 1 && c.bijection.maps == 1, || {
            format!("{spec}: bijection")
        })?;
        ensure(c.bijection.round_trip.passed(), || {
            format!("{spec}: round trip")
        })?;
        ensure(c.connections.len() == c.units.len(), || {
            format!(
                "{spec}: {} of {} units connect",
                c.connections.len(),
                c.units.len()
            )
        })?;
        ensure(c.transport.count > 0 && c.transport.passed(), || {
            format!("{spec}: transport {:?}", c.transport.witnesses)
        })?;
    }
    Ok(())
}

fn negative_detection() -> Outcome {
    let hn = IntegerModel::hn();
    let cert = check_sum_law(&hn, &Element::integers(vec![1, 2]), 3).map_err(|e| e.to_string())?;
    ensure(cert.failed_conditions().first() == Some(&1), || {
        "hn (1,2)".into()
    })?;
    ensure(cert.condition(1).check.starts_with("condition 1"), || {
        "condition name".into()
    })?;

    let hz = IntegerModel::hz();
    let cert =
        check_difference_law(&hz, &Element::integers(vec![1, 1]), 3).map_err(|e| e.to_string())?;
    ensure(cert.failed_conditions().first() == Some(&1), || {
        "hz (1,1)".into()
    })?;

    // one corrupted generator row
    let z2 = RingModel::new("hmod:2", gammaring_core::ring::zmod(2).unwrap());
    let mut doc = tabulate(&z2, 3).map_err(|e| e.to_string())?;
    let row = doc.generator_mut("s2_1").ok_or("no s2_1 table")?;
    row[3] = (row[3] + 1) % 2;
    let broken = load_table_model(&doc).map_err(|e| e.to_string())?;
    let report = check_axioms(&broken, &AxiomConfig::default()).map_err(|e| e.to_string())?;
    ensure(!report.passed(), || "corrupted s2_1 not detected".into())?;
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.check.as_str())
        .collect();
    ensure(failing.contains(&"composition"), || {
        format!("failing checks {failing:?}")
    })?;

    // r^2 replaced by (1,1,1,1) in a transcription of hmod:3
    let z3 = RingModel::new("hmod:3", gammaring_core::ring::zmod(3).unwrap());
    let mut doc = tabulate(&z3, 4).map_err(|e| e.to_string())?;
    let position = |level: usize, x: &Element| {
        z3.enumerate(level)
            .unwrap()
            .iter()
            .position(|y| y == x)
            .unwrap() as u32
    };
    let r = z3.scalar_vector(&[1, -1]).unwrap().unwrap();
    let all_ones = z3.scalar_vector(&[1, 1, 1, 1]).unwrap().unwrap();
    let (ri, target) = (position(2, &r), position(4, &all_ones));
    let size_two = doc.carriers[2] as u32;
    doc.mult_mut(2, 2).ok_or("no (2,2) table")?[(ri * size_two + ri) as usize] = target;
    let table: Model = Arc::new(load_table_model(&doc).map_err(|e| e.to_string())?);
    let law = table
        .parse_element(Some(2), &ri.to_string())
        .map_err(|e| e.to_string())?;
    let cert = check_difference_law(table.as_ref(), &law, 2).map_err(|e| e.to_string())?;
    ensure(cert.failed_conditions() == vec![4], || {
        format!("corrupted law fails {:?}", cert.failed_conditions())
    })?;
    let phi = MultiplicativeMap::unchecked(table, law, Variant::Hz).map_err(|e| e.to_string())?;
    let report = verify_map(&phi, &small_config()).map_err(|e| e.to_string())?;
    let independence = report.check("witness independence").ok_or("no check")?;
    ensure(independence.violations > 0, || {
        "no witness-independence violation".into()
    })
}

fn parity_anchor() -> Outcome {
    let hz = IntegerModel::hz();
    let r = Element::integers(vec![1, -1]);
    let mut power = r.clone();
    for k in 1..=4u32 {
        if k > 1 {
            power = hz.mult(&power, &r).map_err(|e| e.to_string())?;
        }
        let split = parity_split(k);
        let expected: Vec<i64> = (1..=1usize << k)
            .map(|i| if split.plus.contains(&i) { 1 } else { -1 })
            .collect();
        ensure(power == Element::integers(expected), || {
            format!("k = {k}: {power:?}")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(axiom_suite)),
        ("difference-law certification", Box::new(certification)),
        ("identity maps", Box::new(identity_map)),
        (
            "witness independence",
            Box::new(|| verified_maps(&["witness independence"])),
        ),
        (
            "multiplicativity, naturality, round trip",
            Box::new(|| verified_maps(&["multiplicativity", "naturality", "unit", "round trip"])),
        ),
        ("derived sum law", Box::new(derived_sum_law)),
        ("negative searches", Box::new(negative_searches)),
        ("π₀", Box::new(pi0_groups)),
        ("classification and bijection", Box::new(classification)),
        ("negative detection", Box::new(negative_detection)),
        ("parity anchor", Box::new(parity_anchor)),
    ];
    let mut failures = 0;
    for (number, (name, run)) in (1..).zip(&criteria) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {number:>2} PASS  {name} ({secs:.2}s)"),
            Err(why) => {
                failures += 1;
                println!("criterion {number:>2} FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
