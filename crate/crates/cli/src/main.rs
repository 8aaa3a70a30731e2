//! `gammaring`: check discrete Γ-rings, search and certify laws, build and
//! verify multiplicative maps, compute π₀ and classify laws.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammaring_core::laws::{check_law, enumerate_laws, LawKind};
use gammaring_core::maps::{reachable_k, verify_map, MultiplicativeMap, Variant, VerifyConfig};
use gammaring_core::pi0::{classify, pi0, relation_soundness, summarize};
use gammaring_core::report::CheckResult;
use gammaring_core::ring::{check_axioms, AxiomConfig, AxiomMode};
use gammaring_core::{make_model, Element, GammaError, Model};
use serde::Serialize;
use serde_json::{json, Value};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "gammaring", version, about = "Workbench for discrete Γ-rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// hn | hz | sphere | hmod:<n> | end:<d1,d2,...> | ring:<file> | monoid:<file> | table:<file>
    #[arg(long)]
    model: String,
    /// Seed for every sampled or randomised step
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    #[serde(skip)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum KindArg {
    Sum,
    Diff,
}

impl From<KindArg> for LawKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sum => LawKind::Sum,
            KindArg::Diff => LawKind::Difference,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum VariantArg {
    Hn,
    Hz,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Hn => Variant::Hn,
            VariantArg::Hz => Variant::Hz,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Γ-ring axioms on bounded data
    CheckRing {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Entry bound for generated hn/hz elements
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Certify one candidate law
    CheckLaw {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        law: String,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Search R[2] for laws
    FindLaws {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Build the multiplicative map of a law and evaluate it
    BuildMap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        law: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Target vector such as "[2,-1]"; may be repeated
        #[arg(long = "eval")]
        eval: Vec<String>,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Verify witness independence, naturality, multiplicativity, unit and round trip
    VerifyMap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        law: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Skip certification and verify the map of an arbitrary element
        #[arg(long)]
        unchecked: bool,
    },
    /// Invariant factors of π₀ and the class of every element of R[1]
    Pi0 {
        #[command(flatten)]
        common: Common,
    },
    /// Classify the difference laws up to isomorphism and strict isomorphism
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::CheckRing { common, .. }
            | Command::CheckLaw { common, .. }
            | Command::FindLaws { common, .. }
            | Command::BuildMap { common, .. }
            | Command::VerifyMap { common, .. }
            | Command::Pi0 { common }
            | Command::Classify { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::CheckRing { .. } => "check-ring",
            Command::CheckLaw { .. } => "check-law",
            Command::FindLaws { .. } => "find-laws",
            Command::BuildMap { .. } => "build-map",
            Command::VerifyMap { .. } => "verify-map",
            Command::Pi0 { .. } => "pi0",
            Command::Classify { .. } => "classify",
        }
    }

    /// The effective configuration echoed into the report.
    fn config(&self) -> Value {
        let mut config = serde_json::to_value(self.common()).expect("serialisable");
        let extra = match self {
            Command::CheckRing {
                nmax,
                mode,
                bound,
                samples,
                ..
            } => json!({"nmax": nmax, "mode": mode, "bound": bound, "samples": samples}),
            Command::CheckLaw {
                kind, law, kmax, ..
            } => {
                json!({"kind": kind, "law": law, "kmax": kmax})
            }
            Command::FindLaws { kind, kmax, .. } => json!({"kind": kind, "kmax": kmax}),
            Command::BuildMap {
                law,
                variant,
                eval,
                kmax,
                ..
            } => json!({"law": law, "variant": variant, "eval": eval, "kmax": kmax}),
            Command::VerifyMap {
                law,
                variant,
                bound,
                maxlen,
                trials,
                kmax,
                unchecked,
                ..
            } => json!({
                "law": law, "variant": variant, "bound": bound, "maxlen": maxlen,
                "trials": trials, "kmax": kmax, "unchecked": unchecked,
            }),
            Command::Pi0 { .. } => json!({}),
            Command::Classify { kmax, .. } => json!({"kmax": kmax}),
        };
        let map = config.as_object_mut().expect("object");
        map.insert("command".into(), self.name().into());
        map.extend(extra.as_object().expect("object").clone());
        config
    }
}

fn exit_code(e: &GammaError) -> u8 {
    match e {
        GammaError::Input(_) | GammaError::LevelMismatch { .. } => 2,
        GammaError::Unsupported(_) | GammaError::LevelOverflow { .. } | GammaError::Overflow(_) => {
            3
        }
        GammaError::Uncertified(_) => 1,
    }
}

fn parse_target(text: &str) -> Result<Vec<i64>, GammaError> {
    serde_json::from_str(text.trim())
        .map_err(|e| GammaError::Input(format!("target {text:?} is not an integer list: {e}")))
}

fn law(model: &Model, text: &str) -> Result<Element, GammaError> {
    model.parse_element(Some(2), text)
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn run(command: &Command) -> Result<Report, GammaError> {
    let common = command.common();
    let model = make_model(&common.model)?;
    let m = model.as_ref();
    let mut report = Report::new(command.name(), command.config());

    match command {
        Command::CheckRing {
            nmax,
            mode,
            bound,
            samples,
            ..
        } => {
            let config = AxiomConfig {
                n_max: *nmax,
                mode: match mode {
                    ModeArg::Exhaustive => AxiomMode::Exhaustive,
                    ModeArg::Sample => AxiomMode::Sample,
                },
                seed: common.seed,
                bound: *bound,
                samples: *samples,
            };
            let axioms = check_axioms(m, &config)?;
            report.push_all(&axioms.checks);
            report.finish(json!({"model": axioms.model}));
        }
        Command::CheckLaw {
            kind,
            law: text,
            kmax,
            ..
        } => {
            let cert = check_law(m, (*kind).into(), &law(&model, text)?, *kmax)?;
            report.push_all(&cert.conditions);
            report.finish(json!({
                "law": cert.law_view, "kind": cert.kind, "k_max": cert.k_max,
                "verdict": cert.verdict, "checked_counts": cert.checked_counts,
            }));
        }
        Command::FindLaws { kind, kmax, .. } => {
            let found = enumerate_laws(m, (*kind).into(), *kmax)?;
            let mut search = CheckResult::new("law search");
            search.count = m.carrier_size(2).finite().map_or(1, |n| n as u64);
            search.note = Some(format!("{} laws found", found.len()));
            report.push(&search);
            let laws: Vec<Value> = found
                .iter()
                .map(|(_, cert)| {
                    json!({"law": cert.law_view, "verdict": cert.verdict, "checked_counts": cert.checked_counts})
                })
                .collect();
            report.finish(json!({"count": laws.len(), "laws": laws}));
        }
        Command::BuildMap {
            law: text,
            variant,
            eval,
            kmax,
            ..
        } => {
            let variant: Variant = (*variant).into();
            let targets = eval
                .iter()
                .map(|t| parse_target(t))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = certify(&model, &law(&model, text)?, variant, *kmax)?;
            report.push_all(&cert.conditions);
            if !cert.passed() {
                report.finish(json!({"certified": false, "verdict": cert.verdict}));
                return Ok(report);
            }
            let phi = MultiplicativeMap::from_certificate(model.clone(), cert, variant)?;
            let values = targets
                .iter()
                .map(|t| Ok(json!({"target": t, "value": m.view(&phi.eval(t)?)})))
                .collect::<Result<Vec<_>, GammaError>>()?;
            report.finish(json!({
                "certified": true, "law": m.view(phi.law()), "variant": variant, "values": values,
            }));
        }
        Command::VerifyMap {
            law: text,
            variant,
            bound,
            maxlen,
            trials,
            kmax,
            unchecked,
            ..
        } => {
            let variant: Variant = (*variant).into();
            let element = law(&model, text)?;
            let phi = if *unchecked {
                MultiplicativeMap::unchecked(model.clone(), element, variant)?
            } else {
                let cert = certify(&model, &element, variant, *kmax)?;
                report.push_all(&cert.conditions);
                if !cert.passed() {
                    report.finish(json!({"certified": false, "verdict": cert.verdict}));
                    return Ok(report);
                }
                MultiplicativeMap::from_certificate(model.clone(), cert, variant)?
            };
            let config = VerifyConfig {
                entry_bound: *bound,
                max_len: *maxlen,
                witness_trials: *trials,
                seed: common.seed,
                ..VerifyConfig::default()
            };
            let verified = verify_map(&phi, &config)?;
            report.push_all(&verified.checks);
            report.finish(json!({
                "certified": verified.certified, "law": verified.law,
                "variant": verified.variant, "verify": verified.config,
            }));
        }
        Command::Pi0 { .. } => {
            let pres = pi0(m)?;
            let summary = summarize(m, &pres)?;
            let mut snf = CheckResult::new("snf verification");
            snf.record(summary.verified, || {
                "L M R is not the diagonal of unimodular transforms".into()
            });
            report.push(&snf);
            report.push(&relation_soundness(m, &pres)?);
            report.finish(to_value(&summary));
        }
        Command::Classify { kmax, .. } => {
            let c = classify(&model, *kmax)?;
            let mut refine = CheckResult::new("strict classes refine iso classes");
            for class in &c.strict_classes {
                refine.record(
                    c.iso_classes
                        .iter()
                        .any(|iso| class.iter().all(|i| iso.contains(i))),
                    || format!("strict class {class:?} meets several iso classes"),
                );
            }
            report.push(&c.bijection.round_trip);
            report.push(&c.transport);
            report.push(&refine);
            report.finish(to_value(&c));
        }
    }
    Ok(report)
}

fn certify(
    model: &Model,
    law: &Element,
    variant: Variant,
    k_max: u32,
) -> Result<gammaring_core::laws::LawCertificate, GammaError> {
    let k = reachable_k(model.as_ref(), k_max);
    if k == 0 {
        return Err(GammaError::Unsupported(format!(
            "model {} does not reach level 2",
            model.name()
        )));
    }
    check_law(model.as_ref(), variant.law_kind(), law, k)
}

fn emit(report: &Report, output: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("serialisable");
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.command.common().output.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(report.violations() > 0))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
