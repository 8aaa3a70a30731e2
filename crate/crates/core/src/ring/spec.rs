//! Model spec strings:
//! `hn | hz | sphere | hmod:<n> | end:<d1,d2,...> | ring:<file> | monoid:<file> | table:<file>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use super::finite_ring::{end_ring, zmod, FiniteRing};
use super::monoid::{Monoid, MonoidModel};
use super::table::{load_table_model, TableDocument};
use super::{IntegerModel, Model, RingModel, SphereModel};
use crate::error::{GammaError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    Hn,
    Hz,
    Sphere,
    Hmod(u64),
    End(Vec<u64>),
    Ring(PathBuf),
    Monoid(PathBuf),
    Table(PathBuf),
}

impl FromStr for ModelSpec {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a.trim())),
            None => (s, None),
        };
        let number = |text: &str| -> Result<u64> {
            text.trim().parse().map_err(|_| {
                GammaError::input(format!("model spec {s:?}: {text:?} is not a number"))
            })
        };
        let path = |arg: Option<&str>| -> Result<PathBuf> {
            match arg {
                Some(p) if !p.is_empty() => Ok(PathBuf::from(p)),
                _ => Err(GammaError::input(format!(
                    "model spec {s:?} needs a file path"
                ))),
            }
        };
        match (kind, arg) {
            ("hn", None) => Ok(ModelSpec::Hn),
            ("hz", None) => Ok(ModelSpec::Hz),
            ("sphere", None) => Ok(ModelSpec::Sphere),
            ("hmod", Some(n)) => Ok(ModelSpec::Hmod(number(n)?)),
            ("end", Some(list)) => Ok(ModelSpec::End(
                list.split(',').map(number).collect::<Result<_>>()?,
            )),
            ("ring", arg) => Ok(ModelSpec::Ring(path(arg)?)),
            ("monoid", arg) => Ok(ModelSpec::Monoid(path(arg)?)),
            ("table", arg) => Ok(ModelSpec::Table(path(arg)?)),
            _ => Err(GammaError::input(format!("unrecognised model spec {s:?}"))),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Hn => f.write_str("hn"),
            ModelSpec::Hz => f.write_str("hz"),
            ModelSpec::Sphere => f.write_str("sphere"),
            ModelSpec::Hmod(n) => write!(f, "hmod:{n}"),
            ModelSpec::End(ds) => {
                let list: Vec<String> = ds.iter().map(u64::to_string).collect();
                write!(f, "end:{}", list.join(","))
            }
            ModelSpec::Ring(p) => write!(f, "ring:{}", p.display()),
            ModelSpec::Monoid(p) => write!(f, "monoid:{}", p.display()),
            ModelSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| GammaError::input(format!("cannot read {}: {e}", path.display())))
}

impl ModelSpec {
    pub fn build(&self) -> Result<Model> {
        let name = self.to_string();
        Ok(match self {
            ModelSpec::Hn => Arc::new(IntegerModel::hn()),
            ModelSpec::Hz => Arc::new(IntegerModel::hz()),
            ModelSpec::Sphere => Arc::new(SphereModel),
            ModelSpec::Hmod(n) => Arc::new(RingModel::new(name, zmod(*n)?)),
            ModelSpec::End(ds) => Arc::new(RingModel::new(name, end_ring(ds)?)),
            ModelSpec::Ring(p) => Arc::new(RingModel::new(name, FiniteRing::from_toml(&read(p)?)?)),
            ModelSpec::Monoid(p) => Arc::new(MonoidModel::new(name, Monoid::from_toml(&read(p)?)?)),
            ModelSpec::Table(p) => {
                let doc = TableDocument::from_toml(&read(p)?)?;
                Arc::new(load_table_model(&doc)?)
            }
        })
    }
}

/// Parses a model spec string and builds the model.
pub fn make_model(spec: &str) -> Result<Model> {
    spec.parse::<ModelSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CarrierSize;

    #[test]
    fn parses_builtin_specs() {
        assert_eq!("hz".parse::<ModelSpec>().unwrap(), ModelSpec::Hz);
        assert_eq!("hmod:6".parse::<ModelSpec>().unwrap(), ModelSpec::Hmod(6));
        assert_eq!(
            "end:2,2".parse::<ModelSpec>().unwrap(),
            ModelSpec::End(vec![2, 2])
        );
        assert_eq!(
            "monoid:m2.toml".parse::<ModelSpec>().unwrap(),
            ModelSpec::Monoid(PathBuf::from("m2.toml"))
        );
        for bad in ["hq", "hmod", "hmod:x", "end:", "ring:", "hz:3"] {
            assert!(bad.parse::<ModelSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds_models() {
        let end2 = make_model("end:2").unwrap();
        assert_eq!(end2.carrier_size(2), CarrierSize::Finite(4));
        assert!(make_model("end:1").is_err());
        assert!(make_model("hmod:1").is_err());
        assert!(make_model("monoid:/nonexistent/file.toml").is_err());
        assert_eq!(make_model("hmod:6").unwrap().name(), "hmod:6");
    }
}
