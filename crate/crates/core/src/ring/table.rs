//! Γ-rings given by finite tables up to a level bound `N_max`.
//!
//! The document lists carrier sizes, the unit, the action of every generator
//! (`t^n_i`, `p^n_i`, `s^n_{i,i+1,i}`, `d^n_j` for `n <= N_max`) and the
//! products `R[n] ∧ R[m] -> R[nm]` for `nm <= N_max`. Other maps act through
//! [`factor_map`], so functoriality of a loaded table is something
//! [`check_axioms`](super::check_axioms) verifies rather than assumes.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::{
    check_bound, expect_level, foreign, CarrierSize, Element, ElementView, GammaRing, Payload,
};
use crate::error::{GammaError, Result};
use crate::skeleton::{factor_map, Generator, PointedMap};

pub const TABLE_FORMAT: &str = "gammaring.table/1";

/// On-disk form of a table model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n_max: usize,
    /// Sizes of `R[0], ..., R[N_max]`; index `0` is the basepoint at every level.
    pub carriers: Vec<usize>,
    /// Index of the unit in `R[1]`.
    pub unit: u32,
    pub generators: Vec<GeneratorTable>,
    pub mult: Vec<MultTable>,
}

/// Action of one generator, written like `t3_1`, `p2_2`, `s3_1`, `d2_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorTable {
    pub map: String,
    /// Image index of every element of the source carrier.
    pub table: Vec<u32>,
}

/// Product table for `R[left] ∧ R[right]`, row-major in the left factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultTable {
    pub left: usize,
    pub right: usize,
    pub table: Vec<u32>,
}

impl TableDocument {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| GammaError::input(format!("table file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("table documents serialise")
    }

    /// Mutable access to the action table of a named generator.
    pub fn generator_mut(&mut self, map: &str) -> Option<&mut Vec<u32>> {
        self.generators
            .iter_mut()
            .find(|g| g.map == map)
            .map(|g| &mut g.table)
    }

    pub fn mult_mut(&mut self, left: usize, right: usize) -> Option<&mut Vec<u32>> {
        self.mult
            .iter_mut()
            .find(|m| m.left == left && m.right == right)
            .map(|m| &mut m.table)
    }
}

/// Every generator a table document must supply for levels up to `n_max`.
pub fn required_generators(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for i in 1..n {
            out.push(Generator::Transposition { n, i });
        }
        for i in 1..=n {
            out.push(Generator::Restriction { n, i });
        }
        for i in 1..n {
            out.push(Generator::Summing { n, i });
        }
        for j in 1..=n {
            out.push(Generator::Degeneracy { n, j });
        }
    }
    out
}

fn required_products(n_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n_max / n {
            out.push((n, m));
        }
    }
    out
}

fn parse_generator(text: &str) -> Result<Generator> {
    let bad = || GammaError::input(format!("unrecognised generator {text:?}"));
    let mut chars = text.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let (n, p) = chars.as_str().split_once('_').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let p: usize = p.parse().map_err(|_| bad())?;
    let g = match kind {
        't' => Generator::Transposition { n, i: p },
        'p' => Generator::Restriction { n, i: p },
        's' => Generator::Summing { n, i: p },
        'd' => Generator::Degeneracy { n, j: p },
        _ => return Err(bad()),
    };
    g.to_map().map_err(|_| bad())?;
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct TableModel {
    name: String,
    n_max: usize,
    sizes: Vec<usize>,
    unit: u32,
    actions: HashMap<Generator, Vec<u32>>,
    products: HashMap<(usize, usize), Vec<u32>>,
}

/// Validates a document and builds the model.
pub fn load_table_model(doc: &TableDocument) -> Result<TableModel> {
    if doc.format != TABLE_FORMAT {
        return Err(GammaError::input(format!(
            "table file format {:?}, expected {TABLE_FORMAT:?}",
            doc.format
        )));
    }
    let n_max = doc.n_max;
    if n_max == 0 {
        return Err(GammaError::input("table model needs n_max >= 1"));
    }
    if doc.carriers.len() != n_max + 1 {
        return Err(GammaError::input(format!(
            "carriers: expected {} sizes (levels 0..={n_max}), got {}",
            n_max + 1,
            doc.carriers.len()
        )));
    }
    if doc.carriers[0] != 1 {
        return Err(GammaError::input(
            "carriers: R[0] must consist of the basepoint only",
        ));
    }
    if let Some(n) = doc.carriers.iter().position(|&s| s == 0) {
        return Err(GammaError::input(format!("carriers: R[{n}] is empty")));
    }
    if doc.carriers.iter().any(|&s| s > u32::MAX as usize) {
        return Err(GammaError::input("carriers: size exceeds the index range"));
    }
    let sizes = doc.carriers.clone();
    if doc.unit as usize >= sizes[1] {
        return Err(GammaError::input(format!(
            "unit index {} outside R[1]",
            doc.unit
        )));
    }

    let mut actions = HashMap::new();
    for entry in &doc.generators {
        let g = parse_generator(&entry.map)?;
        if g.source() > n_max || g.target() > n_max {
            return Err(GammaError::input(format!(
                "generator {}: level exceeds n_max = {n_max}",
                entry.map
            )));
        }
        let (src, dst) = (sizes[g.source()], sizes[g.target()]);
        if entry.table.len() != src {
            return Err(GammaError::input(format!(
                "generator {}: table has {} entries, R[{}] has {src}",
                entry.map,
                entry.table.len(),
                g.source()
            )));
        }
        if let Some((pos, v)) = entry
            .table
            .iter()
            .enumerate()
            .find(|(_, &v)| v as usize >= dst)
        {
            return Err(GammaError::input(format!(
                "generator {}: entry {pos} = {v} outside R[{}]",
                entry.map,
                g.target()
            )));
        }
        if entry.table[0] != 0 {
            return Err(GammaError::input(format!(
                "generator {}: basepoint is sent to {}",
                entry.map, entry.table[0]
            )));
        }
        if actions.insert(g, entry.table.clone()).is_some() {
            return Err(GammaError::input(format!(
                "generator {} listed twice",
                entry.map
            )));
        }
    }
    if let Some(missing) = required_generators(n_max)
        .into_iter()
        .find(|g| !actions.contains_key(g))
    {
        return Err(GammaError::input(format!(
            "missing generator table {missing}"
        )));
    }

    let mut products = HashMap::new();
    for entry in &doc.mult {
        let (n, m) = (entry.left, entry.right);
        if n == 0 || m == 0 || n * m > n_max {
            return Err(GammaError::input(format!(
                "mult ({n},{m}): block outside 1 <= n*m <= {n_max}"
            )));
        }
        let (sn, sm, snm) = (sizes[n], sizes[m], sizes[n * m]);
        if entry.table.len() != sn * sm {
            return Err(GammaError::input(format!(
                "mult ({n},{m}): table has {} entries, expected {}",
                entry.table.len(),
                sn * sm
            )));
        }
        if let Some((pos, v)) = entry
            .table
            .iter()
            .enumerate()
            .find(|(_, &v)| v as usize >= snm)
        {
            return Err(GammaError::input(format!(
                "mult ({n},{m}): entry {pos} = {v} outside R[{}]",
                n * m
            )));
        }
        let row_ok = entry.table[..sm].iter().all(|&v| v == 0);
        let col_ok = (0..sn).all(|x| entry.table[x * sm] == 0);
        if !row_ok || !col_ok {
            return Err(GammaError::input(format!(
                "mult ({n},{m}): product with the basepoint must be the basepoint"
            )));
        }
        if products.insert((n, m), entry.table.clone()).is_some() {
            return Err(GammaError::input(format!("mult ({n},{m}) listed twice")));
        }
    }
    if let Some((n, m)) = required_products(n_max)
        .into_iter()
        .find(|k| !products.contains_key(k))
    {
        return Err(GammaError::input(format!("missing mult table ({n},{m})")));
    }

    Ok(TableModel {
        name: doc.name.clone().unwrap_or_else(|| "table".to_string()),
        n_max,
        sizes,
        unit: doc.unit,
        actions,
        products,
    })
}

/// Transcribes a model with finite carriers into table form up to `n_max`.
pub fn tabulate(model: &dyn GammaRing, n_max: usize) -> Result<TableDocument> {
    let carriers: Vec<Vec<Element>> = (0..=n_max)
        .map(|n| model.enumerate(n))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<&Element, u32>> = carriers
        .iter()
        .map(|els| els.iter().enumerate().map(|(i, e)| (e, i as u32)).collect())
        .collect();
    for (n, els) in carriers.iter().enumerate() {
        if els[0] != model.basepoint(n) {
            return Err(GammaError::input(format!(
                "R[{n}] does not list the basepoint first"
            )));
        }
    }
    let lookup = |x: &Element| -> u32 { index[x.level()][x] };

    let mut generators = Vec::new();
    for g in required_generators(n_max) {
        let f = g.to_map()?;
        let table = carriers[g.source()]
            .iter()
            .map(|x| model.induce(&f, x).map(|y| lookup(&y)))
            .collect::<Result<Vec<_>>>()?;
        generators.push(GeneratorTable {
            map: g.to_string(),
            table,
        });
    }
    let mut mult = Vec::new();
    for (n, m) in required_products(n_max) {
        let mut table = Vec::with_capacity(carriers[n].len() * carriers[m].len());
        for x in &carriers[n] {
            for y in &carriers[m] {
                table.push(lookup(&model.mult(x, y)?));
            }
        }
        mult.push(MultTable {
            left: n,
            right: m,
            table,
        });
    }
    Ok(TableDocument {
        format: TABLE_FORMAT.to_string(),
        name: Some(format!("table({})", model.name())),
        n_max,
        carriers: carriers.iter().map(Vec::len).collect(),
        unit: lookup(&model.unit()),
        generators,
        mult,
    })
}

impl TableModel {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn cell(&self, level: usize, index: u32) -> Element {
        Element::new(level, Payload::Cell(index))
    }

    fn index(&self, x: &Element) -> Result<u32> {
        match x.payload() {
            Payload::Cell(i)
                if x.level() <= self.n_max && (*i as usize) < self.sizes[x.level()] =>
            {
                Ok(*i)
            }
            _ => Err(foreign(self, x)),
        }
    }

    /// Generator table sizes per level, for reports.
    pub fn summary(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        out.insert("n_max".to_string(), self.n_max);
        out.insert("generator_tables".to_string(), self.actions.len());
        out.insert("mult_tables".to_string(), self.products.len());
        out
    }
}

impl GammaRing for TableModel {
    fn name(&self) -> &str {
        &self.name
    }

    fn max_level(&self) -> Option<usize> {
        Some(self.n_max)
    }

    fn carrier_size(&self, n: usize) -> CarrierSize {
        match self.sizes.get(n) {
            Some(&s) => CarrierSize::Finite(s as u128),
            None => CarrierSize::OutOfRange,
        }
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Element>> {
        check_bound(self, n)?;
        Ok((0..self.sizes[n] as u32).map(|i| self.cell(n, i)).collect())
    }

    fn basepoint(&self, n: usize) -> Element {
        self.cell(n, 0)
    }

    fn unit(&self) -> Element {
        self.cell(1, self.unit)
    }

    fn induce(&self, f: &PointedMap, x: &Element) -> Result<Element> {
        expect_level(x, f.source())?;
        check_bound(self, f.source())?;
        check_bound(self, f.target())?;
        let mut current = self.index(x)?;
        for g in factor_map(f).steps() {
            current = self.actions[g][current as usize];
        }
        Ok(self.cell(f.target(), current))
    }

    fn mult(&self, x: &Element, y: &Element) -> Result<Element> {
        let (n, m) = (x.level(), y.level());
        let level = n * m;
        check_bound(self, level)?;
        let (a, b) = (self.index(x)?, self.index(y)?);
        if level == 0 {
            return Ok(self.basepoint(0));
        }
        let table = &self.products[&(n, m)];
        Ok(self.cell(level, table[a as usize * self.sizes[m] + b as usize]))
    }

    fn parse_element(&self, level: Option<usize>, text: &str) -> Result<Element> {
        let level =
            level.ok_or_else(|| GammaError::input("table literals need an explicit level"))?;
        check_bound(self, level)?;
        let trimmed = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        let i: u32 = trimmed
            .parse()
            .map_err(|_| GammaError::input(format!("expected a carrier index, got {text:?}")))?;
        if i as usize >= self.sizes[level] {
            return Err(GammaError::input(format!("index {i} outside R[{level}]")));
        }
        Ok(self.cell(level, i))
    }

    fn view(&self, x: &Element) -> ElementView {
        let i = self.index(x).unwrap_or(0);
        ElementView {
            level: x.level(),
            text: format!("#{i}"),
            values: None,
            indices: Some(vec![u64::from(i)]),
        }
    }

    fn random_element(&self, n: usize, _bound: i64, rng: &mut dyn RngCore) -> Element {
        self.cell(n, rng.gen_range(0..self.sizes[n] as u32))
    }

    fn tabulated_action(&self, g: &Generator, x: &Element) -> Option<Result<Element>> {
        let table = self.actions.get(g)?;
        Some(expect_level(x, g.source()).and_then(|_| {
            let i = self.index(x)?;
            Ok(self.cell(g.target(), table[i as usize]))
        }))
    }
}
