//! Embedded eigenform tables, Hecke matrices and printed L-value tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact_field::{parse_rational, QuadSurd};

use super::combination::RnCombination;
use super::factored::parse_factored;
use super::matrix::RationalMatrix;

pub const FIXTURE_JSON: &str = include_str!("../../fixtures/eigenforms.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
    /// Both parities mixed, e.g. a basis of all `R_n`.
    All,
}

impl Parity {
    fn admits(self, n: u32) -> bool {
        match self {
            Parity::Odd => n % 2 == 1,
            Parity::Even => n % 2 == 0,
            Parity::All => true,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    tables: Vec<RawTable>,
    matrices: Vec<RawMatrix>,
    ratios: Vec<RawRatio>,
    central_values: Vec<RawCentral>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    name: String,
    level: u64,
    weight: u32,
    parity: Parity,
    forms: Vec<RawForm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    n: u32,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    name: String,
    level: u64,
    weight: u32,
    hecke_prime: u64,
    basis: Vec<u32>,
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRatio {
    name: String,
    form: String,
    character: String,
    denominator_m: u32,
    #[serde(default)]
    note: Option<String>,
    rows: Vec<RawRatioRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRatioRow {
    m: u32,
    value: String,
    over: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCentral {
    name: String,
    form: String,
    m: u32,
    #[serde(default)]
    note: Option<String>,
    rows: Vec<RawCentralRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCentralRow {
    #[serde(rename = "D")]
    d: u64,
    value: String,
    exact: String,
}

#[derive(Clone, Debug)]
pub struct FormTable {
    pub name: String,
    pub level: u64,
    pub weight: u32,
    pub parity: Parity,
    pub forms: Vec<RnCombination>,
}

#[derive(Clone, Debug)]
pub struct MatrixFixture {
    pub name: String,
    pub level: u64,
    pub weight: u32,
    pub hecke_prime: u64,
    /// `R_n` indices labelling rows and columns.
    pub basis: Vec<u32>,
    pub matrix: RationalMatrix,
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    pub m: u32,
    /// Printed value is `numerator / over`, up to the common `sqrt(D)`.
    pub numerator: QuadSurd,
    pub over: BigRational,
}

impl RatioRow {
    pub fn value(&self) -> QuadSurd {
        &self.numerator * &QuadSurd::rational(self.over.recip())
    }
}

#[derive(Clone, Debug)]
pub struct RatioFixture {
    pub name: String,
    /// Name of a [`FormTable`]; the first form of the table is meant.
    pub form: String,
    pub character: DirichletCharacter,
    pub denominator_m: u32,
    pub note: Option<String>,
    pub rows: Vec<RatioRow>,
}

#[derive(Clone, Debug)]
pub struct CentralValueRow {
    pub modulus: u64,
    pub printed: String,
    pub value: BigInt,
}

#[derive(Clone, Debug)]
pub struct CentralValueFixture {
    pub name: String,
    pub form: String,
    pub m: u32,
    pub note: Option<String>,
    pub rows: Vec<CentralValueRow>,
}

#[derive(Clone, Debug)]
pub struct FixtureRegistry {
    pub tables: Vec<FormTable>,
    pub matrices: Vec<MatrixFixture>,
    pub ratios: Vec<RatioFixture>,
    pub central_values: Vec<CentralValueFixture>,
}

impl FixtureRegistry {
    pub fn table(&self, name: &str) -> Option<&FormTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn table_for(&self, level: u64, weight: u32, parity: Parity) -> Option<&FormTable> {
        self.tables.iter().find(|t| t.level == level && t.weight == weight && t.parity == parity)
    }

    pub fn matrix(&self, name: &str) -> Option<&MatrixFixture> {
        self.matrices.iter().find(|t| t.name == name)
    }

    pub fn ratio(&self, name: &str) -> Option<&RatioFixture> {
        self.ratios.iter().find(|t| t.name == name)
    }

    pub fn central_value(&self, name: &str) -> Option<&CentralValueFixture> {
        self.central_values.iter().find(|t| t.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.tables
            .iter()
            .map(|t| t.name.as_str())
            .chain(self.matrices.iter().map(|t| t.name.as_str()))
            .chain(self.ratios.iter().map(|t| t.name.as_str()))
            .chain(self.central_values.iter().map(|t| t.name.as_str()))
            .collect()
    }
}

pub fn load_fixtures() -> Result<FixtureRegistry> {
    parse_fixtures(FIXTURE_JSON)
}

/// Parses and validates fixture JSON. Errors carry the line of the offending
/// entry.
pub fn parse_fixtures(text: &str) -> Result<FixtureRegistry> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Fixture { line: e.line(), message: e.to_string() })?;
    let at = |name: &str, message: String| Error::Fixture { line: line_of(text, name), message: format!("{name}: {message}") };

    let mut tables = Vec::new();
    for t in raw.tables {
        let parity = t.parity;
        let forms = t
            .forms
            .iter()
            .map(|f| {
                let terms = f
                    .terms
                    .iter()
                    .map(|term| {
                        if !parity.admits(term.n) {
                            return Err(Error::InvalidContext(format!("R_{} has the wrong parity", term.n)));
                        }
                        Ok((term.n, term.coeff.parse::<QuadSurd>()?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                RnCombination::new(t.level, t.weight, terms)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| at(&t.name, e.to_string()))?;
        tables.push(FormTable { name: t.name, level: t.level, weight: t.weight, parity, forms });
    }

    let mut matrices = Vec::new();
    for m in raw.matrices {
        let matrix = RationalMatrix::parse(&m.rows).map_err(|e| at(&m.name, e.to_string()))?;
        if m.basis.len() != matrix.dim() {
            return Err(at(&m.name, format!("basis has {} indices for a {}x{} matrix", m.basis.len(), matrix.dim(), matrix.dim())));
        }
        if m.weight < 4 || m.basis.iter().any(|&n| n == 0 || n + 2 >= m.weight) {
            return Err(at(&m.name, "basis index outside 0 < n < w".into()));
        }
        matrices.push(MatrixFixture {
            name: m.name,
            level: m.level,
            weight: m.weight,
            hecke_prime: m.hecke_prime,
            basis: m.basis,
            matrix,
        });
    }

    let mut ratios = Vec::new();
    for r in raw.ratios {
        let table = tables.iter().find(|t| t.name == r.form).ok_or_else(|| at(&r.name, format!("unknown form {}", r.form)))?;
        let character = DirichletCharacter::parse(&r.character).map_err(|e| at(&r.name, e.to_string()))?;
        let w = table.weight - 2;
        let mut rows = Vec::new();
        for row in &r.rows {
            if row.m > w {
                return Err(at(&r.name, format!("m = {} exceeds w = {w}", row.m)));
            }
            let numerator = row.value.parse::<QuadSurd>().map_err(|e| at(&r.name, e.to_string()))?;
            let over = parse_rational(&row.over).map_err(|e| at(&r.name, e.to_string()))?;
            rows.push(RatioRow { m: row.m, numerator, over });
        }
        if !rows.iter().any(|row| row.m == r.denominator_m) {
            return Err(at(&r.name, format!("no row for the denominator m = {}", r.denominator_m)));
        }
        ratios.push(RatioFixture {
            name: r.name,
            form: r.form,
            character,
            denominator_m: r.denominator_m,
            note: r.note,
            rows,
        });
    }

    let mut central_values = Vec::new();
    for c in raw.central_values {
        let table = tables.iter().find(|t| t.name == c.form).ok_or_else(|| at(&c.name, format!("unknown form {}", c.form)))?;
        if c.m + 2 > table.weight {
            return Err(at(&c.name, format!("m = {} exceeds w", c.m)));
        }
        let mut rows = Vec::new();
        for row in &c.rows {
            let factored = parse_factored(&row.value).map_err(|e| at(&c.name, e.to_string()))?;
            let exact: BigInt = row.exact.parse().map_err(|_| at(&c.name, format!("bad integer {:?}", row.exact)))?;
            if factored != exact {
                return Err(at(&c.name, format!("D = {}: {} evaluates to {factored}, not {exact}", row.d, row.value)));
            }
            rows.push(CentralValueRow { modulus: row.d, printed: row.value.clone(), value: exact });
        }
        central_values.push(CentralValueFixture { name: c.name, form: c.form, m: c.m, note: c.note, rows });
    }

    Ok(FixtureRegistry { tables, matrices, ratios, central_values })
}

fn line_of(text: &str, name: &str) -> usize {
    let needle = format!("\"{name}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(0, |i| i + 1)
}
