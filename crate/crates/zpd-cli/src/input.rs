//! Algebra file ingestion: JSON with either a builder expression or an
//! explicit structure table, over a prime field or the rationals.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;
use zpd_core::algebra::StructureAlgebra;
use zpd_core::field::parse_rational;
use zpd_core::{FieldDescriptor, Fp, Rat, Scalar};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime { gf: u64 },
    Named(String),
}

impl FieldSpec {
    pub fn descriptor(&self) -> anyhow::Result<FieldDescriptor> {
        let fd = match self {
            FieldSpec::Prime { gf } => FieldDescriptor::Prime(*gf),
            FieldSpec::Named(name) if name == "rational" => FieldDescriptor::Rational,
            FieldSpec::Named(name) => bail!("unknown field {name:?}; use {{\"gf\": p}} or \"rational\""),
        };
        fd.validate()?;
        Ok(fd)
    }
}

/// A scalar as it appears in a file: a plain integer, or a string for
/// fractions over the rationals.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    fn to_fp(&self, fd: &FieldDescriptor) -> anyhow::Result<Fp> {
        match self {
            ScalarSpec::Int(v) => Ok(Fp::from_integer(fd, *v)),
            ScalarSpec::Text(t) => {
                let v: i64 = t.trim().parse().map_err(|_| anyhow!("cannot parse scalar {t:?} over {fd}"))?;
                Ok(Fp::from_integer(fd, v))
            }
        }
    }

    fn to_rat(&self) -> anyhow::Result<Rat> {
        match self {
            ScalarSpec::Int(v) => Ok(Rat::from_integer((*v).into())),
            ScalarSpec::Text(t) => Ok(parse_rational(t)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    /// Builder expression such as `mat_over(2,trunc(2))`.
    #[serde(default)]
    pub spec: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub unit: Option<Vec<ScalarSpec>>,
    #[serde(default)]
    pub table: Option<Vec<Vec<Vec<ScalarSpec>>>>,
}

pub enum AnyAlgebra {
    Prime(StructureAlgebra<Fp>),
    Rational(StructureAlgebra<Rat>),
}

/// Run a closure against whichever scalar type the file selected.
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, |$a:ident| $body:expr) => {
        match $any {
            $crate::input::AnyAlgebra::Prime($a) => $body,
            $crate::input::AnyAlgebra::Rational($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn dim(&self) -> usize {
        with_algebra!(self, |a| a.dim())
    }

    pub fn label(&self) -> &str {
        with_algebra!(self, |a| a.label())
    }

    pub fn field(&self) -> FieldDescriptor {
        with_algebra!(self, |a| *a.field())
    }
}

pub struct Loaded {
    pub algebra: AnyAlgebra,
    /// Echo of the builder expression when the file used one.
    pub builder: Option<String>,
}

pub fn load_file(path: &Path) -> anyhow::Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: AlgebraFile = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid algebra file", path.display()))?;
    load(&file)
}

pub fn load(file: &AlgebraFile) -> anyhow::Result<Loaded> {
    let fd = file.field.descriptor()?;
    let algebra = match (&file.spec, &file.table) {
        (Some(expr), None) => {
            if file.dim.is_some() || file.unit.is_some() {
                bail!("give either a builder spec or an explicit dim/unit/table, not both");
            }
            let ast = parse_builder(expr).map_err(|e| anyhow!("in builder {expr:?}: {e}"))?;
            match fd {
                FieldDescriptor::Prime(_) => AnyAlgebra::Prime(ast.build::<Fp>(&fd)?),
                FieldDescriptor::Rational => AnyAlgebra::Rational(ast.build::<Rat>(&fd)?),
            }
        }
        (None, Some(table)) => {
            let dim = file.dim.ok_or_else(|| anyhow!("explicit tables need a dim field"))?;
            let unit = file.unit.as_ref().ok_or_else(|| anyhow!("explicit tables need a unit field"))?;
            if table.len() != dim {
                bail!("table has {} rows, dim says {dim}", table.len());
            }
            match fd {
                FieldDescriptor::Prime(_) => {
                    let conv = |s: &ScalarSpec| s.to_fp(&fd);
                    AnyAlgebra::Prime(build_table(fd, dim, unit, table, conv)?)
                }
                FieldDescriptor::Rational => {
                    let conv = |s: &ScalarSpec| s.to_rat();
                    AnyAlgebra::Rational(build_table(fd, dim, unit, table, conv)?)
                }
            }
        }
        (Some(_), Some(_)) => bail!("give either a builder spec or an explicit table, not both"),
        (None, None) => bail!("algebra file needs a spec expression or an explicit table"),
    };
    with_algebra!(&algebra, |a| a.validate())?;
    Ok(Loaded { algebra, builder: file.spec.clone() })
}

fn build_table<S: Scalar>(
    fd: FieldDescriptor,
    dim: usize,
    unit: &[ScalarSpec],
    table: &[Vec<Vec<ScalarSpec>>],
    conv: impl Fn(&ScalarSpec) -> anyhow::Result<S>,
) -> anyhow::Result<StructureAlgebra<S>> {
    let conv_vec = |v: &[ScalarSpec]| v.iter().map(&conv).collect::<anyhow::Result<Vec<S>>>();
    let mut rows = Vec::with_capacity(dim);
    for row in table {
        rows.push(row.iter().map(|c| conv_vec(c)).collect::<anyhow::Result<Vec<_>>>()?);
    }
    Ok(StructureAlgebra::from_table(fd, rows, conv_vec(unit)?, "custom")?)
}

/// Serialize an algebra into the explicit-table file shape, so a built
/// algebra can be written out and reloaded with the same table.
pub fn table_file_json<S: crate::report::RenderScalar>(
    a: &StructureAlgebra<S>,
) -> serde_json::Value {
    let field = match a.field() {
        FieldDescriptor::Prime(p) => serde_json::json!({ "gf": p }),
        FieldDescriptor::Rational => serde_json::json!("rational"),
    };
    let unit: Vec<_> = a.unit().iter().map(|s| s.json()).collect();
    let table: Vec<Vec<Vec<_>>> = a
        .table()
        .iter()
        .map(|row| row.iter().map(|cell| cell.iter().map(|s| s.json()).collect()).collect())
        .collect();
    serde_json::json!({
        "field": field,
        "dim": a.dim(),
        "unit": unit,
        "table": table,
    })
}

/// Composable algebra constructors, parsed from expressions such as
/// `prod(mat(2),tri(3))` or `mat_over(2,trunc(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderExpr {
    Mat(usize),
    Tri(usize),
    Trunc(usize),
    Prod(Box<BuilderExpr>, Box<BuilderExpr>),
    MatOver(usize, Box<BuilderExpr>),
    TensorTrunc(Box<BuilderExpr>, usize),
}

impl BuilderExpr {
    pub fn build<S: Scalar>(&self, fd: &FieldDescriptor) -> zpd_core::Result<StructureAlgebra<S>> {
        match self {
            BuilderExpr::Mat(k) => StructureAlgebra::matrix_algebra(*k, fd),
            BuilderExpr::Tri(k) => StructureAlgebra::upper_triangular(*k, fd),
            BuilderExpr::Trunc(k) => StructureAlgebra::truncated_polynomial(*k, fd),
            BuilderExpr::Prod(x, y) => {
                StructureAlgebra::direct_product(&x.build(fd)?, &y.build(fd)?)
            }
            BuilderExpr::MatOver(k, c) => StructureAlgebra::matrix_over(*k, &c.build(fd)?),
            BuilderExpr::TensorTrunc(c, k) => StructureAlgebra::tensor_trunc(&c.build(fd)?, *k),
        }
    }
}

impl fmt::Display for BuilderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderExpr::Mat(k) => write!(f, "mat({k})"),
            BuilderExpr::Tri(k) => write!(f, "tri({k})"),
            BuilderExpr::Trunc(k) => write!(f, "trunc({k})"),
            BuilderExpr::Prod(x, y) => write!(f, "prod({x},{y})"),
            BuilderExpr::MatOver(k, c) => write!(f, "mat_over({k},{c})"),
            BuilderExpr::TensorTrunc(c, k) => write!(f, "tensor_trunc({c},{k})"),
        }
    }
}

pub fn parse_builder(s: &str) -> Result<BuilderExpr, String> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let e = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(format!("unexpected trailing input at byte {}", p.i));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        self.ws();
        if self.i < self.s.len() && self.s[self.i] == c {
            self.i += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at byte {}", c as char, self.i))
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        if self.i == start {
            return Err(format!("expected a builder name at byte {start}"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.i]).unwrap().to_string())
    }

    fn number(&mut self) -> Result<usize, String> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if self.i == start {
            return Err(format!("expected a number at byte {start}"));
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| format!("number out of range at byte {start}"))
    }

    fn expr(&mut self) -> Result<BuilderExpr, String> {
        let name = self.ident()?;
        self.expect(b'(')?;
        let e = match name.as_str() {
            "mat" => BuilderExpr::Mat(self.number()?),
            "tri" => BuilderExpr::Tri(self.number()?),
            "trunc" => BuilderExpr::Trunc(self.number()?),
            "prod" => {
                let x = self.expr()?;
                self.expect(b',')?;
                let y = self.expr()?;
                BuilderExpr::Prod(Box::new(x), Box::new(y))
            }
            "mat_over" => {
                let k = self.number()?;
                self.expect(b',')?;
                let c = self.expr()?;
                BuilderExpr::MatOver(k, Box::new(c))
            }
            "tensor_trunc" => {
                let c = self.expr()?;
                self.expect(b',')?;
                let k = self.number()?;
                BuilderExpr::TensorTrunc(Box::new(c), k)
            }
            other => {
                return Err(format!(
                    "unknown builder {other:?}; available: mat, tri, trunc, prod, mat_over, tensor_trunc"
                ))
            }
        };
        self.expect(b')')?;
        Ok(e)
    }
}
