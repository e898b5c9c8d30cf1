//! Reader for invariants files: a TOML document that spells out the number
//! field, the group realization and the basic invariants explicitly.
//!
//! ```toml
//! [field]                       # optional, defaults to Q
//! minimal_polynomial = ["-5", "0", "1"]
//! generator = "s5"
//!
//! [group]
//! label = "H3"
//! rank = 3
//! exponents = [1, 5, 9]
//! gram = [["1", "0", "0"], ...]
//! hyperplanes = [["1", "0", "0"], ...]
//! generators = [[["-1", "0", "0"], ...], ...]
//!
//! [[invariant]]
//! terms = [{ exponents = [2, 0, 0], coefficient = ["5", "1"] }, ...]
//! ```
//!
//! A scalar is a rational (`"3/4"` or an integer) or an array of rationals
//! giving its coordinates in the power basis `1, t, t^2, ...`.

use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::Deserialize;
use toml::Spanned;

use coxsaito::coxeter::{validate_invariants, BasicInvariants, CoxeterDatum, CoxeterError, GroupType};
use coxsaito::exactalg::{Field, FieldContext, Matrix, Monomial, MultiPoly, Scalar, MAX_VARS};

#[derive(Debug)]
pub enum IngestError {
    Io { path: PathBuf, source: std::io::Error },
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    Validation(CoxeterError),
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            IngestError::Parse { path, line, column, message } => {
                write!(f, "{}:{line}:{column}: {message}", path.display())
            }
            IngestError::Validation(e) => write!(f, "invariants rejected: {e}"),
        }
    }
}

impl std::error::Error for IngestError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    field: Option<FieldRepr>,
    group: GroupRepr,
    #[serde(default, rename = "invariant")]
    invariants: Vec<InvariantRepr>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldRepr {
    minimal_polynomial: Spanned<Vec<RationalRepr>>,
    generator: Option<String>,
}

type MatrixRepr = Vec<Vec<Spanned<ScalarRepr>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepr {
    label: String,
    rank: Spanned<usize>,
    exponents: Spanned<Vec<u32>>,
    gram: Spanned<MatrixRepr>,
    hyperplanes: Vec<Spanned<Vec<Spanned<ScalarRepr>>>>,
    generators: Vec<Spanned<MatrixRepr>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvariantRepr {
    terms: Vec<Spanned<TermRepr>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    exponents: Vec<u32>,
    coefficient: Spanned<ScalarRepr>,
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum RationalRepr {
    Integer(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rational(RationalRepr),
    Vector(Vec<RationalRepr>),
}

struct Reader<'a> {
    path: &'a Path,
    source: &'a str,
}

impl Reader<'_> {
    fn error(&self, span: Range<usize>, message: impl Into<String>) -> IngestError {
        let before = &self.source[..span.start.min(self.source.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        IngestError::Parse { path: self.path.to_path_buf(), line, column, message: message.into() }
    }

    fn rational(&self, r: &RationalRepr, span: &Range<usize>) -> Result<BigRational, IngestError> {
        match r {
            RationalRepr::Integer(n) => Ok(BigRational::from_integer((*n).into())),
            RationalRepr::Text(s) => s
                .trim()
                .parse::<BigRational>()
                .map_err(|_| self.error(span.clone(), format!("`{s}` is not a rational number"))),
        }
    }

    fn scalar(&self, field: &Field, s: &Spanned<ScalarRepr>) -> Result<Scalar, IngestError> {
        let span = s.span();
        match s.get_ref() {
            ScalarRepr::Rational(r) => Ok(Scalar::from_rational(field, self.rational(r, &span)?)),
            ScalarRepr::Vector(v) => {
                if v.len() > field.degree() {
                    return Err(self.error(
                        span,
                        format!("{} coordinates for a field of degree {}", v.len(), field.degree()),
                    ));
                }
                let coeffs = v.iter().map(|r| self.rational(r, &span)).collect::<Result<_, _>>()?;
                Ok(Scalar::from_coeffs(field, coeffs))
            }
        }
    }

    fn vector(
        &self,
        field: &Field,
        row: &[Spanned<ScalarRepr>],
        n: usize,
        span: Range<usize>,
    ) -> Result<Vec<Scalar>, IngestError> {
        if row.len() != n {
            return Err(self.error(span, format!("expected {n} entries, found {}", row.len())));
        }
        row.iter().map(|s| self.scalar(field, s)).collect()
    }

    fn matrix(
        &self,
        field: &Field,
        m: &Spanned<MatrixRepr>,
        n: usize,
    ) -> Result<Matrix<Scalar>, IngestError> {
        let rows = m.get_ref();
        if rows.len() != n {
            return Err(self.error(m.span(), format!("expected {n} rows, found {}", rows.len())));
        }
        let parsed: Vec<Vec<Scalar>> =
            rows.iter().map(|r| self.vector(field, r, n, m.span())).collect::<Result<_, _>>()?;
        Ok(Matrix::from_fn(n, n, |i, j| parsed[i][j].clone()))
    }

    fn field(&self, repr: Option<&FieldRepr>) -> Result<Field, IngestError> {
        let Some(f) = repr else {
            return Ok(FieldContext::rationals());
        };
        let span = f.minimal_polynomial.span();
        let coeffs = f
            .minimal_polynomial
            .get_ref()
            .iter()
            .map(|r| self.rational(r, &span))
            .collect::<Result<Vec<_>, _>>()?;
        let name = f.generator.clone().unwrap_or_else(|| "t".into());
        FieldContext::new(coeffs, name).map_err(|e| self.error(span, e.to_string()))
    }

    fn read(&self) -> Result<(CoxeterDatum, BasicInvariants), IngestError> {
        let file: FileRepr = toml::from_str(self.source).map_err(|e| {
            let span = e.span().unwrap_or(0..0);
            self.error(span, e.message().to_string())
        })?;
        let field = self.field(file.field.as_ref())?;
        let g = &file.group;
        let n = *g.rank.get_ref();
        if n == 0 || n > MAX_VARS {
            return Err(self.error(g.rank.span(), format!("rank must be in 1..={MAX_VARS}")));
        }
        if g.exponents.get_ref().len() != n {
            return Err(self.error(g.exponents.span(), format!("expected {n} exponents")));
        }
        let gram = self.matrix(&field, &g.gram, n)?;
        let forms = g
            .hyperplanes
            .iter()
            .map(|h| self.vector(&field, h.get_ref(), n, h.span()))
            .collect::<Result<Vec<_>, _>>()?;
        let generators =
            g.generators.iter().map(|m| self.matrix(&field, m, n)).collect::<Result<Vec<_>, _>>()?;
        let datum = CoxeterDatum::new(
            GroupType::Custom(g.label.clone()),
            field.clone(),
            gram,
            forms,
            generators,
            g.exponents.get_ref().clone(),
        )
        .map_err(IngestError::Validation)?;

        let mut polys = Vec::with_capacity(file.invariants.len());
        for inv in &file.invariants {
            let mut terms = Vec::with_capacity(inv.terms.len());
            for t in &inv.terms {
                let term = t.get_ref();
                if term.exponents.len() != n {
                    return Err(self.error(t.span(), format!("exponent vector must have {n} entries")));
                }
                if term.exponents.iter().any(|&e| e > u32::from(u16::MAX)) {
                    return Err(self.error(t.span(), "exponent too large"));
                }
                terms.push((
                    Monomial::from_exponents(&term.exponents),
                    self.scalar(&field, &term.coefficient)?,
                ));
            }
            polys.push(MultiPoly::from_terms(&field, n, terms));
        }
        let invariants = validate_invariants(&datum, polys).map_err(IngestError::Validation)?;
        Ok((datum, invariants))
    }
}

pub fn ingest_invariants(path: &Path) -> Result<(CoxeterDatum, BasicInvariants), IngestError> {
    let source = std::fs::read_to_string(path)
        .map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    Reader { path, source: &source }.read()
}
